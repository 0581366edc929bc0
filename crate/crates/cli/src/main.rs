use std::process::ExitCode;

use clap::Parser;
use diamond_kernel_cli::{exit, run, Cli, ORACLE_CAP_ENV};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE as u8 } else { 0 });
        }
    };
    let env_cap = std::env::var(ORACLE_CAP_ENV).ok();
    let mut stdout = std::io::stdout().lock();
    match run(cli, env_cap.as_deref(), &mut stdout) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
