use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single forbidden graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Pattern {
    /// An edge whose endpoints share `s + 1` pairwise non-adjacent neighbors.
    /// `SDiamond(1)` is the diamond.
    SDiamond(usize),
    /// The complete graph on `t` vertices.
    Clique(usize),
}

impl Pattern {
    pub fn vertex_count(&self) -> usize {
        match *self {
            Pattern::SDiamond(s) => s + 3,
            Pattern::Clique(t) => t,
        }
    }

    pub fn edge_count(&self) -> usize {
        match *self {
            Pattern::SDiamond(s) => 2 * (s + 1) + 1,
            Pattern::Clique(t) => t * (t - 1) / 2,
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Pattern::SDiamond(1) => write!(f, "diamond"),
            Pattern::SDiamond(s) => write!(f, "{s}-diamond"),
            Pattern::Clique(t) => write!(f, "k{t}"),
        }
    }
}

/// The forbidden family: at most one s-diamond and at most one clique.
///
/// Token form is a comma-separated list such as `diamond`, `2-diamond`,
/// `diamond,k4` or `k5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct FamilySpec {
    s_diamond: Option<usize>,
    clique: Option<usize>,
}

impl FamilySpec {
    pub fn new(s_diamond: Option<usize>, clique: Option<usize>) -> Result<Self> {
        if s_diamond.is_none() && clique.is_none() {
            return Err(Error::InvalidFamily("family must not be empty".into()));
        }
        if s_diamond == Some(0) {
            return Err(Error::InvalidFamily("s-diamond needs s >= 1".into()));
        }
        if clique.is_some_and(|t| t < 3) {
            return Err(Error::InvalidFamily("clique needs t >= 3".into()));
        }
        Ok(FamilySpec { s_diamond, clique })
    }

    pub fn diamond() -> Self {
        FamilySpec {
            s_diamond: Some(1),
            clique: None,
        }
    }

    pub fn s_diamond(s: usize) -> Result<Self> {
        Self::new(Some(s), None)
    }

    pub fn diamond_clique(t: usize) -> Result<Self> {
        Self::new(Some(1), Some(t))
    }

    pub fn s(&self) -> Option<usize> {
        self.s_diamond
    }

    pub fn t(&self) -> Option<usize> {
        self.clique
    }

    /// Patterns in search order: the s-diamond first, then the clique.
    pub fn patterns(&self) -> Vec<Pattern> {
        self.s_diamond
            .map(Pattern::SDiamond)
            .into_iter()
            .chain(self.clique.map(Pattern::Clique))
            .collect()
    }

    /// Largest edge count among the patterns; bounds the branching factor and
    /// the per-occurrence contribution to a packing.
    pub fn max_pattern_edges(&self) -> usize {
        self.patterns()
            .iter()
            .map(Pattern::edge_count)
            .max()
            .unwrap_or(0)
    }

    /// Whether core membership and the phase-1 rules are defined for this family.
    pub fn supports_reduction(&self) -> bool {
        self.s_diamond == Some(1)
    }

    /// `{diamond}` or `{diamond, K_t}` with `t >= 4`.
    pub fn is_kernelizable(&self) -> bool {
        self.s_diamond == Some(1) && self.clique.is_none_or(|t| t >= 4)
    }

    pub fn require_reduction(&self) -> Result<()> {
        if self.supports_reduction() {
            Ok(())
        } else {
            Err(Error::UnsupportedFamily {
                family: self.to_string(),
                reason: "reduction rules are defined only for families containing the diamond"
                    .into(),
            })
        }
    }

    pub fn require_kernelizable(&self) -> Result<()> {
        if self.is_kernelizable() {
            return Ok(());
        }
        let reason = match (self.s_diamond, self.clique) {
            (Some(s), _) if s >= 2 => "no kernel is known for s-diamonds with s >= 2",
            (Some(1), Some(_)) => "the clique size must be at least 4",
            _ => "kernelization needs the diamond in the family",
        };
        Err(Error::UnsupportedFamily {
            family: self.to_string(),
            reason: reason.into(),
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.patterns().iter().map(Pattern::to_string).collect();
        write!(f, "{}", items.join(","))
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(token: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidFamily(format!("`{token}`: {why}"));
        let mut s_diamond = None;
        let mut clique = None;
        for item in token.split(',') {
            let item = item.trim();
            if item == "diamond" {
                if s_diamond.replace(1).is_some() {
                    return Err(bad("more than one s-diamond item"));
                }
            } else if let Some(num) = item.strip_suffix("-diamond") {
                let s: usize = num.parse().map_err(|_| bad("malformed s-diamond item"))?;
                if s_diamond.replace(s).is_some() {
                    return Err(bad("more than one s-diamond item"));
                }
            } else if let Some(num) = item.strip_prefix(['k', 'K']) {
                let t: usize = num.parse().map_err(|_| bad("malformed clique item"))?;
                if clique.replace(t).is_some() {
                    return Err(bad("more than one clique item"));
                }
            } else {
                return Err(bad(&format!("unknown item `{item}`")));
            }
        }
        FamilySpec::new(s_diamond, clique)
    }
}

impl TryFrom<String> for FamilySpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FamilySpec> for String {
    fn from(f: FamilySpec) -> Self {
        f.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_round_trip() {
        for tok in ["diamond", "2-diamond", "diamond,k4", "k5", "3-diamond,k6"] {
            let fam: FamilySpec = tok.parse().unwrap();
            assert_eq!(fam.to_string(), tok);
        }
        assert_eq!(
            "1-diamond".parse::<FamilySpec>().unwrap(),
            FamilySpec::diamond()
        );
        assert_eq!(
            "k4,diamond".parse::<FamilySpec>().unwrap(),
            FamilySpec::diamond_clique(4).unwrap()
        );
    }

    #[test]
    fn rejects_malformed_tokens() {
        for tok in [
            "",
            "diamond,diamond",
            "k2",
            "0-diamond",
            "k4,k5",
            "square",
            "x-diamond",
        ] {
            assert!(tok.parse::<FamilySpec>().is_err(), "{tok}");
        }
    }

    #[test]
    fn kernelizable_families() {
        assert!(FamilySpec::diamond().is_kernelizable());
        assert!(FamilySpec::diamond_clique(4).unwrap().is_kernelizable());
        assert!(!FamilySpec::diamond_clique(3).unwrap().is_kernelizable());
        assert!(!FamilySpec::s_diamond(2).unwrap().is_kernelizable());
        assert!(FamilySpec::s_diamond(2)
            .unwrap()
            .require_kernelizable()
            .is_err());
    }
}
