use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Prompt strategy used to produce a heuristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Strategy {
    #[serde(rename = "INIT")]
    Init,
    M1,
    M2,
    E1,
    E2,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [Strategy::Init, Strategy::M1, Strategy::M2, Strategy::E1, Strategy::E2];
    /// Strategies usable in evolution rounds.
    pub const OFFSPRING: [Strategy; 4] = [Strategy::M1, Strategy::M2, Strategy::E1, Strategy::E2];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Init => "INIT",
            Strategy::M1 => "M1",
            Strategy::M2 => "M2",
            Strategy::E1 => "E1",
            Strategy::E2 => "E2",
        }
    }

    /// Sampling temperature: high for exploration, low for parameter tuning.
    pub fn default_temperature(self) -> f64 {
        match self {
            Strategy::Init | Strategy::M1 => 1.0,
            Strategy::M2 | Strategy::E1 => 0.7,
            Strategy::E2 => 0.2,
        }
    }

    pub fn needs_parent(self) -> bool {
        self != Strategy::Init
    }

    /// Parses `M1+M2` or `M1,M2` into a de-duplicated list in input order.
    pub fn parse_group(s: &str) -> Result<Vec<Strategy>, String> {
        let mut out = Vec::new();
        for part in s.split(['+', ',']).map(str::trim).filter(|p| !p.is_empty()) {
            let st: Strategy = part.parse()?;
            if st == Strategy::Init {
                return Err("INIT cannot be used as an evolution strategy".into());
            }
            if !out.contains(&st) {
                out.push(st);
            }
        }
        if out.is_empty() {
            return Err(format!("empty strategy group `{s}`"));
        }
        Ok(out)
    }

    pub fn group_name(group: &[Strategy]) -> String {
        group.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("+")
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "INIT" | "I" => Ok(Strategy::Init),
            "M1" => Ok(Strategy::M1),
            "M2" => Ok(Strategy::M2),
            "E1" => Ok(Strategy::E1),
            "E2" => Ok(Strategy::E2),
            other => Err(format!("unknown strategy `{other}`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups() {
        assert_eq!(Strategy::parse_group("M1+E2").unwrap(), vec![Strategy::M1, Strategy::E2]);
        assert_eq!(Strategy::parse_group("m2, m2").unwrap(), vec![Strategy::M2]);
        assert!(Strategy::parse_group("").is_err());
        assert!(Strategy::parse_group("INIT").is_err());
        assert_eq!(Strategy::group_name(&[Strategy::M1, Strategy::M2]), "M1+M2");
    }

    #[test]
    fn serde_names() {
        assert_eq!(serde_json::to_string(&Strategy::Init).unwrap(), "\"INIT\"");
        assert_eq!(serde_json::from_str::<Strategy>("\"E2\"").unwrap(), Strategy::E2);
    }
}
