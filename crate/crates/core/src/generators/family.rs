use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    blown_up_cycle, complete_minus_matching, cycle, cycle_power, expander_blowup,
    product_cycle_blowup, random_regular_with, RandomRegularOptions,
};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Cycle,
    CyclePower,
    BlownCycle,
    CompleteMinusMatching,
    ProductBlowup,
    ExpanderBlowup,
    RandomRegular,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Cycle,
        Family::CyclePower,
        Family::BlownCycle,
        Family::CompleteMinusMatching,
        Family::ProductBlowup,
        Family::ExpanderBlowup,
        Family::RandomRegular,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Cycle => "cycle",
            Family::CyclePower => "cycle-power",
            Family::BlownCycle => "blown-cycle",
            Family::CompleteMinusMatching => "complete-minus-matching",
            Family::ProductBlowup => "product-blowup",
            Family::ExpanderBlowup => "expander-blowup",
            Family::RandomRegular => "random-regular",
        }
    }

    /// Required and optional parameter names.
    fn keys(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            Family::Cycle => (&["n"], &[]),
            Family::CyclePower => (&["n", "k"], &[]),
            Family::BlownCycle => (&["n", "k"], &[]),
            Family::CompleteMinusMatching => (&["d"], &[]),
            Family::ProductBlowup => (&["m", "t"], &[]),
            Family::ExpanderBlowup => (&["n", "t"], &["seed"]),
            Family::RandomRegular => (&["n", "d"], &["seed", "connected"]),
        }
    }

    /// The parameter a size ladder varies.
    pub fn size_key(self) -> &'static str {
        match self {
            Family::CompleteMinusMatching => "d",
            Family::ProductBlowup => "m",
            _ => "n",
        }
    }

    pub fn is_stochastic(self) -> bool {
        matches!(self, Family::ExpanderBlowup | Family::RandomRegular)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
                Error::param(s, format!("unknown family; expected one of {}", names.join(", ")))
            })
    }
}

/// A named construction with its integer parameters, e.g.
/// `blown-cycle` with `n=7,k=2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub params: BTreeMap<String, u64>,
}

impl FamilySpec {
    pub fn new(family: Family, params: &[(&str, u64)]) -> FamilySpec {
        FamilySpec {
            family,
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        }
    }

    /// Parses `--params` syntax: comma-separated `key=value` pairs.
    pub fn parse(family: &str, params: &str) -> Result<FamilySpec> {
        let family: Family = family.parse()?;
        let mut map = BTreeMap::new();
        for item in params.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::param(family.name(), format!("expected key=value, got {item:?}")))?;
            let value = value.trim().parse::<u64>().map_err(|_| {
                Error::param(family.name(), format!("parameter {key} must be a non-negative integer"))
            })?;
            map.insert(key.trim().to_string(), value);
        }
        let spec = FamilySpec { family, params: map };
        spec.validate_keys()?;
        Ok(spec)
    }

    fn validate_keys(&self) -> Result<()> {
        let (required, optional) = self.family.keys();
        for key in self.params.keys() {
            if !required.contains(&key.as_str()) && !optional.contains(&key.as_str()) {
                return Err(Error::param(self.family.name(), format!("unknown parameter {key:?}")));
            }
        }
        for key in required {
            if !self.params.contains_key(*key) {
                return Err(Error::param(self.family.name(), format!("missing parameter {key:?}")));
            }
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<u64> {
        self.params.get(key).copied()
    }

    fn need(&self, key: &str) -> Result<usize> {
        self.get(key)
            .map(|v| v as usize)
            .ok_or_else(|| Error::param(self.family.name(), format!("missing parameter {key:?}")))
    }

    pub fn with_param(&self, key: &str, value: u64) -> FamilySpec {
        let mut out = self.clone();
        out.params.insert(key.to_string(), value);
        out
    }

    /// Same family with its size parameter replaced.
    pub fn with_size(&self, size: u64) -> FamilySpec {
        self.with_param(self.family.size_key(), size)
    }

    pub fn seed(&self) -> u64 {
        self.get("seed").unwrap_or(0)
    }

    pub fn build(&self) -> Result<Graph> {
        self.validate_keys()?;
        match self.family {
            Family::Cycle => cycle(self.need("n")?),
            Family::CyclePower => cycle_power(self.need("n")?, self.need("k")?),
            Family::BlownCycle => blown_up_cycle(self.need("n")?, self.need("k")?),
            Family::CompleteMinusMatching => complete_minus_matching(self.need("d")?),
            Family::ProductBlowup => product_cycle_blowup(self.need("m")?, self.need("t")?),
            Family::ExpanderBlowup => expander_blowup(self.need("n")?, self.need("t")?, self.seed()),
            Family::RandomRegular => {
                let opts = RandomRegularOptions {
                    connected: self.get("connected").unwrap_or(1) != 0,
                    ..RandomRegularOptions::default()
                };
                random_regular_with(self.need("n")?, self.need("d")?, self.seed(), opts)
            }
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}({})", self.family, params.join(","))
    }
}
