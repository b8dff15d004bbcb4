use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::expansion::link_expansion_profile;
use crate::generators::FamilySpec;

/// One size of a family ladder: how well its link graphs expand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExploreRow {
    /// Value of the family's size parameter.
    pub size: u64,
    pub n: usize,
    pub d: Option<usize>,
    pub diameter: usize,
    pub min_link_expansion_num: Option<u64>,
    pub min_link_expansion_den: Option<u64>,
    /// Every defined link was computed exhaustively.
    pub exact: bool,
    pub defined_links: usize,
    pub disconnected_links: usize,
    /// Some link has expansion exactly zero.
    pub zero: bool,
    pub seed: u64,
}

impl ExploreRow {
    pub fn min_link_expansion(&self) -> Option<Ratio<u64>> {
        Some(Ratio::new_raw(self.min_link_expansion_num?, self.min_link_expansion_den?))
    }

    pub fn disconnected_fraction(&self) -> Option<Ratio<u64>> {
        (self.defined_links > 0)
            .then(|| Ratio::new(self.disconnected_links as u64, self.defined_links as u64))
    }
}

/// Minimum link expansion along a size ladder of one family. Purely
/// descriptive: nothing about the limit is inferred.
pub fn conjecture_explorer(
    spec: &FamilySpec,
    sizes: &[u64],
    exact_cap: usize,
    seed: u64,
) -> Result<Vec<ExploreRow>> {
    sizes
        .iter()
        .map(|&size| {
            let mut s = spec.with_size(size);
            if spec.family.is_stochastic() {
                s = s.with_param("seed", seed);
            }
            let g = s.build()?;
            let profile = link_expansion_profile(&g, exact_cap, seed)?;
            let defined: Vec<_> = profile.defined().collect();
            let min = profile.global_min();
            Ok(ExploreRow {
                size,
                n: g.n(),
                d: g.regular_degree(),
                diameter: profile.records.iter().map(|r| r.r).max().unwrap_or(0),
                min_link_expansion_num: min.map(|m| *m.numer()),
                min_link_expansion_den: min.map(|m| *m.denom()),
                exact: defined.iter().all(|r| r.exact),
                defined_links: defined.len(),
                disconnected_links: defined.iter().filter(|r| r.components > 1).count(),
                zero: min == Some(Ratio::from_integer(0)),
                seed,
            })
        })
        .collect()
}
