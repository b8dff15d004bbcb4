use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_cycle_power_proposition, Subject, TheoremId, TheoremVerdict};
use crate::edgelist::write_edge_list;
use crate::error::{Error, Result};
use crate::generators::{Family, FamilySpec, RegularEnumerator};
use crate::graph::Graph;

/// Where a sweep draws its graphs from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    /// `samples` graphs of a family; stochastic families use seeds
    /// `seed, seed + 1, …`, deterministic ones are built once.
    Family {
        spec: FamilySpec,
        samples: usize,
        seed: u64,
    },
    Enumeration {
        n: usize,
        d: usize,
        connected_only: bool,
    },
    Graphs(Vec<Graph>),
}

impl std::fmt::Display for Source {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Source::Family { spec, samples, seed } => {
                write!(f, "{spec} samples={samples} seed={seed}")
            }
            Source::Enumeration { n, d, connected_only } => {
                write!(f, "enumerate n={n} d={d} connected={connected_only}")
            }
            Source::Graphs(gs) => write!(f, "{} explicit graphs", gs.len()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckAggregate {
    pub check: TheoremId,
    pub graphs: usize,
    pub applicable: usize,
    pub passed: usize,
    pub failed: usize,
    /// Edge list of the lexicographically least failing graph.
    pub counterexample: Option<String>,
}

impl CheckAggregate {
    fn empty(check: TheoremId) -> Self {
        CheckAggregate {
            check,
            graphs: 0,
            applicable: 0,
            passed: 0,
            failed: 0,
            counterexample: None,
        }
    }

    fn add(&mut self, verdict: &TheoremVerdict, g: &Graph) {
        self.graphs += 1;
        if verdict.applicable {
            self.applicable += 1;
        }
        match verdict.passed {
            Some(true) => self.passed += 1,
            Some(false) => {
                self.failed += 1;
                let text = write_edge_list(g);
                if self.counterexample.as_ref().is_none_or(|c| text < *c) {
                    self.counterexample = Some(text);
                }
            }
            None => {}
        }
    }

    fn merge(mut self, other: CheckAggregate) -> Self {
        self.graphs += other.graphs;
        self.applicable += other.applicable;
        self.passed += other.passed;
        self.failed += other.failed;
        self.counterexample = match (self.counterexample, other.counterexample) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub source: String,
    pub graphs: usize,
    pub checks: Vec<CheckAggregate>,
}

impl SweepReport {
    pub fn failed(&self) -> usize {
        self.checks.iter().map(|c| c.failed).sum()
    }

    pub fn check(&self, id: TheoremId) -> Option<&CheckAggregate> {
        self.checks.iter().find(|c| c.check == id)
    }
}

type Acc = (usize, Vec<CheckAggregate>);

fn empty_acc(checks: &[TheoremId]) -> Acc {
    (0, checks.iter().map(|&c| CheckAggregate::empty(c)).collect())
}

fn merge_acc(a: Acc, b: Acc) -> Acc {
    let merged = a.1.into_iter().zip(b.1).map(|(x, y)| x.merge(y)).collect();
    (a.0 + b.0, merged)
}

fn verdict_for(subject: &Subject, check: TheoremId, proposition: Option<&TheoremVerdict>) -> TheoremVerdict {
    match check {
        TheoremId::SphereBound => subject.sphere_bound(),
        TheoremId::DiameterBound => subject.strongest_diameter_bound(),
        TheoremId::HalfBound => subject.half_bound(),
        TheoremId::BallBound => subject.ball_bound(),
        TheoremId::LayerClaim => subject.layer_claim(),
        TheoremId::CyclePowerProp => proposition.cloned().unwrap_or_else(|| TheoremVerdict::inapplicable(check, None)),
        TheoremId::ConstructionTightness => unreachable!("rejected before the sweep starts"),
    }
}

fn observe(mut acc: Acc, g: &Graph, checks: &[TheoremId], proposition: Option<&TheoremVerdict>) -> Acc {
    let subject = Subject::new(g);
    acc.0 += 1;
    for (agg, &check) in acc.1.iter_mut().zip(checks) {
        agg.add(&verdict_for(&subject, check, proposition), g);
    }
    acc
}

/// Runs each selected check on every graph of `source`. Aggregates do not
/// depend on evaluation order.
pub fn sweep(source: &Source, checks: &[TheoremId]) -> Result<SweepReport> {
    if let Some(bad) = checks.iter().find(|c| **c == TheoremId::ConstructionTightness) {
        return Err(Error::param(
            "sweep",
            format!("{bad} is a per-construction check, not a sweepable bound"),
        ));
    }
    let (graphs, aggregates) = match source {
        Source::Family { spec, samples, seed } => {
            let proposition = if spec.family == Family::CyclePower && checks.contains(&TheoremId::CyclePowerProp) {
                let (n, k) = (spec.get("n").unwrap_or(0) as usize, spec.get("k").unwrap_or(0) as usize);
                Some(check_cycle_power_proposition(n, k)?.verdict)
            } else {
                None
            };
            let count = if spec.family.is_stochastic() { *samples } else { (*samples).min(1) };
            let built: Vec<Result<Graph>> = (0..count)
                .into_par_iter()
                .map(|i| {
                    let s = if spec.family.is_stochastic() {
                        spec.with_param("seed", seed.wrapping_add(i as u64))
                    } else {
                        spec.clone()
                    };
                    s.build()
                })
                .collect();
            let graphs: Vec<Graph> = built.into_iter().collect::<Result<_>>()?;
            graphs
                .par_iter()
                .fold(|| empty_acc(checks), |acc, g| observe(acc, g, checks, proposition.as_ref()))
                .reduce(|| empty_acc(checks), merge_acc)
        }
        Source::Enumeration { n, d, connected_only } => {
            let enumerator = RegularEnumerator::new(*n, *d, *connected_only)?;
            enumerator
                .prefix_branches()
                .into_par_iter()
                .map(|branch| branch.fold(empty_acc(checks), |acc, g| observe(acc, &g, checks, None)))
                .reduce(|| empty_acc(checks), merge_acc)
        }
        Source::Graphs(gs) => gs
            .par_iter()
            .fold(|| empty_acc(checks), |acc, g| observe(acc, g, checks, None))
            .reduce(|| empty_acc(checks), merge_acc),
    };
    Ok(SweepReport {
        source: source.to_string(),
        graphs,
        checks: aggregates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_only_is_never_applicable() {
        let report = sweep(
            &Source::Enumeration { n: 4, d: 3, connected_only: false },
            &[TheoremId::SphereBound],
        )
        .unwrap();
        let agg = report.check(TheoremId::SphereBound).unwrap();
        assert_eq!((agg.graphs, agg.applicable, agg.failed), (1, 0, 0));
    }

    #[test]
    fn cubic_eight_sweep() {
        let report = sweep(
            &Source::Enumeration { n: 8, d: 3, connected_only: true },
            &TheoremId::SWEEPABLE,
        )
        .unwrap();
        assert_eq!(report.graphs, 19320);
        assert_eq!(report.failed(), 0);
        let sphere = report.check(TheoremId::SphereBound).unwrap();
        assert_eq!(sphere.applicable, 19320);
        assert_eq!(report.check(TheoremId::CyclePowerProp).unwrap().applicable, 0);
    }

    #[test]
    fn random_samples_are_deterministic() {
        let source = Source::Family {
            spec: FamilySpec::parse("random-regular", "n=20,d=4").unwrap(),
            samples: 30,
            seed: 7,
        };
        let a = sweep(&source, &TheoremId::SWEEPABLE).unwrap();
        let b = sweep(&source, &TheoremId::SWEEPABLE).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.graphs, 30);
        assert_eq!(a.failed(), 0);
    }

    #[test]
    fn cycle_power_residue_is_an_error() {
        let source = Source::Family {
            spec: FamilySpec::parse("cycle-power", "n=10,k=2").unwrap(),
            samples: 1,
            seed: 0,
        };
        assert!(sweep(&source, &TheoremId::SWEEPABLE).is_err());
        let ok = Source::Family {
            spec: FamilySpec::parse("cycle-power", "n=19,k=2").unwrap(),
            samples: 5,
            seed: 0,
        };
        let report = sweep(&ok, &TheoremId::SWEEPABLE).unwrap();
        assert_eq!(report.graphs, 1);
        assert_eq!(report.check(TheoremId::CyclePowerProp).unwrap().passed, 1);
        assert_eq!(report.check(TheoremId::HalfBound).unwrap().passed, 1);
    }

    #[test]
    fn failures_carry_the_least_counterexample() {
        let mut agg = CheckAggregate::empty(TheoremId::SphereBound);
        let verdict = TheoremVerdict {
            passed: Some(false),
            ..TheoremVerdict::inapplicable(TheoremId::SphereBound, None)
        };
        let g1 = Graph::from_edge_list(3, [(1, 2)]).unwrap();
        let g2 = Graph::from_edge_list(3, [(0, 1)]).unwrap();
        agg.add(&verdict, &g1);
        let mut other = CheckAggregate::empty(TheoremId::SphereBound);
        other.add(&verdict, &g2);
        let merged = agg.merge(other);
        assert_eq!(merged.failed, 2);
        assert_eq!(merged.counterexample.as_deref(), Some("3\n0 1\n"));
        assert!(sweep(&Source::Graphs(vec![]), &[TheoremId::ConstructionTightness]).is_err());
    }
}
