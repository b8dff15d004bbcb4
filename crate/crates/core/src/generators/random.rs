use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomRegularOptions {
    /// Keep resampling until the graph is connected.
    pub connected: bool,
    pub max_attempts: usize,
}

impl Default for RandomRegularOptions {
    fn default() -> Self {
        RandomRegularOptions {
            connected: false,
            max_attempts: 1_000_000,
        }
    }
}

/// A simple `d`-regular graph on `n` vertices from the pairing model,
/// restarting on any loop or repeated pair.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    random_regular_with(n, d, seed, RandomRegularOptions::default())
}

pub fn random_regular_with(
    n: usize,
    d: usize,
    seed: u64,
    opts: RandomRegularOptions,
) -> Result<Graph> {
    if (n * d) % 2 == 1 {
        return Err(Error::param(
            "random-regular",
            format!("n*d must be even, got n={n}, d={d}"),
        ));
    }
    if d >= n {
        return Err(Error::param(
            "random-regular",
            format!("need d < n, got n={n}, d={d}"),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..n * d).map(|p| p / d.max(1)).collect();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::with_capacity(d); n];
    'attempt: for _ in 0..opts.max_attempts {
        points.shuffle(&mut rng);
        adjacency.iter_mut().for_each(Vec::clear);
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || adjacency[u].contains(&v) {
                continue 'attempt;
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let g = Graph::from_adjacency_unchecked(adjacency.clone());
        if opts.connected && !g.is_connected() {
            continue;
        }
        return Ok(g);
    }
    Err(Error::RetryLimit {
        n,
        d,
        attempts: opts.max_attempts,
    })
}

/// A connected random cubic graph on `n_base` vertices blown up to
/// `t`-cliques; `(4t − 1)`-regular.
pub fn expander_blowup(n_base: usize, t: usize, seed: u64) -> Result<Graph> {
    if n_base < 4 || n_base % 2 == 1 || t == 0 {
        return Err(Error::param(
            "expander-blowup",
            format!("need even n_base >= 4 and t >= 1, got n_base={n_base}, t={t}"),
        ));
    }
    let opts = RandomRegularOptions {
        connected: true,
        ..RandomRegularOptions::default()
    };
    random_regular_with(n_base, 3, seed, opts)?.blow_up(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn only_cubic_graph_on_four_vertices() {
        for seed in 0..5 {
            assert!(random_regular(4, 3, seed).unwrap().is_complete());
        }
    }

    #[test]
    fn sizes_and_simplicity() {
        for seed in 0..20 {
            let g = random_regular(10, 3, seed).unwrap();
            assert_eq!((g.edge_count(), g.regular_degree()), (15, Some(3)));
            assert!(g.check_invariants().is_ok());
        }
        assert_eq!(random_regular(7, 0, 1).unwrap().edge_count(), 0);
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(random_regular(30, 4, 9).unwrap(), random_regular(30, 4, 9).unwrap());
        assert_ne!(random_regular(30, 4, 9).unwrap(), random_regular(30, 4, 10).unwrap());
    }

    #[test]
    fn bad_parameters() {
        assert!(random_regular(5, 3, 0).is_err());
        assert!(random_regular(4, 4, 0).is_err());
        let tight = RandomRegularOptions {
            connected: false,
            max_attempts: 0,
        };
        assert_eq!(
            random_regular_with(10, 3, 0, tight),
            Err(Error::RetryLimit { n: 10, d: 3, attempts: 0 })
        );
    }

    #[test]
    fn expander_blowups() {
        let g = expander_blowup(10, 1, 4).unwrap();
        assert_eq!((g.n(), g.regular_degree()), (10, Some(3)));
        assert!(g.is_connected());
        let g = expander_blowup(20, 3, 4).unwrap();
        assert_eq!((g.n(), g.regular_degree()), (60, Some(11)));
        assert!(expander_blowup(9, 1, 0).is_err());
    }
}
