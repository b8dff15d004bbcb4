//! Exhaustive enumeration of labeled `d`-regular graphs.
//!
//! Vertices are processed in order; vertex `i` picks its remaining degree's
//! worth of higher-indexed neighbors as a combination in lexicographic order.
//! A branch is cut as soon as some later vertex needs more neighbors than
//! there are later vertices still open to it.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest `n` accepted per degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationGuard {
    pub max_n_low_degree: usize,
    pub max_n_high_degree: usize,
}

impl Default for EnumerationGuard {
    fn default() -> Self {
        EnumerationGuard {
            max_n_low_degree: 12,
            max_n_high_degree: 10,
        }
    }
}

impl EnumerationGuard {
    /// No limit beyond the 64-vertex word size.
    pub fn unlimited() -> Self {
        EnumerationGuard {
            max_n_low_degree: 64,
            max_n_high_degree: 64,
        }
    }

    pub fn max_n(&self, d: usize) -> usize {
        if d <= 3 {
            self.max_n_low_degree
        } else {
            self.max_n_high_degree
        }
    }
}

struct Frame {
    vertex: usize,
    candidates: Vec<usize>,
    chosen: Vec<usize>,
    applied: bool,
}

/// Iterator over every labeled `d`-regular graph on `n` vertices, each
/// exactly once.
pub struct RegularEnumerator {
    n: usize,
    connected_only: bool,
    remaining: Vec<usize>,
    rows: Vec<u64>,
    stack: Vec<Frame>,
}

impl RegularEnumerator {
    pub fn new(n: usize, d: usize, connected_only: bool) -> Result<Self> {
        Self::with_guard(n, d, connected_only, EnumerationGuard::default())
    }

    pub fn with_guard(
        n: usize,
        d: usize,
        connected_only: bool,
        guard: EnumerationGuard,
    ) -> Result<Self> {
        if n == 0 || d >= n {
            return Err(Error::Infeasible(format!("need 0 <= d < n, got n={n}, d={d}")));
        }
        if (n * d) % 2 == 1 {
            return Err(Error::Infeasible(format!("n*d must be even, got n={n}, d={d}")));
        }
        let limit = guard.max_n(d).min(64);
        if n > limit {
            return Err(Error::Infeasible(format!(
                "n={n} exceeds the size guard {limit} for d={d}"
            )));
        }
        let mut e = RegularEnumerator {
            n,
            connected_only,
            remaining: vec![d; n],
            rows: vec![0; n],
            stack: Vec::new(),
        };
        e.push_frame(0);
        Ok(e)
    }

    /// Splits the search at the first vertex's neighbor choice. The branches
    /// together emit exactly the graphs of `self`, in the same order when
    /// concatenated.
    pub fn prefix_branches(self) -> Vec<RegularEnumerator> {
        let n = self.n;
        let d = self.remaining[0];
        if n < 2 || d == 0 {
            return vec![self];
        }
        let mut out = Vec::new();
        let mut chosen: Vec<usize> = (1..=d).collect();
        loop {
            let mut e = RegularEnumerator {
                n,
                connected_only: self.connected_only,
                remaining: vec![d; n],
                rows: vec![0; n],
                stack: Vec::new(),
            };
            e.remaining[0] = 0;
            for &j in &chosen {
                e.link(0, j);
            }
            if e.feasible_after(0) {
                e.push_frame(1);
                out.push(e);
            }
            if !next_combination(&mut chosen, n - 1, 1) {
                break;
            }
        }
        out
    }

    fn push_frame(&mut self, vertex: usize) {
        let candidates = (vertex + 1..self.n)
            .filter(|&j| self.remaining[j] > 0)
            .collect();
        self.stack.push(Frame {
            vertex,
            candidates,
            chosen: Vec::new(),
            applied: false,
        });
    }

    fn link(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
        self.remaining[v] -= 1;
    }

    fn unlink(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
        self.remaining[v] += 1;
    }

    /// Every vertex after `i` can still reach its degree.
    fn feasible_after(&self, i: usize) -> bool {
        let open = (i + 1..self.n).filter(|&l| self.remaining[l] > 0).count();
        (i + 1..self.n).all(|j| {
            let r = self.remaining[j];
            r == 0 || r < open
        })
    }

    fn connected(&self) -> bool {
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.rows[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == full
    }

    fn emit(&self) -> Graph {
        let adjacency = self
            .rows
            .iter()
            .map(|&row| {
                let mut nbrs = Vec::with_capacity(row.count_ones() as usize);
                let mut r = row;
                while r != 0 {
                    nbrs.push(r.trailing_zeros() as usize);
                    r &= r - 1;
                }
                nbrs
            })
            .collect();
        Graph::from_adjacency_unchecked(adjacency)
    }
}

/// Advances `chosen` (ascending indices into `0..m`, offset by `base`) to the
/// next combination in lexicographic order.
fn next_combination(chosen: &mut [usize], m: usize, base: usize) -> bool {
    let k = chosen.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if chosen[i] - base < m - k + i {
            chosen[i] += 1;
            for j in i + 1..k {
                chosen[j] = chosen[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl Iterator for RegularEnumerator {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        loop {
            let top = self.stack.last_mut()?;
            let vertex = top.vertex;
            let need = self.remaining[vertex];
            if top.applied {
                let chosen = std::mem::take(&mut top.chosen);
                let m = top.candidates.len();
                for &c in &chosen {
                    let j = self.stack.last().unwrap().candidates[c];
                    self.unlink(vertex, j);
                }
                let k = chosen.len();
                self.remaining[vertex] = k;
                let top = self.stack.last_mut().unwrap();
                top.chosen = chosen;
                top.applied = false;
                if !next_combination(&mut top.chosen, m, 0) {
                    self.stack.pop();
                    continue;
                }
            } else if top.chosen.is_empty() && need > 0 {
                if need > top.candidates.len() {
                    self.stack.pop();
                    continue;
                }
                top.chosen = (0..need).collect();
            }
            let top = self.stack.last_mut().unwrap();
            top.applied = true;
            let picks: Vec<usize> = top.chosen.iter().map(|&c| top.candidates[c]).collect();
            let k = picks.len();
            for j in picks {
                self.link(vertex, j);
            }
            self.remaining[vertex] -= k;
            if !self.feasible_after(vertex) {
                continue;
            }
            if vertex + 1 == self.n {
                if self.connected_only && !self.connected() {
                    continue;
                }
                return Some(self.emit());
            }
            self.push_frame(vertex + 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: filter every graph on `n` vertices by degree.
    fn brute_force_count(n: usize, d: usize, connected_only: bool) -> usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        (0u64..1 << pairs.len())
            .filter(|mask| {
                let mut deg = vec![0; n];
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        deg[u] += 1;
                        deg[v] += 1;
                    }
                }
                if deg.iter().any(|&x| x != d) {
                    return false;
                }
                if !connected_only {
                    return true;
                }
                let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
                Graph::from_edge_list(n, edges).unwrap().is_connected()
            })
            .count()
    }

    #[test]
    fn k4_is_the_only_cubic_graph_on_four() {
        let all: Vec<Graph> = RegularEnumerator::new(4, 3, false).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_complete());
    }

    #[test]
    fn labeled_hexagons() {
        assert_eq!(RegularEnumerator::new(6, 2, true).unwrap().count(), 60);
        assert_eq!(RegularEnumerator::new(6, 2, false).unwrap().count(), 70);
    }

    #[test]
    fn matches_brute_force_filtering() {
        for n in 1..=6 {
            for d in 0..n {
                if (n * d) % 2 == 1 {
                    continue;
                }
                for connected in [false, true] {
                    let got: Vec<Graph> = RegularEnumerator::new(n, d, connected).unwrap().collect();
                    assert_eq!(got.len(), brute_force_count(n, d, connected), "n={n} d={d} c={connected}");
                    let mut uniq = got.clone();
                    uniq.sort_by_key(|g| g.edges().collect::<Vec<_>>());
                    uniq.dedup();
                    assert_eq!(uniq.len(), got.len());
                    assert!(got.iter().all(|g| g.regular_degree() == Some(d)));
                }
            }
        }
    }

    #[test]
    fn branches_partition_the_stream() {
        let whole: Vec<Graph> = RegularEnumerator::new(8, 3, false).unwrap().collect();
        let split: Vec<Graph> = RegularEnumerator::new(8, 3, false)
            .unwrap()
            .prefix_branches()
            .into_iter()
            .flatten()
            .collect();
        assert_eq!(whole.len(), 19355);
        assert_eq!(whole, split);
    }

    #[test]
    fn guard_and_feasibility() {
        assert!(RegularEnumerator::new(5, 3, false).is_err());
        assert!(RegularEnumerator::new(4, 4, false).is_err());
        assert!(RegularEnumerator::new(14, 3, false).is_err());
        assert!(RegularEnumerator::new(11, 4, false).is_err());
        assert!(RegularEnumerator::with_guard(14, 3, false, EnumerationGuard::unlimited()).is_ok());
    }
}
