//! Isomorphism collapsing for small labeled graphs.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order whose upper triangle fits a `u64` code.
const MAX_CANONICAL_N: usize = 11;

/// Lexicographically largest upper-triangle adjacency code over all vertex
/// orderings. Bits are taken column by column: `(0,1), (0,2), (1,2), (0,3), …`.
pub fn canonical_code(g: &Graph) -> Result<u64> {
    let n = g.n();
    if n > MAX_CANONICAL_N {
        return Err(Error::Infeasible(format!(
            "canonical form supports n <= {MAX_CANONICAL_N}, got {n}"
        )));
    }
    let total = n * n.saturating_sub(1) / 2;
    let mut search = Canon {
        g,
        n,
        total,
        perm: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
    };
    search.run(0, 0);
    Ok(search.best.unwrap_or(0))
}

struct Canon<'a> {
    g: &'a Graph,
    n: usize,
    total: usize,
    perm: Vec<usize>,
    used: Vec<bool>,
    best: Option<u64>,
}

impl Canon<'_> {
    fn run(&mut self, code: u64, bits: usize) {
        let k = self.perm.len();
        if k == self.n {
            if self.best.is_none_or(|b| code > b) {
                self.best = Some(code);
            }
            return;
        }
        for u in 0..self.n {
            if self.used[u] {
                continue;
            }
            let mut next = code;
            for &p in &self.perm {
                next = next << 1 | self.g.has_edge(p, u) as u64;
            }
            let next_bits = bits + k;
            if let Some(b) = self.best {
                if next < b >> (self.total - next_bits) {
                    continue;
                }
            }
            self.used[u] = true;
            self.perm.push(u);
            self.run(next, next_bits);
            self.perm.pop();
            self.used[u] = false;
        }
    }
}

/// Canonical code → number of labeled graphs in that class.
pub fn isomorphism_classes<'a, I>(graphs: I) -> Result<BTreeMap<u64, usize>>
where
    I: IntoIterator<Item = &'a Graph>,
{
    let mut classes = BTreeMap::new();
    for g in graphs {
        *classes.entry(canonical_code(g)?).or_insert(0) += 1;
    }
    Ok(classes)
}

/// Size of the automorphism group, by backtracking over partial
/// adjacency-preserving maps.
pub fn automorphism_count(g: &Graph) -> u64 {
    fn extend(g: &Graph, image: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        let k = image.len();
        if k == g.n() {
            return 1;
        }
        let mut total = 0;
        for u in 0..g.n() {
            if used[u] || g.degree(u) != g.degree(k) {
                continue;
            }
            if (0..k).all(|i| g.has_edge(i, k) == g.has_edge(image[i], u)) {
                used[u] = true;
                image.push(u);
                total += extend(g, image, used);
                image.pop();
                used[u] = false;
            }
        }
        total
    }
    extend(g, &mut Vec::with_capacity(g.n()), &mut vec![false; g.n()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, petersen, RegularEnumerator};

    fn relabel(g: &Graph, perm: &[usize]) -> Graph {
        Graph::from_edge_list(g.n(), g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap()
    }

    #[test]
    fn invariant_under_relabelling() {
        let g = petersen();
        let perm = [3, 7, 1, 9, 0, 2, 8, 4, 6, 5];
        assert_eq!(canonical_code(&g).unwrap(), canonical_code(&relabel(&g, &perm)).unwrap());
        let c = cycle(6).unwrap();
        let prism = Graph::from_edge_list(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)]).unwrap();
        assert_ne!(canonical_code(&c).unwrap(), canonical_code(&prism).unwrap());
    }

    #[test]
    fn automorphism_groups() {
        assert_eq!(automorphism_count(&petersen()), 120);
        assert_eq!(automorphism_count(&cycle(7).unwrap()), 14);
        assert_eq!(automorphism_count(&Graph::complete(5)), 120);
    }

    #[test]
    fn cubic_census_small() {
        // Connected cubic graphs up to isomorphism: 1, 2, 5 on 4, 6, 8 vertices.
        for (n, classes) in [(4, 1), (6, 2), (8, 5)] {
            let graphs: Vec<Graph> = RegularEnumerator::new(n, 3, true).unwrap().collect();
            let collapsed = isomorphism_classes(&graphs).unwrap();
            assert_eq!(collapsed.len(), classes, "n={n}");
        }
    }

    #[test]
    fn orbit_stabilizer_links_labelled_and_class_counts() {
        let graphs: Vec<Graph> = RegularEnumerator::new(8, 3, false).unwrap().collect();
        let mut reps: BTreeMap<u64, (Graph, usize)> = BTreeMap::new();
        for g in &graphs {
            reps.entry(canonical_code(g).unwrap()).or_insert((g.clone(), 0)).1 += 1;
        }
        for (g, count) in reps.values() {
            assert_eq!(*count as u64 * automorphism_count(g), 40320);
        }
    }
}
