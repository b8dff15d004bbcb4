//! Vertex expansion `h(G) = min |∂S| / |S|` over `0 < |S| <= ⌊n/2⌋`.
//!
//! Ratios are compared by cross-multiplication; ties go to the smallest
//! subset bitmask (bit `i` set for vertex `i`).

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::link::PAR_ROOTS_MIN;

pub const DEFAULT_EXACT_CAP: usize = 26;
pub const DEFAULT_ITERATIONS: usize = 64;

/// Hard ceiling for the exact sweep: masks are `u64`.
const MAX_EXACT_N: usize = 40;
/// Gray-code steps per parallel work unit.
const CHUNK_LOG2: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionResult {
    pub value: Ratio<u64>,
    /// Minimizing subset, ascending.
    pub minimizer: Vec<usize>,
    /// `true` when every admissible subset was examined.
    pub exact: bool,
    pub subsets_examined: u64,
}

/// Outer vertex boundary `∂S`: vertices outside `S` with a neighbor in `S`.
pub fn vertex_boundary(g: &Graph, s: &[usize]) -> Vec<usize> {
    let mut in_s = vec![false; g.n()];
    for &u in s {
        in_s[u] = true;
    }
    let mut hit = vec![false; g.n()];
    for &u in s {
        for &w in g.neighbors(u) {
            if !in_s[w] {
                hit[w] = true;
            }
        }
    }
    (0..g.n()).filter(|&w| hit[w]).collect()
}

/// Incrementally maintained `(S, |∂S|)`.
struct BoundaryState<'a> {
    g: &'a Graph,
    in_s: Vec<bool>,
    /// `|N(w) ∩ S|` for every vertex.
    hits: Vec<u32>,
    size: usize,
    boundary: usize,
}

impl<'a> BoundaryState<'a> {
    fn new(g: &'a Graph) -> Self {
        BoundaryState {
            g,
            in_s: vec![false; g.n()],
            hits: vec![0; g.n()],
            size: 0,
            boundary: 0,
        }
    }

    fn insert(&mut self, u: usize) {
        debug_assert!(!self.in_s[u]);
        self.in_s[u] = true;
        self.size += 1;
        if self.hits[u] > 0 {
            self.boundary -= 1;
        }
        for &w in self.g.neighbors(u) {
            self.hits[w] += 1;
            if self.hits[w] == 1 && !self.in_s[w] {
                self.boundary += 1;
            }
        }
    }

    fn remove(&mut self, u: usize) {
        debug_assert!(self.in_s[u]);
        self.in_s[u] = false;
        self.size -= 1;
        for &w in self.g.neighbors(u) {
            self.hits[w] -= 1;
            if self.hits[w] == 0 && !self.in_s[w] {
                self.boundary -= 1;
            }
        }
        if self.hits[u] > 0 {
            self.boundary += 1;
        }
    }

    fn toggle(&mut self, u: usize) {
        if self.in_s[u] {
            self.remove(u)
        } else {
            self.insert(u)
        }
    }

    fn members(&self) -> Vec<usize> {
        (0..self.g.n()).filter(|&u| self.in_s[u]).collect()
    }
}

/// `a/b < c/d` for non-negative integers with positive denominators.
fn less(a: usize, b: usize, c: usize, d: usize) -> bool {
    (a as u128) * (d as u128) < (c as u128) * (b as u128)
}

#[derive(Clone, Copy)]
struct Best {
    boundary: usize,
    size: usize,
    mask: u64,
    examined: u64,
}

impl Best {
    fn better_than(&self, other: &Best) -> bool {
        if other.size == 0 {
            return self.size > 0;
        }
        if self.size == 0 {
            return false;
        }
        less(self.boundary, self.size, other.boundary, other.size)
            || (!less(other.boundary, other.size, self.boundary, self.size) && self.mask < other.mask)
    }

    fn merge(self, other: Best) -> Best {
        let examined = self.examined + other.examined;
        let mut best = if other.better_than(&self) { other } else { self };
        best.examined = examined;
        best
    }

    const NONE: Best = Best {
        boundary: 0,
        size: 0,
        mask: 0,
        examined: 0,
    };
}

fn sweep_chunk(g: &Graph, start: u64, end: u64, half: usize) -> Best {
    let mut state = BoundaryState::new(g);
    let gray = |i: u64| i ^ (i >> 1);
    let first = gray(start);
    for u in 0..g.n() {
        if first >> u & 1 == 1 {
            state.insert(u);
        }
    }
    let mut best = Best::NONE;
    let mut mask = first;
    for i in start..end {
        if i > start {
            let u = i.trailing_zeros() as usize;
            state.toggle(u);
            mask ^= 1 << u;
        }
        if state.size == 0 || state.size > half {
            continue;
        }
        best.examined += 1;
        let cand = Best {
            boundary: state.boundary,
            size: state.size,
            mask,
            examined: 0,
        };
        if cand.better_than(&best) {
            best = Best {
                examined: best.examined,
                ..cand
            };
        }
    }
    best
}

/// Exhaustive expansion with the default cap of 26 vertices.
pub fn expansion_exact(g: &Graph) -> Result<ExpansionResult> {
    expansion_exact_with_cap(g, DEFAULT_EXACT_CAP)
}

pub fn expansion_exact_with_cap(g: &Graph, cap: usize) -> Result<ExpansionResult> {
    let n = g.n();
    if n < 2 {
        return Err(Error::ExpansionUndefined);
    }
    let cap = cap.min(MAX_EXACT_N);
    if n > cap {
        return Err(Error::ExactCapExceeded { n, cap });
    }
    let half = n / 2;
    let total = 1u64 << n;
    let best = if n > CHUNK_LOG2 + 2 {
        let chunk = 1u64 << CHUNK_LOG2;
        (0..total / chunk)
            .into_par_iter()
            .map(|c| sweep_chunk(g, c * chunk, (c + 1) * chunk, half))
            .reduce(|| Best::NONE, Best::merge)
    } else {
        sweep_chunk(g, 0, total, half)
    };
    let minimizer: Vec<usize> = (0..n).filter(|&u| best.mask >> u & 1 == 1).collect();
    Ok(ExpansionResult {
        value: Ratio::new(best.boundary as u64, best.size as u64),
        minimizer,
        exact: true,
        subsets_examined: best.examined,
    })
}

/// Heuristic search; the returned value is achieved by the returned subset,
/// so it bounds `h(G)` from above. Deterministic for a fixed seed.
pub fn expansion_upper_bound(g: &Graph, seed: u64, iterations: usize) -> Result<ExpansionResult> {
    let n = g.n();
    if n < 2 {
        return Err(Error::ExpansionUndefined);
    }
    let half = n / 2;

    // A component of at most half the vertices has empty boundary.
    let mut seen = vec![false; n];
    let mut examined = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let comp: Vec<usize> = g.bfs_layers(s).layers.into_iter().flatten().collect();
        comp.iter().for_each(|&u| seen[u] = true);
        examined += 1;
        if comp.len() <= half {
            let mut minimizer = comp;
            minimizer.sort_unstable();
            return Ok(ExpansionResult {
                value: Ratio::from_integer(0),
                minimizer,
                exact: false,
                subsets_examined: examined,
            });
        }
    }

    let trial = |it: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(it as u64);
        grow_and_descend(g, half, &mut rng)
    };
    let trials: Vec<(usize, usize, Vec<usize>, u64)> = if n >= PAR_ROOTS_MIN {
        (0..iterations.max(1)).into_par_iter().map(trial).collect()
    } else {
        (0..iterations.max(1)).map(trial).collect()
    };
    let mut best: Option<(usize, usize, Vec<usize>)> = None;
    for (boundary, size, set, count) in trials {
        examined += count;
        let replace = match &best {
            None => true,
            Some((b, s, _)) => less(boundary, size, *b, *s),
        };
        if replace {
            best = Some((boundary, size, set));
        }
    }
    let (boundary, size, minimizer) = best.expect("at least one trial");
    Ok(ExpansionResult {
        value: Ratio::new(boundary as u64, size as u64),
        minimizer,
        exact: false,
        subsets_examined: examined,
    })
}

/// One randomized BFS growth from a random root, scored at every prefix
/// size, followed by add/remove/swap local descent from the best prefix.
fn grow_and_descend(g: &Graph, half: usize, rng: &mut ChaCha8Rng) -> (usize, usize, Vec<usize>, u64) {
    let n = g.n();
    let root = rng.gen_range(0..n);
    let mut order = Vec::with_capacity(half);
    let mut queued = vec![false; n];
    let mut queue = std::collections::VecDeque::from([root]);
    queued[root] = true;
    let mut nbrs = Vec::new();
    while let Some(u) = queue.pop_front() {
        order.push(u);
        if order.len() == half {
            break;
        }
        nbrs.clear();
        nbrs.extend(g.neighbors(u).iter().copied().filter(|&w| !queued[w]));
        nbrs.shuffle(rng);
        for &w in &nbrs {
            queued[w] = true;
            queue.push_back(w);
        }
    }

    let mut state = BoundaryState::new(g);
    let mut examined = 0u64;
    let mut best_len = 1;
    let mut best = (usize::MAX, 1);
    for (i, &u) in order.iter().enumerate() {
        state.insert(u);
        examined += 1;
        if i == 0 || less(state.boundary, state.size, best.0, best.1) {
            best = (state.boundary, state.size);
            best_len = i + 1;
        }
    }
    for &u in &order[best_len..] {
        state.remove(u);
    }

    // Candidate outsiders: everything for small graphs, else the two-step
    // neighborhood of S.
    loop {
        let current = (state.boundary, state.size);
        let members = state.members();
        let outsiders: Vec<usize> = if n <= 64 {
            (0..n).filter(|&w| !state.in_s[w]).collect()
        } else {
            let mut near = vec![false; n];
            for &u in &members {
                for &w in g.neighbors(u) {
                    near[w] = true;
                    for &x in g.neighbors(w) {
                        near[x] = true;
                    }
                }
            }
            (0..n).filter(|&w| near[w] && !state.in_s[w]).collect()
        };
        let mut best_move: Option<(Option<usize>, Option<usize>, usize, usize)> = None;
        let mut consider = |state: &BoundaryState, out: Option<usize>, inn: Option<usize>| {
            let (b, s) = (state.boundary, state.size);
            let target = best_move.map_or(current, |m| (m.2, m.3));
            if less(b, s, target.0, target.1) {
                best_move = Some((out, inn, b, s));
            }
        };
        if state.size > 1 {
            for &u in &members {
                state.remove(u);
                examined += 1;
                consider(&state, Some(u), None);
                state.insert(u);
            }
        }
        if state.size < half {
            for &w in &outsiders {
                state.insert(w);
                examined += 1;
                consider(&state, None, Some(w));
                state.remove(w);
            }
        }
        for &u in &members {
            state.remove(u);
            for &w in &outsiders {
                state.insert(w);
                examined += 1;
                consider(&state, Some(u), Some(w));
                state.remove(w);
            }
            state.insert(u);
        }
        match best_move {
            None => break,
            Some((out, inn, _, _)) => {
                if let Some(u) = out {
                    state.remove(u);
                }
                if let Some(w) = inn {
                    state.insert(w);
                }
            }
        }
    }
    (state.boundary, state.size, state.members(), examined)
}

/// Expansion of one link graph `L_r(v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionRecord {
    pub v: usize,
    pub r: usize,
    pub size: usize,
    /// `None` for single-vertex links, which admit no subset.
    pub h_num: Option<u64>,
    pub h_den: Option<u64>,
    pub exact: bool,
    pub components: usize,
}

impl ExpansionRecord {
    pub fn h(&self) -> Option<Ratio<u64>> {
        Some(Ratio::new_raw(self.h_num?, self.h_den?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkExpansionProfile {
    pub global_min_num: Option<u64>,
    pub global_min_den: Option<u64>,
    pub records: Vec<ExpansionRecord>,
}

impl LinkExpansionProfile {
    pub fn global_min(&self) -> Option<Ratio<u64>> {
        Some(Ratio::new_raw(self.global_min_num?, self.global_min_den?))
    }

    pub fn defined(&self) -> impl Iterator<Item = &ExpansionRecord> {
        self.records.iter().filter(|r| r.h_num.is_some())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("profile serializes")
    }
}

fn link_seed(seed: u64, v: usize, r: usize) -> u64 {
    // splitmix64 finalizer over (seed, v, r)
    let mut z = seed ^ ((v as u64) << 32 | r as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn root_expansions(g: &Graph, v: usize, exact_cap: usize, seed: u64) -> Result<Vec<ExpansionRecord>> {
    let layers = g.bfs_layers(v);
    let mut out = Vec::with_capacity(layers.eccentricity);
    for r in 1..=layers.eccentricity {
        let link = g.induced_subgraph(&layers.layers[r])?;
        let h = &link.graph;
        let components = {
            let mut seen = vec![false; h.n()];
            let mut count = 0;
            for s in 0..h.n() {
                if !seen[s] {
                    count += 1;
                    h.bfs_layers(s).layers.iter().flatten().for_each(|&u| seen[u] = true);
                }
            }
            count
        };
        let result = match h.n() {
            1 => None,
            size if size <= exact_cap.min(MAX_EXACT_N) => Some(expansion_exact_with_cap(h, exact_cap)?),
            _ => Some(expansion_upper_bound(h, link_seed(seed, v, r), DEFAULT_ITERATIONS)?),
        };
        out.push(ExpansionRecord {
            v,
            r,
            size: h.n(),
            h_num: result.as_ref().map(|x| *x.value.numer()),
            h_den: result.as_ref().map(|x| *x.value.denom()),
            exact: result.as_ref().is_none_or(|x| x.exact),
            components,
        });
    }
    Ok(out)
}

/// Expansion of every link graph `L_r(v)`, exact when the sphere has at most
/// `exact_cap` vertices and a seeded upper bound otherwise.
pub fn link_expansion_profile(g: &Graph, exact_cap: usize, seed: u64) -> Result<LinkExpansionProfile> {
    if g.n() < 2 {
        return Err(Error::TooSmall { n: g.n(), needed: 2 });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let per_root: Vec<Result<Vec<ExpansionRecord>>> = if g.n() >= PAR_ROOTS_MIN {
        (0..g.n())
            .into_par_iter()
            .map(|v| root_expansions(g, v, exact_cap, seed))
            .collect()
    } else {
        (0..g.n()).map(|v| root_expansions(g, v, exact_cap, seed)).collect()
    };
    let mut records = Vec::new();
    for r in per_root {
        records.extend(r?);
    }
    let min = records.iter().filter_map(ExpansionRecord::h).min();
    Ok(LinkExpansionProfile {
        global_min_num: min.map(|m| *m.numer()),
        global_min_den: min.map(|m| *m.denom()),
        records,
    })
}
