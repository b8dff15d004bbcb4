//! Spheres, balls, link graphs and their degree statistics.
//!
//! The report kernels never materialize link graphs: one BFS per root
//! classifies every neighbor of `u` as inner (previous layer), same-layer or
//! outer, and all sphere and ball statistics follow from those counts.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, InducedSubgraph, LayerDecomposition};

/// Roots are fanned out over the thread pool from this order upwards.
pub(crate) const PAR_ROOTS_MIN: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Sphere,
    Ball,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Sphere => "sphere",
            Mode::Ball => "ball",
        })
    }
}

/// Degree statistics of one link graph (sphere mode) or ball graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkRecord {
    pub v: usize,
    pub r: usize,
    /// Order of the induced graph (sphere or ball size, depending on mode).
    pub sphere_size: usize,
    pub min_degree: usize,
    pub avg_degree_num: u64,
    pub avg_degree_den: u64,
    pub components: usize,
}

impl LinkRecord {
    pub fn avg_degree(&self) -> Ratio<u64> {
        Ratio::new_raw(self.avg_degree_num, self.avg_degree_den)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    pub v: usize,
    pub r: usize,
}

/// All link (or ball) records of a connected graph and their minimum degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkReport {
    pub mode: Mode,
    pub n: usize,
    pub d: Option<usize>,
    pub diameter: usize,
    pub global_min: usize,
    /// Lexicographically least `(v, r)` attaining `global_min`.
    pub witness: Witness,
    pub links: Vec<LinkRecord>,
}

impl LinkReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// `S_r(v)`, ascending; empty beyond the eccentricity of `v`.
pub fn sphere(g: &Graph, v: usize, r: usize) -> Vec<usize> {
    g.bfs_layers(v).sphere(r).to_vec()
}

/// `B_r(v)`, ascending.
pub fn ball(g: &Graph, v: usize, r: usize) -> Vec<usize> {
    let layers = g.bfs_layers(v);
    let mut out: Vec<usize> = layers.layers.iter().take(r + 1).flatten().copied().collect();
    out.sort_unstable();
    out
}

/// The link graph `G[S_r(v)]`.
pub fn link_graph(g: &Graph, v: usize, r: usize) -> Result<InducedSubgraph> {
    let s = sphere(g, v, r);
    if s.is_empty() {
        return Err(Error::EmptyLink { v, r });
    }
    g.induced_subgraph(&s)
}

/// The ball graph `G[B_r(v)]`.
pub fn ball_graph(g: &Graph, v: usize, r: usize) -> InducedSubgraph {
    g.induced_subgraph(&ball(g, v, r))
        .expect("a ball always contains its centre")
}

/// Per-vertex neighbor counts relative to a root's BFS layers.
pub(crate) struct LayerCounts {
    pub layers: LayerDecomposition,
    /// Neighbors one layer closer to the root.
    pub inner: Vec<usize>,
    /// Neighbors in the same layer.
    pub same: Vec<usize>,
}

impl LayerCounts {
    pub fn new(g: &Graph, root: usize) -> LayerCounts {
        let layers = g.bfs_layers(root);
        let n = g.n();
        let mut inner = vec![0; n];
        let mut same = vec![0; n];
        for u in layers.layers.iter().flatten().copied() {
            let du = layers.dist[u];
            for &w in g.neighbors(u) {
                let dw = layers.dist[w];
                if dw == du {
                    same[u] += 1;
                } else if dw + 1 == du {
                    inner[u] += 1;
                }
            }
        }
        LayerCounts {
            layers,
            inner,
            same,
        }
    }

    /// Components of the graph induced on layer `r`, via same-layer edges.
    fn layer_components(&self, g: &Graph, r: usize, seen: &mut [bool]) -> usize {
        let layer = &self.layers.layers[r];
        let dist = &self.layers.dist;
        let mut components = 0;
        let mut stack = Vec::new();
        for &s in layer {
            if seen[s] {
                continue;
            }
            components += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in g.neighbors(u) {
                    if dist[w] == r && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        components
    }
}

fn record(v: usize, r: usize, size: usize, min: usize, sum: usize, components: usize) -> LinkRecord {
    let avg = Ratio::new(sum as u64, size as u64);
    LinkRecord {
        v,
        r,
        sphere_size: size,
        min_degree: min,
        avg_degree_num: *avg.numer(),
        avg_degree_den: *avg.denom(),
        components,
    }
}

pub(crate) fn root_records(g: &Graph, v: usize, mode: Mode) -> Vec<LinkRecord> {
    if g.n() <= MASK_MAX_VERTICES {
        root_records_mask(g, v, mode)
    } else {
        root_records_general(g, v, mode)
    }
}

fn root_records_general(g: &Graph, v: usize, mode: Mode) -> Vec<LinkRecord> {
    let counts = LayerCounts::new(g, v);
    let layers = &counts.layers.layers;
    let ecc = counts.layers.eccentricity;
    let mut out = Vec::with_capacity(ecc);
    match mode {
        Mode::Sphere => {
            let mut seen = vec![false; g.n()];
            for r in 1..=ecc {
                let layer = &layers[r];
                let min = layer.iter().map(|&u| counts.same[u]).min().unwrap_or(0);
                let sum = layer.iter().map(|&u| counts.same[u]).sum();
                let components = counts.layer_components(g, r, &mut seen);
                out.push(record(v, r, layer.len(), min, sum, components));
            }
        }
        Mode::Ball => {
            // Vertices strictly inside the ball keep their full degree.
            let mut interior_min = usize::MAX;
            let mut interior_sum = 0;
            let mut interior_size = 0;
            for r in 1..=ecc {
                for &u in &layers[r - 1] {
                    interior_min = interior_min.min(g.degree(u));
                    interior_sum += g.degree(u);
                    interior_size += 1;
                }
                let rim = layers[r].iter().map(|&u| counts.inner[u] + counts.same[u]);
                let rim_min = rim.clone().min().unwrap_or(usize::MAX);
                let rim_sum: usize = rim.sum();
                out.push(record(
                    v,
                    r,
                    interior_size + layers[r].len(),
                    interior_min.min(rim_min),
                    interior_sum + rim_sum,
                    1,
                ));
            }
        }
    }
    out
}

/// Graphs up to this order use the single-word bitmask kernels.
const MASK_MAX_VERTICES: usize = 64;

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let u = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            u
        })
    })
}

/// BFS layers of `root` as vertex masks; `layers.len() - 1` is the eccentricity.
fn mask_layers(g: &Graph, root: usize) -> Vec<u64> {
    let mut layers = vec![1u64 << root];
    let mut seen = 1u64 << root;
    loop {
        let frontier = *layers.last().expect("root layer");
        let next = bits(frontier).fold(0, |acc, u| acc | g.row64(u)) & !seen;
        if next == 0 {
            return layers;
        }
        seen |= next;
        layers.push(next);
    }
}

fn mask_components(g: &Graph, set: u64) -> usize {
    let mut rest = set;
    let mut count = 0;
    while rest != 0 {
        count += 1;
        let mut comp = rest & rest.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            frontier = bits(frontier).fold(0, |acc, u| acc | g.row64(u)) & set & !comp;
            comp |= frontier;
        }
        rest &= !comp;
    }
    count
}

fn root_records_mask(g: &Graph, v: usize, mode: Mode) -> Vec<LinkRecord> {
    let layers = mask_layers(g, v);
    let mut out = Vec::with_capacity(layers.len() - 1);
    let mut interior = (usize::MAX, 0, 0);
    for r in 1..layers.len() {
        let layer = layers[r];
        let size = layer.count_ones() as usize;
        match mode {
            Mode::Sphere => {
                let (min, sum) = bits(layer).fold((usize::MAX, 0), |(min, sum), u| {
                    let c = (g.row64(u) & layer).count_ones() as usize;
                    (min.min(c), sum + c)
                });
                out.push(record(v, r, size, min, sum, mask_components(g, layer)));
            }
            Mode::Ball => {
                for u in bits(layers[r - 1]) {
                    interior = (interior.0.min(g.degree(u)), interior.1 + g.degree(u), interior.2 + 1);
                }
                let reach = layer | layers[r - 1];
                let (min, sum) = bits(layer).fold((interior.0, interior.1), |(min, sum), u| {
                    let c = (g.row64(u) & reach).count_ones() as usize;
                    (min.min(c), sum + c)
                });
                out.push(record(v, r, interior.2 + size, min, sum, 1));
            }
        }
    }
    out
}

/// `min_{v,r} δ(L_r(v))` (sphere mode) or `min_{v,r} δ(G[B_r(v)])` (ball
/// mode) over all roots and all radii `1..=ecc(v)`.
pub fn min_link_degree(g: &Graph, mode: Mode) -> Result<LinkReport> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooSmall { n, needed: 2 });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let per_root: Vec<Vec<LinkRecord>> = if n >= PAR_ROOTS_MIN {
        (0..n)
            .into_par_iter()
            .map(|v| root_records(g, v, mode))
            .collect()
    } else {
        (0..n).map(|v| root_records(g, v, mode)).collect()
    };
    let links: Vec<LinkRecord> = per_root.into_iter().flatten().collect();
    let best = links
        .iter()
        .min_by_key(|rec| (rec.min_degree, rec.v, rec.r))
        .expect("connected graph on >= 2 vertices has a link at radius 1");
    Ok(LinkReport {
        mode,
        n,
        d: g.regular_degree(),
        diameter: links.iter().map(|rec| rec.r).max().unwrap_or(0),
        global_min: best.min_degree,
        witness: Witness {
            v: best.v,
            r: best.r,
        },
        links,
    })
}

/// Aggregate sphere-mode statistics used to probe average link degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkDegreeProfile {
    pub links: usize,
    pub min_min_degree: usize,
    pub min_avg_degree_num: u64,
    pub min_avg_degree_den: u64,
    pub min_avg_witness: Witness,
    /// Component count → number of links with that many components.
    pub component_histogram: BTreeMap<usize, usize>,
    /// For regular graphs: links whose average degree exceeds `d/2`.
    pub links_avg_above_half_d: Option<usize>,
}

impl LinkDegreeProfile {
    pub fn min_avg_degree(&self) -> Ratio<u64> {
        Ratio::new_raw(self.min_avg_degree_num, self.min_avg_degree_den)
    }
}

pub fn link_degree_profile(g: &Graph) -> Result<LinkDegreeProfile> {
    let report = min_link_degree(g, Mode::Sphere)?;
    Ok(profile_from_report(&report))
}

pub(crate) fn profile_from_report(report: &LinkReport) -> LinkDegreeProfile {
    let min_avg = report
        .links
        .iter()
        .min_by(|a, b| {
            a.avg_degree()
                .cmp(&b.avg_degree())
                .then((a.v, a.r).cmp(&(b.v, b.r)))
        })
        .expect("report has at least one link");
    let mut component_histogram = BTreeMap::new();
    for rec in &report.links {
        *component_histogram.entry(rec.components).or_insert(0) += 1;
    }
    let links_avg_above_half_d = report.d.map(|d| {
        let half = Ratio::new(d as u64, 2);
        report.links.iter().filter(|rec| rec.avg_degree() > half).count()
    });
    LinkDegreeProfile {
        links: report.links.len(),
        min_min_degree: report.global_min,
        min_avg_degree_num: min_avg.avg_degree_num,
        min_avg_degree_den: min_avg.avg_degree_den,
        min_avg_witness: Witness {
            v: min_avg.v,
            r: min_avg.r,
        },
        component_histogram,
        links_avg_above_half_d,
    }
}

/// A vertex of `S_j(v)` with fewer neighbors in `S_{j-1}(v)` than the
/// inner-layer inequality requires.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerViolation {
    pub root: usize,
    pub j: usize,
    pub x: usize,
    pub inner_neighbors: usize,
    pub required: i64,
}

/// Required inner-neighbor count `(2j−2)m − (j−1)d + 2j − 1` for layer `j`.
pub fn layer_claim_bound(j: usize, m: usize, d: usize) -> i64 {
    let (j, m, d) = (j as i64, m as i64, d as i64);
    (2 * j - 2) * m - (j - 1) * d + 2 * j - 1
}

/// Checks the inner-layer inequality at every layer `2..=ecc(v)`, with `m`
/// taken as the sphere-mode global minimum of `g`.
pub fn layer_claim_check(g: &Graph, v: usize) -> Result<Vec<LayerViolation>> {
    let m = min_link_degree(g, Mode::Sphere)?.global_min;
    layer_claim_check_with_min(g, v, m)
}

/// As [`layer_claim_check`] with a precomputed link minimum `m`.
pub fn layer_claim_check_with_min(g: &Graph, v: usize, m: usize) -> Result<Vec<LayerViolation>> {
    let profile = g.degree_profile();
    let d = profile.d.ok_or(Error::NotRegular {
        min: profile.min,
        max: profile.max,
    })?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(layer_violations(g, v, m, d))
}

/// Layer-claim violations from root `v` of a connected `d`-regular graph.
pub(crate) fn layer_violations(g: &Graph, v: usize, m: usize, d: usize) -> Vec<LayerViolation> {
    let mut violations = Vec::new();
    let mut check = |j: usize, x: usize, inner: usize| {
        let required = layer_claim_bound(j, m, d);
        if required > 0 && (inner as i64) < required {
            violations.push(LayerViolation {
                root: v,
                j,
                x,
                inner_neighbors: inner,
                required,
            });
        }
    };
    if g.n() <= MASK_MAX_VERTICES {
        let layers = mask_layers(g, v);
        for j in 2..layers.len() {
            for x in bits(layers[j]) {
                check(j, x, (g.row64(x) & layers[j - 1]).count_ones() as usize);
            }
        }
    } else {
        let counts = LayerCounts::new(g, v);
        for j in 2..=counts.layers.eccentricity {
            for &x in &counts.layers.layers[j] {
                check(j, x, counts.inner[x]);
            }
        }
    }
    violations
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{blown_up_cycle, complete_minus_matching, cycle, cycle_power, petersen};

    /// Independent route: materialize every link/ball graph.
    fn brute_records(g: &Graph, mode: Mode) -> Vec<LinkRecord> {
        let mut out = Vec::new();
        for v in 0..g.n() {
            let ecc = g.bfs_layers(v).eccentricity;
            for r in 1..=ecc {
                let sub = match mode {
                    Mode::Sphere => link_graph(g, v, r).unwrap(),
                    Mode::Ball => ball_graph(g, v, r),
                };
                let h = &sub.graph;
                let degrees: Vec<usize> = (0..h.n()).map(|u| h.degree(u)).collect();
                let mut comps = 0;
                let mut seen = vec![false; h.n()];
                for s in 0..h.n() {
                    if !seen[s] {
                        comps += 1;
                        for u in h.bfs_layers(s).layers.into_iter().flatten() {
                            seen[u] = true;
                        }
                    }
                }
                out.push(record(
                    v,
                    r,
                    h.n(),
                    *degrees.iter().min().unwrap(),
                    degrees.iter().sum(),
                    comps,
                ));
            }
        }
        out
    }

    #[test]
    fn spheres_and_balls() {
        let c6 = cycle(6).unwrap();
        assert_eq!(sphere(&c6, 0, 3), vec![3]);
        assert_eq!(sphere(&c6, 2, 0), vec![2]);
        assert_eq!(ball(&c6, 0, 0), vec![0]);
        assert_eq!(ball(&c6, 0, 2), vec![0, 1, 2, 4, 5]);
        assert_eq!(sphere(&cycle_power(11, 2).unwrap(), 0, 3).len(), 2);
        let k8 = complete_minus_matching(6).unwrap();
        for v in 0..8 {
            let b = ball(&k8, v, 1);
            assert_eq!(b.len(), 7);
            assert!(!b.contains(&(v ^ 1)));
        }
    }

    #[test]
    fn link_graphs_of_blown_pentagon() {
        let g = blown_up_cycle(5, 2).unwrap();
        let l1 = link_graph(&g, 0, 1).unwrap();
        assert_eq!(l1.graph.n(), 5);
        assert_eq!(l1.graph.degree_profile().min, 2);
        let l2 = link_graph(&g, 0, 2).unwrap();
        assert_eq!(l2.graph.n(), 4);
        assert!(l2.graph.is_complete());
        assert_eq!(link_graph(&g, 0, 3), Err(Error::EmptyLink { v: 0, r: 3 }));
    }

    #[test]
    fn petersen_first_link_is_edgeless() {
        let g = petersen();
        for v in 0..10 {
            let l = link_graph(&g, v, 1).unwrap();
            assert_eq!((l.graph.n(), l.graph.edge_count()), (3, 0));
        }
    }

    #[test]
    fn ball_graphs() {
        let g = blown_up_cycle(7, 2).unwrap();
        assert_eq!(ball_graph(&g, 0, 1).graph.degree_profile().min, 3);
        assert_eq!(ball_graph(&g, 0, 3).graph, g);
        let c8 = cycle(8).unwrap();
        let b = ball_graph(&c8, 0, 1);
        assert_eq!(b.graph.edge_count(), 2);
        assert_eq!(b.graph.degree_profile().min, 1);
    }

    #[test]
    fn reports_match_explicit_link_graphs() {
        let graphs = [
            blown_up_cycle(5, 2).unwrap(),
            blown_up_cycle(7, 3).unwrap(),
            cycle_power(13, 3).unwrap(),
            petersen(),
            complete_minus_matching(6).unwrap(),
            cycle(9).unwrap(),
        ];
        for g in &graphs {
            for mode in [Mode::Sphere, Mode::Ball] {
                assert_eq!(min_link_degree(g, mode).unwrap().links, brute_records(g, mode));
            }
        }
    }

    #[test]
    fn mask_and_general_kernels_agree() {
        let graphs = [
            blown_up_cycle(7, 2).unwrap(),
            cycle_power(19, 2).unwrap(),
            petersen(),
            cycle(64).unwrap(),
            Graph::from_edge_list(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap(),
        ];
        for g in &graphs {
            let d = g.regular_degree().unwrap_or(0);
            for v in 0..g.n() {
                for mode in [Mode::Sphere, Mode::Ball] {
                    assert_eq!(root_records_mask(g, v, mode), root_records_general(g, v, mode));
                }
                let counts = LayerCounts::new(g, v);
                let layers = mask_layers(g, v);
                assert_eq!(layers.len() - 1, counts.layers.eccentricity);
                for (mask, layer) in layers.iter().zip(&counts.layers.layers) {
                    assert_eq!(bits(*mask).collect::<Vec<_>>(), *layer);
                }
                assert!(layer_violations(g, v, 0, d).iter().all(|x| x.inner_neighbors == counts.inner[x.x]));
            }
        }
    }

    #[test]
    fn large_graphs_use_the_general_kernel() {
        let g = cycle_power(70, 3).unwrap();
        assert!(g.n() > MASK_MAX_VERTICES);
        assert_eq!(min_link_degree(&g, Mode::Sphere).unwrap().links, brute_records(&g, Mode::Sphere));
        assert_eq!(min_link_degree(&g, Mode::Ball).unwrap().links, brute_records(&g, Mode::Ball));
    }

    #[test]
    fn global_minima() {
        let r = min_link_degree(&blown_up_cycle(5, 2).unwrap(), Mode::Sphere).unwrap();
        assert_eq!((r.global_min, r.witness), (2, Witness { v: 0, r: 1 }));
        assert_eq!((r.d, r.diameter), (Some(5), 2));
        let r = min_link_degree(&cycle_power(11, 2).unwrap(), Mode::Sphere).unwrap();
        assert_eq!(r.global_min, 1);
        let r = min_link_degree(&blown_up_cycle(7, 2).unwrap(), Mode::Ball).unwrap();
        assert_eq!(r.global_min, 3);
        let r = min_link_degree(&cycle(6).unwrap(), Mode::Sphere).unwrap();
        assert_eq!(r.global_min, 0);
    }

    #[test]
    fn report_errors() {
        assert_eq!(
            min_link_degree(&Graph::empty(1), Mode::Sphere),
            Err(Error::TooSmall { n: 1, needed: 2 })
        );
        let two = Graph::from_edge_list(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(min_link_degree(&two, Mode::Ball), Err(Error::Disconnected));
        // Complete graphs are reported; excluding them is the theorem layer's job.
        let k5 = min_link_degree(&Graph::complete(5), Mode::Sphere).unwrap();
        assert_eq!((k5.global_min, k5.diameter), (3, 1));
    }

    #[test]
    fn records_cover_exactly_the_valid_radii() {
        let g = cycle_power(17, 2).unwrap();
        let report = min_link_degree(&g, Mode::Sphere).unwrap();
        for v in 0..g.n() {
            let ecc = g.bfs_layers(v).eccentricity;
            let radii: Vec<usize> = report.links.iter().filter(|l| l.v == v).map(|l| l.r).collect();
            assert_eq!(radii, (1..=ecc).collect::<Vec<_>>());
        }
    }

    #[test]
    fn degree_profile_of_closing_examples() {
        let c4 = cycle(4).unwrap();
        let p = link_degree_profile(&c4).unwrap();
        let s1 = &min_link_degree(&c4, Mode::Sphere).unwrap().links[0];
        assert_eq!((s1.sphere_size, s1.avg_degree()), (2, Ratio::from_integer(0)));
        assert_eq!(p.min_avg_degree(), Ratio::from_integer(0));
    }

    #[test]
    fn layer_claim_on_cycle_power() {
        let g = cycle_power(11, 2).unwrap();
        assert_eq!(layer_claim_bound(2, 1, 4), 1);
        for v in 0..g.n() {
            assert!(layer_claim_check(&g, v).unwrap().is_empty());
            let l = g.bfs_layers(v);
            assert!(l.layers[2].iter().all(|&x| g
                .neighbors(x)
                .iter()
                .any(|&w| l.dist[w] == 1)));
        }
        let path = Graph::from_edge_list(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(layer_claim_check_with_min(&path, 0, 0), Err(Error::NotRegular { .. })));
    }
}
