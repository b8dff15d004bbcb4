//! Graph families: cycles, cycle powers, clique blow-ups, products, and
//! random and exhaustive sources of regular graphs.

mod enumerate;
mod family;
mod iso;
mod random;

pub use enumerate::{EnumerationGuard, RegularEnumerator};
pub use family::{Family, FamilySpec};
pub use iso::{automorphism_count, canonical_code, isomorphism_classes};
pub use random::{expander_blowup, random_regular, random_regular_with, RandomRegularOptions};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::param("cycle", format!("n must be >= 3, got {n}")));
    }
    Graph::from_edge_list(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// `C_n^k`: vertex `i` is adjacent to `i ± 1, …, i ± k (mod n)`.
pub fn cycle_power(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || n < 2 * k + 2 {
        return Err(Error::param(
            "cycle-power",
            format!("need k >= 1 and n >= 2k+2 (otherwise complete), got n={n}, k={k}"),
        ));
    }
    let edges = (0..n).flat_map(|i| (1..=k).map(move |s| (i, (i + s) % n)));
    Graph::from_edge_list(n, edges)
}

/// Residue condition for the tight cycle powers: `n − 1 ≡ a (mod 2k)` with
/// `a ∈ {k, …, 2k}`, the residue taken in `{1, …, 2k}`.
pub fn proposition_valid_n(n: usize, k: usize) -> bool {
    if k == 0 || n < 2 * k + 2 {
        return false;
    }
    let a = (n - 1 - 1) % (2 * k) + 1;
    a >= k
}

/// `C_n` with every vertex replaced by a `k`-clique; `(3k − 1)`-regular.
pub fn blown_up_cycle(n: usize, k: usize) -> Result<Graph> {
    if n < 5 || k == 0 {
        return Err(Error::param(
            "blown-cycle",
            format!("need n >= 5 and k >= 1, got n={n}, k={k}"),
        ));
    }
    cycle(n)?.blow_up(k)
}

/// `K_{d+2}` minus the perfect matching `{2i, 2i+1}`.
pub fn complete_minus_matching(d: usize) -> Result<Graph> {
    if d < 2 || d % 2 == 1 {
        return Err(Error::param(
            "complete-minus-matching",
            format!("d must be even and >= 2, got {d}"),
        ));
    }
    let n = d + 2;
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edge_list(n, edges.filter(|&(u, v)| v != (u ^ 1)))
}

/// `(C_3 □ C_m)` blown up to `t`-cliques; `(5t − 1)`-regular on `3mt` vertices.
pub fn product_cycle_blowup(m: usize, t: usize) -> Result<Graph> {
    if m < 5 || m.is_multiple_of(2) || t == 0 {
        return Err(Error::param(
            "product-blowup",
            format!("need odd m >= 5 and t >= 1, got m={m}, t={t}"),
        ));
    }
    cycle(3)?.cartesian_product(&cycle(m)?).blow_up(t)
}

pub fn petersen() -> Graph {
    let edges = (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)]);
    Graph::from_edge_list(10, edges).expect("static edge list")
}
