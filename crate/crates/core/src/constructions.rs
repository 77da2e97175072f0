//! Join, Kronecker, corona, pendant and power constructions.
//!
//! Vertex layouts are fixed so that the block eigenvectors built in
//! [`crate::theorems`] index directly:
//!
//! * join: `H1` vertices `0..n1`, then `H2` vertices shifted by `n1`;
//! * kronecker: pair `(u, v)` is vertex `u·n2 + v`;
//! * corona: `G` vertices first, then copy `i` of `H` occupies
//!   `n1 + i·n2 .. n1 + (i+1)·n2`;
//! * pendant: the `c`-th pendant edge at vertex `v` uses fresh vertices
//!   `n + (v·k + c)(r−1) ..` (so `pendant(H, 1)` coincides with
//!   `corona(H, (r−1)K₁)` label for label);
//! * power: graph edge `i` receives fresh vertices `n + i(r−2) ..`.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::hypergraph::{Graph, HypergraphError, Result, UniformHypergraph};

fn same_uniformity(h1: &UniformHypergraph, h2: &UniformHypergraph) -> Result<usize> {
    if h1.r() != h2.r() {
        return Err(HypergraphError::Parameters(format!(
            "uniformity mismatch: {} vs {}",
            h1.r(),
            h2.r()
        )));
    }
    Ok(h1.r())
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `H1 ∨ H2`: both edge sets plus every `r`-subset meeting both sides.
pub fn join(h1: &UniformHypergraph, h2: &UniformHypergraph) -> Result<UniformHypergraph> {
    let r = same_uniformity(h1, h2)?;
    let (n1, n2) = (h1.n(), h2.n());
    let mut edges: BTreeSet<Vec<usize>> = h1.edges().iter().cloned().collect();
    edges.extend(h2.edges().iter().map(|e| e.iter().map(|v| v + n1).collect()));
    for e in (0..n1 + n2).combinations(r) {
        if e[0] < n1 && e[r - 1] >= n1 {
            edges.insert(e);
        }
    }
    UniformHypergraph::new(r, n1 + n2, edges.into_iter().collect())
}

/// Expected join edge count `m1 + m2 + Σ_{j=1}^{r−1} C(n1, j) C(n2, r−j)`.
pub fn join_edge_count(h1: &UniformHypergraph, h2: &UniformHypergraph) -> u128 {
    let r = h1.r();
    let cross: u128 = (1..r).map(|j| binomial(h1.n(), j) * binomial(h2.n(), r - j)).sum();
    (h1.edge_count() + h2.edge_count()) as u128 + cross
}

/// `H1 ⊗ H2`: for every pair of edges and every bijection between them, the
/// set of paired vertices `(u, v) ↦ u·n2 + v`. Duplicate sets are merged.
pub fn kronecker(h1: &UniformHypergraph, h2: &UniformHypergraph) -> Result<UniformHypergraph> {
    let r = same_uniformity(h1, h2)?;
    let n2 = h2.n();
    let mut edges = BTreeSet::new();
    for e in h1.edges() {
        for f in h2.edges() {
            for tau in f.iter().permutations(r) {
                let mut edge: Vec<usize> = e.iter().zip(tau).map(|(&u, &v)| u * n2 + v).collect();
                edge.sort_unstable();
                edges.insert(edge);
            }
        }
    }
    UniformHypergraph::new(r, h1.n() * n2, edges.into_iter().collect())
}

/// Measured Kronecker edge count next to the `(r−1)!·m1·m2` count quoted for
/// this product, and the per-vertex degree check `(r−1)!·d1(u)·d2(v)`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct KroneckerLedger {
    pub measured_edges: usize,
    pub quoted_edges: u128,
    pub bijection_edges: u128,
    pub degrees_match: bool,
}

pub fn kronecker_ledger(h1: &UniformHypergraph, h2: &UniformHypergraph) -> Result<KroneckerLedger> {
    let product = kronecker(h1, h2)?;
    let r = h1.r();
    let fact: u128 = (1..r as u128).product();
    let (d1, d2, d) = (h1.degrees(), h2.degrees(), product.degrees());
    let degrees_match = (0..h1.n())
        .cartesian_product(0..h2.n())
        .all(|(u, v)| d[u * h2.n() + v] as u128 == fact * (d1[u] * d2[v]) as u128);
    let m = (h1.edge_count() * h2.edge_count()) as u128;
    Ok(KroneckerLedger {
        measured_edges: product.edge_count(),
        quoted_edges: fact * m,
        bijection_edges: fact * r as u128 * m,
        degrees_match,
    })
}

/// Non-fatal conditions met while building a product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionWarning {
    /// `n2 < r − 1`: no `r`-subset of `W_i` contains `u_i`, so the copies
    /// stay disconnected from the base.
    EmptyCoronaLinks,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corona {
    pub hypergraph: UniformHypergraph,
    pub warning: Option<ConstructionWarning>,
}

/// `G ∘ H`: one copy of `H` per vertex `u_i` of `G` plus every `r`-subset of
/// `V_i ∪ {u_i}` that contains `u_i`.
pub fn corona(g: &UniformHypergraph, h: &UniformHypergraph) -> Result<Corona> {
    let r = same_uniformity(g, h)?;
    let (n1, n2) = (g.n(), h.n());
    let mut edges: BTreeSet<Vec<usize>> = g.edges().iter().cloned().collect();
    for i in 0..n1 {
        let base = n1 + i * n2;
        edges.extend(h.edges().iter().map(|e| e.iter().map(|v| v + base).collect()));
        for rest in (base..base + n2).combinations(r - 1) {
            let mut e = Vec::with_capacity(r);
            e.push(i);
            e.extend(rest);
            edges.insert(e);
        }
    }
    let hypergraph = UniformHypergraph::new(r, n1 + n1 * n2, edges.into_iter().collect())?;
    let warning = (n2 < r - 1).then_some(ConstructionWarning::EmptyCoronaLinks);
    Ok(Corona { hypergraph, warning })
}

/// `Ĥ(k)`: `k` pendant edges (one old vertex plus `r − 1` fresh ones) at
/// every vertex.
pub fn pendant(h: &UniformHypergraph, k: usize) -> Result<UniformHypergraph> {
    if k == 0 {
        return Err(HypergraphError::Parameters("pendant needs k >= 1".into()));
    }
    let (n, r) = (h.n(), h.r());
    let mut edges: Vec<Vec<usize>> = h.edges().to_vec();
    for v in 0..n {
        for c in 0..k {
            let start = n + (v * k + c) * (r - 1);
            edges.push(std::iter::once(v).chain(start..start + r - 1).collect());
        }
    }
    UniformHypergraph::from_sets(r, n + k * n * (r - 1), edges)
}

/// `G^r`: every graph edge `{u, v}` becomes `{u, v, w_1, …, w_{r−2}}` with
/// fresh `w`'s.
pub fn power_hypergraph(g: &Graph, r: usize) -> Result<UniformHypergraph> {
    if r < 2 {
        return Err(HypergraphError::Uniformity(r));
    }
    let n = g.n();
    let edges = g.edges().iter().enumerate().map(|(i, &(u, v))| {
        let start = n + i * (r - 2);
        let mut e = vec![u, v];
        e.extend(start..start + r - 2);
        e
    });
    UniformHypergraph::from_sets(r, n + g.edges().len() * (r - 2), edges)
}

/// Brute-force isomorphism test with degree pruning. Intended for the small
/// instances (`n ≤ 10`) used in checks; larger inputs return `None`.
pub fn are_isomorphic(a: &UniformHypergraph, b: &UniformHypergraph) -> Option<bool> {
    if a.r() != b.r() || a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Some(false);
    }
    if a.n() > 10 {
        return None;
    }
    let (da, db) = (a.degrees(), b.degrees());
    let mut sa = da.clone();
    let mut sb = db.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Some(false);
    }
    let target: BTreeSet<Vec<usize>> = b.edges().iter().cloned().collect();
    let inc = a.incidence();
    let n = a.n();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn consistent(
        a: &UniformHypergraph,
        inc: &[Vec<usize>],
        map: &[usize],
        v: usize,
        target: &BTreeSet<Vec<usize>>,
    ) -> bool {
        inc[v].iter().all(|&ei| {
            let e = &a.edges()[ei];
            if e.iter().any(|&w| map[w] == usize::MAX) {
                return true;
            }
            let mut img: Vec<usize> = e.iter().map(|&w| map[w]).collect();
            img.sort_unstable();
            target.contains(&img)
        })
    }

    fn search(
        v: usize,
        a: &UniformHypergraph,
        inc: &[Vec<usize>],
        da: &[usize],
        db: &[usize],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        target: &BTreeSet<Vec<usize>>,
    ) -> bool {
        if v == map.len() {
            return true;
        }
        for w in 0..map.len() {
            if used[w] || da[v] != db[w] {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if consistent(a, inc, map, v, target) && search(v + 1, a, inc, da, db, map, used, target) {
                return true;
            }
            map[v] = usize::MAX;
            used[w] = false;
        }
        false
    }

    Some(search(0, a, &inc, &da, &db, &mut map, &mut used, &target))
}
