//! Matching polynomials, connected sub-hypergraph records, factored
//! characteristic polynomials of hypertrees and power-hypergraph eigenvalues
//! from signed subgraphs.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{Graph, HypergraphError, UniformHypergraph};
use crate::numeric::{symmetric_matrix_eigenvalues, NumericError};
use crate::poly::{reciprocal_property, serialize_decimal, sort_complex, FactoredPolynomial, IntPolynomial, PolyError, ReciprocalProperty};

#[derive(Debug, Error)]
pub enum HypertreeError {
    #[error("input is not a hypertree")]
    NotHypertree,
    #[error("{what} {got} exceeds the limit {limit}")]
    Guard { what: &'static str, got: usize, limit: usize },
    #[error("uniformity {0} is below 3")]
    Uniformity(usize),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

pub type Result<T> = std::result::Result<T, HypertreeError>;

/// Largest edge count accepted by the record enumeration.
pub const MAX_TREE_EDGES: usize = 20;
/// Largest graph edge count accepted by [`power_eigen_roots`].
pub const MAX_GRAPH_EDGES: usize = 16;
/// Budget on signed adjacency matrices examined by [`power_eigen_roots`].
pub const MAX_SIGN_PATTERNS: usize = 1 << 22;

type Bits = Vec<u64>;

fn bits(len: usize) -> Bits {
    vec![0; len.div_ceil(64).max(1)]
}

fn set_bit(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn has_bit(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

/// `m_k(H)` for every `k`, index `k`.
pub fn matching_counts(h: &UniformHypergraph) -> Vec<BigUint> {
    let m = h.edge_count();
    let incidence = h.incidence();
    // conflicts[i]: edges sharing a vertex with edge i (including i).
    let conflicts: Vec<Bits> = h
        .edges()
        .iter()
        .map(|e| {
            let mut b = bits(m);
            for &v in e {
                for &f in &incidence[v] {
                    set_bit(&mut b, f);
                }
            }
            b
        })
        .collect();
    fn walk(start: usize, blocked: &Bits, depth: usize, conflicts: &[Bits], counts: &mut Vec<u128>) {
        if counts.len() <= depth {
            counts.push(0);
        }
        counts[depth] += 1;
        for i in start..conflicts.len() {
            if !has_bit(blocked, i) {
                let next: Bits = blocked.iter().zip(&conflicts[i]).map(|(a, b)| a | b).collect();
                walk(i + 1, &next, depth + 1, conflicts, counts);
            }
        }
    }
    let mut counts = Vec::new();
    walk(0, &bits(m), 0, &conflicts, &mut counts);
    counts.into_iter().map(BigUint::from).collect()
}

/// Number of `k`-matchings (sets of `k` pairwise disjoint edges).
pub fn matching_count(h: &UniformHypergraph, k: usize) -> BigUint {
    matching_counts(h).get(k).cloned().unwrap_or_default()
}

/// `φ_H(λ) = Σ_k (−1)^k m_k(H) λ^{n−kr}`.
pub fn matching_polynomial(h: &UniformHypergraph) -> IntPolynomial {
    let (n, r) = (h.n(), h.r());
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for (k, mk) in matching_counts(h).into_iter().enumerate() {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        coeffs[n - k * r] += BigInt::from(mk) * sign;
    }
    IntPolynomial::new(coeffs)
}

/// A connected sub-hypergraph of a hypertree: a single vertex, or a
/// connected set of edges together with the union of their vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubhypergraphRecord {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub e: usize,
    /// Edges of the tree meeting both the record's vertices and their complement.
    pub boundary: usize,
    #[serde(serialize_with = "serialize_decimal")]
    pub a_exponent: BigUint,
}

fn check_tree(t: &UniformHypergraph) -> Result<()> {
    if !t.is_hypertree() {
        return Err(HypertreeError::NotHypertree);
    }
    if t.edge_count() > MAX_TREE_EDGES {
        return Err(HypertreeError::Guard {
            what: "edge count",
            got: t.edge_count(),
            limit: MAX_TREE_EDGES,
        });
    }
    Ok(())
}

/// `(r−1)^{(r−1)(m−e−b)} · r^{(r−2)e} · ((r−1)^{r−1} − r^{r−2})^{b}`.
pub fn a_exponent(r: usize, m: usize, e: usize, boundary: usize) -> BigUint {
    let r1 = BigUint::from(r - 1);
    let rb = BigUint::from(r);
    let base: BigUint = Pow::pow(&r1, (r - 1) as u32) - Pow::pow(&rb, (r - 2) as u32);
    Pow::pow(&r1, ((r - 1) * (m - e - boundary)) as u32)
        * Pow::pow(&rb, ((r - 2) * e) as u32)
        * Pow::pow(&base, boundary as u32)
}

/// Every connected edge subset of the tree (as a bitmask over edge ids),
/// each exactly once.
fn connected_edge_sets(t: &UniformHypergraph) -> Vec<u32> {
    let m = t.edge_count();
    let incidence = t.incidence();
    let neighbours: Vec<u32> = t
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            e.iter()
                .flat_map(|&v| incidence[v].iter())
                .filter(|&&f| f != i)
                .fold(0u32, |acc, &f| acc | 1 << f)
        })
        .collect();
    let mut out = Vec::new();
    fn extend(sub: u32, ext: u32, closed: u32, root: usize, neighbours: &[u32], out: &mut Vec<u32>) {
        out.push(sub);
        let mut ext = ext;
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            ext &= ext - 1;
            let above_root = !((1u32 << (root + 1)) - 1);
            let fresh = neighbours[w] & !closed & above_root;
            extend(sub | 1 << w, ext | fresh, closed | fresh, root, neighbours, out);
        }
    }
    for root in 0..m {
        let above_root = !((1u32 << (root + 1)) - 1);
        let ext = neighbours[root] & above_root;
        extend(1 << root, ext, ext | neighbours[root] | 1 << root, root, &neighbours, &mut out);
    }
    out
}

/// All single-vertex and connected-edge-subset records with their exponents.
pub fn enumerate_connected_subhypergraphs(t: &UniformHypergraph) -> Result<Vec<SubhypergraphRecord>> {
    check_tree(t)?;
    let (r, m) = (t.r(), t.edge_count());
    let mut records: Vec<SubhypergraphRecord> = (0..t.n())
        .map(|v| {
            let b = t.degree(v).unwrap_or(0);
            SubhypergraphRecord {
                vertices: vec![v],
                edges: Vec::new(),
                e: 0,
                boundary: b,
                a_exponent: a_exponent(r, m, 0, b),
            }
        })
        .collect();
    let mut sets = connected_edge_sets(t);
    sets.sort_by_key(|s| (s.count_ones(), s.reverse_bits()));
    for set in sets {
        let edges: Vec<usize> = (0..m).filter(|i| set >> i & 1 == 1).collect();
        let vertices: BTreeSet<usize> = edges.iter().flat_map(|&i| t.edges()[i].iter().copied()).collect();
        let boundary = t
            .edges()
            .iter()
            .enumerate()
            .filter(|(i, e)| set >> i & 1 == 0 && e.iter().any(|v| vertices.contains(v)))
            .count();
        records.push(SubhypergraphRecord {
            e: edges.len(),
            a_exponent: a_exponent(r, m, edges.len(), boundary),
            vertices: vertices.into_iter().collect(),
            edges,
            boundary,
        });
    }
    Ok(records)
}

/// `Φ_T(λ) = Π_H φ_H(λ)^{a_H}` over all records, in factored form.
pub fn hypertree_charpoly(t: &UniformHypergraph) -> Result<FactoredPolynomial> {
    let records = enumerate_connected_subhypergraphs(t)?;
    let factors: Vec<(IntPolynomial, BigUint)> = records
        .par_iter()
        .map(|rec| {
            let phi = if rec.edges.is_empty() {
                IntPolynomial::monomial(1, 1)
            } else {
                matching_polynomial(&t.edge_induced(&rec.edges).0)
            };
            (phi, rec.a_exponent.clone())
        })
        .collect();
    let mut out = FactoredPolynomial::new();
    for (phi, a) in &factors {
        out.multiply_factor(phi, a);
    }
    Ok(out)
}

/// Multiplicity of the eigenvalue 0 (the λ exponent of `Φ_T`).
pub fn nullity(t: &UniformHypergraph) -> Result<BigUint> {
    Ok(hypertree_charpoly(t)?.lambda_exponent().clone())
}

/// `n (r−1)^{n−1}`, the degree of the characteristic polynomial.
pub fn expected_degree(n: usize, r: usize) -> BigUint {
    BigUint::from(n) * Pow::pow(&BigUint::from(r - 1), (n.max(1) - 1) as u32)
}

fn edge_mask_subsets_r3(g: &Graph) -> Result<BTreeSet<u32>> {
    let n = g.n();
    if n > 24 {
        return Err(HypertreeError::Guard {
            what: "vertex count",
            got: n,
            limit: 24,
        });
    }
    let mut out = BTreeSet::new();
    for s in 1u32..(1u32 << n) {
        let mask = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| s >> u & 1 == 1 && s >> v & 1 == 1)
            .fold(0u32, |acc, (i, _)| acc | 1 << i);
        if mask != 0 {
            out.insert(mask);
        }
    }
    Ok(out)
}

/// Distinct eigenvalues of the `r`-power hypergraph of `g`: every `λ` with
/// `λ^r = β²` for an eigenvalue `β` of a signed subgraph (induced subgraphs
/// when `r = 3`, all subgraphs when `r ≥ 4`), plus `0`. Signs are varied
/// only on edges outside a spanning forest, since switching at a vertex
/// preserves the spectrum. Sorted by `(re, im)`.
pub fn power_eigen_roots(g: &Graph, r: usize) -> Result<Vec<Complex64>> {
    if r < 3 {
        return Err(HypertreeError::Uniformity(r));
    }
    let m = g.edges().len();
    if m > MAX_GRAPH_EDGES {
        return Err(HypertreeError::Guard {
            what: "graph edge count",
            got: m,
            limit: MAX_GRAPH_EDGES,
        });
    }
    let subsets: Vec<u32> = if r == 3 {
        edge_mask_subsets_r3(g)?.into_iter().collect()
    } else {
        (1u32..(1u32 << m)).collect()
    };
    let mut budget = 0usize;
    let mut spectra: HashSet<Vec<i64>> = HashSet::new();
    let mut squares: Vec<f64> = Vec::new();
    for mask in subsets {
        let chosen: Vec<(usize, usize)> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| g.edges()[i]).collect();
        let touched: Vec<usize> = chosen.iter().flat_map(|&(u, v)| [u, v]).collect::<BTreeSet<_>>().into_iter().collect();
        let local = |v: usize| touched.binary_search(&v).expect("touched vertex");
        let k = touched.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        let mut cycle_edges = Vec::new();
        for (i, &(u, v)) in chosen.iter().enumerate() {
            let (a, b) = (find(&mut parent, local(u)), find(&mut parent, local(v)));
            if a == b {
                cycle_edges.push(i);
            } else {
                parent[a] = b;
            }
        }
        let patterns = 1usize << cycle_edges.len();
        budget += patterns;
        if budget > MAX_SIGN_PATTERNS {
            return Err(HypertreeError::Guard {
                what: "signed subgraph count",
                got: budget,
                limit: MAX_SIGN_PATTERNS,
            });
        }
        for pattern in 0..patterns {
            let mut mat = vec![0.0; k * k];
            for (i, &(u, v)) in chosen.iter().enumerate() {
                let sign = match cycle_edges.iter().position(|&c| c == i) {
                    Some(p) if pattern >> p & 1 == 1 => -1.0,
                    _ => 1.0,
                };
                let (a, b) = (local(u), local(v));
                mat[a * k + b] = sign;
                mat[b * k + a] = sign;
            }
            let betas = symmetric_matrix_eigenvalues(&mat, k)?;
            let mut sq: Vec<f64> = betas.iter().map(|b| b * b).collect();
            sq.sort_by(f64::total_cmp);
            let key: Vec<i64> = sq.iter().map(|s| (s * 1e9).round() as i64).collect();
            if spectra.insert(key) {
                for s in sq {
                    if s > 1e-12 && squares.iter().all(|t| (t - s).abs() > 1e-10 * s.max(1.0)) {
                        squares.push(s);
                    }
                }
            }
        }
    }
    let mut roots = vec![Complex64::new(0.0, 0.0)];
    for s in squares {
        let modulus = s.powf(1.0 / r as f64);
        for j in 0..r {
            let z = Complex64::from_polar(modulus, std::f64::consts::TAU * j as f64 / r as f64);
            if roots.iter().all(|w| (w - z).norm() > 1e-8) {
                roots.push(z);
            }
        }
    }
    sort_complex(&mut roots);
    Ok(roots)
}

/// Distinct roots of a factored polynomial, sorted by `(re, im)`.
pub fn root_set(fp: &FactoredPolynomial) -> Result<Vec<Complex64>> {
    let mut out: Vec<Complex64> = Vec::new();
    if !fp.lambda_exponent().is_zero() {
        out.push(Complex64::new(0.0, 0.0));
    }
    for p in fp.factors().keys() {
        for z in p.complex_roots(1e-10)? {
            if out.iter().all(|w| (w - z).norm() > 1e-8) {
                out.push(z);
            }
        }
    }
    sort_complex(&mut out);
    Ok(out)
}

/// Whether two root sets agree as sets within `tol`.
pub fn root_sets_match(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    let covered = |x: &[Complex64], y: &[Complex64]| x.iter().all(|z| y.iter().any(|w| (z - w).norm() <= tol));
    covered(a, b) && covered(b, a)
}

/// Whether `λ^r − c` divides `p` (exact reduction modulo `λ^r − c`).
pub fn divisible_by_binomial(p: &IntPolynomial, r: usize, c: i64) -> bool {
    let c = BigInt::from(c);
    let mut rem = vec![BigInt::zero(); r];
    let mut power = BigInt::one();
    for (i, a) in p.coeffs().iter().enumerate() {
        if i > 0 && i % r == 0 {
            power *= &c;
        }
        rem[i % r] += a * &power;
    }
    rem.iter().all(Zero::is_zero)
}

/// Whether `c^{1/r}` is a root of `Φ` (some factor divisible by `λ^r − c`).
pub fn has_rth_root_of(fp: &FactoredPolynomial, r: usize, c: i64) -> bool {
    fp.factors().keys().any(|p| divisible_by_binomial(p, r, c))
}

const PALINDROME_PRIME: u64 = (1 << 61) - 1;

fn eval_mod(p: &IntPolynomial, x: &BigUint, modulus: &BigUint) -> BigUint {
    let m = BigInt::from(modulus.clone());
    let x = BigInt::from(x.clone());
    let v = p.coeffs().iter().rev().fold(BigInt::zero(), |acc, c| (acc * &x + c) % &m);
    ((v % &m + &m) % &m).to_biguint().expect("non-negative")
}

/// Whether `Φ/λ^η` is palindromic, tested by comparing `Q(a)` with
/// `a^{deg Q} Q(1/a)` modulo `2^61 − 1` at 16 fixed points. A mismatch is a
/// proof of non-palindromicity; agreement at every point is accepted.
pub fn nonzero_part_is_palindromic(fp: &FactoredPolynomial) -> bool {
    let modulus = BigUint::from(PALINDROME_PRIME);
    let degree = fp.total_degree() - fp.lambda_exponent();
    (2u64..18).all(|a| {
        let a = BigUint::from(a);
        let inv = a.modpow(&(&modulus - 2u32), &modulus);
        let mut lhs = BigUint::one();
        let mut rhs = a.modpow(&degree, &modulus);
        for (p, e) in fp.factors() {
            lhs = lhs * eval_mod(p, &a, &modulus).modpow(e, &modulus) % &modulus;
            rhs = rhs * eval_mod(p, &inv, &modulus).modpow(e, &modulus) % &modulus;
        }
        lhs == rhs
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct HypertreeReciprocalReport {
    pub r: bool,
    pub sr: bool,
    pub weak_r: bool,
    pub decided_structurally: bool,
    /// Exponent of `λ^r − 2` in `Φ`.
    #[serde(serialize_with = "serialize_decimal")]
    pub lambda_r_minus_2_exponent: BigUint,
    /// `Φ/λ^η` palindromic.
    pub palindromic: bool,
    pub self_reciprocal_factors: Vec<IntPolynomial>,
    /// Maximal inverse-closed sub-multiset.
    pub maximal_subset: Vec<SubsetEntry>,
    /// Inverse-closure once the `λ^r − 2` factor is removed.
    pub closed_without_lambda_r_minus_2: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubsetEntry {
    pub re: f64,
    pub im: f64,
    #[serde(serialize_with = "serialize_decimal")]
    pub multiplicity: BigUint,
}

fn subset_rows(p: &ReciprocalProperty) -> Vec<SubsetEntry> {
    p.maximal_subset
        .entries()
        .iter()
        .map(|(z, m)| SubsetEntry {
            re: z.re,
            im: z.im,
            multiplicity: m.clone(),
        })
        .collect()
}

/// Reciprocal-property report for the spectrum of a hypertree.
pub fn reciprocal_report(t: &UniformHypergraph) -> Result<HypertreeReciprocalReport> {
    let fp = hypertree_charpoly(t)?;
    let r = t.r();
    let prop = reciprocal_property(&fp)?;
    let mut minus_two = IntPolynomial::monomial(1, r);
    minus_two = minus_two.sub(&IntPolynomial::constant(2));
    let e2 = fp.exponent_of(&minus_two);
    let mut reduced = FactoredPolynomial::new();
    for (p, e) in fp.factors() {
        if *p != minus_two {
            reduced.multiply_factor(p, e);
        }
    }
    let reduced_prop = reciprocal_property(&reduced)?;
    Ok(HypertreeReciprocalReport {
        r: prop.r,
        sr: prop.sr,
        weak_r: prop.weak_r,
        decided_structurally: prop.decided_structurally,
        lambda_r_minus_2_exponent: e2,
        palindromic: nonzero_part_is_palindromic(&fp),
        self_reciprocal_factors: fp.self_reciprocal_factors(),
        maximal_subset: subset_rows(&prop),
        closed_without_lambda_r_minus_2: reduced_prop.r,
    })
}

/// Canonical form of a hypertree: AHU encoding of its vertex–edge
/// incidence tree rooted at a center (minimum over the two centers when
/// there are two).
pub fn canonical_form(t: &UniformHypergraph) -> String {
    let n = t.n();
    let total = n + t.edge_count();
    let mut adj = vec![Vec::new(); total];
    for (i, e) in t.edges().iter().enumerate() {
        for &v in e {
            adj[v].push(n + i);
            adj[n + i].push(v);
        }
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..total).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = total;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in &adj[leaf] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    fn encode(node: usize, parent: usize, n: usize, adj: &[Vec<usize>]) -> String {
        let mut kids: Vec<String> = adj[node]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| encode(w, node, n, adj))
            .collect();
        kids.sort();
        format!("({}{})", if node < n { 'v' } else { 'e' }, kids.concat())
    }
    layer
        .iter()
        .map(|&c| encode(c, usize::MAX, n, &adj))
        .min()
        .unwrap_or_default()
}

/// All pairwise non-isomorphic `r`-uniform hypertrees with `m` edges,
/// ordered by canonical form.
pub fn hypertrees(m: usize, r: usize) -> Result<Vec<UniformHypergraph>> {
    if m == 0 {
        return Ok(vec![UniformHypergraph::empty(r, 1)?]);
    }
    if m > 10 {
        return Err(HypertreeError::Guard {
            what: "edge count",
            got: m,
            limit: 10,
        });
    }
    let mut level: BTreeMap<String, UniformHypergraph> = BTreeMap::new();
    let first = UniformHypergraph::new(r, r, vec![(0..r).collect()])?;
    level.insert(canonical_form(&first), first);
    for _ in 1..m {
        let mut next = BTreeMap::new();
        for t in level.values() {
            for v in 0..t.n() {
                let grown = attach_pendant_edge(t, v)?;
                next.entry(canonical_form(&grown)).or_insert(grown);
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}

/// Adds one edge made of `v` and `r − 1` fresh vertices.
pub fn attach_pendant_edge(t: &UniformHypergraph, v: usize) -> Result<UniformHypergraph> {
    let (n, r) = (t.n(), t.r());
    let mut edges = t.edges().to_vec();
    edges.push(std::iter::once(v).chain(n..n + r - 1).collect());
    Ok(UniformHypergraph::new(r, n + r - 1, edges)?)
}

/// `P₃⁽ʳ⁾` with one more edge at a degree-one vertex of its middle edge.
pub fn sub_hypertree_t1(r: usize) -> Result<UniformHypergraph> {
    if r < 3 {
        return Err(HypertreeError::Uniformity(r));
    }
    attach_pendant_edge(&crate::hypergraph::loose_path(3, r)?, r)
}

/// `P₃⁽ʳ⁾` with one more edge at a degree-two vertex.
pub fn sub_hypertree_t2(r: usize) -> Result<UniformHypergraph> {
    if r < 3 {
        return Err(HypertreeError::Uniformity(r));
    }
    attach_pendant_edge(&crate::hypergraph::loose_path(3, r)?, r - 1)
}

/// `λ^{2r} − 4λ^r + 3`.
pub fn claimed_t1_factor(r: usize) -> IntPolynomial {
    let mut c = vec![BigInt::zero(); 2 * r + 1];
    c[0] = 3.into();
    c[r] = (-4).into();
    c[2 * r] = 1.into();
    IntPolynomial::new(c)
}

#[derive(Debug, Clone, Serialize)]
pub struct SubtreeFinding {
    pub name: &'static str,
    pub edges: Vec<Vec<usize>>,
    /// `φ` of the sub-hypertree itself, λ-power removed.
    pub matching_factor: IntPolynomial,
    /// Exponent of `λ^{2r} − 4λ^r + 3` in `Φ` (0 when absent).
    #[serde(serialize_with = "serialize_decimal")]
    pub claimed_factor_exponent: BigUint,
    /// `3^{1/r}` is an eigenvalue.
    pub has_rth_root_of_three: bool,
}

/// Mechanical check of the `T₁`/`T₂` factor claims for uniformity `r`.
pub fn subtree_findings(r: usize) -> Result<Vec<SubtreeFinding>> {
    let claimed = claimed_t1_factor(r);
    [("T1", sub_hypertree_t1(r)?), ("T2", sub_hypertree_t2(r)?)]
        .into_iter()
        .map(|(name, t)| {
            let fp = hypertree_charpoly(&t)?;
            Ok(SubtreeFinding {
                name,
                edges: t.edges().to_vec(),
                matching_factor: matching_polynomial(&t).split_lambda().1.canonical(),
                claimed_factor_exponent: fp.exponent_of(&claimed),
                has_rth_root_of_three: has_rth_root_of(&fp, r, 3),
            })
        })
        .collect()
}

/// One row of a factor-by-factor comparison.
#[derive(Debug, Clone, Serialize)]
pub struct DiscrepancyRow {
    /// `"lambda"` or the bracket form of the factor.
    pub factor: String,
    pub degree: usize,
    #[serde(serialize_with = "serialize_decimal")]
    pub computed: BigUint,
    #[serde(serialize_with = "serialize_decimal")]
    pub reference: BigUint,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscrepancyReport {
    #[serde(serialize_with = "serialize_decimal")]
    pub expected_degree: BigUint,
    #[serde(serialize_with = "serialize_decimal")]
    pub computed_degree: BigUint,
    #[serde(serialize_with = "serialize_decimal")]
    pub reference_degree: BigUint,
    pub computed_degree_ok: bool,
    pub reference_degree_ok: bool,
    pub rows: Vec<DiscrepancyRow>,
    /// Both factorizations have the same distinct roots.
    pub same_root_set: bool,
}

/// Compares a computed factorization with a reference one, without taking
/// either as correct.
pub fn compare_factorizations(
    computed: &FactoredPolynomial,
    reference: &FactoredPolynomial,
    expected_degree: BigUint,
) -> Result<DiscrepancyReport> {
    let mut rows = vec![DiscrepancyRow {
        factor: "lambda".into(),
        degree: 1,
        computed: computed.lambda_exponent().clone(),
        reference: reference.lambda_exponent().clone(),
        agrees: computed.lambda_exponent() == reference.lambda_exponent(),
    }];
    let keys: BTreeSet<&IntPolynomial> = computed.factors().keys().chain(reference.factors().keys()).collect();
    for p in keys {
        let (c, f) = (computed.exponent_of(p), reference.exponent_of(p));
        rows.push(DiscrepancyRow {
            factor: p.to_bracket(),
            degree: p.degree().unwrap_or(0),
            agrees: c == f,
            computed: c,
            reference: f,
        });
    }
    let (cd, rd) = (computed.total_degree(), reference.total_degree());
    Ok(DiscrepancyReport {
        computed_degree_ok: cd == expected_degree,
        reference_degree_ok: rd == expected_degree,
        computed_degree: cd,
        reference_degree: rd,
        expected_degree,
        rows,
        same_root_set: root_sets_match(&root_set(computed)?, &root_set(reference)?, 1e-8),
    })
}

/// Reference factorization of `Φ` for `P₃⁽³⁾`:
/// `λ^259 (λ³−1)^27 (λ³−2)^18 (λ⁶−3λ³+1)^9`.
pub fn reference_p3_r3() -> FactoredPolynomial {
    let mut f = FactoredPolynomial::new();
    f.add_lambda(&BigUint::from(259u32));
    f.multiply_factor(&IntPolynomial::from_i64s(&[-1, 0, 0, 1]), &BigUint::from(27u32));
    f.multiply_factor(&IntPolynomial::from_i64s(&[-2, 0, 0, 1]), &BigUint::from(18u32));
    f.multiply_factor(&IntPolynomial::from_i64s(&[1, 0, 0, -3, 0, 0, 1]), &BigUint::from(9u32));
    f
}

/// Reference factorization of `Φ` for `P₃⁽⁴⁾`:
/// `λ^95774 (λ⁴−1)^11440 (λ⁴−2)^5632 (λ⁸−3λ⁴+1)^4096`.
pub fn reference_p3_r4() -> FactoredPolynomial {
    let mut f = FactoredPolynomial::new();
    f.add_lambda(&BigUint::from(95774u32));
    f.multiply_factor(&IntPolynomial::from_i64s(&[-1, 0, 0, 0, 1]), &BigUint::from(11440u32));
    f.multiply_factor(&IntPolynomial::from_i64s(&[-2, 0, 0, 0, 1]), &BigUint::from(5632u32));
    f.multiply_factor(&IntPolynomial::from_i64s(&[1, 0, 0, 0, -3, 0, 0, 0, 1]), &BigUint::from(4096u32));
    f
}
