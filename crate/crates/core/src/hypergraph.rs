//! Uniform hypergraphs, simple (signed) graphs, and their spectral tensors.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tensor::{Hypermatrix, Scalar, TensorError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("uniformity r = {0} is below 2")]
    Uniformity(usize),
    #[error("edge #{index} has {size} vertices, expected {r}")]
    EdgeSize { index: usize, size: usize, r: usize },
    #[error("edge #{index} is not strictly increasing: {edge:?}")]
    UnsortedEdge { index: usize, edge: Vec<usize> },
    #[error("edge #{index} uses vertex {vertex} but n = {n}")]
    VertexOutOfRange { index: usize, vertex: usize, n: usize },
    #[error("edge #{index} duplicates an earlier edge {edge:?}")]
    DuplicateEdge { index: usize, edge: Vec<usize> },
    #[error("vertex {vertex} out of range (n = {n})")]
    NoSuchVertex { vertex: usize, n: usize },
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("graph edge #{index} ({u}, {v}) is a loop, duplicate, or out of range")]
    GraphEdge { index: usize, u: usize, v: usize },
    #[error("graph has {edges} edges but {signs} signs")]
    SignCount { edges: usize, signs: usize },
    #[error("sign {0} is not +1 or -1")]
    SignValue(i8),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

pub type Result<T> = std::result::Result<T, HypergraphError>;

/// An `r`-uniform hypergraph on vertices `0..n`. Edges are strictly
/// increasing vertex lists kept in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct UniformHypergraph {
    r: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawHypergraph {
    r: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl UniformHypergraph {
    /// Validates and canonicalizes (sorts) the edge list. Each edge must
    /// already be strictly increasing.
    pub fn new(r: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if r < 2 {
            return Err(HypergraphError::Uniformity(r));
        }
        let mut seen = BTreeSet::new();
        for (index, edge) in edges.iter().enumerate() {
            if edge.len() != r {
                return Err(HypergraphError::EdgeSize {
                    index,
                    size: edge.len(),
                    r,
                });
            }
            if edge.windows(2).any(|w| w[0] >= w[1]) {
                return Err(HypergraphError::UnsortedEdge {
                    index,
                    edge: edge.clone(),
                });
            }
            if let Some(&vertex) = edge.iter().find(|&&v| v >= n) {
                return Err(HypergraphError::VertexOutOfRange { index, vertex, n });
            }
            if !seen.insert(edge.clone()) {
                return Err(HypergraphError::DuplicateEdge {
                    index,
                    edge: edge.clone(),
                });
            }
        }
        Ok(Self {
            r,
            n,
            edges: seen.into_iter().collect(),
        })
    }

    /// Builds from unsorted vertex sets, silently merging duplicates.
    pub fn from_sets<I>(r: usize, n: usize, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let edges: BTreeSet<Vec<usize>> = sets
            .into_iter()
            .map(|mut e| {
                e.sort_unstable();
                e
            })
            .collect();
        Self::new(r, n, edges.into_iter().collect())
    }

    /// `n` isolated vertices.
    pub fn empty(r: usize, n: usize) -> Result<Self> {
        Self::new(r, n, Vec::new())
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        if v >= self.n {
            return Err(HypergraphError::NoSuchVertex { vertex: v, n: self.n });
        }
        Ok(self.edges.iter().filter(|e| e.binary_search(&v).is_ok()).count())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regularity(&self) -> Option<usize> {
        let d = self.degrees();
        match d.first() {
            None => Some(0),
            Some(&first) => d.iter().all(|&x| x == first).then_some(first),
        }
    }

    /// Edge indices incident to each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut components = self.n;
        for e in &self.edges {
            for w in e.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent[a] = b;
                    components -= 1;
                }
            }
        }
        components == 1
    }

    /// Connected with `n = m(r − 1) + 1`, i.e. the vertex–edge incidence graph
    /// is a tree.
    pub fn is_hypertree(&self) -> bool {
        self.n >= 1 && self.is_connected() && self.n == self.edges.len() * (self.r - 1) + 1
    }

    /// The sub-hypergraph on `edge_ids`, relabelled onto the union of their
    /// vertices (ascending). Returns the map from new to old labels as well.
    pub fn edge_induced(&self, edge_ids: &[usize]) -> (UniformHypergraph, Vec<usize>) {
        let verts: Vec<usize> = edge_ids
            .iter()
            .flat_map(|&i| self.edges[i].iter().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let edges = edge_ids.iter().map(|&i| {
            self.edges[i]
                .iter()
                .map(|v| verts.binary_search(v).expect("vertex in union"))
                .collect()
        });
        let h = UniformHypergraph::from_sets(self.r, verts.len(), edges).expect("sub-hypergraph is valid");
        (h, verts)
    }

    /// Same hypergraph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<UniformHypergraph> {
        UniformHypergraph::from_sets(
            self.r,
            self.n,
            self.edges.iter().map(|e| e.iter().map(|&v| perm[v]).collect()),
        )
    }

    /// Parses the `{"r", "n", "edges"}` JSON format. Extra keys are ignored.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawHypergraph = serde_json::from_str(text).map_err(|e| HypergraphError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::new(raw.r, raw.n, raw.edges)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("hypergraph serializes")
    }

    /// Adjacency tensor: `1/(r−1)!` at every ordering of every edge.
    pub fn adjacency_tensor<S: Scalar>(&self) -> Result<Hypermatrix<S>> {
        self.spectral_tensor(0, 1)
    }

    /// Laplacian tensor `D − A`.
    pub fn laplacian_tensor<S: Scalar>(&self) -> Result<Hypermatrix<S>> {
        self.spectral_tensor(1, -1)
    }

    /// Signless Laplacian tensor `D + A`.
    pub fn signless_tensor<S: Scalar>(&self) -> Result<Hypermatrix<S>> {
        self.spectral_tensor(1, 1)
    }

    pub fn tensor<S: Scalar>(&self, kind: TensorKind) -> Result<Hypermatrix<S>> {
        match kind {
            TensorKind::Adjacency => self.adjacency_tensor(),
            TensorKind::Laplacian => self.laplacian_tensor(),
            TensorKind::Signless => self.signless_tensor(),
        }
    }

    // degree_sign · D + adjacency_sign · A, filled in one pass.
    fn spectral_tensor<S: Scalar>(&self, degree_sign: i64, adjacency_sign: i64) -> Result<Hypermatrix<S>> {
        let r = self.r;
        let mut t = Hypermatrix::<S>::zeros(vec![self.n; r])?;
        let fact: i64 = (1..r as i64).product();
        let value = S::from_ratio(adjacency_sign, fact);
        let n = self.n;
        let entries = t.entries_mut();
        for e in &self.edges {
            for perm in e.iter().permutations(r) {
                let off = perm.iter().fold(0usize, |acc, &&v| acc * n + v);
                entries[off] = value.clone();
            }
        }
        if degree_sign != 0 {
            let diag_step: usize = (0..r).map(|p| n.pow(p as u32)).sum();
            for (v, d) in self.degrees().into_iter().enumerate() {
                entries[v * diag_step] = S::from_int(degree_sign * d as i64);
            }
        }
        Ok(t)
    }
}

/// Which spectral tensor of a hypergraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TensorKind {
    #[serde(rename = "A")]
    Adjacency,
    #[serde(rename = "L")]
    Laplacian,
    #[serde(rename = "Q")]
    Signless,
}

impl TensorKind {
    pub fn symbol(self) -> &'static str {
        match self {
            TensorKind::Adjacency => "A",
            TensorKind::Laplacian => "L",
            TensorKind::Signless => "Q",
        }
    }
}

impl std::str::FromStr for TensorKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "A" | "a" | "adjacency" => Ok(TensorKind::Adjacency),
            "L" | "l" | "laplacian" => Ok(TensorKind::Laplacian),
            "Q" | "q" | "signless" => Ok(TensorKind::Signless),
            other => Err(format!("unknown tensor kind {other:?} (expected A, L or Q)")),
        }
    }
}

/// `K_n^{(r)}`: all `r`-subsets of `n` vertices.
pub fn complete_hypergraph(n: usize, r: usize) -> Result<UniformHypergraph> {
    if r < 2 || n < r {
        return Err(HypergraphError::Parameters(format!(
            "complete hypergraph needs n >= r >= 2, got n = {n}, r = {r}"
        )));
    }
    UniformHypergraph::new(r, n, (0..n).combinations(r).collect())
}

/// `S_m^{(r)}`: `m` edges sharing the center vertex 0; edge `i` (0-based) is
/// `{0, 1 + i(r−1), …, (i+1)(r−1)}`.
pub fn hyperstar(m: usize, r: usize) -> Result<UniformHypergraph> {
    if r < 2 || m < 1 {
        return Err(HypergraphError::Parameters(format!(
            "hyperstar needs m >= 1 and r >= 2, got m = {m}, r = {r}"
        )));
    }
    let edges = (0..m)
        .map(|i| std::iter::once(0).chain(1 + i * (r - 1)..=(i + 1) * (r - 1)).collect())
        .collect();
    UniformHypergraph::new(r, m * (r - 1) + 1, edges)
}

/// `P_m^{(r)}`: edge `i` (0-based) is `{i(r−1), …, i(r−1) + r − 1}`, so
/// consecutive edges share exactly one vertex.
pub fn loose_path(m: usize, r: usize) -> Result<UniformHypergraph> {
    if r < 2 || m < 1 {
        return Err(HypergraphError::Parameters(format!(
            "loose path needs m >= 1 and r >= 2, got m = {m}, r = {r}"
        )));
    }
    let edges = (0..m).map(|i| (i * (r - 1)..i * (r - 1) + r).collect()).collect();
    UniformHypergraph::new(r, m * (r - 1) + 1, edges)
}

/// A simple undirected graph with optional `±1` edge signs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    signs: Option<Vec<i8>>,
}

#[derive(Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default)]
    signs: Option<Vec<i8>>,
}

impl Graph {
    /// Edges are stored as `(min, max)` in the given order.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (index, (u, v)) in edges.into_iter().enumerate() {
            let (a, b) = (u.min(v), u.max(v));
            if a == b || b >= n || !seen.insert((a, b)) {
                return Err(HypergraphError::GraphEdge { index, u, v });
            }
            out.push((a, b));
        }
        Ok(Self {
            n,
            edges: out,
            signs: None,
        })
    }

    pub fn with_signs(mut self, signs: Vec<i8>) -> Result<Self> {
        if signs.len() != self.edges.len() {
            return Err(HypergraphError::SignCount {
                edges: self.edges.len(),
                signs: signs.len(),
            });
        }
        if let Some(&bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(HypergraphError::SignValue(bad));
        }
        self.signs = Some(signs);
        Ok(self)
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i)).collect()).expect("path is simple")
    }

    pub fn complete(n: usize) -> Self {
        Self::new(n, (0..n).tuple_combinations().collect()).expect("complete graph is simple")
    }

    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (1..=leaves).map(|i| (0, i)).collect()).expect("star is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn signs(&self) -> Option<&[i8]> {
        self.signs.as_deref()
    }

    /// Signed adjacency matrix, row-major `n × n`.
    pub fn adjacency_matrix(&self) -> Vec<f64> {
        let mut a = vec![0.0; self.n * self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            let s = self.signs.as_ref().map_or(1.0, |s| s[i] as f64);
            a[u * self.n + v] = s;
            a[v * self.n + u] = s;
        }
        a
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawGraph = serde_json::from_str(text).map_err(|e| HypergraphError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let g = Graph::new(raw.n, raw.edges)?;
        match raw.signs {
            Some(s) => g.with_signs(s),
            None => Ok(g),
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("graph serializes")
    }
}
