//! Closed-form eigenpairs of join, Kronecker, corona and pendant products,
//! main/non-main classification and residual verification.
//!
//! Generators return [`Candidate`]s (value plus constructed vector) or
//! solution bundles; [`Candidate::verify`] turns one into an [`Eigenpair`]
//! against the tensor of the product hypergraph.

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::constructions::binomial;
use crate::hypergraph::{complete_hypergraph, HypergraphError, TensorKind};
use crate::poly::{polynomial_roots, sort_complex, IntPolynomial, PolyError};
use crate::tensor::{apply_vector_power, entrywise_power, kronecker_vector, ComplexTensor, TensorError};

#[derive(Debug, Error)]
pub enum TheoremError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("eigenvector is zero")]
    ZeroVector,
    #[error("vector of length {n} is too short: need at least {needed}")]
    TooShort { n: usize, needed: usize },
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("factor eigenpair has residual {residual:e} above {tol:e}")]
    FactorResidual { residual: f64, tol: f64 },
    #[error("vector is main: (r-1)-subset monomial sum is {0}")]
    NotNonMain(Complex64),
    #[error("the two eigenvalue expressions disagree: {first} vs {second}")]
    Inconsistent { first: Complex64, second: Complex64 },
}

pub type Result<T> = std::result::Result<T, TheoremError>;

/// Residual bound every verified eigenpair must meet.
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Roots this close to a pole or to zero are excluded.
pub const POLE_TOL: f64 = 1e-10;

/// `(value, vector, residual)`; the residual is measured against the tensor
/// the pair was verified with.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Eigenpair {
    pub value: Complex64,
    pub vector: Vec<Complex64>,
    pub residual: f64,
}

impl Eigenpair {
    pub fn new(t: &ComplexTensor, value: Complex64, vector: Vec<Complex64>) -> Result<Self> {
        let residual = residual(t, value, &vector)?;
        Ok(Self { value, vector, residual })
    }

    fn checked(&self) -> Result<&Self> {
        if self.residual.is_nan() || self.residual > RESIDUAL_TOL {
            return Err(TheoremError::FactorResidual {
                residual: self.residual,
                tol: RESIDUAL_TOL,
            });
        }
        Ok(self)
    }
}

/// An unverified eigenvalue/eigenvector proposal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    pub value: Complex64,
    pub vector: Vec<Complex64>,
}

impl Candidate {
    pub fn verify(&self, t: &ComplexTensor) -> Result<Eigenpair> {
        Eigenpair::new(t, self.value, self.vector.clone())
    }
}

fn sup_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn normalized(v: &[Complex64]) -> Result<Vec<Complex64>> {
    let m = sup_norm(v);
    if m == 0.0 || !m.is_finite() {
        return Err(TheoremError::ZeroVector);
    }
    Ok(v.iter().map(|z| z / m).collect())
}

/// `‖T v^{r−1} − λ v^{[r−1]}‖_∞` with `v` scaled to unit sup-norm.
pub fn residual(t: &ComplexTensor, lambda: Complex64, v: &[Complex64]) -> Result<f64> {
    let v = normalized(v)?;
    let tv = apply_vector_power(t, &v)?;
    let r = t.order();
    let pv = entrywise_power(&v, (r - 1) as u32);
    Ok(tv
        .iter()
        .zip(&pv)
        .map(|(a, b)| (a - lambda * b).norm())
        .fold(0.0, f64::max))
}

/// Elementary symmetric polynomial `e_k(x)`.
fn elementary_symmetric(x: &[Complex64], k: usize) -> Complex64 {
    let mut e = vec![Complex64::zero(); k + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for (i, &xi) in x.iter().enumerate() {
        for j in (1..=k.min(i + 1)).rev() {
            e[j] = e[j] + xi * e[j - 1];
        }
    }
    e[k]
}

/// Sum of `x^S` over all `(r−1)`-subsets `S`, with `x` scaled to unit
/// sup-norm. This equals `𝒯 x^{r−1}` for the (0,1)-tensor of `K_n^{(r−1)}`
/// up to the factor `(r−1)!`.
pub fn nonmain_sum(x: &[Complex64], r: usize) -> Result<Complex64> {
    if r < 2 {
        return Err(TheoremError::Parameters(format!("uniformity {r} < 2")));
    }
    if x.len() < r - 1 {
        return Err(TheoremError::TooShort {
            n: x.len(),
            needed: r - 1,
        });
    }
    Ok(elementary_symmetric(&normalized(x)?, r - 1))
}

/// Whether the `(r−1)`-subset monomial sum of `x` vanishes within `tol`.
pub fn is_nonmain_vector(x: &[Complex64], r: usize, tol: f64) -> Result<bool> {
    Ok(nonmain_sum(x, r)?.norm() <= tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Main,
    NonMain,
    /// The supplied pair is not an eigenpair of the tensor.
    Undetermined,
}

/// Main/non-main classification of an eigenpair of `𝒜`, `ℒ` or `𝒬` of
/// `K_n^{(r)}`.
pub fn complete_hypergraph_nonmain_check(
    kind: TensorKind,
    n: usize,
    r: usize,
    value: Complex64,
    vector: &[Complex64],
) -> Result<Classification> {
    if r < 3 || n < r {
        return Err(TheoremError::Parameters(format!("need n ≥ r ≥ 3, got n={n}, r={r}")));
    }
    let t: ComplexTensor = complete_hypergraph(n, r)?.tensor(kind)?;
    if residual(&t, value, vector)? > RESIDUAL_TOL {
        return Ok(Classification::Undetermined);
    }
    let special = match kind {
        TensorKind::Adjacency => 0.0,
        TensorKind::Laplacian | TensorKind::Signless => binomial(n - 1, r - 1) as f64,
    };
    if (value - special).norm() <= POLE_TOL {
        return Ok(Classification::NonMain);
    }
    let v = normalized(vector)?;
    let s: Complex64 = entrywise_power(&v, (r - 1) as u32).iter().sum();
    Ok(if s.norm() <= RESIDUAL_TOL {
        Classification::NonMain
    } else {
        Classification::Main
    })
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

fn group_roots(roots: Vec<Complex64>) -> Vec<(Complex64, usize)> {
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    for z in roots {
        match out.iter_mut().find(|(w, _)| (*w - z).norm() <= 1e-8) {
            Some((_, m)) => *m += 1,
            None => out.push((z, 1)),
        }
    }
    out
}

/// Roots of a complex-coefficient polynomial; integral real coefficients go
/// through the exact square-free path.
fn solve(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let integral = coeffs
        .iter()
        .all(|c| c.im == 0.0 && c.re.fract() == 0.0 && c.re.abs() < 9.0e15);
    let mut roots = if integral {
        IntPolynomial::from_i64s(&coeffs.iter().map(|c| c.re as i64).collect::<Vec<_>>()).complex_roots(POLE_TOL)?
    } else {
        polynomial_roots(coeffs, POLE_TOL)?
    };
    sort_complex(&mut roots);
    Ok(roots)
}

/// Which side of a join a factor sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// One root `ε` of a join equation with its eigenvalue and the block vector
/// `[ε·1_{n1}; 1_{n2}]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JoinSolution {
    pub epsilon: Complex64,
    pub eigenvalue: Complex64,
    pub vector: Vec<Complex64>,
    /// Multiplicity of `ε` as a root of the cleared equation.
    pub multiplicity: usize,
    /// Positive real `ε`: the spectral-radius candidate.
    pub perron: bool,
}

impl JoinSolution {
    pub fn candidate(&self) -> Candidate {
        Candidate {
            value: self.eigenvalue,
            vector: self.vector.clone(),
        }
    }
}

/// Cross-edge counts seen from one side of a join: entry `k` (1 ≤ k ≤ r−1)
/// counts edges through a fixed vertex with exactly `k` vertices on the
/// other side, `C(n_other, k)·C(n_self − 1, r−1−k)`.
fn cross_counts(n_self: usize, n_other: usize, r: usize) -> Vec<f64> {
    (0..r)
        .map(|k| {
            if k == 0 || n_self == 0 {
                0.0
            } else {
                (binomial(n_other, k) * binomial(n_self - 1, r - 1 - k)) as f64
            }
        })
        .collect()
}

/// Number of join edges through a vertex of the given side that meet the
/// other side.
pub fn join_cross_degree(n_self: usize, n_other: usize, r: usize) -> u128 {
    (1..r)
        .map(|k| binomial(n_other, k) * binomial(n_self.saturating_sub(1), r - 1 - k))
        .sum()
}

#[derive(Clone, Copy)]
enum JoinKind {
    Laplacian,
    Adjacency { d1: f64, d2: f64 },
    Signless { d1: f64, d2: f64 },
}

fn join_solutions(n1: usize, n2: usize, r: usize, kind: JoinKind) -> Result<Vec<JoinSolution>> {
    if n1 == 0 || n2 == 0 || r < 2 {
        return Err(TheoremError::Parameters(format!(
            "join equation needs n1, n2 ≥ 1 and r ≥ 2 (n1={n1}, n2={n2}, r={r})"
        )));
    }
    let a = cross_counts(n1, n2, r);
    let b = cross_counts(n2, n1, r);
    // Coefficients of (left value − right value)·ε^{r−1}; index = power of ε.
    let mut coeffs = vec![0.0; 2 * r - 1];
    let (base, sign) = match kind {
        JoinKind::Laplacian => (0.0, -1.0),
        JoinKind::Adjacency { d1, d2 } => (d1 - d2, 1.0),
        JoinKind::Signless { d1, d2 } => (2.0 * (d1 - d2), 1.0),
    };
    coeffs[r - 1] += base;
    for k in 1..r {
        if matches!(kind, JoinKind::Laplacian | JoinKind::Signless { .. }) {
            coeffs[r - 1] += a[k] - b[k];
        }
        coeffs[r - 1 - k] += sign * a[k];
        coeffs[r - 1 + k] -= sign * b[k];
    }
    if coeffs.iter().all(|c| *c == 0.0) {
        return Err(TheoremError::Parameters("join has no cross edges".into()));
    }
    let complex: Vec<Complex64> = coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect();
    let roots = group_roots(solve(&complex)?);
    let mut out = Vec::new();
    for (eps, multiplicity) in roots {
        if eps.norm() <= POLE_TOL {
            continue;
        }
        let left: Complex64 = (1..r)
            .map(|k| {
                let p = eps.powi(-(k as i32));
                match kind {
                    JoinKind::Laplacian => a[k] * (1.0 - p),
                    JoinKind::Adjacency { .. } => a[k] * p,
                    JoinKind::Signless { .. } => a[k] * (1.0 + p),
                }
            })
            .sum::<Complex64>()
            + match kind {
                JoinKind::Laplacian => 0.0,
                JoinKind::Adjacency { d1, .. } => d1,
                JoinKind::Signless { d1, .. } => 2.0 * d1,
            };
        let right: Complex64 = (1..r)
            .map(|k| {
                let p = eps.powi(k as i32);
                match kind {
                    JoinKind::Laplacian => b[k] * (1.0 - p),
                    JoinKind::Adjacency { .. } => b[k] * p,
                    JoinKind::Signless { .. } => b[k] * (1.0 + p),
                }
            })
            .sum::<Complex64>()
            + match kind {
                JoinKind::Laplacian => 0.0,
                JoinKind::Adjacency { d2, .. } => d2,
                JoinKind::Signless { d2, .. } => 2.0 * d2,
            };
        if (left - right).norm() > RESIDUAL_TOL * left.norm().max(1.0) {
            return Err(TheoremError::Inconsistent {
                first: left,
                second: right,
            });
        }
        let perron = !matches!(kind, JoinKind::Laplacian) && eps.im.abs() <= POLE_TOL && eps.re > 0.0;
        let mut vector = vec![eps; n1];
        vector.extend(std::iter::repeat_n(Complex64::new(1.0, 0.0), n2));
        out.push(JoinSolution {
            epsilon: eps,
            eigenvalue: left,
            vector,
            multiplicity,
            perron,
        });
    }
    Ok(out)
}

/// Join Laplacian solutions; they depend only on `n1`, `n2`, `r`.
pub fn join_laplacian_solutions(n1: usize, n2: usize, r: usize) -> Result<Vec<JoinSolution>> {
    join_solutions(n1, n2, r, JoinKind::Laplacian)
}

/// Join adjacency solutions for a `d1`-regular and a `d2`-regular factor.
pub fn join_adjacency_regular(n1: usize, d1: usize, n2: usize, d2: usize, r: usize) -> Result<Vec<JoinSolution>> {
    join_solutions(
        n1,
        n2,
        r,
        JoinKind::Adjacency {
            d1: d1 as f64,
            d2: d2 as f64,
        },
    )
}

/// Join signless Laplacian solutions for regular factors.
pub fn join_signless_regular(n1: usize, d1: usize, n2: usize, d2: usize, r: usize) -> Result<Vec<JoinSolution>> {
    join_solutions(
        n1,
        n2,
        r,
        JoinKind::Signless {
            d1: d1 as f64,
            d2: d2 as f64,
        },
    )
}

/// Lifts a non-main factor eigenpair to the join by zero padding. Adjacency
/// keeps the eigenvalue; `ℒ`/`𝒬` add the cross degree of the factor's side.
pub fn join_lifted_nonmain(
    kind: TensorKind,
    factor: &Eigenpair,
    side: Side,
    n_other: usize,
    r: usize,
) -> Result<Candidate> {
    let x = &factor.checked()?.vector;
    let s = nonmain_sum(x, r)?;
    if s.norm() > RESIDUAL_TOL {
        return Err(TheoremError::NotNonMain(s));
    }
    let shift = match kind {
        TensorKind::Adjacency => 0.0,
        _ => join_cross_degree(x.len(), n_other, r) as f64,
    };
    let zeros = std::iter::repeat_n(Complex64::zero(), n_other);
    let vector = match side {
        Side::Left => x.iter().copied().chain(zeros).collect(),
        Side::Right => zeros.chain(x.iter().copied()).collect(),
    };
    Ok(Candidate {
        value: factor.value + shift,
        vector,
    })
}

fn check_r(r: usize) -> Result<()> {
    if r < 2 {
        return Err(TheoremError::Parameters(format!("uniformity {r} < 2")));
    }
    Ok(())
}

/// `((r−1)!·λμ, x⊗z)` for adjacency eigenpairs of the two factors.
pub fn kronecker_adjacency_pair(a: &Eigenpair, b: &Eigenpair, r: usize) -> Result<Candidate> {
    check_r(r)?;
    let (a, b) = (a.checked()?, b.checked()?);
    Ok(Candidate {
        value: factorial(r - 1) * a.value * b.value,
        vector: kronecker_vector(&a.vector, &b.vector),
    })
}

/// `((r−1)!(λd2 + μd1 − λμ), x⊗z)` for Laplacian eigenpairs of a
/// `d1`-regular and a `d2`-regular factor.
pub fn kronecker_laplacian_regular(a: &Eigenpair, b: &Eigenpair, d1: usize, d2: usize, r: usize) -> Result<Candidate> {
    check_r(r)?;
    let (a, b) = (a.checked()?, b.checked()?);
    let (l, m, d1, d2) = (a.value, b.value, d1 as f64, d2 as f64);
    Ok(Candidate {
        value: factorial(r - 1) * (l * d2 + m * d1 - l * m),
        vector: kronecker_vector(&a.vector, &b.vector),
    })
}

/// `((r−1)!(βθ + 2d1d2 − βd2 − θd1), w⊗y)` for signless eigenpairs of
/// regular factors.
pub fn kronecker_signless_regular(a: &Eigenpair, b: &Eigenpair, d1: usize, d2: usize, r: usize) -> Result<Candidate> {
    check_r(r)?;
    let (a, b) = (a.checked()?, b.checked()?);
    let (be, th, d1, d2) = (a.value, b.value, d1 as f64, d2 as f64);
    Ok(Candidate {
        value: factorial(r - 1) * (be * th + 2.0 * d1 * d2 - be * d2 - th * d1),
        vector: kronecker_vector(&a.vector, &b.vector),
    })
}

/// One root `μ` of a corona or pendant polynomial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoronaSolution {
    pub root: Complex64,
    /// The root coincides with the pole of the block scaling.
    pub excluded: bool,
    pub eigenvalue: Complex64,
    pub vector: Option<Vec<Complex64>>,
}

impl CoronaSolution {
    pub fn candidate(&self) -> Option<Candidate> {
        self.vector.as_ref().map(|v| Candidate {
            value: self.eigenvalue,
            vector: v.clone(),
        })
    }
}

/// `(μ − a)(σ(μ − p))^{r−1} + K = 0`, block value `w·x_i / (σ(μ − p))`,
/// with `copies` blocks of `block_len` vertices attached to every factor
/// vertex.
struct CoronaShape {
    a: Complex64,
    sigma: f64,
    pole: f64,
    constant: f64,
    weight: f64,
    copies: usize,
    block_len: usize,
}

fn poly_mul(p: &[Complex64], q: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

fn corona_family(x: &[Complex64], r: usize, shape: CoronaShape) -> Result<Vec<CoronaSolution>> {
    check_r(r)?;
    let c = |re: f64| Complex64::new(re, 0.0);
    let linear = [c(-shape.sigma * shape.pole), c(shape.sigma)];
    let mut poly = vec![-shape.a, c(1.0)];
    for _ in 0..r - 1 {
        poly = poly_mul(&poly, &linear);
    }
    poly[0] += shape.constant;
    let mut out = Vec::new();
    for mu in solve(&poly)? {
        let denom = shape.sigma * (mu - shape.pole);
        if (mu - shape.pole).norm() <= POLE_TOL {
            out.push(CoronaSolution {
                root: mu,
                excluded: true,
                eigenvalue: mu,
                vector: None,
            });
            continue;
        }
        let scale = shape.weight / denom;
        let mut vector = x.to_vec();
        for &xi in x {
            for _ in 0..shape.copies {
                vector.extend(std::iter::repeat_n(scale * xi, shape.block_len));
            }
        }
        out.push(CoronaSolution {
            root: mu,
            excluded: false,
            eigenvalue: mu,
            vector: Some(vector),
        });
    }
    Ok(out)
}

/// Eigen-solutions of `H` with `k` pendant edges at every vertex, from an
/// eigenpair of the matching tensor of `H`.
pub fn pendant_k_solutions(kind: TensorKind, factor: &Eigenpair, k: usize, r: usize) -> Result<Vec<CoronaSolution>> {
    if k == 0 {
        return Err(TheoremError::Parameters("pendant count k must be ≥ 1".into()));
    }
    let f = factor.checked()?;
    let kf = k as f64;
    let shape = match kind {
        TensorKind::Adjacency => CoronaShape {
            a: f.value,
            sigma: 1.0,
            pole: 0.0,
            constant: -kf,
            weight: 1.0,
            copies: k,
            block_len: r.saturating_sub(1),
        },
        TensorKind::Laplacian => CoronaShape {
            a: f.value + kf,
            sigma: -1.0,
            pole: 1.0,
            constant: kf,
            weight: 1.0,
            copies: k,
            block_len: r.saturating_sub(1),
        },
        TensorKind::Signless => CoronaShape {
            a: f.value + kf,
            sigma: 1.0,
            pole: 1.0,
            constant: -kf,
            weight: 1.0,
            copies: k,
            block_len: r.saturating_sub(1),
        },
    };
    corona_family(&f.vector, r, shape)
}

/// Eigen-solutions of `H ⊙ (r−1)K₁`.
pub fn corona_k1_solutions(kind: TensorKind, factor: &Eigenpair, r: usize) -> Result<Vec<CoronaSolution>> {
    pendant_k_solutions(kind, factor, 1, r)
}

fn corona_constants(n2: usize, r: usize) -> Result<(f64, f64)> {
    check_r(r)?;
    if n2 < r - 1 || n2 == 0 {
        return Err(TheoremError::Parameters(format!("corona needs n2 ≥ r − 1 (n2={n2}, r={r})")));
    }
    let big = binomial(n2, r - 1) as f64;
    Ok((big, binomial(n2 - 1, r - 2) as f64))
}

/// Laplacian solutions of `G ⊙ H` for any `H` on `n2` vertices, from a
/// Laplacian eigenpair `(θ, x)` of `G`. Copy `j` is constant `c·x_j/(c − μ)`
/// with `c = C(n2−1, r−2)`.
pub fn corona_laplacian_general(factor: &Eigenpair, n2: usize, r: usize) -> Result<Vec<CoronaSolution>> {
    let f = factor.checked()?;
    let (big, c) = corona_constants(n2, r)?;
    corona_family(
        &f.vector,
        r,
        CoronaShape {
            a: f.value + big,
            sigma: -1.0,
            pole: c,
            constant: big * c.powi(r as i32 - 1),
            weight: c,
            copies: 1,
            block_len: n2,
        },
    )
}

/// Adjacency solutions of `G ⊙ H` for `d`-regular `H` on `n2` vertices.
pub fn corona_adjacency_regular(factor: &Eigenpair, d: usize, n2: usize, r: usize) -> Result<Vec<CoronaSolution>> {
    let f = factor.checked()?;
    let (big, c) = corona_constants(n2, r)?;
    corona_family(
        &f.vector,
        r,
        CoronaShape {
            a: f.value,
            sigma: 1.0,
            pole: d as f64,
            constant: -big * c.powi(r as i32 - 1),
            weight: c,
            copies: 1,
            block_len: n2,
        },
    )
}

/// Signless Laplacian solutions of `G ⊙ H` for `d`-regular `H`.
pub fn corona_signless_regular(factor: &Eigenpair, d: usize, n2: usize, r: usize) -> Result<Vec<CoronaSolution>> {
    let f = factor.checked()?;
    let (big, c) = corona_constants(n2, r)?;
    corona_family(
        &f.vector,
        r,
        CoronaShape {
            a: f.value + big,
            sigma: 1.0,
            pole: 2.0 * d as f64 + c,
            constant: -big * c.powi(r as i32 - 1),
            weight: c,
            copies: 1,
            block_len: n2,
        },
    )
}

/// Lifts a non-main eigenpair of `H` into each of the `n1` copies of `H`
/// inside `G ⊙ H`. Adjacency keeps the eigenvalue; `ℒ`/`𝒬` add
/// `C(n2−1, r−2)`.
pub fn corona_lifted_nonmain(kind: TensorKind, factor: &Eigenpair, n1: usize, r: usize) -> Result<Vec<Candidate>> {
    let z = &factor.checked()?.vector;
    let n2 = z.len();
    let s = nonmain_sum(z, r)?;
    if s.norm() > RESIDUAL_TOL {
        return Err(TheoremError::NotNonMain(s));
    }
    let shift = match kind {
        TensorKind::Adjacency => 0.0,
        _ => corona_constants(n2, r)?.1,
    };
    Ok((0..n1)
        .map(|j| {
            let mut vector = vec![Complex64::zero(); n1 + n1 * n2];
            vector[n1 + j * n2..n1 + (j + 1) * n2].copy_from_slice(z);
            Candidate {
                value: factor.value + shift,
                vector,
            }
        })
        .collect())
}

/// Numerical rank of a set of vectors (Gaussian elimination with partial
/// pivoting, relative threshold `1e−9`).
pub fn vector_rank(vectors: &[Vec<Complex64>]) -> usize {
    let mut rows: Vec<Vec<Complex64>> = vectors.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let scale = rows.iter().map(|v| sup_norm(v)).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).max_by(|&i, &j| rows[i][col].norm().total_cmp(&rows[j][col].norm()))
        else {
            break;
        };
        if rows[pivot][col].norm() <= 1e-9 * scale {
            continue;
        }
        rows.swap(rank, pivot);
        for i in rank + 1..rows.len() {
            let f = rows[i][col] / rows[rank][col];
            for k in col..cols {
                let v = rows[rank][k];
                rows[i][k] -= f * v;
            }
        }
        rank += 1;
    }
    rank
}
