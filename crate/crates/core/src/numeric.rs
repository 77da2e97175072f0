//! Numeric eigenpair search: damped Newton on the eigen-equations, seeded
//! multistart, the shifted symmetric higher-order power method and dense
//! symmetric matrix eigenvalues.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::tensor::{apply_vector_power, entrywise_power, ComplexTensor, TensorError};
use crate::theorems::{residual, Eigenpair, TheoremError};

#[derive(Debug, Error)]
pub enum NumericError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Theorem(#[from] TheoremError),
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("singular Jacobian at iteration {0}; restart from another point")]
    SingularJacobian(usize),
    #[error("tensor is not irreducible (underlying hypergraph is disconnected)")]
    Disconnected,
    #[error("tensor has a negative or non-real entry")]
    NotNonnegative,
    #[error("input is not symmetric")]
    NotSymmetric,
    #[error("invalid solver configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, NumericError>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverConfig {
    pub max_iterations: usize,
    pub tolerance: f64,
    /// Power-method shift; `None` means `1 + max row sum`.
    pub shift: Option<f64>,
    pub starts: usize,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_iterations: 500,
            tolerance: 1e-10,
            shift: None,
            starts: 32,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(NumericError::Config(format!("tolerance {} must be positive", self.tolerance)));
        }
        if self.starts == 0 {
            return Err(NumericError::Config("starts must be at least 1".into()));
        }
        if self.shift.is_some_and(|a| !(a >= 0.0)) {
            return Err(NumericError::Config("shift must be non-negative".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NewtonOutcome {
    pub pair: Eigenpair,
    pub iterations: usize,
}

fn square(t: &ComplexTensor) -> Result<(usize, usize)> {
    let n = t
        .square_dimension()
        .ok_or_else(|| TensorError::NotSquare(t.dims().to_vec()))?;
    if t.order() < 2 {
        return Err(TensorError::OrderTooSmall(t.order(), 2).into());
    }
    Ok((n, t.order()))
}

/// `F(λ, x) = T x^{r−1} − λ x^{[r−1]}`.
pub fn eigen_map(t: &ComplexTensor, lambda: Complex64, x: &[Complex64]) -> Result<Vec<Complex64>> {
    let tx = apply_vector_power(t, x)?;
    let px = entrywise_power(x, (t.order() - 1) as u32);
    Ok(tx.iter().zip(&px).map(|(a, b)| a - lambda * b).collect())
}

/// Jacobian of [`eigen_map`]: `n` rows, columns `∂/∂x_1 … ∂/∂x_n, ∂/∂λ`.
pub fn jacobian(t: &ComplexTensor, lambda: Complex64, x: &[Complex64]) -> Result<Vec<Vec<Complex64>>> {
    let (n, r) = square(t)?;
    if x.len() != n {
        return Err(TensorError::LengthMismatch {
            expected: n,
            got: x.len(),
        }
        .into());
    }
    let block = t.entries().len() / n;
    let tail = r - 1;
    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![Complex64::zero(); n + 1];
            let mut index = vec![0usize; tail];
            for value in &t.entries()[i * block..(i + 1) * block] {
                if !value.is_zero() {
                    for p in 0..tail {
                        let mut term = *value;
                        for (q, &k) in index.iter().enumerate() {
                            if q != p {
                                term *= x[k];
                            }
                        }
                        row[index[p]] += term;
                    }
                }
                for slot in index.iter_mut().rev() {
                    *slot += 1;
                    if *slot < n {
                        break;
                    }
                    *slot = 0;
                }
            }
            row[i] -= lambda * (tail as f64) * x[i].powu(tail as u32 - 1);
            row[n] = -x[i].powu(tail as u32);
            row
        })
        .collect();
    Ok(rows)
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Damped Newton iteration on `F(λ, x) = 0` in the affine chart `c·x = 1`,
/// where `c` is a seeded random perturbation of the conjugate start vector.
pub fn newton_eigenpair(
    t: &ComplexTensor,
    start_value: Complex64,
    start_vector: &[Complex64],
    cfg: &SolverConfig,
) -> Result<NewtonOutcome> {
    cfg.validate()?;
    let (n, _) = square(t)?;
    if start_vector.len() != n {
        return Err(TensorError::LengthMismatch {
            expected: n,
            got: start_vector.len(),
        }
        .into());
    }
    let mut lambda = start_value;
    let mut x = start_vector.to_vec();
    let start_residual = residual(t, lambda, &x)?;
    if start_residual <= cfg.tolerance {
        return Ok(NewtonOutcome {
            pair: Eigenpair::new(t, lambda, x)?,
            iterations: 0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let scale = norm2(&x);
    let mut chart: Vec<Complex64> = x
        .iter()
        .map(|z| z.conj() / (scale * scale) + Complex64::new(rng.random_range(-0.1..0.1), rng.random_range(-0.1..0.1)) / scale)
        .collect();
    let cx: Complex64 = chart.iter().zip(&x).map(|(c, z)| c * z).sum();
    if cx.norm() < 1e-8 {
        chart = x.iter().map(|z| z.conj() / (scale * scale)).collect();
    } else {
        chart.iter_mut().for_each(|c| *c /= cx);
    }
    let system = |lambda: Complex64, x: &[Complex64]| -> Result<Vec<Complex64>> {
        let mut f = eigen_map(t, lambda, x)?;
        f.push(chart.iter().zip(x).map(|(c, z)| c * z).sum::<Complex64>() - 1.0);
        Ok(f)
    };
    let mut f = system(lambda, &x)?;
    for iteration in 1..=cfg.max_iterations {
        let jac = jacobian(t, lambda, &x)?;
        let mut m = DMatrix::<Complex64>::zeros(n + 1, n + 1);
        for (i, row) in jac.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        for (j, c) in chart.iter().enumerate() {
            m[(n, j)] = *c;
        }
        let rhs = DVector::from_iterator(n + 1, f.iter().map(|v| -v));
        let step = m.lu().solve(&rhs).ok_or(NumericError::SingularJacobian(iteration))?;
        if step.iter().any(|v| !v.is_finite()) {
            return Err(NumericError::SingularJacobian(iteration));
        }
        let current = norm2(&f);
        let mut damping = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let xn: Vec<Complex64> = x.iter().zip(step.iter()).map(|(a, d)| a + d * damping).collect();
            let ln = lambda + step[n] * damping;
            let fn_ = system(ln, &xn)?;
            if norm2(&fn_) < current || damping < 1e-9 {
                accepted = Some((ln, xn, fn_));
                break;
            }
            damping *= 0.5;
        }
        let Some((ln, xn, fn_)) = accepted else {
            break;
        };
        lambda = ln;
        x = xn;
        f = fn_;
        if norm2(&x) > 0.0 && residual(t, lambda, &x)? <= cfg.tolerance {
            return Ok(NewtonOutcome {
                pair: Eigenpair::new(t, lambda, x)?,
                iterations: iteration,
            });
        }
    }
    Err(NumericError::NonConvergence {
        iterations: cfg.max_iterations,
        residual: residual(t, lambda, &x).unwrap_or(f64::NAN),
    })
}

/// Largest row sum of entry moduli.
fn max_row_sum(t: &ComplexTensor, n: usize) -> f64 {
    let block = t.entries().len() / n;
    t.entries()
        .chunks(block)
        .map(|row| row.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Deterministic multistart Newton search. Starts are the all-ones vector,
/// every canonical vector, then `cfg.starts` seeded random complex points.
/// Converged pairs are sorted by `(re, im)` of the value and deduplicated
/// within `1e−8`.
pub fn multistart_eigen_search(t: &ComplexTensor, cfg: &SolverConfig) -> Result<Vec<Eigenpair>> {
    cfg.validate()?;
    let (n, r) = square(t)?;
    let spread = max_row_sum(t, n).max(1.0);
    let mut starts: Vec<(Complex64, Vec<Complex64>, u64)> = Vec::new();
    let ones = vec![Complex64::new(1.0, 0.0); n];
    let row_value = apply_vector_power(t, &ones)?.first().copied().unwrap_or_default();
    starts.push((row_value, ones, cfg.seed));
    for i in 0..n {
        let mut e = vec![Complex64::zero(); n];
        e[i] = Complex64::new(1.0, 0.0);
        let diag = t.get(&vec![i + 1; r]).copied().unwrap_or_default();
        starts.push((diag, e, cfg.seed.wrapping_add(i as u64 + 1)));
    }
    for s in 0..cfg.starts as u64 {
        let seed = cfg.seed.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(s);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let l = Complex64::new(rng.random_range(-spread..spread), rng.random_range(-spread..spread));
        starts.push((l, v, seed));
    }
    let mut found: Vec<Eigenpair> = starts
        .into_par_iter()
        .filter_map(|(l, v, seed)| {
            let local = SolverConfig { seed, ..cfg.clone() };
            newton_eigenpair(t, l, &v, &local).ok().map(|o| o.pair)
        })
        .collect();
    found.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });
    let mut kept: Vec<Eigenpair> = Vec::new();
    for p in found {
        if kept.iter().all(|k| (k.value - p.value).norm() > 1e-8) {
            kept.push(p);
        }
    }
    Ok(kept)
}

fn check_symmetric_nonnegative(t: &ComplexTensor, n: usize, r: usize) -> Result<()> {
    let mut index = vec![0usize; r];
    let mut sorted = vec![0usize; r];
    for value in t.entries() {
        if value.im != 0.0 || value.re < 0.0 {
            return Err(NumericError::NotNonnegative);
        }
        if !value.is_zero() {
            sorted.copy_from_slice(&index);
            sorted.sort_unstable();
            let one_based: Vec<usize> = sorted.iter().map(|i| i + 1).collect();
            if t.get(&one_based) != Some(value) {
                return Err(NumericError::NotSymmetric);
            }
        }
        for slot in index.iter_mut().rev() {
            *slot += 1;
            if *slot < n {
                break;
            }
            *slot = 0;
        }
    }
    Ok(())
}

fn is_irreducible(t: &ComplexTensor, n: usize, r: usize) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    let mut index = vec![0usize; r];
    for value in t.entries() {
        if !value.is_zero() {
            let first = find(&mut parent, index[0]);
            for &i in &index[1..] {
                let root = find(&mut parent, i);
                parent[root] = first;
            }
        }
        for slot in index.iter_mut().rev() {
            *slot += 1;
            if *slot < n {
                break;
            }
            *slot = 0;
        }
    }
    let root = find(&mut parent, 0);
    (0..n).all(|v| find(&mut parent, v) == root)
}

/// Shifted symmetric higher-order power method for the spectral radius of
/// a nonnegative symmetric irreducible tensor:
/// `x ← (T x^{r−1} + α x^{[r−1]})^{[1/(r−1)]}`, normalized, until the
/// Collatz bounds `max/min (T x^{r−1})_i / x_i^{r−1}` meet within tolerance.
pub fn sshopm(t: &ComplexTensor, cfg: &SolverConfig) -> Result<Eigenpair> {
    cfg.validate()?;
    let (n, r) = square(t)?;
    check_symmetric_nonnegative(t, n, r)?;
    if !is_irreducible(t, n, r) {
        return Err(NumericError::Disconnected);
    }
    let alpha = cfg.shift.unwrap_or(1.0 + max_row_sum(t, n));
    let k = (r - 1) as i32;
    let real = |v: &[f64]| -> Vec<Complex64> { v.iter().map(|&a| Complex64::new(a, 0.0)).collect() };
    let mut x = vec![1.0; n];
    let mut bounds = (0.0, f64::INFINITY);
    for _ in 0..=cfg.max_iterations {
        let tx: Vec<f64> = apply_vector_power(t, &real(&x))?.iter().map(|z| z.re).collect();
        let ratios = tx.iter().zip(&x).map(|(a, b)| a / b.powi(k));
        let (lo, hi) = ratios.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), q| (lo.min(q), hi.max(q)));
        bounds = (lo, hi);
        if hi - lo <= cfg.tolerance * hi.abs().max(1.0) {
            let value = Complex64::new(0.5 * (lo + hi), 0.0);
            let pair = Eigenpair::new(t, value, real(&x))?;
            if pair.residual <= cfg.tolerance * hi.abs().max(1.0) {
                return Ok(pair);
            }
        }
        let y: Vec<f64> = tx
            .iter()
            .zip(&x)
            .map(|(a, b)| (a + alpha * b.powi(k)).powf(1.0 / k as f64))
            .collect();
        let m = y.iter().copied().fold(0.0, f64::max);
        x = y.iter().map(|v| v / m).collect();
    }
    Err(NumericError::NonConvergence {
        iterations: cfg.max_iterations,
        residual: bounds.1 - bounds.0,
    })
}

/// Eigenvalues of a dense real symmetric `n × n` matrix (row-major), ascending.
pub fn symmetric_matrix_eigenvalues(m: &[f64], n: usize) -> Result<Vec<f64>> {
    if m.len() != n * n {
        return Err(TensorError::LengthMismatch {
            expected: n * n,
            got: m.len(),
        }
        .into());
    }
    for i in 0..n {
        for j in 0..i {
            if (m[i * n + j] - m[j * n + i]).abs() > 1e-12 {
                return Err(NumericError::NotSymmetric);
            }
        }
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut values: Vec<f64> = SymmetricEigen::new(DMatrix::from_row_slice(n, n, m))
        .eigenvalues
        .iter()
        .copied()
        .collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::join;
    use crate::hypergraph::{complete_hypergraph, Graph, TensorKind, UniformHypergraph};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn edge(r: usize) -> UniformHypergraph {
        UniformHypergraph::new(r, r, vec![(0..r).collect()]).unwrap()
    }

    fn adjacency(h: &UniformHypergraph) -> ComplexTensor {
        h.tensor(TensorKind::Adjacency).unwrap()
    }

    #[test]
    fn newton_examples() {
        let cfg = SolverConfig::default();
        let a = adjacency(&edge(3));
        let start = [c(1.01), c(0.98), c(1.02)];
        let out = newton_eigenpair(&a, c(1.01), &start, &cfg).unwrap();
        assert!((out.pair.value - 1.0).norm() < 1e-9);
        assert!(out.iterations > 0);
        let out = newton_eigenpair(&a, c(1.0), &[c(1.0); 3], &cfg).unwrap();
        assert_eq!(out.iterations, 0);
        let k4 = adjacency(&complete_hypergraph(4, 3).unwrap());
        let out = newton_eigenpair(&k4, c(3.0), &[c(1.0); 4], &cfg).unwrap();
        assert_eq!((out.iterations, out.pair.value), (0, c(3.0)));
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let t = adjacency(&complete_hypergraph(4, 3).unwrap()).add(&adjacency(&complete_hypergraph(4, 3).unwrap())).unwrap();
        let x = vec![
            Complex64::new(0.3, 0.1),
            Complex64::new(-0.7, 0.4),
            Complex64::new(0.5, -0.2),
            Complex64::new(1.1, 0.9),
        ];
        let lambda = Complex64::new(0.4, -0.6);
        let jac = jacobian(&t, lambda, &x).unwrap();
        let h = 1e-6;
        for j in 0..=4 {
            let (mut xp, mut xm) = (x.clone(), x.clone());
            let (mut lp, mut lm) = (lambda, lambda);
            if j < 4 {
                xp[j] += h;
                xm[j] -= h;
            } else {
                lp += h;
                lm -= h;
            }
            let fp = eigen_map(&t, lp, &xp).unwrap();
            let fm = eigen_map(&t, lm, &xm).unwrap();
            for i in 0..4 {
                let fd = (fp[i] - fm[i]) / (2.0 * h);
                assert!((fd - jac[i][j]).norm() <= 1e-6 * jac[i][j].norm().max(1.0));
            }
        }
    }

    #[test]
    fn multistart_examples() {
        let cfg = SolverConfig {
            starts: 16,
            ..SolverConfig::default()
        };
        let vals: Vec<_> = multistart_eigen_search(&adjacency(&edge(3)), &cfg).unwrap().into_iter().map(|p| p.value).collect();
        assert!(vals.iter().any(|v| (v - 1.0).norm() < 1e-8));
        assert!(vals.iter().any(|v| v.norm() < 1e-8));
        let empty = UniformHypergraph::empty(3, 3).unwrap();
        let vals = multistart_eigen_search(&adjacency(&empty), &cfg).unwrap();
        assert_eq!(vals.len(), 1);
        assert!(vals[0].value.norm() < 1e-8);
        let again = multistart_eigen_search(&adjacency(&edge(3)), &cfg).unwrap();
        assert_eq!(again, multistart_eigen_search(&adjacency(&edge(3)), &cfg).unwrap());
    }

    #[test]
    fn sshopm_examples() {
        let cfg = SolverConfig::default();
        let k4 = sshopm(&adjacency(&complete_hypergraph(4, 3).unwrap()), &cfg).unwrap();
        assert!((k4.value - 3.0).norm() < 1e-6);
        let e = sshopm(&adjacency(&edge(4)), &cfg).unwrap();
        assert!((e.value - 1.0).norm() < 1e-6);
        let k6 = sshopm(&adjacency(&join(&edge(3), &edge(3)).unwrap()), &cfg).unwrap();
        assert!((k6.value - 10.0).norm() < 1e-6);
        let two = UniformHypergraph::new(3, 6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert!(matches!(sshopm(&adjacency(&two), &cfg), Err(NumericError::Disconnected)));
        let lap = edge(3).tensor(TensorKind::Laplacian).unwrap();
        assert!(matches!(sshopm(&lap, &cfg), Err(NumericError::NotNonnegative)));
    }

    #[test]
    fn sshopm_non_regular() {
        let h = UniformHypergraph::new(3, 5, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let cfg = SolverConfig::default();
        let p = sshopm(&adjacency(&h), &cfg).unwrap();
        // Loose path with two edges: ρ^3 = 2.
        assert!((p.value.re - 2f64.cbrt()).abs() < 1e-8);
    }

    #[test]
    fn matrix_eigenvalues() {
        let k2 = Graph::complete(2);
        assert_eq!(symmetric_matrix_eigenvalues(&k2.adjacency_matrix(), 2).unwrap().len(), 2);
        let v = symmetric_matrix_eigenvalues(&Graph::path(4).adjacency_matrix(), 4).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let expect = [-phi, -1.0 / phi, 1.0 / phi, phi];
        for (a, b) in v.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
        let signed = Graph::complete(2).with_signs(vec![-1]).unwrap();
        let v = symmetric_matrix_eigenvalues(&signed.adjacency_matrix(), 2).unwrap();
        assert!((v[0] + 1.0).abs() < 1e-14 && (v[1] - 1.0).abs() < 1e-14);
        assert!(matches!(
            symmetric_matrix_eigenvalues(&[0.0, 1.0, 2.0, 0.0], 2),
            Err(NumericError::NotSymmetric)
        ));
    }
}
