//! Dense hypermatrices and the general product calculus.
//!
//! A [`Hypermatrix`] of order `t` and dimensions `n_1 × … × n_t` stores its
//! entries in row-major order (last coordinate fastest). The public API uses
//! 1-based index tuples and coordinates, so entry `(i_1, …, i_t)` lives at
//! storage offset `Σ_p (i_p − 1) · Π_{q>p} n_q`.
//!
//! Two scalar backends implement [`Scalar`]: [`Complex64`] for numeric work
//! and [`BigRational`] for exact identities. Conversion between them is
//! explicit ([`Hypermatrix::to_complex`]).

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

/// Largest number of stored entries a hypermatrix may have.
pub const MAX_ENTRIES: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("dimension mismatch: contracted dimension {left} of the left operand vs {right} of the right operand")]
    DimensionMismatch { left: usize, right: usize },
    #[error("entry count {got} does not match the product of dimensions {expected}")]
    EntryCount { expected: usize, got: usize },
    #[error("zero-sized dimension at coordinate {0}")]
    ZeroDimension(usize),
    #[error("hypermatrix would hold {entries} entries, above the limit of {limit}")]
    TooLarge { entries: u128, limit: usize },
    #[error("permutation has length {got} but the hypermatrix has order {expected}")]
    PermutationLength { expected: usize, got: usize },
    #[error("{0:?} is not a permutation of 1..=n")]
    InvalidPermutation(Vec<usize>),
    #[error("coordinate {coordinate} out of range for an order-{order} hypermatrix")]
    CoordinateOutOfRange { coordinate: usize, order: usize },
    #[error("operand has order {0}; the product needs order at least 1")]
    ScalarOperand(usize),
    #[error("hypermatrix is not square (dims {0:?})")]
    NotSquare(Vec<usize>),
    #[error("hypermatrix order {0} is below the required minimum {1}")]
    OrderTooSmall(usize, usize),
    #[error("vector length {got} does not match dimension {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
}

pub type Result<T> = std::result::Result<T, TensorError>;

/// Field-like scalar usable as a hypermatrix entry.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Exact `num / den` (`den != 0`).
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(value: i64) -> Self {
        Self::from_ratio(value, 1)
    }
}

impl Scalar for Complex64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
}

impl Scalar for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

/// Dense order-`t` multi-array.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypermatrix<S> {
    dims: Vec<usize>,
    entries: Vec<S>,
}

pub type ComplexTensor = Hypermatrix<Complex64>;
pub type RationalTensor = Hypermatrix<BigRational>;

fn checked_size(dims: &[usize]) -> Result<usize> {
    let mut total: u128 = 1;
    for (p, &d) in dims.iter().enumerate() {
        if d == 0 {
            return Err(TensorError::ZeroDimension(p + 1));
        }
        total = total.saturating_mul(d as u128);
    }
    if total > MAX_ENTRIES as u128 {
        return Err(TensorError::TooLarge {
            entries: total,
            limit: MAX_ENTRIES,
        });
    }
    Ok(total as usize)
}

/// Advances a 0-based multi-index in row-major order. Returns false on wrap.
pub(crate) fn advance(index: &mut [usize], dims: &[usize]) -> bool {
    for p in (0..index.len()).rev() {
        index[p] += 1;
        if index[p] < dims[p] {
            return true;
        }
        index[p] = 0;
    }
    false
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for p in (0..dims.len().saturating_sub(1)).rev() {
        s[p] = s[p + 1] * dims[p + 1];
    }
    s
}

fn validate_permutation(sigma: &[usize], order: usize) -> Result<()> {
    if sigma.len() != order {
        return Err(TensorError::PermutationLength {
            expected: order,
            got: sigma.len(),
        });
    }
    let mut seen = vec![false; order];
    for &s in sigma {
        if s == 0 || s > order || seen[s - 1] {
            return Err(TensorError::InvalidPermutation(sigma.to_vec()));
        }
        seen[s - 1] = true;
    }
    Ok(())
}

impl<S: Scalar> Hypermatrix<S> {
    pub fn new(dims: Vec<usize>, entries: Vec<S>) -> Result<Self> {
        let size = checked_size(&dims)?;
        if size != entries.len() {
            return Err(TensorError::EntryCount {
                expected: size,
                got: entries.len(),
            });
        }
        Ok(Self { dims, entries })
    }

    pub fn zeros(dims: Vec<usize>) -> Result<Self> {
        let size = checked_size(&dims)?;
        Ok(Self {
            dims,
            entries: vec![S::zero(); size],
        })
    }

    /// Order-0 hypermatrix holding a single scalar.
    pub fn scalar(value: S) -> Self {
        Self {
            dims: Vec::new(),
            entries: vec![value],
        }
    }

    /// Order-1 hypermatrix.
    pub fn vector(values: Vec<S>) -> Result<Self> {
        Self::new(vec![values.len()], values)
    }

    /// Builds entries from a function of the 1-based index tuple.
    pub fn from_fn(dims: Vec<usize>, mut f: impl FnMut(&[usize]) -> S) -> Result<Self> {
        let size = checked_size(&dims)?;
        let mut entries = Vec::with_capacity(size);
        let mut index = vec![0usize; dims.len()];
        let mut one_based = vec![1usize; dims.len()];
        loop {
            for (o, &i) in one_based.iter_mut().zip(&index) {
                *o = i + 1;
            }
            entries.push(f(&one_based));
            if !advance(&mut index, &dims) {
                break;
            }
        }
        Ok(Self { dims, entries })
    }

    /// Square order-`order` identity-like diagonal with the given values.
    pub fn diagonal(order: usize, values: &[S]) -> Result<Self> {
        let n = values.len();
        let mut t = Self::zeros(vec![n; order])?;
        let step: usize = strides(&t.dims).iter().sum();
        for (i, v) in values.iter().enumerate() {
            t.entries[i * step] = v.clone();
        }
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [S] {
        &mut self.entries
    }

    /// Storage offset of a 1-based index tuple.
    pub fn offset(&self, index: &[usize]) -> Option<usize> {
        if index.len() != self.dims.len() {
            return None;
        }
        let mut off = 0;
        for (&i, &d) in index.iter().zip(&self.dims) {
            if i == 0 || i > d {
                return None;
            }
            off = off * d + (i - 1);
        }
        Some(off)
    }

    /// Entry at a 1-based index tuple.
    pub fn get(&self, index: &[usize]) -> Option<&S> {
        self.offset(index).map(|o| &self.entries[o])
    }

    /// Dimension `n` when every coordinate has size `n` and the order is ≥ 1.
    pub fn square_dimension(&self) -> Option<usize> {
        let first = *self.dims.first()?;
        self.dims.iter().all(|&d| d == first).then_some(first)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Hypermatrix<T> {
        Hypermatrix {
            dims: self.dims.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dims != other.dims {
            return Err(TensorError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(Self {
            dims: self.dims.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

impl RationalTensor {
    pub fn to_complex(&self) -> ComplexTensor {
        self.map(|q| {
            let re = q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN);
            Complex64::new(re, 0.0)
        })
    }
}

/// `T · S`: contracts the last coordinate of `t` with the first of `s`.
///
/// Order-0 operands are rejected; use [`scalar_multiply`] for them.
pub fn standard_product<S: Scalar>(t: &Hypermatrix<S>, s: &Hypermatrix<S>) -> Result<Hypermatrix<S>> {
    if t.order() == 0 {
        return Err(TensorError::ScalarOperand(0));
    }
    if s.order() == 0 {
        return Err(TensorError::ScalarOperand(0));
    }
    let n = *t.dims.last().expect("order >= 1");
    let m = s.dims[0];
    if n != m {
        return Err(TensorError::DimensionMismatch { left: n, right: m });
    }
    let mut dims: Vec<usize> = t.dims[..t.order() - 1].to_vec();
    dims.extend_from_slice(&s.dims[1..]);
    checked_size(&dims)?;
    let rows = t.entries.len() / n;
    let cols = s.entries.len() / n;
    let entries: Vec<S> = (0..rows * cols)
        .into_par_iter()
        .map(|idx| {
            let (a, b) = (idx / cols, idx % cols);
            let mut acc = S::zero();
            for k in 0..n {
                let lhs = &t.entries[a * n + k];
                if lhs.is_zero() {
                    continue;
                }
                acc = acc + lhs.clone() * s.entries[k * cols + b].clone();
            }
            acc
        })
        .collect();
    Ok(Hypermatrix { dims, entries })
}

/// Entry-wise `alpha · T`.
pub fn scalar_multiply<S: Scalar>(alpha: &S, t: &Hypermatrix<S>) -> Hypermatrix<S> {
    t.map(|e| alpha.clone() * e.clone())
}

/// Transpose with respect to a 1-based permutation `sigma` of `1..=t`:
/// the result `S` has dims `(n_{σ(1)}, …, n_{σ(t)})` and
/// `S[k_{σ(1)}, …, k_{σ(t)}] = T[k_1, …, k_t]`.
pub fn transpose<S: Scalar>(t: &Hypermatrix<S>, sigma: &[usize]) -> Result<Hypermatrix<S>> {
    let order = t.order();
    validate_permutation(sigma, order)?;
    let dims: Vec<usize> = sigma.iter().map(|&p| t.dims[p - 1]).collect();
    let out_strides = strides(&dims);
    let mut entries = vec![S::zero(); t.entries.len()];
    let mut index = vec![0usize; order];
    for value in &t.entries {
        let off: usize = sigma
            .iter()
            .zip(&out_strides)
            .map(|(&p, &st)| index[p - 1] * st)
            .sum();
        entries[off] = value.clone();
        advance(&mut index, &t.dims);
    }
    Ok(Hypermatrix { dims, entries })
}

/// Inverse of a 1-based permutation.
pub fn inverse_permutation(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (p, &s) in sigma.iter().enumerate() {
        inv[s - 1] = p + 1;
    }
    inv
}

/// The permutations `(σ, π)` with `T ⁱ*ʲ S = Tᵠ · Sᵖ` for orders `t` and `s`.
///
/// `σ` is the cycle `(i i+1 … t)` moving coordinate `i` to the end while
/// keeping the others in order; `π` is the cycle `(1 j j−1 … 2)` moving
/// coordinate `j` to the front. For matrices they are the transpositions
/// `(i t)` and `(1 j)`.
pub fn reduction_permutations(i: usize, t: usize, j: usize, s: usize) -> (Vec<usize>, Vec<usize>) {
    let sigma = (1..=t)
        .map(|p| match p {
            p if p < i => p,
            p if p < t => p + 1,
            _ => i,
        })
        .collect();
    let pi = (1..=s)
        .map(|p| match p {
            1 => j,
            p if p <= j => p - 1,
            p => p,
        })
        .collect();
    (sigma, pi)
}

/// `T ⁱ*ʲ S`: contracts coordinate `i` of `t` with coordinate `j` of `s`
/// (both 1-based). Result coordinates are the remaining coordinates of `t`
/// in order followed by the remaining coordinates of `s` in order.
pub fn mode_product<S: Scalar>(
    t: &Hypermatrix<S>,
    i: usize,
    s: &Hypermatrix<S>,
    j: usize,
) -> Result<Hypermatrix<S>> {
    let (to, so) = (t.order(), s.order());
    if i == 0 || i > to {
        return Err(TensorError::CoordinateOutOfRange { coordinate: i, order: to });
    }
    if j == 0 || j > so {
        return Err(TensorError::CoordinateOutOfRange { coordinate: j, order: so });
    }
    let n = t.dims[i - 1];
    if n != s.dims[j - 1] {
        return Err(TensorError::DimensionMismatch {
            left: n,
            right: s.dims[j - 1],
        });
    }
    let mut dims: Vec<usize> = Vec::with_capacity(to + so - 2);
    dims.extend(t.dims.iter().enumerate().filter(|&(p, _)| p != i - 1).map(|(_, &d)| d));
    dims.extend(s.dims.iter().enumerate().filter(|&(p, _)| p != j - 1).map(|(_, &d)| d));
    let size = checked_size(&dims)?;
    let (ts, ss) = (strides(&t.dims), strides(&s.dims));
    let mut entries = Vec::with_capacity(size);
    let mut out = vec![0usize; dims.len()];
    loop {
        // Base offsets with the contracted coordinate at 0.
        let mut t_off = 0;
        let mut q = 0;
        for p in 0..to {
            if p != i - 1 {
                t_off += out[q] * ts[p];
                q += 1;
            }
        }
        let mut s_off = 0;
        for p in 0..so {
            if p != j - 1 {
                s_off += out[q] * ss[p];
                q += 1;
            }
        }
        let mut acc = S::zero();
        for k in 0..n {
            let a = &t.entries[t_off + k * ts[i - 1]];
            if a.is_zero() {
                continue;
            }
            acc = acc + a.clone() * s.entries[s_off + k * ss[j - 1]].clone();
        }
        entries.push(acc);
        if dims.is_empty() || !advance(&mut out, &dims) {
            break;
        }
    }
    Ok(Hypermatrix { dims, entries })
}

/// `T x^{r−1}` for a square order-`r` (`r ≥ 2`) hypermatrix: entry `j` is
/// `Σ T[j, i_2, …, i_r] x_{i_2} ⋯ x_{i_r}`.
pub fn apply_vector_power<S: Scalar>(t: &Hypermatrix<S>, x: &[S]) -> Result<Vec<S>> {
    let n = t
        .square_dimension()
        .ok_or_else(|| TensorError::NotSquare(t.dims.clone()))?;
    if t.order() < 2 {
        return Err(TensorError::OrderTooSmall(t.order(), 2));
    }
    if x.len() != n {
        return Err(TensorError::LengthMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let tail = t.order() - 1;
    let block = t.entries.len() / n;
    let tail_dims = vec![n; tail];
    Ok((0..n)
        .into_par_iter()
        .map(|j| {
            let row = &t.entries[j * block..(j + 1) * block];
            let mut acc = S::zero();
            let mut index = vec![0usize; tail];
            for value in row {
                if !value.is_zero() {
                    let mut term = value.clone();
                    for &i in &index {
                        term = term * x[i].clone();
                    }
                    acc = acc + term;
                }
                advance(&mut index, &tail_dims);
            }
            acc
        })
        .collect())
}

/// Entry-wise power `x^{[k]}`.
pub fn entrywise_power<S: Scalar>(x: &[S], k: u32) -> Vec<S> {
    x.iter()
        .map(|v| {
            let mut acc = S::one();
            for _ in 0..k {
                acc = acc * v.clone();
            }
            acc
        })
        .collect()
}

/// Kronecker product of two hypermatrices of equal order: the entry at paired
/// indices `((i_1 j_1), …, (i_r j_r))` is `T[i] · S[j]`, with pair `(i, j)`
/// mapped to `(i − 1) · m + j` along each coordinate.
pub fn kronecker_tensor<S: Scalar>(t: &Hypermatrix<S>, s: &Hypermatrix<S>) -> Result<Hypermatrix<S>> {
    if t.order() != s.order() {
        return Err(TensorError::OrderMismatch {
            left: t.order(),
            right: s.order(),
        });
    }
    let dims: Vec<usize> = t.dims.iter().zip(&s.dims).map(|(a, b)| a * b).collect();
    checked_size(&dims)?;
    let out_strides = strides(&dims);
    let mut entries = vec![S::zero(); t.entries.len() * s.entries.len()];
    let mut ti = vec![0usize; t.order()];
    for a in &t.entries {
        if !a.is_zero() {
            let mut si = vec![0usize; s.order()];
            for b in &s.entries {
                let off: usize = (0..dims.len())
                    .map(|p| (ti[p] * s.dims[p] + si[p]) * out_strides[p])
                    .sum();
                entries[off] = a.clone() * b.clone();
                if !advance(&mut si, &s.dims) {
                    break;
                }
            }
        }
        if !advance(&mut ti, &t.dims) {
            break;
        }
    }
    Ok(Hypermatrix { dims, entries })
}

/// Kronecker (flattened outer) product of two vectors, `(x ⊗ z)[i·m + j] = x_i z_j`.
pub fn kronecker_vector<S: Scalar>(x: &[S], z: &[S]) -> Vec<S> {
    x.iter()
        .flat_map(|a| z.iter().map(move |b| a.clone() * b.clone()))
        .collect()
}
