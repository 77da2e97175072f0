//! Exact integer polynomials, factored characteristic polynomials, complex
//! root finding and reciprocal-spectrum checks.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("root finder did not converge for a degree-{degree} polynomial")]
    NonConvergence { degree: usize },
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("expanded degree {0} exceeds the expansion limit")]
    ExpansionTooLarge(BigUint),
    #[error("factored polynomial text, line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, PolyError>;

/// Integer polynomial in `λ`, coefficients in ascending degree with trailing
/// zeros stripped. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `c · λ^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Largest `k` with `λ^k | p` (0 for the zero polynomial).
    pub fn lambda_power(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Splits `p = λ^k · q` with `q(0) ≠ 0`.
    pub fn split_lambda(&self) -> (usize, IntPolynomial) {
        let k = self.lambda_power();
        (k, IntPolynomial::new(self.coeffs[k.min(self.coeffs.len())..].to_vec()))
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn canonical(&self) -> IntPolynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_some_and(|l| l.is_negative()) {
            g = -g;
        }
        IntPolynomial::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    pub fn derivative(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new(
            (0..len)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_default();
                    let b = other.coeffs.get(i).cloned().unwrap_or_default();
                    a + b
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn multiply(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn power(&self, mut e: u64) -> IntPolynomial {
        let mut base = self.clone();
        let mut acc = IntPolynomial::constant(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.multiply(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base);
            }
        }
        acc
    }

    /// `λ^{deg p} · p(1/λ)`, canonicalized. Roots are the reciprocals of the
    /// roots of `p`.
    pub fn reciprocal_transform(&self) -> Result<IntPolynomial> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.coeffs[0].is_zero() {
            return Err(PolyError::ZeroConstantTerm);
        }
        let mut c = self.coeffs.clone();
        c.reverse();
        Ok(IntPolynomial::new(c).canonical())
    }

    /// Coefficient sequence equals its reverse.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Roots closed under inversion with multiplicity (palindromic or
    /// anti-palindromic).
    pub fn is_self_reciprocal(&self) -> bool {
        self.reciprocal_transform().is_ok_and(|q| q == self.canonical())
    }

    /// Exact value at a rational point.
    pub fn evaluate_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Value at a complex point by compensated (double-double) Horner.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let mut re = Dd::ZERO;
        let mut im = Dd::ZERO;
        for c in self.coeffs.iter().rev() {
            // (re + i·im)(z.re + i·z.im) + c
            let new_re = re.mul_f64(z.re).add(im.mul_f64(z.im).neg()).add(Dd::from_bigint(c));
            let new_im = re.mul_f64(z.im).add(im.mul_f64(z.re));
            re = new_re;
            im = new_im;
        }
        Complex64::new(re.value(), im.value())
    }

    /// Coefficients as complex floating-point numbers.
    pub fn to_complex_coeffs(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
            .collect()
    }

    /// Exact division over `ℚ` returning the canonical integer quotient.
    /// Panics (debug) if `divisor` does not divide `self`.
    fn exact_quotient(&self, divisor: &IntPolynomial) -> IntPolynomial {
        let (q, r) = rational_div_rem(self, divisor);
        debug_assert!(r.iter().all(Zero::is_zero), "inexact polynomial division");
        from_rationals(&q).canonical()
    }

    /// Canonical greatest common divisor.
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut a = self.canonical();
        let mut b = other.canonical();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = pseudo_remainder(&a, &b).canonical();
            a = b;
            b = r;
        }
        a.canonical()
    }

    /// Square-free decomposition `p = c · Π f_i^{m_i}` with pairwise coprime,
    /// square-free, canonical `f_i` of positive degree.
    pub fn square_free_decomposition(&self) -> Vec<(IntPolynomial, usize)> {
        let p = self.canonical();
        if p.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut c = p.gcd(&p.derivative());
        let mut w = p.exact_quotient(&c);
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            let z = w.exact_quotient(&y);
            if z.degree().unwrap_or(0) > 0 {
                out.push((z, i));
            }
            c = c.exact_quotient(&y);
            w = y;
            i += 1;
        }
        out
    }

    /// All complex roots with multiplicity. Repeated roots are separated
    /// exactly (square-free decomposition) before the numeric stage, so each
    /// is found to full precision. Every root satisfies
    /// `|p(z)| ≤ tol · Σ |a_i| |z|^i`.
    pub fn complex_roots(&self, tol: f64) -> Result<Vec<Complex64>> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let (k, rest) = self.split_lambda();
        let mut roots = vec![Complex64::new(0.0, 0.0); k];
        for (f, mult) in rest.square_free_decomposition() {
            let found = polynomial_roots(&f.to_complex_coeffs(), tol)?;
            for z in found {
                if f.evaluate(z).norm() > tol * f.magnitude_at(z) {
                    return Err(PolyError::NonConvergence {
                        degree: f.degree().unwrap_or(0),
                    });
                }
                roots.extend(std::iter::repeat_n(z, mult));
            }
        }
        sort_complex(&mut roots);
        Ok(roots)
    }

    /// `Σ |a_i| |z|^i`, the natural scale for evaluation error at `z`.
    pub fn magnitude_at(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.abs().to_f64().unwrap_or(f64::INFINITY))
    }

    /// All rational roots (without multiplicity), by the rational root test
    /// on the λ-free part plus `0` when `λ | p`.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        if self.is_zero() {
            return Vec::new();
        }
        let (k, rest) = self.split_lambda();
        let mut out = Vec::new();
        if k > 0 {
            out.push(BigRational::zero());
        }
        if rest.degree().unwrap_or(0) == 0 {
            return out;
        }
        let a0 = rest.coeffs[0].magnitude().clone();
        let an = rest.leading().expect("nonzero").magnitude().clone();
        let (ps, qs) = (divisors(&a0), divisors(&an));
        let mut seen = std::collections::BTreeSet::new();
        for p in &ps {
            for q in &qs {
                for sign in [Sign::Plus, Sign::Minus] {
                    let cand = BigRational::new(BigInt::from_biguint(sign, p.clone()), BigInt::from(q.clone()));
                    if seen.insert(cand.clone()) && rest.evaluate_rational(&cand).is_zero() {
                        out.push(cand);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// `[c0,c1,…,ck]`.
    pub fn to_bracket(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    pub fn from_bracket(text: &str) -> std::result::Result<Self, String> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| format!("expected [c0,c1,…], got {text:?}"))?;
        if inner.trim().is_empty() {
            return Ok(IntPolynomial::zero());
        }
        inner
            .split(',')
            .map(|c| c.trim().parse::<BigInt>().map_err(|e| format!("bad coefficient {c:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(IntPolynomial::new)
    }
}

impl serde::Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_bracket())
    }
}

/// Serializes an arbitrary-precision integer as a decimal string.
pub fn serialize_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl Ord for IntPolynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for IntPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{i}")?,
            }
        }
        Ok(())
    }
}

fn from_rationals(q: &[BigRational]) -> IntPolynomial {
    let lcm = q.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    IntPolynomial::new(q.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect())
}

fn rational_div_rem(a: &IntPolynomial, b: &IntPolynomial) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem: Vec<BigRational> = a.coeffs.iter().cloned().map(BigRational::from_integer).collect();
    let db = b.degree().expect("nonzero divisor");
    let lead = BigRational::from_integer(b.leading().expect("nonzero").clone());
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.coeffs.iter().enumerate() {
                rem[k + j] -= &c * BigRational::from_integer(bj.clone());
            }
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (quot, rem)
}

fn pseudo_remainder(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let (_, r) = rational_div_rem(a, b);
    from_rationals(&r)
}

fn divisors(n: &BigUint) -> Vec<BigUint> {
    if n.is_zero() {
        return Vec::new();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigUint::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let other = n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1u32;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Sorts by real part, then imaginary part.
pub fn sort_complex(values: &mut [Complex64]) {
    values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

// Double-double arithmetic for compensated Horner.
#[derive(Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    fn from_bigint(c: &BigInt) -> Dd {
        let hi = c.to_f64().unwrap_or(f64::NAN);
        let lo = if hi.is_finite() {
            num_traits::FromPrimitive::from_f64(hi)
                .map(|h: BigInt| (c - h).to_f64().unwrap_or(0.0))
                .unwrap_or(0.0)
        } else {
            0.0
        };
        Dd { hi, lo }
    }

    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let bb = s - a;
        (s, (a - (s - bb)) + (b - bb))
    }

    fn add(self, o: Dd) -> Dd {
        let (s, e) = Self::two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = Self::two_sum(s, e);
        Dd { hi, lo }
    }

    fn mul_f64(self, c: f64) -> Dd {
        let p = self.hi * c;
        let e = self.hi.mul_add(c, -p) + self.lo * c;
        let (hi, lo) = Self::two_sum(p, e);
        Dd { hi, lo }
    }

    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All roots of a complex-coefficient polynomial (ascending coefficients) by
/// Aberth–Ehrlich simultaneous iteration from a fixed initial circle,
/// followed by Newton polishing. Exact zero roots are split off first.
pub fn polynomial_roots(coeffs: &[Complex64], tol: f64) -> Result<Vec<Complex64>> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    if c.is_empty() {
        return Err(PolyError::ZeroPolynomial);
    }
    let zeros = c.iter().take_while(|x| x.norm() == 0.0).count();
    let c = &c[zeros..];
    let degree = c.len() - 1;
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    if degree == 0 {
        return Ok(roots);
    }
    let lead = c[degree];
    let monic: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    if degree == 1 {
        roots.push(-monic[0]);
        return Ok(roots);
    }
    let radius = monic[0].norm().powf(1.0 / degree as f64).max(f64::MIN_POSITIVE);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / degree as f64 + 0.7))
        .collect();
    let mut converged = false;
    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for k in 0..degree {
            let (p, dp) = horner_with_derivative(&monic, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..degree).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if max_step <= 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged {
        // Accept when the backward error is already within tolerance.
        let ok = z.iter().all(|&zk| {
            let scale: f64 = monic.iter().rev().fold(0.0, |acc, a| acc * zk.norm() + a.norm());
            horner_with_derivative(&monic, zk).0.norm() <= tol * scale
        });
        if !ok {
            return Err(PolyError::NonConvergence { degree });
        }
    }
    for zk in &mut z {
        for _ in 0..3 {
            let (p, dp) = horner_with_derivative(&monic, *zk);
            let next = *zk - p / dp;
            if !next.is_finite() || horner_with_derivative(&monic, next).0.norm() >= p.norm() {
                break;
            }
            *zk = next;
        }
    }
    roots.extend(z);
    Ok(roots)
}

/// `λ^η · Π f^e` with canonical, λ-free factors of positive degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactoredPolynomial {
    lambda_exponent: BigUint,
    factors: BTreeMap<IntPolynomial, BigUint>,
}

impl FactoredPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn lambda_exponent(&self) -> &BigUint {
        &self.lambda_exponent
    }

    pub fn factors(&self) -> &BTreeMap<IntPolynomial, BigUint> {
        &self.factors
    }

    pub fn exponent_of(&self, p: &IntPolynomial) -> BigUint {
        self.factors.get(&p.canonical()).cloned().unwrap_or_default()
    }

    pub fn add_lambda(&mut self, e: &BigUint) {
        self.lambda_exponent += e;
    }

    /// Multiplies by `p^e`. The λ-power of `p` goes to the λ exponent; the
    /// rest is canonicalized (content and sign are dropped).
    pub fn multiply_factor(&mut self, p: &IntPolynomial, e: &BigUint) {
        if e.is_zero() || p.is_zero() {
            return;
        }
        let (k, rest) = p.split_lambda();
        self.lambda_exponent += e * BigUint::from(k);
        let rest = rest.canonical();
        if rest.degree().unwrap_or(0) > 0 {
            *self.factors.entry(rest).or_default() += e;
        }
    }

    pub fn multiply_lambda_power(&self, k: &BigUint) -> FactoredPolynomial {
        let mut out = self.clone();
        out.lambda_exponent += k;
        out
    }

    pub fn total_degree(&self) -> BigUint {
        self.factors.iter().fold(self.lambda_exponent.clone(), |acc, (p, e)| {
            acc + e * BigUint::from(p.degree().unwrap_or(0))
        })
    }

    /// Expands into a single polynomial; refused above `max_degree`.
    pub fn expand(&self, max_degree: usize) -> Result<IntPolynomial> {
        let total = self.total_degree();
        if total > BigUint::from(max_degree) {
            return Err(PolyError::ExpansionTooLarge(total));
        }
        let mut acc = IntPolynomial::monomial(1, self.lambda_exponent.to_usize().unwrap_or(0));
        for (p, e) in &self.factors {
            acc = acc.multiply(&p.power(e.to_u64().unwrap_or(0)));
        }
        Ok(acc)
    }

    /// The polynomial divided by its λ-power, expanded (bounded by `max_degree`).
    pub fn nonzero_part(&self, max_degree: usize) -> Result<IntPolynomial> {
        FactoredPolynomial {
            lambda_exponent: BigUint::zero(),
            factors: self.factors.clone(),
        }
        .expand(max_degree)
    }

    /// Text form: optional `#` comment lines, then `lambda ^ η`, then one
    /// `[c0,…,ck] ^ e` line per factor.
    pub fn to_text(&self) -> String {
        let mut s = format!("lambda ^ {}\n", self.lambda_exponent);
        for (p, e) in &self.factors {
            s.push_str(&format!("{} ^ {}\n", p.to_bracket(), e));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut out = FactoredPolynomial::new();
        let mut saw_lambda = false;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |message: String| PolyError::Parse { line: i + 1, message };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (lhs, rhs) = line
                .rsplit_once('^')
                .ok_or_else(|| err(format!("missing '^' in {line:?}")))?;
            let e: BigUint = rhs
                .trim()
                .parse()
                .map_err(|e| err(format!("bad exponent {:?}: {e}", rhs.trim())))?;
            if !saw_lambda {
                if lhs.trim() != "lambda" {
                    return Err(err("first line must be 'lambda ^ η'".into()));
                }
                out.lambda_exponent = e;
                saw_lambda = true;
                continue;
            }
            let p = IntPolynomial::from_bracket(lhs).map_err(err)?;
            if p.degree().unwrap_or(0) == 0 || !p.is_canonical() || p.lambda_power() > 0 {
                return Err(err(format!("factor {} is not canonical and λ-free", p.to_bracket())));
            }
            if out.factors.insert(p, e).is_some() {
                return Err(err("repeated factor".into()));
            }
        }
        if !saw_lambda {
            return Err(PolyError::Parse {
                line: 0,
                message: "missing 'lambda ^ η' line".into(),
            });
        }
        Ok(out)
    }

    /// Factors whose root multiset is closed under inversion.
    pub fn self_reciprocal_factors(&self) -> Vec<IntPolynomial> {
        self.factors.keys().filter(|p| p.is_self_reciprocal()).cloned().collect()
    }
}

impl fmt::Display for FactoredPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "λ^{}", self.lambda_exponent)?;
        for (p, e) in &self.factors {
            write!(f, " ({p})^{e}")?;
        }
        Ok(())
    }
}

/// Distinct complex values with arbitrary-precision multiplicities.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpectrumMultiset {
    entries: Vec<(Complex64, BigUint)>,
}

/// Values closer than this are the same spectral point.
pub const MERGE_TOL: f64 = 1e-10;

impl SpectrumMultiset {
    pub fn entries(&self) -> &[(Complex64, BigUint)] {
        &self.entries
    }

    pub fn insert(&mut self, value: Complex64, multiplicity: BigUint) {
        if multiplicity.is_zero() {
            return;
        }
        match self.entries.iter_mut().find(|(v, _)| (*v - value).norm() <= MERGE_TOL) {
            Some((_, m)) => *m += multiplicity,
            None => self.entries.push((value, multiplicity)),
        }
    }

    fn sort(&mut self) {
        self.entries
            .sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    }

    /// Roots of a factored polynomial with multiplicities.
    pub fn from_factored(fp: &FactoredPolynomial, tol: f64) -> Result<Self> {
        let mut s = SpectrumMultiset::default();
        s.insert(Complex64::new(0.0, 0.0), fp.lambda_exponent.clone());
        for (p, e) in &fp.factors {
            for z in p.complex_roots(tol)? {
                s.insert(z, e.clone());
            }
        }
        s.sort();
        Ok(s)
    }

    pub fn total_multiplicity(&self) -> BigUint {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn values(&self) -> Vec<Complex64> {
        self.entries.iter().map(|(v, _)| *v).collect()
    }

    pub fn multiplicity_of(&self, value: Complex64, tol: f64) -> BigUint {
        self.entries
            .iter()
            .filter(|(v, _)| (*v - value).norm() <= tol)
            .map(|(_, m)| m)
            .sum()
    }

    pub fn without_zero(&self) -> SpectrumMultiset {
        SpectrumMultiset {
            entries: self
                .entries
                .iter()
                .filter(|(v, _)| v.norm() > MERGE_TOL)
                .cloned()
                .collect(),
        }
    }
}

/// Tolerance for `|μ μ' − 1|` when pairing reciprocal roots.
pub const RECIPROCAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct ReciprocalProperty {
    /// Every nonzero root has a reciprocal root.
    pub r: bool,
    /// Reciprocal roots also share multiplicities.
    pub sr: bool,
    /// Nonzero part closed under inversion. Zero is always excluded for
    /// hypergraphs, so this coincides with `r`.
    pub weak_r: bool,
    /// Decided by comparing factors structurally, with no floating point.
    pub decided_structurally: bool,
    /// Largest inverse-closed sub-multiset of the nonzero roots with matched
    /// multiplicities.
    pub maximal_subset: SpectrumMultiset,
}

/// Decides the reciprocal properties of the nonzero roots of `fp`.
pub fn reciprocal_property(fp: &FactoredPolynomial) -> Result<ReciprocalProperty> {
    // Structural pass: every factor's reciprocal transform is itself a factor.
    let mut structural_r = true;
    let mut structural_sr = true;
    for (p, e) in &fp.factors {
        let q = p.reciprocal_transform()?;
        match fp.factors.get(&q) {
            Some(e2) => structural_sr &= e == e2,
            None => {
                structural_r = false;
                structural_sr = false;
            }
        }
    }
    let spectrum = SpectrumMultiset::from_factored(fp, 1e-10)?.without_zero();
    let entries = spectrum.entries();
    let partner = |v: Complex64| {
        entries
            .iter()
            .position(|(w, _)| (v * w - Complex64::new(1.0, 0.0)).norm() <= RECIPROCAL_TOL)
    };
    let mut r = true;
    let mut sr = true;
    let mut maximal = SpectrumMultiset::default();
    for (v, m) in entries {
        match partner(*v) {
            Some(j) => {
                let m2 = &entries[j].1;
                sr &= m == m2;
                maximal.insert(*v, m.min(m2).clone());
            }
            None => {
                r = false;
                sr = false;
            }
        }
    }
    maximal.sort();
    let decided_structurally = structural_r;
    if structural_r {
        debug_assert!(r);
    }
    Ok(ReciprocalProperty {
        r,
        sr: sr || structural_sr,
        weak_r: r,
        decided_structurally,
        maximal_subset: maximal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn arithmetic() {
        assert_eq!(p(&[-1, 1]).multiply(&p(&[1, 1])), p(&[-1, 0, 1]));
        assert_eq!(p(&[-1, 0, 0, 1]).power(2), p(&[1, 0, 0, -2, 0, 0, 1]));
        let v = p(&[1, 0, 0, -3, 0, 0, 1]).evaluate(Complex64::new(1.0, 0.0));
        assert_eq!(v, Complex64::new(-1.0, 0.0));
        assert_eq!(p(&[0, 0, 1, 0]).degree(), Some(2));
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, 0, -3, 0, 0, 1]).to_string(), "λ^6 - 3λ^3 + 1");
        assert_eq!(p(&[0, -1]).to_string(), "-λ");
        assert_eq!(p(&[-2, 0, 0, 1]).to_string(), "λ^3 - 2");
    }

    #[test]
    fn gcd_and_square_free() {
        let a = p(&[-1, 1]).multiply(&p(&[1, 1]).power(3));
        let sf = a.square_free_decomposition();
        assert_eq!(sf, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 3)]);
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[2, 2])), p(&[1, 1]));
        let b = p(&[-2, 0, 0, 1]).power(2).multiply(&p(&[-1, 1]));
        assert_eq!(b.square_free_decomposition(), vec![(p(&[-1, 1]), 1), (p(&[-2, 0, 0, 1]), 2)]);
    }

    #[test]
    fn roots_of_small_polynomials() {
        let r = p(&[-1, 0, 1]).complex_roots(1e-10).unwrap();
        assert!((r[0] + 1.0).norm() < 1e-14 && (r[1] - 1.0).norm() < 1e-14);
        let cubic = p(&[-1, 0, -1, 1]);
        let r = cubic.complex_roots(1e-10).unwrap();
        assert_eq!(r.len(), 3);
        let real: Vec<_> = r.iter().filter(|z| z.im.abs() < 1e-12).collect();
        assert_eq!(real.len(), 1);
        assert!((real[0].re - 1.465_571_231_876_768).abs() < 1e-12);
        for z in &r {
            assert!(cubic.evaluate(*z).norm() <= 1e-10);
        }
        // λ^6 − 3λ^3 + 1: cubes are (3 ± √5)/2.
        let sextic = p(&[1, 0, 0, -3, 0, 0, 1]);
        let roots = sextic.complex_roots(1e-10).unwrap();
        let targets = [(3.0 + 5f64.sqrt()) / 2.0, (3.0 - 5f64.sqrt()) / 2.0];
        for z in roots {
            let c = z.powu(3);
            assert!(targets.iter().any(|t| (c - t).norm() < 1e-12));
        }
    }

    #[test]
    fn repeated_roots_are_exact() {
        let q = p(&[-1, 1]).multiply(&p(&[1, 1]).power(3));
        let r = q.complex_roots(1e-10).unwrap();
        assert_eq!(r.len(), 4);
        assert!(r[..3].iter().all(|z| (z + 1.0).norm() < 1e-14));
        let z = p(&[0, 0, 1, 1]).complex_roots(1e-10).unwrap();
        assert_eq!(z.iter().filter(|v| v.norm() == 0.0).count(), 2);
    }

    #[test]
    fn palindromes_and_reciprocals() {
        assert!(p(&[1, 3, 1]).is_palindromic());
        assert!(!p(&[-2, 0, 0, 1]).is_palindromic());
        assert!(p(&[1, 0, 0, -3, 0, 0, 1]).is_palindromic());
        assert_eq!(p(&[-2, 0, 0, 1]).reciprocal_transform().unwrap(), p(&[-1, 0, 0, 2]));
        assert_eq!(p(&[-1, 0, 0, 0, 1]).reciprocal_transform().unwrap(), p(&[-1, 0, 0, 0, 1]));
        let q = p(&[3, -1, 4, 7]);
        assert_eq!(q.reciprocal_transform().unwrap().reciprocal_transform().unwrap(), q);
        assert_eq!(p(&[0, 1]).reciprocal_transform(), Err(PolyError::ZeroConstantTerm));
        assert!(p(&[-1, 0, 0, 1]).is_self_reciprocal());
        assert!(!p(&[-2, 0, 0, 1]).is_self_reciprocal());
    }

    #[test]
    fn rational_roots() {
        assert!(p(&[-2, 0, 0, 1]).rational_roots().is_empty());
        let r = p(&[-2, -1, 1]).rational_roots();
        assert_eq!(r, vec![BigRational::from_integer((-1).into()), BigRational::from_integer(2.into())]);
        assert!(p(&[-1, 0, -1, 1]).rational_roots().is_empty());
        let r = p(&[0, -1, 2]).rational_roots();
        assert_eq!(r, vec![BigRational::zero(), BigRational::new(1.into(), 2.into())]);
    }

    fn fp(lambda: u64, factors: &[(&[i64], u64)]) -> FactoredPolynomial {
        let mut f = FactoredPolynomial::new();
        f.add_lambda(&BigUint::from(lambda));
        for (c, e) in factors {
            f.multiply_factor(&p(c), &BigUint::from(*e));
        }
        f
    }

    #[test]
    fn factored_text_round_trip() {
        let f = fp(5, &[(&[-1, 0, 0, 1], 27), (&[1, 0, 0, -3, 0, 0, 1], 9)]);
        let text = f.to_text();
        assert_eq!(text, "lambda ^ 5\n[-1,0,0,1] ^ 27\n[1,0,0,-3,0,0,1] ^ 9\n");
        assert_eq!(FactoredPolynomial::from_text(&format!("# header\n{text}")).unwrap(), f);
        assert!(FactoredPolynomial::from_text("[1,1] ^ 2\n").is_err());
        assert!(FactoredPolynomial::from_text("lambda ^ 1\n[0,1] ^ 2\n").is_err());
        assert!(FactoredPolynomial::from_text("lambda ^ x\n").is_err());
    }

    #[test]
    fn multiply_factor_splits_lambda() {
        let f = fp(0, &[(&[0, 0, -2, 0, 0, 1], 3)]);
        assert_eq!(f.lambda_exponent(), &BigUint::from(6u32));
        assert_eq!(f.exponent_of(&p(&[-2, 0, 0, 1])), BigUint::from(3u32));
        assert_eq!(f.total_degree(), BigUint::from(15u32));
        let e = f.expand(100).unwrap();
        assert_eq!(e.lambda_power(), 6);
        assert_eq!(e, p(&[0, 0, -2, 0, 0, 1]).power(3));
    }

    #[test]
    fn reciprocal_roots_of_unity() {
        let f = fp(4, &[(&[-1, 0, 0, 1], 5)]);
        let rp = reciprocal_property(&f).unwrap();
        assert!(rp.r && rp.sr && rp.weak_r && rp.decided_structurally);
        assert_eq!(rp.maximal_subset.total_multiplicity(), BigUint::from(15u32));
    }

    #[test]
    fn reciprocal_path_fails() {
        let f = fp(259, &[(&[-1, 0, 0, 1], 27), (&[-2, 0, 0, 1], 18), (&[1, 0, 0, -3, 0, 0, 1], 9)]);
        let rp = reciprocal_property(&f).unwrap();
        assert!(!rp.weak_r && !rp.r && !rp.sr);
        assert_eq!(rp.maximal_subset.total_multiplicity(), BigUint::from(27u32 * 3 + 9 * 6));
    }

    #[test]
    fn mutually_reciprocal_factors() {
        let f = fp(0, &[(&[-2, 0, 0, 1], 5), (&[-1, 0, 0, 2], 5)]);
        let rp = reciprocal_property(&f).unwrap();
        assert!(rp.r && rp.sr && rp.decided_structurally);
        assert_eq!(rp.maximal_subset.entries().len(), 6);
        assert_eq!(rp.maximal_subset.total_multiplicity(), BigUint::from(30u32));
        let g = fp(0, &[(&[-2, 0, 0, 1], 5), (&[-1, 0, 0, 2], 3)]);
        let rp = reciprocal_property(&g).unwrap();
        assert!(rp.r && !rp.sr);
        assert_eq!(rp.maximal_subset.total_multiplicity(), BigUint::from(18u32));
    }
}
