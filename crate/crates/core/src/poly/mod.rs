//! Dense polynomials over the integers.
//!
//! Coefficients are stored in ascending degree order and kept canonical: the
//! vector never ends in a zero, so the zero polynomial is the empty vector.
//! All multiplication routines take a [`MulCounter`] and report every
//! coefficient product they evaluate.

mod binomial;
mod text;

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::counter::MulCounter;
use crate::error::{Error, Result};

pub use binomial::{geometric_mask, BinomialProduct, Mask, Sign};
pub use text::{parse_coefficients, parse_poly, serialize_poly};

/// Degree of a polynomial, with the zero polynomial below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self {
            coeffs: vec![BigInt::one()],
        }
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c·x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Number of stored coefficients, i.e. degree + 1 (0 for the zero polynomial).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Same as [`Polynomial::is_zero`]: only the zero polynomial stores no coefficients.
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Coefficient of `x^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Coefficients zero-extended to exactly `n` entries.
    ///
    /// Panics if the polynomial has more than `n` coefficients.
    pub fn padded(&self, n: usize) -> Vec<BigInt> {
        assert!(self.len() <= n, "cannot pad length {} to {n}", self.len());
        let mut v = self.coeffs.clone();
        v.resize(n, BigInt::zero());
        v
    }

    /// Keeps the coefficients of degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    /// `c · p`. Scalar multiplication; not counted as elementary products.
    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Degrees holding a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
    }
}

impl From<Vec<BigInt>> for Polynomial {
    fn from(coeffs: Vec<BigInt>) -> Self {
        Self::new(coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        add(self, rhs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        sub(self, rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        add_shifted(&mut self.coeffs, &rhs.coeffs, 0);
        trim(&mut self.coeffs);
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        sub_shifted(&mut self.coeffs, &rhs.coeffs, 0);
        trim(&mut self.coeffs);
    }
}

pub fn add(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let mut out = p.clone();
    out += q;
    out
}

pub fn sub(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let mut out = p.clone();
    out -= q;
    out
}

/// `p · x^k`.
pub fn shift(p: &Polynomial, k: usize) -> Polynomial {
    if p.is_zero() {
        return Polynomial::zero();
    }
    let mut coeffs = vec![BigInt::zero(); k];
    coeffs.extend_from_slice(&p.coeffs);
    Polynomial { coeffs }
}

/// `p / x^k`, failing if any coefficient below degree `k` is nonzero.
pub fn unshift(p: &Polynomial, k: usize) -> Result<Polynomial> {
    if p.coeffs.iter().take(k).any(|c| !c.is_zero()) {
        return Err(Error::NonExactShift(k));
    }
    Ok(Polynomial {
        coeffs: p.coeffs.iter().skip(k).cloned().collect(),
    })
}

/// Coefficientwise (Hadamard) product `p ⊙ q`.
///
/// Only positions where both factors are nonzero are multiplied and counted.
pub fn termwise(p: &Polynomial, q: &Polynomial, counter: &mut MulCounter) -> Polynomial {
    let coeffs = p
        .coeffs
        .iter()
        .zip(&q.coeffs)
        .map(|(a, b)| {
            if a.is_zero() || b.is_zero() {
                BigInt::zero()
            } else {
                counter.tick();
                a * b
            }
        })
        .collect();
    Polynomial::new(coeffs)
}

/// Grade-school Cauchy product; performs `len(p)·len(q)` products.
pub fn schoolbook_mul(p: &Polynomial, q: &Polynomial, counter: &mut MulCounter) -> Polynomial {
    if p.is_zero() || q.is_zero() {
        return Polynomial::zero();
    }
    let mut out = vec![BigInt::zero(); p.len() + q.len() - 1];
    for (i, a) in p.coeffs.iter().enumerate() {
        for (j, b) in q.coeffs.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    counter.add((p.len() * q.len()) as u64);
    Polynomial::new(out)
}

/// `p · (1 ± x^(2^j))`, by one shift and one add/sub.
pub fn mul_binomial(p: &Polynomial, sign: Sign, j: u32) -> Polynomial {
    let mut coeffs = p.coeffs.clone();
    mul_binomial_in_place(&mut coeffs, sign, 1usize << j);
    Polynomial::new(coeffs)
}

/// Exact quotient `p / (1 ± x^(2^j))`.
pub fn div_binomial(p: &Polynomial, sign: Sign, j: u32) -> Result<Polynomial> {
    let mut coeffs = p.coeffs.clone();
    div_binomial_in_place(&mut coeffs, sign, 1usize << j)?;
    Ok(Polynomial::new(coeffs))
}

/// Gathers the coefficients at degrees `offset + i·step` into degree `i`.
pub fn compress_stride(p: &Polynomial, step: usize, offset: usize) -> Result<Polynomial> {
    check_power_of_two(step)?;
    if let Some(degree) = p.support().find(|&d| d < offset || !(d - offset).is_multiple_of(step)) {
        return Err(Error::StrideViolation { degree, step, offset });
    }
    let coeffs = p.coeffs.iter().skip(offset).step_by(step).cloned().collect();
    Ok(Polynomial::new(coeffs))
}

/// Inverse of [`compress_stride`]: moves degree `i` to degree `offset + i·step`.
pub fn expand_stride(p: &Polynomial, step: usize, offset: usize) -> Result<Polynomial> {
    check_power_of_two(step)?;
    if p.is_zero() {
        return Ok(Polynomial::zero());
    }
    let mut coeffs = vec![BigInt::zero(); offset + (p.len() - 1) * step + 1];
    for (i, c) in p.coeffs.iter().enumerate() {
        coeffs[offset + i * step] = c.clone();
    }
    Ok(Polynomial { coeffs })
}

pub(crate) fn check_power_of_two(n: usize) -> Result<()> {
    if n.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::NotPowerOfTwo(n))
    }
}

// Slice-level helpers shared by the algorithm modules, which work on
// zero-padded buffers of a fixed power-of-two length.

pub(crate) fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

/// `acc[offset + i] += src[i]`, growing `acc` as needed.
pub(crate) fn add_shifted(acc: &mut Vec<BigInt>, src: &[BigInt], offset: usize) {
    if acc.len() < offset + src.len() {
        acc.resize(offset + src.len(), BigInt::zero());
    }
    for (a, s) in acc[offset..].iter_mut().zip(src) {
        if !s.is_zero() {
            *a += s;
        }
    }
}

/// `acc[offset + i] -= src[i]`, growing `acc` as needed.
pub(crate) fn sub_shifted(acc: &mut Vec<BigInt>, src: &[BigInt], offset: usize) {
    if acc.len() < offset + src.len() {
        acc.resize(offset + src.len(), BigInt::zero());
    }
    for (a, s) in acc[offset..].iter_mut().zip(src) {
        if !s.is_zero() {
            *a -= s;
        }
    }
}

/// In place `v · (1 ± x^shift)`; `v` grows by `shift` entries.
pub(crate) fn mul_binomial_in_place(v: &mut Vec<BigInt>, sign: Sign, shift: usize) {
    let len = v.len();
    if len == 0 {
        return;
    }
    v.resize(len + shift, BigInt::zero());
    // Descending order reads each v[i] before it is overwritten as some v[i' + shift].
    for i in (0..len).rev() {
        if v[i].is_zero() {
            continue;
        }
        let (lo, hi) = v.split_at_mut(i + shift);
        match sign {
            Sign::Plus => hi[0] += &lo[i],
            Sign::Minus => hi[0] -= &lo[i],
        }
    }
}

/// In place exact division by `1 ± x^shift` (synthetic division from the low end).
pub(crate) fn div_binomial_in_place(v: &mut Vec<BigInt>, sign: Sign, shift: usize) -> Result<()> {
    trim(v);
    let len = v.len();
    if len == 0 {
        return Ok(());
    }
    let err = Error::NonExactDivision { sign, shift };
    if len <= shift {
        return Err(err);
    }
    let qlen = len - shift;
    // q_i = p_i ∓ q_{i-shift}
    for i in shift..qlen {
        let (lo, hi) = v.split_at_mut(i);
        let prev = &lo[i - shift];
        if prev.is_zero() {
            continue;
        }
        match sign {
            Sign::Plus => hi[0] -= prev,
            Sign::Minus => hi[0] += prev,
        }
    }
    // The top `shift` coefficients must be exactly ±q_{i-shift}.
    let zero = BigInt::zero();
    for i in qlen..len {
        let q = if i >= shift { &v[i - shift] } else { &zero };
        let ok = match sign {
            Sign::Plus => v[i] == *q,
            Sign::Minus => v[i] == -q,
        };
        if !ok {
            return Err(err);
        }
    }
    v.truncate(qlen);
    trim(v);
    Ok(())
}
