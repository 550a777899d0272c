//! Recursive Karatsuba baselines and recursion-tree bookkeeping.
//!
//! Both recursions use the three-branch grouping
//!
//! ```text
//! AB = (X+1)·A0·B0 + X(X+1)·A1·B1 − X·(A1−A0)(B1−B0)
//! ```
//!
//! and differ only in how `A = A1·X + A0` is split: low/high halves with
//! `X = x^(n/2)`, or even/odd degrees with `X = x` and sub-polynomials in `x²`.
//! Every recursion bottoms out at single coefficients, so a padded length of
//! `n = 2^d` costs exactly `3^d` products.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::counter::MulCounter;
use crate::error::{Error, Result};
use crate::poly::{self, geometric_mask, Polynomial, Sign};

/// Radix-3 label of a recursion-tree node: branch digits from the root down.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathLabel {
    digits: Vec<u8>,
}

impl PathLabel {
    pub fn new(digits: Vec<u8>) -> Result<Self> {
        if let Some(&d) = digits.iter().find(|&&d| d > 2) {
            return Err(Error::InvalidDigit(d));
        }
        Ok(Self { digits })
    }

    /// The direct path of depth `m` whose digits, reversed, spell `r` in binary.
    pub fn direct_from_index(r: usize, m: u32) -> Self {
        Self {
            digits: (0..m).map(|i| ((r >> i) & 1) as u8).collect(),
        }
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn depth(&self) -> usize {
        self.digits.len()
    }

    /// A path is direct when it never takes branch 2.
    pub fn is_direct(&self) -> bool {
        !self.digits.contains(&2)
    }

    /// `r = (d_m … d_2 d_1)_2`: the first digit is the least significant bit.
    pub fn reversed_binary(&self) -> Result<usize> {
        if !self.is_direct() {
            return Err(Error::NotDirectPath(self.to_string()));
        }
        Ok(self
            .digits
            .iter()
            .enumerate()
            .fold(0, |r, (i, &d)| r | ((d as usize) << i)))
    }

    fn push(&mut self, digit: u8) {
        self.digits.push(digit);
    }

    fn pop(&mut self) {
        self.digits.pop();
    }
}

impl fmt::Display for PathLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        f.write_str(")_3")
    }
}

/// Splits `p` into its even-degree and odd-degree parts, each compressed by 2.
pub fn split_interleaved(p: &Polynomial) -> (Polynomial, Polynomial) {
    let (even, odd) = deinterleave(p.coeffs());
    (Polynomial::new(even), Polynomial::new(odd))
}

/// Karatsuba with the low/high split.
pub fn karatsuba_traditional(p: &Polynomial, q: &Polynomial, counter: &mut MulCounter) -> Polynomial {
    run_padded(p, q, counter, traditional_padded)
}

/// Karatsuba with the even/odd split.
pub fn karatsuba_interleaved(p: &Polynomial, q: &Polynomial, counter: &mut MulCounter) -> Polynomial {
    run_padded(p, q, counter, interleaved_padded)
}

/// Common padded length `2^d` of two nonzero operands; `None` if either is zero.
pub fn padded_len(p: &Polynomial, q: &Polynomial) -> Option<usize> {
    if p.is_zero() || q.is_zero() {
        None
    } else {
        Some(p.len().max(q.len()).next_power_of_two())
    }
}

pub(crate) fn run_padded(
    p: &Polynomial,
    q: &Polynomial,
    counter: &mut MulCounter,
    mul: fn(&[BigInt], &[BigInt], &mut MulCounter) -> Vec<BigInt>,
) -> Polynomial {
    match padded_len(p, q) {
        None => Polynomial::zero(),
        Some(n) => Polynomial::new(mul(&p.padded(n), &q.padded(n), counter)),
    }
}

/// Low/high Karatsuba on equal power-of-two-length slices; result has `2n-1` entries.
pub fn traditional_padded(a: &[BigInt], b: &[BigInt], counter: &mut MulCounter) -> Vec<BigInt> {
    let n = a.len();
    debug_assert!(n.is_power_of_two() && b.len() == n);
    if n == 1 {
        counter.tick();
        return vec![&a[0] * &b[0]];
    }
    let h = n / 2;
    let (a_lo, a_hi) = a.split_at(h);
    let (b_lo, b_hi) = b.split_at(h);
    let p0 = traditional_padded(a_lo, b_lo, counter);
    let p1 = traditional_padded(a_hi, b_hi, counter);
    let p2 = traditional_padded(&difference(a_hi, a_lo), &difference(b_hi, b_lo), counter);

    let mut out = vec![BigInt::zero(); 2 * n - 1];
    poly::add_shifted(&mut out, &p0, 0);
    poly::add_shifted(&mut out, &p0, h);
    poly::add_shifted(&mut out, &p1, h);
    poly::add_shifted(&mut out, &p1, 2 * h);
    poly::sub_shifted(&mut out, &p2, h);
    out
}

/// Even/odd Karatsuba on equal power-of-two-length slices; result has `2n-1` entries.
pub fn interleaved_padded(a: &[BigInt], b: &[BigInt], counter: &mut MulCounter) -> Vec<BigInt> {
    let n = a.len();
    debug_assert!(n.is_power_of_two() && b.len() == n);
    if n == 1 {
        counter.tick();
        return vec![&a[0] * &b[0]];
    }
    let (a_even, a_odd) = deinterleave(a);
    let (b_even, b_odd) = deinterleave(b);
    let p0 = interleaved_padded(&a_even, &b_even, counter);
    let p1 = interleaved_padded(&a_odd, &b_odd, counter);
    let p2 = interleaved_padded(&difference(&a_odd, &a_even), &difference(&b_odd, &b_even), counter);

    // Sub-products are polynomials in x²; X = x.
    let mut out = vec![BigInt::zero(); 2 * n - 1];
    for (t, c) in p0.iter().enumerate() {
        out[2 * t] += c;
        out[2 * t + 1] += c;
    }
    for (t, c) in p1.iter().enumerate() {
        out[2 * t + 1] += c;
        out[2 * t + 2] += c;
    }
    for (t, c) in p2.iter().enumerate() {
        out[2 * t + 1] -= c;
    }
    out
}

fn deinterleave(a: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let even = a.iter().step_by(2).cloned().collect();
    let odd = a.iter().skip(1).step_by(2).cloned().collect();
    (even, odd)
}

fn difference(hi: &[BigInt], lo: &[BigInt]) -> Vec<BigInt> {
    hi.iter().zip(lo).map(|(h, l)| h - l).collect()
}

/// Contribution of a direct leaf to the full product:
/// `(1 + x + … + x^(2^m - 1)) · a_r · b_r · x^r`.
pub fn direct_leaf_contribution(path: &PathLabel, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    let r = path.reversed_binary()?;
    let span = 1usize << path.depth();
    let ones = geometric_mask(span, 1, 0)?;
    let weight = a.coeff(r) * b.coeff(r);
    Ok(poly::shift(&ones.as_polynomial().scale(&weight), r))
}

#[derive(Clone, Debug)]
pub struct DirectLeaf {
    pub path: PathLabel,
    /// The coefficient of `A` multiplied at this leaf.
    pub a: BigInt,
    pub b: BigInt,
    pub contribution: Polynomial,
}

#[derive(Clone, Debug)]
pub struct PrimaryIndirect {
    /// Ends in the single digit 2.
    pub path: PathLabel,
    /// Level-order index, `2^(depth-1) + r` for parent index `r`.
    pub index: usize,
    pub contribution: Polynomial,
}

/// Every direct leaf and primary indirect node of one interleaved recursion.
#[derive(Clone, Debug)]
pub struct InterleavedTrace {
    pub n: usize,
    pub product: Polynomial,
    pub direct_leaves: Vec<DirectLeaf>,
    pub primary_indirect: Vec<PrimaryIndirect>,
}

/// Runs the interleaved recursion while recording, in global `x`, what each
/// direct leaf and each primary indirect subtree adds to the product.
///
/// The product is reassembled from those contributions alone.
pub fn trace_interleaved(a: &Polynomial, b: &Polynomial) -> InterleavedTrace {
    let Some(n) = padded_len(a, b) else {
        return InterleavedTrace {
            n: 0,
            product: Polynomial::zero(),
            direct_leaves: Vec::new(),
            primary_indirect: Vec::new(),
        };
    };
    let mut trace = InterleavedTrace {
        n,
        product: Polynomial::zero(),
        direct_leaves: Vec::new(),
        primary_indirect: Vec::new(),
    };
    let mut path = PathLabel::default();
    trace_node(&a.padded(n), &b.padded(n), &mut path, &Polynomial::one(), 1, &mut trace);

    let mut product = Polynomial::zero();
    for leaf in &trace.direct_leaves {
        product += &leaf.contribution;
    }
    for node in &trace.primary_indirect {
        product += &node.contribution;
    }
    trace.product = product;
    trace
}

/// `context` is the accumulated multiplier of this node, `stride` the power of
/// `x` its local variable stands for.
fn trace_node(
    a: &[BigInt],
    b: &[BigInt],
    path: &mut PathLabel,
    context: &Polynomial,
    stride: usize,
    trace: &mut InterleavedTrace,
) {
    if a.len() == 1 {
        trace.direct_leaves.push(DirectLeaf {
            path: path.clone(),
            a: a[0].clone(),
            b: b[0].clone(),
            contribution: context.scale(&(&a[0] * &b[0])),
        });
        return;
    }
    let level = stride.trailing_zeros();
    let (a_even, a_odd) = deinterleave(a);
    let (b_even, b_odd) = deinterleave(b);

    let plus = poly::mul_binomial(context, Sign::Plus, level);
    path.push(0);
    trace_node(&a_even, &b_even, path, &plus, stride * 2, trace);
    path.pop();

    path.push(1);
    trace_node(&a_odd, &b_odd, path, &poly::shift(&plus, stride), stride * 2, trace);
    path.pop();

    // Branch 2 from a direct node: a primary indirect subtree, evaluated whole.
    let mut scratch = MulCounter::new();
    let local = interleaved_padded(&difference(&a_odd, &a_even), &difference(&b_odd, &b_even), &mut scratch);
    let global = poly::expand_stride(&Polynomial::new(local), stride * 2, 0).expect("stride is a power of two");
    let outer = -poly::shift(context, stride);
    let index = (1usize << path.depth()) + path.reversed_binary().expect("tracer only walks direct nodes");
    path.push(2);
    trace.primary_indirect.push(PrimaryIndirect {
        path: path.clone(),
        index,
        contribution: poly::schoolbook_mul(&outer, &global, &mut scratch),
    });
    path.pop();
}
