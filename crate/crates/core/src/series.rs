//! Power-series products through the interleaved scheme.
//!
//! The even/odd split never looks at the top of an operand, so both the
//! partial and the flat formulas carry over to infinite series once the
//! `(1 - x^n)` truncating numerators are dropped. Series are handled as
//! prefixes: computing modulo `x^N` needs exactly the first `N` input
//! coefficients, and summand `m` (partial) or `k` (flat) starts at that
//! degree, so only indices below `N` are ever summed.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::counter::MulCounter;
use crate::error::{Error, Result};
use crate::poly::{self, Sign};
use crate::seqs::sigma;

/// The first `order` coefficients of a power series.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SeriesPrefix {
    coeffs: Vec<BigInt>,
}

impl SeriesPrefix {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![BigInt::zero(); order])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    /// The first `order` coefficients; fails if fewer are known.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        self.require(order)?;
        Ok(Self::new(self.coeffs[..order].to_vec()))
    }

    pub(crate) fn require(&self, needed: usize) -> Result<()> {
        if self.coeffs.len() < needed {
            Err(Error::PrefixTooShort {
                needed,
                available: self.coeffs.len(),
            })
        } else {
            Ok(())
        }
    }
}

/// `f ∗ g mod x^order` by the partially flattened scheme.
pub fn convolve_series_partial(
    f: &SeriesPrefix,
    g: &SeriesPrefix,
    order: usize,
    counter: &mut MulCounter,
) -> Result<SeriesPrefix> {
    f.require(order)?;
    g.require(order)?;
    Ok(SeriesPrefix::new(partial_rec(&f.coeffs, &g.coeffs, order, counter)))
}

/// Summand `m ≥ 1` of the partial series formula modulo `x^order`, leading minus included.
pub fn series_partial_summand(
    f: &SeriesPrefix,
    g: &SeriesPrefix,
    order: usize,
    m: usize,
    counter: &mut MulCounter,
) -> Result<SeriesPrefix> {
    f.require(order)?;
    g.require(order)?;
    let mut out = vec![BigInt::zero(); order];
    if m > 0 && m < order {
        sub_partial_summand(&mut out, &f.coeffs, &g.coeffs, order, m, counter);
    }
    Ok(SeriesPrefix::new(out))
}

fn partial_rec(f: &[BigInt], g: &[BigInt], order: usize, counter: &mut MulCounter) -> Vec<BigInt> {
    // (f ⊙ g) / (1 - x): running sums of the termwise products.
    let mut out = Vec::with_capacity(order);
    let mut running = BigInt::zero();
    for (x, y) in f.iter().zip(g).take(order) {
        counter.tick();
        running += x * y;
        out.push(running.clone());
    }
    for m in 1..order {
        sub_partial_summand(&mut out, f, g, order, m, counter);
    }
    out
}

/// `out -= (1 - x^h)/((1 - x) x^m) · (M ⊙ (1 - x^h) f) ∗ (M ⊙ (1 - x^h) g)`,
/// `h = 2^⌊log₂ m⌋`, `M` keeping degrees `m + i·2h`.
fn sub_partial_summand(
    out: &mut [BigInt],
    f: &[BigInt],
    g: &[BigInt],
    order: usize,
    m: usize,
    counter: &mut MulCounter,
) {
    let half = 1usize << m.ilog2();
    let step = 2 * half;
    let len = (order - m).div_ceil(step);
    let pick = |s: &[BigInt]| -> Vec<BigInt> {
        (0..len)
            .map(|i| {
                let at = m + i * step;
                &s[at] - &s[at - half]
            })
            .collect()
    };
    let r = partial_rec(&pick(f), &pick(g), len, counter);
    for (i, c) in r.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let base = m + i * step;
        for slot in out.iter_mut().take(order).skip(base).take(half) {
            *slot -= c;
        }
    }
}

/// `a ∗ b mod x^order` by the fully flattened scheme, one summand per `k < order`.
pub fn convolve_series_flat(
    a: &SeriesPrefix,
    b: &SeriesPrefix,
    order: usize,
    counter: &mut MulCounter,
) -> Result<SeriesPrefix> {
    a.require(order)?;
    b.require(order)?;
    let mut out = vec![BigInt::zero(); order];
    for k in 0..order {
        let term = flat_summand(&a.coeffs, &b.coeffs, order, k, counter);
        poly::add_shifted(&mut out, &term, 0);
    }
    Ok(SeriesPrefix::new(out))
}

/// Summand `k` of the flat series formula modulo `x^order`.
pub fn series_flat_summand(
    a: &SeriesPrefix,
    b: &SeriesPrefix,
    order: usize,
    k: usize,
    counter: &mut MulCounter,
) -> Result<SeriesPrefix> {
    a.require(order)?;
    b.require(order)?;
    if k >= order {
        return Ok(SeriesPrefix::zero(order));
    }
    Ok(SeriesPrefix::new(flat_summand(&a.coeffs, &b.coeffs, order, k, counter)))
}

/// `f_k (σ_k f_k x^k ⊙ ḟ_k a ⊙ ḟ_k b) mod x^order`, with `f_k` the infinite
/// product of `(1 + x^(2^j))` over clear bits of `k`. Factors with
/// `2^j ≥ order` are `1` modulo `x^order`.
fn flat_summand(a: &[BigInt], b: &[BigInt], order: usize, k: usize, counter: &mut MulCounter) -> Vec<BigInt> {
    let levels = order.next_power_of_two().ilog2();
    let minus = |s: &[BigInt]| -> Vec<BigInt> {
        let mut v = s[..order].to_vec();
        for j in (0..levels).filter(|j| k >> j & 1 == 1) {
            poly::mul_binomial_in_place(&mut v, Sign::Minus, 1 << j);
            v.truncate(order);
        }
        v
    };
    let fa = minus(a);
    let fb = minus(b);

    let mut mask = vec![BigInt::from(1)];
    let plus_levels: Vec<u32> = (0..levels).filter(|j| k >> j & 1 == 0).collect();
    for &j in &plus_levels {
        poly::mul_binomial_in_place(&mut mask, Sign::Plus, 1 << j);
        mask.truncate(order);
    }

    let mut kept = vec![BigInt::zero(); order];
    for (i, bit) in mask.iter().enumerate() {
        let pos = k + i;
        if pos >= order {
            break;
        }
        if !bit.is_zero() {
            counter.tick();
            kept[pos] = &fa[pos] * &fb[pos];
        }
    }
    for &j in &plus_levels {
        poly::mul_binomial_in_place(&mut kept, Sign::Plus, 1 << j);
        kept.truncate(order);
    }
    if sigma(k as u64) == Sign::Minus {
        for c in &mut kept {
            *c = -std::mem::take(c);
        }
    }
    kept
}
