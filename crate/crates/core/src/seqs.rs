//! Integer sequences tied to the flattened recursion tree.
//!
//! * `σ_k = (-1)^popcount(k)` (OEIS A106400), the sign of each flat summand;
//! * `T(n, k) = [k & (n - k) = 0]` (A047999), Pascal's triangle mod 2;
//! * A268289, the running sum of (ones − zeros) over binary expansions, which
//!   also counts the indirect summands reaching a given output degree. It is
//!   computed three ways: by counting, through the Takagi function at a dyadic
//!   point, and by the block-doubling recurrence.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Sign;

pub fn sigma(k: u64) -> Sign {
    Sign::from_parity(k.count_ones() % 2 == 1)
}

/// Sierpiński triangle entry; zero outside `k ≤ n`.
pub fn sierpinski_t(n: u64, k: u64) -> u8 {
    if k > n {
        return 0;
    }
    u8::from(k & (n - k) == 0)
}

/// One step of the reflected binary code: `g` is the code of `k - 1`; returns
/// the code of `k` and the flipped bit, which is the lowest set bit of `k`.
pub fn gray_step(g: usize, k: u64) -> (usize, u32) {
    debug_assert!(k > 0);
    let j = k.trailing_zeros();
    (g ^ (1usize << j), j)
}

/// Exact `num / 2^exp`, reduced so that `num` is odd or `exp` is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    num: BigInt,
    exp: u32,
}

impl DyadicRational {
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Self {
        let mut num = num.into();
        let mut exp = exp;
        if num.is_zero() {
            exp = 0;
        }
        while exp > 0 && (&num & BigInt::one()).is_zero() {
            num >>= 1;
            exp -= 1;
        }
        Self { num, exp }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self::new(n, 0)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    /// Denominator exponent: the value is `numerator / 2^exponent`.
    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        (self.exp == 0).then(|| self.num.clone())
    }

    /// `self · 2^k`.
    pub fn scale_pow2(&self, k: u32) -> Self {
        if k >= self.exp {
            Self::new(&self.num << (k - self.exp), 0)
        } else {
            Self::new(self.num.clone(), self.exp - k)
        }
    }

    pub fn one_minus(&self) -> Self {
        Self::new((BigInt::one() << self.exp) - &self.num, self.exp)
    }

    fn in_unit_interval(&self) -> bool {
        !self.num.is_negative() && self.num <= BigInt::one() << self.exp
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        (&self.num << (e - self.exp)).cmp(&(&other.num << (e - other.exp)))
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

/// Takagi (blancmange) function `Σ_i s(2^i x) / 2^i` at a dyadic `x ∈ [0, 1]`,
/// with `s` the distance to the nearest integer.
///
/// For `x = p / 2^e` every term with `i ≥ e` vanishes, so the sum is finite and
/// its value is again dyadic with denominator dividing `2^e`.
pub fn takagi_dyadic(x: &DyadicRational) -> Result<DyadicRational> {
    if !x.in_unit_interval() {
        return Err(Error::OutOfDomain(x.to_string()));
    }
    let e = x.exp;
    // term i: s(p / 2^(e-i)) / 2^i = min(r, 2^(e-i) - r) / 2^e, r = p mod 2^(e-i)
    let mut total = BigInt::zero();
    for i in 0..e {
        let modulus = BigInt::one() << (e - i);
        let r = &x.num % &modulus;
        let other = &modulus - &r;
        total += r.min(other);
    }
    Ok(DyadicRational::new(total, e))
}

/// `Σ_{i=1..d} (ones(i) − zeros(i))` over binary expansions; `a(0) = 0`.
pub fn a268289_count(d: u64) -> i64 {
    (1..=d).map(ones_minus_zeros).sum()
}

fn ones_minus_zeros(i: u64) -> i64 {
    let ones = i.count_ones() as i64;
    let len = (u64::BITS - i.leading_zeros()) as i64;
    2 * ones - len
}

/// `d − 2^k · τ((d+1)/2^k − 1)` with `k = ⌊log₂ d⌋`; zero for `d = 0`.
pub fn a268289_takagi(d: u64) -> Result<i64> {
    if d == 0 {
        return Ok(0);
    }
    let k = d.ilog2();
    let x = DyadicRational::new(d + 1 - (1u64 << k), k);
    let scaled = takagi_dyadic(&x)?.scale_pow2(k);
    let tau = scaled
        .to_integer()
        .and_then(|t| t.to_i64())
        .ok_or(Error::NonIntegerResult(d))?;
    Ok(d as i64 - tau)
}

/// Terms `u_0 … u_(2^s - 1)` from `u_0 = 0` by the block-doubling rule
///
/// ```text
/// u_(n + 2^s) = u_n + (n+1)(⌊log₂ n⌋ − s + 2) + 2^s − 2^(⌊log₂ n⌋ + 1),   0 ≤ n < 2^s,
/// ```
///
/// taking `⌊log₂ 0⌋ = −1`.
pub fn a268289_recurrence(upto_s: u32) -> Vec<i64> {
    let mut u = vec![0i64];
    for s in 0..upto_s {
        let block = 1i64 << s;
        for n in 0..block {
            let lg = if n == 0 { -1 } else { n.ilog2() as i64 };
            let next = u[n as usize] + (n + 1) * (lg - s as i64 + 2) + block - (1i64 << (lg + 1));
            u.push(next);
        }
    }
    u
}
