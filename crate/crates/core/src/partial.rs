//! Partially flattened Karatsuba.
//!
//! All `n` direct leaves of the interleaved recursion tree collapse into one
//! termwise product,
//!
//! ```text
//! (1 - x^n)/(1 - x) · (A ⊙ B),
//! ```
//!
//! and the `n - 1` primary indirect subtrees (branch 2 taken right below a
//! direct node) are enumerated in level order by `m = 1 … n-1`. With
//! `k = ⌊log₂ m⌋`, subtree `m` contributes
//!
//! ```text
//! -(1 - x^(2^k)) / ((1 - x)·x^m) · (M_m ⊙ (1 - x^(2^k))A) × (M_m ⊙ (1 - x^(2^k))B)
//! ```
//!
//! where the mask `M_m` keeps degrees `m, m + 2^(k+1), m + 2·2^(k+1), …`
//! below `n`. The `×` is itself evaluated by this scheme after compressing the
//! masked operands by stride `2^(k+1)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::counter::MulCounter;
use crate::error::{Error, Result};
use crate::poly::{self, geometric_mask, BinomialProduct, Polynomial, Sign};
use crate::reference::run_padded;

/// A multiplier on equal power-of-two-length slices returning `2n - 1` coefficients.
pub type PaddedMul<'a> = &'a dyn Fn(&[BigInt], &[BigInt], &mut MulCounter) -> Vec<BigInt>;

/// `(1 - x^n)/(1 - x) · (A ⊙ B)`: `n` counted products, then `n` shift/adds.
pub fn part_direct(a: &Polynomial, b: &Polynomial, n: usize, counter: &mut MulCounter) -> Result<Polynomial> {
    check_block(a, b, n)?;
    let all = geometric_mask(n, 1, 0)?;
    let leaves = all.select_product(a, b, counter);
    let mut acc = Polynomial::zero();
    for t in 0..n {
        acc += &poly::shift(&leaves, t);
    }
    Ok(acc)
}

/// The `m`-th primary indirect summand, leading minus sign included.
///
/// `recurse` multiplies the stride-compressed masked factors, which have
/// `n / 2^(k+1)` coefficients each.
pub fn part_indirect_summand(
    a: &Polynomial,
    b: &Polynomial,
    n: usize,
    m: usize,
    recurse: PaddedMul<'_>,
    counter: &mut MulCounter,
) -> Result<Polynomial> {
    check_block(a, b, n)?;
    if m == 0 || m >= n {
        return Err(Error::InvalidMask(format!("summand index {m} outside 1..{n}")));
    }
    let k = m.ilog2();
    let step = 2usize << k;
    let mask = geometric_mask(n, step, m)?;

    let fa = mask.select(&poly::mul_binomial(a, Sign::Minus, k));
    let fb = mask.select(&poly::mul_binomial(b, Sign::Minus, k));
    let len = n / step;
    let ca = poly::compress_stride(&fa, step, m)?.padded(len);
    let cb = poly::compress_stride(&fb, step, m)?.padded(len);

    // fa × fb, moved back from the compressed variable.
    let product = poly::expand_stride(&Polynomial::new(recurse(&ca, &cb, counter)), step, 2 * m)?;

    let scaled = poly::mul_binomial(&product, Sign::Minus, k);
    let scaled = poly::div_binomial(&scaled, Sign::Minus, 0)?;
    Ok(-poly::unshift(&scaled, m)?)
}

/// Direct block plus all `n - 1` indirect summands, recursing into itself.
pub fn multiply_partial(a: &Polynomial, b: &Polynomial, counter: &mut MulCounter) -> Polynomial {
    run_padded(a, b, counter, partial_padded)
}

/// [`multiply_partial`] on equal power-of-two-length slices; `2n - 1` coefficients out.
///
/// Summands of one level share both the `(1 - x^(2^k))` pre-factor on the
/// operands and the `(1 - x^(2^k))/(1 - x)` post-factor, so each is applied
/// once per level rather than once per summand.
pub fn partial_padded(a: &[BigInt], b: &[BigInt], counter: &mut MulCounter) -> Vec<BigInt> {
    let n = a.len();
    debug_assert!(n.is_power_of_two() && b.len() == n);
    if n == 1 {
        counter.tick();
        return vec![&a[0] * &b[0]];
    }
    let order = n.ilog2();
    let mut out = vec![BigInt::zero(); 2 * n - 1];

    let leaves: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x * y).collect();
    counter.add(n as u64);
    poly::add_shifted(&mut out, &leaves, 0);
    BinomialProduct::all_plus(order).apply_in_place(&mut out);
    out.truncate(2 * n - 1);

    for k in 0..order {
        let half = 1usize << k;
        let step = 2 * half;
        let da = sub_delayed(a, half);
        let db = sub_delayed(b, half);
        let mut level = vec![BigInt::zero(); 2 * n - 1];
        for m in half..step {
            let ca: Vec<BigInt> = da[m..].iter().step_by(step).cloned().collect();
            let cb: Vec<BigInt> = db[m..].iter().step_by(step).cloned().collect();
            let r = partial_padded(&ca, &cb, counter);
            for (i, c) in r.into_iter().enumerate() {
                level[m + i * step] += c;
            }
        }
        BinomialProduct::all_plus(k).apply_in_place(&mut level);
        poly::sub_shifted(&mut out, &level[..2 * n - 1], 0);
    }
    out
}

/// `(1 - x^shift)·a` restricted to degrees below `a.len()`.
fn sub_delayed(a: &[BigInt], shift: usize) -> Vec<BigInt> {
    a.iter()
        .enumerate()
        .map(|(i, c)| if i >= shift { c - &a[i - shift] } else { c.clone() })
        .collect()
}

fn check_block(a: &Polynomial, b: &Polynomial, n: usize) -> Result<()> {
    poly::check_power_of_two(n)?;
    for p in [a, b] {
        if p.len() > n {
            return Err(Error::LengthExceeds { len: p.len(), n });
        }
    }
    Ok(())
}

/// Whether summand `m` can touch output degree `d`:
/// `1 ≤ m ≤ d` and `(d - m) mod 2^(k+1) < 2^k` with `k = ⌊log₂ m⌋`.
pub fn contributes(m: u64, d: u64) -> bool {
    if m == 0 || m > d {
        return false;
    }
    let k = m.ilog2();
    (d - m) % (2u64 << k) < (1u64 << k)
}

/// The set `S_d` of summand indices able to reach output degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContributionSet {
    d: u64,
    members: BTreeSet<u64>,
}

impl ContributionSet {
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, m: u64) -> bool {
        self.members.contains(&m)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn contribution_set(d: u64) -> ContributionSet {
    ContributionSet {
        d,
        members: (1..=d).filter(|&m| contributes(m, d)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::schoolbook_mul;
    use crate::reference::{interleaved_padded, trace_interleaved};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    fn random_poly(rng: &mut ChaCha8Rng, len: usize) -> Polynomial {
        Polynomial::from_i64s(&(0..len).map(|_| rng.gen_range(-100..=100)).collect::<Vec<_>>())
    }

    fn oracle(a: &Polynomial, b: &Polynomial) -> Polynomial {
        schoolbook_mul(a, b, &mut MulCounter::new())
    }

    #[test]
    fn direct_examples() {
        let mut c = MulCounter::new();
        assert_eq!(part_direct(&p(&[1, 1]), &p(&[1, 1]), 2, &mut c).unwrap(), p(&[1, 2, 1]));
        assert_eq!(c.get(), 2);
        assert_eq!(part_direct(&p(&[1]), &p(&[1]), 1, &mut c).unwrap(), p(&[1]));
        assert_eq!(
            part_direct(&p(&[1, 0]), &p(&[0, 1]), 2, &mut c).unwrap(),
            Polynomial::zero()
        );
        assert!(matches!(
            part_direct(&p(&[1, 2, 3]), &p(&[1]), 2, &mut c),
            Err(Error::LengthExceeds { len: 3, n: 2 })
        ));
        assert_eq!(part_direct(&p(&[1]), &p(&[1]), 3, &mut c), Err(Error::NotPowerOfTwo(3)));
    }

    #[test]
    fn indirect_summand_n2() {
        let (a0, a1, b0, b1) = (3i64, -5, 7, 11);
        let mut c = MulCounter::new();
        let got = part_indirect_summand(&p(&[a0, a1]), &p(&[b0, b1]), 2, 1, &interleaved_padded, &mut c).unwrap();
        assert_eq!(got, p(&[0, -(a1 - a0) * (b1 - b0)]));
        assert_eq!(c.get(), 1);

        let zero = part_indirect_summand(&Polynomial::zero(), &p(&[1, 2]), 2, 1, &interleaved_padded, &mut c).unwrap();
        assert_eq!(zero, Polynomial::zero());
        assert!(part_indirect_summand(&p(&[1]), &p(&[1]), 2, 2, &interleaved_padded, &mut c).is_err());
    }

    #[test]
    fn indirect_summand_n4_m2() {
        // Only (a2 - a0)(b2 - b0) survives the mask; the post-factor is (1 + x)·x².
        let a = p(&[2, 3, 5, 7]);
        let b = p(&[11, 13, 17, 19]);
        let mut c = MulCounter::new();
        let got = part_indirect_summand(&a, &b, 4, 2, &interleaved_padded, &mut c).unwrap();
        let v = (5 - 2) * (17 - 11);
        assert_eq!(got, p(&[0, 0, -v, -v]));
        assert_eq!(c.get(), 1);
    }

    #[test]
    fn summands_match_traced_subtrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [2usize, 4, 8, 16, 32] {
            let a = random_poly(&mut rng, n);
            let b = random_poly(&mut rng, n);
            let trace = trace_interleaved(&a, &b);
            assert_eq!(trace.primary_indirect.len(), n - 1);
            for node in &trace.primary_indirect {
                let got =
                    part_indirect_summand(&a, &b, n, node.index, &partial_padded, &mut MulCounter::new()).unwrap();
                assert_eq!(got, node.contribution, "n {n} node {}", node.path);
            }
        }
    }

    #[test]
    fn multiply_examples() {
        let mut c = MulCounter::new();
        assert_eq!(multiply_partial(&p(&[2, 3]), &p(&[5, 7]), &mut c), p(&[10, 29, 21]));
        assert_eq!(c.get(), 3);
        let mut c = MulCounter::new();
        assert_eq!(
            multiply_partial(&p(&[1, 2, 3, 4]), &p(&[5, 6, 7, 8]), &mut c),
            p(&[5, 16, 34, 60, 61, 52, 32])
        );
        assert_eq!(c.get(), 9);
        assert_eq!(multiply_partial(&p(&[-6]), &p(&[7]), &mut c), p(&[-42]));
        assert_eq!(
            multiply_partial(&Polynomial::zero(), &p(&[7]), &mut c),
            Polynomial::zero()
        );
    }

    #[test]
    fn direct_plus_summands_is_the_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in 0..=6u32 {
            let n = 1usize << d;
            let a = random_poly(&mut rng, n);
            let b = random_poly(&mut rng, n);
            let mut by_summands = MulCounter::new();
            let mut total = part_direct(&a, &b, n, &mut by_summands).unwrap();
            for m in 1..n {
                total += &part_indirect_summand(&a, &b, n, m, &partial_padded, &mut by_summands).unwrap();
            }
            let mut fast = MulCounter::new();
            assert_eq!(total, oracle(&a, &b));
            assert_eq!(multiply_partial(&a, &b, &mut fast), total);
            assert_eq!(by_summands.get(), 3u64.pow(d));
            assert_eq!(fast.get(), 3u64.pow(d));
        }
    }

    #[test]
    fn contribution_set_examples() {
        assert!(contribution_set(0).is_empty());
        assert_eq!(contribution_set(5).members().collect::<Vec<_>>(), [1, 4, 5]);
        assert_eq!(contribution_set(1).members().collect::<Vec<_>>(), [1]);
        assert!(contribution_set(5).contains(4));
        assert!(!contribution_set(5).contains(2));
    }

    #[test]
    fn summand_support_stays_in_contribution_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let n = 64;
        let a = random_poly(&mut rng, n);
        let b = random_poly(&mut rng, n);
        for m in 1..n {
            let s = part_indirect_summand(&a, &b, n, m, &partial_padded, &mut MulCounter::new()).unwrap();
            for d in s.support() {
                assert!(contributes(m as u64, d as u64), "m {m} reaches degree {d}");
            }
        }
    }
}
