use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{mul_binomial_in_place, Polynomial};
use crate::counter::MulCounter;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `Minus` when `odd`, else `Plus`: the sign of `(-1)^n` given the parity of `n`.
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn apply(self, p: Polynomial) -> Polynomial {
        match self {
            Sign::Plus => p,
            Sign::Minus => -p,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self != rhs)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A product `∏ (1 ± x^(2^j))` with at most one factor per level `j < order`.
///
/// Kept as two bit sets so that enabling or cancelling a factor is a single
/// bit edit; [`BinomialProduct::expand`] multiplies it out on demand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BinomialProduct {
    order: u32,
    plus: u64,
    minus: u64,
}

impl BinomialProduct {
    pub const MAX_ORDER: u32 = 63;

    /// The empty product `1`.
    pub fn empty(order: u32) -> Self {
        assert!(order <= Self::MAX_ORDER, "order {order} too large");
        Self {
            order,
            plus: 0,
            minus: 0,
        }
    }

    /// `(1+x)(1+x²)…(1+x^(2^(order-1)))`.
    pub fn all_plus(order: u32) -> Self {
        let mut bp = Self::empty(order);
        bp.plus = low_bits(order);
        bp
    }

    /// Builder form of [`BinomialProduct::multiply_factor`]; panics on an occupied level.
    pub fn with_factor(mut self, level: u32, sign: Sign) -> Self {
        self.multiply_factor(level, sign).expect("level already holds a factor");
        self
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn factor(&self, level: u32) -> Option<Sign> {
        let bit = 1u64 << level;
        if self.plus & bit != 0 {
            Some(Sign::Plus)
        } else if self.minus & bit != 0 {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    /// Bit set of levels holding a factor of the given sign.
    pub fn levels(&self, sign: Sign) -> u64 {
        match sign {
            Sign::Plus => self.plus,
            Sign::Minus => self.minus,
        }
    }

    pub fn present_count(&self) -> u32 {
        (self.plus | self.minus).count_ones()
    }

    /// Enables `(1 ± x^(2^level))`; the level must be free.
    pub fn multiply_factor(&mut self, level: u32, sign: Sign) -> Result<()> {
        if level >= self.order {
            return Err(Error::FactorState {
                level,
                reason: "level outside the product's order",
            });
        }
        if self.factor(level).is_some() {
            return Err(Error::FactorState {
                level,
                reason: "level already holds a factor",
            });
        }
        match sign {
            Sign::Plus => self.plus |= 1 << level,
            Sign::Minus => self.minus |= 1 << level,
        }
        Ok(())
    }

    /// Cancels `(1 ± x^(2^level))`; fails as a non-exact division if that factor is absent.
    pub fn divide_factor(&mut self, level: u32, sign: Sign) -> Result<()> {
        if level >= self.order || self.factor(level) != Some(sign) {
            return Err(Error::NonExactDivision {
                sign,
                shift: 1usize << level.min(63),
            });
        }
        match sign {
            Sign::Plus => self.plus &= !(1 << level),
            Sign::Minus => self.minus &= !(1 << level),
        }
        Ok(())
    }

    /// Degree of the expansion: the sum of `2^j` over present factors.
    pub fn degree(&self) -> usize {
        (self.plus | self.minus) as usize
    }

    /// Leading term `(degree, sign)`; the sign is `(-1)^(number of minus factors)`.
    pub fn leading_term(&self) -> (usize, Sign) {
        (self.degree(), Sign::from_parity(self.minus.count_ones() % 2 == 1))
    }

    pub fn expand(&self) -> Polynomial {
        self.apply_to(&Polynomial::one())
    }

    /// `p` times this product, by shift-and-add only.
    pub fn apply_to(&self, p: &Polynomial) -> Polynomial {
        let mut v = p.coeffs().to_vec();
        self.apply_in_place(&mut v);
        Polynomial::new(v)
    }

    pub(crate) fn apply_in_place(&self, v: &mut Vec<BigInt>) {
        for level in 0..self.order {
            if let Some(sign) = self.factor(level) {
                mul_binomial_in_place(v, sign, 1usize << level);
            }
        }
    }
}

fn low_bits(order: u32) -> u64 {
    if order >= 64 {
        u64::MAX
    } else {
        (1u64 << order) - 1
    }
}

/// A polynomial used under `⊙` to keep or cancel coefficients.
///
/// Either every coefficient is 0 or 1, or the mask is a single `±x^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mask {
    poly: Polynomial,
}

impl Mask {
    pub fn new(poly: Polynomial) -> Result<Self> {
        let binary = poly.coeffs().iter().all(|c| c.is_zero() || c.is_one());
        let signed_monomial =
            poly.support().count() == 1 && poly.leading_coeff().is_some_and(|c| c.is_one() || *c == -BigInt::one());
        if binary || signed_monomial {
            Ok(Self { poly })
        } else {
            Err(Error::InvalidMask(format!("{poly} has coefficients outside {{0, 1}}")))
        }
    }

    pub fn as_polynomial(&self) -> &Polynomial {
        &self.poly
    }

    /// Number of kept positions.
    pub fn weight(&self) -> usize {
        self.poly.support().count()
    }

    /// `self ⊙ p`: keeps, cancels or negates coefficients, no products involved.
    pub fn select(&self, p: &Polynomial) -> Polynomial {
        let mut out = vec![BigInt::zero(); self.poly.len().min(p.len())];
        for i in self.poly.support().take_while(|&i| i < p.len()) {
            out[i] = if self.poly.coeffs()[i].is_one() {
                p.coeffs()[i].clone()
            } else {
                -&p.coeffs()[i]
            };
        }
        Polynomial::new(out)
    }

    /// `self ⊙ p ⊙ q`, multiplying `p_i·q_i` only at the kept positions.
    ///
    /// The counter is bumped once per kept position: those products are the
    /// ones the algorithm performs, whatever the operand values happen to be.
    pub fn select_product(&self, p: &Polynomial, q: &Polynomial, counter: &mut MulCounter) -> Polynomial {
        let mut out = vec![BigInt::zero(); self.poly.len()];
        for i in self.poly.support() {
            counter.tick();
            let prod = p.coeff(i) * q.coeff(i);
            out[i] = if self.poly.coeffs()[i].is_one() { prod } else { -prod };
        }
        Polynomial::new(out)
    }
}

/// `(1 - x^n) / (1 - x^step) · x^offset`, truncated below `x^n`: ones at
/// `offset, offset + step, …` below `n`.
pub fn geometric_mask(n: usize, step: usize, offset: usize) -> Result<Mask> {
    if !n.is_power_of_two() || !step.is_power_of_two() {
        return Err(Error::InvalidMask(format!(
            "length {n} and step {step} must be powers of two"
        )));
    }
    if !n.is_multiple_of(step) {
        return Err(Error::InvalidMask(format!("step {step} does not divide {n}")));
    }
    if offset >= n {
        return Err(Error::InvalidMask(format!("offset {offset} not below {n}")));
    }
    let mut coeffs = vec![BigInt::zero(); n];
    for i in (offset..n).step_by(step) {
        coeffs[i] = BigInt::one();
    }
    Ok(Mask {
        poly: Polynomial::new(coeffs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    #[test]
    fn geometric_mask_examples() {
        assert_eq!(geometric_mask(4, 1, 0).unwrap().as_polynomial(), &p(&[1, 1, 1, 1]));
        assert_eq!(
            geometric_mask(8, 2, 1).unwrap().as_polynomial(),
            &p(&[0, 1, 0, 1, 0, 1, 0, 1])
        );
        assert_eq!(
            geometric_mask(8, 4, 2).unwrap().as_polynomial(),
            &p(&[0, 0, 1, 0, 0, 0, 1, 0])
        );
        assert!(matches!(geometric_mask(4, 8, 0), Err(Error::InvalidMask(_))));
        assert!(matches!(geometric_mask(4, 1, 4), Err(Error::InvalidMask(_))));
        assert!(matches!(geometric_mask(6, 2, 0), Err(Error::InvalidMask(_))));
    }

    #[test]
    fn mask_validation() {
        assert!(Mask::new(p(&[1, 0, 1])).is_ok());
        assert!(Mask::new(p(&[0, 0, -1])).is_ok());
        assert!(Mask::new(p(&[1, -1])).is_err());
        assert!(Mask::new(p(&[2])).is_err());
    }

    #[test]
    fn select_product_counts_kept_positions() {
        let m = Mask::new(p(&[1, 0, 1, 1])).unwrap();
        let mut c = MulCounter::new();
        let r = m.select_product(&p(&[2, 3, 0, 5]), &p(&[7, 11, 13, 17]), &mut c);
        assert_eq!(r, p(&[14, 0, 0, 85]));
        assert_eq!(c.get(), 3);

        let neg = Mask::new(p(&[0, -1])).unwrap();
        assert_eq!(neg.select_product(&p(&[1, 2]), &p(&[1, 3]), &mut c), p(&[0, -6]));
    }

    #[test]
    fn expand_and_leading_term() {
        let bp = BinomialProduct::empty(2)
            .with_factor(0, Sign::Plus)
            .with_factor(1, Sign::Plus);
        assert_eq!(bp.expand(), p(&[1, 1, 1, 1]));
        assert_eq!(bp.leading_term(), (3, Sign::Plus));

        let bp = BinomialProduct::empty(2).with_factor(0, Sign::Minus);
        assert_eq!(bp.expand(), p(&[1, -1]));
        assert_eq!(bp.leading_term(), (1, Sign::Minus));

        let bp = BinomialProduct::empty(3);
        assert_eq!(bp.expand(), p(&[1]));
        assert_eq!(bp.leading_term(), (0, Sign::Plus));
    }

    #[test]
    fn all_plus_is_the_full_geometric_mask() {
        for d in 0..=10u32 {
            let n = 1usize << d;
            assert_eq!(
                &BinomialProduct::all_plus(d).expand(),
                geometric_mask(n, 1, 0).unwrap().as_polynomial()
            );
        }
    }

    #[test]
    fn expansion_shape_invariants() {
        for order in 0..=5u32 {
            for code in 0..3u32.pow(order) {
                let mut bp = BinomialProduct::empty(order);
                let mut c = code;
                for j in 0..order {
                    match c % 3 {
                        1 => bp.multiply_factor(j, Sign::Plus).unwrap(),
                        2 => bp.multiply_factor(j, Sign::Minus).unwrap(),
                        _ => {}
                    }
                    c /= 3;
                }
                let e = bp.expand();
                assert!(e.coeffs().iter().all(|c| c.magnitude() <= &1u32.into()));
                assert_eq!(e.support().count(), 1 << bp.present_count());
                assert_eq!(e.degree().finite(), Some(bp.degree()));
                let (deg, sign) = bp.leading_term();
                assert_eq!(e.leading_coeff().unwrap(), &BigInt::from(sign.as_i32()));
                assert_eq!(deg, bp.degree());
            }
        }
    }

    #[test]
    fn factor_edits() {
        let mut bp = BinomialProduct::empty(3);
        bp.multiply_factor(1, Sign::Minus).unwrap();
        assert!(bp.multiply_factor(1, Sign::Plus).is_err());
        assert!(bp.multiply_factor(3, Sign::Plus).is_err());
        assert!(matches!(
            bp.divide_factor(1, Sign::Plus),
            Err(Error::NonExactDivision { .. })
        ));
        bp.divide_factor(1, Sign::Minus).unwrap();
        assert_eq!(bp, BinomialProduct::empty(3));
    }
}
