//! Single-coefficient product formulas.
//!
//! Flattening the interleaved recursion and reading off one degree at a time
//! gives
//!
//! ```text
//! [x^m] g∗h = Σ_{k=0..m} σ_k Σ_{j=k..m} w_k(m, j) (Σ_{t=j-k..j} u_k(j, t) σ_t a_t)
//!                                                  (Σ_{t=j-k..j} u_k(j, t) σ_t b_t)
//! ```
//!
//! where the outer weight `w_k(m, j)` and the inner weight `u_k(j, t)` come in
//! two equivalent shapes: Iverson brackets on bit masks, or entries of
//! Pascal's triangle mod 2. Nothing here is fast; the point is an oracle whose
//! derivation is independent of schoolbook convolution.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Sign;
use crate::seqs::{sierpinski_t, sigma};
use crate::series::SeriesPrefix;

/// `τ_k(m, j) = [k & (m − j) = 0]`, for `j ≤ m`.
pub fn tau(k: u64, m: u64, j: u64) -> bool {
    debug_assert!(j <= m);
    k & (m - j) == 0
}

/// `υ_k(j, t) = [k & (j − t) = j − t]`, for `t ≤ j`.
pub fn upsilon(k: u64, j: u64, t: u64) -> bool {
    debug_assert!(t <= j);
    k & (j - t) == j - t
}

/// Which pair of weight predicates drives the nested sums.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CoeffForm {
    /// `τ_k(m, j)·τ_k(j, k)` outside, `υ_k(j, t)` inside.
    #[default]
    Tau,
    /// `T(k+m−j, k)·T(j, k)` outside, `T(k, j−t)` inside.
    Sierpinski,
}

impl CoeffForm {
    fn outer(self, k: u64, m: u64, j: u64) -> bool {
        match self {
            Self::Tau => tau(k, m, j) && tau(k, j, k),
            Self::Sierpinski => sierpinski_t(k + m - j, k) == 1 && sierpinski_t(j, k) == 1,
        }
    }

    fn inner(self, k: u64, j: u64, t: u64) -> bool {
        match self {
            Self::Tau => upsilon(k, j, t),
            Self::Sierpinski => sierpinski_t(k, j - t) == 1,
        }
    }
}

/// A coefficient together with how many weight cells were nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffEval {
    pub value: BigInt,
    /// `(k, j)` pairs with a nonzero outer weight.
    pub outer_cells: u64,
    /// `(k, j, t)` triples with a nonzero inner weight under a live `(k, j)`.
    pub inner_cells: u64,
}

/// Degree-`m` coefficient of `g ∗ h` through the `τ/υ` form.
pub fn coeff_product(g: &SeriesPrefix, h: &SeriesPrefix, m: usize) -> Result<BigInt> {
    Ok(coeff_eval(g, h, m, CoeffForm::Tau)?.value)
}

/// Degree-`m` coefficient of `g ∗ h` through the Sierpiński-triangle form.
pub fn coeff_product_sierpinski(g: &SeriesPrefix, h: &SeriesPrefix, m: usize) -> Result<BigInt> {
    Ok(coeff_eval(g, h, m, CoeffForm::Sierpinski)?.value)
}

/// Evaluates the nested sums under `form`, tallying the nonzero cells.
pub fn coeff_eval(g: &SeriesPrefix, h: &SeriesPrefix, m: usize, form: CoeffForm) -> Result<CoeffEval> {
    g.require(m + 1)?;
    h.require(m + 1)?;
    let signed = |s: &SeriesPrefix| -> Vec<BigInt> {
        s.coeffs()[..=m]
            .iter()
            .enumerate()
            .map(|(t, c)| match sigma(t as u64) {
                Sign::Plus => c.clone(),
                Sign::Minus => -c,
            })
            .collect()
    };
    let (sa, sb) = (signed(g), signed(h));

    let m = m as u64;
    let mut eval = CoeffEval {
        value: BigInt::zero(),
        outer_cells: 0,
        inner_cells: 0,
    };
    for k in 0..=m {
        let mut inner_total = BigInt::zero();
        for j in k..=m {
            if !form.outer(k, m, j) {
                continue;
            }
            eval.outer_cells += 1;
            let mut left = BigInt::zero();
            let mut right = BigInt::zero();
            for t in j - k..=j {
                if form.inner(k, j, t) {
                    eval.inner_cells += 1;
                    left += &sa[t as usize];
                    right += &sb[t as usize];
                }
            }
            inner_total += left * right;
        }
        match sigma(k) {
            Sign::Plus => eval.value += inner_total,
            Sign::Minus => eval.value -= inner_total,
        }
    }
    Ok(eval)
}

/// All coefficients `0..order` of `g ∗ h`, one nested sum each.
pub fn coeff_products(g: &SeriesPrefix, h: &SeriesPrefix, order: usize, form: CoeffForm) -> Result<SeriesPrefix> {
    if order > 0 {
        g.require(order)?;
        h.require(order)?;
    }
    (0..order)
        .map(|m| coeff_eval(g, h, m, form).map(|e| e.value))
        .collect::<Result<Vec<_>>>()
        .map(SeriesPrefix::new)
}

impl std::str::FromStr for CoeffForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tau" => Ok(Self::Tau),
            "sierpinski" => Ok(Self::Sierpinski),
            other => Err(Error::OutOfDomain(format!("unknown coefficient form `{other}`"))),
        }
    }
}
