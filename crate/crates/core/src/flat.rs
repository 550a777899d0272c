//! Fully flattened Karatsuba: the whole recursion tree as one sum over `k < n`.
//!
//! For `n = 2^d` and each `k` with binary digits `d_j`, let
//!
//! * `ḟ_k = ∏ (1 - x^(2^j))` over set bits (the subtracting factor),
//! * `f̄_k = ∏ (1 + x^(2^j))` over clear bits `j < d` (the termwise mask),
//! * `σ_k = (-1)^popcount(k)`, the sign of the leading term `σ_k x^k` of `ḟ_k`.
//!
//! Then
//!
//! ```text
//! A × B = Σ_k f̄_k · (σ_k f̄_k x^k ⊙ ḟ_k A ⊙ ḟ_k B).
//! ```
//!
//! The mask `f̄_k x^k` keeps `2^(d - popcount k)` coefficients, and summing
//! those over `k` gives exactly `3^d` elementary products. The mask is applied
//! before multiplying, so discarded products are never evaluated.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::counter::MulCounter;
use crate::error::{Error, Result};
use crate::poly::{self, termwise, BinomialProduct, Degree, Mask, Polynomial, Sign};
use crate::reference::padded_len;
use crate::seqs::sigma;

/// Factor bookkeeping for summand `k` of a length-`2^order` product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlatTermPlan {
    k: usize,
    f: BinomialProduct,
    fdot: BinomialProduct,
    sigma: Sign,
}

impl FlatTermPlan {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.f.order()
    }

    /// Plus factors at the clear bits of `k`.
    pub fn f(&self) -> &BinomialProduct {
        &self.f
    }

    /// Minus factors at the set bits of `k`.
    pub fn fdot(&self) -> &BinomialProduct {
        &self.fdot
    }

    pub fn sigma(&self) -> Sign {
        self.sigma
    }

    /// Degree of the leading term of `ḟ_k`, which is `k` itself.
    pub fn lt_degree(&self) -> usize {
        self.fdot.degree()
    }

    /// `f̄_k · x^k` as a 0/1 mask; `σ_k` is applied separately.
    pub fn mask(&self) -> Mask {
        Mask::new(poly::shift(&self.f.expand(), self.k)).expect("expansion of plus factors is 0/1")
    }

    /// Products kept by the mask: `2^(order - popcount k)`.
    pub fn kept_products(&self) -> u64 {
        1u64 << self.f.present_count()
    }
}

pub fn plan_term(k: usize, order: u32) -> Result<FlatTermPlan> {
    let n = 1usize << order;
    if k >= n {
        return Err(Error::TermIndex { k, n });
    }
    let mut f = BinomialProduct::empty(order);
    let mut fdot = BinomialProduct::empty(order);
    for j in 0..order {
        if k >> j & 1 == 1 {
            fdot.multiply_factor(j, Sign::Minus)?;
        } else {
            f.multiply_factor(j, Sign::Plus)?;
        }
    }
    Ok(FlatTermPlan {
        k,
        f,
        fdot,
        sigma: sigma(k as u64),
    })
}

/// When the mask meets the termwise product.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MaskOrder {
    /// Only kept positions are multiplied; this is what the counts assume.
    #[default]
    BeforeProducts,
    /// Full `ḟA ⊙ ḟB` first, masked afterwards. Same value, more products.
    AfterProducts,
}

/// One summand `σ_k f̄_k (f̄_k x^k ⊙ ḟ_k A ⊙ ḟ_k B)`.
pub fn flat_term_value(
    plan: &FlatTermPlan,
    a: &Polynomial,
    b: &Polynomial,
    counter: &mut MulCounter,
) -> Result<Polynomial> {
    flat_term_value_with(plan, a, b, MaskOrder::BeforeProducts, counter)
}

pub fn flat_term_value_with(
    plan: &FlatTermPlan,
    a: &Polynomial,
    b: &Polynomial,
    order: MaskOrder,
    counter: &mut MulCounter,
) -> Result<Polynomial> {
    let n = 1usize << plan.order();
    for p in [a, b] {
        if p.len() > n {
            return Err(Error::LengthExceeds { len: p.len(), n });
        }
    }
    let fa = plan.fdot.apply_to(a);
    let fb = plan.fdot.apply_to(b);
    let mask = plan.mask();
    let kept = match order {
        MaskOrder::BeforeProducts => mask.select_product(&fa, &fb, counter),
        MaskOrder::AfterProducts => mask.select(&termwise(&fa, &fb, counter)),
    };
    Ok(plan.sigma.apply(plan.f.apply_to(&kept)))
}

/// One evaluated summand with the products it cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatTerm {
    pub k: usize,
    pub value: Polynomial,
    pub products: u64,
}

/// Every summand of the flat formula, in order of `k`.
pub fn flat_terms(a: &Polynomial, b: &Polynomial, order: MaskOrder) -> Vec<FlatTerm> {
    let Some(n) = padded_len(a, b) else {
        return Vec::new();
    };
    let d = n.ilog2();
    (0..n)
        .map(|k| {
            let plan = plan_term(k, d).expect("k < n");
            let mut c = MulCounter::new();
            let value = flat_term_value_with(&plan, a, b, order, &mut c).expect("operands fit the block");
            FlatTerm {
                k,
                value,
                products: c.get(),
            }
        })
        .collect()
}

/// `A × B` as the single flat summation, factors rebuilt from scratch for every `k`.
pub fn multiply_flat(a: &Polynomial, b: &Polynomial, counter: &mut MulCounter) -> Polynomial {
    multiply_flat_with(a, b, MaskOrder::BeforeProducts, counter)
}

pub fn multiply_flat_with(a: &Polynomial, b: &Polynomial, order: MaskOrder, counter: &mut MulCounter) -> Polynomial {
    let Some(n) = padded_len(a, b) else {
        return Polynomial::zero();
    };
    let d = n.ilog2();
    let mut sum = Polynomial::zero();
    for k in 0..n {
        let plan = plan_term(k, d).expect("k < n");
        sum += &flat_term_value_with(&plan, a, b, order, counter).expect("operands fit the block");
    }
    sum
}

/// State of one iteration of [`multiply_gray_traced`], recorded after its factor edits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayStep {
    /// Loop counter.
    pub k: usize,
    /// Gray code of `k`; the summand index evaluated at this step.
    pub gray: usize,
    /// Flipped level, `None` for the initial step.
    pub level: Option<u32>,
    /// Degree of the expanded subtracting factor.
    pub fdot_degree: Degree,
    /// Leading coefficient of the expanded subtracting factor.
    pub fdot_leading: BigInt,
    /// Every level holds its factor in exactly one of `f`, `ḟ`.
    pub synchronized: bool,
    /// The running mask polynomial equals the expansion of `f`.
    pub mask_consistent: bool,
    pub factor_muls: u32,
    pub factor_divs: u32,
    pub products: u64,
    pub term: Polynomial,
}

/// Same sum as [`multiply_flat`], visiting `k` in Gray-code order.
///
/// Between consecutive steps one level flips, so `f`, `ḟ` and the running
/// products `ḟA`, `ḟB` change by a single binomial multiplication or exact
/// division each.
pub fn multiply_gray(a: &Polynomial, b: &Polynomial, counter: &mut MulCounter) -> Result<Polynomial> {
    gray_walk(a, b, counter, None)
}

/// [`multiply_gray`] that also returns the per-iteration state.
pub fn multiply_gray_traced(
    a: &Polynomial,
    b: &Polynomial,
    counter: &mut MulCounter,
) -> Result<(Polynomial, Vec<GrayStep>)> {
    let mut steps = Vec::new();
    let product = gray_walk(a, b, counter, Some(&mut steps))?;
    Ok((product, steps))
}

struct GrayState {
    order: u32,
    gray: usize,
    f: BinomialProduct,
    fdot: BinomialProduct,
    /// Expansion of `f`, kept in step with it.
    mask_base: Vec<BigInt>,
    fa: Vec<BigInt>,
    fb: Vec<BigInt>,
    muls: u32,
    divs: u32,
}

impl GrayState {
    fn new(a: &Polynomial, b: &Polynomial, order: u32) -> Self {
        let f = BinomialProduct::all_plus(order);
        Self {
            order,
            gray: 0,
            f,
            fdot: BinomialProduct::empty(order),
            mask_base: f.expand().into_coeffs(),
            fa: a.coeffs().to_vec(),
            fb: b.coeffs().to_vec(),
            muls: 0,
            divs: 0,
        }
    }

    fn flip(&mut self, level: u32) -> Result<()> {
        let shift = 1usize << level;
        self.muls = 0;
        self.divs = 0;
        if self.gray & shift == 0 {
            // Take branch 2 at this level: subtract, and drop the mask factor.
            self.fdot.multiply_factor(level, Sign::Minus)?;
            self.muls += 1;
            poly::mul_binomial_in_place(&mut self.fa, Sign::Minus, shift);
            poly::mul_binomial_in_place(&mut self.fb, Sign::Minus, shift);
            self.f.divide_factor(level, Sign::Plus)?;
            self.divs += 1;
            poly::div_binomial_in_place(&mut self.mask_base, Sign::Plus, shift)?;
        } else {
            self.fdot.divide_factor(level, Sign::Minus)?;
            self.divs += 1;
            poly::div_binomial_in_place(&mut self.fa, Sign::Minus, shift)?;
            poly::div_binomial_in_place(&mut self.fb, Sign::Minus, shift)?;
            self.f.multiply_factor(level, Sign::Plus)?;
            self.muls += 1;
            poly::mul_binomial_in_place(&mut self.mask_base, Sign::Plus, shift);
        }
        self.gray ^= shift;
        Ok(())
    }

    fn term(&self, counter: &mut MulCounter) -> Polynomial {
        let (degree, sign) = self.fdot.leading_term();
        let mut kept = vec![BigInt::zero(); degree + self.mask_base.len()];
        for (i, m) in self.mask_base.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let pos = degree + i;
            counter.tick();
            if let (Some(x), Some(y)) = (self.fa.get(pos), self.fb.get(pos)) {
                kept[pos] = x * y;
            }
        }
        self.f.apply_in_place(&mut kept);
        sign.apply(Polynomial::new(kept))
    }

    fn record(&self, k: usize, level: Option<u32>, products: u64, term: &Polynomial) -> GrayStep {
        let expanded = self.fdot.expand();
        let all = (1u64 << self.order) - 1;
        let plus = self.f.levels(Sign::Plus);
        let minus = self.fdot.levels(Sign::Minus);
        GrayStep {
            k,
            gray: self.gray,
            level,
            fdot_degree: expanded.degree(),
            fdot_leading: expanded.leading_coeff().cloned().unwrap_or_default(),
            synchronized: plus & minus == 0
                && plus | minus == all
                && self.f.levels(Sign::Minus) == 0
                && self.fdot.levels(Sign::Plus) == 0,
            mask_consistent: Polynomial::new(self.mask_base.clone()) == self.f.expand(),
            factor_muls: self.muls,
            factor_divs: self.divs,
            products,
            term: term.clone(),
        }
    }
}

fn gray_walk(
    a: &Polynomial,
    b: &Polynomial,
    counter: &mut MulCounter,
    mut trace: Option<&mut Vec<GrayStep>>,
) -> Result<Polynomial> {
    let Some(n) = padded_len(a, b) else {
        return Ok(Polynomial::zero());
    };
    let mut state = GrayState::new(a, b, n.ilog2());
    let mut sum = Polynomial::zero();
    for k in 0..n {
        let level = if k == 0 {
            None
        } else {
            let (_, j) = crate::seqs::gray_step(state.gray, k as u64);
            state.flip(j)?;
            Some(j)
        };
        let mut local = MulCounter::new();
        let term = state.term(&mut local);
        sum += &term;
        if let Some(steps) = trace.as_deref_mut() {
            steps.push(state.record(k, level, local.get(), &term));
        }
        counter.merge(local);
    }
    Ok(sum)
}
