//! Uniform entry point over every multiplication routine.

use std::fmt;
use std::str::FromStr;

use crate::counter::MulCounter;
use crate::error::{Error, Result};
use crate::flat::{multiply_flat, multiply_gray};
use crate::partial::multiply_partial;
use crate::poly::{schoolbook_mul, Polynomial};
use crate::reference::{karatsuba_interleaved, karatsuba_traditional};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Naive,
    Traditional,
    Interleaved,
    Partial,
    Flat,
    Gray,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Self::Naive,
        Self::Traditional,
        Self::Interleaved,
        Self::Partial,
        Self::Flat,
        Self::Gray,
    ];

    /// Every algorithm holding the `3^d` product count.
    pub const KARATSUBA: [Algorithm; 5] = [
        Self::Traditional,
        Self::Interleaved,
        Self::Partial,
        Self::Flat,
        Self::Gray,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Naive => "naive",
            Self::Traditional => "traditional",
            Self::Interleaved => "interleaved",
            Self::Partial => "partial",
            Self::Flat => "flat",
            Self::Gray => "gray",
        }
    }

    pub fn multiply(self, a: &Polynomial, b: &Polynomial, counter: &mut MulCounter) -> Result<Polynomial> {
        Ok(match self {
            Self::Naive => schoolbook_mul(a, b, counter),
            Self::Traditional => karatsuba_traditional(a, b, counter),
            Self::Interleaved => karatsuba_interleaved(a, b, counter),
            Self::Partial => multiply_partial(a, b, counter),
            Self::Flat => multiply_flat(a, b, counter),
            Self::Gray => multiply_gray(a, b, counter)?,
        })
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::OutOfDomain(format!("unknown algorithm `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("karatsuba".parse::<Algorithm>().is_err());
    }

    #[test]
    fn all_agree_on_small_product() {
        let a = Polynomial::from_i64s(&[2, 3]);
        let b = Polynomial::from_i64s(&[5, 7]);
        for algo in Algorithm::ALL {
            let mut c = MulCounter::new();
            assert_eq!(
                algo.multiply(&a, &b, &mut c).unwrap(),
                Polynomial::from_i64s(&[10, 29, 21])
            );
            let want = if algo == Algorithm::Naive { 4 } else { 3 };
            assert_eq!(c.get(), want, "{algo}");
        }
    }
}
