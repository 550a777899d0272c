//! Karatsuba multiplication with the recursion tree flattened.
//!
//! Splitting operands by even/odd degree instead of low/high halves makes
//! every node of Karatsuba's ternary recursion tree addressable by its branch
//! digits. This crate builds on that to provide, side by side:
//!
//! * [`reference`]: schoolbook and the two recursive Karatsuba baselines;
//! * [`partial`]: all direct leaves in one termwise product plus a single
//!   recursive sum over the branch-2 subtrees hanging off them;
//! * [`flat`]: the whole tree as one loop over `k < n`, optionally walked in
//!   Gray-code order so each step edits a single binomial factor;
//! * [`series`]: both schemes applied to truncated power series;
//! * [`coeffwise`]: closed forms for a single product coefficient;
//! * [`seqs`]: the integer sequences and Takagi-function identities that
//!   describe which subtrees touch which output degree.
//!
//! Coefficients are arbitrary-precision integers, and every multiplication
//! routine reports its elementary products through a [`MulCounter`].

pub mod algo;
pub mod coeffwise;
pub mod counter;
pub mod error;
pub mod flat;
pub mod partial;
pub mod poly;
pub mod reference;
pub mod seqs;
pub mod series;

pub use algo::Algorithm;
pub use counter::MulCounter;
pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use poly::{BinomialProduct, Degree, Mask, Polynomial, Sign};
pub use reference::PathLabel;
pub use series::SeriesPrefix;
