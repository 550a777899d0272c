//! Shared inputs for the criterion benchmarks.

use karaflat_core::{BigInt, Polynomial, SeriesPrefix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x6b61_7261;
pub const BOUND: i64 = 1_000_000;

fn coeffs(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigInt> {
    (0..n).map(|_| BigInt::from(rng.gen_range(-BOUND..=BOUND))).collect()
}

/// Two dense `n`-coefficient operands, identical on every run.
pub fn operands(n: usize) -> (Polynomial, Polynomial) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ n as u64);
    let mut a = coeffs(&mut rng, n);
    let mut b = coeffs(&mut rng, n);
    if n > 0 {
        a[n - 1] = BigInt::from(BOUND);
        b[n - 1] = BigInt::from(-BOUND);
    }
    (Polynomial::new(a), Polynomial::new(b))
}

/// Two series prefixes of `order` coefficients.
pub fn prefixes(order: usize) -> (SeriesPrefix, SeriesPrefix) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED.rotate_left(17) ^ order as u64);
    (
        SeriesPrefix::new(coeffs(&mut rng, order)),
        SeriesPrefix::new(coeffs(&mut rng, order)),
    )
}
