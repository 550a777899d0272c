//! Seeded random operands shared by `verify` and `bench`.

use karaflat_core::{BigInt, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The generator for one `(size, trial)` cell: one ChaCha stream per cell, so
/// any cell can be regenerated alone.
pub fn cell_rng(seed: u64, n: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 32) | trial as u64);
    rng
}

/// Two polynomials of exactly `n` coefficients in `[-bound, bound]`, leading
/// coefficients nonzero.
pub fn random_pair(seed: u64, n: usize, trial: usize, bound: u64) -> (Polynomial, Polynomial) {
    let mut rng = cell_rng(seed, n, trial);
    let a = random_poly(&mut rng, n, bound);
    let b = random_poly(&mut rng, n, bound);
    (a, b)
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, bound: u64) -> Polynomial {
    let bound = bound.min(i64::MAX as u64) as i64;
    let mut coeffs: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
    if let Some(top) = coeffs.last_mut() {
        let mut c = rng.gen_range(1..=bound);
        if rng.gen::<bool>() {
            c = -c;
        }
        *top = BigInt::from(c);
    }
    Polynomial::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells_are_reproducible_and_independent() {
        assert_eq!(random_pair(7, 16, 3, 100), random_pair(7, 16, 3, 100));
        assert_ne!(random_pair(7, 16, 3, 100), random_pair(7, 16, 4, 100));
        assert_ne!(random_pair(7, 16, 3, 100), random_pair(8, 16, 3, 100));
    }

    #[test]
    fn shape_and_bounds() {
        for n in [1, 2, 64] {
            let (a, b) = random_pair(1, n, 0, 5);
            assert_eq!(a.len(), n);
            assert_eq!(b.len(), n);
            let limit = BigInt::from(5);
            assert!(a
                .coeffs()
                .iter()
                .chain(b.coeffs())
                .all(|c| c <= &limit && *c >= -&limit));
        }
    }
}
