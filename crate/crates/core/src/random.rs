//! Seeded sampling.
//!
//! All randomness in the crate flows from a 64-bit seed through ChaCha8, so
//! every sampled computation is reproducible.

use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{self, Scalar};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixes a base seed with a stream index (splitmix64 finalizer), so that
/// trials, cases and samples get independent, order-free streams.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Integers uniform in `[-bound, bound]`, resampled until nonzero.
pub fn int_vector<R: Rng + ?Sized>(rng: &mut R, len: usize, bound: i64) -> Vec<Scalar> {
    assert!(bound >= 1, "bound must be positive");
    loop {
        let v: Vec<i64> = (0..len).map(|_| rng.gen_range(-bound..=bound)).collect();
        if len == 0 || v.iter().any(|&x| x != 0) {
            return scalar::ints(&v);
        }
    }
}

/// Deterministic random nonzero integer vector of length `len` with entries
/// in `[-bound, bound]`.
pub fn random_int_vector(len: usize, bound: i64, seed: u64) -> Vec<Scalar> {
    int_vector(&mut rng(seed), len, bound)
}

/// Random rational `p/q` with `|p| <= num_bound`, `1 <= q <= den_bound`.
pub fn rational<R: Rng + ?Sized>(rng: &mut R, num_bound: i64, den_bound: i64) -> Scalar {
    let p = rng.gen_range(-num_bound..=num_bound);
    let q = rng.gen_range(1..=den_bound);
    scalar::ratio(p, q)
}

/// Random nonzero rational, same ranges as [`rational`].
pub fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R, num_bound: i64, den_bound: i64) -> Scalar {
    loop {
        let x = rational(rng, num_bound, den_bound);
        if !num_traits::Zero::is_zero(&x) {
            return x;
        }
    }
}
