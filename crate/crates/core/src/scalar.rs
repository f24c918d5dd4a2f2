//! Exact rational scalars.
//!
//! [`Scalar`] is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator; every operation in the crate is exact.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

/// `num / den`, reduced. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn ints(vs: &[i64]) -> Vec<Scalar> {
    vs.iter().map(|&v| int(v)).collect()
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Least common multiple of the denominators of `v` (1 for an empty slice).
pub fn common_denominator(v: &[Scalar]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales `v` to a primitive integer vector (content 1, same direction).
pub fn primitive_integer_vector(v: &[Scalar]) -> Vec<BigInt> {
    let den = common_denominator(v);
    let mut out: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let g = out.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut out {
            *x /= &g;
        }
    }
    out
}

/// True when `a` and `b` are nonzero multiples of each other.
pub fn proportional(a: &[Scalar], b: &[Scalar]) -> bool {
    if a.len() != b.len() || is_zero_vec(a) || is_zero_vec(b) {
        return false;
    }
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if b[i].is_zero() {
        return false;
    }
    let lambda = &b[i] / &a[i];
    a.iter().zip(b).all(|(x, y)| &(x * &lambda) == y)
}

/// Lossy conversion used only by the numeric root fallback.
pub fn to_f64(x: &Scalar) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}
