//! Roots of univariate polynomials with rational coefficients: exact
//! rational roots first, then closed-form quadratics, then Durand–Kerner.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{self, Scalar};

/// Relative residual accepted for numeric roots.
pub const ROOT_TOLERANCE: f64 = 1e-12;

// divisor enumeration is skipped above this size
const DIVISOR_LIMIT: u128 = 1 << 80;

#[derive(Debug, Clone, PartialEq)]
pub enum Root {
    Exact(Scalar),
    Numeric(Complex64),
}

/// Roots of `Σ c[i] t^i` with multiplicities. Exact roots come first.
pub fn roots(c: &[Scalar]) -> Vec<(Root, usize)> {
    let mut poly = trim(c.to_vec());
    let mut out: Vec<(Root, usize)> = Vec::new();
    if poly.len() <= 1 {
        return out;
    }
    // t = 0
    let zeros = poly.iter().take_while(|x| x.is_zero()).count();
    if zeros > 0 {
        out.push((Root::Exact(Scalar::zero()), zeros));
        poly.drain(..zeros);
    }
    for r in rational_candidates(&poly) {
        let mut m = 0;
        while poly.len() > 1 && eval(&poly, &r).is_zero() {
            poly = deflate(&poly, &r);
            m += 1;
        }
        if m > 0 {
            out.push((Root::Exact(r), m));
        }
    }
    match poly.len() {
        0 | 1 => {}
        2 => out.push((Root::Exact(-&poly[0] / &poly[1]), 1)),
        3 => out.extend(quadratic(&poly)),
        _ => out.extend(durand_kerner(&poly).into_iter().map(|z| (Root::Numeric(z), 1))),
    }
    out
}

fn trim(mut c: Vec<Scalar>) -> Vec<Scalar> {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    c
}

pub fn eval(c: &[Scalar], t: &Scalar) -> Scalar {
    c.iter().rev().fold(Scalar::zero(), |acc, x| acc * t + x)
}

/// Quotient by `(t − r)`, assuming `r` is a root.
fn deflate(c: &[Scalar], r: &Scalar) -> Vec<Scalar> {
    let n = c.len() - 1;
    let mut q = vec![Scalar::zero(); n];
    let mut carry = Scalar::zero();
    for i in (1..=n).rev() {
        carry = &carry * r + &c[i];
        q[i - 1] = carry.clone();
    }
    q
}

fn divisors(x: &BigInt) -> Option<Vec<BigInt>> {
    let x = x.abs().to_u128()?;
    if x == 0 || x > DIVISOR_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let root = x.sqrt();
    for d in 1..=root {
        if x % d == 0 {
            small.push(BigInt::from(d));
            if d != x / d {
                large.push(BigInt::from(x / d));
            }
        }
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

fn rational_candidates(c: &[Scalar]) -> Vec<Scalar> {
    if c.len() <= 2 {
        return Vec::new();
    }
    let ints = scalar::primitive_integer_vector(c);
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().expect("nonempty"))) else {
        return Vec::new();
    };
    let mut out: Vec<Scalar> = Vec::new();
    for p in &ps {
        for q in &qs {
            if !p.gcd(q).is_one() {
                continue;
            }
            for sign in [Sign::Plus, Sign::Minus] {
                let r = Scalar::new(BigInt::from_biguint(sign, p.magnitude().clone()), q.clone());
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out
}

/// Exact square root of a nonnegative rational, if it is a square.
fn rational_sqrt(x: &Scalar) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Scalar::new(n, d))
}

fn quadratic(c: &[Scalar]) -> Vec<(Root, usize)> {
    let (c0, c1, c2) = (&c[0], &c[1], &c[2]);
    let disc = c1 * c1 - c0 * c2 * scalar::int(4);
    let two_a = c2 * scalar::int(2);
    if disc.is_zero() {
        return vec![(Root::Exact(-c1 / &two_a), 2)];
    }
    if let Some(sq) = rational_sqrt(&disc) {
        return vec![
            (Root::Exact((-c1 + &sq) / &two_a), 1),
            (Root::Exact((-c1 - sq) / &two_a), 1),
        ];
    }
    let b = scalar::to_f64(c1);
    let a2 = scalar::to_f64(&two_a);
    let sq = Complex64::new(scalar::to_f64(&disc), 0.0).sqrt();
    vec![(Root::Numeric((-b + sq) / a2), 1), (Root::Numeric((-b - sq) / a2), 1)]
}

fn eval_complex(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, x| acc * z + x)
}

fn durand_kerner(c: &[Scalar]) -> Vec<Complex64> {
    let lead = scalar::to_f64(c.last().expect("nonempty"));
    let monic: Vec<Complex64> = c
        .iter()
        .map(|x| Complex64::new(scalar::to_f64(x) / lead, 0.0))
        .collect();
    let n = c.len() - 1;
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32)).collect();
    for _ in 0..1000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval_complex(&monic, z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

/// `|g(z)| / Σ|c_i||z|^i`.
pub fn relative_residual(c: &[Scalar], z: Complex64) -> f64 {
    let cf: Vec<Complex64> = c.iter().map(|x| Complex64::new(scalar::to_f64(x), 0.0)).collect();
    let scale: f64 = cf
        .iter()
        .enumerate()
        .map(|(i, x)| x.norm() * num_traits::Float::powi(z.norm(), i as i32))
        .sum();
    if scale == 0.0 {
        return 0.0;
    }
    eval_complex(&cf, z).norm() / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ints, ratio};

    fn exact(rs: &[(Root, usize)]) -> Vec<(Scalar, usize)> {
        rs.iter()
            .filter_map(|(r, m)| match r {
                Root::Exact(x) => Some((x.clone(), *m)),
                Root::Numeric(_) => None,
            })
            .collect()
    }

    #[test]
    fn linear() {
        assert_eq!(exact(&roots(&ints(&[-2, -3]))), vec![(ratio(-2, 3), 1)]);
        assert!(roots(&ints(&[5])).is_empty());
    }

    #[test]
    fn cubic_with_rational_roots() {
        // (2t − 1)(t + 3)^2 = 2t³ + 11t² + 12t − 9
        let r = exact(&roots(&ints(&[-9, 12, 11, 2])));
        assert!(r.contains(&(ratio(1, 2), 1)));
        assert!(r.contains(&(int(-3), 2)));
    }

    #[test]
    fn irrational_quadratic() {
        let r = roots(&ints(&[-2, 0, 1]));
        assert_eq!(r.len(), 2);
        for (x, _) in &r {
            let Root::Numeric(z) = x else {
                panic!("expected numeric root")
            };
            assert!((z.norm() - 2f64.sqrt()).abs() < 1e-12);
            assert!(relative_residual(&ints(&[-2, 0, 1]), *z) < ROOT_TOLERANCE);
        }
    }

    #[test]
    fn quartic_numeric() {
        // t^4 + t + 1: no rational roots
        let c = ints(&[1, 1, 0, 0, 1]);
        let r = roots(&c);
        assert_eq!(r.len(), 4);
        for (x, _) in &r {
            let Root::Numeric(z) = x else {
                panic!("expected numeric root")
            };
            assert!(relative_residual(&c, *z) < ROOT_TOLERANCE);
        }
    }

    #[test]
    fn zero_root_and_trailing_zeros() {
        let r = exact(&roots(&ints(&[0, 0, 3, 0])));
        assert_eq!(r, vec![(int(0), 2)]);
    }
}
