//! Rank decompositions on the tangent space of `F(0,1;2)`.
//!
//! At `P = e1∧e2⊗e1` the affine tangent cone is spanned by
//! `e1∧e2⊗e1`, `e1∧e2⊗e2`, `e1∧e3⊗e1` and `e2∧e3⊗e1 − e1∧e2⊗e3`, so a
//! tangent element is `T(a,b,c,d)`. In matrix form (see
//! [`crate::varieties`]) it is
//!
//! ```text
//! [ d  -c  a ]
//! [ 0   0  b ]
//! [ 0   0 -d ]
//! ```
//!
//! Each element has rank 1 or 2 with respect to the flag variety; the cases
//! below give explicit decompositions. Summands are flag points
//! `v1 ∧ v2 ⊗ v1`, carried as [`FlagPoint`]s.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::rank_exact;
use crate::random::{self, SeededRng};
use crate::scalar::{self, int, ratio, Scalar};
use crate::varieties::{cross, flag_matrix, matrix3, square3, trace3};

/// `(a, b, c, d)`.
pub type TangentParams = [Scalar; 4];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagPoint {
    pub v1: Vec<Scalar>,
    pub v2: Vec<Scalar>,
}

impl FlagPoint {
    pub fn new(v1: Vec<Scalar>, v2: Vec<Scalar>) -> Self {
        Self { v1, v2 }
    }

    /// The nine entries of `v1 · (v1 × v2)^T`.
    pub fn matrix(&self) -> Vec<Scalar> {
        flag_matrix(&self.v1, &self.v2)
    }

    /// Independent vectors, and an image that is rank one, traceless and
    /// squares to zero.
    pub fn is_valid(&self) -> bool {
        if self.v1.len() != 3 || self.v2.len() != 3 || scalar::is_zero_vec(&cross(&self.v1, &self.v2)) {
            return false;
        }
        let m = self.matrix();
        rank_exact(&matrix3(&m)) == 1 && trace3(&m).is_zero() && scalar::is_zero_vec(&square3(&m))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseId {
    /// Only `a` nonzero.
    SingleA,
    /// Only `b` nonzero.
    SingleB,
    /// Only `c` nonzero.
    SingleC,
    /// Numbered cases `0..=17`.
    Case(u8),
}

impl CaseId {
    pub fn number(self) -> Option<u8> {
        match self {
            CaseId::Case(n) => Some(n),
            _ => None,
        }
    }

    fn code(self) -> u8 {
        match self {
            CaseId::Case(n) => n,
            CaseId::SingleA => 100,
            CaseId::SingleB => 101,
            CaseId::SingleC => 102,
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseId::SingleA => write!(f, "a-only"),
            CaseId::SingleB => write!(f, "b-only"),
            CaseId::SingleC => write!(f, "c-only"),
            CaseId::Case(n) => write!(f, "{n}"),
        }
    }
}

pub type Summand = (Scalar, FlagPoint);

/// One case: its guard, a sampler for guard-satisfying parameters and the
/// decomposition formula. The fields are plain function pointers so a test
/// can swap in a corrupted formula.
#[derive(Debug, Clone, Copy)]
pub struct CaseSpec {
    pub id: CaseId,
    /// Excluded values of the free parameter `k`, as `(num, den)`; `None`
    /// when the case has no free parameter.
    pub exclusions: Option<&'static [(i64, i64)]>,
    pub guard: fn(&TangentParams) -> bool,
    pub sample: fn(&mut SeededRng) -> TangentParams,
    pub decompose: fn(&TangentParams, &Scalar) -> Vec<Summand>,
}

impl CaseSpec {
    pub fn is_excluded(&self, k: &Scalar) -> bool {
        self.exclusions
            .is_some_and(|ex| ex.iter().any(|&(p, q)| *k == ratio(p, q)))
    }

    /// Smallest positive integer outside the exclusion set (1 when the case
    /// has no free parameter; the value is then unused).
    pub fn default_k(&self) -> Scalar {
        (1..)
            .map(int)
            .find(|k| !self.is_excluded(k))
            .expect("finite exclusion set")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub case: CaseId,
    pub k: Option<Scalar>,
    pub summands: Vec<Summand>,
}

impl Decomposition {
    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    /// `Σ coeff · matrix(point)`.
    pub fn sum(&self) -> Vec<Scalar> {
        weighted_sum(&self.summands)
    }
}

/// How to choose `k` in cases that have a free parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KChoice {
    Default,
    Given(Scalar),
    Random(u64),
}

pub fn weighted_sum(summands: &[Summand]) -> Vec<Scalar> {
    let mut acc = vec![Scalar::zero(); 9];
    for (c, p) in summands {
        for (a, x) in acc.iter_mut().zip(p.matrix()) {
            *a += c * x;
        }
    }
    acc
}

/// Matrix of `a·e1∧e2⊗e1 + b·e1∧e2⊗e2 + c·e1∧e3⊗e1 + d·(e2∧e3⊗e1 − e1∧e2⊗e3)`.
pub fn tangent_element(p: &TangentParams) -> Result<Vec<Scalar>> {
    if scalar::is_zero_vec(p) {
        return Err(Error::AllZero);
    }
    let [a, b, c, d] = p;
    let z = Scalar::zero;
    Ok(vec![
        d.clone(),
        -c.clone(),
        a.clone(),
        z(),
        z(),
        b.clone(),
        z(),
        z(),
        -d.clone(),
    ])
}

fn v(x: Scalar, y: Scalar, z: Scalar) -> Vec<Scalar> {
    vec![x, y, z]
}

fn e(i: usize) -> Vec<Scalar> {
    crate::varieties::unit(3, i)
}

fn fp(v1: Vec<Scalar>, v2: Vec<Scalar>) -> FlagPoint {
    FlagPoint::new(v1, v2)
}

fn nz(x: &Scalar) -> bool {
    !x.is_zero()
}

fn two() -> Scalar {
    int(2)
}

/// Divides `p` by `p[i]`, applies `f` and multiplies the coefficients back.
fn normalized(p: &TangentParams, i: usize, k: &Scalar, f: fn(&TangentParams, &Scalar) -> Vec<Summand>) -> Vec<Summand> {
    let s = p[i].clone();
    let q: TangentParams = [&p[0] / &s, &p[1] / &s, &p[2] / &s, &p[3] / &s];
    f(&q, k).into_iter().map(|(c, pt)| (c * &s, pt)).collect()
}

// guards: disjoint regions covering every nonzero (a, b, c, d)

fn g_single_a(p: &TangentParams) -> bool {
    nz(&p[0]) && p[1].is_zero() && p[2].is_zero() && p[3].is_zero()
}
fn g_single_b(p: &TangentParams) -> bool {
    p[0].is_zero() && nz(&p[1]) && p[2].is_zero() && p[3].is_zero()
}
fn g_single_c(p: &TangentParams) -> bool {
    p[0].is_zero() && p[1].is_zero() && nz(&p[2]) && p[3].is_zero()
}
fn g0(p: &TangentParams) -> bool {
    p[0].is_zero() && p[1].is_zero() && p[2].is_zero() && nz(&p[3])
}
fn g1(p: &TangentParams) -> bool {
    nz(&p[0]) && nz(&p[1]) && p[2].is_zero() && p[3].is_zero()
}
fn g2(p: &TangentParams) -> bool {
    nz(&p[0]) && p[1].is_zero() && nz(&p[2]) && p[3].is_zero()
}
fn g3(p: &TangentParams) -> bool {
    p[0].is_zero() && nz(&p[1]) && nz(&p[2]) && p[3].is_zero()
}
fn a_plus_2d(p: &TangentParams) -> Scalar {
    &p[0] + &p[3] * two()
}
fn g4(p: &TangentParams) -> bool {
    nz(&p[0]) && p[1].is_zero() && p[2].is_zero() && nz(&p[3]) && nz(&a_plus_2d(p))
}
fn g5(p: &TangentParams) -> bool {
    p[1].is_zero() && p[2].is_zero() && nz(&p[3]) && a_plus_2d(p).is_zero()
}
fn g6(p: &TangentParams) -> bool {
    p[0].is_zero() && nz(&p[1]) && p[2].is_zero() && nz(&p[3])
}
fn g7(p: &TangentParams) -> bool {
    p[0].is_zero() && p[1].is_zero() && nz(&p[2]) && nz(&p[3])
}
// c/b + 2(d/b)², times b²
fn case8_form(p: &TangentParams) -> Scalar {
    &p[2] * &p[1] + &p[3] * &p[3] * two()
}
fn g8(p: &TangentParams) -> bool {
    p[0].is_zero() && nz(&p[1]) && nz(&p[2]) && nz(&p[3]) && nz(&case8_form(p))
}
fn g9(p: &TangentParams) -> bool {
    p[0].is_zero() && nz(&p[1]) && nz(&p[2]) && nz(&p[3]) && case8_form(p).is_zero()
}
fn g10(p: &TangentParams) -> bool {
    nz(&p[0]) && p[1].is_zero() && nz(&p[2]) && nz(&p[3]) && nz(&a_plus_2d(p))
}
fn g11(p: &TangentParams) -> bool {
    nz(&p[0]) && p[1].is_zero() && nz(&p[2]) && nz(&p[3]) && a_plus_2d(p).is_zero()
}
fn g12(p: &TangentParams) -> bool {
    nz(&p[0]) && nz(&p[1]) && nz(&p[2]) && p[3].is_zero()
}
fn g13(p: &TangentParams) -> bool {
    nz(&p[0]) && nz(&p[1]) && p[2].is_zero() && nz(&p[3]) && nz(&a_plus_2d(p))
}
fn g14(p: &TangentParams) -> bool {
    nz(&p[0]) && nz(&p[1]) && p[2].is_zero() && nz(&p[3]) && a_plus_2d(p).is_zero()
}
fn all_nonzero(p: &TangentParams) -> bool {
    p.iter().all(nz)
}
// a²·q and a²·r after dividing by a
fn q_form(p: &TangentParams) -> Scalar {
    let [a, b, c, d] = p;
    d * d + a * d + b * c
}
fn r_form(p: &TangentParams) -> Scalar {
    let [a, b, c, d] = p;
    d * d * two() + a * d + b * c
}
fn g15(p: &TangentParams) -> bool {
    all_nonzero(p) && nz(&q_form(p)) && nz(&r_form(p))
}
fn g16(p: &TangentParams) -> bool {
    all_nonzero(p) && r_form(p).is_zero()
}
fn g17(p: &TangentParams) -> bool {
    all_nonzero(p) && q_form(p).is_zero()
}

// decompositions

fn d_single_a(p: &TangentParams, _: &Scalar) -> Vec<Summand> {
    vec![(p[0].clone(), fp(e(0), e(1)))]
}
fn d_single_b(p: &TangentParams, _: &Scalar) -> Vec<Summand> {
    vec![(-p[1].clone(), fp(e(1), e(0)))]
}
fn d_single_c(p: &TangentParams, _: &Scalar) -> Vec<Summand> {
    vec![(p[2].clone(), fp(e(0), e(2)))]
}
fn d0(p: &TangentParams, _: &Scalar) -> Vec<Summand> {
    let h = &p[3] / two();
    vec![
        (h.clone(), fp(v(int(1), int(0), int(-1)), e(1))),
        (-h, fp(v(int(1), int(0), int(1)), e(1))),
    ]
}
fn d1(p: &TangentParams, _: &Scalar) -> Vec<Summand> {
    let [a, b, _, _] = p;
    vec![(a.recip(), fp(v(a.clone(), b.clone(), int(0)), e(1)))]
}
fn d2(p: &TangentParams, _: &Scalar) -> Vec<Summand> {
    let [a, _, c, _] = p;
    vec![(int(1), fp(e(0), v(int(0), a.clone(), c.clone())))]
}
fn d3(p: &TangentParams, _: &Scalar) -> Vec<Summand> {
    let [_, b, c, _] = p;
    vec![(-b.clone(), fp(e(1), e(0))), (c.clone(), fp(e(0), e(2)))]
}
fn d4(p: &TangentParams, _: &Scalar) -> Vec<Summand> {
    let [a, _, _, d] = p;
    let den = a_plus_2d(p);
    let x = v(a + d, int(0), -d.clone());
    vec![
        (den.recip(), fp(x, e(1))),
        (-(d * d) / &den, fp(v(int(1), int(0), int(1)), e(1))),
    ]
}
fn d5(p: &TangentParams, k: &Scalar) -> Vec<Summand> {
    let d = &p[3];
    let w = d / (k * (k - int(1)) * two());
    let x = v(k * two() - int(1), int(0), k.clone());
    let y = v(int(1), int(0), k.clone());
    vec![(-w.clone(), fp(x, e(1))), (w, fp(y, e(1)))]
}
fn d6(p: &TangentParams, _: &Scalar) -> Vec<Summand> {
    let [_, b, _, d] = p;
    let w = (d * two()).recip();
    let x = v(d.clone(), b.clone(), -d.clone());
    let y = v(d.clone(), -b.clone(), d.clone());
    vec![(w.clone(), fp(x, e(1))), (-w, fp(y, e(1)))]
}
fn d7(p: &TangentParams, _: &Scalar) -> Vec<Summand> {
    let [_, _, c, d] = p;
    let h = d / two();
    let cd = c / d;
    vec![
        (h.clone(), fp(v(int(1), int(0), int(-1)), v(int(0), int(1), cd.clone()))),
        (-h, fp(v(int(1), int(0), int(1)), v(int(0), int(1), -cd))),
    ]
}
fn d8_unit(p: &TangentParams, _: &Scalar) -> Vec<Summand> {
    let [_, _, c, d] = p;
    let dd = d * d;
    let w = (c + &dd * two()).recip();
    let x = v(c + &dd, d.clone(), -dd.clone());
    let y = v(d.clone(), int(-1), d.clone());
    vec![
        (w.clone(), fp(x, v(int(-1), int(0), int(1)))),
        (-w, fp(y, v(c.clone(), d.clone(), int(0)))),
    ]
}
fn d8(p: &TangentParams, k: &Scalar) -> Vec<Summand> {
    normalized(p, 1, k, d8_unit)
}
fn d9_unit(p: &TangentParams, k: &Scalar) -> Vec<Summand> {
    let d = &p[3];
    let km1 = k - int(1);
    let x = v(d * (int(1) - k * two()), k.clone(), -(d * k));
    let y = v(d.clone(), -k.clone(), k * d);
    vec![
        ((k * k * &km1 * two()).recip(), fp(x, v(int(1), int(0), -k.clone()))),
        (-(d * k * &km1 * two()).recip(), fp(y, v(d * two(), int(-1), int(0)))),
    ]
}
fn d9(p: &TangentParams, k: &Scalar) -> Vec<Summand> {
    normalized(p, 1, k, d9_unit)
}
fn d10_unit(p: &TangentParams, _: &Scalar) -> Vec<Summand> {
    let [_, _, c, d] = p;
    let t = d * two() + int(1);
    let x = v(d + int(1), int(0), -d.clone());
    let v2 = v(c.clone(), d.clone(), int(0));
    vec![
        ((d * &t).recip(), fp(x, v2.clone())),
        (-(d / &t), fp(v(int(1), int(0), int(1)), v2)),
    ]
}
fn d10(p: &TangentParams, k: &Scalar) -> Vec<Summand> {
    normalized(p, 0, k, d10_unit)
}
fn d11_unit(p: &TangentParams, k: &Scalar) -> Vec<Summand> {
    let c = &p[2];
    let w = (k * (k - int(1)) * int(4)).recip();
    let x = v(k * two() - int(1), int(0), k.clone());
    let y = v(int(1), int(0), k.clone());
    let v2 = v(c * int(-2), int(1), int(0));
    vec![(w.clone(), fp(x, v2.clone())), (-w, fp(y, v2))]
}
fn d11(p: &TangentParams, k: &Scalar) -> Vec<Summand> {
    normalized(p, 0, k, d11_unit)
}
fn d12(p: &TangentParams, _: &Scalar) -> Vec<Summand> {
    let [a, b, c, _] = p;
    vec![
        (a.recip(), fp(v(a.clone(), b.clone(), int(0)), e(1))),
        (c.clone(), fp(e(0), e(2))),
    ]
}
fn d13_unit(p: &TangentParams, _: &Scalar) -> Vec<Summand> {
    let [a, _, _, d] = p;
    let w = a_plus_2d(p).recip();
    let x = v(a + d, int(1), -d.clone());
    let y = v(d.clone(), int(-1), d.clone());
    vec![(w.clone(), fp(x, e(1))), (-w, fp(y, e(1)))]
}
fn d13(p: &TangentParams, k: &Scalar) -> Vec<Summand> {
    normalized(p, 1, k, d13_unit)
}
fn d14_unit(p: &TangentParams, k: &Scalar) -> Vec<Summand> {
    let d = &p[3];
    let w = (k * (k - int(1)) * d * two()).recip();
    let x = v(d * (k * two() - int(1)), -k.clone(), d * k);
    let y = v(d.clone(), -k.clone(), d * k);
    vec![(-w.clone(), fp(x, e(1))), (w, fp(y, e(1)))]
}
fn d14(p: &TangentParams, k: &Scalar) -> Vec<Summand> {
    normalized(p, 1, k, d14_unit)
}
fn d15_unit(p: &TangentParams, _: &Scalar) -> Vec<Summand> {
    let [_, b, c, d] = p;
    let q = q_form(p);
    let r = r_form(p);
    let x = v(q, b * d, -(d * d));
    let y = v(d.clone(), -b.clone(), d.clone());
    let v2 = v(c.clone(), d.clone(), int(0));
    vec![((d * d * &r).recip(), fp(x, v2.clone())), (-r.recip(), fp(y, v2))]
}
fn d15(p: &TangentParams, k: &Scalar) -> Vec<Summand> {
    normalized(p, 0, k, d15_unit)
}
fn d16_unit(p: &TangentParams, k: &Scalar) -> Vec<Summand> {
    let [_, _, c, d] = p;
    let w = (c * c * k * (k - int(1)) * two()).recip();
    let m = k * (d * two() + int(1));
    let x = v(c * (k * two() - int(1)), m.clone(), c * k);
    let y = v(c.clone(), m, c * k);
    let v2 = v(c.clone(), d.clone(), int(0));
    vec![(-w.clone(), fp(x, v2.clone())), (w, fp(y, v2))]
}
fn d16(p: &TangentParams, k: &Scalar) -> Vec<Summand> {
    normalized(p, 0, k, d16_unit)
}
fn d17_unit(p: &TangentParams, k: &Scalar) -> Vec<Summand> {
    let [_, _, c, d] = p;
    let w = (c * c * k * (k - int(2))).recip();
    let m = k * (d + int(1));
    let x = v(c * (k - int(1)), m.clone(), c * k);
    let y = v(c.clone(), m, c * k);
    let v2 = v(c.clone(), d.clone(), int(0));
    vec![(-w.clone(), fp(x, v2.clone())), (w, fp(y, v2))]
}
fn d17(p: &TangentParams, k: &Scalar) -> Vec<Summand> {
    normalized(p, 0, k, d17_unit)
}

// samplers: random nonzero rationals in the required zero pattern, with
// equality constraints solved for one coordinate

const NUM: i64 = 20;
const DEN: i64 = 9;

fn r(rng: &mut SeededRng) -> Scalar {
    random::nonzero_rational(rng, NUM, DEN)
}

fn pattern(rng: &mut SeededRng, mask: [bool; 4]) -> TangentParams {
    let mut f = |on: bool| if on { r(rng) } else { Scalar::zero() };
    let a = f(mask[0]);
    let b = f(mask[1]);
    let c = f(mask[2]);
    let d = f(mask[3]);
    [a, b, c, d]
}

fn s_single_a(rng: &mut SeededRng) -> TangentParams {
    pattern(rng, [true, false, false, false])
}
fn s_single_b(rng: &mut SeededRng) -> TangentParams {
    pattern(rng, [false, true, false, false])
}
fn s_single_c(rng: &mut SeededRng) -> TangentParams {
    pattern(rng, [false, false, true, false])
}
fn s0(rng: &mut SeededRng) -> TangentParams {
    pattern(rng, [false, false, false, true])
}
fn s1(rng: &mut SeededRng) -> TangentParams {
    pattern(rng, [true, true, false, false])
}
fn s2(rng: &mut SeededRng) -> TangentParams {
    pattern(rng, [true, false, true, false])
}
fn s3(rng: &mut SeededRng) -> TangentParams {
    pattern(rng, [false, true, true, false])
}
fn s4(rng: &mut SeededRng) -> TangentParams {
    pattern(rng, [true, false, false, true])
}
fn s5(rng: &mut SeededRng) -> TangentParams {
    let d = r(rng);
    [-(&d * two()), Scalar::zero(), Scalar::zero(), d]
}
fn s6(rng: &mut SeededRng) -> TangentParams {
    pattern(rng, [false, true, false, true])
}
fn s7(rng: &mut SeededRng) -> TangentParams {
    pattern(rng, [false, false, true, true])
}
fn s8(rng: &mut SeededRng) -> TangentParams {
    pattern(rng, [false, true, true, true])
}
fn s9(rng: &mut SeededRng) -> TangentParams {
    let b = r(rng);
    let d = r(rng);
    let c = -(&d * &d * two()) / &b;
    [Scalar::zero(), b, c, d]
}
fn s10(rng: &mut SeededRng) -> TangentParams {
    pattern(rng, [true, false, true, true])
}
fn s11(rng: &mut SeededRng) -> TangentParams {
    let c = r(rng);
    let d = r(rng);
    [-(&d * two()), Scalar::zero(), c, d]
}
fn s12(rng: &mut SeededRng) -> TangentParams {
    pattern(rng, [true, true, true, false])
}
fn s13(rng: &mut SeededRng) -> TangentParams {
    pattern(rng, [true, true, false, true])
}
fn s14(rng: &mut SeededRng) -> TangentParams {
    let b = r(rng);
    let d = r(rng);
    [-(&d * two()), b, Scalar::zero(), d]
}
fn s15(rng: &mut SeededRng) -> TangentParams {
    pattern(rng, [true, true, true, true])
}
// bc = −2d² − ad
fn s16(rng: &mut SeededRng) -> TangentParams {
    let a = r(rng);
    let b = r(rng);
    let d = r(rng);
    let c = -(&d * &d * two() + &a * &d) / &b;
    [a, b, c, d]
}
// bc = −d² − ad
fn s17(rng: &mut SeededRng) -> TangentParams {
    let a = r(rng);
    let b = r(rng);
    let d = r(rng);
    let c = -(&d * &d + &a * &d) / &b;
    [a, b, c, d]
}

const EX_HALF: &[(i64, i64)] = &[(0, 1), (1, 1), (1, 2)];
const EX_01: &[(i64, i64)] = &[(0, 1), (1, 1)];
const EX_012: &[(i64, i64)] = &[(0, 1), (1, 1), (2, 1)];

macro_rules! case {
    ($id:expr, $ex:expr, $g:ident, $s:ident, $d:ident) => {
        CaseSpec {
            id: $id,
            exclusions: $ex,
            guard: $g,
            sample: $s,
            decompose: $d,
        }
    };
}

/// All cases in selection order: the three single-coefficient cases, then
/// `0..=17`.
pub fn cases() -> Vec<CaseSpec> {
    use CaseId::Case;
    vec![
        case!(CaseId::SingleA, None, g_single_a, s_single_a, d_single_a),
        case!(CaseId::SingleB, None, g_single_b, s_single_b, d_single_b),
        case!(CaseId::SingleC, None, g_single_c, s_single_c, d_single_c),
        case!(Case(0), None, g0, s0, d0),
        case!(Case(1), None, g1, s1, d1),
        case!(Case(2), None, g2, s2, d2),
        case!(Case(3), None, g3, s3, d3),
        case!(Case(4), None, g4, s4, d4),
        case!(Case(5), Some(EX_HALF), g5, s5, d5),
        case!(Case(6), None, g6, s6, d6),
        case!(Case(7), None, g7, s7, d7),
        case!(Case(8), None, g8, s8, d8),
        case!(Case(9), Some(EX_HALF), g9, s9, d9),
        case!(Case(10), None, g10, s10, d10),
        case!(Case(11), Some(EX_01), g11, s11, d11),
        case!(Case(12), None, g12, s12, d12),
        case!(Case(13), None, g13, s13, d13),
        case!(Case(14), Some(EX_01), g14, s14, d14),
        case!(Case(15), None, g15, s15, d15),
        case!(Case(16), Some(EX_HALF), g16, s16, d16),
        case!(Case(17), Some(EX_012), g17, s17, d17),
    ]
}

pub fn case_spec(id: CaseId) -> Option<CaseSpec> {
    cases().into_iter().find(|c| c.id == id)
}

/// The first case (in selection order) whose guard holds.
pub fn classify(p: &TangentParams) -> Result<CaseSpec> {
    if scalar::is_zero_vec(p) {
        return Err(Error::AllZero);
    }
    cases()
        .into_iter()
        .find(|c| (c.guard)(p))
        .ok_or(Error::InvalidArgument("no decomposition case applies"))
}

fn random_k(spec: &CaseSpec, rng: &mut SeededRng) -> Scalar {
    loop {
        let k = random::nonzero_rational(rng, NUM, DEN);
        if !spec.is_excluded(&k) {
            return k;
        }
    }
}

fn resolve_k(spec: &CaseSpec, k: &KChoice) -> Result<Option<Scalar>> {
    if spec.exclusions.is_none() {
        return Ok(None);
    }
    let k = match k {
        KChoice::Default => spec.default_k(),
        KChoice::Given(k) => k.clone(),
        KChoice::Random(seed) => random_k(spec, &mut random::rng(*seed)),
    };
    if spec.is_excluded(&k) {
        return Err(Error::ExcludedParameter {
            case: spec.id.code(),
            k: format!("{k}"),
        });
    }
    Ok(Some(k))
}

fn run_case(spec: &CaseSpec, p: &TangentParams, k: Option<Scalar>) -> Result<Decomposition> {
    let kv = k.clone().unwrap_or_else(Scalar::one);
    let summands = (spec.decompose)(p, &kv);
    if summands.iter().any(|(c, pt)| c.is_zero() || !pt.is_valid()) {
        return Err(Error::DegenerateParams("a summand is not a flag point for this k"));
    }
    Ok(Decomposition {
        case: spec.id,
        k,
        summands,
    })
}

/// Selects the case for `(a, b, c, d)` and returns its decomposition. The
/// rank is the number of summands.
pub fn classify_and_decompose(p: &TangentParams, k: &KChoice) -> Result<Decomposition> {
    let spec = classify(p)?;
    let k = resolve_k(&spec, k)?;
    run_case(&spec, p, k)
}

fn check_identity(spec: &CaseSpec, p: &TangentParams, k: Option<Scalar>) -> Result<bool> {
    if !(spec.guard)(p) {
        return Err(Error::GuardViolated(spec.id.code()));
    }
    let target = tangent_element(p)?;
    let kv = k.unwrap_or_else(Scalar::one);
    let summands = (spec.decompose)(p, &kv);
    Ok(summands.iter().all(|(c, pt)| !c.is_zero() && pt.is_valid()) && weighted_sum(&summands) == target)
}

/// Exact check of one case: the weighted sum of the summands equals the
/// tangent element and every summand is a genuine flag point.
pub fn verify_identity(case: CaseId, p: &TangentParams, k: Option<&Scalar>) -> Result<bool> {
    let spec = case_spec(case).ok_or(Error::InvalidArgument("unknown case"))?;
    let k = match k {
        Some(k) => resolve_k(&spec, &KChoice::Given(k.clone()))?,
        None => resolve_k(&spec, &KChoice::Default)?,
    };
    check_identity(&spec, p, k)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzFailure {
    pub params: TangentParams,
    pub k: Option<Scalar>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseFuzz {
    pub case: CaseId,
    pub passed: usize,
    pub failed: usize,
    /// At most a few failing samples, for diagnosis.
    pub failures: Vec<FuzzFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzReport {
    pub seed: u64,
    pub samples_per_case: usize,
    pub cases: Vec<CaseFuzz>,
}

impl FuzzReport {
    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(|c| c.failed == 0)
    }

    pub fn total(&self) -> (usize, usize) {
        self.cases.iter().fold((0, 0), |(p, f), c| (p + c.passed, f + c.failed))
    }
}

const MAX_RECORDED_FAILURES: usize = 5;

/// Fuzzes the numbered cases `0..=17`.
pub fn fuzz_all(samples_per_case: usize, seed: u64) -> FuzzReport {
    let specs: Vec<CaseSpec> = cases().into_iter().filter(|c| c.id.number().is_some()).collect();
    fuzz_all_with(&specs, samples_per_case, seed)
}

/// Fuzzes the given cases. Each (case, sample) pair draws from its own
/// derived seed, so the report does not depend on evaluation order.
pub fn fuzz_all_with(specs: &[CaseSpec], samples_per_case: usize, seed: u64) -> FuzzReport {
    let mut out = Vec::with_capacity(specs.len());
    for spec in specs {
        let case_seed = random::derive_seed(seed, spec.id.code() as u64);
        let mut rep = CaseFuzz {
            case: spec.id,
            passed: 0,
            failed: 0,
            failures: Vec::new(),
        };
        for i in 0..samples_per_case {
            let mut rng = random::rng(random::derive_seed(case_seed, i as u64));
            // rejection sampling: the samplers impose zero patterns and
            // equalities, inequalities are rejected here
            let p = loop {
                let p = (spec.sample)(&mut rng);
                if (spec.guard)(&p) {
                    break p;
                }
            };
            let k = spec.exclusions.map(|_| random_k(spec, &mut rng));
            let (ok, reason) = match check_identity(spec, &p, k.clone()) {
                Ok(true) => (true, String::new()),
                Ok(false) => (false, String::from("identity or flag-point check failed")),
                Err(e) => (false, format!("{e}")),
            };
            if ok {
                rep.passed += 1;
            } else {
                rep.failed += 1;
                if rep.failures.len() < MAX_RECORDED_FAILURES {
                    rep.failures.push(FuzzFailure { params: p, k, reason });
                }
            }
        }
        out.push(rep);
    }
    FuzzReport {
        seed,
        samples_per_case,
        cases: out,
    }
}
