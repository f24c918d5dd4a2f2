//! Rank witnesses from lines through a point.
//!
//! Let `W = V(f)` be a hypersurface secant variety and `P ∉ W`. For a point
//! `Q ∈ X` the binary form `f(sP + tQ)` has `s^d` coefficient `f(P) ≠ 0`; any
//! root `[s:t] ≠ [0:1]` gives `R = sP + tQ ∈ W` and so `P = (R − tQ)/s`,
//! whose rank is at most `1 + rank(R)`.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::rank_exact;
use crate::poly::{eval_poly, MultiPoly};
use crate::random::{self, SeededRng};
use crate::roots::{self, Root};
use crate::scalar::{self, Scalar};
use crate::varieties::{self, known_hypersurface_equation, ParamPoint, VarietyFamily};

/// Residual accepted when a decomposition uses a numeric root.
pub const DECOMPOSITION_TOLERANCE: f64 = 1e-9;

const PARAM_BOUND: i64 = 10;

/// Coefficients of `f(sP + tQ)`: `coeffs[i]` multiplies `s^{d−i} t^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineRestriction {
    pub coeffs: Vec<Scalar>,
}

impl LineRestriction {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// A secondary intersection `[s:t]`, normalized to `s = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Intersection {
    pub t: Root,
    pub multiplicity: usize,
}

pub fn restrict_to_line(f: &MultiPoly, p: &[Scalar], q: &[Scalar]) -> Result<LineRestriction> {
    let n = f.num_vars();
    for x in [p, q] {
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: x.len(),
            });
        }
    }
    let d = f
        .homogeneous_degree()
        .ok_or(Error::InvalidArgument("equation must be homogeneous and nonzero"))?;
    if scalar::is_zero_vec(p) || scalar::is_zero_vec(q) || scalar::proportional(p, q) {
        return Err(Error::ProportionalPoints);
    }
    let rows: Vec<Vec<Scalar>> = p
        .iter()
        .zip(q)
        .map(|(a, b)| alloc::vec![a.clone(), b.clone()])
        .collect();
    let g = f.linear_substitute(&rows, 2)?;
    let coeffs = (0..=d).map(|i| g.coefficient(&[d - i, i])).collect();
    Ok(LineRestriction { coeffs })
}

/// Roots `[s:t] ≠ [0:1]` of the restriction, as `t` with `s = 1`.
pub fn secondary_intersections(lr: &LineRestriction) -> Result<Vec<Intersection>> {
    if lr.coeffs.first().is_none_or(Zero::is_zero) {
        return Err(Error::PrecondViolated("f(P) must be nonzero"));
    }
    let found: Vec<Intersection> = roots::roots(&lr.coeffs)
        .into_iter()
        .map(|(t, multiplicity)| Intersection { t, multiplicity })
        .collect();
    if found.is_empty() {
        return Err(Error::NoSecondaryIntersection);
    }
    Ok(found)
}

/// The three hypersurfaces with a known equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypersurfaceModel {
    /// `σ_2(F(0,1;2))`, the determinant on traceless matrices.
    Flag,
    /// `Gr(2,4)` itself, the Klein quadric.
    Klein,
    /// `σ_2(X_{2,2})`, the symmetric determinant.
    Sym2,
}

impl HypersurfaceModel {
    pub fn family(self) -> VarietyFamily {
        match self {
            Self::Flag => VarietyFamily::FlagAdjoint3,
            Self::Klein => VarietyFamily::Grassmann { k: 2, n: 4 },
            Self::Sym2 => VarietyFamily::Veronese { n: 2, d: 2 },
        }
    }

    /// The secant index whose variety the equation cuts out.
    pub fn sigma(self) -> usize {
        match self {
            Self::Klein => 1,
            Self::Flag | Self::Sym2 => 2,
        }
    }

    pub fn equation(self) -> MultiPoly {
        known_hypersurface_equation(&self.family(), self.sigma()).expect("supported hypersurface")
    }

    /// Number of coordinates of ambient points (equation coordinates).
    pub fn num_coords(self) -> usize {
        match self {
            Self::Flag => 8,
            Self::Klein | Self::Sym2 => 6,
        }
    }

    /// Equation coordinates of the variety point with parameters `q`.
    pub fn point(self, q: &ParamPoint) -> Result<Vec<Scalar>> {
        let fam = self.family();
        varieties::equation_coords(&fam, &fam.embed(q)?)
    }

    /// Rank of a point `R` on the hypersurface: its matrix rank for the
    /// determinantal cases, 1 on the Klein quadric.
    pub fn rank_estimate(self, r: &[Scalar]) -> Result<usize> {
        match self {
            Self::Flag => Ok(rank_exact(&varieties::matrix3(&varieties::flag_unchart(r)?))),
            Self::Sym2 => Ok(rank_exact(&varieties::matrix3(&varieties::sym2_matrix(r)?))),
            Self::Klein => {
                if scalar::is_zero_vec(r) || !eval_poly(&self.equation(), r)?.is_zero() {
                    return Err(Error::InvalidArgument("point is not on the Klein quadric"));
                }
                Ok(1)
            }
        }
    }

    fn rank_estimate_numeric(self, r: &[Complex64]) -> usize {
        match self {
            Self::Klein => 1,
            Self::Flag | Self::Sym2 => {
                let m = match self {
                    Self::Flag => {
                        let mut m = r.to_vec();
                        m.push(-(r[0] + r[4]));
                        m
                    }
                    _ => {
                        let h = |x: Complex64| x / 2.0;
                        alloc::vec![r[0], h(r[1]), h(r[2]), h(r[1]), r[3], h(r[4]), h(r[2]), h(r[4]), r[5]]
                    }
                };
                let scale = m.iter().map(|x| x.norm()).fold(0.0, f64::max).max(1.0);
                let minors_vanish = (0..3).all(|i1| {
                    (i1 + 1..3).all(|i2| {
                        (0..3).all(|j1| {
                            (j1 + 1..3).all(|j2| {
                                let v = m[3 * i1 + j1] * m[3 * i2 + j2] - m[3 * i1 + j2] * m[3 * i2 + j1];
                                v.norm() <= DECOMPOSITION_TOLERANCE * scale * scale
                            })
                        })
                    })
                });
                if minors_vanish {
                    1
                } else {
                    2
                }
            }
        }
    }

    fn random_q(self, rng: &mut SeededRng) -> (ParamPoint, Vec<Scalar>) {
        let fam = self.family();
        loop {
            let qp = fam.random_param(rng, PARAM_BOUND);
            if let Ok(q) = self.point(&qp) {
                return (qp, q);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Exactness {
    Exact,
    /// The root was irrational; `r_numeric` holds `R` and `residual` the
    /// largest coordinate error of `αQ + βR − P`.
    NumericWithResidual {
        tolerance: f64,
        residual: f64,
        r_numeric: Vec<Complex64>,
    },
}

/// `P = α·Q + β·R` with `Q ∈ X` and `f(R) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessDecomposition {
    pub model: HypersurfaceModel,
    pub p: Vec<Scalar>,
    pub q: Vec<Scalar>,
    pub q_param: ParamPoint,
    /// Exact `R`; for numeric roots this holds the rational part
    /// `P + Re(t)·Q` only and [`Exactness`] carries the true value.
    pub r: Vec<Scalar>,
    pub alpha: Scalar,
    pub beta: Scalar,
    pub rank_bound: usize,
    pub exactness: Exactness,
    /// Tries used, including the successful one.
    pub tries: usize,
    /// Directions `Q` whose line met the hypersurface only at `Q`.
    pub degenerate: usize,
}

impl WitnessDecomposition {
    /// Re-checks the decomposition from scratch.
    pub fn verify(&self) -> Result<bool> {
        if self.model.point(&self.q_param)? != self.q {
            return Ok(false);
        }
        match &self.exactness {
            Exactness::Exact => {
                let sum: Vec<Scalar> = self
                    .q
                    .iter()
                    .zip(&self.r)
                    .map(|(q, r)| &self.alpha * q + &self.beta * r)
                    .collect();
                Ok(sum == self.p && eval_poly(&self.model.equation(), &self.r)?.is_zero())
            }
            Exactness::NumericWithResidual {
                residual, tolerance, ..
            } => Ok(residual <= tolerance),
        }
    }
}

fn check_p(model: HypersurfaceModel, p: &[Scalar]) -> Result<MultiPoly> {
    if p.len() != model.num_coords() {
        return Err(Error::DimensionMismatch {
            expected: model.num_coords(),
            found: p.len(),
        });
    }
    let f = model.equation();
    if eval_poly(&f, p)?.is_zero() {
        return Err(Error::PrecondViolated("P lies on the hypersurface"));
    }
    Ok(f)
}

fn decompose_along(
    model: HypersurfaceModel,
    f: &MultiPoly,
    p: &[Scalar],
    q_param: ParamPoint,
    q: Vec<Scalar>,
) -> Result<WitnessDecomposition> {
    let lr = restrict_to_line(f, p, &q)?;
    let found = secondary_intersections(&lr)?;
    // prefer exact roots; `roots` lists them first
    let first = found.into_iter().next().expect("nonempty");
    match first.t {
        Root::Exact(t) => {
            let r: Vec<Scalar> = p.iter().zip(&q).map(|(a, b)| a + &t * b).collect();
            let rank = model.rank_estimate(&r)?;
            Ok(WitnessDecomposition {
                model,
                p: p.to_vec(),
                q,
                q_param,
                r,
                alpha: -t,
                beta: Scalar::one(),
                rank_bound: 1 + rank,
                exactness: Exactness::Exact,
                tries: 1,
                degenerate: 0,
            })
        }
        Root::Numeric(t) => {
            let residual_root = roots::relative_residual(&lr.coeffs, t);
            if residual_root > roots::ROOT_TOLERANCE {
                return Err(Error::NoSecondaryIntersection);
            }
            let pf: Vec<Complex64> = p.iter().map(|x| Complex64::new(scalar::to_f64(x), 0.0)).collect();
            let qf: Vec<Complex64> = q.iter().map(|x| Complex64::new(scalar::to_f64(x), 0.0)).collect();
            let rn: Vec<Complex64> = pf.iter().zip(&qf).map(|(a, b)| a + t * b).collect();
            let residual = pf
                .iter()
                .zip(&qf)
                .zip(&rn)
                .map(|((pp, qq), rr)| (-t * qq + rr - pp).norm())
                .fold(0.0, f64::max);
            let t_re = Scalar::from_float(t.re).unwrap_or_else(Scalar::zero);
            let r: Vec<Scalar> = p.iter().zip(&q).map(|(a, b)| a + &t_re * b).collect();
            Ok(WitnessDecomposition {
                model,
                p: p.to_vec(),
                q,
                q_param,
                r,
                alpha: -t_re,
                beta: Scalar::one(),
                rank_bound: 1 + model.rank_estimate_numeric(&rn),
                exactness: Exactness::NumericWithResidual {
                    tolerance: DECOMPOSITION_TOLERANCE,
                    residual,
                    r_numeric: rn,
                },
                tries: 1,
                degenerate: 0,
            })
        }
    }
}

/// Decomposition along the line through `P` and the given variety point.
pub fn witness_along(model: HypersurfaceModel, p: &[Scalar], q_param: &ParamPoint) -> Result<WitnessDecomposition> {
    let f = check_p(model, p)?;
    let q = model.point(q_param)?;
    decompose_along(model, &f, p, q_param.clone(), q)
}

/// Samples variety points `Q` until the line `PQ` meets the hypersurface
/// again. Try `i` uses the stream `derive_seed(seed, i)`. Failure after
/// `max_tries` is inconclusive, not a rank statement.
pub fn rank_witness(
    model: HypersurfaceModel,
    p: &[Scalar],
    seed: u64,
    max_tries: usize,
) -> Result<WitnessDecomposition> {
    let f = check_p(model, p)?;
    let mut degenerate = 0;
    for i in 0..max_tries {
        let mut rng = random::rng(random::derive_seed(seed, i as u64));
        let (qp, q) = model.random_q(&mut rng);
        match decompose_along(model, &f, p, qp, q) {
            Ok(mut w) => {
                w.tries = i + 1;
                w.degenerate = degenerate;
                return Ok(w);
            }
            Err(Error::NoSecondaryIntersection) => degenerate += 1,
            Err(e) => return Err(e),
        }
    }
    Err(Error::WitnessNotFound {
        tries: max_tries,
        degenerate,
    })
}

/// True when the `s^{d−1}t` coefficient of `f(sP + tQ)` is nonzero for at
/// least one of `sample_count` points `Q` drawn by `sample`.
pub fn check_line_obstruction<F>(
    f: &MultiPoly,
    p: &[Scalar],
    sample_count: usize,
    seed: u64,
    mut sample: F,
) -> Result<bool>
where
    F: FnMut(&mut SeededRng) -> Vec<Scalar>,
{
    if eval_poly(f, p)?.is_zero() {
        return Err(Error::PrecondViolated("f(P) must be nonzero"));
    }
    for i in 0..sample_count {
        let mut rng = random::rng(random::derive_seed(seed, i as u64));
        let q = sample(&mut rng);
        match restrict_to_line(f, p, &q) {
            Ok(lr) if lr.coeffs.len() > 1 && !lr.coeffs[1].is_zero() => return Ok(true),
            Ok(_) | Err(Error::ProportionalPoints) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(false)
}

/// [`check_line_obstruction`] with `Q` sampled from the model's variety.
pub fn check_obstruction(model: HypersurfaceModel, p: &[Scalar], sample_count: usize, seed: u64) -> Result<bool> {
    let f = model.equation();
    check_line_obstruction(&f, p, sample_count, seed, |rng| model.random_q(rng).1)
}

/// A random point off the hypersurface with entries in `[-bound, bound]`
/// (for the flag model: a traceless matrix in chart coordinates).
pub fn random_point_off(model: HypersurfaceModel, rng: &mut SeededRng, bound: i64) -> Vec<Scalar> {
    let f = model.equation();
    loop {
        let p = random::int_vector(rng, model.num_coords(), bound);
        if !eval_poly(&f, &p).map(|v| v.is_zero()).unwrap_or(true) {
            return p;
        }
    }
}

/// Human-readable label.
pub fn model_name(model: HypersurfaceModel) -> alloc::string::String {
    format!("{}", model.family())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ints, ratio};
    use crate::varieties::{flag_chart, unit};

    #[test]
    fn pure_power_restriction() {
        let f = MultiPoly::var(3, 0).pow(3);
        let lr = restrict_to_line(&f, &ints(&[1, 0, 0]), &ints(&[0, 1, 0])).unwrap();
        assert_eq!(lr.coeffs, ints(&[1, 0, 0, 0]));
    }

    #[test]
    fn flag_restriction_worked_example() {
        let f = HypersurfaceModel::Flag.equation();
        let p = flag_chart(&ints(&[1, 0, 0, 0, 1, 0, 0, 0, -2])).unwrap();
        let q = flag_chart(&ints(&[1, 0, -1, 0, 0, 0, 1, 0, -1])).unwrap();
        let lr = restrict_to_line(&f, &p, &q).unwrap();
        assert_eq!(lr.coeffs, ints(&[-2, -3, 0, 0]));
        let roots = secondary_intersections(&lr).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].t, Root::Exact(ratio(-2, 3)));
        assert_eq!(roots[0].multiplicity, 1);
    }

    #[test]
    fn klein_degenerate_direction() {
        let f = HypersurfaceModel::Klein.equation();
        let p = ints(&[1, 0, 0, 0, 0, 1]);
        let q = ints(&[0, 1, 0, 0, 0, 0]);
        let lr = restrict_to_line(&f, &p, &q).unwrap();
        assert_eq!(lr.coeffs, ints(&[1, 0, 0]));
        assert_eq!(secondary_intersections(&lr), Err(Error::NoSecondaryIntersection));
    }

    #[test]
    fn linear_fixture() {
        let lr = LineRestriction { coeffs: ints(&[1, 1]) };
        let r = secondary_intersections(&lr).unwrap();
        assert_eq!(r[0].t, Root::Exact(int(-1)));
    }

    #[test]
    fn proportional_points_rejected() {
        let f = HypersurfaceModel::Klein.equation();
        let p = ints(&[1, 0, 0, 0, 0, 1]);
        let q = ints(&[2, 0, 0, 0, 0, 2]);
        assert_eq!(restrict_to_line(&f, &p, &q), Err(Error::ProportionalPoints));
    }

    #[test]
    fn worked_flag_witness() {
        let p = flag_chart(&ints(&[1, 0, 0, 0, 1, 0, 0, 0, -2])).unwrap();
        let qp = ParamPoint::Flag {
            v1: ints(&[1, 0, 1]),
            v2: ints(&[0, 1, 0]),
        };
        let w = witness_along(HypersurfaceModel::Flag, &p, &qp).unwrap();
        assert!(w.verify().unwrap());
        assert_eq!(w.rank_bound, 3);
        let r = varieties::flag_unchart(&w.r).unwrap();
        assert!(scalar::proportional(&r, &ints(&[1, 0, 2, 0, 3, 0, -2, 0, -4])));
    }

    #[test]
    fn klein_witness_from_coordinate_plane() {
        let p = ints(&[1, 0, 0, 0, 0, 1]);
        let qp = ParamPoint::Grassmann(alloc::vec![unit(4, 0), unit(4, 1)]);
        let w = witness_along(HypersurfaceModel::Klein, &p, &qp).unwrap();
        assert_eq!(w.r, ints(&[0, 0, 0, 0, 0, 1]));
        assert_eq!(w.rank_bound, 2);
        assert!(w.verify().unwrap());
    }

    #[test]
    fn random_witnesses() {
        let mut rng = random::rng(3);
        for model in [
            HypersurfaceModel::Flag,
            HypersurfaceModel::Klein,
            HypersurfaceModel::Sym2,
        ] {
            for i in 0..20 {
                let p = random_point_off(model, &mut rng, 20);
                let w = rank_witness(model, &p, i, 25).unwrap();
                assert!(w.verify().unwrap());
                assert_eq!(w.exactness, Exactness::Exact);
                let expected = if model == HypersurfaceModel::Klein { 2 } else { 3 };
                assert!(w.rank_bound <= expected);
                if model == HypersurfaceModel::Klein {
                    assert_eq!(w.rank_bound, 2);
                }
            }
        }
    }

    #[test]
    fn scaling_keeps_rank_bound() {
        let mut rng = random::rng(4);
        let p = random_point_off(HypersurfaceModel::Flag, &mut rng, 20);
        let lp: Vec<Scalar> = p.iter().map(|x| x * ratio(-7, 3)).collect();
        let a = rank_witness(HypersurfaceModel::Flag, &p, 1, 25).unwrap();
        let b = rank_witness(HypersurfaceModel::Flag, &lp, 1, 25).unwrap();
        assert_eq!(a.rank_bound, b.rank_bound);
    }

    #[test]
    fn point_on_hypersurface_rejected() {
        let p = ints(&[1, 0, 0, 0, 0, 0]);
        assert!(matches!(
            rank_witness(HypersurfaceModel::Klein, &p, 0, 5),
            Err(Error::PrecondViolated(_))
        ));
    }

    #[test]
    fn obstruction_checks() {
        let p = flag_chart(&ints(&[1, 0, 0, 0, 1, 0, 0, 0, -2])).unwrap();
        assert!(check_obstruction(HypersurfaceModel::Flag, &p, 50, 0).unwrap());
        let p = ints(&[1, 0, 0, 0, 0, 1]);
        assert!(check_obstruction(HypersurfaceModel::Klein, &p, 50, 0).unwrap());
        // x0³ with every sample on x0 = 0: the s²t coefficient is 3·x0(Q) = 0
        let f = MultiPoly::var(3, 0).pow(3);
        let r = check_line_obstruction(&f, &ints(&[1, 0, 0]), 50, 0, |rng| {
            let mut q = random::int_vector(rng, 3, 5);
            q[0] = Scalar::zero();
            if scalar::is_zero_vec(&q) {
                q[1] = int(1);
            }
            q
        })
        .unwrap();
        assert!(!r);
    }
}
