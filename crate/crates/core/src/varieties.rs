//! The four supported variety families.
//!
//! Coordinates:
//!
//! - Veronese `X_{n,d}`: coefficients of `l^d` on the pure-monomial basis
//!   (multinomial factors included), monomials of degree `d` in `n + 1`
//!   variables in graded-lexicographic order, `x0^d` first.
//! - Grassmann `Gr(k, n)` (affine `k`-planes in `K^n`): the `k × k` minors of
//!   the `n × k` column matrix `[w_1 … w_k]`, rows indexed by `k`-subsets in
//!   lexicographic order.
//! - Segre: the outer product, flattened row-major.
//! - `FlagAdjoint3`: the adjoint flag variety `F(0,1;2)` as rank-one traceless
//!   `3 × 3` matrices. A flag point `v1 ∧ v2 ⊗ v1` is sent to the matrix
//!   `v1 · (v1 × v2)^T`, i.e. `(u ∧ v) ⊗ w ↦ w · det(u | v | ·)`. The matrix is
//!   stored with its nine entries row-major; trace zero is an invariant of the
//!   image rather than a coordinate choice.
//!
//! Grassmannians are normalized with `k ≤ n − k` (Hodge duality).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::poly::{det_poly, MultiPoly};
use crate::random;
use crate::scalar::{self, Scalar};
use crate::tensor::Tensor3;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarietyFamily {
    /// `X_{n,d} ⊂ P(Sym^d K^{n+1})`, `n` the projective dimension of the source.
    Veronese { n: usize, d: usize },
    /// Affine `k`-planes in `K^n` under the Plücker embedding.
    Grassmann { k: usize, n: usize },
    /// `P^{a_1 - 1} × … × P^{a_m - 1}`, `dims = [a_1, …, a_m]`.
    Segre { dims: Vec<usize> },
    /// `F(0,1;2)` in the traceless `3 × 3` matrices.
    FlagAdjoint3,
}

/// Projective ambient dimension `N` and projective dimension of `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AmbientInfo {
    pub n: usize,
    pub dim_x: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamPoint {
    /// A linear form `l`, `n + 1` coordinates.
    Veronese(Vec<Scalar>),
    /// `k` spanning vectors of length `n`.
    Grassmann(Vec<Vec<Scalar>>),
    /// One vector per factor.
    Segre(Vec<Vec<Scalar>>),
    /// `v1 ∧ v2 ⊗ v1` with `v1, v2` independent.
    Flag { v1: Vec<Scalar>, v2: Vec<Scalar> },
}

/// Binomial coefficient as `u128`; `None` on overflow.
pub fn binomial_u128(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

fn binomial(n: usize, k: usize) -> usize {
    binomial_u128(n, k)
        .and_then(|v| usize::try_from(v).ok())
        .expect("binomial coefficient overflows usize")
}

impl VarietyFamily {
    pub fn veronese(n: usize, d: usize) -> Result<Self> {
        if n < 1 || d < 1 {
            return Err(Error::InvalidFamily("Veronese needs n >= 1 and d >= 1"));
        }
        Ok(Self::Veronese { n, d })
    }

    /// `Gr(k, n)`, normalized to `k ≤ n − k`.
    pub fn grassmann(k: usize, n: usize) -> Result<Self> {
        if k < 1 || k + 1 > n {
            return Err(Error::InvalidFamily("Grassmann needs 1 <= k <= n - 1"));
        }
        Ok(Self::Grassmann { k: k.min(n - k), n })
    }

    pub fn segre(dims: Vec<usize>) -> Result<Self> {
        if dims.len() < 2 || dims.iter().any(|&a| a < 2) {
            return Err(Error::InvalidFamily(
                "Segre needs at least two factors, each of dimension >= 2",
            ));
        }
        Ok(Self::Segre { dims })
    }

    pub fn flag_adjoint3() -> Self {
        Self::FlagAdjoint3
    }

    /// Checks the family invariants; used after deserialization.
    pub fn validate(&self) -> Result<Self> {
        match self {
            Self::Veronese { n, d } => Self::veronese(*n, *d),
            Self::Grassmann { k, n } => {
                let g = Self::grassmann(*k, *n)?;
                if g != *self {
                    return Err(Error::InvalidFamily("Grassmann must satisfy k <= n - k"));
                }
                Ok(g)
            }
            Self::Segre { dims } => Self::segre(dims.clone()),
            Self::FlagAdjoint3 => Ok(Self::FlagAdjoint3),
        }
    }

    pub fn ambient(&self) -> AmbientInfo {
        match self {
            Self::Veronese { n, d } => AmbientInfo {
                n: binomial(n + d, *d) - 1,
                dim_x: *n,
            },
            Self::Grassmann { k, n } => AmbientInfo {
                n: binomial(*n, *k) - 1,
                dim_x: k * (n - k),
            },
            Self::Segre { dims } => AmbientInfo {
                n: dims.iter().product::<usize>() - 1,
                dim_x: dims.iter().map(|a| a - 1).sum(),
            },
            Self::FlagAdjoint3 => AmbientInfo { n: 7, dim_x: 3 },
        }
    }

    /// Length of the coordinate vectors produced by [`embed`]. Equals
    /// `N + 1` except for the flag variety, which uses nine matrix entries
    /// for an eight-dimensional space.
    pub fn coord_len(&self) -> usize {
        match self {
            Self::FlagAdjoint3 => 9,
            _ => self.ambient().n + 1,
        }
    }

    /// True when `X` itself is a hypersurface of its span.
    pub fn is_hypersurface(&self) -> bool {
        let a = self.ambient();
        a.dim_x + 1 == a.n
    }

    pub fn random_param<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> ParamPoint {
        match self {
            Self::Veronese { n, .. } => ParamPoint::Veronese(random::int_vector(rng, n + 1, bound)),
            Self::Grassmann { k, n } => {
                ParamPoint::Grassmann((0..*k).map(|_| random::int_vector(rng, *n, bound)).collect())
            }
            Self::Segre { dims } => {
                ParamPoint::Segre(dims.iter().map(|&a| random::int_vector(rng, a, bound)).collect())
            }
            Self::FlagAdjoint3 => ParamPoint::Flag {
                v1: random::int_vector(rng, 3, bound),
                v2: random::int_vector(rng, 3, bound),
            },
        }
    }

    fn check_param(&self, p: &ParamPoint) -> Result<()> {
        let mismatch = |expected: usize, found: usize| Err(Error::DimensionMismatch { expected, found });
        match (self, p) {
            (Self::Veronese { n, .. }, ParamPoint::Veronese(l)) => {
                if l.len() != n + 1 {
                    return mismatch(n + 1, l.len());
                }
                if scalar::is_zero_vec(l) {
                    return Err(Error::DegenerateParams("zero linear form"));
                }
            }
            (Self::Grassmann { k, n }, ParamPoint::Grassmann(ws)) => {
                if ws.len() != *k {
                    return mismatch(*k, ws.len());
                }
                if let Some(w) = ws.iter().find(|w| w.len() != *n) {
                    return mismatch(*n, w.len());
                }
                let m = DenseMatrix::from_rows(*n, ws.clone())?;
                if m.rank() < *k {
                    return Err(Error::DegenerateParams("dependent spanning vectors"));
                }
            }
            (Self::Segre { dims }, ParamPoint::Segre(vs)) => {
                if vs.len() != dims.len() {
                    return mismatch(dims.len(), vs.len());
                }
                for (v, &a) in vs.iter().zip(dims) {
                    if v.len() != a {
                        return mismatch(a, v.len());
                    }
                    if scalar::is_zero_vec(v) {
                        return Err(Error::DegenerateParams("zero Segre factor"));
                    }
                }
            }
            (Self::FlagAdjoint3, ParamPoint::Flag { v1, v2 }) => {
                if v1.len() != 3 || v2.len() != 3 {
                    return mismatch(3, if v1.len() != 3 { v1.len() } else { v2.len() });
                }
                if scalar::is_zero_vec(&cross(v1, v2)) {
                    return Err(Error::DegenerateParams("flag vectors are parallel"));
                }
            }
            _ => return Err(Error::InvalidArgument("parameter point does not match the family")),
        }
        Ok(())
    }

    /// Homogeneous coordinates of the point of `X` given by `p`.
    pub fn embed(&self, p: &ParamPoint) -> Result<Vec<Scalar>> {
        self.check_param(p)?;
        Ok(match (self, p) {
            (Self::Veronese { n, d }, ParamPoint::Veronese(l)) => {
                let mut ls = vec![l.clone()];
                ls.extend(core::iter::repeat_n(l.clone(), d - 1));
                product_of_linear_forms(*n + 1, &ls)
            }
            (Self::Grassmann { k, n }, ParamPoint::Grassmann(ws)) => plucker(*k, *n, ws),
            (Self::Segre { .. }, ParamPoint::Segre(vs)) => outer_product(vs),
            (Self::FlagAdjoint3, ParamPoint::Flag { v1, v2 }) => flag_matrix(v1, v2),
            _ => unreachable!("checked by check_param"),
        })
    }

    /// Number of rows of [`tangent_cone_basis`].
    pub fn tangent_row_count(&self) -> usize {
        match self {
            Self::Veronese { n, .. } => n + 1,
            Self::Grassmann { k, n } => k * n,
            Self::Segre { dims } => dims.iter().sum(),
            Self::FlagAdjoint3 => 6,
        }
    }

    /// Generators of the affine cone over the tangent space at `p`. The rows
    /// span a space of dimension `dim X + 1` at every valid `p`.
    pub fn tangent_cone_basis(&self, p: &ParamPoint) -> Result<DenseMatrix> {
        self.check_param(p)?;
        let rows = match (self, p) {
            (Self::Veronese { n, d }, ParamPoint::Veronese(l)) => (0..=*n)
                .map(|i| {
                    let mut ls = vec![unit(n + 1, i)];
                    ls.extend(core::iter::repeat_n(l.clone(), d - 1));
                    product_of_linear_forms(n + 1, &ls)
                })
                .collect(),
            (Self::Grassmann { k, n }, ParamPoint::Grassmann(ws)) => {
                let mut rows = Vec::with_capacity(k * n);
                for slot in 0..*k {
                    for j in 0..*n {
                        let mut w = ws.clone();
                        w[slot] = unit(*n, j);
                        rows.push(plucker(*k, *n, &w));
                    }
                }
                rows
            }
            (Self::Segre { dims }, ParamPoint::Segre(vs)) => {
                let mut rows = Vec::new();
                for (slot, &a) in dims.iter().enumerate() {
                    for j in 0..a {
                        let mut v = vs.clone();
                        v[slot] = unit(a, j);
                        rows.push(outer_product(&v));
                    }
                }
                rows
            }
            (Self::FlagAdjoint3, ParamPoint::Flag { v1, v2 }) => {
                // d/dε of (v1 + εu)((v1 + εu) × v2)^T and v1 (v1 × (v2 + εw))^T
                let phi = cross(v1, v2);
                let mut rows = Vec::with_capacity(6);
                for j in 0..3 {
                    let u = unit(3, j);
                    let a = outer(&u, &phi);
                    let b = outer(v1, &cross(&u, v2));
                    rows.push(a.into_iter().zip(b).map(|(x, y)| x + y).collect());
                }
                for j in 0..3 {
                    rows.push(outer(v1, &cross(v1, &unit(3, j))));
                }
                rows
            }
            _ => unreachable!("checked by check_param"),
        };
        DenseMatrix::from_rows(self.coord_len(), rows)
    }
}

impl fmt::Display for VarietyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Veronese { n, d } => write!(f, "Veronese({n},{d})"),
            Self::Grassmann { k, n } => write!(f, "Grassmann({k},{n})"),
            Self::Segre { dims } => {
                write!(f, "Segre(")?;
                for (i, a) in dims.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Self::FlagAdjoint3 => write!(f, "FlagAdjoint3"),
        }
    }
}

pub fn unit(len: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); len];
    v[i] = Scalar::one();
    v
}

pub fn cross(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Row-major `a · b^T`.
pub fn outer(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// The matrix of the flag point `v1 ∧ v2 ⊗ v1`, row-major.
pub fn flag_matrix(v1: &[Scalar], v2: &[Scalar]) -> Vec<Scalar> {
    outer(v1, &cross(v1, v2))
}

/// The matrix of `(u ∧ v) ⊗ w`, row-major.
pub fn wedge_tensor_matrix(u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
    outer(w, &cross(u, v))
}

pub fn trace3(m: &[Scalar]) -> Scalar {
    &m[0] + &m[4] + &m[8]
}

/// Row-major square of a `3 × 3` matrix.
pub fn square3(m: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = Scalar::zero();
            for l in 0..3 {
                acc += &m[3 * i + l] * &m[3 * l + j];
            }
            out.push(acc);
        }
    }
    out
}

pub fn matrix3(m: &[Scalar]) -> DenseMatrix {
    DenseMatrix::new(3, 3, m.to_vec()).expect("nine entries")
}

fn outer_product(vs: &[Vec<Scalar>]) -> Vec<Scalar> {
    let mut acc = vec![Scalar::one()];
    for v in vs {
        acc = outer(&acc, v);
    }
    acc
}

/// Monomials of degree `d` in `vars` variables, graded-lex order
/// (`x0^d` first).
pub fn monomials(vars: usize, d: usize) -> Vec<Vec<u32>> {
    fn rec(vars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == vars {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(vars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if vars == 0 {
        return out;
    }
    rec(vars, d as u32, &mut Vec::with_capacity(vars), &mut out);
    out
}

/// Coefficients of `Π ls[i]` on the pure-monomial basis of degree `ls.len()`.
fn product_of_linear_forms(vars: usize, ls: &[Vec<Scalar>]) -> Vec<Scalar> {
    let mut poly = MultiPoly::constant(vars, Scalar::one());
    for l in ls {
        let mut lin = MultiPoly::zero(vars);
        for (i, c) in l.iter().enumerate() {
            lin = &lin + &MultiPoly::var(vars, i).scale(c);
        }
        poly = &poly * &lin;
    }
    monomials(vars, ls.len())
        .into_iter()
        .map(|e| poly.coefficient(&e))
        .collect()
}

/// Lexicographically ordered `k`-subsets of `0..n`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn plucker(k: usize, n: usize, ws: &[Vec<Scalar>]) -> Vec<Scalar> {
    subsets(n, k)
        .into_iter()
        .map(|rows| {
            let entries = rows
                .iter()
                .flat_map(|&r| ws.iter().map(move |w| w[r].clone()))
                .collect();
            DenseMatrix::new(k, k, entries)
                .and_then(|m| m.determinant())
                .expect("square minor")
        })
        .collect()
}

/// Converts a nine-entry traceless matrix to the eight coordinates used by
/// the flag hypersurface equation (`m33` dropped).
pub fn flag_chart(m: &[Scalar]) -> Result<Vec<Scalar>> {
    if m.len() != 9 {
        return Err(Error::DimensionMismatch {
            expected: 9,
            found: m.len(),
        });
    }
    if !trace3(m).is_zero() {
        return Err(Error::InvalidArgument("matrix is not traceless"));
    }
    Ok(m[..8].to_vec())
}

/// Inverse of [`flag_chart`]: restores `m33 = −m11 − m22`.
pub fn flag_unchart(c: &[Scalar]) -> Result<Vec<Scalar>> {
    if c.len() != 8 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            found: c.len(),
        });
    }
    let mut m = c.to_vec();
    m.push(-(&c[0] + &c[4]));
    Ok(m)
}

/// Coordinates of `v` in the variable space of
/// [`known_hypersurface_equation`] (only the flag family differs from the
/// embedding coordinates).
pub fn equation_coords(v: &VarietyFamily, embedded: &[Scalar]) -> Result<Vec<Scalar>> {
    match v {
        VarietyFamily::FlagAdjoint3 => flag_chart(embedded),
        _ => Ok(embedded.to_vec()),
    }
}

/// Inverse of [`equation_coords`].
pub fn embedding_coords(v: &VarietyFamily, coords: &[Scalar]) -> Result<Vec<Scalar>> {
    match v {
        VarietyFamily::FlagAdjoint3 => flag_unchart(coords),
        _ => Ok(coords.to_vec()),
    }
}

/// Symmetric matrix of a ternary quadric given in pure-monomial
/// coordinates `(x0², x0x1, x0x2, x1², x1x2, x2²)`.
pub fn sym2_matrix(c: &[Scalar]) -> Result<Vec<Scalar>> {
    if c.len() != 6 {
        return Err(Error::DimensionMismatch {
            expected: 6,
            found: c.len(),
        });
    }
    let half = |x: &Scalar| x / scalar::int(2);
    Ok(vec![
        c[0].clone(),
        half(&c[1]),
        half(&c[2]),
        half(&c[1]),
        c[3].clone(),
        half(&c[4]),
        half(&c[2]),
        half(&c[4]),
        c[5].clone(),
    ])
}

/// Inverse of [`sym2_matrix`]; errors if `m` is not symmetric.
pub fn sym2_coords(m: &[Scalar]) -> Result<Vec<Scalar>> {
    if m.len() != 9 {
        return Err(Error::DimensionMismatch {
            expected: 9,
            found: m.len(),
        });
    }
    if m[1] != m[3] || m[2] != m[6] || m[5] != m[7] {
        return Err(Error::InvalidArgument("matrix is not symmetric"));
    }
    let two = scalar::int(2);
    Ok(vec![
        m[0].clone(),
        &m[1] * &two,
        &m[2] * &two,
        m[4].clone(),
        &m[5] * &two,
        m[8].clone(),
    ])
}

/// Defining equation of `σ_s(v)` for the three supported hypersurfaces:
///
/// - `σ_2(X_{2,2})`: the symmetric `3 × 3` determinant in the six
///   monomial coordinates;
/// - `σ_1(Gr(2,4))`: the Klein quadric `p12 p34 − p13 p24 + p14 p23`;
/// - `σ_2(F(0,1;2))`: the determinant on the eight trace-zero coordinates.
pub fn known_hypersurface_equation(v: &VarietyFamily, s: usize) -> Result<MultiPoly> {
    match (v, s) {
        (VarietyFamily::Veronese { n: 2, d: 2 }, 2) => {
            let x: Vec<MultiPoly> = (0..6).map(|i| MultiPoly::var(6, i)).collect();
            let half = Scalar::new(1.into(), 2.into());
            let h = |p: &MultiPoly| p.scale(&half);
            let m = vec![
                vec![x[0].clone(), h(&x[1]), h(&x[2])],
                vec![h(&x[1]), x[3].clone(), h(&x[4])],
                vec![h(&x[2]), h(&x[4]), x[5].clone()],
            ];
            Ok(det_poly(&m))
        }
        (VarietyFamily::Grassmann { k: 2, n: 4 }, 1) => {
            // p12 p13 p14 p23 p24 p34 = x0..x5
            let x: Vec<MultiPoly> = (0..6).map(|i| MultiPoly::var(6, i)).collect();
            Ok(&(&(&x[0] * &x[5]) - &(&x[1] * &x[4])) + &(&x[2] * &x[3]))
        }
        (VarietyFamily::FlagAdjoint3, 2) => {
            let x: Vec<MultiPoly> = (0..8).map(|i| MultiPoly::var(8, i)).collect();
            let m33 = -&(&x[0] + &x[4]);
            let m = vec![
                vec![x[0].clone(), x[1].clone(), x[2].clone()],
                vec![x[3].clone(), x[4].clone(), x[5].clone()],
                vec![x[6].clone(), x[7].clone(), m33],
            ];
            Ok(det_poly(&m))
        }
        _ => Err(Error::NoKnownEquation {
            family: format!("{v}"),
            s,
        }),
    }
}

/// The `3 × 3 × 3` tensor
/// `e1⊗e1⊗e1 + e1⊗e3⊗e3 + e2⊗e2⊗(e1+e2) + e3⊗e3⊗e2 + e3⊗e2⊗e3`
/// (number 13 in the classification of `3 × 3 × 3` forms).
pub fn allums13() -> Tensor3 {
    let e = |i: usize| unit(3, i);
    let one = Scalar::one();
    let mut t = Tensor3::zeros([3, 3, 3]);
    let e1_plus_e2: Vec<Scalar> = e(0).iter().zip(e(1)).map(|(a, b)| a + b).collect();
    let terms: [(Vec<Scalar>, Vec<Scalar>, Vec<Scalar>); 5] = [
        (e(0), e(0), e(0)),
        (e(0), e(2), e(2)),
        (e(1), e(1), e1_plus_e2),
        (e(2), e(2), e(1)),
        (e(2), e(1), e(2)),
    ];
    for (u, v, w) in &terms {
        t.add_outer(&one, u, v, w).expect("3x3x3");
    }
    t
}

/// Display name used in reports, e.g. `Gr(P^2,P^6)` for `Grassmann(3,7)`.
pub fn projective_name(v: &VarietyFamily) -> String {
    match v {
        VarietyFamily::Veronese { n, d } => format!("X_{{{n},{d}}}"),
        VarietyFamily::Grassmann { k, n } => format!("Gr(P^{},P^{})", k - 1, n - 1),
        VarietyFamily::Segre { .. } => format!("{v}"),
        VarietyFamily::FlagAdjoint3 => String::from("F(0,1;2)"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rank_exact;
    use crate::poly::eval_poly;
    use crate::scalar::{int, ints};

    #[test]
    fn ambient_dimensions() {
        let v = VarietyFamily::veronese(2, 3).unwrap();
        assert_eq!(v.ambient(), AmbientInfo { n: 9, dim_x: 2 });
        let g = VarietyFamily::grassmann(3, 7).unwrap();
        assert_eq!(g.ambient(), AmbientInfo { n: 34, dim_x: 12 });
        assert_eq!(VarietyFamily::FlagAdjoint3.ambient(), AmbientInfo { n: 7, dim_x: 3 });
        let s = VarietyFamily::segre(vec![3, 3, 3]).unwrap();
        assert_eq!(s.ambient(), AmbientInfo { n: 26, dim_x: 6 });
    }

    #[test]
    fn grassmann_normalizes_by_duality() {
        assert_eq!(
            VarietyFamily::grassmann(9, 17).unwrap(),
            VarietyFamily::Grassmann { k: 8, n: 17 }
        );
        assert!(VarietyFamily::grassmann(0, 4).is_err());
        assert!(VarietyFamily::grassmann(4, 4).is_err());
        assert!(VarietyFamily::Grassmann { k: 5, n: 7 }.validate().is_err());
    }

    #[test]
    fn invalid_families() {
        assert!(VarietyFamily::veronese(0, 2).is_err());
        assert!(VarietyFamily::veronese(2, 0).is_err());
        assert!(VarietyFamily::segre(vec![3]).is_err());
        assert!(VarietyFamily::segre(vec![3, 1]).is_err());
    }

    #[test]
    fn veronese_embedding_uses_multinomial_coefficients() {
        let v = VarietyFamily::veronese(1, 2).unwrap();
        let p = ParamPoint::Veronese(ints(&[1, 1]));
        assert_eq!(v.embed(&p).unwrap(), ints(&[1, 2, 1]));
        let v = VarietyFamily::veronese(2, 2).unwrap();
        // (x0 + 2 x1 - x2)^2 in order x0², x0x1, x0x2, x1², x1x2, x2²
        let p = ParamPoint::Veronese(ints(&[1, 2, -1]));
        assert_eq!(v.embed(&p).unwrap(), ints(&[1, 4, -2, 4, -4, 1]));
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let m = monomials(3, 2);
        assert_eq!(
            m,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
        assert_eq!(monomials(5, 4).len(), 70);
    }

    #[test]
    fn plucker_of_coordinate_plane() {
        let g = VarietyFamily::grassmann(2, 4).unwrap();
        let p = ParamPoint::Grassmann(vec![unit(4, 0), unit(4, 1)]);
        assert_eq!(g.embed(&p).unwrap(), ints(&[1, 0, 0, 0, 0, 0]));
        let p = ParamPoint::Grassmann(vec![unit(4, 1), unit(4, 0)]);
        assert_eq!(g.embed(&p).unwrap(), ints(&[-1, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn subsets_lex() {
        assert_eq!(
            subsets(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(subsets(7, 3).len(), 35);
    }

    #[test]
    fn flag_embedding_of_e1_plus_e3_and_e2() {
        let p = ParamPoint::Flag {
            v1: ints(&[1, 0, 1]),
            v2: ints(&[0, 1, 0]),
        };
        let m = VarietyFamily::FlagAdjoint3.embed(&p).unwrap();
        // −(E11 − E13 + E31 − E33) under w·(u×v)^T
        assert_eq!(m, ints(&[-1, 0, 1, 0, 0, 0, -1, 0, 1]));
        let spec_form = ints(&[1, 0, -1, 0, 0, 0, 1, 0, -1]);
        assert!(scalar::proportional(&m, &spec_form));
    }

    #[test]
    fn degenerate_params_rejected() {
        let p = ParamPoint::Flag {
            v1: ints(&[1, 2, 3]),
            v2: ints(&[2, 4, 6]),
        };
        assert!(matches!(
            VarietyFamily::FlagAdjoint3.embed(&p),
            Err(Error::DegenerateParams(_))
        ));
        let g = VarietyFamily::grassmann(2, 4).unwrap();
        let p = ParamPoint::Grassmann(vec![ints(&[1, 2, 0, 0]), ints(&[2, 4, 0, 0])]);
        assert!(matches!(g.embed(&p), Err(Error::DegenerateParams(_))));
        let v = VarietyFamily::veronese(2, 2).unwrap();
        assert!(matches!(
            v.embed(&ParamPoint::Veronese(ints(&[0, 0, 0]))),
            Err(Error::DegenerateParams(_))
        ));
        assert!(v.embed(&ParamPoint::Veronese(ints(&[1, 0]))).is_err());
    }

    fn families() -> Vec<VarietyFamily> {
        vec![
            VarietyFamily::veronese(2, 3).unwrap(),
            VarietyFamily::veronese(1, 4).unwrap(),
            VarietyFamily::veronese(3, 2).unwrap(),
            VarietyFamily::grassmann(2, 4).unwrap(),
            VarietyFamily::grassmann(3, 7).unwrap(),
            VarietyFamily::grassmann(2, 5).unwrap(),
            VarietyFamily::segre(vec![3, 3, 3]).unwrap(),
            VarietyFamily::segre(vec![2, 4]).unwrap(),
            VarietyFamily::FlagAdjoint3,
        ]
    }

    #[test]
    fn tangent_rank_is_dim_plus_one() {
        let mut rng = random::rng(11);
        for v in families() {
            for _ in 0..5 {
                let p = v.random_param(&mut rng, 50);
                let t = v.tangent_cone_basis(&p).unwrap();
                assert_eq!(t.rows(), v.tangent_row_count());
                assert_eq!(rank_exact(&t), v.ambient().dim_x + 1, "{v}");
            }
        }
    }

    #[test]
    fn embedding_lies_in_tangent_cone() {
        let mut rng = random::rng(12);
        for v in families() {
            let p = v.random_param(&mut rng, 20);
            let t = v.tangent_cone_basis(&p).unwrap();
            let x = DenseMatrix::from_rows(v.coord_len(), vec![v.embed(&p).unwrap()]).unwrap();
            assert_eq!(rank_exact(&t.vstack(&x).unwrap()), rank_exact(&t), "{v}");
        }
    }

    #[test]
    fn embedding_is_homogeneous() {
        let mut rng = random::rng(13);
        let lambda = int(-3);
        for v in families() {
            let p = v.random_param(&mut rng, 20);
            let scaled = match &p {
                ParamPoint::Veronese(l) => ParamPoint::Veronese(l.iter().map(|x| x * &lambda).collect()),
                ParamPoint::Grassmann(ws) => {
                    let mut ws = ws.clone();
                    ws[0] = ws[0].iter().map(|x| x * &lambda).collect();
                    ParamPoint::Grassmann(ws)
                }
                ParamPoint::Segre(vs) => {
                    let mut vs = vs.clone();
                    let last = vs.len() - 1;
                    vs[last] = vs[last].iter().map(|x| x * &lambda).collect();
                    ParamPoint::Segre(vs)
                }
                ParamPoint::Flag { v1, v2 } => ParamPoint::Flag {
                    v1: v1.iter().map(|x| x * &lambda).collect(),
                    v2: v2.clone(),
                },
            };
            assert!(scalar::proportional(&v.embed(&p).unwrap(), &v.embed(&scaled).unwrap()));
        }
    }

    #[test]
    fn flag_points_are_traceless_rank_one() {
        let mut rng = random::rng(14);
        for _ in 0..100 {
            let p = VarietyFamily::FlagAdjoint3.random_param(&mut rng, 30);
            let m = VarietyFamily::FlagAdjoint3.embed(&p).unwrap();
            assert!(trace3(&m).is_zero());
            assert_eq!(rank_exact(&matrix3(&m)), 1);
        }
    }

    fn random_sum(v: &VarietyFamily, terms: usize, rng: &mut random::SeededRng) -> Vec<Scalar> {
        let mut acc = vec![Scalar::zero(); v.coord_len()];
        for _ in 0..terms {
            let p = v.random_param(rng, 10);
            for (a, b) in acc.iter_mut().zip(v.embed(&p).unwrap()) {
                *a += b;
            }
        }
        equation_coords(v, &acc).unwrap()
    }

    #[test]
    fn hypersurface_equations_vanish_on_secants() {
        let mut rng = random::rng(15);
        let cases = [
            (VarietyFamily::veronese(2, 2).unwrap(), 2),
            (VarietyFamily::grassmann(2, 4).unwrap(), 1),
            (VarietyFamily::FlagAdjoint3, 2),
        ];
        for (v, s) in &cases {
            let f = known_hypersurface_equation(v, *s).unwrap();
            for _ in 0..100 {
                let x = random_sum(v, *s, &mut rng);
                assert!(eval_poly(&f, &x).unwrap().is_zero(), "{v}");
            }
            let nonzero = (0..20).any(|_| {
                let x = random_sum(v, s + 1, &mut rng);
                !eval_poly(&f, &x).unwrap().is_zero()
            });
            assert!(nonzero, "{v}");
        }
    }

    #[test]
    fn equation_shapes() {
        let f = known_hypersurface_equation(&VarietyFamily::veronese(2, 2).unwrap(), 2).unwrap();
        assert_eq!((f.num_vars(), f.homogeneous_degree()), (6, Some(3)));
        let f = known_hypersurface_equation(&VarietyFamily::grassmann(2, 4).unwrap(), 1).unwrap();
        assert_eq!((f.num_vars(), f.homogeneous_degree()), (6, Some(2)));
        let f = known_hypersurface_equation(&VarietyFamily::FlagAdjoint3, 2).unwrap();
        assert_eq!((f.num_vars(), f.homogeneous_degree()), (8, Some(3)));
        assert!(matches!(
            known_hypersurface_equation(&VarietyFamily::grassmann(3, 7).unwrap(), 3),
            Err(Error::NoKnownEquation { .. })
        ));
        assert!(known_hypersurface_equation(&VarietyFamily::veronese(2, 3).unwrap(), 3).is_err());
    }

    #[test]
    fn klein_quadric_at_sum_of_coordinate_planes() {
        let f = known_hypersurface_equation(&VarietyFamily::grassmann(2, 4).unwrap(), 1).unwrap();
        // e1∧e2 + e3∧e4: only p12 = p34 = 1
        assert_eq!(eval_poly(&f, &ints(&[1, 0, 0, 0, 0, 1])).unwrap(), int(1));
    }

    #[test]
    fn flag_determinant_at_diagonal() {
        let f = known_hypersurface_equation(&VarietyFamily::FlagAdjoint3, 2).unwrap();
        let p = flag_chart(&ints(&[1, 0, 0, 0, 1, 0, 0, 0, -2])).unwrap();
        assert_eq!(eval_poly(&f, &p).unwrap(), int(-2));
    }

    #[test]
    fn klein_vanishes_exactly_on_decomposable() {
        let f = known_hypersurface_equation(&VarietyFamily::grassmann(2, 4).unwrap(), 1).unwrap();
        let g = VarietyFamily::grassmann(2, 4).unwrap();
        let mut rng = random::rng(16);
        for _ in 0..100 {
            let p = g.random_param(&mut rng, 30);
            assert!(eval_poly(&f, &g.embed(&p).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn allums_entries() {
        let t = allums13();
        assert_eq!(*t.get(0, 0, 0), int(1));
        assert_eq!(*t.get(1, 1, 0), int(1));
        assert_eq!(*t.get(1, 1, 1), int(1));
        let support = [(0, 0, 0), (0, 2, 2), (1, 1, 0), (1, 1, 1), (2, 2, 1), (2, 1, 2)];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let expected = if support.contains(&(i, j, k)) { 1 } else { 0 };
                    assert_eq!(*t.get(i, j, k), int(expected), "({i},{j},{k})");
                }
            }
        }
    }

    #[test]
    fn sym2_round_trip() {
        let c = ints(&[1, 4, -2, 4, -4, 1]);
        assert_eq!(sym2_coords(&sym2_matrix(&c).unwrap()).unwrap(), c);
        assert!(sym2_coords(&ints(&[1, 2, 3, 4, 5, 6, 7, 8, 9])).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_u128(17, 8), Some(24310));
        assert_eq!(binomial_u128(3, 5), Some(0));
        assert_eq!(binomial_u128(500, 250), None);
    }
}
