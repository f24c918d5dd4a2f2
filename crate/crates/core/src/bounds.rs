//! Maximum-rank bounds and per-variety comparison reports.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::secant::{actual_dim, generic_rank, ExceptionTable};
use crate::varieties::{binomial_u128, VarietyFamily};

/// One literature value: the maximum rank on `σ_sigma(family)`, or the
/// maximum rank on the whole ambient space when `sigma` is `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnownFact {
    pub family: VarietyFamily,
    pub sigma: Option<usize>,
    pub value: usize,
    pub is_upper_bound_only: bool,
    pub citation: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KnownRankFacts {
    facts: Vec<KnownFact>,
}

impl KnownRankFacts {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a fact; rejects duplicates and values that would make
    /// `r_max,s` decrease in `s`.
    pub fn insert(&mut self, mut f: KnownFact) -> Result<()> {
        f.family = f.family.validate()?;
        if f.value == 0 || f.sigma == Some(0) {
            return Err(Error::InvalidArgument("rank facts must be positive"));
        }
        if self.find(&f.family, f.sigma).is_some() {
            return Err(Error::InvalidArgument("duplicate rank fact"));
        }
        if let Some(s) = f.sigma {
            let conflict = self.facts.iter().any(|g| {
                g.family == f.family
                    && !g.is_upper_bound_only
                    && !f.is_upper_bound_only
                    && g.sigma
                        .is_some_and(|t| (t < s && g.value > f.value) || (t > s && g.value < f.value))
            });
            if conflict {
                return Err(Error::InvalidArgument("r_max,s must be non-decreasing in s"));
            }
        }
        self.facts.push(f);
        Ok(())
    }

    fn find(&self, v: &VarietyFamily, sigma: Option<usize>) -> Option<&KnownFact> {
        self.facts.iter().find(|f| f.family == *v && f.sigma == sigma)
    }

    /// Maximum rank on `σ_s(v)` (possibly only an upper bound). `σ_1 = X`
    /// always has maximum rank 1.
    pub fn r_max_on(&self, v: &VarietyFamily, s: usize) -> Option<(usize, bool)> {
        if s == 1 {
            return Some((1, false));
        }
        self.find(v, Some(s)).map(|f| (f.value, f.is_upper_bound_only))
    }

    /// The true maximum rank, when known exactly.
    pub fn r_max(&self, v: &VarietyFamily) -> Option<usize> {
        self.find(v, None).filter(|f| !f.is_upper_bound_only).map(|f| f.value)
    }

    pub fn facts(&self) -> &[KnownFact] {
        &self.facts
    }

    pub fn builtin() -> Self {
        let v22 = VarietyFamily::Veronese { n: 2, d: 2 };
        let v23 = VarietyFamily::Veronese { n: 2, d: 3 };
        let v24 = VarietyFamily::Veronese { n: 2, d: 4 };
        let gr37 = VarietyFamily::Grassmann { k: 3, n: 7 };
        let gr24 = VarietyFamily::Grassmann { k: 2, n: 4 };
        let segre = VarietyFamily::Segre { dims: vec![3, 3, 3] };
        let flag = VarietyFamily::FlagAdjoint3;
        let rows: [(VarietyFamily, Option<usize>, usize, bool, &str); 13] = [
            (v22.clone(), Some(2), 2, false, "symmetric 3x3 matrices of rank 2"),
            (v22, None, 3, false, "ternary quadrics: Waring rank equals matrix rank"),
            (
                v23.clone(),
                Some(3),
                5,
                false,
                "Landsberg-Teitler: plane cubics on sigma_3",
            ),
            (v23, None, 5, false, "Landsberg-Teitler: maximal rank of plane cubics"),
            (v24.clone(), Some(5), 7, false, "De Paris: plane quartics on sigma_5"),
            (v24, None, 7, false, "De Paris: maximal rank of plane quartics"),
            (
                gr37.clone(),
                Some(3),
                3,
                false,
                "skew-symmetric rank on sigma_3(Gr(3,7))",
            ),
            (gr37, None, 4, false, "maximal skew-symmetric rank in Lambda^3 C^7"),
            (gr24, None, 2, false, "X itself a hypersurface"),
            (segre.clone(), Some(4), 5, true, "3x3x3 tensors on sigma_4"),
            (segre, None, 5, false, "maximal rank of 3x3x3 tensors"),
            (
                flag.clone(),
                Some(2),
                2,
                false,
                "tangent-space decompositions on sigma_2(F(0,1;2))",
            ),
            (flag, None, 3, false, "F(0,1;2): r_max,2 + 1 equals the generic rank"),
        ];
        let mut k = Self::new();
        for (family, sigma, value, is_upper_bound_only, citation) in rows {
            k.insert(KnownFact {
                family,
                sigma,
                value,
                is_upper_bound_only,
                citation: String::from(citation),
            })
            .expect("builtin facts are valid");
        }
        k
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub family: VarietyFamily,
    pub ambient_dim: usize,
    pub dim_x: usize,
    pub g: usize,
    /// Whether `σ_{g−1}(X)` is a hypersurface.
    pub sigma_prev_hypersurface: bool,
    pub codim_bound: usize,
    pub bt_general: usize,
    pub bt_hypersurface: Option<usize>,
    pub bhmt: Option<usize>,
    pub jelisiejew: Option<u128>,
    pub bdp: Option<u128>,
    pub deparis2: Option<usize>,
    /// `r_max,g−1`, with whether it is only an upper bound.
    pub r_prev: Option<(usize, bool)>,
    pub main_bound: Option<usize>,
    pub known_r_max: Option<usize>,
    pub notes: Vec<String>,
}

impl BoundsReport {
    /// All present bounds, labelled.
    pub fn present_bounds(&self) -> Vec<(&'static str, u128)> {
        let mut out = vec![
            ("codim", self.codim_bound as u128),
            ("bt_general", self.bt_general as u128),
        ];
        let opt = [
            ("bt_hypersurface", self.bt_hypersurface.map(|x| x as u128)),
            ("bhmt", self.bhmt.map(|x| x as u128)),
            ("jelisiejew", self.jelisiejew),
            ("bdp", self.bdp),
            ("deparis2", self.deparis2.map(|x| x as u128)),
            ("main", self.main_bound.map(|x| x as u128)),
        ];
        out.extend(opt.into_iter().filter_map(|(k, v)| v.map(|v| (k, v))));
        out
    }
}

/// `N − dim X + 1`.
pub fn codim_bound(v: &VarietyFamily) -> usize {
    let a = v.ambient();
    a.n - a.dim_x + 1
}

/// `(2g, 2g − 1)`, the second only when `σ_{g−1}` is a hypersurface.
pub fn bt_bounds(g: usize, sigma_prev_is_hypersurface: bool) -> (usize, Option<usize>) {
    (2 * g, sigma_prev_is_hypersurface.then(|| 2 * g - 1))
}

/// `2g − 2`, valid for curves and homogeneous varieties whose `σ_{g−1}` is
/// a hypersurface.
pub fn bhmt_bound(g: usize) -> usize {
    (2 * g).saturating_sub(2)
}

/// `C(m, k)` with `C(m, k) = 0` for `m < 0`, `k < 0` or `k > m`.
fn binom(m: i64, k: i64) -> Result<u128> {
    if m < 0 || k < 0 || k > m {
        return Ok(0);
    }
    binomial_u128(m as usize, k as usize).ok_or(Error::InvalidArgument("binomial coefficient overflow"))
}

fn check_nd(n: usize, d: usize) -> Result<(i64, i64)> {
    if n < 1 || d < 1 {
        return Err(Error::InvalidArgument("bounds need n >= 1 and d >= 1"));
    }
    Ok((n as i64, d as i64))
}

/// `C(n+d−1, n) − C(n+d−5, n−2)`.
pub fn jelisiejew_bound(n: usize, d: usize) -> Result<u128> {
    let (n, d) = check_nd(n, d)?;
    Ok(binom(n + d - 1, n)? - binom(n + d - 5, n - 2)?)
}

/// `C(n+d−1, n) − C(n+d−5, n−2) − C(n+d−6, n−2)`.
pub fn bdp_bound(n: usize, d: usize) -> Result<u128> {
    let (n2, d2) = check_nd(n, d)?;
    Ok(jelisiejew_bound(n, d)? - binom(n2 + d2 - 6, n2 - 2)?)
}

/// `⌊(d² + 6d + 1)/4⌋`, for ternary forms.
pub fn deparis2_bound(d: usize) -> usize {
    (d * d + 6 * d + 1) / 4
}

/// `r_max ≤ r_max,g−1 + 1` when `σ_{g−1}` is a hypersurface.
pub fn main_bound(r_prev: usize) -> usize {
    r_prev + 1
}

/// Maximum rank when `X` is itself a hypersurface of its span: every line
/// through a point off `X` meets `X` again, so the answer is 2.
pub fn hypersurface_x_max_rank(v: &VarietyFamily) -> Result<usize> {
    if v.is_hypersurface() {
        Ok(2)
    } else {
        Err(Error::NotAHypersurface(alloc::format!("{v}")))
    }
}

const BT_NOTE: &str = "2g-1 is listed only when X is not a hypersurface and sigma_{g-1} is; \
2g-2 needs sigma_{g-1} to be a hypersurface and X homogeneous. Per-example values \
sometimes credited to the 2g-1 result (4 for X_{2,2}, 5 for Gr(3,7), 8 for the \
3x3x3 Segre) do not follow from these formulas and are not reproduced.";

pub fn bounds_report(v: &VarietyFamily, facts: &KnownRankFacts, table: &ExceptionTable) -> Result<BoundsReport> {
    let v = v.validate()?;
    let a = v.ambient();
    let g = generic_rank(&v, table)?;
    let prev_hyp = g >= 2 && actual_dim(&v, g - 1, table)?.hypersurface;
    let (bt_general, bt_hyp) = bt_bounds(g, prev_hyp && !v.is_hypersurface());
    let (jel, bdp, dep2) = match &v {
        VarietyFamily::Veronese { n, d } => (
            Some(jelisiejew_bound(*n, *d)?),
            Some(bdp_bound(*n, *d)?),
            (*n == 2).then(|| deparis2_bound(*d)),
        ),
        _ => (None, None, None),
    };
    let r_prev = if prev_hyp { facts.r_max_on(&v, g - 1) } else { None };
    let mut notes = vec![String::from(BT_NOTE)];
    if let Some((_, true)) = r_prev {
        notes.push(String::from(
            "r_max,g-1 is only known as an upper bound; the main bound uses that value",
        ));
    }
    if prev_hyp && r_prev.is_none() {
        notes.push(String::from(
            "sigma_{g-1} is a hypersurface but r_max,g-1 is unknown, so the main bound does not apply",
        ));
    }
    Ok(BoundsReport {
        ambient_dim: a.n,
        dim_x: a.dim_x,
        g,
        sigma_prev_hypersurface: prev_hyp,
        codim_bound: codim_bound(&v),
        bt_general,
        bt_hypersurface: bt_hyp,
        bhmt: prev_hyp.then(|| bhmt_bound(g)),
        jelisiejew: jel,
        bdp,
        deparis2: dep2,
        r_prev,
        main_bound: r_prev.map(|(r, _)| main_bound(r)),
        known_r_max: facts.r_max(&v),
        notes,
        family: v,
    })
}
