//! Expected and actual secant dimensions, Terracini sampling and generic
//! rank.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{self, rank_exact, DenseMatrix, ModpEchelon};
use crate::random;
use crate::varieties::VarietyFamily;

/// Default entry bound for random parameters.
pub const DEFAULT_BOUND: i64 = 50;
/// Default number of Terracini trials.
pub const DEFAULT_TRIALS: usize = 3;
/// `actual_dim` falls back to exact Terracini sampling for Segre and flag
/// cases with at most this many coordinates.
pub const TERRACINI_FALLBACK_CAP: usize = 400;
/// Above this ambient dimension only modular sampling is allowed.
pub const EXACT_AMBIENT_CAP: usize = 5000;

const PARAM_RETRIES: usize = 20;
const PRIME_RETRIES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankMode {
    Exact,
    Modular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Terracini,
    ExceptionTable,
    Arithmetic,
}

/// How firmly a dimension is established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Theorem,
    Conjecture,
    /// Lower bound from random sampling, equal to the true value with
    /// overwhelming probability.
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecantRecord {
    pub family: VarietyFamily,
    pub s: usize,
    pub ambient_dim: usize,
    pub expected_dim: usize,
    pub actual_dim: usize,
    pub defect: usize,
    pub hypersurface: bool,
    pub source: Source,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionEntry {
    /// Normalized family (Grassmannians with `k ≤ n − k`).
    pub family: VarietyFamily,
    pub s: usize,
    pub defect: usize,
    pub status: Status,
    pub citation: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExceptionTable {
    entries: Vec<ExceptionEntry>,
}

impl ExceptionTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an entry; rejects zero defects and duplicate keys.
    pub fn insert(&mut self, mut e: ExceptionEntry) -> Result<()> {
        e.family = e.family.validate()?;
        if e.defect == 0 {
            return Err(Error::InvalidArgument("exception defects must be at least 1"));
        }
        if e.s == 0 {
            return Err(Error::InvalidArgument("secant index must be at least 1"));
        }
        if self.lookup(&e.family, e.s).is_some() {
            return Err(Error::InvalidArgument("duplicate exception entry"));
        }
        self.entries.push(e);
        Ok(())
    }

    pub fn lookup(&self, v: &VarietyFamily, s: usize) -> Option<&ExceptionEntry> {
        self.entries.iter().find(|e| e.family == *v && e.s == s)
    }

    /// Removes the entry for `(v, s)`, returning it.
    pub fn remove(&mut self, v: &VarietyFamily, s: usize) -> Option<ExceptionEntry> {
        let i = self.entries.iter().position(|e| e.family == *v && e.s == s)?;
        Some(self.entries.remove(i))
    }

    pub fn entries(&self) -> &[ExceptionEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The default table: the non-quadric Alexander–Hirschowitz exceptions,
    /// `σ_3(Gr(3,7))`, the two hypersurface cases for `3×3×3` and `F(0,1;2)`,
    /// and a few conjectural Grassmann defects.
    pub fn builtin() -> Self {
        let ah = "Alexander-Hirschowitz theorem";
        let rows: [(VarietyFamily, usize, usize, Status, &str); 10] = [
            (VarietyFamily::Veronese { n: 2, d: 4 }, 5, 1, Status::Theorem, ah),
            (VarietyFamily::Veronese { n: 3, d: 4 }, 9, 1, Status::Theorem, ah),
            (VarietyFamily::Veronese { n: 4, d: 4 }, 14, 1, Status::Theorem, ah),
            (VarietyFamily::Veronese { n: 4, d: 3 }, 7, 1, Status::Theorem, ah),
            (
                VarietyFamily::Grassmann { k: 3, n: 7 },
                3,
                1,
                Status::Theorem,
                "sigma_3(Gr(3,7)) is the degree-7 hypersurface",
            ),
            (
                VarietyFamily::Segre {
                    dims: alloc::vec![3, 3, 3],
                },
                4,
                1,
                Status::Theorem,
                "sigma_4 of P2xP2xP2 is a hypersurface (Strassen)",
            ),
            (
                VarietyFamily::FlagAdjoint3,
                2,
                1,
                Status::Theorem,
                "sigma_2(F(0,1;2)) is the determinant hypersurface",
            ),
            (
                VarietyFamily::Grassmann { k: 4, n: 8 },
                3,
                1,
                Status::Conjecture,
                "Baur-Draisma-de Graaf conjecture: sigma_3(Gr(4,8))",
            ),
            (
                VarietyFamily::Grassmann { k: 4, n: 8 },
                4,
                4,
                Status::Conjecture,
                "Baur-Draisma-de Graaf conjecture: sigma_4(Gr(4,8))",
            ),
            (
                VarietyFamily::Grassmann { k: 3, n: 9 },
                4,
                2,
                Status::Conjecture,
                "Baur-Draisma-de Graaf conjecture: sigma_4(Gr(3,9))",
            ),
        ];
        let mut t = Self::new();
        for (family, s, defect, status, citation) in rows {
            t.insert(ExceptionEntry {
                family,
                s,
                defect,
                status,
                citation: String::from(citation),
            })
            .expect("builtin entries are valid");
        }
        t
    }
}

/// `min(s·(dim X + 1) − 1, N)`.
pub fn expected_dim(v: &VarietyFamily, s: usize) -> usize {
    let a = v.ambient();
    (s * (a.dim_x + 1) - 1).min(a.n)
}

/// Lower bound for the generic rank: `⌈(N + 1)/(dim X + 1)⌉`.
pub fn arithmetic_generic_rank(v: &VarietyFamily) -> usize {
    let a = v.ambient();
    (a.n + 1).div_ceil(a.dim_x + 1)
}

/// Stacked tangent-cone rows at `s` random points, one trial.
fn sample_rows(v: &VarietyFamily, s: usize, bound: i64, rng: &mut random::SeededRng) -> Result<Vec<DenseMatrix>> {
    let mut blocks = Vec::with_capacity(s);
    for _ in 0..s {
        let mut tries = 0;
        let block = loop {
            let p = v.random_param(rng, bound);
            match v.tangent_cone_basis(&p) {
                Ok(b) => break b,
                Err(Error::DegenerateParams(_)) if tries < PARAM_RETRIES => tries += 1,
                Err(Error::DegenerateParams(_)) => return Err(Error::SamplingFailed { retries: PARAM_RETRIES }),
                Err(e) => return Err(e),
            }
        };
        blocks.push(block);
    }
    Ok(blocks)
}

fn trial_rank_exact(v: &VarietyFamily, blocks: &[DenseMatrix]) -> Result<usize> {
    let mut rows = Vec::new();
    for b in blocks {
        for r in 0..b.rows() {
            rows.push(b.row(r).to_vec());
        }
    }
    Ok(rank_exact(&DenseMatrix::from_rows(v.coord_len(), rows)?))
}

fn trial_rank_modular(
    v: &VarietyFamily,
    blocks: &[DenseMatrix],
    target: usize,
    rng: &mut random::SeededRng,
) -> Result<usize> {
    'prime: for _ in 0..PRIME_RETRIES {
        let p = matrix::random_prime_62(rng);
        let mut ech = ModpEchelon::new(p, v.coord_len())?;
        for b in blocks {
            for r in 0..b.rows() {
                match ech.insert_scalars(b.row(r)) {
                    Ok(_) => {}
                    Err(Error::NonInvertibleDenominator { .. }) => continue 'prime,
                    Err(e) => return Err(e),
                }
                if ech.rank() == target {
                    return Ok(target);
                }
            }
        }
        return Ok(ech.rank());
    }
    Err(Error::SamplingFailed { retries: PRIME_RETRIES })
}

/// Terracini estimate of `dim σ_s(v)`: the maximum over `trials` of the rank
/// of the stacked tangent cones at `s` random points, minus one. Trial `t`
/// draws from the stream `derive_seed(seed, t)`, so the result depends only
/// on the seed. Stops early once the expected dimension is reached.
pub fn terracini_dim(
    v: &VarietyFamily,
    s: usize,
    trials: usize,
    bound: i64,
    seed: u64,
    mode: RankMode,
) -> Result<usize> {
    if s == 0 {
        return Err(Error::InvalidArgument("secant index must be at least 1"));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is required"));
    }
    if bound < 1 {
        return Err(Error::InvalidArgument("sampling bound must be positive"));
    }
    if mode == RankMode::Exact && v.ambient().n > EXACT_AMBIENT_CAP {
        return Err(Error::InvalidArgument(
            "exact Terracini sampling is not supported above ambient dimension 5000",
        ));
    }
    let expected = expected_dim(v, s);
    let mut best = 0;
    for t in 0..trials {
        let mut rng = random::rng(random::derive_seed(seed, t as u64));
        let blocks = sample_rows(v, s, bound, &mut rng)?;
        let rank = match mode {
            RankMode::Exact => trial_rank_exact(v, &blocks)?,
            RankMode::Modular => trial_rank_modular(v, &blocks, expected + 1, &mut rng)?,
        };
        best = best.max(rank.saturating_sub(1));
        if best >= expected {
            break;
        }
    }
    Ok(best)
}

fn record(v: &VarietyFamily, s: usize, actual: usize, source: Source, status: Status) -> SecantRecord {
    let a = v.ambient();
    let expected = expected_dim(v, s);
    SecantRecord {
        family: v.clone(),
        s,
        ambient_dim: a.n,
        expected_dim: expected,
        actual_dim: actual,
        defect: expected - actual,
        hypersurface: actual + 1 == a.n,
        source,
        status,
    }
}

fn from_table(v: &VarietyFamily, s: usize, table: &ExceptionTable) -> Option<Result<SecantRecord>> {
    let e = table.lookup(v, s)?;
    let expected = expected_dim(v, s);
    if e.defect > expected {
        return Some(Err(Error::InvalidArgument("table defect exceeds expected dimension")));
    }
    Some(Ok(record(v, s, expected - e.defect, Source::ExceptionTable, e.status)))
}

/// `dim σ_s(v)` by family policy:
///
/// - Veronese: quadrics by the closed form
///   `C(n+2,2) − C(n−s+2,2) − 1`; otherwise the Alexander–Hirschowitz
///   theorem (expected dimension unless the table lists a defect).
/// - Grassmann: expected dimension corrected by the table (conjectural in
///   general).
/// - Segre and flag: the table, `dim X` for `s = 1`, otherwise exact
///   Terracini sampling when the space is small enough.
pub fn actual_dim(v: &VarietyFamily, s: usize, table: &ExceptionTable) -> Result<SecantRecord> {
    if s == 0 {
        return Err(Error::InvalidArgument("secant index must be at least 1"));
    }
    let v = &v.validate()?;
    let a = v.ambient();
    match v {
        VarietyFamily::Veronese { n, d: 2 } => {
            let big = (n + 2) * (n + 1) / 2;
            let small = if s > *n { 0 } else { (n - s + 2) * (n - s + 1) / 2 };
            Ok(record(v, s, big - small - 1, Source::Arithmetic, Status::Theorem))
        }
        VarietyFamily::Veronese { .. } => match from_table(v, s, table) {
            Some(r) => r,
            None => Ok(record(v, s, expected_dim(v, s), Source::Arithmetic, Status::Theorem)),
        },
        VarietyFamily::Grassmann { .. } => match from_table(v, s, table) {
            Some(r) => r,
            None => {
                // beyond s = 1 non-defectivity is only conjectured
                let status = if s == 1 { Status::Theorem } else { Status::Conjecture };
                Ok(record(v, s, expected_dim(v, s), Source::Arithmetic, status))
            }
        },
        VarietyFamily::Segre { .. } | VarietyFamily::FlagAdjoint3 => {
            if let Some(r) = from_table(v, s, table) {
                return r;
            }
            if s == 1 {
                return Ok(record(v, s, a.dim_x, Source::Arithmetic, Status::Theorem));
            }
            if v.coord_len() > TERRACINI_FALLBACK_CAP {
                return Err(Error::UnknownCase {
                    family: format!("{v}"),
                    s,
                });
            }
            let dim = terracini_dim(v, s, DEFAULT_TRIALS, DEFAULT_BOUND, 0, RankMode::Exact)?;
            Ok(record(v, s, dim, Source::Terracini, Status::Sampled))
        }
    }
}

/// Smallest `s` with `dim σ_s(v) = N`.
pub fn generic_rank(v: &VarietyFamily, table: &ExceptionTable) -> Result<usize> {
    let n = v.ambient().n;
    let mut s = arithmetic_generic_rank(v);
    loop {
        if actual_dim(v, s, table)?.actual_dim == n {
            return Ok(s);
        }
        s += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ver(n: usize, d: usize) -> VarietyFamily {
        VarietyFamily::veronese(n, d).unwrap()
    }

    #[test]
    fn expected_dimension_examples() {
        assert_eq!(expected_dim(&ver(2, 4), 5), 14);
        let g = VarietyFamily::grassmann(8, 17).unwrap();
        assert_eq!(expected_dim(&g, 333), 24308);
        assert_eq!(g.ambient().n, 24309);
        for v in [ver(3, 3), g, VarietyFamily::FlagAdjoint3] {
            assert_eq!(expected_dim(&v, 1), v.ambient().dim_x);
        }
    }

    #[test]
    fn terracini_small_cases() {
        assert_eq!(terracini_dim(&ver(2, 2), 2, 3, 50, 0, RankMode::Exact).unwrap(), 4);
        assert_eq!(terracini_dim(&ver(2, 3), 3, 3, 50, 0, RankMode::Exact).unwrap(), 8);
        assert_eq!(
            terracini_dim(&VarietyFamily::FlagAdjoint3, 2, 3, 50, 0, RankMode::Exact).unwrap(),
            6
        );
    }

    #[test]
    fn modular_matches_exact_on_small_cases() {
        for (v, s) in [(ver(2, 4), 5), (ver(3, 2), 3), (VarietyFamily::FlagAdjoint3, 3)] {
            let e = terracini_dim(&v, s, 3, 50, 7, RankMode::Exact).unwrap();
            let m = terracini_dim(&v, s, 3, 50, 7, RankMode::Modular).unwrap();
            assert_eq!(e, m, "{v}");
        }
    }

    #[test]
    fn terracini_rejects_bad_arguments() {
        assert!(terracini_dim(&ver(2, 2), 0, 3, 50, 0, RankMode::Exact).is_err());
        assert!(terracini_dim(&ver(2, 2), 1, 0, 50, 0, RankMode::Exact).is_err());
        assert!(terracini_dim(&ver(2, 2), 1, 1, 0, 0, RankMode::Exact).is_err());
    }

    #[test]
    fn quadric_closed_form() {
        let t = ExceptionTable::new();
        // symmetric matrices of rank ≤ s: dim = s(2n+3−s)/2 − 1
        for n in 1..7usize {
            for s in 1..=n + 1 {
                let r = actual_dim(&ver(n, 2), s, &t).unwrap();
                assert_eq!(r.actual_dim, s * (2 * n + 3 - s) / 2 - 1, "n={n} s={s}");
            }
        }
    }

    #[test]
    fn ah_exceptions() {
        let t = ExceptionTable::builtin();
        let r = actual_dim(&ver(3, 4), 9, &t).unwrap();
        assert_eq!((r.actual_dim, r.defect, r.hypersurface), (33, 1, true));
        let r = actual_dim(&ver(4, 3), 7, &t).unwrap();
        assert_eq!((r.actual_dim, r.hypersurface), (33, true));
        let r = actual_dim(&VarietyFamily::grassmann(3, 7).unwrap(), 3, &t).unwrap();
        assert_eq!((r.actual_dim, r.defect, r.hypersurface), (33, 1, true));
        assert_eq!(r.source, Source::ExceptionTable);
    }

    #[test]
    fn grassmann_dual_lookup() {
        let t = ExceptionTable::builtin();
        let r = actual_dim(&VarietyFamily::grassmann(4, 7).unwrap(), 3, &t).unwrap();
        assert_eq!(r.actual_dim, 33);
    }

    #[test]
    fn generic_ranks() {
        let t = ExceptionTable::builtin();
        assert_eq!(generic_rank(&ver(2, 2), &t).unwrap(), 3);
        assert_eq!(generic_rank(&ver(2, 3), &t).unwrap(), 4);
        assert_eq!(generic_rank(&ver(2, 4), &t).unwrap(), 6);
        assert_eq!(generic_rank(&VarietyFamily::FlagAdjoint3, &t).unwrap(), 3);
        assert_eq!(generic_rank(&VarietyFamily::grassmann(3, 7).unwrap(), &t).unwrap(), 4);
    }

    #[test]
    fn unknown_large_segre() {
        let v = VarietyFamily::segre(alloc::vec![8, 8, 8]).unwrap();
        assert!(matches!(
            actual_dim(&v, 10, &ExceptionTable::new()),
            Err(Error::UnknownCase { .. })
        ));
    }

    #[test]
    fn table_rejects_bad_entries() {
        let mut t = ExceptionTable::builtin();
        let dup = t.entries()[0].clone();
        assert!(t.insert(dup).is_err());
        let mut zero = t.entries()[0].clone();
        zero.s = 99;
        zero.defect = 0;
        assert!(t.insert(zero).is_err());
        let g = VarietyFamily::grassmann(3, 7).unwrap();
        assert!(t.remove(&g, 3).is_some());
        assert!(t.lookup(&g, 3).is_none());
    }

    #[test]
    fn arithmetic_generic_rank_lower_bound() {
        assert_eq!(arithmetic_generic_rank(&ver(2, 3)), 4);
        assert_eq!(
            arithmetic_generic_rank(&VarietyFamily::segre(alloc::vec![3, 3, 3]).unwrap()),
            4
        );
    }
}
