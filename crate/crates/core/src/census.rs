//! Census of Veronese and Grassmann families whose subgeneric secant
//! variety is a hypersurface.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::secant::{self, actual_dim, ExceptionTable, RankMode, SecantRecord, Source};
use crate::varieties::VarietyFamily;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    None,
    TerraciniExact,
    TerraciniModular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusQuery {
    pub verify: VerifyMode,
    /// Records with a larger projective ambient dimension are not verified.
    pub verify_cap: usize,
    pub seed: u64,
}

impl Default for CensusQuery {
    fn default() -> Self {
        Self {
            verify: VerifyMode::None,
            verify_cap: 200,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    pub record: SecantRecord,
    /// `(k, n)` as reported; for Grassmannians this may be the dual of the
    /// normalized family in `record`.
    pub presentation: (usize, usize),
    /// Terracini dimension, when verification ran.
    pub verified_dim: Option<usize>,
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `(C(n+d, n) − 1)` divisible by `n + 1`.
pub fn veronese_applicable(n: usize, d: usize) -> bool {
    (binomial(n + d, n) - 1u32).is_multiple_of(&BigUint::from(n + 1))
}

/// `(C(n, k) − 1)` divisible by `k(n − k) + 1` (affine `k`, `n`).
pub fn grassmann_applicable(k: usize, n: usize) -> bool {
    grassmann_quotient(k, n).is_some()
}

fn grassmann_quotient(k: usize, n: usize) -> Option<BigUint> {
    if k == 0 || k >= n {
        return None;
    }
    let (q, r) = (binomial(n, k) - 1u32).div_rem(&BigUint::from(k * (n - k) + 1));
    r.is_zero().then_some(q)
}

fn verify(r: &SecantRecord, q: &CensusQuery) -> Result<Option<usize>> {
    let mode = match q.verify {
        VerifyMode::None => return Ok(None),
        VerifyMode::TerraciniExact => RankMode::Exact,
        VerifyMode::TerraciniModular => RankMode::Modular,
    };
    if r.ambient_dim > q.verify_cap {
        return Ok(None);
    }
    secant::terracini_dim(
        &r.family,
        r.s,
        secant::DEFAULT_TRIALS,
        secant::DEFAULT_BOUND,
        q.seed,
        mode,
    )
    .map(Some)
}

/// Every `Gr(k, n)` with affine `n ≤ limit` and every `s ≤ limit` with
/// `σ_s` a hypersurface. Hits from the divisibility condition are reported in
/// both dual presentations; hits created by a table defect are reported in
/// the normalized presentation only. Sorted by `(n, k, s)`.
pub fn grassmann_census(limit: usize, table: &ExceptionTable, q: &CensusQuery) -> Result<Vec<CensusRecord>> {
    if limit < 2 {
        return Err(Error::InvalidArgument("census limit must be at least 2"));
    }
    let mut out = Vec::new();
    for n in 2..=limit {
        for k in 1..=n / 2 {
            let Some(s) = grassmann_quotient(k, n).and_then(|s| s.to_usize()) else {
                continue;
            };
            if s == 0 || s > limit {
                continue;
            }
            let v = VarietyFamily::grassmann(k, n)?;
            let r = actual_dim(&v, s, table)?;
            if !r.hypersurface {
                continue;
            }
            let verified = verify(&r, q)?;
            out.push(CensusRecord {
                record: r.clone(),
                presentation: (k, n),
                verified_dim: verified,
            });
            if k != n - k {
                out.push(CensusRecord {
                    record: r,
                    presentation: (n - k, n),
                    verified_dim: verified,
                });
            }
        }
    }
    for e in table.entries() {
        let VarietyFamily::Grassmann { k, n } = e.family else {
            continue;
        };
        if n > limit || e.s > limit || grassmann_applicable(k, n) {
            continue;
        }
        let r = actual_dim(&e.family, e.s, table)?;
        if r.hypersurface {
            let verified = verify(&r, q)?;
            out.push(CensusRecord {
                record: r,
                presentation: (k, n),
                verified_dim: verified,
            });
        }
    }
    out.sort_by_key(|c| (c.presentation.1, c.presentation.0, c.record.s));
    Ok(out)
}

/// Hypersurface secant varieties of `X_{n,d}` for `n ≤ n_max`, `d ≤ d_max`,
/// from the Alexander–Hirschowitz dimensions. Sorted by `(n, d, s)`.
pub fn veronese_census(
    n_max: usize,
    d_max: usize,
    table: &ExceptionTable,
    q: &CensusQuery,
) -> Result<Vec<CensusRecord>> {
    if n_max < 1 || d_max < 1 {
        return Err(Error::InvalidArgument("census ranges must be at least 1"));
    }
    if binomial(n_max + d_max, d_max)
        .to_usize()
        .is_none_or(|b| b > usize::MAX / 4)
    {
        return Err(Error::InvalidArgument("census range too large"));
    }
    let mut out = Vec::new();
    for n in 1..=n_max {
        for d in 1..=d_max {
            let v = VarietyFamily::veronese(n, d)?;
            let big_n = v.ambient().n;
            let mut s = 1;
            loop {
                let r = actual_dim(&v, s, table)?;
                if r.actual_dim == big_n {
                    break;
                }
                if r.hypersurface {
                    let verified = verify(&r, q)?;
                    out.push(CensusRecord {
                        record: r,
                        presentation: (n, d),
                        verified_dim: verified,
                    });
                }
                s += 1;
            }
        }
    }
    Ok(out)
}

/// True when a record is explained by the divisibility condition or by a
/// table defect.
pub fn record_is_explained(c: &CensusRecord) -> bool {
    let by_table = c.record.source == Source::ExceptionTable && c.record.defect > 0;
    let by_arithmetic = match c.record.family {
        VarietyFamily::Veronese { n, d } => veronese_applicable(n, d),
        VarietyFamily::Grassmann { k, n } => grassmann_applicable(k, n),
        _ => false,
    };
    // quadrics are explained by their closed form
    let quadric = matches!(c.record.family, VarietyFamily::Veronese { d: 2, .. }) && c.record.defect > 0;
    by_table || by_arithmetic || quadric
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn applicability() {
        assert!(veronese_applicable(2, 3));
        assert!(grassmann_applicable(2, 4));
        assert!(grassmann_applicable(8, 17));
        assert!(grassmann_applicable(9, 17));
        assert!(!grassmann_applicable(3, 7));
        assert_eq!(grassmann_quotient(8, 17), Some(BigUint::from(333u32)));
    }

    #[test]
    fn small_limit() {
        let c = grassmann_census(6, &ExceptionTable::builtin(), &CensusQuery::default()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].presentation, c[0].record.s), ((2, 4), 1));
    }

    #[test]
    fn four_cases_to_five_hundred() {
        let c = grassmann_census(500, &ExceptionTable::builtin(), &CensusQuery::default()).unwrap();
        let got: Vec<_> = c
            .iter()
            .map(|r| (r.presentation.0, r.presentation.1, r.record.s))
            .collect();
        assert_eq!(got, alloc::vec![(2, 4, 1), (3, 7, 3), (8, 17, 333), (9, 17, 333)]);
        assert!(c.iter().all(|r| r.record.hypersurface && record_is_explained(r)));
    }

    #[test]
    fn table_sensitivity() {
        let mut t = ExceptionTable::builtin();
        t.remove(&VarietyFamily::grassmann(3, 7).unwrap(), 3).unwrap();
        let c = grassmann_census(500, &t, &CensusQuery::default()).unwrap();
        let got: Vec<_> = c
            .iter()
            .map(|r| (r.presentation.0, r.presentation.1, r.record.s))
            .collect();
        assert_eq!(got, alloc::vec![(2, 4, 1), (8, 17, 333), (9, 17, 333)]);
    }

    #[test]
    fn veronese_range() {
        let c = veronese_census(4, 4, &ExceptionTable::builtin(), &CensusQuery::default()).unwrap();
        let got: Vec<_> = c
            .iter()
            .map(|r| (r.presentation.0, r.presentation.1, r.record.s))
            .collect();
        for want in [(2, 2, 2), (2, 3, 3), (2, 4, 5), (3, 4, 9), (4, 3, 7), (4, 4, 14)] {
            assert!(got.contains(&want), "{want:?}");
        }
        for (n, d, _) in &got {
            if *n == 1 {
                assert_eq!(d % 2, 0);
            }
        }
        assert!(c.iter().all(record_is_explained));
    }

    #[test]
    fn trivial_veronese_range() {
        let c = veronese_census(1, 1, &ExceptionTable::builtin(), &CensusQuery::default()).unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn exact_verification_agrees() {
        let q = CensusQuery {
            verify: VerifyMode::TerraciniExact,
            verify_cap: 200,
            seed: 0,
        };
        let c = grassmann_census(10, &ExceptionTable::builtin(), &q).unwrap();
        for r in &c {
            assert_eq!(r.verified_dim, Some(r.record.actual_dim));
        }
    }
}
