//! Command bodies. Each returns a JSON model value; rendering happens in
//! [`crate::render`].

use ranklab_core::bounds::{bounds_report, KnownRankFacts};
use ranklab_core::census::{grassmann_census, veronese_census, CensusQuery, VerifyMode};
use ranklab_core::flag::{self, CaseId};
use ranklab_core::random;
use ranklab_core::secant::{self, actual_dim, ExceptionTable, RankMode};
use ranklab_core::witness::{self, HypersurfaceModel};
use ranklab_core::{Scalar, VarietyFamily};

use crate::error::{CliError, Result};
use crate::model::{
    BoundsJson, BoundsOutput, CensusOutput, DimOutput, SecantRecordJson, VerifyDecompOutput, WitnessOutput, SCHEMA,
};

/// Entry bound for random witness points.
pub const WITNESS_POINT_BOUND: i64 = 20;
pub const DEFAULT_MAX_TRIES: usize = 25;
pub const DEFAULT_SAMPLES: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusFamily {
    Grassmann,
    Veronese,
}

pub fn verify_mode_name(v: VerifyMode) -> &'static str {
    match v {
        VerifyMode::None => "none",
        VerifyMode::TerraciniExact => "exact",
        VerifyMode::TerraciniModular => "modular",
    }
}

pub fn dim(v: &VarietyFamily, s: usize, table: &ExceptionTable, verify: VerifyMode, seed: u64) -> Result<DimOutput> {
    if s == 0 {
        return Err(CliError::Config("--s must be at least 1".into()));
    }
    let r = actual_dim(v, s, table)?;
    let mode = match verify {
        VerifyMode::None => None,
        VerifyMode::TerraciniExact => Some(RankMode::Exact),
        VerifyMode::TerraciniModular => Some(RankMode::Modular),
    };
    let verified = match mode {
        Some(m) => Some(secant::terracini_dim(
            v,
            s,
            secant::DEFAULT_TRIALS,
            secant::DEFAULT_BOUND,
            seed,
            m,
        )?),
        None => None,
    };
    Ok(DimOutput {
        schema: SCHEMA,
        command: "dim",
        seed,
        record: SecantRecordJson::new(&r, None, verified),
    })
}

pub fn bounds(v: &VarietyFamily, facts: &KnownRankFacts, table: &ExceptionTable) -> Result<BoundsOutput> {
    let r = bounds_report(v, facts, table)?;
    Ok(BoundsOutput {
        schema: SCHEMA,
        command: "bounds",
        report: BoundsJson::from(&r),
    })
}

/// For Veronese, `limit` bounds `n` and `d_max` bounds `d`.
pub fn census(
    family: CensusFamily,
    limit: usize,
    d_max: Option<usize>,
    table: &ExceptionTable,
    q: &CensusQuery,
) -> Result<CensusOutput> {
    let (name, recs) = match family {
        CensusFamily::Grassmann => ("grassmann", grassmann_census(limit, table, q)?),
        CensusFamily::Veronese => ("veronese", veronese_census(limit, d_max.unwrap_or(limit), table, q)?),
    };
    let records: Vec<SecantRecordJson> = recs.iter().map(SecantRecordJson::from_census).collect();
    Ok(CensusOutput {
        schema: SCHEMA,
        command: "census",
        family: name.to_string(),
        limit,
        verify: verify_mode_name(q.verify),
        seed: q.seed,
        count: records.len(),
        records,
    })
}

/// `"0"`..`"17"`, or `a-only`, `b-only`, `c-only`.
pub fn parse_case(s: &str) -> Result<CaseId> {
    let id = match s {
        "a-only" => CaseId::SingleA,
        "b-only" => CaseId::SingleB,
        "c-only" => CaseId::SingleC,
        _ => match s.parse::<u8>() {
            Ok(n) if n <= 17 => CaseId::Case(n),
            _ => return Err(CliError::Config(format!("unknown decomposition case {s:?}"))),
        },
    };
    Ok(id)
}

pub fn verify_decomp(case: Option<CaseId>, samples: usize, seed: u64) -> Result<VerifyDecompOutput> {
    let report = match case {
        None => flag::fuzz_all(samples, seed),
        Some(id) => {
            let spec = flag::case_spec(id).ok_or_else(|| CliError::Config(format!("unknown case {id}")))?;
            flag::fuzz_all_with(&[spec], samples, seed)
        }
    };
    Ok(VerifyDecompOutput::from(&report))
}

/// The point `P` of a random witness run for `seed`.
pub fn random_witness_point(model: HypersurfaceModel, seed: u64) -> Vec<Scalar> {
    let mut rng = random::rng(random::derive_seed(seed, u64::MAX));
    witness::random_point_off(model, &mut rng, WITNESS_POINT_BOUND)
}

/// `p` in the model's equation coordinates.
pub fn witness(model: HypersurfaceModel, p: &[Scalar], seed: u64, max_tries: usize) -> Result<WitnessOutput> {
    if max_tries == 0 {
        return Err(CliError::Config("--max-tries must be at least 1".into()));
    }
    let w = witness::rank_witness(model, p, seed, max_tries)?;
    WitnessOutput::new(&w, seed, max_tries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_names() {
        assert_eq!(parse_case("17").unwrap(), CaseId::Case(17));
        assert_eq!(parse_case("b-only").unwrap(), CaseId::SingleB);
        assert!(parse_case("18").is_err());
        assert!(parse_case("x").is_err());
    }

    #[test]
    fn dim_example() {
        let v = VarietyFamily::veronese(2, 4).unwrap();
        let o = dim(&v, 5, &ExceptionTable::builtin(), VerifyMode::None, 0).unwrap();
        assert_eq!((o.record.actual_dim, o.record.hypersurface), (13, true));
    }

    #[test]
    fn random_witness_points_are_off_the_hypersurface() {
        for seed in 0..5 {
            let p = random_witness_point(HypersurfaceModel::Klein, seed);
            assert!(witness(HypersurfaceModel::Klein, &p, seed, 25).unwrap().verified);
        }
    }
}
