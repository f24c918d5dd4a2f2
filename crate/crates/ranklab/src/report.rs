//! `report-all`: every comparison table in one document.

use std::fmt::Write as _;

use ranklab_core::bounds::KnownRankFacts;
use ranklab_core::census::CensusQuery;
use ranklab_core::scalar::ints;
use ranklab_core::secant::{actual_dim, generic_rank, ExceptionTable};
use ranklab_core::tensor::{flattening_rank, Mode};
use ranklab_core::varieties::{allums13, flag_chart};
use ranklab_core::witness::{witness_along, HypersurfaceModel};
use ranklab_core::{ParamPoint, VarietyFamily};
use serde::Serialize;

use crate::commands::{self, CensusFamily};
use crate::error::Result;
use crate::model::{BoundsJson, CensusOutput, SecantRecordJson, VerifyDecompOutput, WitnessOutput, SCHEMA};
use crate::render::{self, table, BOUNDS_HEADER};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Section {
    pub title: String,
    /// `σ_{g−1}` for each variety of the section.
    pub secants: Vec<SecantRecordJson>,
    pub bounds: Vec<BoundsJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlatteningJson {
    pub tensor: String,
    pub ranks: [usize; 3],
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportOutput {
    pub schema: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub sections: Vec<Section>,
    pub grassmann_census: CensusOutput,
    pub segre_flattening: FlatteningJson,
    pub flag_decompositions: VerifyDecompOutput,
    pub flag_witness: WitnessOutput,
    pub notes: Vec<String>,
}

fn section(title: &str, vs: &[VarietyFamily], facts: &KnownRankFacts, table: &ExceptionTable) -> Result<Section> {
    let mut secants = Vec::new();
    let mut bounds = Vec::new();
    for v in vs {
        let g = generic_rank(v, table)?;
        if g >= 2 {
            secants.push(SecantRecordJson::new(&actual_dim(v, g - 1, table)?, None, None));
        }
        bounds.push(commands::bounds(v, facts, table)?.report);
    }
    Ok(Section {
        title: title.to_string(),
        secants,
        bounds,
    })
}

/// The worked example: `P = diag(1,1,−2)` along `Q = E11 − E13 + E31 − E33`.
pub fn flag_worked_example() -> Result<ranklab_core::witness::WitnessDecomposition> {
    let p = flag_chart(&ints(&[1, 0, 0, 0, 1, 0, 0, 0, -2]))?;
    // v1 (v1 × v2)^T with v1 = e1 + e3, v1 × v2 = e1 − e3
    let q = ParamPoint::Flag {
        v1: ints(&[1, 0, 1]),
        v2: ints(&[0, -1, 0]),
    };
    Ok(witness_along(HypersurfaceModel::Flag, &p, &q)?)
}

pub fn build(
    facts: &KnownRankFacts,
    table: &ExceptionTable,
    census_limit: usize,
    samples: usize,
    seed: u64,
) -> Result<ReportOutput> {
    let ver = |n, d| VarietyFamily::veronese(n, d);
    let sections = vec![
        section("Veronese", &[ver(2, 2)?, ver(2, 3)?, ver(2, 4)?], facts, table)?,
        section(
            "Grassmann",
            &[VarietyFamily::grassmann(2, 4)?, VarietyFamily::grassmann(3, 7)?],
            facts,
            table,
        )?,
        section("Segre", &[VarietyFamily::segre(vec![3, 3, 3])?], facts, table)?,
        section("Flag", &[VarietyFamily::flag_adjoint3()], facts, table)?,
    ];
    let q = CensusQuery {
        seed,
        ..CensusQuery::default()
    };
    let census = commands::census(CensusFamily::Grassmann, census_limit, None, table, &q)?;
    let t = allums13();
    let ranks = [Mode::First, Mode::Second, Mode::Third].map(|m| flattening_rank(&t, m));
    let w = flag_worked_example()?;
    let witness = WitnessOutput::new(&w, seed, 1)?;
    Ok(ReportOutput {
        schema: SCHEMA,
        command: "report-all",
        seed,
        sections,
        grassmann_census: census,
        segre_flattening: FlatteningJson {
            tensor: "3x3x3 tensor of rank 4 or 5".to_string(),
            ranks,
            note: "flattening ranks bound the tensor rank below by 3 only; whether the rank is 4 or 5 is open"
                .to_string(),
        },
        flag_decompositions: commands::verify_decomp(None, samples, seed)?,
        flag_witness: witness,
        notes: vec![
            "Grassmann census records beyond Gr(3,7) rely on the Grassmann defectivity conjecture".to_string(),
            "Witness failures are inconclusive and never rank statements".to_string(),
        ],
    })
}

pub fn markdown(r: &ReportOutput) -> String {
    let mut s = String::from("# ranklab report\n\n");
    let _ = writeln!(s, "seed {}\n", r.seed);
    for sec in &r.sections {
        let _ = writeln!(s, "## {}\n", sec.title);
        if !sec.secants.is_empty() {
            let rows: Vec<Vec<String>> = sec
                .secants
                .iter()
                .map(|x| {
                    vec![
                        format!("{} {:?}", x.family, x.params),
                        x.s.to_string(),
                        x.ambient_dim.to_string(),
                        x.actual_dim.to_string(),
                        x.defect.to_string(),
                        x.hypersurface.to_string(),
                        x.status.to_string(),
                    ]
                })
                .collect();
            s.push_str("```\n");
            s.push_str(&table(
                &["variety", "s=g-1", "N", "dim", "defect", "hypersurface", "status"],
                &rows,
            ));
            s.push_str("```\n\n");
        }
        let rows: Vec<Vec<String>> = sec.bounds.iter().map(|b| render::bounds_cells(b, "-")).collect();
        s.push_str("```\n");
        s.push_str(&table(&BOUNDS_HEADER, &rows));
        s.push_str("```\n\n");
        let mut notes: Vec<&String> = sec.bounds.iter().flat_map(|b| b.notes.iter()).collect();
        notes.sort();
        notes.dedup();
        for n in notes {
            let _ = writeln!(s, "- {n}");
        }
        s.push('\n');
        if sec.title == "Grassmann" {
            let _ = writeln!(s, "### Census, limit {}\n", r.grassmann_census.limit);
            s.push_str("```\n");
            s.push_str(&render::census_text(&r.grassmann_census));
            s.push_str("```\n\n");
        }
        if sec.title == "Segre" {
            let f = &r.segre_flattening;
            let _ = writeln!(s, "Flattening ranks of the {}: {:?}. {}.\n", f.tensor, f.ranks, f.note);
        }
        if sec.title == "Flag" {
            s.push_str("```\n");
            s.push_str(&render::verify_decomp_text(&r.flag_decompositions));
            s.push_str("```\n\nWorked witness:\n\n```\n");
            s.push_str(&render::witness_text(&r.flag_witness));
            s.push_str("```\n\n");
        }
    }
    for n in &r.notes {
        let _ = writeln!(s, "- {n}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use ranklab_core::scalar::ints;

    #[test]
    fn worked_example_residual_point() {
        let w = flag_worked_example().unwrap();
        let r = crate::model::to_layout(HypersurfaceModel::Flag, &w.r).unwrap();
        // R = [[1,0,2],[0,3,0],[-2,0,-4]] up to scaling
        assert!(ranklab_core::scalar::proportional(
            &r,
            &ints(&[1, 0, 2, 0, 3, 0, -2, 0, -4])
        ));
        assert_eq!(w.rank_bound, 3);
        assert!(w.verify().unwrap());
    }
}
