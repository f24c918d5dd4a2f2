//! Text and CSV renderings of the JSON model.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{CliError, Result};
use crate::model::{
    BoundsJson, BoundsOutput, CensusOutput, DimOutput, ExactnessJson, SecantRecordJson, VerifyDecompOutput,
    WitnessOutput,
};

pub fn json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Config(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), ToString::to_string)
}

fn params(p: &[usize]) -> String {
    p.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let l: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(l.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    line(
        width
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .iter()
            .map(String::as_str)
            .collect(),
    );
    for r in rows {
        line(r.iter().map(String::as_str).collect());
    }
    out
}

const RECORD_HEADER: [&str; 11] = [
    "family",
    "params",
    "s",
    "ambient_dim",
    "expected_dim",
    "actual_dim",
    "defect",
    "hypersurface",
    "source",
    "status",
    "verified_dim",
];

fn record_cells(r: &SecantRecordJson, missing: &str) -> Vec<String> {
    vec![
        r.family.clone(),
        params(&r.params),
        r.s.to_string(),
        r.ambient_dim.to_string(),
        r.expected_dim.to_string(),
        r.actual_dim.to_string(),
        r.defect.to_string(),
        r.hypersurface.to_string(),
        r.source.to_string(),
        r.status.to_string(),
        r.verified_dim.map_or_else(|| missing.to_string(), |v| v.to_string()),
    ]
}

fn csv_records(rows: &[&SecantRecordJson]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Config(e.to_string());
    w.write_record(RECORD_HEADER).map_err(err)?;
    for r in rows {
        w.write_record(record_cells(r, "")).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Config(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Config(e.to_string()))
}

pub fn dim_text(o: &DimOutput) -> String {
    let r = &o.record;
    let mut s = format!(
        "{} ({}) sigma_{}: ambient P^{}, expected dim {}, actual dim {}, defect {}, hypersurface={} [{}, {}]\n",
        r.family,
        params(&r.params),
        r.s,
        r.ambient_dim,
        r.expected_dim,
        r.actual_dim,
        r.defect,
        r.hypersurface,
        r.source,
        r.status
    );
    if let Some(v) = r.verified_dim {
        let _ = writeln!(s, "terracini dim {v}");
    }
    s
}

pub fn dim_csv(o: &DimOutput) -> Result<String> {
    csv_records(&[&o.record])
}

pub fn census_text(o: &CensusOutput) -> String {
    let rows: Vec<Vec<String>> = o.records.iter().map(|r| record_cells(r, "-")).collect();
    let mut s = format!(
        "{} census, limit {}, verify {}: {} record(s)\n\n",
        o.family, o.limit, o.verify, o.count
    );
    s.push_str(&table(&RECORD_HEADER, &rows));
    s
}

pub fn census_csv(o: &CensusOutput) -> Result<String> {
    csv_records(&o.records.iter().collect::<Vec<_>>())
}

pub const BOUNDS_HEADER: [&str; 16] = [
    "variety",
    "N",
    "dim_x",
    "g",
    "sigma_g-1_hyp",
    "codim",
    "2g",
    "2g-1",
    "bhmt",
    "jelisiejew",
    "bdp",
    "deparis2",
    "r_max,g-1",
    "main",
    "known_r_max",
    "family",
];

pub fn bounds_cells(b: &BoundsJson, missing: &str) -> Vec<String> {
    let o = |x: String| if x == "-" { missing.to_string() } else { x };
    let r_prev = match (b.r_max_prev, b.r_max_prev_upper_bound_only) {
        (Some(v), Some(true)) => format!("<={v}"),
        (Some(v), _) => v.to_string(),
        _ => "-".to_string(),
    };
    vec![
        b.name.clone(),
        b.ambient_dim.to_string(),
        b.dim_x.to_string(),
        b.g.to_string(),
        b.sigma_prev_hypersurface.to_string(),
        b.bounds.codim.to_string(),
        b.bounds.bt_general.to_string(),
        o(opt(&b.bounds.bt_hypersurface)),
        o(opt(&b.bounds.bhmt)),
        o(opt(&b.bounds.jelisiejew)),
        o(opt(&b.bounds.bdp)),
        o(opt(&b.bounds.deparis2)),
        o(r_prev),
        o(opt(&b.bounds.main)),
        o(opt(&b.known_r_max)),
        format!("{} {}", b.family, params(&b.params)).trim_end().to_string(),
    ]
}

pub fn bounds_text(o: &BoundsOutput) -> String {
    let mut s = table(&BOUNDS_HEADER, &[bounds_cells(&o.report, "-")]);
    for n in &o.report.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

pub fn bounds_csv(o: &BoundsOutput) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Config(e.to_string());
    w.write_record(BOUNDS_HEADER).map_err(err)?;
    w.write_record(bounds_cells(&o.report, "")).map_err(err)?;
    let bytes = w.into_inner().map_err(|e| CliError::Config(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Config(e.to_string()))
}

pub fn verify_decomp_text(o: &VerifyDecompOutput) -> String {
    let rows: Vec<Vec<String>> = o
        .cases
        .iter()
        .map(|c| vec![c.case.clone(), c.passed.to_string(), c.failed.to_string()])
        .collect();
    let mut s = format!(
        "flag decompositions: {} samples per case, seed {}\n\n",
        o.samples_per_case, o.seed
    );
    s.push_str(&table(&["case", "passed", "failed"], &rows));
    for c in &o.cases {
        for f in &c.failures {
            let _ = writeln!(
                s,
                "case {} failed at (a,b,c,d) = ({}), k = {}: {}",
                c.case,
                f.params.join(", "),
                f.k.as_deref().unwrap_or("-"),
                f.reason
            );
        }
    }
    let _ = writeln!(
        s,
        "\ntotal: {} passed, {} failed{}",
        o.passed,
        o.failed,
        if o.all_passed { "" } else { " (FAILURES)" }
    );
    s
}

pub fn witness_text(o: &WitnessOutput) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "variety: {} ({})", o.variety, o.layout);
    let _ = writeln!(s, "P = {}", o.p.join(" "));
    let _ = writeln!(s, "Q = {}", o.q.join(" "));
    let _ = writeln!(s, "R = {}", o.r.join(" "));
    let _ = writeln!(s, "P = ({})·Q + ({})·R", o.alpha, o.beta);
    match &o.exactness {
        ExactnessJson::Exact => {
            let _ = writeln!(s, "exact");
        }
        ExactnessJson::NumericWithResidual {
            tolerance, residual, ..
        } => {
            let _ = writeln!(s, "numeric root, residual {residual:e} (tolerance {tolerance:e})");
        }
    }
    let _ = writeln!(
        s,
        "rank bound {}, verified={}, tries {}, degenerate directions {}",
        o.rank_bound, o.verified, o.tries, o.degenerate
    );
    s
}
