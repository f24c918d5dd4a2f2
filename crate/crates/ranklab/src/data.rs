//! Exception tables and known rank facts as JSON data files.
//!
//! Lookup order: an explicit path, then `$RANKLAB_DATA_DIR/<name>`, then
//! the copy compiled into the binary.

use std::fs;
use std::path::{Path, PathBuf};

use ranklab_core::bounds::{KnownFact, KnownRankFacts};
use ranklab_core::secant::{ExceptionEntry, ExceptionTable, Status};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::model::FamilyRef;

pub const DATA_DIR_VAR: &str = "RANKLAB_DATA_DIR";
pub const EXCEPTIONS_FILE: &str = "exceptions.json";
pub const KNOWN_FACTS_FILE: &str = "known_facts.json";

const EMBEDDED_EXCEPTIONS: &str = include_str!("../data/exceptions.json");
const EMBEDDED_FACTS: &str = include_str!("../data/known_facts.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FileStatus {
    Theorem,
    Conjecture,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExceptionRow {
    pub family: String,
    pub params: Vec<usize>,
    pub s: usize,
    pub defect: usize,
    pub status: FileStatus,
    pub citation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactRow {
    pub family: String,
    pub params: Vec<usize>,
    /// `null` for the maximum rank on the whole ambient space.
    pub sigma: Option<usize>,
    pub value: usize,
    pub is_upper_bound_only: bool,
    pub citation: String,
}

/// Where a data file came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DataSource {
    File(PathBuf),
    Embedded,
}

impl DataSource {
    pub fn label(&self) -> String {
        match self {
            DataSource::File(p) => p.display().to_string(),
            DataSource::Embedded => "<embedded>".to_string(),
        }
    }
}

/// Resolves a data file: the explicit path if given, else the data
/// directory from the environment, else the embedded copy.
pub fn resolve(explicit: Option<&Path>, name: &str) -> DataSource {
    if let Some(p) = explicit {
        return DataSource::File(p.to_path_buf());
    }
    match std::env::var_os(DATA_DIR_VAR) {
        Some(dir) if !dir.is_empty() => DataSource::File(PathBuf::from(dir).join(name)),
        _ => DataSource::Embedded,
    }
}

fn read_source(src: &DataSource, embedded: &'static str) -> Result<String> {
    match src {
        DataSource::Embedded => Ok(embedded.to_string()),
        DataSource::File(p) => fs::read_to_string(p).map_err(|source| CliError::Read {
            path: p.clone(),
            source,
        }),
    }
}

fn status(s: FileStatus) -> Status {
    match s {
        FileStatus::Theorem => Status::Theorem,
        FileStatus::Conjecture => Status::Conjecture,
    }
}

fn file_status(s: Status) -> Option<FileStatus> {
    match s {
        Status::Theorem => Some(FileStatus::Theorem),
        Status::Conjecture => Some(FileStatus::Conjecture),
        Status::Sampled => None,
    }
}

fn data_error(label: &str, message: impl ToString) -> CliError {
    CliError::DataFile {
        path: label.to_string(),
        message: message.to_string(),
    }
}

pub fn parse_exceptions(text: &str, label: &str) -> Result<ExceptionTable> {
    let rows: Vec<ExceptionRow> = serde_json::from_str(text).map_err(|e| data_error(label, e))?;
    let mut t = ExceptionTable::new();
    for (i, row) in rows.into_iter().enumerate() {
        let family = FamilyRef {
            family: row.family,
            params: row.params,
        }
        .to_family()
        .map_err(|e| data_error(label, format!("entry {i}: {e}")))?;
        t.insert(ExceptionEntry {
            family,
            s: row.s,
            defect: row.defect,
            status: status(row.status),
            citation: row.citation,
        })
        .map_err(|e| data_error(label, format!("entry {i}: {e}")))?;
    }
    Ok(t)
}

pub fn parse_known_facts(text: &str, label: &str) -> Result<KnownRankFacts> {
    let rows: Vec<FactRow> = serde_json::from_str(text).map_err(|e| data_error(label, e))?;
    let mut k = KnownRankFacts::new();
    for (i, row) in rows.into_iter().enumerate() {
        let family = FamilyRef {
            family: row.family,
            params: row.params,
        }
        .to_family()
        .map_err(|e| data_error(label, format!("entry {i}: {e}")))?;
        k.insert(KnownFact {
            family,
            sigma: row.sigma,
            value: row.value,
            is_upper_bound_only: row.is_upper_bound_only,
            citation: row.citation,
        })
        .map_err(|e| data_error(label, format!("entry {i}: {e}")))?;
    }
    Ok(k)
}

pub fn load_exceptions(explicit: Option<&Path>) -> Result<(ExceptionTable, DataSource)> {
    let src = resolve(explicit, EXCEPTIONS_FILE);
    let text = read_source(&src, EMBEDDED_EXCEPTIONS)?;
    Ok((parse_exceptions(&text, &src.label())?, src))
}

pub fn load_known_facts(explicit: Option<&Path>) -> Result<(KnownRankFacts, DataSource)> {
    let src = resolve(explicit, KNOWN_FACTS_FILE);
    let text = read_source(&src, EMBEDDED_FACTS)?;
    Ok((parse_known_facts(&text, &src.label())?, src))
}

/// File rows for a table; `Sampled` entries have no file form.
pub fn exception_rows(t: &ExceptionTable) -> Result<Vec<ExceptionRow>> {
    t.entries()
        .iter()
        .map(|e| {
            let f = FamilyRef::from(&e.family);
            Ok(ExceptionRow {
                family: f.family,
                params: f.params,
                s: e.s,
                defect: e.defect,
                status: file_status(e.status)
                    .ok_or_else(|| CliError::Config("sampled entries cannot be written to a table file".into()))?,
                citation: e.citation.clone(),
            })
        })
        .collect()
}

pub fn fact_rows(k: &KnownRankFacts) -> Vec<FactRow> {
    k.facts()
        .iter()
        .map(|f| {
            let r = FamilyRef::from(&f.family);
            FactRow {
                family: r.family,
                params: r.params,
                sigma: f.sigma,
                value: f.value,
                is_upper_bound_only: f.is_upper_bound_only,
                citation: f.citation.clone(),
            }
        })
        .collect()
}
