//! Forecast and observation cases from CSV.
//!
//! Columns (header required, any order): `case_id`, `location_id`, `lead_hours`,
//! `prob_tuple`, `det_value`, `ens_members`, `obs_value`, `obs_index`. The first three
//! are mandatory; the others may be absent from the header or left empty. Each row
//! gives exactly one of `prob_tuple` (`P(S_1);...;P(S_m)`), `det_value` or
//! `ens_members` (semicolon-separated), and at most one of `obs_value`, `obs_index`.
//! Short rows are padded with empty cells.

use std::io::Read;
use std::path::Path;

use serde::Serialize;

use super::config::csv_error;
use crate::error::{Error, Result, RowError};
use crate::matrix::Observation;

/// The forecast given for one case.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum ForecastInput {
    Probabilities(Vec<f64>),
    Deterministic(f64),
    Ensemble(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseRecord {
    pub case_id: String,
    pub location_id: String,
    pub lead_hours: f64,
    pub forecast: ForecastInput,
    pub observation: Option<Observation>,
    /// 1-based line in the source file.
    pub line: u64,
}

const MANDATORY: [&str; 3] = ["case_id", "location_id", "lead_hours"];
const OPTIONAL: [&str; 5] = ["prob_tuple", "det_value", "ens_members", "obs_value", "obs_index"];

pub fn load_cases(path: impl AsRef<Path>) -> Result<Vec<CaseRecord>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_cases(file).map_err(|e| match e {
        Error::Config { path: p, message } if p == "<input>" => Error::config(path.display().to_string(), message),
        other => other,
    })
}

/// Parses case rows from any reader; errors from every bad row are returned together.
pub fn parse_cases(input: impl Read) -> Result<Vec<CaseRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers = reader
        .headers()
        .map_err(|e| csv_error(Path::new("<input>"), e))?
        .clone();
    let find = |name: &str| headers.iter().position(|h| h == name);
    let missing: Vec<&str> = MANDATORY.iter().copied().filter(|c| find(c).is_none()).collect();
    if !missing.is_empty() {
        return Err(Error::config(
            "<input>",
            format!("missing mandatory column(s): {}", missing.join(", ")),
        ));
    }
    if let Some(unknown) = headers.iter().find(|h| !MANDATORY.contains(h) && !OPTIONAL.contains(h)) {
        return Err(Error::config("<input>", format!("unknown column {unknown:?}")));
    }
    let cols = Columns {
        case_id: find("case_id").unwrap(),
        location_id: find("location_id").unwrap(),
        lead_hours: find("lead_hours").unwrap(),
        prob_tuple: find("prob_tuple"),
        det_value: find("det_value"),
        ens_members: find("ens_members"),
        obs_value: find("obs_value"),
        obs_index: find("obs_index"),
    };

    let mut cases = Vec::new();
    let mut errors = Vec::new();
    for rec in reader.records() {
        let rec = match rec {
            Ok(r) => r,
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                errors.push(RowError {
                    line,
                    message: e.to_string(),
                });
                continue;
            }
        };
        let line = rec.position().map_or(0, |p| p.line());
        if rec.iter().all(str::is_empty) {
            continue;
        }
        match parse_row(&rec, &cols, line) {
            Ok(c) => cases.push(c),
            Err(message) => errors.push(RowError { line, message }),
        }
    }
    if !errors.is_empty() {
        return Err(Error::Rows(errors));
    }
    if cases.is_empty() {
        return Err(Error::Input("no cases".into()));
    }
    Ok(cases)
}

struct Columns {
    case_id: usize,
    location_id: usize,
    lead_hours: usize,
    prob_tuple: Option<usize>,
    det_value: Option<usize>,
    ens_members: Option<usize>,
    obs_value: Option<usize>,
    obs_index: Option<usize>,
}

fn cell(rec: &csv::StringRecord, col: Option<usize>) -> Option<&str> {
    col.and_then(|c| rec.get(c)).filter(|s| !s.is_empty())
}

fn number(name: &str, s: &str) -> std::result::Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("{name}: unparseable number {s:?}"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{name}: {s:?} is not finite"))
    }
}

fn list(name: &str, s: &str) -> std::result::Result<Vec<f64>, String> {
    s.split(';').map(|x| number(name, x.trim())).collect()
}

fn parse_row(rec: &csv::StringRecord, c: &Columns, line: u64) -> std::result::Result<CaseRecord, String> {
    let case_id = cell(rec, Some(c.case_id)).ok_or("case_id is empty")?.to_string();
    let location_id = cell(rec, Some(c.location_id)).unwrap_or("").to_string();
    let lead_hours = number("lead_hours", cell(rec, Some(c.lead_hours)).ok_or("lead_hours is empty")?)?;
    if lead_hours < 0.0 {
        return Err(format!("lead_hours: {lead_hours} is negative"));
    }

    let forms = [
        cell(rec, c.prob_tuple).map(|s| ("prob_tuple", s)),
        cell(rec, c.det_value).map(|s| ("det_value", s)),
        cell(rec, c.ens_members).map(|s| ("ens_members", s)),
    ];
    let given: Vec<(&str, &str)> = forms.into_iter().flatten().collect();
    let forecast = match given.as_slice() {
        [] => return Err("no forecast: give one of prob_tuple, det_value, ens_members".into()),
        [("prob_tuple", s)] => ForecastInput::Probabilities(list("prob_tuple", s)?),
        [("det_value", s)] => ForecastInput::Deterministic(number("det_value", s)?),
        [(_, s)] => ForecastInput::Ensemble(list("ens_members", s)?),
        many => {
            return Err(format!(
                "more than one forecast form: {}",
                many.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
            ))
        }
    };

    let observation = match (cell(rec, c.obs_value), cell(rec, c.obs_index)) {
        (Some(_), Some(_)) => return Err("both obs_value and obs_index given".into()),
        (Some(v), None) => Some(Observation::Value(number("obs_value", v)?)),
        (None, Some(k)) => Some(Observation::Partition(
            k.parse().map_err(|_| format!("obs_index: {k:?} is not a non-negative integer"))?,
        )),
        (None, None) => None,
    };

    Ok(CaseRecord {
        case_id,
        location_id,
        lead_hours,
        forecast,
        observation,
        line,
    })
}
