//! JSON service definitions.
//!
//! ```json
//! {
//!   "name": "sydney-24h-rain",
//!   "severity": { "labels": ["MIN", "MOD+", "SEV+", "EXT"], "units": "mm",
//!                 "thresholds": [100, 150, 200], "exceedance": "inclusive",
//!                 "location_thresholds": "locations.csv" },
//!   "certainty": { "labels": ["unlikely", "possible", "likely", "very likely"],
//!                  "thresholds": [0.1, 0.4, 0.7] },
//!   "levels": { "labels": ["Nil", "Yellow Warning", "Orange Warning", "Red Warning"] },
//!   "phases": [
//!     { "name": "NIL STATE", "min_lead_hours": 72 },
//!     { "name": "SHORT-RANGE", "min_lead_hours": 0, "urgency": "Expected",
//!       "scaling": { "MOD+": ["Nil", "Yellow Warning", "Yellow Warning", "Orange Warning"],
//!                    "SEV+": [0, 1, 2, 3], "EXT": [0, 2, 3, 3] } }
//!   ],
//!   "evaluation_weights": [1, 2, 3]
//! }
//! ```
//!
//! `scaling` may replace `phases` for a service with a single matrix. Scaling columns
//! are keyed by severity label and list levels from the lowest certainty category
//! upwards, by label or index; the first severity column may be omitted (it is Nil).
//! A phase without `scaling` is all-Nil. When the longest-lead phase is not all-Nil a
//! `NIL STATE` phase is added beyond it. Optional fields: `rmas_weights`,
//! `warning_weight_override` (maps of severity label to one weight per probability
//! threshold), `cap.severity_tie_break` (`lowest` or `highest`). Relative paths are
//! resolved against the config file's directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::service::{ServiceDefinition, SeverityTieBreak};
use crate::error::{Error, Result};
use crate::matrix::{
    CertaintyScheme, EvaluationWeights, Exceedance, Interval, IntervalSet, Phase, PhasedScaling, ScalingError,
    SeverityScheme, WarningLevels, WarningScaling, NIL_STATE,
};
use crate::scoring::WeightGrid;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawService {
    name: String,
    severity: RawSeverity,
    certainty: RawCertainty,
    levels: RawLevels,
    scaling: Option<RawColumns>,
    phases: Option<Vec<RawPhase>>,
    evaluation_weights: Option<Vec<f64>>,
    rmas_weights: Option<BTreeMap<String, Vec<f64>>>,
    warning_weight_override: Option<BTreeMap<String, Vec<f64>>>,
    #[serde(default)]
    cap: RawCap,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeverity {
    labels: Vec<String>,
    units: Option<String>,
    thresholds: Option<Vec<f64>>,
    #[serde(default)]
    exceedance: Exceedance,
    sets: Option<Vec<Vec<RawInterval>>>,
    location_thresholds: Option<PathBuf>,
}

/// `null` bounds are unbounded.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInterval {
    lower: Option<f64>,
    upper: Option<f64>,
    #[serde(default)]
    lower_closed: bool,
    #[serde(default)]
    upper_closed: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCertainty {
    labels: Option<Vec<String>>,
    thresholds: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLevels {
    labels: Vec<String>,
    colors: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPhase {
    name: String,
    min_lead_hours: f64,
    urgency: Option<String>,
    scaling: Option<RawColumns>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum LevelRef {
    Index(usize),
    Label(String),
}

type RawColumns = BTreeMap<String, Vec<LevelRef>>;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCap {
    #[serde(default)]
    severity_tie_break: RawTieBreak,
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawTieBreak {
    #[default]
    Lowest,
    Highest,
}

/// Reads and fully validates a service definition file.
pub fn load_service_config(path: impl AsRef<Path>) -> Result<ServiceDefinition> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    parse_service_config(&text, base)
}

/// Parses a service definition; `base_dir` resolves the location-threshold sidecar.
pub fn parse_service_config(text: &str, base_dir: &Path) -> Result<ServiceDefinition> {
    let raw: RawService = serde_json::from_str(text).map_err(|e| {
        Error::config(
            format!("line {} column {}", e.line(), e.column()),
            format!("cannot parse service definition: {e}"),
        )
    })?;
    build(raw, base_dir)
}

fn at(path: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Config { .. } | Error::Rows(_) | Error::Io { .. } => e,
        Error::Input(m) | Error::Structure(m) => Error::config(path, m),
        other => Error::config(path, other.to_string()),
    }
}

fn build(raw: RawService, base_dir: &Path) -> Result<ServiceDefinition> {
    let severity = build_severity(&raw.severity)?;
    let m = severity.m();

    let cert_labels = match raw.certainty.labels {
        Some(l) => l,
        None => (0..=raw.certainty.thresholds.len()).map(|j| format!("C{j}")).collect(),
    };
    let certainty = CertaintyScheme::new(cert_labels, raw.certainty.thresholds).map_err(at("certainty"))?;

    let levels = WarningLevels::new(raw.levels.labels, raw.levels.colors).map_err(at("levels"))?;
    let q = levels.q();

    let ctx = Ctx {
        severity: &severity,
        certainty: &certainty,
        levels: &levels,
    };
    let phases = match (raw.scaling, raw.phases) {
        (Some(_), Some(_)) => return Err(Error::config("scaling", "give either scaling or phases, not both")),
        (None, None) => return Err(Error::config("phases", "missing: give scaling or phases")),
        (Some(cols), None) => PhasedScaling::single("SINGLE", ctx.scaling(&cols, "scaling")?),
        (None, Some(list)) => ctx.phases(list)?,
    };

    let evaluation = match raw.evaluation_weights {
        Some(v) => EvaluationWeights::new(v).map_err(at("evaluation_weights"))?,
        None => EvaluationWeights::ones(q),
    };
    if evaluation.q() != q {
        return Err(Error::config(
            "evaluation_weights",
            format!("{} weights given for {q} warning levels above Nil", evaluation.q()),
        ));
    }

    let mut service =
        ServiceDefinition::new(raw.name, severity.clone(), certainty.clone(), levels.clone(), phases, evaluation)?;
    if let Some(w) = raw.rmas_weights {
        service = service.with_rmas_weights(ctx.grid(&w, "rmas_weights")?)?;
    }
    if let Some(w) = raw.warning_weight_override {
        service = service.with_warning_weight_override(ctx.grid(&w, "warning_weight_override")?)?;
    }
    service.severity_tie_break = match raw.cap.severity_tie_break {
        RawTieBreak::Lowest => SeverityTieBreak::Lowest,
        RawTieBreak::Highest => SeverityTieBreak::Highest,
    };
    if let Some(p) = &raw.severity.location_thresholds {
        let path = base_dir.join(p);
        for (loc, t) in load_location_thresholds(&path, m)? {
            service = service
                .with_location_thresholds(loc.clone(), t)
                .map_err(|e| Error::config(format!("{}: location {loc}", path.display()), e.to_string()))?;
        }
    }
    Ok(service)
}

fn build_severity(raw: &RawSeverity) -> Result<SeverityScheme> {
    let scheme = match (&raw.thresholds, &raw.sets) {
        (Some(_), Some(_)) => {
            return Err(Error::config("severity", "give either thresholds or sets, not both"));
        }
        (None, None) => return Err(Error::config("severity.thresholds", "missing")),
        (Some(t), None) => {
            SeverityScheme::exceedance(raw.labels.clone(), t.clone(), raw.exceedance).map_err(at("severity.thresholds"))?
        }
        (None, Some(sets)) => {
            let mut built = Vec::with_capacity(sets.len());
            for (i, set) in sets.iter().enumerate() {
                let path = format!("severity.sets[{i}]");
                let intervals = set
                    .iter()
                    .map(|iv| {
                        Interval::new(
                            iv.lower.unwrap_or(f64::NEG_INFINITY),
                            iv.upper.unwrap_or(f64::INFINITY),
                            iv.lower_closed,
                            iv.upper_closed,
                        )
                    })
                    .collect::<Result<Vec<_>>>()
                    .map_err(at(&path))?;
                built.push(IntervalSet::new(intervals).map_err(at(&path))?);
            }
            SeverityScheme::from_sets(raw.labels.clone(), built).map_err(at("severity.sets"))?
        }
    };
    Ok(match &raw.units {
        Some(u) => scheme.with_units(u.clone()),
        None => scheme,
    })
}

struct Ctx<'a> {
    severity: &'a SeverityScheme,
    certainty: &'a CertaintyScheme,
    levels: &'a WarningLevels,
}

impl Ctx<'_> {
    fn severity_index(&self, label: &str, path: &str) -> Result<usize> {
        self.severity
            .labels()
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::config(format!("{path}.{label}"), "unknown severity label"))
    }

    fn scaling(&self, cols: &RawColumns, path: &str) -> Result<WarningScaling> {
        let (m, n, q) = (self.severity.m(), self.certainty.n(), self.levels.q());
        let mut grid: Vec<Option<Vec<usize>>> = vec![None; m + 1];
        for (label, refs) in cols {
            let i = self.severity_index(label, path)?;
            let cpath = format!("{path}.{label}");
            if refs.len() != n + 1 {
                return Err(Error::config(
                    &cpath,
                    format!("{} levels given, need one per certainty category ({})", refs.len(), n + 1),
                ));
            }
            let col = refs
                .iter()
                .enumerate()
                .map(|(j, r)| self.level(r, &format!("{cpath}[{j}]")))
                .collect::<Result<Vec<_>>>()?;
            grid[i] = Some(col);
        }
        if grid[0].is_none() {
            grid[0] = Some(vec![0; n + 1]);
        }
        let grid = grid
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or_else(|| Error::config(format!("{path}.{}", self.severity.label(i)), "missing column"))
            })
            .collect::<Result<Vec<_>>>()?;
        WarningScaling::new(grid, q).map_err(|e| match e {
            ScalingError::Violations(v) => Error::config(
                path,
                v.iter()
                    .map(|v| v.describe(self.severity.labels(), self.certainty.labels()))
                    .collect::<Vec<_>>()
                    .join("; "),
            ),
            other => Error::config(path, other.to_string()),
        })
    }

    fn level(&self, r: &LevelRef, path: &str) -> Result<usize> {
        match r {
            LevelRef::Index(k) if *k <= self.levels.q() => Ok(*k),
            LevelRef::Index(k) => Err(Error::config(
                path,
                format!("level {k} out of range 0..={}", self.levels.q()),
            )),
            LevelRef::Label(l) => self
                .levels
                .index_of(l)
                .ok_or_else(|| Error::config(path, format!("unknown warning level {l:?}"))),
        }
    }

    fn phases(&self, list: Vec<RawPhase>) -> Result<PhasedScaling> {
        let (m, n, q) = (self.severity.m(), self.certainty.n(), self.levels.q());
        if list.is_empty() {
            return Err(Error::config("phases", "empty"));
        }
        let mut phases = Vec::with_capacity(list.len() + 1);
        for (idx, p) in list.into_iter().enumerate() {
            let path = format!("phases[{idx}]");
            if !(p.min_lead_hours.is_finite() && p.min_lead_hours >= 0.0) {
                return Err(Error::config(format!("{path}.min_lead_hours"), "must be a non-negative number"));
            }
            let scaling = match &p.scaling {
                Some(cols) => self.scaling(cols, &format!("{path}.scaling"))?,
                None => WarningScaling::nil_state(m, n, q),
            };
            phases.push(Phase {
                name: p.name,
                min_lead_hours: p.min_lead_hours,
                scaling,
                urgency: p.urgency,
            });
        }
        let longest = phases
            .iter()
            .max_by(|a, b| a.min_lead_hours.total_cmp(&b.min_lead_hours))
            .unwrap();
        if !longest.scaling.is_nil() {
            phases.push(Phase {
                name: NIL_STATE.into(),
                min_lead_hours: f64::INFINITY,
                scaling: WarningScaling::nil_state(m, n, q),
                urgency: None,
            });
        }
        PhasedScaling::new(phases).map_err(|e| Error::config("phases", e.to_string()))
    }

    fn grid(&self, raw: &BTreeMap<String, Vec<f64>>, path: &str) -> Result<WeightGrid> {
        let (m, n) = (self.severity.m(), self.certainty.n());
        let mut rows = vec![vec![0.0; n]; m];
        for (label, w) in raw {
            let i = self.severity_index(label, path)?;
            if i == 0 {
                return Err(Error::config(format!("{path}.{label}"), "the first severity column carries no weight"));
            }
            if w.len() != n {
                return Err(Error::config(
                    format!("{path}.{label}"),
                    format!("{} weights given, need one per probability threshold ({n})", w.len()),
                ));
            }
            rows[i - 1] = w.clone();
        }
        WeightGrid::new(m, n, rows).map_err(at(path))
    }
}

/// Reads a `location_id,t_1,...,t_m` sidecar; the header row is required.
pub fn load_location_thresholds(path: &Path, m: usize) -> Result<Vec<(String, Vec<f64>)>> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| csv_error(path, e))?;
    let mut out = Vec::new();
    let mut errors = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| csv_error(path, e))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != m + 1 {
            errors.push(crate::error::RowError {
                line,
                message: format!("expected location id and {m} thresholds, got {} fields", rec.len()),
            });
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> = rec.iter().skip(1).map(str::parse::<f64>).collect();
        match parsed {
            Ok(t) => out.push((rec[0].to_string(), t)),
            Err(e) => errors.push(crate::error::RowError {
                line,
                message: format!("unparseable threshold: {e}"),
            }),
        }
    }
    if errors.is_empty() {
        Ok(out)
    } else {
        Err(Error::Rows(errors))
    }
}

pub(crate) fn csv_error(path: &Path, e: csv::Error) -> Error {
    let path = path.display().to_string();
    match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::Io { path, source },
        other => Error::config(path, format!("{other:?}")),
    }
}
