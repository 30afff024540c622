//! Warning scalings and lead-time phases.
//!
//! A scaling is stored column-major: `level(i, j)` is the warning level index for
//! severity category `S_i` (column) and certainty category `C_j` (row).

use std::fmt;

use thiserror::Error;

/// One of the three structural properties a scaling must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingProperty {
    /// First column and bottom row are Nil.
    A,
    /// Non-decreasing up each severity column (increasing certainty).
    B,
    /// Non-decreasing rightwards along each certainty row (increasing severity).
    C,
}

impl fmt::Display for ScalingProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalingProperty::A => "(a)",
            ScalingProperty::B => "(b)",
            ScalingProperty::C => "(c)",
        })
    }
}

/// A single failed check, naming the offending cells as `(severity, certainty)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingViolation {
    pub property: ScalingProperty,
    /// For (a) both cells are the same non-Nil cell.
    pub from: (usize, usize),
    pub to: (usize, usize),
}

impl ScalingViolation {
    /// Human-readable description using category labels.
    pub fn describe(&self, severity: &[String], certainty: &[String]) -> String {
        let sev = |i: usize| severity.get(i).cloned().unwrap_or_else(|| format!("S{i}"));
        let cer = |j: usize| certainty.get(j).cloned().unwrap_or_else(|| format!("C{j}"));
        match self.property {
            ScalingProperty::A => format!(
                "scaling property (a) at column {}, row {}: first column and bottom row must be Nil",
                sev(self.from.0),
                cer(self.from.1)
            ),
            ScalingProperty::B => format!(
                "scaling property (b) at column {}, rows {}\u{2192}{}: level decreases with increasing certainty",
                sev(self.from.0),
                cer(self.from.1),
                cer(self.to.1)
            ),
            ScalingProperty::C => format!(
                "scaling property (c) at row {}, columns {}\u{2192}{}: level decreases with increasing severity",
                cer(self.from.1),
                sev(self.from.0),
                sev(self.to.0)
            ),
        }
    }
}

impl fmt::Display for ScalingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe(&[], &[]))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalingError {
    #[error("scaling has {got_columns} columns of heights {got_rows:?}; expected {columns} columns of height {rows}")]
    Dimension {
        columns: usize,
        rows: usize,
        got_columns: usize,
        got_rows: Vec<usize>,
    },
    #[error("scaling cell ({column}, {row}) has level {level} but the highest level is {q}")]
    LevelOutOfRange {
        column: usize,
        row: usize,
        level: usize,
        q: usize,
    },
    #[error("{}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Violations(Vec<ScalingViolation>),
}

impl ScalingError {
    pub fn violations(&self) -> &[ScalingViolation] {
        match self {
            ScalingError::Violations(v) => v,
            _ => &[],
        }
    }
}

/// Checks dimensions, level range and properties (a)-(c) of a column-major grid.
///
/// `grid[i][j]` is the level of severity `i` at certainty `j`; the grid must be
/// `(m + 1)` columns of `(n + 1)` entries each in `0..=q`. Dimension and range
/// problems are reported before any property is checked.
pub fn validate_scaling(grid: &[Vec<usize>], m: usize, n: usize, q: usize) -> Result<(), ScalingError> {
    if grid.len() != m + 1 || grid.iter().any(|c| c.len() != n + 1) {
        return Err(ScalingError::Dimension {
            columns: m + 1,
            rows: n + 1,
            got_columns: grid.len(),
            got_rows: grid.iter().map(Vec::len).collect(),
        });
    }
    for (i, col) in grid.iter().enumerate() {
        for (j, &level) in col.iter().enumerate() {
            if level > q {
                return Err(ScalingError::LevelOutOfRange {
                    column: i,
                    row: j,
                    level,
                    q,
                });
            }
        }
    }

    let mut violations = Vec::new();
    for i in 0..=m {
        for j in 0..=n {
            if (i == 0 || j == 0) && grid[i][j] != 0 {
                violations.push(ScalingViolation {
                    property: ScalingProperty::A,
                    from: (i, j),
                    to: (i, j),
                });
            }
        }
    }
    for i in 0..=m {
        for j in 1..=n {
            if grid[i][j - 1] > grid[i][j] {
                violations.push(ScalingViolation {
                    property: ScalingProperty::B,
                    from: (i, j - 1),
                    to: (i, j),
                });
            }
        }
    }
    for j in 0..=n {
        for i in 1..=m {
            if grid[i - 1][j] > grid[i][j] {
                violations.push(ScalingViolation {
                    property: ScalingProperty::C,
                    from: (i - 1, j),
                    to: (i, j),
                });
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(ScalingError::Violations(violations))
    }
}

/// A validated warning scaling.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WarningScaling {
    columns: Vec<Vec<usize>>,
    q: usize,
}

impl WarningScaling {
    /// Builds from column-major levels (`columns[i][j]`, including column 0 and row 0).
    pub fn new(columns: Vec<Vec<usize>>, q: usize) -> Result<Self, ScalingError> {
        let m = columns.len().saturating_sub(1);
        let n = columns.first().map_or(0, |c| c.len().saturating_sub(1));
        if m == 0 || n == 0 {
            return Err(ScalingError::Dimension {
                columns: m.max(1) + 1,
                rows: n.max(1) + 1,
                got_columns: columns.len(),
                got_rows: columns.iter().map(Vec::len).collect(),
            });
        }
        validate_scaling(&columns, m, n, q)?;
        Ok(WarningScaling { columns, q })
    }

    /// Builds from the warning columns `S_1..S_m` only; column `S_0` is filled with Nil.
    pub fn from_warning_columns(columns: Vec<Vec<usize>>, q: usize) -> Result<Self, ScalingError> {
        let n1 = columns.first().map_or(0, Vec::len);
        let mut full = vec![vec![0; n1]];
        full.extend(columns);
        WarningScaling::new(full, q)
    }

    /// The all-Nil scaling.
    pub fn nil_state(m: usize, n: usize, q: usize) -> Self {
        WarningScaling {
            columns: vec![vec![0; n + 1]; m + 1],
            q,
        }
    }

    pub fn m(&self) -> usize {
        self.columns.len() - 1
    }

    pub fn n(&self) -> usize {
        self.columns[0].len() - 1
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn level(&self, severity: usize, certainty: usize) -> usize {
        self.columns[severity][certainty]
    }

    pub fn column(&self, severity: usize) -> &[usize] {
        &self.columns[severity]
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    pub fn is_nil(&self) -> bool {
        self.columns.iter().flatten().all(|&l| l == 0)
    }

    /// Smallest certainty index at which column `i` reaches at least level `k`.
    pub fn first_reaching(&self, i: usize, k: usize) -> Option<usize> {
        self.columns[i].iter().position(|&l| l >= k)
    }

    /// Cellwise `self <= other`.
    pub fn dominated_by(&self, other: &WarningScaling) -> bool {
        self.columns.len() == other.columns.len()
            && self
                .columns
                .iter()
                .zip(&other.columns)
                .all(|(a, b)| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x <= y))
    }
}

/// One lead-time phase: applies for leads in `[min_lead_hours, next longer phase's bound)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Phase {
    pub name: String,
    pub min_lead_hours: f64,
    pub scaling: WarningScaling,
    /// CAP urgency label; `None` falls back to the service default.
    pub urgency: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhaseError {
    #[error("no phases given")]
    Empty,
    #[error("phases must be sorted by strictly decreasing lead time ({0})")]
    Order(String),
    #[error("shortest phase must start at lead 0 (found {0} h)")]
    ShortestNotZero(f64),
    #[error("longest-lead phase {0} must be the all-Nil scaling")]
    LongestNotNil(String),
    #[error("phase {0} has different matrix dimensions")]
    Shape(String),
    #[error("level at (column {column}, row {row}) decreases from phase {longer} to shorter-lead phase {shorter}")]
    NotMonotone {
        longer: String,
        shorter: String,
        column: usize,
        row: usize,
    },
}

/// Lead-time dependent scaling: phases sorted by decreasing lead time, the first being all-Nil.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasedScaling {
    phases: Vec<Phase>,
}

pub const NIL_STATE: &str = "NIL STATE";

impl PhasedScaling {
    pub fn new(mut phases: Vec<Phase>) -> Result<Self, PhaseError> {
        if phases.is_empty() {
            return Err(PhaseError::Empty);
        }
        // accept any input order; the checks below run on the sorted list
        phases.sort_by(|a, b| b.min_lead_hours.total_cmp(&a.min_lead_hours));
        for w in phases.windows(2) {
            if w[0].min_lead_hours == w[1].min_lead_hours {
                return Err(PhaseError::Order(format!(
                    "{} and {} share lower bound {} h",
                    w[0].name, w[1].name, w[0].min_lead_hours
                )));
            }
        }
        let last = phases.last().unwrap();
        if last.min_lead_hours != 0.0 {
            return Err(PhaseError::ShortestNotZero(last.min_lead_hours));
        }
        if !phases[0].scaling.is_nil() {
            return Err(PhaseError::LongestNotNil(phases[0].name.clone()));
        }
        let (m, n) = (phases[0].scaling.m(), phases[0].scaling.n());
        for p in &phases {
            if p.scaling.m() != m || p.scaling.n() != n {
                return Err(PhaseError::Shape(p.name.clone()));
            }
        }
        for w in phases.windows(2) {
            let (longer, shorter) = (&w[0], &w[1]);
            for i in 0..=m {
                for j in 0..=n {
                    if longer.scaling.level(i, j) > shorter.scaling.level(i, j) {
                        return Err(PhaseError::NotMonotone {
                            longer: longer.name.clone(),
                            shorter: shorter.name.clone(),
                            column: i,
                            row: j,
                        });
                    }
                }
            }
        }
        Ok(PhasedScaling { phases })
    }

    /// A single scaling at every lead time (the NIL phase is never active).
    pub fn single(name: impl Into<String>, scaling: WarningScaling) -> Self {
        let nil = WarningScaling::nil_state(scaling.m(), scaling.n(), scaling.q());
        PhasedScaling {
            phases: vec![
                Phase {
                    name: NIL_STATE.into(),
                    min_lead_hours: f64::INFINITY,
                    scaling: nil,
                    urgency: None,
                },
                Phase {
                    name: name.into(),
                    min_lead_hours: 0.0,
                    scaling,
                    urgency: None,
                },
            ],
        }
    }

    /// Phases in decreasing lead-time order.
    pub fn phases(&self) -> &[Phase] {
        &self.phases
    }

    /// Phases other than the leading all-Nil one, in decreasing lead-time order.
    pub fn warning_phases(&self) -> &[Phase] {
        &self.phases[1..]
    }

    pub fn phase_for_lead_time(&self, lead_hours: f64) -> &Phase {
        let lead = if lead_hours.is_nan() { 0.0 } else { lead_hours.max(0.0) };
        self.phases
            .iter()
            .find(|p| p.min_lead_hours <= lead)
            .unwrap_or_else(|| self.phases.last().unwrap())
    }

    pub fn scaling_for_lead_time(&self, lead_hours: f64) -> &WarningScaling {
        &self.phase_for_lead_time(lead_hours).scaling
    }

    pub fn phase(&self, name: &str) -> Option<&Phase> {
        self.phases.iter().find(|p| p.name == name)
    }

    /// The shortest-lead phase.
    pub fn shortest(&self) -> &Phase {
        self.phases.last().unwrap()
    }
}

pub fn scaling_for_lead_time(phased: &PhasedScaling, lead_hours: f64) -> &WarningScaling {
    phased.scaling_for_lead_time(lead_hours)
}
