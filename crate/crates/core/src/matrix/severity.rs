//! Severity categories: nested subsets of the outcome space.
//!
//! A scheme with `m` warning categories has labels `S_0..S_m`. Category `S_0` is the
//! "never warned" remainder; each `S_i` for `i >= 1` is a finite union of real intervals
//! and `S_{i+1}` must be a subset of `S_i`. The partition index of an outcome `y` is the
//! largest `i` with `y` in `S_i`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How a scalar exceedance threshold treats values equal to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exceedance {
    /// `y >= t` is in the category.
    #[default]
    Inclusive,
    /// `y > t` is in the category.
    Strict,
}

/// A real interval; infinite endpoints are always treated as open.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
    #[serde(default)]
    pub lower_closed: bool,
    #[serde(default)]
    pub upper_closed: bool,
}

impl Interval {
    pub fn new(lower: f64, upper: f64, lower_closed: bool, upper_closed: bool) -> Result<Self> {
        if lower.is_nan() || upper.is_nan() {
            return Err(Error::Input("interval endpoint is NaN".into()));
        }
        let iv = Interval {
            lower,
            upper,
            lower_closed: lower_closed && lower.is_finite(),
            upper_closed: upper_closed && upper.is_finite(),
        };
        if iv.is_empty() {
            return Err(Error::Input(format!("interval {iv} is empty")));
        }
        Ok(iv)
    }

    /// `[t, inf)` or `(t, inf)`.
    pub fn exceeding(t: f64, mode: Exceedance) -> Result<Self> {
        Interval::new(t, f64::INFINITY, mode == Exceedance::Inclusive, false)
    }

    /// `(-inf, t)` or `(-inf, t]`; the mirror image of [`Interval::exceeding`].
    pub fn below(t: f64, mode: Exceedance) -> Result<Self> {
        Interval::new(f64::NEG_INFINITY, t, false, mode == Exceedance::Inclusive)
    }

    pub fn contains(&self, y: f64) -> bool {
        let above_lower = y > self.lower || (self.lower_closed && y == self.lower);
        let below_upper = y < self.upper || (self.upper_closed && y == self.upper);
        above_lower && below_upper
    }

    fn is_empty(&self) -> bool {
        self.lower > self.upper
            || (self.lower == self.upper && !(self.lower_closed && self.upper_closed))
    }

    /// Whether `self` is a subset of `other`.
    pub fn is_within(&self, other: &Interval) -> bool {
        let lower_ok = other.lower < self.lower
            || (other.lower == self.lower && (other.lower_closed || !self.lower_closed));
        let upper_ok = other.upper > self.upper
            || (other.upper == self.upper && (other.upper_closed || !self.upper_closed));
        lower_ok && upper_ok
    }

    /// Whether the union of the two intervals is itself an interval.
    fn touches(&self, next: &Interval) -> bool {
        next.lower < self.upper
            || (next.lower == self.upper && (self.upper_closed || next.lower_closed))
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lower_closed { '[' } else { '(' },
            self.lower,
            self.upper,
            if self.upper_closed { ']' } else { ')' }
        )
    }
}

/// A finite union of disjoint intervals, kept sorted and merged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Interval>", into = "Vec<Interval>")]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn new(mut intervals: Vec<Interval>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::Input("severity category has no intervals".into()));
        }
        intervals.sort_by(|a, b| {
            a.lower
                .total_cmp(&b.lower)
                .then_with(|| b.lower_closed.cmp(&a.lower_closed))
        });
        let mut merged: Vec<Interval> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            match merged.last_mut() {
                Some(last) if last.touches(&iv) => {
                    if iv.upper > last.upper || (iv.upper == last.upper && iv.upper_closed) {
                        last.upper = iv.upper;
                        last.upper_closed = iv.upper_closed;
                    }
                }
                _ => merged.push(iv),
            }
        }
        Ok(IntervalSet { intervals: merged })
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn contains(&self, y: f64) -> bool {
        self.intervals.iter().any(|iv| iv.contains(y))
    }

    /// Subset test. Valid because both sides are merged, so every interval of `self`
    /// must land inside a single interval of `other`.
    pub fn is_subset_of(&self, other: &IntervalSet) -> bool {
        self.intervals
            .iter()
            .all(|a| other.intervals.iter().any(|b| a.is_within(b)))
    }
}

impl TryFrom<Vec<Interval>> for IntervalSet {
    type Error = Error;
    fn try_from(v: Vec<Interval>) -> Result<Self> {
        IntervalSet::new(v)
    }
}

impl From<IntervalSet> for Vec<Interval> {
    fn from(s: IntervalSet) -> Self {
        s.intervals
    }
}

/// Ordered severity categories `S_0 .. S_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeverityScheme {
    labels: Vec<String>,
    categories: Vec<IntervalSet>,
    /// Present when the scheme is a plain increasing list of exceedance thresholds.
    scalar: Option<(Vec<f64>, Exceedance)>,
    units: Option<String>,
}

impl SeverityScheme {
    /// Scalar exceedance scheme: `S_i = {y : y >= t_i}` (or `>` in strict mode).
    pub fn exceedance(labels: Vec<String>, thresholds: Vec<f64>, mode: Exceedance) -> Result<Self> {
        check_labels(&labels, thresholds.len())?;
        if thresholds.iter().any(|t| !t.is_finite()) {
            return Err(Error::Input("severity thresholds must be finite".into()));
        }
        if thresholds.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Input(
                "severity thresholds not strictly increasing".into(),
            ));
        }
        let categories = thresholds
            .iter()
            .map(|&t| IntervalSet::new(vec![Interval::exceeding(t, mode)?]))
            .collect::<Result<Vec<_>>>()?;
        Ok(SeverityScheme {
            labels,
            categories,
            scalar: Some((thresholds, mode)),
            units: None,
        })
    }

    /// General scheme from interval unions; category `i` (0-based in `sets`) is `S_{i+1}`.
    pub fn from_sets(labels: Vec<String>, sets: Vec<IntervalSet>) -> Result<Self> {
        check_labels(&labels, sets.len())?;
        for (i, pair) in sets.windows(2).enumerate() {
            if !pair[1].is_subset_of(&pair[0]) {
                return Err(Error::Input(format!(
                    "severity categories not nested: {} is not a subset of {}",
                    labels[i + 2],
                    labels[i + 1]
                )));
            }
        }
        Ok(SeverityScheme {
            labels,
            categories: sets,
            scalar: None,
            units: None,
        })
    }

    pub fn with_units(mut self, units: impl Into<String>) -> Self {
        self.units = Some(units.into());
        self
    }

    /// Same scheme with different scalar thresholds (per-location overrides).
    pub fn with_thresholds(&self, thresholds: Vec<f64>) -> Result<Self> {
        let Some((_, mode)) = &self.scalar else {
            return Err(Error::Structure(
                "threshold overrides need a scalar exceedance scheme".into(),
            ));
        };
        if thresholds.len() != self.m() {
            return Err(Error::Structure(format!(
                "expected {} thresholds, got {}",
                self.m(),
                thresholds.len()
            )));
        }
        let mut s = SeverityScheme::exceedance(self.labels.clone(), thresholds, *mode)?;
        s.units = self.units.clone();
        Ok(s)
    }

    /// Number of nested warning categories.
    pub fn m(&self) -> usize {
        self.categories.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn units(&self) -> Option<&str> {
        self.units.as_deref()
    }

    pub fn scalar_thresholds(&self) -> Option<&[f64]> {
        self.scalar.as_ref().map(|(t, _)| t.as_slice())
    }

    /// Membership sets for `S_1..S_m`.
    pub fn categories(&self) -> &[IntervalSet] {
        &self.categories
    }

    /// Whether `y` lies in `S_i`; `S_0` is the whole outcome space.
    pub fn contains(&self, i: usize, y: f64) -> bool {
        i == 0 || self.categories[i - 1].contains(y)
    }

    /// Partition index of a raw observation: the largest `i` with `y` in `S_i`.
    pub fn classify(&self, y: f64) -> Result<usize> {
        if !y.is_finite() {
            return Err(Error::Input(format!("observation {y} is not finite")));
        }
        Ok(self
            .categories
            .iter()
            .rposition(|s| s.contains(y))
            .map_or(0, |p| p + 1))
    }
}

fn check_labels(labels: &[String], m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::Input("need at least one severity threshold".into()));
    }
    if labels.len() != m + 1 {
        return Err(Error::Structure(format!(
            "severity scheme with {m} thresholds needs {} labels, got {}",
            m + 1,
            labels.len()
        )));
    }
    Ok(())
}

/// The classification `classify_severity` from the operation list.
pub fn classify_severity(y: f64, scheme: &SeverityScheme) -> Result<usize> {
    scheme.classify(y)
}
