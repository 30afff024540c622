use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{normal_sf, CompensatedSum};

/// Mean score over cases, optionally case-weighted and divided by a weight-grid sum.
pub fn aggregate_scores(
    per_case: &[f64],
    case_weights: Option<&[f64]>,
    normalize_by: Option<f64>,
) -> Result<f64> {
    if per_case.is_empty() {
        return Err(Error::Input("no scores to aggregate".into()));
    }
    let mean = match case_weights {
        None => per_case.iter().copied().collect::<CompensatedSum>().value() / per_case.len() as f64,
        Some(w) => {
            if w.len() != per_case.len() {
                return Err(Error::Structure(format!(
                    "{} case weights for {} scores",
                    w.len(),
                    per_case.len()
                )));
            }
            if w.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
                return Err(Error::Input("case weights must be non-negative".into()));
            }
            let total = w.iter().copied().collect::<CompensatedSum>().value();
            if total == 0.0 {
                return Err(Error::Input("case weights are all zero".into()));
            }
            per_case
                .iter()
                .zip(w)
                .map(|(s, w)| s * w)
                .collect::<CompensatedSum>()
                .value()
                / total
        }
    };
    match normalize_by {
        None => Ok(mean),
        Some(s) if s > 0.0 => Ok(mean / s),
        Some(s) => Err(Error::Input(format!("cannot normalise by weight sum {s}"))),
    }
}

/// Paired test of equal predictive performance on per-case score differences.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquipredictiveTest {
    pub n: usize,
    pub mean_diff: f64,
    pub statistic: f64,
    pub p_value: f64,
}

impl EquipredictiveTest {
    pub fn significant(&self, level: f64) -> bool {
        self.p_value < level
    }
}

/// `mean / (sd / sqrt(N))` with a two-sided normal p-value.
///
/// Zero variance gives statistic 0 and p = 1 when the mean is also zero, and an
/// infinite statistic with p = 0 otherwise.
pub fn equipredictive_test(diffs: &[f64]) -> Result<EquipredictiveTest> {
    if diffs.len() < 2 {
        return Err(Error::Input("need at least two score differences".into()));
    }
    if diffs.iter().any(|d| !d.is_finite()) {
        return Err(Error::Input("score differences must be finite".into()));
    }
    let n = diffs.len();
    let mean = diffs.iter().copied().collect::<CompensatedSum>().value() / n as f64;
    let ss = diffs
        .iter()
        .map(|d| (d - mean) * (d - mean))
        .collect::<CompensatedSum>()
        .value();
    let sd = (ss / (n - 1) as f64).sqrt();
    Ok(from_moments(n, mean, sd))
}

pub(crate) fn from_moments(n: usize, mean: f64, sd: f64) -> EquipredictiveTest {
    let (statistic, p_value) = if sd == 0.0 || !sd.is_finite() {
        if mean == 0.0 {
            (0.0, 1.0)
        } else {
            (mean.signum() * f64::INFINITY, 0.0)
        }
    } else {
        let t = mean / (sd / (n as f64).sqrt());
        (t, (2.0 * normal_sf(t.abs())).min(1.0))
    };
    EquipredictiveTest {
        n,
        mean_diff: mean,
        statistic,
        p_value,
    }
}

/// Mean scores of one forecast source.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SourceSummary {
    pub name: String,
    pub cases: usize,
    pub mean_rmas: f64,
    pub mean_ws: f64,
    /// `(scheme name, mean RMaS with that scheme's weights normalised to sum 1)`.
    pub normalized: Vec<(String, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairwiseTest {
    /// `"RMaS"` or `"WS"`.
    pub score: String,
    pub a: String,
    pub b: String,
    #[serde(flatten)]
    pub test: EquipredictiveTest,
}

/// Per-case scores for one case under one source.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseScore {
    pub source: String,
    pub case_id: String,
    pub location_id: String,
    pub lead_hours: f64,
    pub phase: String,
    pub forecast: Vec<usize>,
    pub level: usize,
    pub outcome: usize,
    pub rmas: f64,
    pub ws: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreReport {
    pub service: String,
    /// Identifier of the RMaS weight grid (`uniform` or `custom`).
    pub rmas_weights: String,
    pub rmas_weight_sum: f64,
    /// Identifier of the WS weighting, e.g. `phase warning weights v=(1,1,1)`.
    pub ws_weights: String,
    pub per_case: Vec<CaseScore>,
    pub sources: Vec<SourceSummary>,
    pub schemes: Vec<String>,
    pub pairwise: Vec<PairwiseTest>,
}
