//! Consistent scoring of risk-matrix forecasts.
//!
//! Each decision point `(S_i, p_j)` is scored with an elementary score: `p_j` for a
//! false alarm (forecast category `f_i >= j`, outcome not in `S_i`), `1 - p_j` for a
//! miss (`f_i < j`, outcome in `S_i`) and 0 otherwise. The risk matrix score (RMaS)
//! is a non-negative weighted sum over all decision points. The warning score is the
//! RMaS under weights derived from a scaling by [`warning_weights`].
//!
//! Outcomes are passed as partition indices: the outcome lies in `S_i` iff `i <= k`.

mod aggregate;
mod weights;

pub use aggregate::{
    aggregate_scores, equipredictive_test, CaseScore, EquipredictiveTest, PairwiseTest, ScoreReport,
    SourceSummary,
};
pub(crate) use aggregate::from_moments;
pub use weights::{warning_weights, WeightGrid};

use crate::directive::ProbabilityAssessment;
use crate::error::{Error, Result};
use crate::matrix::{CertaintyScheme, EvaluationWeights, RiskMatrixForecast, WarningScaling};

fn check_indices(i: usize, j: usize, m: usize, n: usize) -> Result<()> {
    if !(1..=m).contains(&i) || !(1..=n).contains(&j) {
        return Err(Error::Structure(format!(
            "decision point (S_{i}, p_{j}) outside 1..={m} x 1..={n}"
        )));
    }
    Ok(())
}

fn check_outcome(outcome: usize, m: usize) -> Result<()> {
    if outcome > m {
        return Err(Error::Structure(format!(
            "outcome partition index {outcome} exceeds m = {m}"
        )));
    }
    Ok(())
}

#[inline]
fn es(p: f64, forecast_at_or_above: bool, occurred: bool) -> f64 {
    match (forecast_at_or_above, occurred) {
        (true, false) => p,
        (false, true) => 1.0 - p,
        _ => 0.0,
    }
}

/// Elementary score at decision point `(S_i, p_j)`; `i` and `j` are 1-based.
pub fn elementary_score(
    i: usize,
    j: usize,
    forecast: &RiskMatrixForecast,
    outcome: usize,
    certainty: &CertaintyScheme,
) -> Result<f64> {
    check_indices(i, j, forecast.m(), certainty.n())?;
    forecast.check_dims(forecast.m(), certainty.n())?;
    check_outcome(outcome, forecast.m())?;
    Ok(es(certainty.threshold(j), forecast.category(i) >= j, i <= outcome))
}

fn check_grid(forecast: &RiskMatrixForecast, weights: &WeightGrid, certainty: &CertaintyScheme) -> Result<()> {
    if weights.m() != forecast.m() || weights.n() != certainty.n() {
        return Err(Error::Structure(format!(
            "weight grid is {}x{}, forecast/certainty scheme is {}x{}",
            weights.m(),
            weights.n(),
            forecast.m(),
            certainty.n()
        )));
    }
    forecast.check_dims(weights.m(), weights.n())
}

/// Column scores `CS_1..CS_m`; their sum is the risk matrix score.
pub fn column_scores(
    forecast: &RiskMatrixForecast,
    outcome: usize,
    weights: &WeightGrid,
    certainty: &CertaintyScheme,
) -> Result<Vec<f64>> {
    check_grid(forecast, weights, certainty)?;
    check_outcome(outcome, forecast.m())?;
    Ok((1..=weights.m())
        .map(|i| {
            let f = forecast.category(i);
            let occurred = i <= outcome;
            (1..=weights.n())
                .map(|j| weights.get(i, j) * es(certainty.threshold(j), f >= j, occurred))
                .sum()
        })
        .collect())
}

/// Risk matrix score: `sum_{i,j} w[i][j] * ES_{i,j}(F, y)`.
pub fn risk_matrix_score(
    forecast: &RiskMatrixForecast,
    outcome: usize,
    weights: &WeightGrid,
    certainty: &CertaintyScheme,
) -> Result<f64> {
    Ok(column_scores(forecast, outcome, weights, certainty)?.iter().sum())
}

/// Warning score: RMaS with weights from [`warning_weights`].
pub fn warning_score(
    forecast: &RiskMatrixForecast,
    outcome: usize,
    scaling: &WarningScaling,
    evaluation: &EvaluationWeights,
    certainty: &CertaintyScheme,
) -> Result<f64> {
    let w = warning_weights(scaling, evaluation)?;
    risk_matrix_score(forecast, outcome, &w, certainty)
}

/// Column score table for severity `S_i`: one entry per forecast category for each
/// of the two outcomes (outcome not in `S_i`, outcome in `S_i`).
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnScoreTable {
    pub severity: usize,
    /// Indexed by forecast category `0..=n`.
    pub not_in: Vec<f64>,
    pub in_category: Vec<f64>,
}

pub fn score_table(certainty: &CertaintyScheme, weights: &WeightGrid, i: usize) -> Result<ColumnScoreTable> {
    if weights.n() != certainty.n() || !(1..=weights.m()).contains(&i) {
        return Err(Error::Structure(format!(
            "column {i} of a {}x{} grid with {} probability thresholds",
            weights.m(),
            weights.n(),
            certainty.n()
        )));
    }
    let n = certainty.n();
    let term_fa = |j: usize| certainty.threshold(j) * weights.get(i, j);
    let term_miss = |j: usize| (1.0 - certainty.threshold(j)) * weights.get(i, j);
    let not_in = (0..=n).map(|k| (1..=k).map(term_fa).sum()).collect();
    let in_category = (0..=n).map(|k| (k + 1..=n).map(term_miss).sum()).collect();
    Ok(ColumnScoreTable {
        severity: i,
        not_in,
        in_category,
    })
}

/// Exact expected RMaS of `forecast` when each outcome event `S_i` has probability `pi_i`.
///
/// By linearity only the marginal probabilities matter, so no joint distribution is needed.
pub fn expected_score(
    assessment: &ProbabilityAssessment,
    forecast: &RiskMatrixForecast,
    weights: &WeightGrid,
    certainty: &CertaintyScheme,
) -> Result<f64> {
    check_grid(forecast, weights, certainty)?;
    if assessment.m() != forecast.m() {
        return Err(Error::Structure(format!(
            "assessment has {} probabilities, forecast has {} columns",
            assessment.m(),
            forecast.m()
        )));
    }
    let mut total = 0.0;
    for i in 1..=weights.m() {
        let pi = assessment.prob(i);
        let f = forecast.category(i);
        for j in 1..=weights.n() {
            let p = certainty.threshold(j);
            let e = if f >= j { p * (1.0 - pi) } else { (1.0 - p) * pi };
            total += weights.get(i, j) * e;
        }
    }
    Ok(total)
}
