//! Forecast and warning directives.
//!
//! The forecast directive maps a probability for each nested severity category to the
//! certainty category containing it. The warning directive then issues the highest
//! level among the selected cells.

use crate::error::{Error, Result};
use crate::matrix::{CertaintyScheme, PhasedScaling, RiskMatrixForecast, SeverityScheme, WarningScaling};

/// Probabilities `P(S_1) .. P(S_m)` assigned by a forecaster.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityAssessment(Vec<f64>);

/// Handling of assessments that increase across nested categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Coherence {
    /// Reject, naming the first offending pair.
    #[default]
    Strict,
    /// Replace each probability by the running minimum from the left.
    Repair,
}

impl ProbabilityAssessment {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Input("empty probability assessment".into()));
        }
        if let Some(p) = probs.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::Input(format!("probability {p} is outside [0, 1]")));
        }
        Ok(ProbabilityAssessment(probs))
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    /// `P(S_i)`, 1-based.
    pub fn prob(&self, i: usize) -> f64 {
        self.0[i - 1]
    }

    pub fn is_coherent(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Isotonic repair: running minimum from the left.
    pub fn repaired(&self) -> Self {
        let mut out = self.0.clone();
        for i in 1..out.len() {
            out[i] = out[i].min(out[i - 1]);
        }
        ProbabilityAssessment(out)
    }

    fn check_coherent(&self) -> Result<()> {
        match self.0.windows(2).position(|w| w[0] < w[1]) {
            None => Ok(()),
            Some(i) => Err(Error::Coherence {
                index: i + 1,
                lower: self.0[i],
                upper: self.0[i + 1],
            }),
        }
    }
}

/// Probability 1 for every category containing the deterministic value, 0 otherwise.
pub fn probabilities_from_deterministic(x: f64, scheme: &SeverityScheme) -> Result<ProbabilityAssessment> {
    if !x.is_finite() {
        return Err(Error::Input(format!("deterministic forecast {x} is not finite")));
    }
    let probs = (1..=scheme.m())
        .map(|i| if scheme.contains(i, x) { 1.0 } else { 0.0 })
        .collect();
    Ok(ProbabilityAssessment(probs))
}

/// Fraction of ensemble members in each category.
pub fn probabilities_from_ensemble(members: &[f64], scheme: &SeverityScheme) -> Result<ProbabilityAssessment> {
    if members.is_empty() {
        return Err(Error::Input("ensemble has no members".into()));
    }
    if let Some(x) = members.iter().find(|x| !x.is_finite()) {
        return Err(Error::Input(format!("ensemble member {x} is not finite")));
    }
    let total = members.len() as f64;
    let probs = (1..=scheme.m())
        .map(|i| members.iter().filter(|&&x| scheme.contains(i, x)).count() as f64 / total)
        .collect();
    Ok(ProbabilityAssessment(probs))
}

/// The forecast directive `K`.
pub fn apply_forecast_directive(
    assessment: &ProbabilityAssessment,
    scheme: &CertaintyScheme,
    coherence: Coherence,
) -> Result<RiskMatrixForecast> {
    let repaired;
    let probs = match coherence {
        Coherence::Strict => {
            assessment.check_coherent()?;
            assessment
        }
        Coherence::Repair => {
            repaired = assessment.repaired();
            &repaired
        }
    };
    classify_each(probs.probs(), scheme)
}

/// Categorises each probability independently, with no coherence requirement.
pub(crate) fn classify_each(probs: &[f64], scheme: &CertaintyScheme) -> Result<RiskMatrixForecast> {
    let categories = probs
        .iter()
        .map(|&p| scheme.classify(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(RiskMatrixForecast::new(categories))
}

/// The warning directive: `max_i T[i][f_i]`.
pub fn warning_level(forecast: &RiskMatrixForecast, scaling: &WarningScaling) -> Result<usize> {
    forecast.check_dims(scaling.m(), scaling.n())?;
    Ok((1..=forecast.m())
        .map(|i| scaling.level(i, forecast.category(i)))
        .max()
        .unwrap_or(0))
}

/// Level under the phase active at the given lead time.
pub fn warning_level_at(forecast: &RiskMatrixForecast, phased: &PhasedScaling, lead_hours: f64) -> Result<usize> {
    warning_level(forecast, phased.scaling_for_lead_time(lead_hours))
}

pub use crate::matrix::scaling_for_lead_time;
