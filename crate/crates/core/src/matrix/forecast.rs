use serde::{Deserialize, Serialize};

use super::SeverityScheme;
use crate::error::{Error, Result};

/// One certainty-category index per nested severity category `S_1..S_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RiskMatrixForecast {
    categories: Vec<usize>,
}

/// How [`validate_forecast`] treats tuples that increase somewhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ForecastMode {
    /// Reject tuples outside the consistent set.
    #[default]
    Strict,
    /// Accept them, reporting the tuple as inconsistent.
    Permissive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForecastCheck {
    /// Whether the tuple is non-increasing.
    pub consistent: bool,
}

impl RiskMatrixForecast {
    pub fn new(categories: Vec<usize>) -> Self {
        RiskMatrixForecast { categories }
    }

    /// Never-warn forecast: lowest certainty in every column.
    pub fn never_warn(m: usize) -> Self {
        RiskMatrixForecast {
            categories: vec![0; m],
        }
    }

    pub fn m(&self) -> usize {
        self.categories.len()
    }

    /// Certainty category `f_i` for severity `S_i`, 1-based.
    pub fn category(&self, i: usize) -> usize {
        self.categories[i - 1]
    }

    pub fn categories(&self) -> &[usize] {
        &self.categories
    }

    pub fn is_consistent(&self) -> bool {
        self.categories.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn check_dims(&self, m: usize, n: usize) -> Result<()> {
        if self.categories.len() != m {
            return Err(Error::Structure(format!(
                "forecast has {} columns, service has {m} severity categories",
                self.categories.len()
            )));
        }
        if let Some((i, &c)) = self.categories.iter().enumerate().find(|(_, &c)| c > n) {
            return Err(Error::Structure(format!(
                "forecast category {c} for S_{} exceeds the top certainty index {n}",
                i + 1
            )));
        }
        Ok(())
    }
}

/// Range-checks the tuple and, in strict mode, requires it to be non-increasing.
pub fn validate_forecast(
    forecast: &RiskMatrixForecast,
    n: usize,
    mode: ForecastMode,
) -> Result<ForecastCheck> {
    forecast.check_dims(forecast.m(), n)?;
    if let Some(i) = forecast.categories.windows(2).position(|w| w[0] < w[1]) {
        if mode == ForecastMode::Strict {
            return Err(Error::InconsistentForecast {
                index: i + 1,
                lower: forecast.categories[i],
                upper: forecast.categories[i + 1],
            });
        }
        return Ok(ForecastCheck { consistent: false });
    }
    Ok(ForecastCheck { consistent: true })
}

/// An observed outcome, either a raw value or a partition index classified upstream.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Observation {
    Value(f64),
    Partition(usize),
}

impl Observation {
    /// Partition index `k`, so that the outcome lies in `S_i` exactly when `i <= k`.
    pub fn partition(&self, scheme: &SeverityScheme) -> Result<usize> {
        match *self {
            Observation::Value(y) => scheme.classify(y),
            Observation::Partition(k) if k <= scheme.m() => Ok(k),
            Observation::Partition(k) => Err(Error::Structure(format!(
                "observation partition index {k} exceeds m = {}",
                scheme.m()
            ))),
        }
    }
}

/// Positive evaluation weights `v_1..v_q`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationWeights(Vec<f64>);

impl EvaluationWeights {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Input("no evaluation weights".into()));
        }
        if values.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
            return Err(Error::Input(
                "evaluation weights must be finite and strictly positive".into(),
            ));
        }
        Ok(EvaluationWeights(values))
    }

    pub fn ones(q: usize) -> Self {
        EvaluationWeights(vec![1.0; q])
    }

    /// `(1, 2, ..., q)`.
    pub fn escalating(q: usize) -> Self {
        EvaluationWeights((1..=q).map(|k| k as f64).collect())
    }

    pub fn q(&self) -> usize {
        self.0.len()
    }

    /// Weight `v_k`, 1-based.
    pub fn get(&self, k: usize) -> f64 {
        self.0[k - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}
