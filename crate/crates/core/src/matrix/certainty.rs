use crate::error::{Error, Result};

/// Certainty categories `C_0..C_n` delimited by `0 < p_1 < ... < p_n < 1`.
///
/// Categories are left-closed: `C_0 = [0, p_1)`, `C_i = [p_i, p_{i+1})`, `C_n = [p_n, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CertaintyScheme {
    labels: Vec<String>,
    thresholds: Vec<f64>,
}

impl CertaintyScheme {
    pub fn new(labels: Vec<String>, thresholds: Vec<f64>) -> Result<Self> {
        if thresholds.is_empty() {
            return Err(Error::Input("need at least one probability threshold".into()));
        }
        if labels.len() != thresholds.len() + 1 {
            return Err(Error::Structure(format!(
                "certainty scheme with {} thresholds needs {} labels, got {}",
                thresholds.len(),
                thresholds.len() + 1,
                labels.len()
            )));
        }
        validate_probability_thresholds(&thresholds)?;
        Ok(CertaintyScheme { labels, thresholds })
    }

    /// Scheme with generated labels `C0..Cn`.
    pub fn unlabelled(thresholds: Vec<f64>) -> Result<Self> {
        let labels = (0..=thresholds.len()).map(|i| format!("C{i}")).collect();
        CertaintyScheme::new(labels, thresholds)
    }

    pub fn n(&self) -> usize {
        self.thresholds.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, j: usize) -> &str {
        &self.labels[j]
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    /// Probability threshold `p_j`, 1-based.
    pub fn threshold(&self, j: usize) -> f64 {
        self.thresholds[j - 1]
    }

    /// Index of the category containing `p`.
    pub fn classify(&self, p: f64) -> Result<usize> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Input(format!("probability {p} is outside [0, 1]")));
        }
        Ok(self.thresholds.partition_point(|&t| t <= p))
    }
}

/// Checks `0 < p_1 < ... < p_n < 1`.
pub fn validate_probability_thresholds(p: &[f64]) -> Result<()> {
    if p.iter().any(|&x| !(x > 0.0 && x < 1.0)) {
        return Err(Error::Input(
            "probability thresholds must lie strictly inside (0, 1)".into(),
        ));
    }
    if p.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Input("thresholds not strictly increasing".into()));
    }
    Ok(())
}

pub fn classify_certainty(p: f64, scheme: &CertaintyScheme) -> Result<usize> {
    scheme.classify(p)
}

/// Ordered warning levels `l_0 < l_1 < ... < l_q`; `l_0` is "no warning".
#[derive(Debug, Clone, PartialEq)]
pub struct WarningLevels {
    labels: Vec<String>,
    colors: Option<Vec<String>>,
}

impl WarningLevels {
    pub fn new(labels: Vec<String>, colors: Option<Vec<String>>) -> Result<Self> {
        if labels.len() < 2 {
            return Err(Error::Input(
                "need at least one warning level above Nil".into(),
            ));
        }
        if let Some(c) = &colors {
            if c.len() != labels.len() {
                return Err(Error::Structure(format!(
                    "{} colors for {} warning levels",
                    c.len(),
                    labels.len()
                )));
            }
        }
        Ok(WarningLevels { labels, colors })
    }

    pub fn q(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, k: usize) -> &str {
        &self.labels[k]
    }

    pub fn color(&self, k: usize) -> Option<&str> {
        self.colors.as_ref().map(|c| c[k].as_str())
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}
