use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::{
    CertaintyScheme, EvaluationWeights, Exceedance, Phase, PhasedScaling, SeverityScheme, WarningLevels,
    WarningScaling,
};
use crate::scoring::{warning_weights, WeightGrid};

/// Which column a CAP entry reports when several attain the issued level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeverityTieBreak {
    /// Least severe column already sufficient for the level.
    #[default]
    Lowest,
    Highest,
}

/// Full description of one warning service.
#[derive(Debug, Clone, PartialEq)]
pub struct ServiceDefinition {
    pub name: String,
    pub severity: SeverityScheme,
    /// Per-location scalar threshold overrides, keyed by location id.
    pub location_severity: BTreeMap<String, SeverityScheme>,
    pub certainty: CertaintyScheme,
    pub levels: WarningLevels,
    pub phases: PhasedScaling,
    pub evaluation_weights: EvaluationWeights,
    /// Weights for the risk matrix score; `None` is the uniform grid of ones.
    pub rmas_weights: Option<WeightGrid>,
    /// Replaces the derived warning-score weights in every phase.
    pub warning_weight_override: Option<WeightGrid>,
    pub severity_tie_break: SeverityTieBreak,
}

impl ServiceDefinition {
    /// Cross-checks component dimensions.
    pub fn new(
        name: impl Into<String>,
        severity: SeverityScheme,
        certainty: CertaintyScheme,
        levels: WarningLevels,
        phases: PhasedScaling,
        evaluation_weights: EvaluationWeights,
    ) -> Result<Self> {
        let (m, n, q) = (severity.m(), certainty.n(), levels.q());
        for p in phases.phases() {
            if p.scaling.m() != m || p.scaling.n() != n || p.scaling.q() != q {
                return Err(Error::Structure(format!(
                    "phase {} scaling is {}x{} with q = {}, service is {m}x{n} with q = {q}",
                    p.name,
                    p.scaling.m(),
                    p.scaling.n(),
                    p.scaling.q()
                )));
            }
        }
        if evaluation_weights.q() != q {
            return Err(Error::Structure(format!(
                "{} evaluation weights for {q} warning levels above Nil",
                evaluation_weights.q()
            )));
        }
        Ok(ServiceDefinition {
            name: name.into(),
            severity,
            location_severity: BTreeMap::new(),
            certainty,
            levels,
            phases,
            evaluation_weights,
            rmas_weights: None,
            warning_weight_override: None,
            severity_tie_break: SeverityTieBreak::Lowest,
        })
    }

    pub fn with_rmas_weights(mut self, w: WeightGrid) -> Result<Self> {
        self.check_grid(&w)?;
        self.rmas_weights = Some(w);
        Ok(self)
    }

    pub fn with_warning_weight_override(mut self, w: WeightGrid) -> Result<Self> {
        self.check_grid(&w)?;
        self.warning_weight_override = Some(w);
        Ok(self)
    }

    pub fn with_location_thresholds(mut self, location: impl Into<String>, thresholds: Vec<f64>) -> Result<Self> {
        let s = self.severity.with_thresholds(thresholds)?;
        self.location_severity.insert(location.into(), s);
        Ok(self)
    }

    fn check_grid(&self, w: &WeightGrid) -> Result<()> {
        if w.m() != self.m() || w.n() != self.n() {
            return Err(Error::Structure(format!(
                "weight grid is {}x{}, service is {}x{}",
                w.m(),
                w.n(),
                self.m(),
                self.n()
            )));
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.severity.m()
    }

    pub fn n(&self) -> usize {
        self.certainty.n()
    }

    pub fn q(&self) -> usize {
        self.levels.q()
    }

    /// Severity scheme for a location, falling back to the service-wide thresholds.
    pub fn severity_for(&self, location: &str) -> &SeverityScheme {
        self.location_severity.get(location).unwrap_or(&self.severity)
    }

    pub fn rmas_grid(&self) -> WeightGrid {
        self.rmas_weights
            .clone()
            .unwrap_or_else(|| WeightGrid::uniform(self.m(), self.n(), 1.0))
    }

    /// Warning-score weights under a given scaling.
    pub fn warning_grid(&self, scaling: &WarningScaling) -> WeightGrid {
        match &self.warning_weight_override {
            Some(w) => w.clone(),
            None => warning_weights(scaling, &self.evaluation_weights)
                .expect("service dimensions checked at construction"),
        }
    }

    /// CAP urgency label for a phase.
    pub fn urgency(&self, phase: &Phase) -> String {
        if let Some(u) = &phase.urgency {
            return u.clone();
        }
        let warning = self.phases.warning_phases();
        let is_longest_warning = warning.len() >= 2 && warning[0].name == phase.name;
        let is_nil = self.phases.phases()[0].name == phase.name;
        if is_longest_warning || is_nil {
            "Future".into()
        } else {
            "Expected".into()
        }
    }
}

/// Ready-made services for the worked examples.
pub mod examples {
    use super::*;
    use crate::matrix::{presets, NIL_STATE};

    fn phase(name: &str, lead: f64, scaling: WarningScaling) -> Phase {
        Phase {
            name: name.into(),
            min_lead_hours: lead,
            scaling,
            urgency: None,
        }
    }

    /// Three-phase Sydney-style rainfall scaling keyed on hours to validity start.
    pub fn three_phase() -> PhasedScaling {
        PhasedScaling::new(vec![
            phase(NIL_STATE, 72.0, WarningScaling::nil_state(3, 3, 3)),
            phase("LONG-RANGE", 48.0, presets::long_range()),
            phase("MID-RANGE", 24.0, presets::mid_range()),
            phase("SHORT-RANGE", 0.0, presets::short_range()),
        ])
        .expect("preset phases are valid")
    }

    /// 24-hour rainfall at Sydney: 100/150/200 mm, 10/40/70 %, short-range scaling.
    pub fn sydney_rain(evaluation: Vec<f64>) -> ServiceDefinition {
        ServiceDefinition::new(
            "sydney-24h-rain",
            SeverityScheme::exceedance(presets::severity_labels(), vec![100.0, 150.0, 200.0], Exceedance::Inclusive)
                .unwrap()
                .with_units("mm"),
            CertaintyScheme::new(presets::certainty_labels(), vec![0.1, 0.4, 0.7]).unwrap(),
            WarningLevels::new(presets::four_levels(), None).unwrap(),
            PhasedScaling::single("SHORT-RANGE", presets::short_range()),
            EvaluationWeights::new(evaluation).unwrap(),
        )
        .unwrap()
    }

    /// Hazardous heat: 35/37/40 degC, 10/30/50 %, evaluation weights all 1.
    pub fn heat(scaling: WarningScaling) -> ServiceDefinition {
        ServiceDefinition::new(
            "synthetic-heat",
            SeverityScheme::exceedance(presets::severity_labels(), vec![35.0, 37.0, 40.0], Exceedance::Inclusive)
                .unwrap()
                .with_units("degC"),
            CertaintyScheme::new(presets::certainty_labels(), vec![0.1, 0.3, 0.5]).unwrap(),
            WarningLevels::new(presets::four_levels(), None).unwrap(),
            PhasedScaling::single("HEAT", scaling),
            EvaluationWeights::ones(3),
        )
        .unwrap()
    }
}
