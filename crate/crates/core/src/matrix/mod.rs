//! Structural objects of the warning framework: severity and certainty schemes,
//! warning levels, scalings (optionally phased by lead time) and forecasts.
//!
//! Everything is identified by index; labels are presentation only.

mod certainty;
mod forecast;
pub mod presets;
mod scaling;
mod severity;

pub use certainty::{
    classify_certainty, validate_probability_thresholds, CertaintyScheme, WarningLevels,
};
pub use forecast::{
    validate_forecast, EvaluationWeights, ForecastCheck, ForecastMode, Observation,
    RiskMatrixForecast,
};
pub use scaling::{
    scaling_for_lead_time, validate_scaling, Phase, PhaseError, PhasedScaling, ScalingError,
    ScalingProperty, ScalingViolation, WarningScaling, NIL_STATE,
};
pub use severity::{classify_severity, Exceedance, Interval, IntervalSet, SeverityScheme};
