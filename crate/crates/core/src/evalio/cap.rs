//! CAP-lite records: severity, certainty and urgency of an issued warning.

use serde::Serialize;

use super::service::{ServiceDefinition, SeverityTieBreak};
use crate::directive::warning_level;
use crate::error::Result;
use crate::matrix::RiskMatrixForecast;

/// Labels are `None` for a Nil warning.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapEntry {
    pub severity: Option<String>,
    pub certainty: Option<String>,
    pub urgency: Option<String>,
    pub level: String,
    pub level_index: usize,
}

/// Reports the severity column whose forecast cell attains the issued level.
pub fn export_cap_entry(forecast: &RiskMatrixForecast, service: &ServiceDefinition, lead_hours: f64) -> Result<CapEntry> {
    let phase = service.phases.phase_for_lead_time(lead_hours);
    let level = warning_level(forecast, &phase.scaling)?;
    if level == 0 {
        return Ok(CapEntry {
            severity: None,
            certainty: None,
            urgency: None,
            level: service.levels.label(0).to_string(),
            level_index: 0,
        });
    }
    let mut attaining = (1..=forecast.m()).filter(|&i| phase.scaling.level(i, forecast.category(i)) == level);
    let i = match service.severity_tie_break {
        SeverityTieBreak::Lowest => attaining.next(),
        SeverityTieBreak::Highest => attaining.next_back(),
    }
    .expect("a column attains the maximum");
    Ok(CapEntry {
        severity: Some(service.severity.label(i).to_string()),
        certainty: Some(service.certainty.label(forecast.category(i)).to_string()),
        urgency: Some(service.urgency(phase)),
        level: service.levels.label(level).to_string(),
        level_index: level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evalio::service::examples::{sydney_rain, three_phase};

    #[test]
    fn sydney_orange() {
        let s = sydney_rain(vec![1.0, 2.0, 3.0]);
        let e = export_cap_entry(&RiskMatrixForecast::new(vec![2, 1, 1]), &s, 6.0).unwrap();
        assert_eq!(e.level, "Orange Warning");
        assert_eq!(e.severity.as_deref(), Some("EXT"));
        assert_eq!(e.certainty.as_deref(), Some("possible"));
        assert_eq!(e.urgency.as_deref(), Some("Expected"));
    }

    #[test]
    fn nil_has_no_labels() {
        let s = sydney_rain(vec![1.0, 2.0, 3.0]);
        let e = export_cap_entry(&RiskMatrixForecast::never_warn(3), &s, 0.0).unwrap();
        assert_eq!(e.level, "Nil");
        assert_eq!((e.severity, e.certainty, e.urgency), (None, None, None));
    }

    #[test]
    fn tie_break_and_long_lead_urgency() {
        let mut s = sydney_rain(vec![1.0, 1.0, 1.0]);
        s.phases = three_phase();
        // every LONG-RANGE warning cell is Yellow
        let f = RiskMatrixForecast::new(vec![3, 2, 1]);
        let e = export_cap_entry(&f, &s, 50.0).unwrap();
        assert_eq!(e.level, "Yellow Warning");
        assert_eq!(e.severity.as_deref(), Some("MOD+"));
        assert_eq!(e.certainty.as_deref(), Some("very likely"));
        assert_eq!(e.urgency.as_deref(), Some("Future"));
        s.severity_tie_break = SeverityTieBreak::Highest;
        let e = export_cap_entry(&f, &s, 50.0).unwrap();
        assert_eq!(e.severity.as_deref(), Some("EXT"));
        assert_eq!(e.certainty.as_deref(), Some("possible"));
    }
}
