//! Service definitions, case ingestion, evaluation runs, CAP-lite export and the CLI.

pub mod cap;
pub mod cases;
pub mod cli;
pub mod config;
pub mod evaluate;
pub mod render;
pub mod service;

pub use cap::{export_cap_entry, CapEntry};
pub use cases::{load_cases, parse_cases, CaseRecord, ForecastInput};
pub use config::{load_location_thresholds, load_service_config, parse_service_config};
pub use evaluate::{
    case_probabilities, comparison_schemes, run_evaluation, warn_case, warn_cases, CaseWarning, EvaluationOptions,
    ForecastSource, NEVER_WARN,
};
pub use service::{ServiceDefinition, SeverityTieBreak};
