//! Coherent risk-matrix warnings and their consistent evaluation.
//!
//! - [`matrix`]: severity and certainty schemes, warning scalings, lead-time phases, forecasts.
//! - [`directive`]: probabilities to risk-matrix forecasts, and forecasts to warning levels.
//! - [`scoring`]: elementary, risk matrix and warning scores; warning weights; expected scores.
//! - [`synth`]: the seeded six-forecaster heat experiment.
//! - [`evalio`]: service files, case CSVs, evaluation reports, CAP-lite export and the CLI.

pub mod directive;
pub mod error;
pub mod evalio;
pub mod matrix;
pub mod numeric;
pub mod scoring;
pub mod synth;

pub use error::{Error, Result};
