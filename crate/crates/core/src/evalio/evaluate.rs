//! Directive, warning level and scores for batches of cases.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::cases::{CaseRecord, ForecastInput};
use super::service::ServiceDefinition;
use crate::directive::{
    apply_forecast_directive, probabilities_from_deterministic, probabilities_from_ensemble, warning_level,
    Coherence, ProbabilityAssessment,
};
use crate::error::{Error, Result, RowError};
use crate::matrix::{EvaluationWeights, RiskMatrixForecast};
use crate::scoring::{
    aggregate_scores, equipredictive_test, risk_matrix_score, warning_weights, CaseScore, PairwiseTest, ScoreReport,
    SourceSummary, WeightGrid,
};

/// Name of the automatically added baseline source.
pub const NEVER_WARN: &str = "never-warn";

/// Warning produced for one case.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseWarning {
    pub case_id: String,
    pub location_id: String,
    pub lead_hours: f64,
    pub phase: String,
    pub probabilities: Vec<f64>,
    pub forecast: RiskMatrixForecast,
    pub level: usize,
}

/// Probability assessment implied by a case's forecast input at its location.
pub fn case_probabilities(service: &ServiceDefinition, case: &CaseRecord) -> Result<ProbabilityAssessment> {
    let scheme = service.severity_for(&case.location_id);
    match &case.forecast {
        ForecastInput::Probabilities(p) => {
            if p.len() != service.m() {
                return Err(Error::Structure(format!(
                    "probability tuple has {} entries, service has {} severity categories",
                    p.len(),
                    service.m()
                )));
            }
            ProbabilityAssessment::new(p.clone())
        }
        ForecastInput::Deterministic(x) => probabilities_from_deterministic(*x, scheme),
        ForecastInput::Ensemble(members) => probabilities_from_ensemble(members, scheme),
    }
}

pub fn warn_case(service: &ServiceDefinition, case: &CaseRecord, coherence: Coherence) -> Result<CaseWarning> {
    let pa = case_probabilities(service, case)?;
    let forecast = apply_forecast_directive(&pa, &service.certainty, coherence)?;
    let phase = service.phases.phase_for_lead_time(case.lead_hours);
    let level = warning_level(&forecast, &phase.scaling)?;
    Ok(CaseWarning {
        case_id: case.case_id.clone(),
        location_id: case.location_id.clone(),
        lead_hours: case.lead_hours,
        phase: phase.name.clone(),
        probabilities: pa.probs().to_vec(),
        forecast,
        level,
    })
}

fn collect_rows<T>(cases: &[CaseRecord], results: Vec<Result<T>>) -> Result<Vec<T>> {
    let mut ok = Vec::with_capacity(results.len());
    let mut errors = Vec::new();
    for (case, r) in cases.iter().zip(results) {
        match r {
            Ok(v) => ok.push(v),
            Err(e) => errors.push(RowError {
                line: case.line,
                message: format!("case {}: {e}", case.case_id),
            }),
        }
    }
    if errors.is_empty() {
        Ok(ok)
    } else {
        Err(Error::Rows(errors))
    }
}

/// Warnings for every case, in input order.
pub fn warn_cases(service: &ServiceDefinition, cases: &[CaseRecord], coherence: Coherence) -> Result<Vec<CaseWarning>> {
    let results: Vec<Result<CaseWarning>> = cases.par_iter().map(|c| warn_case(service, c, coherence)).collect();
    collect_rows(cases, results)
}

/// One named set of forecast cases.
#[derive(Debug, Clone)]
pub struct ForecastSource {
    pub name: String,
    pub cases: Vec<CaseRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvaluationOptions {
    pub coherence: Coherence,
    /// Adds the normalised comparison across weight schemes.
    pub compare_schemes: bool,
}

impl Default for EvaluationOptions {
    fn default() -> Self {
        EvaluationOptions {
            coherence: Coherence::Strict,
            compare_schemes: true,
        }
    }
}

/// Weight schemes for the normalised comparison, each scaled to sum 1.
///
/// One per warning phase (evaluation weights all 1), then `ESCALATE` (shortest phase
/// with weights `1..q`) and `UNIFORM`.
pub fn comparison_schemes(service: &ServiceDefinition) -> Vec<(String, WeightGrid)> {
    let q = service.q();
    let mut out = Vec::new();
    for p in service.phases.warning_phases() {
        let w = warning_weights(&p.scaling, &EvaluationWeights::ones(q)).expect("dimensions checked");
        if !w.is_zero() {
            out.push((p.name.clone(), w.normalized()));
        }
    }
    let esc = warning_weights(&service.phases.shortest().scaling, &EvaluationWeights::escalating(q))
        .expect("dimensions checked");
    if !esc.is_zero() {
        out.push(("ESCALATE".into(), esc.normalized()));
    }
    out.push(("UNIFORM".into(), WeightGrid::uniform(service.m(), service.n(), 1.0).normalized()));
    out
}

struct Scored {
    score: CaseScore,
    normalized: Vec<f64>,
}

fn score_case(
    service: &ServiceDefinition,
    source: &str,
    case: &CaseRecord,
    forecast_override: Option<RiskMatrixForecast>,
    coherence: Coherence,
    rmas_grid: &WeightGrid,
    schemes: &[(String, WeightGrid)],
) -> Result<Scored> {
    let obs = case
        .observation
        .ok_or_else(|| Error::Input("case has no observation".into()))?;
    let outcome = obs.partition(service.severity_for(&case.location_id))?;
    let phase = service.phases.phase_for_lead_time(case.lead_hours);
    let forecast = match forecast_override {
        Some(f) => f,
        None => {
            let pa = case_probabilities(service, case)?;
            apply_forecast_directive(&pa, &service.certainty, coherence)?
        }
    };
    let level = warning_level(&forecast, &phase.scaling)?;
    let rmas = risk_matrix_score(&forecast, outcome, rmas_grid, &service.certainty)?;
    let ws = risk_matrix_score(&forecast, outcome, &service.warning_grid(&phase.scaling), &service.certainty)?;
    let normalized = schemes
        .iter()
        .map(|(_, w)| risk_matrix_score(&forecast, outcome, w, &service.certainty))
        .collect::<Result<Vec<_>>>()?;
    Ok(Scored {
        score: CaseScore {
            source: source.to_string(),
            case_id: case.case_id.clone(),
            location_id: case.location_id.clone(),
            lead_hours: case.lead_hours,
            phase: phase.name.clone(),
            forecast: forecast.categories().to_vec(),
            level,
            outcome,
            rmas,
            ws,
        },
        normalized,
    })
}

/// Scores every source, adds the never-warn baseline, and runs pairwise tests.
///
/// The baseline covers every distinct case id, taking location, lead time and
/// observation from the first source that lists it.
pub fn run_evaluation(
    service: &ServiceDefinition,
    sources: &[ForecastSource],
    options: EvaluationOptions,
) -> Result<ScoreReport> {
    if sources.is_empty() || sources.iter().all(|s| s.cases.is_empty()) {
        return Err(Error::Input("empty case list".into()));
    }
    if let Some(s) = sources.iter().find(|s| s.cases.is_empty()) {
        return Err(Error::Input(format!("source {} has no cases", s.name)));
    }
    if let Some(s) = sources.iter().find(|s| s.name == NEVER_WARN) {
        return Err(Error::Input(format!("source name {} is reserved", s.name)));
    }
    for (i, s) in sources.iter().enumerate() {
        if sources[..i].iter().any(|t| t.name == s.name) {
            return Err(Error::Input(format!("duplicate source name {}", s.name)));
        }
    }

    let rmas_grid = service.rmas_grid();
    let schemes = if options.compare_schemes {
        comparison_schemes(service)
    } else {
        Vec::new()
    };

    let mut baseline_cases: Vec<CaseRecord> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for s in sources {
        for c in &s.cases {
            if seen.insert(c.case_id.clone()) {
                baseline_cases.push(c.clone());
            }
        }
    }

    let mut per_case = Vec::new();
    let mut summaries = Vec::new();
    let mut by_source: Vec<(String, HashMap<String, (f64, f64)>)> = Vec::new();

    let runs = sources
        .iter()
        .map(|s| (s.name.as_str(), &s.cases, false))
        .chain(std::iter::once((NEVER_WARN, &baseline_cases, true)));
    for (name, cases, never) in runs {
        let results: Vec<Result<Scored>> = cases
            .par_iter()
            .map(|c| {
                let f = never.then(|| RiskMatrixForecast::never_warn(service.m()));
                score_case(service, name, c, f, options.coherence, &rmas_grid, &schemes)
            })
            .collect();
        let scored = collect_rows(cases, results)?;
        let rmas: Vec<f64> = scored.iter().map(|s| s.score.rmas).collect();
        let ws: Vec<f64> = scored.iter().map(|s| s.score.ws).collect();
        let normalized = schemes
            .iter()
            .enumerate()
            .map(|(k, (scheme, _))| {
                let v: Vec<f64> = scored.iter().map(|s| s.normalized[k]).collect();
                Ok((scheme.clone(), aggregate_scores(&v, None, None)?))
            })
            .collect::<Result<Vec<_>>>()?;
        summaries.push(SourceSummary {
            name: name.to_string(),
            cases: scored.len(),
            mean_rmas: aggregate_scores(&rmas, None, None)?,
            mean_ws: aggregate_scores(&ws, None, None)?,
            normalized,
        });
        let mut index = HashMap::new();
        for s in &scored {
            if index.insert(s.score.case_id.clone(), (s.score.rmas, s.score.ws)).is_some() {
                return Err(Error::Input(format!("source {name}: duplicate case id {}", s.score.case_id)));
            }
        }
        by_source.push((name.to_string(), index));
        per_case.extend(scored.into_iter().map(|s| s.score));
    }

    let mut pairwise = Vec::new();
    for a in 0..by_source.len() {
        for b in a + 1..by_source.len() {
            let (an, ai) = &by_source[a];
            let (bn, bi) = &by_source[b];
            // pair in the order of the first source's cases so output is stable
            let order = sources
                .iter()
                .find(|s| &s.name == an)
                .map(|s| &s.cases)
                .unwrap_or(&baseline_cases);
            let pairs: Vec<((f64, f64), (f64, f64))> = order
                .iter()
                .filter_map(|c| Some((*ai.get(&c.case_id)?, *bi.get(&c.case_id)?)))
                .collect();
            if pairs.len() < 2 {
                continue;
            }
            let d_rmas: Vec<f64> = pairs.iter().map(|(x, y)| x.0 - y.0).collect();
            let d_ws: Vec<f64> = pairs.iter().map(|(x, y)| x.1 - y.1).collect();
            for (score, d) in [("RMaS", d_rmas), ("WS", d_ws)] {
                pairwise.push(PairwiseTest {
                    score: score.into(),
                    a: an.clone(),
                    b: bn.clone(),
                    test: equipredictive_test(&d)?,
                });
            }
        }
    }

    let ws_weights = if service.warning_weight_override.is_some() {
        "override".to_string()
    } else {
        let v: Vec<String> = service.evaluation_weights.values().iter().map(|v| v.to_string()).collect();
        format!("phase warning weights v=({})", v.join(","))
    };
    Ok(ScoreReport {
        service: service.name.clone(),
        rmas_weights: if service.rmas_weights.is_some() { "custom" } else { "uniform" }.into(),
        rmas_weight_sum: rmas_grid.sum(),
        ws_weights,
        per_case,
        sources: summaries,
        schemes: schemes.into_iter().map(|(n, _)| n).collect(),
        pairwise,
    })
}
