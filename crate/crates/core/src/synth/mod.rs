//! Synthetic heat-warning experiment.
//!
//! The true temperature is `y = y_1 + y_2 + y_3` with independent components
//! `N(20, 10^2)`, `N(0, 5^2)` and `N(0, 2^2)`. Forecasters know none, one or two of the
//! components and issue the ideal normal predictive distribution given that knowledge,
//! categorised with their own probability thresholds.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::directive::classify_each;
use crate::error::{Error, Result};
use crate::evalio::service::ServiceDefinition;
use crate::matrix::{presets, CertaintyScheme, RiskMatrixForecast, WarningScaling};
use crate::numeric::{normal_sf, CompensatedSum};
use crate::scoring::{risk_matrix_score, EquipredictiveTest, PairwiseTest, WeightGrid};

/// Component means and standard deviations of the truth process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruthProcess {
    pub means: [f64; 3],
    pub sds: [f64; 3],
}

impl Default for TruthProcess {
    fn default() -> Self {
        TruthProcess {
            means: [20.0, 0.0, 0.0],
            sds: [10.0, 5.0, 2.0],
        }
    }
}

/// One realisation of the truth process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SyntheticCase {
    pub y1: f64,
    pub y2: f64,
    pub y3: f64,
    pub y: f64,
}

impl TruthProcess {
    /// Draws case `t`; the result depends only on `(seed, t)`.
    pub fn sample_case(&self, seed: u64, t: u64) -> SyntheticCase {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(t);
        self.sample_from(&mut rng)
    }

    fn sample_from(&self, rng: &mut ChaCha20Rng) -> SyntheticCase {
        let mut c = [0.0; 3];
        for (k, v) in c.iter_mut().enumerate() {
            let z: f64 = StandardNormal.sample(rng);
            *v = self.means[k] + self.sds[k] * z;
        }
        SyntheticCase {
            y1: c[0],
            y2: c[1],
            y3: c[2],
            y: c[0] + c[1] + c[2],
        }
    }

    /// Mean and variance of `y` given the components a forecaster observes.
    pub fn posterior(&self, info: Information, case: &SyntheticCase) -> (f64, f64) {
        let [m1, m2, m3] = self.means;
        let [v1, v2, v3] = self.sds.map(|s| s * s);
        match info {
            Information::Climate => (m1 + m2 + m3, v1 + v2 + v3),
            Information::Seasonal => (case.y1 + m2 + m3, v2 + v3),
            Information::Synoptic => (case.y1 + case.y2 + m3, v3),
        }
    }
}

/// Which truth components a forecaster observes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Information {
    /// None: forecasts from climatology.
    Climate,
    /// `y_1`.
    Seasonal,
    /// `y_1` and `y_2`.
    Synoptic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForecasterStrategy {
    pub name: String,
    pub information: Information,
    /// Own probability thresholds; `None` follows the service's directive.
    pub thresholds: Option<CertaintyScheme>,
    /// Moves each column to the farthest other cell with the same warning level.
    pub playful: bool,
}

impl ForecasterStrategy {
    pub fn new(name: impl Into<String>, information: Information) -> Self {
        ForecasterStrategy {
            name: name.into(),
            information,
            thresholds: None,
            playful: false,
        }
    }

    pub fn with_thresholds(mut self, thresholds: Vec<f64>) -> Result<Self> {
        self.thresholds = Some(CertaintyScheme::unlabelled(thresholds)?);
        Ok(self)
    }

    pub fn playful(mut self) -> Self {
        self.playful = true;
        self
    }
}

/// NeverWarnNate, SeasonalSam, SynopticSally, RiskAverseRick, RiskTolerantReena, PlayfulPranay.
pub fn standard_forecasters() -> Vec<ForecasterStrategy> {
    vec![
        ForecasterStrategy::new("NeverWarnNate", Information::Climate),
        ForecasterStrategy::new("SeasonalSam", Information::Seasonal),
        ForecasterStrategy::new("SynopticSally", Information::Synoptic),
        ForecasterStrategy::new("RiskAverseRick", Information::Synoptic)
            .with_thresholds(vec![0.05, 0.2, 0.4])
            .unwrap(),
        ForecasterStrategy::new("RiskTolerantReena", Information::Synoptic)
            .with_thresholds(vec![0.2, 0.4, 0.6])
            .unwrap(),
        ForecasterStrategy::new("PlayfulPranay", Information::Synoptic).playful(),
    ]
}

/// Exceedance probabilities `P(y in S_i)` under a normal predictive distribution.
pub fn exceedance_probabilities(mean: f64, var: f64, thresholds: &[f64]) -> Vec<f64> {
    let sd = var.sqrt();
    thresholds.iter().map(|t| normal_sf((t - mean) / sd)).collect()
}

/// Same-level alternative for each column: farthest certainty index, ties to the higher.
pub fn same_level_deviation(forecast: &RiskMatrixForecast, scaling: &WarningScaling) -> RiskMatrixForecast {
    let cats = (1..=forecast.m())
        .map(|i| {
            let f = forecast.category(i);
            let level = scaling.level(i, f);
            (0..=scaling.n())
                .filter(|&j| j != f && scaling.level(i, j) == level)
                .max_by_key(|&j| (j.abs_diff(f), j))
                .unwrap_or(f)
        })
        .collect();
    RiskMatrixForecast::new(cats)
}

/// The forecast a strategy issues for one case.
pub fn forecaster_forecast(
    strategy: &ForecasterStrategy,
    truth: &TruthProcess,
    case: &SyntheticCase,
    service: &ServiceDefinition,
) -> Result<RiskMatrixForecast> {
    let thresholds = service
        .severity
        .scalar_thresholds()
        .ok_or_else(|| Error::Structure("synthetic experiment needs scalar severity thresholds".into()))?;
    let (mean, var) = truth.posterior(strategy.information, case);
    let probs = exceedance_probabilities(mean, var, thresholds);
    let scheme = strategy.thresholds.as_ref().unwrap_or(&service.certainty);
    if scheme.n() != service.n() {
        return Err(Error::Structure(format!(
            "{} uses {} thresholds, service has {}",
            strategy.name,
            scheme.n(),
            service.n()
        )));
    }
    let f = classify_each(&probs, scheme)?;
    Ok(if strategy.playful {
        same_level_deviation(&f, &service.phases.shortest().scaling)
    } else {
        f
    })
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub iterations: u64,
    pub seed: u64,
    pub truth: TruthProcess,
    pub service: ServiceDefinition,
    pub forecasters: Vec<ForecasterStrategy>,
    /// `None` is the uniform grid of ones.
    pub rmas_weights: Option<WeightGrid>,
}

impl ExperimentConfig {
    /// Heat service (35/37/40, 10/30/50 %) with the default scaling and the six forecasters.
    pub fn standard(iterations: u64, seed: u64) -> Self {
        ExperimentConfig::with_scaling(iterations, seed, presets::heat())
    }

    pub fn with_scaling(iterations: u64, seed: u64, scaling: WarningScaling) -> Self {
        ExperimentConfig {
            iterations,
            seed,
            truth: TruthProcess::default(),
            service: crate::evalio::service::examples::heat(scaling),
            forecasters: standard_forecasters(),
            rmas_weights: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForecasterResult {
    pub name: String,
    pub mean_rmas: f64,
    pub mean_ws: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub iterations: u64,
    pub seed: u64,
    pub forecasters: Vec<ForecasterResult>,
    pub pairwise: Vec<PairwiseTest>,
    /// Empirical `P(y in S_i)` for `i = 1..m`.
    pub climatic_exceedance: Vec<f64>,
    pub y_mean: f64,
    pub y_variance: f64,
    pub rmas_weight_sum: f64,
    pub ws_weight_sum: f64,
    /// Cases where SynopticSally and PlayfulPranay receive different warning scores.
    pub ws_mismatches_sally_pranay: u64,
}

const CHUNK: u64 = 4096;

#[derive(Clone)]
struct Acc {
    rmas: Vec<CompensatedSum>,
    ws: Vec<CompensatedSum>,
    /// Per pair (a < b): sums of `d` and `d^2` for RMaS then WS.
    pair: Vec<[CompensatedSum; 4]>,
    exceed: Vec<u64>,
    y: CompensatedSum,
    y2: CompensatedSum,
    mismatches: u64,
}

impl Acc {
    fn new(k: usize, m: usize) -> Self {
        Acc {
            rmas: vec![CompensatedSum::default(); k],
            ws: vec![CompensatedSum::default(); k],
            pair: vec![[CompensatedSum::default(); 4]; k * (k - 1) / 2],
            exceed: vec![0; m],
            y: CompensatedSum::default(),
            y2: CompensatedSum::default(),
            mismatches: 0,
        }
    }

    fn merge(&mut self, o: &Acc) {
        for (a, b) in self.rmas.iter_mut().zip(&o.rmas) {
            a.merge(b);
        }
        for (a, b) in self.ws.iter_mut().zip(&o.ws) {
            a.merge(b);
        }
        for (a, b) in self.pair.iter_mut().zip(&o.pair) {
            for (x, y) in a.iter_mut().zip(b) {
                x.merge(y);
            }
        }
        for (a, b) in self.exceed.iter_mut().zip(&o.exceed) {
            *a += b;
        }
        self.y.merge(&o.y);
        self.y2.merge(&o.y2);
        self.mismatches += o.mismatches;
    }
}

/// Runs the experiment; output is identical for a given config whatever the thread count.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    if config.iterations == 0 {
        return Err(Error::Input("iteration count must be at least 1".into()));
    }
    if config.forecasters.len() < 2 {
        return Err(Error::Input("need at least two forecasters".into()));
    }
    let service = &config.service;
    let m = service.m();
    let k = config.forecasters.len();
    let rmas_grid = config
        .rmas_weights
        .clone()
        .unwrap_or_else(|| WeightGrid::uniform(m, service.n(), 1.0));
    let scaling = &service.phases.shortest().scaling;
    let ws_grid = service.warning_grid(scaling);
    let sally = config.forecasters.iter().position(|f| f.name == "SynopticSally");
    let pranay = config.forecasters.iter().position(|f| f.name == "PlayfulPranay");

    // validate once so the parallel loop cannot fail on configuration
    let probe = config.truth.sample_case(config.seed, 0);
    for f in &config.forecasters {
        forecaster_forecast(f, &config.truth, &probe, service)?;
    }

    let base = ChaCha20Rng::seed_from_u64(config.seed);
    let chunks = config.iterations.div_ceil(CHUNK);
    let parts: Vec<Result<Acc>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = Acc::new(k, m);
            let mut rmas = vec![0.0; k];
            let mut ws = vec![0.0; k];
            for t in c * CHUNK..((c + 1) * CHUNK).min(config.iterations) {
                let mut rng = base.clone();
                rng.set_stream(t);
                let case = config.truth.sample_from(&mut rng);
                let outcome = service.severity.classify(case.y)?;
                for (x, f) in config.forecasters.iter().enumerate() {
                    let fc = forecaster_forecast(f, &config.truth, &case, service)?;
                    rmas[x] = risk_matrix_score(&fc, outcome, &rmas_grid, &service.certainty)?;
                    ws[x] = risk_matrix_score(&fc, outcome, &ws_grid, &service.certainty)?;
                    acc.rmas[x].add(rmas[x]);
                    acc.ws[x].add(ws[x]);
                }
                let mut p = 0;
                for a in 0..k {
                    for b in a + 1..k {
                        let dr = rmas[a] - rmas[b];
                        let dw = ws[a] - ws[b];
                        let s = &mut acc.pair[p];
                        s[0].add(dr);
                        s[1].add(dr * dr);
                        s[2].add(dw);
                        s[3].add(dw * dw);
                        p += 1;
                    }
                }
                if let (Some(s), Some(q)) = (sally, pranay) {
                    if ws[s] != ws[q] {
                        acc.mismatches += 1;
                    }
                }
                for (i, e) in acc.exceed.iter_mut().enumerate() {
                    if outcome > i {
                        *e += 1;
                    }
                }
                acc.y.add(case.y);
                acc.y2.add(case.y * case.y);
            }
            Ok(acc)
        })
        .collect();

    let mut total = Acc::new(k, m);
    for part in parts {
        total.merge(&part?);
    }

    let nf = config.iterations as f64;
    let forecasters = config
        .forecasters
        .iter()
        .enumerate()
        .map(|(x, f)| ForecasterResult {
            name: f.name.clone(),
            mean_rmas: total.rmas[x].value() / nf,
            mean_ws: total.ws[x].value() / nf,
        })
        .collect();

    let moments = |sum: f64, sq: f64| -> EquipredictiveTest {
        let mean = sum / nf;
        let sd = if config.iterations > 1 {
            ((sq - nf * mean * mean).max(0.0) / (nf - 1.0)).sqrt()
        } else {
            0.0
        };
        crate::scoring::from_moments(config.iterations as usize, mean, sd)
    };
    let mut pairwise = Vec::new();
    let mut p = 0;
    for a in 0..k {
        for b in a + 1..k {
            let s = &total.pair[p];
            let names = (config.forecasters[a].name.clone(), config.forecasters[b].name.clone());
            pairwise.push(PairwiseTest {
                score: "RMaS".into(),
                a: names.0.clone(),
                b: names.1.clone(),
                test: moments(s[0].value(), s[1].value()),
            });
            pairwise.push(PairwiseTest {
                score: "WS".into(),
                a: names.0,
                b: names.1,
                test: moments(s[2].value(), s[3].value()),
            });
            p += 1;
        }
    }

    let y_mean = total.y.value() / nf;
    let y_variance = if config.iterations > 1 {
        (total.y2.value() - nf * y_mean * y_mean) / (nf - 1.0)
    } else {
        0.0
    };
    Ok(ExperimentReport {
        iterations: config.iterations,
        seed: config.seed,
        forecasters,
        pairwise,
        climatic_exceedance: total.exceed.iter().map(|&c| c as f64 / nf).collect(),
        y_mean,
        y_variance,
        rmas_weight_sum: rmas_grid.sum(),
        ws_weight_sum: ws_grid.sum(),
        ws_mismatches_sally_pranay: total.mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::directive::warning_level;

    fn heat_service() -> ServiceDefinition {
        crate::evalio::service::examples::heat(presets::heat())
    }

    fn case_with(y1: f64, y2: f64) -> SyntheticCase {
        SyntheticCase { y1, y2, y3: 0.0, y: y1 + y2 }
    }

    #[test]
    fn sally_and_reena_at_36() {
        let truth = TruthProcess::default();
        let (mu, var) = truth.posterior(Information::Synoptic, &case_with(30.0, 6.0));
        assert_eq!((mu, var), (36.0, 4.0));
        let p = exceedance_probabilities(mu, var, &[35.0, 37.0, 40.0]);
        for (got, want) in p.iter().zip([0.6915, 0.3085, 0.0228]) {
            assert!((got - want).abs() < 5e-5, "{got} vs {want}");
        }
        let fs = standard_forecasters();
        let s = heat_service();
        let c = case_with(30.0, 6.0);
        assert_eq!(forecaster_forecast(&fs[2], &truth, &c, &s).unwrap().categories(), &[3, 2, 0]);
        assert_eq!(forecaster_forecast(&fs[4], &truth, &c, &s).unwrap().categories(), &[3, 1, 0]);
    }

    #[test]
    fn nate_never_warns() {
        let truth = TruthProcess::default();
        let s = heat_service();
        let nate = &standard_forecasters()[0];
        for t in 0..200 {
            let c = truth.sample_case(3, t);
            assert_eq!(forecaster_forecast(nate, &truth, &c, &s).unwrap().categories(), &[0, 0, 0]);
        }
    }

    #[test]
    fn pranay_moves_likely_to_very_likely_in_sev() {
        let scaling = presets::heat();
        let f = same_level_deviation(&RiskMatrixForecast::new(vec![3, 2, 0]), &scaling);
        // MOD+ very likely -> possible (farthest Yellow), SEV+ likely -> very likely, EXT stays Nil
        assert_eq!(f.categories(), &[1, 3, 0]);
        assert_eq!(
            warning_level(&f, &scaling).unwrap(),
            warning_level(&RiskMatrixForecast::new(vec![3, 2, 0]), &scaling).unwrap()
        );
    }

    #[test]
    fn samples_depend_only_on_seed_and_index() {
        let t = TruthProcess::default();
        assert_eq!(t.sample_case(7, 12), t.sample_case(7, 12));
        assert_ne!(t.sample_case(7, 12), t.sample_case(7, 13));
        assert_ne!(t.sample_case(7, 12), t.sample_case(8, 12));
        let c = t.sample_case(1, 0);
        assert_eq!(c.y, c.y1 + c.y2 + c.y3);
    }

    #[test]
    fn small_run_is_reproducible_and_nil_scaling_scores_zero() {
        let cfg = ExperimentConfig::standard(5000, 11);
        let a = run_experiment(&cfg).unwrap();
        let b = run_experiment(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.ws_mismatches_sally_pranay, 0);
        let nil = ExperimentConfig::with_scaling(2000, 11, WarningScaling::nil_state(3, 3, 3));
        let r = run_experiment(&nil).unwrap();
        assert!(r.forecasters.iter().all(|f| f.mean_ws == 0.0));
        assert!(run_experiment(&ExperimentConfig::standard(0, 1)).is_err());
    }
}
