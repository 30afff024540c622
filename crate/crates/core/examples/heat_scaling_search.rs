//! Ranks every valid 3x3 heat scaling (q = 3) by how closely the synthetic
//! experiment reproduces the reference forecaster means.
//!
//! Warning scores are linear in the weights, so one Monte Carlo pass collecting mean
//! elementary scores per decision point is enough for the five non-playful
//! forecasters. PlayfulPranay's deviation acts column by column, so SynopticSally's
//! joint (category, outcome) frequencies per column determine its scores.
//!
//! Usage: `cargo run --release --example heat_scaling_search -- [iterations] [seed]`

use riskmatrix::evalio::service::examples::heat;
use riskmatrix::matrix::{presets, EvaluationWeights, RiskMatrixForecast, WarningScaling};
use riskmatrix::scoring::warning_weights;
use riskmatrix::synth::{forecaster_forecast, same_level_deviation, standard_forecasters, TruthProcess};

/// Reference means: WS for Nate, Sam, Sally, Rick, Reena; then Pranay's RMaS and WS.
const TARGET_WS: [f64; 5] = [0.2267, 0.0984, 0.0333, 0.0350, 0.0352];
const TARGET_PRANAY: (f64, f64) = (0.2175, 0.0333);

fn es(p: f64, at_or_above: bool, occurred: bool) -> f64 {
    match (at_or_above, occurred) {
        (true, false) => p,
        (false, true) => 1.0 - p,
        _ => 0.0,
    }
}

fn main() {
    let mut args = std::env::args().skip(1);
    let n: u64 = args.next().map_or(1_000_000, |a| a.parse().expect("iterations"));
    let seed: u64 = args.next().map_or(7, |a| a.parse().expect("seed"));

    let truth = TruthProcess::default();
    let service = heat(presets::heat());
    let p = service.certainty.thresholds().to_vec();
    let forecasters = standard_forecasters();

    let mut mean_es = [[[0.0f64; 3]; 3]; 5];
    let mut sally_joint = [[[0u64; 2]; 4]; 3];
    for t in 0..n {
        let case = truth.sample_case(seed, t);
        let k = service.severity.classify(case.y).unwrap();
        for (x, f) in forecasters.iter().take(5).enumerate() {
            let fc = forecaster_forecast(f, &truth, &case, &service).unwrap();
            for i in 0..3 {
                let occurred = i < k;
                for j in 0..3 {
                    mean_es[x][i][j] += es(p[j], fc.category(i + 1) > j, occurred);
                }
                if f.name == "SynopticSally" {
                    sally_joint[i][fc.category(i + 1)][occurred as usize] += 1;
                }
            }
        }
    }
    mean_es.iter_mut().flatten().flatten().for_each(|v| *v /= n as f64);

    let mut ranked = Vec::new();
    for code in 0..(1u32 << 18) {
        let mut g = [[0usize; 4]; 4];
        let mut c = code;
        for col in g.iter_mut().skip(1) {
            for cell in col.iter_mut().skip(1) {
                *cell = (c & 3) as usize;
                c >>= 2;
            }
        }
        let valid = (1..4).all(|i| (1..4).all(|j| g[i][j] >= g[i][j - 1] && g[i][j] >= g[i - 1][j]));
        if !valid {
            continue;
        }
        let scaling = WarningScaling::from_warning_columns((1..4).map(|i| g[i].to_vec()).collect(), 3).unwrap();
        let w = warning_weights(&scaling, &EvaluationWeights::ones(3)).unwrap();
        let ws: Vec<f64> = mean_es
            .iter()
            .map(|m| (1..=3).flat_map(|i| (1..=3).map(move |j| (i, j))).map(|(i, j)| w.get(i, j) * m[i - 1][j - 1]).sum())
            .collect();

        let (mut pr_rmas, mut pr_ws) = (0.0, 0.0);
        for i in 1..=3 {
            for f in 0..4 {
                let mut single = vec![0; 3];
                single[i - 1] = f;
                let moved = same_level_deviation(&RiskMatrixForecast::new(single), &scaling).category(i);
                for occurred in 0..2 {
                    let freq = sally_joint[i - 1][f][occurred] as f64 / n as f64;
                    for j in 1..=3 {
                        let e = freq * es(p[j - 1], moved >= j, occurred == 1);
                        pr_rmas += e;
                        pr_ws += e * w.get(i, j);
                    }
                }
            }
        }
        let err = ws.iter().zip(TARGET_WS).map(|(a, b)| (a - b).powi(2)).sum::<f64>()
            + (pr_rmas - TARGET_PRANAY.0).powi(2)
            + (pr_ws - TARGET_PRANAY.1).powi(2);
        ranked.push((err, scaling, ws, pr_rmas, pr_ws, w.sum()));
    }
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0));

    println!("{} valid scalings, {n} iterations, seed {seed}", ranked.len());
    for (err, s, ws, pr, pw, sum) in ranked.iter().take(5) {
        let cols: Vec<String> = (1..=3).map(|i| format!("{:?}", s.column(i))).collect();
        let ws: Vec<String> = ws.iter().map(|v| format!("{v:.4}")).collect();
        println!(
            "sq err {err:.2e}  MOD+ {} SEV+ {} EXT {}  WS [{}]  Pranay RMaS {pr:.4} WS {pw:.4}  weight sum {sum}",
            cols[0],
            cols[1],
            cols[2],
            ws.join(", ")
        );
    }
    if ranked[0].1 == presets::heat_fitted() {
        println!("best match is presets::heat_fitted()");
    }
}
