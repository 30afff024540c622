//! Aligned-text and CSV renderings of grids, score tables and reports.

use std::fmt::Write as _;

use super::cap::CapEntry;
use super::evaluate::CaseWarning;
use super::service::ServiceDefinition;
use crate::error::Result;
use crate::scoring::{score_table, ScoreReport, WeightGrid};
use crate::synth::ExperimentReport;

/// Integers without decimals, everything else to four places.
pub fn num(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x:.4}")
    }
}

/// First column left-aligned, the rest right-aligned.
pub fn text_table(headers: &[String], rows: &[Vec<String>]) -> String {
    let cols = headers.len();
    let mut width = vec![0; cols];
    for r in std::iter::once(headers).chain(rows.iter().map(Vec::as_slice)) {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |r: &[String]| {
        let mut s = String::new();
        for (k, c) in r.iter().enumerate() {
            let pad = width[k] - c.chars().count();
            if k == 0 {
                s.push_str(c);
                s.push_str(&" ".repeat(pad));
            } else {
                s.push_str("  ");
                s.push_str(&" ".repeat(pad));
                s.push_str(c);
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(headers);
    out.push_str(&"-".repeat(width.iter().sum::<usize>() + 2 * (cols - 1)));
    out.push('\n');
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

/// Weight grid with one column per severity category and the highest threshold on top.
pub fn render_weight_grid(grid: &WeightGrid, service: &ServiceDefinition) -> String {
    let mut headers = vec!["threshold".to_string()];
    headers.extend((1..=grid.m()).map(|i| service.severity.label(i).to_string()));
    let rows: Vec<Vec<String>> = (1..=grid.n())
        .rev()
        .map(|j| {
            let mut r = vec![format!("p{j} = {}", num(service.certainty.threshold(j)))];
            r.extend((1..=grid.m()).map(|i| num(grid.get(i, j))));
            r
        })
        .collect();
    let mut out = text_table(&headers, &rows);
    let _ = writeln!(out, "sum of weights: {}", num(grid.sum()));
    out
}

/// Column score tables: the score of each forecast category under both outcomes.
pub fn render_score_tables(grid: &WeightGrid, service: &ServiceDefinition) -> Result<String> {
    let mut out = String::new();
    for i in 1..=grid.m() {
        let t = score_table(&service.certainty, grid, i)?;
        let label = service.severity.label(i);
        let headers = vec![
            format!("forecast for {label}"),
            format!("y not in {label}"),
            format!("y in {label}"),
        ];
        let rows: Vec<Vec<String>> = (0..=grid.n())
            .rev()
            .map(|k| vec![service.certainty.label(k).to_string(), num(t.not_in[k]), num(t.in_category[k])])
            .collect();
        let _ = writeln!(out, "{label}");
        out.push_str(&text_table(&headers, &rows));
        out.push('\n');
    }
    Ok(out)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn joined(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(";")
}

/// Per-case warnings as CSV.
pub fn warnings_csv(warnings: &[CaseWarning], service: &ServiceDefinition) -> String {
    let mut out = String::from("case_id,location_id,lead_hours,phase,probabilities,forecast,level_index,level\n");
    for w in warnings {
        let probs = w.probabilities.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(";");
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            csv_field(&w.case_id),
            csv_field(&w.location_id),
            w.lead_hours,
            csv_field(&w.phase),
            probs,
            joined(w.forecast.categories()),
            w.level,
            csv_field(service.levels.label(w.level))
        );
    }
    out
}

/// One JSON object per warned case.
pub fn cap_jsonl(entries: &[(&CaseWarning, CapEntry)]) -> String {
    #[derive(serde::Serialize)]
    struct Line<'a> {
        case_id: &'a str,
        location_id: &'a str,
        lead_hours: f64,
        #[serde(flatten)]
        entry: &'a CapEntry,
    }
    let mut out = String::new();
    for (w, e) in entries {
        let line = Line {
            case_id: &w.case_id,
            location_id: &w.location_id,
            lead_hours: w.lead_hours,
            entry: e,
        };
        out.push_str(&serde_json::to_string(&line).expect("serialisable"));
        out.push('\n');
    }
    out
}

/// Per-case scores as CSV.
pub fn score_csv(report: &ScoreReport) -> String {
    let mut out = String::from("source,case_id,location_id,lead_hours,phase,forecast,level,outcome,rmas,ws\n");
    for c in &report.per_case {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            csv_field(&c.source),
            csv_field(&c.case_id),
            csv_field(&c.location_id),
            c.lead_hours,
            csv_field(&c.phase),
            joined(&c.forecast),
            c.level,
            c.outcome,
            c.rmas,
            c.ws
        );
    }
    out
}

/// Summary tables: source means, normalised scheme comparison and pairwise tests.
pub fn render_score_report(report: &ScoreReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "service: {}", report.service);
    let _ = writeln!(
        out,
        "RMaS weights: {} (sum {}); WS weights: {}\n",
        report.rmas_weights,
        num(report.rmas_weight_sum),
        report.ws_weights
    );
    let headers = ["source", "cases", "mean RMaS", "mean WS"].map(String::from).to_vec();
    let rows: Vec<Vec<String>> = report
        .sources
        .iter()
        .map(|s| vec![s.name.clone(), s.cases.to_string(), format!("{:.4}", s.mean_rmas), format!("{:.4}", s.mean_ws)])
        .collect();
    out.push_str(&text_table(&headers, &rows));

    if !report.schemes.is_empty() {
        out.push_str("\nmean score with weights normalised to sum 1\n");
        let mut headers = vec!["source".to_string()];
        headers.extend(report.schemes.iter().cloned());
        let rows: Vec<Vec<String>> = report
            .sources
            .iter()
            .map(|s| {
                let mut r = vec![s.name.clone()];
                r.extend(s.normalized.iter().map(|(_, v)| format!("{v:.4}")));
                r
            })
            .collect();
        out.push_str(&text_table(&headers, &rows));
    }

    if !report.pairwise.is_empty() {
        out.push_str("\npairwise tests (difference a - b)\n");
        let headers = ["score", "a", "b", "n", "mean diff", "statistic", "p-value"]
            .map(String::from)
            .to_vec();
        let rows: Vec<Vec<String>> = report
            .pairwise
            .iter()
            .map(|p| {
                vec![
                    p.score.clone(),
                    p.a.clone(),
                    p.b.clone(),
                    p.test.n.to_string(),
                    format!("{:.4}", p.test.mean_diff),
                    format!("{:.3}", p.test.statistic),
                    format!("{:.4}", p.test.p_value),
                ]
            })
            .collect();
        out.push_str(&text_table(&headers, &rows));
    }
    out
}

/// Forecaster means in the layout of the synthetic-experiment results table.
pub fn render_experiment(report: &ExperimentReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "iterations: {}, seed: {}", report.iterations, report.seed);
    let headers = ["forecaster", "RMaS", "WS"].map(String::from).to_vec();
    let rows: Vec<Vec<String>> = report
        .forecasters
        .iter()
        .map(|f| vec![f.name.clone(), format!("{:.4}", f.mean_rmas), format!("{:.4}", f.mean_ws)])
        .collect();
    out.push_str(&text_table(&headers, &rows));
    let _ = writeln!(
        out,
        "sum of weights: RMaS {}, WS {}",
        num(report.rmas_weight_sum),
        num(report.ws_weight_sum)
    );
    let p: Vec<String> = report.climatic_exceedance.iter().map(|p| format!("{p:.4}")).collect();
    let _ = writeln!(out, "empirical climatic exceedance probabilities: {}", p.join(", "));
    let _ = writeln!(
        out,
        "truth sample mean {:.4}, variance {:.4}",
        report.y_mean, report.y_variance
    );

    out.push_str("\npairwise tests (difference a - b)\n");
    let headers = ["score", "a", "b", "mean diff", "statistic", "p-value"]
        .map(String::from)
        .to_vec();
    let rows: Vec<Vec<String>> = report
        .pairwise
        .iter()
        .map(|p| {
            vec![
                p.score.clone(),
                p.a.clone(),
                p.b.clone(),
                format!("{:.5}", p.test.mean_diff),
                format!("{:.2}", p.test.statistic),
                format!("{:.4}", p.test.p_value),
            ]
        })
        .collect();
    out.push_str(&text_table(&headers, &rows));
    out
}
