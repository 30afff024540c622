use crate::error::{Error, Result};
use crate::matrix::{EvaluationWeights, WarningScaling};

/// Non-negative weights `w[i][j]` on decision points `(S_i, p_j)`, `1 <= i <= m`, `1 <= j <= n`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightGrid {
    m: usize,
    n: usize,
    /// Row-major by severity: `values[(i - 1) * n + (j - 1)]`.
    values: Vec<f64>,
}

impl WeightGrid {
    /// `rows[i - 1][j - 1]` is the weight on `(S_i, p_j)`.
    pub fn new(m: usize, n: usize, rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.len() != m || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Structure(format!("weight grid is not {m}x{n}")));
        }
        let values: Vec<f64> = rows.into_iter().flatten().collect();
        if values.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::Input("weights must be finite and non-negative".into()));
        }
        Ok(WeightGrid { m, n, values })
    }

    pub fn uniform(m: usize, n: usize, value: f64) -> Self {
        WeightGrid {
            m,
            n,
            values: vec![value; m * n],
        }
    }

    pub fn zeros(m: usize, n: usize) -> Self {
        WeightGrid::uniform(m, n, 0.0)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[(i - 1) * self.n + (j - 1)]
    }

    fn add(&mut self, i: usize, j: usize, v: f64) {
        self.values[(i - 1) * self.n + (j - 1)] += v;
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&w| w == 0.0)
    }

    /// Decision points carrying positive weight.
    pub fn positive_points(&self) -> Vec<(usize, usize)> {
        (1..=self.m)
            .flat_map(|i| (1..=self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.get(i, j) > 0.0)
            .collect()
    }

    /// Copy scaled to sum to 1; the zero grid is returned unchanged.
    pub fn normalized(&self) -> Self {
        let s = self.sum();
        if s == 0.0 {
            return self.clone();
        }
        WeightGrid {
            m: self.m,
            n: self.n,
            values: self.values.iter().map(|w| w / s).collect(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.values.chunks(self.n).map(<[f64]>::to_vec).collect()
    }
}

/// Warning-score weights.
///
/// For each level `l_k`, columns are scanned left to right. The first certainty index
/// at which column `i` reaches `l_k` is a level-changing decision point; it receives
/// `v_k` unless a column further left already changed at the same threshold. `j_min`
/// starts one past the top threshold so that the top threshold can receive weight.
pub fn warning_weights(scaling: &WarningScaling, evaluation: &EvaluationWeights) -> Result<WeightGrid> {
    if evaluation.q() != scaling.q() {
        return Err(Error::Structure(format!(
            "{} evaluation weights for {} warning levels above Nil",
            evaluation.q(),
            scaling.q()
        )));
    }
    let (m, n) = (scaling.m(), scaling.n());
    let mut w = WeightGrid::zeros(m, n);
    for k in 1..=scaling.q() {
        let mut j_min = n + 1;
        for i in 1..=m {
            // property (a) keeps row 0 at Nil, so any crossing is at index >= 1
            if let Some(j) = scaling.first_reaching(i, k) {
                if j < j_min {
                    j_min = j;
                    w.add(i, j, evaluation.get(k));
                }
            }
        }
    }
    Ok(w)
}
