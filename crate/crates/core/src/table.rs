//! Piecewise-linear tables on `[0,1]` and `[0,1]²`.
//!
//! Knots may repeat once to encode a jump; at the repeated knot the table
//! takes the later sample (right-continuous).

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

fn validate_knots(x: &[f64]) -> Result<()> {
    if x.len() < 2 {
        return Err(Error::InvalidOperator("table needs at least two knots".into()));
    }
    if x[0] != 0.0 || x[x.len() - 1] != 1.0 {
        return Err(Error::InvalidOperator(
            "table knots must start at 0 and end at 1".into(),
        ));
    }
    for w in x.windows(2) {
        if !(w[0] <= w[1]) {
            return Err(Error::InvalidOperator("table knots must be non-decreasing".into()));
        }
    }
    for w in x.windows(3) {
        if w[0] == w[2] {
            return Err(Error::InvalidOperator("a knot may repeat at most once".into()));
        }
    }
    Ok(())
}

/// Segment containing `t` and the interpolation weight inside it.
fn locate(x: &[f64], t: f64) -> (usize, f64) {
    let n = x.len();
    let i = x.partition_point(|&k| k <= t).saturating_sub(1);
    if i >= n - 1 {
        return (n - 1, 0.0);
    }
    let w = (t - x[i]) / (x[i + 1] - x[i]);
    (i, w.clamp(0.0, 1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1d {
    pub x: Vec<f64>,
    pub value: Vec<f64>,
}

impl Table1d {
    pub fn validate(&self) -> Result<()> {
        validate_knots(&self.x)?;
        if self.value.len() != self.x.len() {
            return Err(Error::InvalidOperator("`x` and `value` lengths differ".into()));
        }
        if self.value.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::InvalidOperator("table values must lie in [0,1]".into()));
        }
        Ok(())
    }

    pub fn eval(&self, t: f64) -> f64 {
        let (i, w) = locate(&self.x, t);
        if w == 0.0 {
            return self.value[i];
        }
        self.value[i] + w * (self.value[i + 1] - self.value[i])
    }

    pub fn is_non_increasing(&self) -> bool {
        self.value.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.x.windows(2).all(|w| w[0] < w[1]) && self.value.windows(2).all(|w| w[0] < w[1])
    }

    /// Swaps the axes. Only meaningful for strictly increasing tables.
    pub fn inverted(&self) -> Table1d {
        Table1d {
            x: self.value.clone(),
            value: self.x.clone(),
        }
    }
}

/// Samples `value[i][j]` of a binary function at `(x[i], x[j])`, bilinear in between.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table2d {
    pub x: Vec<f64>,
    pub value: Vec<Vec<f64>>,
}

impl Table2d {
    /// Samples `f` on the given knots.
    pub fn sample(x: Vec<f64>, f: impl Fn(f64, f64) -> f64) -> Table2d {
        let value = x.iter().map(|&u| x.iter().map(|&v| f(u, v)).collect()).collect();
        Table2d { x, value }
    }

    pub fn validate(&self) -> Result<()> {
        validate_knots(&self.x)?;
        let n = self.x.len();
        if self.value.len() != n || self.value.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidOperator(
                "`value` must be a square matrix matching `x`".into(),
            ));
        }
        if self.value.iter().flatten().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::InvalidOperator("table values must lie in [0,1]".into()));
        }
        Ok(())
    }

    pub fn eval(&self, u: f64, v: f64) -> f64 {
        let (i, wu) = locate(&self.x, u);
        let (j, wv) = locate(&self.x, v);
        let at = |a: usize, b: usize| self.value[a][b];
        let i1 = (i + 1).min(self.x.len() - 1);
        let j1 = (j + 1).min(self.x.len() - 1);
        let lo = at(i, j) + wv * (at(i, j1) - at(i, j));
        let hi = at(i1, j) + wv * (at(i1, j1) - at(i1, j));
        lo + wu * (hi - lo)
    }

    /// True if samples are non-decreasing (`sign = 1`) or non-increasing
    /// (`sign = -1`) along the first axis.
    pub fn monotone_rows(&self, sign: f64) -> bool {
        self.value
            .windows(2)
            .all(|w| w[0].iter().zip(&w[1]).all(|(a, b)| sign * (b - a) >= 0.0))
    }

    pub fn monotone_cols(&self, sign: f64) -> bool {
        self.value
            .iter()
            .all(|row| row.windows(2).all(|w| sign * (w[1] - w[0]) >= 0.0))
    }
}
