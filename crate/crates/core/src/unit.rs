use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A real number in `[0,1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct UnitValue(f64);

impl UnitValue {
    pub const ZERO: UnitValue = UnitValue(0.0);
    pub const ONE: UnitValue = UnitValue(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(UnitValue(value))
        } else {
            Err(Error::OutOfRange(value))
        }
    }

    /// Clamps into `[0,1]`; NaN maps to zero.
    pub fn saturating(value: f64) -> Self {
        if value.is_nan() {
            UnitValue(0.0)
        } else {
            UnitValue(value.clamp(0.0, 1.0))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for UnitValue {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        UnitValue::new(value)
    }
}

impl From<UnitValue> for f64 {
    fn from(v: UnitValue) -> f64 {
        v.0
    }
}

impl fmt::Display for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Sorted sample points of `[0,1]` including both endpoints.
///
/// Universally quantified laws are only certified on these points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    points: Vec<f64>,
    description: String,
}

impl Grid {
    /// `n` evenly spaced points `k/(n-1)`.
    pub fn uniform(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 points, got {n}")));
        }
        let last = (n - 1) as f64;
        let points = (0..n).map(|k| k as f64 / last).collect();
        Ok(Grid {
            points,
            description: format!("uniform({n})"),
        })
    }

    pub fn from_points(mut points: Vec<f64>) -> Result<Self> {
        if points.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::InvalidGrid("points must lie in [0,1]".into()));
        }
        points.sort_by(f64::total_cmp);
        points.dedup();
        if points.first() != Some(&0.0) || points.last() != Some(&1.0) {
            return Err(Error::InvalidGrid("grid must contain 0 and 1".into()));
        }
        let description = format!("custom({} points)", points.len());
        Ok(Grid { points, description })
    }

    /// Image of this grid under `map`, which must fix 0 and 1 and be increasing.
    pub fn mapped(&self, map: impl Fn(f64) -> f64) -> Result<Self> {
        let mut points: Vec<f64> = self.points.iter().map(|&p| map(p)).collect();
        points[0] = 0.0;
        let last = points.len() - 1;
        points[last] = 1.0;
        let mut grid = Grid::from_points(points)?;
        grid.description = format!("mapped({})", self.description);
        Ok(grid)
    }

    /// At most `max_points` points picked evenly from this grid, endpoints kept.
    pub fn subsample(&self, max_points: usize) -> Grid {
        let n = self.points.len();
        if n <= max_points || max_points < 2 {
            return self.clone();
        }
        let mut idx: Vec<usize> = (0..max_points)
            .map(|k| ((k * (n - 1)) as f64 / (max_points - 1) as f64).round() as usize)
            .collect();
        idx.dedup();
        Grid {
            points: idx.into_iter().map(|i| self.points[i]).collect(),
            description: format!("subsample({}, {max_points})", self.description),
        }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn description(&self) -> &str {
        &self.description
    }
}

impl Default for Grid {
    fn default() -> Self {
        Grid::uniform(101).expect("101 > 2")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_value_rejects_out_of_range() {
        assert!(UnitValue::new(1.5).is_err());
        assert!(UnitValue::new(-0.1).is_err());
        assert!(UnitValue::new(f64::NAN).is_err());
        assert_eq!(UnitValue::new(0.3).unwrap().get(), 0.3);
    }

    #[test]
    fn uniform_grid_has_endpoints() {
        let g = Grid::uniform(101).unwrap();
        assert_eq!(g.len(), 101);
        assert_eq!(g.points()[0], 0.0);
        assert_eq!(g.points()[100], 1.0);
        assert_eq!(g.points()[37], 0.37);
        assert!(Grid::uniform(1).is_err());
    }

    #[test]
    fn custom_grid_needs_endpoints() {
        assert!(Grid::from_points(vec![0.0, 0.5]).is_err());
        let g = Grid::from_points(vec![1.0, 0.5, 0.0, 0.5]).unwrap();
        assert_eq!(g.points(), &[0.0, 0.5, 1.0]);
    }

    #[test]
    fn subsample_keeps_endpoints() {
        let g = Grid::uniform(101).unwrap().subsample(21);
        assert_eq!(g.len(), 21);
        assert_eq!(g.points()[0], 0.0);
        assert_eq!(g.points()[20], 1.0);
        assert!((g.points()[1] - 0.05).abs() < 1e-15);
    }
}
