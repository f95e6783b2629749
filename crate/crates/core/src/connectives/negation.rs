use serde::{Deserialize, Serialize};

use super::{Aggregator, Automorphism};
use crate::implications::Implication;
use crate::search::sup_lower_set;
use crate::table::Table1d;
use crate::{Error, Grid, Result, UnaryOp, UnitValue, NOISE};

/// Resolution of the scan that confirms a bisected natural negation.
const SCAN_STEP: f64 = 1e-4;

fn default_tol() -> f64 {
    1e-6
}

/// Fuzzy negation: antitone with `N(0) = 1` and `N(1) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Negation {
    /// Smallest negation: 1 at 0, else 0.
    Bottom,
    /// Greatest negation: 0 at 1, else 1.
    Top,
    /// `1 - x`
    Standard,
    /// `φ⁻¹(N(φ(x)))`
    Conjugated {
        base: Box<Negation>,
        phi: Automorphism,
    },
    /// `x ↦ I(x, 0)`
    NaturalOfImplication {
        implication: Box<Implication>,
    },
    /// `x ↦ sup{t : A(t, x) = 0}`
    NaturalOfAggregator {
        aggregator: Box<Aggregator>,
        #[serde(default = "default_tol")]
        tol: f64,
    },
    Tabulated(Table1d),
}

impl Negation {
    pub fn conjugated(self, phi: Automorphism) -> Negation {
        Negation::Conjugated {
            base: Box::new(self),
            phi,
        }
    }

    pub fn natural_of_aggregator(aggregator: Aggregator) -> Negation {
        Negation::NaturalOfAggregator {
            aggregator: Box::new(aggregator),
            tol: default_tol(),
        }
    }

    pub fn eval(&self, x: UnitValue) -> UnitValue {
        UnitValue::saturating(self.apply(x.get()))
    }

    pub fn apply(&self, x: f64) -> f64 {
        let v = match self {
            Negation::Bottom => {
                if x == 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Negation::Top => {
                if x == 1.0 {
                    0.0
                } else {
                    1.0
                }
            }
            Negation::Standard => 1.0 - x,
            Negation::Conjugated { base, phi } => phi.invert(crate::snap_ends(base.apply(phi.apply(x)))),
            Negation::NaturalOfImplication { implication } => implication.apply(x, 0.0),
            Negation::NaturalOfAggregator { aggregator, tol } => natural_of(aggregator, x, *tol),
            Negation::Tabulated(t) => t.eval(x),
        };
        v.clamp(0.0, 1.0)
    }

    /// True when `N(N(x)) = x` on every grid point, up to `tol`.
    pub fn is_strong_on(&self, grid: &Grid, tol: f64) -> bool {
        grid.points()
            .iter()
            .all(|&x| (self.apply(self.apply(x)) - x).abs() <= tol)
    }

    pub fn uses_bisection(&self) -> bool {
        match self {
            Negation::NaturalOfAggregator { .. } => true,
            Negation::Conjugated { base, .. } => base.uses_bisection(),
            Negation::NaturalOfImplication { implication } => implication.uses_bisection(),
            _ => false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Negation::Conjugated { base, phi } => {
                base.validate()?;
                phi.validate()?;
            }
            Negation::NaturalOfImplication { implication } => implication.validate()?,
            Negation::NaturalOfAggregator { aggregator, tol } => {
                aggregator.validate()?;
                if !(*tol > 0.0) {
                    return Err(Error::InvalidOperator(
                        "natural negation tolerance must be positive".into(),
                    ));
                }
            }
            Negation::Tabulated(t) => {
                t.validate()?;
                if !t.is_non_increasing() || t.value[0] != 1.0 || t.value[t.value.len() - 1] != 0.0 {
                    return Err(Error::InvalidOperator(
                        "tabulated negation must fall monotonically from 1 to 0".into(),
                    ));
                }
            }
            Negation::Bottom | Negation::Top | Negation::Standard => {}
        }
        Ok(())
    }
}

impl UnaryOp for Negation {
    fn apply(&self, x: f64) -> f64 {
        Negation::apply(self, x)
    }
    fn uses_bisection(&self) -> bool {
        Negation::uses_bisection(self)
    }
}

/// `sup{t : A(t, x) = 0}`: bisection, then a local check at scan resolution.
/// If the check disagrees the operator is not monotone where it matters and
/// a full scan decides.
fn natural_of(a: &Aggregator, x: f64, tol: f64) -> f64 {
    let zero = |t: f64| a.apply(t, x) <= 0.0;
    let iterations = (1.0 / tol).log2().ceil().max(1.0) as u32;
    let t = sup_lower_set(zero, iterations);
    let below_ok = t < SCAN_STEP || zero(t - SCAN_STEP);
    let above_ok = t + SCAN_STEP > 1.0 || !zero(t + SCAN_STEP);
    if below_ok && above_ok {
        return t;
    }
    let steps = (1.0 / SCAN_STEP).round() as usize;
    (0..=steps)
        .map(|k| k as f64 * SCAN_STEP)
        .filter(|&s| zero(s))
        .fold(0.0, f64::max)
}

/// Largest defect of (N1)/(N2) on the grid; zero for a genuine negation.
pub fn negation_defect(n: &Negation, grid: &Grid) -> f64 {
    let mut worst = (1.0 - n.apply(0.0)).abs().max(n.apply(1.0).abs());
    let vals: Vec<f64> = grid.points().iter().map(|&x| n.apply(x)).collect();
    for w in vals.windows(2) {
        worst = worst.max(w[1] - w[0]);
    }
    if worst <= NOISE {
        0.0
    } else {
        worst
    }
}
