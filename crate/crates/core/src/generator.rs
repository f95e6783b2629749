//! Unary generators: strictly monotone maps `[0,1] → [-∞, ∞]` with a
//! closed-form inverse.
//!
//! Generators drive f- and g-implications, Archimedean t-norms, t-conorms
//! and copulas, weighted quasi-arithmetic means and representable
//! aggregation functions. Inversion always goes through
//! [`Generator::pseudo_inverse`], which clamps values outside the range to
//! the nearest endpoint of `[0,1]`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The role a generator plays, fixing its direction and endpoint convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// Decreasing, `f(1) = 0`, values in `[0, ∞]`.
    FGenerator,
    /// Increasing, `g(0) = 0`, values in `[0, ∞]`.
    GGenerator,
    /// Decreasing, `t(1) = 0`.
    #[serde(rename = "tnorm-additive", alias = "t-norm-additive")]
    TNormAdditive,
    /// Increasing, `f(0) = 0`.
    #[serde(rename = "tconorm-additive", alias = "t-conorm-additive")]
    TConormAdditive,
    /// Decreasing, `c(1) = 0`.
    CopulaAdditive,
    /// Any strictly monotone generator (means, representable functions).
    Monotone,
}

/// Closed-form generator catalog.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum Shape {
    /// `1 - x`
    OneMinus,
    /// `-ln x`
    NegLog,
    /// `-ln(1 - x)`
    NegLogOneMinus,
    /// `x`
    Identity,
    /// `x^p`, `p > 0`
    Power { p: f64 },
    /// `(1 - x)^p`, `p > 0`
    OneMinusPower { p: f64 },
    /// `(x^-θ - 1) / θ`, `θ ≥ -1`, `θ ≠ 0`
    Clayton { theta: f64 },
    /// `(-ln x)^θ`, `θ ≥ 1`
    GumbelHougaard { theta: f64 },
    /// `ln(x / (1 - x))`
    Logit,
}

impl Shape {
    fn increasing(self) -> bool {
        matches!(
            self,
            Shape::NegLogOneMinus | Shape::Identity | Shape::Power { .. } | Shape::Logit
        )
    }

    fn eval(self, x: f64) -> f64 {
        match self {
            Shape::OneMinus => 1.0 - x,
            Shape::NegLog => -x.ln(),
            Shape::NegLogOneMinus => -(1.0 - x).ln(),
            Shape::Identity => x,
            Shape::Power { p } => x.powf(p),
            Shape::OneMinusPower { p } => (1.0 - x).powf(p),
            Shape::Clayton { theta } => (x.powf(-theta) - 1.0) / theta,
            Shape::GumbelHougaard { theta } => (-x.ln()).powf(theta),
            Shape::Logit => (x / (1.0 - x)).ln(),
        }
    }

    /// Inverse on the open range; callers handle the endpoints.
    fn inverse(self, v: f64) -> f64 {
        match self {
            Shape::OneMinus => 1.0 - v,
            Shape::NegLog => (-v).exp(),
            Shape::NegLogOneMinus => 1.0 - (-v).exp(),
            Shape::Identity => v,
            Shape::Power { p } => v.powf(1.0 / p),
            Shape::OneMinusPower { p } => 1.0 - v.powf(1.0 / p),
            Shape::Clayton { theta } => (1.0 + theta * v).powf(-1.0 / theta),
            Shape::GumbelHougaard { theta } => (-v.powf(1.0 / theta)).exp(),
            Shape::Logit => 1.0 / (1.0 + (-v).exp()),
        }
    }

    fn check_parameters(self) -> Result<()> {
        let ok = match self {
            Shape::Power { p } | Shape::OneMinusPower { p } => p.is_finite() && p > 0.0,
            Shape::Clayton { theta } => theta.is_finite() && theta >= -1.0 && theta != 0.0,
            Shape::GumbelHougaard { theta } => theta.is_finite() && theta >= 1.0,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidOperator(format!("bad generator parameters: {self:?}")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Generator {
    pub kind: GeneratorKind,
    #[serde(flatten)]
    pub shape: Shape,
}

impl Generator {
    pub fn new(kind: GeneratorKind, shape: Shape) -> Result<Self> {
        let g = Generator { kind, shape };
        g.validate()?;
        Ok(g)
    }

    pub fn is_increasing(&self) -> bool {
        self.shape.increasing()
    }

    pub fn eval(&self, x: f64) -> f64 {
        // exact endpoints keep 0·∞ conventions clean
        match (self.shape, x) {
            (Shape::OneMinus, _) | (Shape::Identity, _) => self.shape.eval(x),
            (_, x) if x <= 0.0 => self.at_zero(),
            (_, x) if x >= 1.0 => self.at_one(),
            _ => self.shape.eval(x),
        }
    }

    pub fn at_zero(&self) -> f64 {
        match self.shape {
            Shape::NegLog | Shape::GumbelHougaard { .. } => f64::INFINITY,
            Shape::Clayton { theta } if theta > 0.0 => f64::INFINITY,
            Shape::Clayton { theta } => -1.0 / theta,
            Shape::Logit => f64::NEG_INFINITY,
            Shape::OneMinus | Shape::OneMinusPower { .. } => 1.0,
            Shape::NegLogOneMinus | Shape::Identity | Shape::Power { .. } => 0.0,
        }
    }

    pub fn at_one(&self) -> f64 {
        match self.shape {
            Shape::NegLogOneMinus | Shape::Logit => f64::INFINITY,
            Shape::Identity | Shape::Power { .. } => 1.0,
            _ => 0.0,
        }
    }

    /// Inverse extended to the whole real line by clamping to `[0,1]`.
    ///
    /// NaN propagates so callers can apply their own `∞ - ∞` convention.
    pub fn pseudo_inverse(&self, v: f64) -> f64 {
        if v.is_nan() {
            return f64::NAN;
        }
        let (lo, hi) = (self.at_zero(), self.at_one());
        if self.is_increasing() {
            if v <= lo {
                return 0.0;
            }
            if v >= hi {
                return 1.0;
            }
        } else {
            if v >= lo {
                return 0.0;
            }
            if v <= hi {
                return 1.0;
            }
        }
        self.shape.inverse(v).clamp(0.0, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        self.shape.check_parameters()?;
        let increasing = self.is_increasing();
        let bad = |msg: &str| {
            Err(Error::InvalidOperator(format!(
                "{:?} cannot serve as {:?}: {msg}",
                self.shape, self.kind
            )))
        };
        match self.kind {
            GeneratorKind::FGenerator | GeneratorKind::TNormAdditive | GeneratorKind::CopulaAdditive => {
                if increasing {
                    return bad("must be decreasing");
                }
                if self.at_one() != 0.0 {
                    return bad("must vanish at 1");
                }
            }
            GeneratorKind::GGenerator | GeneratorKind::TConormAdditive => {
                if !increasing {
                    return bad("must be increasing");
                }
                if self.at_zero() != 0.0 {
                    return bad("must vanish at 0");
                }
            }
            GeneratorKind::Monotone => {}
        }
        if matches!(self.kind, GeneratorKind::FGenerator | GeneratorKind::GGenerator)
            && self.at_zero().min(self.at_one()) < 0.0
        {
            return bad("must be non-negative");
        }
        let n = 1000;
        let mut prev = self.eval(0.0);
        for k in 1..=n {
            let cur = self.eval(k as f64 / n as f64);
            let step = if increasing { cur - prev } else { prev - cur };
            if !(step > 0.0) {
                return bad("not strictly monotone on the 1001-point grid");
            }
            prev = cur;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(kind: GeneratorKind, shape: Shape) -> Generator {
        Generator::new(kind, shape).unwrap()
    }

    #[test]
    fn catalog_round_trips_through_inverse() {
        let shapes = [
            (GeneratorKind::FGenerator, Shape::OneMinus),
            (GeneratorKind::FGenerator, Shape::NegLog),
            (GeneratorKind::GGenerator, Shape::NegLogOneMinus),
            (GeneratorKind::GGenerator, Shape::Identity),
            (GeneratorKind::GGenerator, Shape::Power { p: 2.5 }),
            (GeneratorKind::FGenerator, Shape::OneMinusPower { p: 0.5 }),
            (GeneratorKind::CopulaAdditive, Shape::Clayton { theta: 2.0 }),
            (GeneratorKind::CopulaAdditive, Shape::Clayton { theta: -0.5 }),
            (GeneratorKind::CopulaAdditive, Shape::GumbelHougaard { theta: 1.5 }),
            (GeneratorKind::Monotone, Shape::Logit),
        ];
        for (kind, shape) in shapes {
            let gen = g(kind, shape);
            for k in 1..100 {
                let x = k as f64 / 100.0;
                let back = gen.pseudo_inverse(gen.eval(x));
                assert!((back - x).abs() < 1e-9, "{shape:?} at {x}: {back}");
            }
        }
    }

    #[test]
    fn pseudo_inverse_clamps() {
        let f = g(GeneratorKind::FGenerator, Shape::OneMinus);
        assert_eq!(f.pseudo_inverse(3.0), 0.0);
        assert_eq!(f.pseudo_inverse(-1.0), 1.0);
        let h = g(GeneratorKind::GGenerator, Shape::Identity);
        assert_eq!(h.pseudo_inverse(2.0), 1.0);
        let l = g(GeneratorKind::FGenerator, Shape::NegLog);
        assert_eq!(l.pseudo_inverse(f64::INFINITY), 0.0);
        assert_eq!(l.eval(0.0), f64::INFINITY);
    }

    #[test]
    fn kind_conventions_are_enforced() {
        assert!(Generator::new(GeneratorKind::FGenerator, Shape::Identity).is_err());
        assert!(Generator::new(GeneratorKind::GGenerator, Shape::NegLog).is_err());
        assert!(Generator::new(GeneratorKind::FGenerator, Shape::Logit).is_err());
        assert!(Generator::new(GeneratorKind::GGenerator, Shape::Power { p: -1.0 }).is_err());
        assert!(Generator::new(GeneratorKind::CopulaAdditive, Shape::GumbelHougaard { theta: 0.5 }).is_err());
    }

    #[test]
    fn json_shape() {
        let gen: Generator = serde_json::from_str(r#"{"kind":"f-generator","shape":"neg-log"}"#).unwrap();
        assert_eq!(gen.shape, Shape::NegLog);
        let gen: Generator = serde_json::from_str(r#"{"kind":"g-generator","shape":"power","p":2.0}"#).unwrap();
        assert_eq!(gen.shape, Shape::Power { p: 2.0 });
    }
}
