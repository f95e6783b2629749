use serde::{Deserialize, Serialize};

use super::Copula;
use crate::connectives::{Aggregator, Automorphism, Negation};
use crate::generator::{Generator, GeneratorKind};
use crate::search::sup_lower_set;
use crate::table::Table2d;
use crate::{BinaryOp, Error, Grid, Result, UnitValue, NOISE};

/// Bisection steps for residual implications.
const R_ITERATIONS: u32 = 60;

/// The t-norm behind a T-power implication.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TPowerBase {
    Min,
    /// Continuous Archimedean t-norm given by its additive generator.
    Archimedean {
        generator: Generator,
    },
}

/// Fuzzy implication: decreasing in `x`, increasing in `y`, with
/// `I(0,0) = I(1,1) = 1` and `I(1,0) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Implication {
    /// `min(1 - x + y, 1)`
    Lukasiewicz,
    /// `1 - x + xy`
    Reichenbach,
    /// `sup{t : A(x,t) ≤ y}`
    RImplication {
        aggregator: Box<Aggregator>,
    },
    /// `A(N(x), y)` for a disjunctor `A`.
    AnImplication {
        aggregator: Box<Aggregator>,
        negation: Negation,
    },
    /// `A₁(N(x), A₂(x, y))`
    QlOperation {
        outer: Box<Aggregator>,
        inner: Box<Aggregator>,
        negation: Negation,
    },
    /// `f⁻¹(x·f(y))`
    FImplication {
        generator: Generator,
    },
    /// `g⁽⁻¹⁾(g(y)/x)`
    GImplication {
        generator: Generator,
    },
    TPower {
        base: TPowerBase,
    },
    /// `C(x,y)/x`
    Probabilistic {
        copula: Copula,
    },
    /// `C(x,y) - x + 1`
    ProbabilisticS {
        copula: Copula,
    },
    Meet {
        left: Box<Implication>,
        right: Box<Implication>,
    },
    Join {
        left: Box<Implication>,
        right: Box<Implication>,
    },
    /// `φ⁻¹(I(φ(x), φ(y)))`
    Conjugated {
        base: Box<Implication>,
        phi: Automorphism,
    },
    LowerContrapositivisation {
        base: Box<Implication>,
        negation: Negation,
    },
    UpperContrapositivisation {
        base: Box<Implication>,
        negation: Negation,
    },
    Tabulated(Table2d),
}

/// Which branch of the contrapositivisation keeps the original values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Lower,
    Upper,
}

impl Implication {
    pub fn eval(&self, x: UnitValue, y: UnitValue) -> UnitValue {
        UnitValue::saturating(self.apply(x.get(), y.get()))
    }

    pub fn apply(&self, x: f64, y: f64) -> f64 {
        let v = match self {
            Implication::Lukasiewicz => (1.0 - x + y).min(1.0),
            Implication::Reichenbach => 1.0 - x + x * y,
            Implication::RImplication { aggregator } => {
                snap(sup_lower_set(|t| aggregator.apply(x, t) <= y, R_ITERATIONS))
            }
            Implication::AnImplication { aggregator, negation } => aggregator.apply(negation.apply(x), y),
            Implication::QlOperation { outer, inner, negation } => outer.apply(negation.apply(x), inner.apply(x, y)),
            Implication::FImplication { generator } => {
                if x == 0.0 {
                    1.0
                } else {
                    let fy = generator.eval(y);
                    generator.pseudo_inverse(x * fy)
                }
            }
            Implication::GImplication { generator } => {
                if x == 0.0 {
                    1.0
                } else {
                    generator.pseudo_inverse(generator.eval(y) / x)
                }
            }
            Implication::TPower { base } => t_power(base, x, y),
            Implication::Probabilistic { copula } => {
                if x > 0.0 {
                    copula.apply(x, y) / x
                } else {
                    1.0
                }
            }
            Implication::ProbabilisticS { copula } => copula.apply(x, y) - x + 1.0,
            Implication::Meet { left, right } => left.apply(x, y).min(right.apply(x, y)),
            Implication::Join { left, right } => left.apply(x, y).max(right.apply(x, y)),
            Implication::Conjugated { base, phi } => {
                phi.invert(crate::snap_ends(base.apply(phi.apply(x), phi.apply(y))))
            }
            Implication::LowerContrapositivisation { base, negation } => {
                let nx = negation.apply(x);
                if y >= nx {
                    base.apply(x, y)
                } else {
                    base.apply(negation.apply(y), nx)
                }
            }
            Implication::UpperContrapositivisation { base, negation } => {
                let nx = negation.apply(x);
                if y <= nx {
                    base.apply(x, y)
                } else {
                    base.apply(negation.apply(y), nx)
                }
            }
            Implication::Tabulated(t) => t.eval(x, y),
        };
        v.clamp(0.0, 1.0)
    }

    /// Checked constructor for the probabilistic family.
    pub fn probabilistic(copula: Copula) -> Result<Implication> {
        let i = Implication::Probabilistic { copula };
        i.validate()?;
        Ok(i)
    }

    pub fn meet(self, other: Implication) -> Implication {
        Implication::Meet {
            left: Box::new(self),
            right: Box::new(other),
        }
    }

    pub fn join(self, other: Implication) -> Implication {
        Implication::Join {
            left: Box::new(self),
            right: Box::new(other),
        }
    }

    pub fn conjugate(self, phi: Automorphism) -> Implication {
        Implication::Conjugated {
            base: Box::new(self),
            phi,
        }
    }

    pub fn uses_bisection(&self) -> bool {
        match self {
            Implication::RImplication { .. } => true,
            Implication::AnImplication { aggregator, negation } => {
                aggregator.uses_bisection() || negation.uses_bisection()
            }
            Implication::QlOperation { outer, inner, negation } => {
                outer.uses_bisection() || inner.uses_bisection() || negation.uses_bisection()
            }
            Implication::Meet { left, right } | Implication::Join { left, right } => {
                left.uses_bisection() || right.uses_bisection()
            }
            Implication::Conjugated { base, .. } => base.uses_bisection(),
            Implication::LowerContrapositivisation { base, negation }
            | Implication::UpperContrapositivisation { base, negation } => {
                base.uses_bisection() || negation.uses_bisection()
            }
            _ => false,
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            Implication::Lukasiewicz => "lukasiewicz",
            Implication::Reichenbach => "reichenbach",
            Implication::RImplication { .. } => "r-implication",
            Implication::AnImplication { .. } => "an-implication",
            Implication::QlOperation { .. } => "ql-operation",
            Implication::FImplication { .. } => "f-implication",
            Implication::GImplication { .. } => "g-implication",
            Implication::TPower { .. } => "t-power",
            Implication::Probabilistic { .. } => "probabilistic",
            Implication::ProbabilisticS { .. } => "probabilistic-s",
            Implication::Meet { .. } => "meet",
            Implication::Join { .. } => "join",
            Implication::Conjugated { .. } => "conjugated",
            Implication::LowerContrapositivisation { .. } => "lower-contrapositivisation",
            Implication::UpperContrapositivisation { .. } => "upper-contrapositivisation",
            Implication::Tabulated(_) => "tabulated",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Implication::Lukasiewicz | Implication::Reichenbach => {}
            Implication::RImplication { aggregator } => aggregator.validate()?,
            Implication::AnImplication { aggregator, negation } => {
                aggregator.validate()?;
                negation.validate()?;
                if aggregator.apply(1.0, 0.0) != 1.0 || aggregator.apply(0.0, 1.0) != 1.0 {
                    return Err(Error::InvalidOperator(format!(
                        "(A,N)-implication needs a disjunctor, {} is not one",
                        aggregator.family_name()
                    )));
                }
            }
            Implication::QlOperation { outer, inner, negation } => {
                outer.validate()?;
                inner.validate()?;
                negation.validate()?;
                if let Some(msg) = implication_axiom_failure(self, &Grid::default()) {
                    return Err(Error::InvalidOperator(format!(
                        "QL-operation is not an implication: {msg}"
                    )));
                }
            }
            Implication::FImplication { generator } => expect_kind(generator, GeneratorKind::FGenerator)?,
            Implication::GImplication { generator } => expect_kind(generator, GeneratorKind::GGenerator)?,
            Implication::TPower { base } => {
                if let TPowerBase::Archimedean { generator } = base {
                    expect_kind(generator, GeneratorKind::TNormAdditive)?;
                }
            }
            Implication::Probabilistic { copula } => {
                copula.validate()?;
                if let Some(msg) = implication_axiom_failure(self, &Grid::default()) {
                    return Err(Error::InvalidOperator(format!(
                        "probabilistic implication of this copula is not an implication: {msg}"
                    )));
                }
            }
            Implication::ProbabilisticS { copula } => copula.validate()?,
            Implication::Meet { left, right } | Implication::Join { left, right } => {
                left.validate()?;
                right.validate()?;
            }
            Implication::Conjugated { base, phi } => {
                base.validate()?;
                phi.validate()?;
            }
            Implication::LowerContrapositivisation { base, negation }
            | Implication::UpperContrapositivisation { base, negation } => {
                base.validate()?;
                negation.validate()?;
                if !negation.is_strong_on(&Grid::default(), 1e-9) {
                    log::warn!("contrapositivisation with a negation that is not strong on the 101-point grid");
                }
            }
            Implication::Tabulated(t) => {
                t.validate()?;
                if !t.monotone_rows(-1.0) || !t.monotone_cols(1.0) {
                    return Err(Error::InvalidOperator(
                        "tabulated implication must decrease in x and increase in y".into(),
                    ));
                }
                if let Some(msg) = implication_axiom_failure(self, &Grid::uniform(2)?) {
                    return Err(Error::InvalidOperator(format!("tabulated implication: {msg}")));
                }
            }
        }
        Ok(())
    }
}

impl BinaryOp for Implication {
    fn apply(&self, x: f64, y: f64) -> f64 {
        Implication::apply(self, x, y)
    }
    fn uses_bisection(&self) -> bool {
        Implication::uses_bisection(self)
    }
}

/// Rounds a bisection result to the noise floor; the last bits carry no information.
fn snap(v: f64) -> f64 {
    (v / NOISE).round() * NOISE
}

fn expect_kind(g: &Generator, kind: GeneratorKind) -> Result<()> {
    if g.kind != kind {
        return Err(Error::InvalidOperator(format!(
            "expected a {kind:?} generator, got {:?}",
            g.kind
        )));
    }
    g.validate()
}

fn t_power(base: &TPowerBase, x: f64, y: f64) -> f64 {
    if x <= y {
        return 1.0;
    }
    match base {
        TPowerBase::Min => 0.0,
        TPowerBase::Archimedean { generator } => {
            if y == 0.0 {
                return 0.0;
            }
            let ratio = generator.eval(x) / generator.eval(y);
            if ratio.is_nan() {
                0.0
            } else {
                ratio
            }
        }
    }
}

/// First violation of (I1)-(I5) found on the grid, described for an error
/// message. Monotonicity is checked up to the noise floor.
pub(crate) fn implication_axiom_failure(i: &impl BinaryOp, grid: &Grid) -> Option<String> {
    if i.apply(0.0, 0.0) != 1.0 {
        return Some("I(0,0) != 1".into());
    }
    if i.apply(1.0, 1.0) != 1.0 {
        return Some("I(1,1) != 1".into());
    }
    if i.apply(1.0, 0.0) != 0.0 {
        return Some("I(1,0) != 0".into());
    }
    let g = grid.points();
    for &a in g {
        for w in g.windows(2) {
            if i.apply(w[0], a) < i.apply(w[1], a) - NOISE {
                return Some(format!("(I1) fails: I({}, {a}) < I({}, {a})", w[0], w[1]));
            }
            if i.apply(a, w[0]) > i.apply(a, w[1]) + NOISE {
                return Some(format!("(I2) fails: I({a}, {}) > I({a}, {})", w[0], w[1]));
            }
        }
    }
    None
}

/// `x ↦ I(x, 0)`.
pub fn natural_negation(i: &Implication) -> Negation {
    Negation::NaturalOfImplication {
        implication: Box::new(i.clone()),
    }
}

/// The `N`-lower or `N`-upper contrapositivisation of `i`.
pub fn contrapositivise(i: Implication, n: Negation, side: Side) -> Implication {
    let base = Box::new(i);
    match side {
        Side::Lower => Implication::LowerContrapositivisation { base, negation: n },
        Side::Upper => Implication::UpperContrapositivisation { base, negation: n },
    }
}
