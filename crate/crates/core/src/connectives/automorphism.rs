use serde::{Deserialize, Serialize};

use crate::table::Table1d;
use crate::{Error, Result};

/// Increasing bijection of `[0,1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Automorphism {
    Identity,
    /// `x ↦ x^exponent`
    Power {
        exponent: f64,
    },
    /// Strictly increasing samples, linear in between.
    #[serde(rename = "tabulated-monotone", alias = "tabulated")]
    Tabulated(Table1d),
}

impl Automorphism {
    pub fn apply(&self, x: f64) -> f64 {
        match self {
            Automorphism::Identity => x,
            Automorphism::Power { exponent } => x.powf(*exponent),
            Automorphism::Tabulated(t) => t.eval(x),
        }
    }

    pub fn invert(&self, y: f64) -> f64 {
        match self {
            Automorphism::Identity => y,
            Automorphism::Power { exponent } => y.powf(1.0 / exponent),
            Automorphism::Tabulated(t) => t.inverted().eval(y),
        }
    }

    /// The automorphism `φ⁻¹`.
    pub fn inverse(&self) -> Automorphism {
        match self {
            Automorphism::Identity => Automorphism::Identity,
            Automorphism::Power { exponent } => Automorphism::Power {
                exponent: 1.0 / exponent,
            },
            Automorphism::Tabulated(t) => Automorphism::Tabulated(t.inverted()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Automorphism::Identity => {}
            Automorphism::Power { exponent } => {
                if !(exponent.is_finite() && *exponent > 0.0) {
                    return Err(Error::InvalidOperator(format!(
                        "power automorphism needs a positive exponent, got {exponent}"
                    )));
                }
            }
            Automorphism::Tabulated(t) => {
                t.validate()?;
                if !t.is_strictly_increasing() || t.value[0] != 0.0 || t.value[t.value.len() - 1] != 1.0 {
                    return Err(Error::InvalidOperator(
                        "tabulated automorphism must increase strictly from 0 to 1".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}
