//! Fuzzy inference with aggregation functions.
//!
//! This crate implements the aggregation-based compositional rule of
//! inference (ACRI): the output of a rule `IF x is D THEN y is B` for an
//! input `D'` is
//!
//! ```text
//! B'(y) = max_x A(D'(x), I(D(x), B(y)))
//! ```
//!
//! where `A` is a binary aggregation function and `I` a fuzzy implication.
//! Around the engine sit the operator catalogs ([`connectives`],
//! [`implications`]), the aggregation functions that make the method
//! satisfy classical modus ponens and tollens ([`constructions`]), and a
//! grid-based law checker ([`conformance`]).
//!
//! ```
//! use acri::prelude::*;
//!
//! let i = Implication::Lukasiewicz;
//! let a = Aggregator::LukasiewiczTNorm;
//! let report = check_ac(&a, &i, &Grid::uniform(101).unwrap());
//! assert!(report.passed());
//! ```

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classify;
pub mod conformance;
pub mod connectives;
pub mod constructions;
pub mod document;
pub mod engine;
mod error;
pub mod exec;
pub mod generator;
pub mod implications;
mod search;
pub mod table;
mod unit;

pub use error::{Error, Result};
pub use unit::{Grid, UnitValue};

/// Floating-point noise floor. Law defects at or below this are reported as zero.
pub const NOISE: f64 = 1e-12;

/// Snaps values within [`NOISE`] of 0 or 1 onto the endpoint. Used before
/// inverse automorphisms, whose steep ends would magnify rounding residue.
pub(crate) fn snap_ends(v: f64) -> f64 {
    if v <= NOISE {
        0.0
    } else if v >= 1.0 - NOISE {
        1.0
    } else {
        v
    }
}

/// Anything that maps `[0,1]²` into `[0,1]`.
///
/// Inputs are expected in the unit interval; implementors do not re-check.
pub trait BinaryOp: Send + Sync {
    fn apply(&self, x: f64, y: f64) -> f64;

    /// Whether values come from a bisection, which loosens check tolerances.
    fn uses_bisection(&self) -> bool {
        false
    }
}

/// Wraps a closure as a [`BinaryOp`]; handy for ad-hoc operators in checks.
pub struct FnOp<F>(pub F);

impl<F> BinaryOp for FnOp<F>
where
    F: Fn(f64, f64) -> f64 + Send + Sync,
{
    fn apply(&self, x: f64, y: f64) -> f64 {
        (self.0)(x, y)
    }
}

impl<T: BinaryOp + ?Sized> BinaryOp for &T {
    fn apply(&self, x: f64, y: f64) -> f64 {
        (**self).apply(x, y)
    }

    fn uses_bisection(&self) -> bool {
        (**self).uses_bisection()
    }
}

/// A unary map on `[0,1]` (negations, modifiers).
pub trait UnaryOp: Send + Sync {
    fn apply(&self, x: f64) -> f64;

    fn uses_bisection(&self) -> bool {
        false
    }
}

impl<F> UnaryOp for F
where
    F: Fn(f64) -> f64 + Send + Sync,
{
    fn apply(&self, x: f64) -> f64 {
        self(x)
    }
}

pub mod prelude {
    pub use crate::conformance::{
        check_ac, check_axioms, check_cpn, check_dac, check_lia, Axiom, CheckReport, Verdict,
    };
    pub use crate::connectives::{Aggregator, Automorphism, Negation};
    pub use crate::constructions::{ConstructedAggregator, ConstructionMethod};
    pub use crate::engine::{fmp_infer, fmt_infer, FuzzySet, Rule};
    pub use crate::generator::{Generator, GeneratorKind, Shape};
    pub use crate::implications::{Copula, Implication};
    pub use crate::{BinaryOp, Grid, UnitValue};
}
