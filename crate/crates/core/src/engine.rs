//! Fuzzy sets on finite universes and the ACRI sup-composition.
//!
//! Modus ponens: `B'(y) = max_x A(D'(x), I(D(x), B(y)))`.
//! Modus tollens: `D'(x) = max_y A(B'(y), I(D(x), B(y)))`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::exec::{map_indices, Execution};
use crate::{BinaryOp, Error, Result, UnaryOp};

#[derive(Deserialize)]
struct RawFuzzySet {
    universe: Vec<String>,
    memberships: Vec<f64>,
}

impl TryFrom<RawFuzzySet> for FuzzySet {
    type Error = Error;

    fn try_from(raw: RawFuzzySet) -> Result<Self> {
        FuzzySet::new(raw.universe, raw.memberships)
    }
}

/// Membership degrees over an ordered, labeled, finite universe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFuzzySet")]
pub struct FuzzySet {
    universe: Vec<String>,
    memberships: Vec<f64>,
}

impl FuzzySet {
    pub fn new(universe: Vec<String>, memberships: Vec<f64>) -> Result<Self> {
        if universe.is_empty() {
            return Err(Error::InvalidFuzzySet("empty universe".into()));
        }
        if universe.len() != memberships.len() {
            return Err(Error::InvalidFuzzySet(format!(
                "{} labels but {} memberships",
                universe.len(),
                memberships.len()
            )));
        }
        let mut seen = HashSet::new();
        for label in &universe {
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidFuzzySet(format!("duplicate label `{label}`")));
            }
        }
        if let Some((label, m)) = universe
            .iter()
            .zip(&memberships)
            .find(|(_, m)| !(0.0..=1.0).contains(*m))
        {
            return Err(Error::InvalidFuzzySet(format!(
                "membership of `{label}` is {m}, outside [0,1]"
            )));
        }
        Ok(FuzzySet { universe, memberships })
    }

    /// Labels `{prefix}1, {prefix}2, ...`.
    pub fn from_values(prefix: &str, memberships: Vec<f64>) -> Result<Self> {
        let universe = (1..=memberships.len()).map(|k| format!("{prefix}{k}")).collect();
        FuzzySet::new(universe, memberships)
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn memberships(&self) -> &[f64] {
        &self.memberships
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn membership(&self, label: &str) -> Option<f64> {
        self.universe
            .iter()
            .position(|l| l == label)
            .map(|k| self.memberships[k])
    }

    /// Some element has membership exactly 1.
    pub fn is_normal(&self) -> bool {
        self.memberships.contains(&1.0)
    }

    /// Applies `f` pointwise, clamping into `[0,1]`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> FuzzySet {
        FuzzySet {
            universe: self.universe.clone(),
            memberships: self.memberships.iter().map(|&m| f(m).clamp(0.0, 1.0)).collect(),
        }
    }

    /// Crisp singleton at `label`.
    pub fn singleton(universe: Vec<String>, label: &str) -> Result<Self> {
        let memberships = universe.iter().map(|l| if l == label { 1.0 } else { 0.0 }).collect();
        if !universe.iter().any(|l| l == label) {
            return Err(Error::InvalidFuzzySet(format!("`{label}` is not in the universe")));
        }
        FuzzySet::new(universe, memberships)
    }

    pub fn max_abs_diff(&self, other: &FuzzySet) -> Result<f64> {
        same_universe(self, other, "compared sets")?;
        Ok(self
            .memberships
            .iter()
            .zip(&other.memberships)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// Pointwise `self ≤ other`.
    pub fn is_subset_of(&self, other: &FuzzySet) -> bool {
        self.universe == other.universe && self.memberships.iter().zip(&other.memberships).all(|(a, b)| a <= b)
    }
}

/// `IF x is antecedent THEN y is consequent`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rule {
    pub antecedent: FuzzySet,
    pub consequent: FuzzySet,
}

impl Rule {
    pub fn new(antecedent: FuzzySet, consequent: FuzzySet) -> Self {
        Rule { antecedent, consequent }
    }
}

fn same_universe(expected: &FuzzySet, got: &FuzzySet, what: &str) -> Result<()> {
    if expected.universe == got.universe {
        return Ok(());
    }
    let missing: Vec<&str> = expected
        .universe
        .iter()
        .filter(|l| !got.universe.contains(l))
        .map(String::as_str)
        .collect();
    let extra: Vec<&str> = got
        .universe
        .iter()
        .filter(|l| !expected.universe.contains(l))
        .map(String::as_str)
        .collect();
    let detail = if missing.is_empty() && extra.is_empty() {
        "same labels in a different order".to_string()
    } else {
        format!("missing {missing:?}, unexpected {extra:?}")
    };
    Err(Error::UniverseMismatch(format!("{what}: {detail}")))
}

fn warn_if_not_normal(set: &FuzzySet, what: &str) {
    if !set.is_normal() {
        log::warn!("{what} is not normal; inference proceeds but the modus ponens/tollens guarantees assume normality");
    }
}

/// Fuzzy modus ponens: the conclusion `B'` for input `D'`.
pub fn fmp_infer(
    a: &(impl BinaryOp + ?Sized),
    i: &(impl BinaryOp + ?Sized),
    rule: &Rule,
    input: &FuzzySet,
) -> Result<FuzzySet> {
    fmp_infer_with(a, i, rule, input, Execution::default())
}

pub fn fmp_infer_with(
    a: &(impl BinaryOp + ?Sized),
    i: &(impl BinaryOp + ?Sized),
    rule: &Rule,
    input: &FuzzySet,
    mode: Execution,
) -> Result<FuzzySet> {
    same_universe(&rule.antecedent, input, "input vs rule antecedent")?;
    warn_if_not_normal(input, "input");
    warn_if_not_normal(&rule.antecedent, "rule antecedent");
    let d = rule.antecedent.memberships();
    let dp = input.memberships();
    let b = rule.consequent.memberships();
    let out = map_indices(mode, b.len(), |k| {
        d.iter()
            .zip(dp)
            .map(|(&dx, &dpx)| a.apply(dpx, i.apply(dx, b[k])))
            .fold(0.0, f64::max)
    });
    FuzzySet::new(rule.consequent.universe.clone(), out)
}

/// Fuzzy modus tollens: the conclusion `D'` for input `B'`. The input
/// occupies the first aggregator slot.
pub fn fmt_infer(
    a: &(impl BinaryOp + ?Sized),
    i: &(impl BinaryOp + ?Sized),
    rule: &Rule,
    input: &FuzzySet,
) -> Result<FuzzySet> {
    fmt_infer_with(a, i, rule, input, Execution::default())
}

pub fn fmt_infer_with(
    a: &(impl BinaryOp + ?Sized),
    i: &(impl BinaryOp + ?Sized),
    rule: &Rule,
    input: &FuzzySet,
    mode: Execution,
) -> Result<FuzzySet> {
    same_universe(&rule.consequent, input, "input vs rule consequent")?;
    warn_if_not_normal(input, "input");
    warn_if_not_normal(&rule.consequent, "rule consequent");
    let d = rule.antecedent.memberships();
    let b = rule.consequent.memberships();
    let bp = input.memberships();
    let out = map_indices(mode, d.len(), |k| {
        b.iter()
            .zip(bp)
            .map(|(&by, &bpy)| a.apply(bpy, i.apply(d[k], by)))
            .fold(0.0, f64::max)
    });
    FuzzySet::new(rule.antecedent.universe.clone(), out)
}

/// Cartesian product with labels `"a|b"` in row-major order.
pub fn product_set(d1: &FuzzySet, d2: &FuzzySet, combiner: &(impl BinaryOp + ?Sized)) -> FuzzySet {
    let mut universe = Vec::with_capacity(d1.len() * d2.len());
    let mut memberships = Vec::with_capacity(d1.len() * d2.len());
    for (l1, &m1) in d1.universe.iter().zip(&d1.memberships) {
        for (l2, &m2) in d2.universe.iter().zip(&d2.memberships) {
            universe.push(format!("{l1}|{l2}"));
            memberships.push(combiner.apply(m1, m2).clamp(0.0, 1.0));
        }
    }
    FuzzySet { universe, memberships }
}

/// Minkowski distance `(Σ |d1 - d2|^p)^(1/p)`.
pub fn distance(d1: &FuzzySet, d2: &FuzzySet, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::Parameter(format!(
            "distance exponent must be at least 1, got {p}"
        )));
    }
    same_universe(d1, d2, "distance")?;
    let sum: f64 = d1
        .memberships
        .iter()
        .zip(&d2.memberships)
        .map(|(a, b)| (a - b).abs().powf(p))
        .sum();
    Ok(sum.powf(1.0 / p))
}

/// Pointwise negation.
pub fn complement(d: &FuzzySet, n: &(impl UnaryOp + ?Sized)) -> FuzzySet {
    d.map(|m| n.apply(m))
}
