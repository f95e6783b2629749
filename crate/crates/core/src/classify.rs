//! Two-attribute rule-base classifier driven by ACRI modus ponens.
//!
//! Each attribute lives on a discretized universe with linguistic terms.
//! A crisp reading is fuzzified with a triangle one grid step wide (so an
//! on-grid reading becomes a singleton), every rule `term₁ AND term₂ THEN
//! class` is fired with the Łukasiewicz t-norm and implication, and a rule
//! scores `1 - max_y |B'(y) - B(y)|`: how close its conclusion stays to its
//! consequent. A class takes the best score among its rules; ties go to the
//! class listed first.

use serde::{Deserialize, Serialize};

use crate::connectives::Aggregator;
use crate::engine::{fmp_infer, product_set, FuzzySet, Rule};
use crate::implications::Implication;
use crate::{Error, Result};

/// Membership function of a linguistic term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum Membership {
    /// 1 up to `c`, falling linearly to 0 at `d`.
    LeftShoulder {
        c: f64,
        d: f64,
    },
    /// 0 up to `a`, rising linearly to 1 at `b`.
    RightShoulder {
        a: f64,
        b: f64,
    },
    Triangle {
        a: f64,
        b: f64,
        c: f64,
    },
    Trapezoid {
        a: f64,
        b: f64,
        c: f64,
        d: f64,
    },
}

fn rise(u: f64, a: f64, b: f64) -> f64 {
    ((u - a) / (b - a)).clamp(0.0, 1.0)
}

impl Membership {
    pub fn eval(&self, u: f64) -> f64 {
        match *self {
            Membership::LeftShoulder { c, d } => 1.0 - rise(u, c, d),
            Membership::RightShoulder { a, b } => rise(u, a, b),
            Membership::Triangle { a, b, c } => rise(u, a, b).min(1.0 - rise(u, b, c)),
            Membership::Trapezoid { a, b, c, d } => rise(u, a, b).min(1.0 - rise(u, c, d)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub name: String,
    pub membership: Membership,
}

/// A discretized attribute: `points` values `start, start + step, ...`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Attribute {
    pub name: String,
    pub start: f64,
    pub step: f64,
    pub points: usize,
    pub terms: Vec<Term>,
}

impl Attribute {
    pub fn end(&self) -> f64 {
        self.start + self.step * (self.points - 1) as f64
    }

    fn values(&self) -> Vec<f64> {
        (0..self.points).map(|k| self.start + self.step * k as f64).collect()
    }

    fn labels(&self) -> Vec<String> {
        self.values().iter().map(|v| format!("{}={v}", self.name)).collect()
    }

    fn term_set(&self, name: &str) -> Result<FuzzySet> {
        let term = self
            .terms
            .iter()
            .find(|t| t.name == name)
            .ok_or_else(|| Error::Parameter(format!("attribute {} has no term `{name}`", self.name)))?;
        FuzzySet::new(
            self.labels(),
            self.values().iter().map(|&u| term.membership.eval(u)).collect(),
        )
    }

    /// Triangle of half-width one step centred on the reading.
    fn fuzzify(&self, reading: f64) -> Result<FuzzySet> {
        if !(reading >= self.start && reading <= self.end()) {
            return Err(Error::Parameter(format!(
                "{} = {reading} is outside [{}, {}]",
                self.name,
                self.start,
                self.end()
            )));
        }
        let m = self
            .values()
            .iter()
            .map(|&u| (1.0 - (u - reading).abs() / self.step).max(0.0))
            .collect();
        FuzzySet::new(self.labels(), m)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassRule {
    pub first: String,
    pub second: String,
    pub class: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifierConfig {
    pub first: Attribute,
    pub second: Attribute,
    /// Class labels in tie-break priority order.
    pub classes: Vec<String>,
    pub rules: Vec<ClassRule>,
}

fn term(name: &str, membership: Membership) -> Term {
    Term {
        name: name.to_string(),
        membership,
    }
}

fn rule(first: &str, second: &str, class: &str) -> ClassRule {
    ClassRule {
        first: first.to_string(),
        second: second.to_string(),
        class: class.to_string(),
    }
}

impl Default for ClassifierConfig {
    /// The bundled three-class diagnosis example.
    fn default() -> Self {
        ClassifierConfig {
            first: Attribute {
                name: "attr1".into(),
                start: 4.0,
                step: 1.0,
                points: 21,
                terms: vec![
                    term("low", Membership::LeftShoulder { c: 5.0, d: 12.0 }),
                    term(
                        "medium",
                        Membership::Triangle {
                            a: 5.0,
                            b: 12.0,
                            c: 19.0,
                        },
                    ),
                    term("high", Membership::RightShoulder { a: 12.0, b: 19.0 }),
                ],
            },
            second: Attribute {
                name: "attr2".into(),
                start: 0.0,
                step: 0.5,
                points: 21,
                terms: vec![
                    term("low", Membership::LeftShoulder { c: 3.0, d: 6.0 }),
                    term("high", Membership::RightShoulder { a: 3.0, b: 6.0 }),
                ],
            },
            classes: vec!["Y".into(), "M".into(), "N".into()],
            rules: vec![
                rule("high", "high", "Y"),
                rule("medium", "high", "Y"),
                rule("low", "high", "M"),
                rule("high", "low", "M"),
                rule("medium", "low", "N"),
                rule("low", "low", "N"),
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RuleTrace {
    pub first: String,
    pub second: String,
    pub class: String,
    /// Height of `D' ∧ D`, the usual firing strength.
    pub firing: f64,
    /// `1 - max_y |B'(y) - B(y)|`.
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub label: String,
    pub class_scores: Vec<(String, f64)>,
    pub rules: Vec<RuleTrace>,
    /// Other classes that reached the winning score.
    pub tied_with: Vec<String>,
}

pub fn classify(config: &ClassifierConfig, first: f64, second: f64) -> Result<Classification> {
    let a = Aggregator::LukasiewiczTNorm;
    let i = Implication::Lukasiewicz;
    let input = product_set(
        &config.first.fuzzify(first)?,
        &config.second.fuzzify(second)?,
        &Aggregator::Min,
    );
    let mut traces = Vec::with_capacity(config.rules.len());
    for r in &config.rules {
        let antecedent = product_set(
            &config.first.term_set(&r.first)?,
            &config.second.term_set(&r.second)?,
            &Aggregator::Min,
        );
        let firing = antecedent
            .memberships()
            .iter()
            .zip(input.memberships())
            .map(|(d, dp)| d.min(*dp))
            .fold(0.0, f64::max);
        let consequent = FuzzySet::singleton(config.classes.clone(), &r.class)?;
        let rule = Rule::new(antecedent, consequent);
        let out = fmp_infer(&a, &i, &rule, &input)?;
        let score = 1.0 - out.max_abs_diff(&rule.consequent)?;
        traces.push(RuleTrace {
            first: r.first.clone(),
            second: r.second.clone(),
            class: r.class.clone(),
            firing,
            score,
        });
    }
    let class_scores: Vec<(String, f64)> = config
        .classes
        .iter()
        .map(|c| {
            let best = traces
                .iter()
                .filter(|t| &t.class == c)
                .map(|t| t.score)
                .fold(0.0, f64::max);
            (c.clone(), best)
        })
        .collect();
    let top = class_scores.iter().map(|(_, s)| *s).fold(f64::NEG_INFINITY, f64::max);
    let mut winners = class_scores
        .iter()
        .filter(|(_, s)| (s - top).abs() <= 1e-12)
        .map(|(c, _)| c.clone());
    let label = winners
        .next()
        .ok_or_else(|| Error::Parameter("classifier has no classes".into()))?;
    Ok(Classification {
        label,
        tied_with: winners.collect(),
        class_scores,
        rules: traces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn memberships() {
        let c = ClassifierConfig::default();
        let m = &c.first.terms[1].membership;
        assert!((m.eval(11.0) - 6.0 / 7.0).abs() < 1e-12);
        assert_eq!(m.eval(12.0), 1.0);
        assert_eq!(m.eval(19.0), 0.0);
        assert_eq!(c.first.terms[0].membership.eval(4.0), 1.0);
        assert_eq!(c.second.terms[1].membership.eval(8.0), 1.0);
    }

    #[test]
    fn bundled_entities() {
        let c = ClassifierConfig::default();
        let e1 = classify(&c, 11.0, 3.0).unwrap();
        assert_eq!(e1.label, "N");
        assert!((e1.class_scores[2].1 - 6.0 / 7.0).abs() < 1e-9);
        assert_eq!(classify(&c, 20.0, 2.0).unwrap().label, "M");
        assert_eq!(classify(&c, 22.0, 8.0).unwrap().label, "Y");
    }

    #[test]
    fn singleton_scores_equal_firing() {
        let c = ClassifierConfig::default();
        for (x, y) in [(11.0, 3.0), (15.0, 4.5), (7.0, 9.0)] {
            for t in classify(&c, x, y).unwrap().rules {
                assert!((t.score - t.firing).abs() < 1e-12, "{t:?}");
            }
        }
    }

    #[test]
    fn ties_go_to_first_class() {
        let c = ClassifierConfig::default();
        // medium(12) = 1 with attr2 between low and high: Y and N rules tie at 0.5
        let r = classify(&c, 12.0, 4.5).unwrap();
        assert_eq!(r.label, "Y");
        assert_eq!(r.tied_with, vec!["N".to_string()]);
    }

    #[test]
    fn out_of_range_is_rejected() {
        let c = ClassifierConfig::default();
        assert!(classify(&c, 30.0, 3.0).is_err());
        assert!(classify(&c, 10.0, -1.0).is_err());
    }
}
