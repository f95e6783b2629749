//! JSON documents: operator bundles and inference scenarios.
//!
//! Every operator is a `"family"`-tagged object. A document may declare a
//! named table under `"operators"`; anywhere an operator is expected,
//! `{"ref": "name"}` substitutes the named entry. References may nest but
//! not cycle.
//!
//! ```json
//! {
//!   "operators": { "rc": { "family": "reichenbach" } },
//!   "implication": { "ref": "rc" },
//!   "aggregator": {
//!     "family": "from-implication",
//!     "implication": { "ref": "rc" },
//!     "method": "closed-form-f"
//!   }
//! }
//! ```
//!
//! Fuzzy sets are `{"universe": [...], "memberships": [...]}` or, in
//! scenarios, `{"product": [set, set, ...], "combiner": aggregator}` for a
//! Cartesian product (combiner defaults to min).

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::connectives::{Aggregator, Negation};
use crate::engine::{fmp_infer, fmt_infer, product_set, FuzzySet, Rule};
use crate::implications::Implication;
use crate::{Error, Result};

/// Expands `{"ref": name}` objects against the `operators` table.
struct Resolver<'a> {
    table: &'a Map<String, Value>,
    stack: Vec<String>,
}

impl Resolver<'_> {
    fn resolve(&mut self, v: &Value) -> Result<Value> {
        match v {
            Value::Object(obj) => {
                if obj.len() == 1 {
                    if let Some(Value::String(name)) = obj.get("ref") {
                        return self.lookup(name);
                    }
                }
                let mut out = Map::new();
                for (k, child) in obj {
                    out.insert(k.clone(), self.resolve(child)?);
                }
                Ok(Value::Object(out))
            }
            Value::Array(items) => Ok(Value::Array(
                items.iter().map(|x| self.resolve(x)).collect::<Result<_>>()?,
            )),
            other => Ok(other.clone()),
        }
    }

    fn lookup(&mut self, name: &str) -> Result<Value> {
        if self.stack.iter().any(|s| s == name) {
            return Err(Error::UnknownReference(format!(
                "{name} (reference cycle {} -> {name})",
                self.stack.join(" -> ")
            )));
        }
        let target = self
            .table
            .get(name)
            .ok_or_else(|| Error::UnknownReference(name.to_string()))?;
        self.stack.push(name.to_string());
        let out = self.resolve(target);
        self.stack.pop();
        out
    }
}

fn resolve_document(text: &str) -> Result<Map<String, Value>> {
    let root: Value = serde_json::from_str(text)?;
    let Value::Object(root) = root else {
        return Err(Error::Parameter("document must be a JSON object".into()));
    };
    let empty = Map::new();
    let table = match root.get("operators") {
        Some(Value::Object(t)) => t,
        Some(_) => {
            return Err(Error::Parameter(
                "`operators` must be an object of named operators".into(),
            ))
        }
        None => &empty,
    };
    let mut resolver = Resolver {
        table,
        stack: Vec::new(),
    };
    let mut out = Map::new();
    for (k, v) in &root {
        if k != "operators" {
            out.insert(k.clone(), resolver.resolve(v)?);
        }
    }
    Ok(out)
}

fn field<T: DeserializeOwned>(doc: &Map<String, Value>, key: &str) -> Result<Option<T>> {
    match doc.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => serde_json::from_value(v.clone())
            .map(Some)
            .map_err(|e| Error::Parameter(format!("`{key}`: {e}"))),
    }
}

/// Connectives for inference and law checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Operators {
    pub aggregator: Option<Aggregator>,
    pub implication: Option<Implication>,
    /// Defaults to the standard negation.
    pub negation: Negation,
}

impl Operators {
    pub fn aggregator(&self) -> Result<&Aggregator> {
        self.aggregator
            .as_ref()
            .ok_or_else(|| Error::Parameter("document has no `aggregator`".into()))
    }

    pub fn implication(&self) -> Result<&Implication> {
        self.implication
            .as_ref()
            .ok_or_else(|| Error::Parameter("document has no `implication`".into()))
    }
}

fn operators_from(doc: &Map<String, Value>) -> Result<Operators> {
    let ops = Operators {
        aggregator: field(doc, "aggregator")?,
        implication: field(doc, "implication")?,
        negation: field(doc, "negation")?.unwrap_or(Negation::Standard),
    };
    if let Some(a) = &ops.aggregator {
        a.validate()?;
    }
    if let Some(i) = &ops.implication {
        i.validate()?;
    }
    ops.negation.validate()?;
    Ok(ops)
}

/// Parses an operator document.
pub fn parse_operators(text: &str) -> Result<Operators> {
    operators_from(&resolve_document(text)?)
}

/// Parses a single implication: either a bare `"family"` object or a
/// document with an `implication` entry.
pub fn parse_implication(text: &str) -> Result<Implication> {
    let doc = resolve_document(text)?;
    let i: Implication = if doc.contains_key("family") {
        serde_json::from_value(Value::Object(doc))?
    } else {
        field(&doc, "implication")?.ok_or_else(|| Error::Parameter("no implication in document".into()))?
    };
    i.validate()?;
    Ok(i)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Modus ponens: input on the antecedent universe.
    Fmp,
    /// Modus tollens: input on the consequent universe.
    Fmt,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fmp" => Ok(Mode::Fmp),
            "fmt" => Ok(Mode::Fmt),
            _ => Err(Error::Parameter(format!("unknown mode `{s}`"))),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SetSpec {
    Product {
        product: Vec<SetSpec>,
        #[serde(default)]
        combiner: Option<Aggregator>,
    },
    Plain(FuzzySet),
}

impl SetSpec {
    fn build(self) -> Result<FuzzySet> {
        match self {
            SetSpec::Plain(s) => Ok(s),
            SetSpec::Product { product, combiner } => {
                let combiner = combiner.unwrap_or(Aggregator::Min);
                combiner.validate()?;
                let mut parts = product.into_iter();
                let first = parts
                    .next()
                    .ok_or_else(|| Error::InvalidFuzzySet("empty product".into()))?
                    .build()?;
                parts.try_fold(first, |acc, p| Ok(product_set(&acc, &p.build()?, &combiner)))
            }
        }
    }
}

fn set_field(doc: &Map<String, Value>, key: &str) -> Result<Option<FuzzySet>> {
    field::<SetSpec>(doc, key)?.map(SetSpec::build).transpose()
}

/// A rule, an input and the connectives to run them with.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub name: String,
    pub mode: Option<Mode>,
    pub aggregator: Aggregator,
    pub implication: Implication,
    pub negation: Negation,
    pub rule: Rule,
    pub input: FuzzySet,
    pub expected_output: Option<FuzzySet>,
    pub tolerance: f64,
}

/// Per-element comparison of an inferred set with the expected one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub max_abs_diff: f64,
    pub within_tolerance: bool,
    /// `(label, expected, actual)` for every element.
    pub elements: Vec<(String, f64, f64)>,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario> {
        let doc = resolve_document(text)?;
        let ops = operators_from(&doc)?;
        let rule_doc: Map<String, Value> =
            field(&doc, "rule")?.ok_or_else(|| Error::Parameter("scenario has no `rule`".into()))?;
        let antecedent =
            set_field(&rule_doc, "antecedent")?.ok_or_else(|| Error::Parameter("rule has no `antecedent`".into()))?;
        let consequent =
            set_field(&rule_doc, "consequent")?.ok_or_else(|| Error::Parameter("rule has no `consequent`".into()))?;
        let scenario = Scenario {
            name: field(&doc, "name")?.unwrap_or_else(|| "unnamed".to_string()),
            mode: field(&doc, "mode")?,
            aggregator: ops
                .aggregator
                .ok_or_else(|| Error::Parameter("scenario has no `aggregator`".into()))?,
            implication: ops
                .implication
                .ok_or_else(|| Error::Parameter("scenario has no `implication`".into()))?,
            negation: ops.negation,
            rule: Rule::new(antecedent, consequent),
            input: set_field(&doc, "input")?.ok_or_else(|| Error::Parameter("scenario has no `input`".into()))?,
            expected_output: set_field(&doc, "expected_output")?,
            tolerance: field(&doc, "tolerance")?.unwrap_or(1e-9),
        };
        if !(scenario.tolerance >= 0.0) {
            return Err(Error::Parameter("`tolerance` must be non-negative".into()));
        }
        Ok(scenario)
    }

    pub fn run(&self, mode: Mode) -> Result<FuzzySet> {
        match mode {
            Mode::Fmp => fmp_infer(&self.aggregator, &self.implication, &self.rule, &self.input),
            Mode::Fmt => fmt_infer(&self.aggregator, &self.implication, &self.rule, &self.input),
        }
    }

    /// `None` when the scenario has no expected output.
    pub fn compare(&self, output: &FuzzySet) -> Result<Option<Comparison>> {
        let Some(expected) = &self.expected_output else {
            return Ok(None);
        };
        let max_abs_diff = expected.max_abs_diff(output)?;
        let elements = expected
            .universe()
            .iter()
            .zip(expected.memberships())
            .zip(output.memberships())
            .map(|((l, &e), &a)| (l.clone(), e, a))
            .collect();
        Ok(Some(Comparison {
            max_abs_diff,
            within_tolerance: max_abs_diff <= self.tolerance,
            elements,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn references_resolve() {
        let ops = parse_operators(
            r#"{
                "operators": {
                    "rc": {"family": "reichenbach"},
                    "arc": {"family": "from-implication", "implication": {"ref": "rc"}, "method": "closed-form-f"}
                },
                "aggregator": {"ref": "arc"},
                "implication": {"ref": "rc"}
            }"#,
        )
        .unwrap();
        assert_eq!(ops.implication, Some(Implication::Reichenbach));
        assert!((ops.aggregator.unwrap().apply(0.9, 0.37) - 0.3).abs() < 1e-12);
        assert_eq!(ops.negation, Negation::Standard);
    }

    #[test]
    fn cycles_and_unknown_refs_are_errors() {
        let cyc = r#"{"operators": {"a": {"family": "meet", "left": {"ref": "b"}, "right": {"family": "lukasiewicz"}},
                                    "b": {"ref": "a"}},
                      "implication": {"ref": "a"}}"#;
        assert!(matches!(parse_operators(cyc), Err(Error::UnknownReference(_))));
        let unknown = r#"{"implication": {"ref": "nope"}}"#;
        assert!(matches!(parse_operators(unknown), Err(Error::UnknownReference(_))));
    }

    #[test]
    fn invalid_operators_are_rejected_after_parse() {
        let bad = r#"{"negation": {"family": "tabulated", "x": [0, 0.5, 1], "value": [1, 0.2, 0.4]}}"#;
        assert!(parse_operators(bad).is_err());
        let bad = r#"{"implication": {"family": "probabilistic", "copula": {"family": "lukasiewicz"}}}"#;
        assert!(parse_operators(bad).is_err());
    }

    #[test]
    fn scenario_with_products() {
        let s = Scenario::parse(
            r#"{
                "name": "product",
                "aggregator": {"family": "lukasiewicz-tnorm"},
                "implication": {"family": "lukasiewicz"},
                "rule": {
                    "antecedent": {"product": [
                        {"universe": ["a1", "a2"], "memberships": [1, 0.5]},
                        {"universe": ["b1", "b2"], "memberships": [0.2, 1]}
                    ]},
                    "consequent": {"universe": ["y1", "y2"], "memberships": [1, 0.4]}
                },
                "input": {"product": [
                    {"universe": ["a1", "a2"], "memberships": [1, 0.5]},
                    {"universe": ["b1", "b2"], "memberships": [0.2, 1]}
                ]},
                "expected_output": {"universe": ["y1", "y2"], "memberships": [1, 0.4]}
            }"#,
        )
        .unwrap();
        assert_eq!(s.rule.antecedent.universe()[1], "a1|b2");
        let out = s.run(Mode::Fmp).unwrap();
        assert!(s.compare(&out).unwrap().unwrap().within_tolerance);
    }

    #[test]
    fn implication_file_forms() {
        assert_eq!(
            parse_implication(r#"{"family": "reichenbach"}"#).unwrap(),
            Implication::Reichenbach
        );
        assert_eq!(
            parse_implication(r#"{"implication": {"family": "lukasiewicz"}}"#).unwrap(),
            Implication::Lukasiewicz
        );
    }
}
