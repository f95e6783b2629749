//! Grid-based certification of the laws behind ACRI modus ponens/tollens:
//! (AC) `A(a, I(a,b)) ≤ b`, (DAC) `A(N(b), I(a,b)) ≤ N(a)`, the law of
//! importation, contraposition, and the inference axioms (A1)-(A8) on
//! concrete rule instances.
//!
//! A pass means no violation on the scanned grid, nothing more. Reports
//! carry the grid description so a run can be repeated at finer resolution.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::engine::{complement, fmp_infer_with, fmt_infer_with, FuzzySet, Rule};
use crate::exec::{map_indices, Execution};
use crate::{BinaryOp, Error, Grid, Result, UnaryOp, NOISE};

/// Tolerance for closed-form operators.
pub const CLOSED_FORM_TOL: f64 = 1e-9;
/// Tolerance when any operator involved is evaluated by bisection.
pub const BISECTION_TOL: f64 = 1e-6;
/// Points per axis of the sub-grid used for ternary laws.
pub const TRIPLE_POINTS: usize = 21;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// Where the worst violation was found.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    /// Arguments of the law, e.g. `(a, b)`.
    Point { values: Vec<f64> },
    /// Element of the `index`-th rule instance whose output misses its target.
    Instance {
        index: usize,
        element: String,
        expected: f64,
        actual: f64,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Point { values } => {
                let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                write!(f, "({})", parts.join(" "))
            }
            Witness::Instance {
                index,
                element,
                expected,
                actual,
            } => write!(
                f,
                "instance {index} at {element}: expected {expected:.6} got {actual:.6}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub law: String,
    pub verdict: Verdict,
    /// Largest defect found; defects at or below the noise floor count as 0.
    pub worst_violation: f64,
    pub witness: Option<Witness>,
    /// What was scanned: a grid description or an instance count.
    pub grid: String,
    pub tolerance: f64,
    pub seed: Option<u64>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn new(law: &str, worst: f64, witness: Option<Witness>, grid: String, tolerance: f64) -> CheckReport {
        let worst = if worst <= NOISE { 0.0 } else { worst };
        CheckReport {
            law: law.to_string(),
            verdict: if worst <= tolerance {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            worst_violation: worst,
            witness: if worst > 0.0 { witness } else { None },
            grid,
            tolerance,
            seed: None,
        }
    }

    pub(crate) fn from_scan(law: &str, worst: f64, at: Option<Vec<f64>>, grid: &Grid, tolerance: f64) -> CheckReport {
        CheckReport::new(
            law,
            worst,
            at.map(|values| Witness::Point { values }),
            grid.description().to_string(),
            tolerance,
        )
    }

    /// `law,verdict,worst_violation,witness`
    pub fn csv_line(&self) -> String {
        let witness = self.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
        format!(
            "{},{},{:.6e},{}",
            self.law,
            self.verdict,
            self.worst_violation,
            witness.replace(',', ";")
        )
    }
}

fn tolerance_for(bisection: bool) -> f64 {
    if bisection {
        BISECTION_TOL
    } else {
        CLOSED_FORM_TOL
    }
}

/// Largest `defect(x, y)` over grid pairs and the first pair attaining it
/// in row-major order, independent of the execution mode.
pub(crate) fn scan_pairs(
    grid: &Grid,
    mode: Execution,
    defect: impl Fn(f64, f64) -> f64 + Sync + Send,
) -> (f64, Option<Vec<f64>>) {
    let g = grid.points();
    let rows = map_indices(mode, g.len(), |r| {
        let x = g[r];
        let mut best = (0.0, None);
        for &y in g {
            let d = defect(x, y);
            if d > best.0 || d.is_nan() {
                best = (if d.is_nan() { f64::INFINITY } else { d }, Some(vec![x, y]));
            }
        }
        best
    });
    first_max(rows)
}

fn scan_triples(
    points: &[f64],
    mode: Execution,
    defect: impl Fn(f64, f64, f64) -> f64 + Sync + Send,
) -> (f64, Option<Vec<f64>>) {
    let rows = map_indices(mode, points.len(), |r| {
        let x = points[r];
        let mut best = (0.0, None);
        for &y in points {
            for &z in points {
                let d = defect(x, y, z);
                if d > best.0 || d.is_nan() {
                    best = (if d.is_nan() { f64::INFINITY } else { d }, Some(vec![x, y, z]));
                }
            }
        }
        best
    });
    first_max(rows)
}

fn first_max(rows: Vec<(f64, Option<Vec<f64>>)>) -> (f64, Option<Vec<f64>>) {
    rows.into_iter()
        .fold((0.0, None), |acc, row| if row.0 > acc.0 { row } else { acc })
}

/// (AC): `A(a, I(a,b)) ≤ b`.
pub fn check_ac(a: &(impl BinaryOp + ?Sized), i: &(impl BinaryOp + ?Sized), grid: &Grid) -> CheckReport {
    check_ac_with(a, i, grid, Execution::default())
}

pub fn check_ac_with(
    a: &(impl BinaryOp + ?Sized),
    i: &(impl BinaryOp + ?Sized),
    grid: &Grid,
    mode: Execution,
) -> CheckReport {
    let (worst, at) = scan_pairs(grid, mode, |x, y| (a.apply(x, i.apply(x, y)) - y).max(0.0));
    CheckReport::from_scan(
        "AC",
        worst,
        at,
        grid,
        tolerance_for(a.uses_bisection() || i.uses_bisection()),
    )
}

/// (DAC): `A(N(b), I(a,b)) ≤ N(a)`.
pub fn check_dac(
    a: &(impl BinaryOp + ?Sized),
    i: &(impl BinaryOp + ?Sized),
    n: &(impl UnaryOp + ?Sized),
    grid: &Grid,
) -> CheckReport {
    check_dac_with(a, i, n, grid, Execution::default())
}

pub fn check_dac_with(
    a: &(impl BinaryOp + ?Sized),
    i: &(impl BinaryOp + ?Sized),
    n: &(impl UnaryOp + ?Sized),
    grid: &Grid,
    mode: Execution,
) -> CheckReport {
    let (worst, at) = scan_pairs(grid, mode, |x, y| {
        (a.apply(n.apply(y), i.apply(x, y)) - n.apply(x)).max(0.0)
    });
    let tol = tolerance_for(a.uses_bisection() || i.uses_bisection() || n.uses_bisection());
    CheckReport::from_scan("DAC", worst, at, grid, tol)
}

/// Law of importation `I(A(x,y), z) = I(x, I(y,z))` on a 21-point sub-grid.
pub fn check_lia(a: &(impl BinaryOp + ?Sized), i: &(impl BinaryOp + ?Sized), grid: &Grid) -> CheckReport {
    check_lia_with(a, i, grid, Execution::default())
}

pub fn check_lia_with(
    a: &(impl BinaryOp + ?Sized),
    i: &(impl BinaryOp + ?Sized),
    grid: &Grid,
    mode: Execution,
) -> CheckReport {
    let sub = grid.subsample(TRIPLE_POINTS);
    let (worst, at) = scan_triples(sub.points(), mode, |x, y, z| {
        (i.apply(a.apply(x, y), z) - i.apply(x, i.apply(y, z))).abs()
    });
    CheckReport::from_scan(
        "LIA",
        worst,
        at,
        &sub,
        tolerance_for(a.uses_bisection() || i.uses_bisection()),
    )
}

/// CP(N): `I(x,y) = I(N(y), N(x))`.
pub fn check_cpn(i: &(impl BinaryOp + ?Sized), n: &(impl UnaryOp + ?Sized), grid: &Grid) -> CheckReport {
    check_cpn_with(i, n, grid, Execution::default())
}

pub fn check_cpn_with(
    i: &(impl BinaryOp + ?Sized),
    n: &(impl UnaryOp + ?Sized),
    grid: &Grid,
    mode: Execution,
) -> CheckReport {
    let (worst, at) = scan_pairs(grid, mode, |x, y| {
        (i.apply(x, y) - i.apply(n.apply(y), n.apply(x))).abs()
    });
    CheckReport::from_scan(
        "CPN",
        worst,
        at,
        grid,
        tolerance_for(i.uses_bisection() || n.uses_bisection()),
    )
}

/// Inference axioms, checked on rule instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    /// `B ⊆ B'` for `D' = D`.
    A1,
    /// `D' ⊆ D''` implies `B' ⊆ B''`.
    A2,
    /// `D' = N∘D` gives `B' ≡ 1`.
    A3,
    /// Modus tollens: `B' = N∘B` gives `D' = N∘D`.
    A4,
    /// Modus ponens: `D' = D` gives `B' = B`.
    A5,
    /// `D' = very D` gives `B' = very B` (default modifier: squaring).
    A6,
    /// `D' = more or less D` gives `B' = more or less B` (default: square root).
    A7,
    /// `D' = N∘D` gives `B' = N∘B`.
    A8,
}

impl Axiom {
    pub const ALL: [Axiom; 8] = [
        Axiom::A1,
        Axiom::A2,
        Axiom::A3,
        Axiom::A4,
        Axiom::A5,
        Axiom::A6,
        Axiom::A7,
        Axiom::A8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::A1 => "A1",
            Axiom::A2 => "A2",
            Axiom::A3 => "A3",
            Axiom::A4 => "A4",
            Axiom::A5 => "A5",
            Axiom::A6 => "A6",
            Axiom::A7 => "A7",
            Axiom::A8 => "A8",
        }
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Axiom::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parameter(format!("unknown axiom `{s}`")))
    }
}

/// A law name accepted by the checker front ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    Ac,
    Dac,
    Lia,
    Cpn,
    Axiom(Axiom),
}

impl FromStr for Law {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ac" => Ok(Law::Ac),
            "dac" => Ok(Law::Dac),
            "lia" => Ok(Law::Lia),
            "cpn" | "cp" => Ok(Law::Cpn),
            other => other
                .parse::<Axiom>()
                .map(Law::Axiom)
                .map_err(|_| Error::Parameter(format!("unknown law `{s}`"))),
        }
    }
}

/// Extra inputs for [`check_axioms`].
#[derive(Default)]
pub struct AxiomOptions<'a> {
    /// For (A2): a nested pair of inputs `D' ⊆ D''` per instance.
    pub a2_inputs: Option<&'a [(FuzzySet, FuzzySet)]>,
    /// Replaces both default modifiers of (A6)/(A7).
    pub modifier: Option<&'a dyn UnaryOp>,
    /// Recorded in the reports.
    pub seed: Option<u64>,
    pub mode: Execution,
}

struct Miss {
    defect: f64,
    element: String,
    expected: f64,
    actual: f64,
}

/// Worst `|actual - expected|` (or one-sided excess when `one_sided`).
fn compare(expected: &FuzzySet, actual: &FuzzySet, one_sided: bool) -> Miss {
    let mut miss = Miss {
        defect: 0.0,
        element: String::new(),
        expected: 0.0,
        actual: 0.0,
    };
    for ((label, &e), &g) in expected
        .universe()
        .iter()
        .zip(expected.memberships())
        .zip(actual.memberships())
    {
        let d = if one_sided { (e - g).max(0.0) } else { (e - g).abs() };
        if d > miss.defect || miss.element.is_empty() {
            miss = Miss {
                defect: d,
                element: label.clone(),
                expected: e,
                actual: g,
            };
        }
    }
    miss
}

/// Runs each requested axiom over all instances; one report per axiom,
/// witnessed by the worst instance.
///
/// (A3), (A6), (A7) and (A8) are informational: ACRI is not expected to
/// satisfy them in general.
pub fn check_axioms(
    a: &(impl BinaryOp + ?Sized),
    i: &(impl BinaryOp + ?Sized),
    n: &(impl UnaryOp + ?Sized),
    instances: &[Rule],
    which: &[Axiom],
    options: &AxiomOptions<'_>,
) -> Result<Vec<CheckReport>> {
    let tol = tolerance_for(a.uses_bisection() || i.uses_bisection() || n.uses_bisection());
    let seq = Execution::Sequential;
    let very = |x: f64| x * x;
    let more_or_less = |x: f64| x.sqrt();
    let mut reports = Vec::with_capacity(which.len());
    for &axiom in which {
        if axiom == Axiom::A2 {
            match options.a2_inputs {
                Some(pairs) if pairs.len() == instances.len() => {
                    if let Some(k) = pairs.iter().position(|(lo, hi)| !lo.is_subset_of(hi)) {
                        return Err(Error::Parameter(format!("(A2) inputs of instance {k} are not nested")));
                    }
                }
                Some(pairs) => {
                    return Err(Error::Parameter(format!(
                        "(A2) needs one input pair per instance: {} pairs for {} instances",
                        pairs.len(),
                        instances.len()
                    )))
                }
                None => return Err(Error::Parameter("(A2) requires a second input per instance".into())),
            }
        }
        let results = map_indices(options.mode, instances.len(), |k| -> Result<Miss> {
            let rule = &instances[k];
            let d = &rule.antecedent;
            let b = &rule.consequent;
            let modified = |m: &dyn Fn(f64) -> f64| -> Result<Miss> {
                let m = |x: f64| options.modifier.map_or_else(|| m(x), |u| u.apply(x));
                let out = fmp_infer_with(a, i, rule, &d.map(m), seq)?;
                Ok(compare(&b.map(m), &out, false))
            };
            match axiom {
                Axiom::A1 => Ok(compare(b, &fmp_infer_with(a, i, rule, d, seq)?, true)),
                Axiom::A2 => {
                    let (lo, hi) = &options.a2_inputs.expect("checked above")[k];
                    let low = fmp_infer_with(a, i, rule, lo, seq)?;
                    let high = fmp_infer_with(a, i, rule, hi, seq)?;
                    // B' ⊆ B'': any excess of the smaller input's output is a defect
                    Ok(compare(&low, &high, true))
                }
                Axiom::A3 => {
                    let out = fmp_infer_with(a, i, rule, &complement(d, n), seq)?;
                    Ok(compare(&b.map(|_| 1.0), &out, false))
                }
                Axiom::A4 => {
                    let out = fmt_infer_with(a, i, rule, &complement(b, n), seq)?;
                    Ok(compare(&complement(d, n), &out, false))
                }
                Axiom::A5 => Ok(compare(b, &fmp_infer_with(a, i, rule, d, seq)?, false)),
                Axiom::A6 => modified(&very),
                Axiom::A7 => modified(&more_or_less),
                Axiom::A8 => {
                    let out = fmp_infer_with(a, i, rule, &complement(d, n), seq)?;
                    Ok(compare(&complement(b, n), &out, false))
                }
            }
        });
        let mut worst: Option<(usize, Miss)> = None;
        for (k, r) in results.into_iter().enumerate() {
            let m = r?;
            if worst.as_ref().is_none_or(|(_, w)| m.defect > w.defect) {
                worst = Some((k, m));
            }
        }
        let (defect, witness) = match worst {
            Some((index, m)) => (
                m.defect,
                Some(Witness::Instance {
                    index,
                    element: m.element,
                    expected: m.expected,
                    actual: m.actual,
                }),
            ),
            None => (0.0, None),
        };
        let mut report = CheckReport::new(
            axiom.name(),
            defect,
            witness,
            format!("{} rule instances", instances.len()),
            tol,
        );
        report.seed = options.seed;
        reports.push(report);
    }
    Ok(reports)
}

/// Seeded random rules: universes of 3 to 8 elements, uniform memberships,
/// one antecedent and one consequent element forced to 1.
///
/// With `force_zero` the consequent also gets an element forced to 0, so
/// its standard complement is normal, as modus tollens inputs must be.
pub fn random_rules(seed: u64, count: usize, force_zero: bool) -> Vec<Rule> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let d = random_normal_set(&mut rng, "x", false);
            let b = random_normal_set(&mut rng, "y", force_zero);
            Rule::new(d, b)
        })
        .collect()
}

fn random_normal_set(rng: &mut ChaCha8Rng, prefix: &str, force_zero: bool) -> FuzzySet {
    let n = rng.gen_range(3..=8);
    let mut m: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
    let one = rng.gen_range(0..n);
    m[one] = 1.0;
    if force_zero {
        let zero = (one + rng.gen_range(1..n)) % n;
        m[zero] = 0.0;
    }
    FuzzySet::from_values(prefix, m).expect("memberships are in [0,1]")
}

/// A random input below the given one, for (A2) pairs.
pub fn random_subset(seed: u64, of: &FuzzySet) -> FuzzySet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = of.memberships().iter().map(|&m| m * rng.gen::<f64>()).collect();
    FuzzySet::new(of.universe().to_vec(), m).expect("scaled memberships stay in [0,1]")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectives::{Aggregator, Negation};
    use crate::generator::{Generator, GeneratorKind, Shape};
    use crate::implications::Implication;

    fn g() -> Grid {
        Grid::default()
    }

    #[test]
    fn ac_examples() {
        let r = check_ac(&Aggregator::LukasiewiczTNorm, &Implication::Lukasiewicz, &g());
        assert!(r.passed());
        assert_eq!(r.worst_violation, 0.0);
        let r = check_ac(&Aggregator::GreatestDisjunctor, &Implication::Reichenbach, &g());
        assert!(!r.passed());
        let Some(Witness::Point { values }) = &r.witness else {
            panic!("missing witness")
        };
        let (x, y) = (values[0], values[1]);
        let redo = Aggregator::GreatestDisjunctor.apply(x, Implication::Reichenbach.apply(x, y)) - y;
        assert!(redo >= r.worst_violation - 1e-12);
    }

    #[test]
    fn dac_examples() {
        let r = check_dac(
            &Aggregator::LukasiewiczTNorm,
            &Implication::Lukasiewicz,
            &Negation::Standard,
            &g(),
        );
        assert!(r.passed());
        assert_eq!(r.worst_violation, 0.0);
        let gi = Implication::GImplication {
            generator: Generator::new(GeneratorKind::GGenerator, Shape::Identity).unwrap(),
        };
        for a in [Aggregator::Min, Aggregator::Product, Aggregator::LukasiewiczTNorm] {
            assert!(check_dac(&a, &gi, &Negation::Bottom, &g()).passed());
        }
        let r = check_dac(
            &Aggregator::LukasiewiczTNorm,
            &Implication::Reichenbach,
            &Negation::Top,
            &g(),
        );
        assert!(!r.passed());
        assert!(r.witness.is_some());
    }

    #[test]
    fn lia_examples() {
        assert_eq!(
            check_lia(&Aggregator::LukasiewiczTNorm, &Implication::Lukasiewicz, &g()).worst_violation,
            0.0
        );
        let r = check_lia(&Aggregator::Min, &Implication::Lukasiewicz, &g());
        assert!(!r.passed());
        let gi = Implication::GImplication {
            generator: Generator::new(GeneratorKind::GGenerator, Shape::Identity).unwrap(),
        };
        let r = check_lia(&Aggregator::Product, &gi, &g());
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.worst_violation, 0.0);
    }

    #[test]
    fn cpn_examples() {
        assert_eq!(
            check_cpn(&Implication::Lukasiewicz, &Negation::Standard, &g()).worst_violation,
            0.0
        );
        let gi = Implication::GImplication {
            generator: Generator::new(GeneratorKind::GGenerator, Shape::Identity).unwrap(),
        };
        assert!(!check_cpn(&gi, &Negation::Standard, &g()).passed());
        let fi = Implication::FImplication {
            generator: Generator::new(GeneratorKind::FGenerator, Shape::OneMinus).unwrap(),
        };
        assert!(check_cpn(&fi, &Negation::Standard, &g()).passed());
    }

    #[test]
    fn scan_is_mode_independent() {
        let a = Aggregator::GreatestDisjunctor;
        let i = Implication::Reichenbach;
        let s = check_ac_with(&a, &i, &g(), Execution::Sequential);
        let p = check_ac_with(&a, &i, &g(), Execution::Parallel);
        assert_eq!(s, p);
    }

    #[test]
    fn random_rules_are_normal_and_reproducible() {
        let r1 = random_rules(7, 20, true);
        let r2 = random_rules(7, 20, true);
        assert_eq!(r1, r2);
        for r in &r1 {
            assert!(r.antecedent.is_normal() && r.consequent.is_normal());
            assert!(r.consequent.memberships().contains(&0.0));
            assert!((3..=8).contains(&r.antecedent.len()));
        }
    }

    #[test]
    fn axiom_suite_for_lukasiewicz() {
        let rules = random_rules(1, 30, true);
        let reports = check_axioms(
            &Aggregator::LukasiewiczTNorm,
            &Implication::Lukasiewicz,
            &Negation::Standard,
            &rules,
            &[Axiom::A1, Axiom::A4, Axiom::A5],
            &AxiomOptions::default(),
        )
        .unwrap();
        for r in reports {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn a2_needs_inputs() {
        let rules = random_rules(1, 3, false);
        let err = check_axioms(
            &Aggregator::Min,
            &Implication::Lukasiewicz,
            &Negation::Standard,
            &rules,
            &[Axiom::A2],
            &AxiomOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parameter(_)));
        let pairs: Vec<(FuzzySet, FuzzySet)> = rules
            .iter()
            .enumerate()
            .map(|(k, r)| (random_subset(k as u64, &r.antecedent), r.antecedent.clone()))
            .collect();
        let opts = AxiomOptions {
            a2_inputs: Some(&pairs),
            ..Default::default()
        };
        let r = check_axioms(
            &Aggregator::Min,
            &Implication::Lukasiewicz,
            &Negation::Standard,
            &rules,
            &[Axiom::A2],
            &opts,
        )
        .unwrap();
        assert!(r[0].passed());
    }

    #[test]
    fn law_names_parse() {
        assert_eq!("AC".parse::<Law>().unwrap(), Law::Ac);
        assert_eq!("a7".parse::<Law>().unwrap(), Law::Axiom(Axiom::A7));
        assert!("bogus".parse::<Law>().is_err());
    }
}
