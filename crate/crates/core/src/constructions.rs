//! Aggregation functions built from an implication so that the ACRI method
//! satisfies modus ponens: the generic infimum construction
//! `A_I(a,b) = inf{c : I(a,c) ≥ b}`, closed forms for the main families,
//! the lower-left-continuous extension, and a contraposition bound check.

use serde::{Deserialize, Serialize};

use crate::conformance::{scan_pairs, CheckReport};
use crate::connectives::{Aggregator, Automorphism, Negation, OrdinalComponent};
use crate::exec::Execution;
use crate::generator::{Generator, GeneratorKind, Shape};
use crate::implications::{Copula, Implication, TPowerBase};
use crate::search::inf_upper_set;
use crate::{BinaryOp, Error, Grid, Result};

/// Slack on `I(a,c) ≥ b` so plateau edges do not flip on rounding.
const INF_SLACK: f64 = 1e-12;

fn default_tol() -> f64 {
    1e-6
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionMethod {
    /// Bisection on `c ↦ I(a,c)`; works for every implication.
    NumericInfimum,
    ClosedFormF,
    ClosedFormG,
    ClosedFormTpower,
    #[serde(alias = "closed-form-ordinal-sum-SN")]
    ClosedFormOrdinalSumSn,
    ClosedFormProbabilistic,
    ClosedFormProbabilisticS,
}

impl ConstructionMethod {
    pub const ALL: [ConstructionMethod; 7] = [
        ConstructionMethod::NumericInfimum,
        ConstructionMethod::ClosedFormF,
        ConstructionMethod::ClosedFormG,
        ConstructionMethod::ClosedFormTpower,
        ConstructionMethod::ClosedFormOrdinalSumSn,
        ConstructionMethod::ClosedFormProbabilistic,
        ConstructionMethod::ClosedFormProbabilisticS,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionMethod::NumericInfimum => "numeric-infimum",
            ConstructionMethod::ClosedFormF => "closed-form-f",
            ConstructionMethod::ClosedFormG => "closed-form-g",
            ConstructionMethod::ClosedFormTpower => "closed-form-tpower",
            ConstructionMethod::ClosedFormOrdinalSumSn => "closed-form-ordinal-sum-sn",
            ConstructionMethod::ClosedFormProbabilistic => "closed-form-probabilistic",
            ConstructionMethod::ClosedFormProbabilisticS => "closed-form-probabilistic-s",
        }
    }
}

impl std::str::FromStr for ConstructionMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        ConstructionMethod::ALL
            .into_iter()
            .find(|m| m.name() == lower)
            .ok_or_else(|| Error::Parameter(format!("unknown construction method `{s}`")))
    }
}

/// Parameters pulled out of the source implication for a closed form.
#[derive(Debug, Clone)]
enum Closed {
    Infimum,
    F(Generator),
    G(Generator),
    TPowerMin,
    TPower(Generator),
    OrdinalSum(Vec<OrdinalComponent>, Negation),
    Probabilistic(Generator),
    ProbabilisticS(Generator),
}

/// Aggregation function derived from an implication.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructedAggregator {
    #[serde(rename = "implication")]
    pub source: Implication,
    pub method: ConstructionMethod,
    /// Bisection tolerance of the numeric method.
    #[serde(default = "default_tol")]
    pub tol: f64,
}

fn one_minus_f() -> Generator {
    Generator {
        kind: GeneratorKind::FGenerator,
        shape: Shape::OneMinus,
    }
}

fn tconorm_generator(shape: Shape) -> Generator {
    Generator {
        kind: GeneratorKind::TConormAdditive,
        shape,
    }
}

/// Ordinal-sum components of the t-conorms the closed form understands.
fn ordinal_components(a: &Aggregator) -> Option<Vec<OrdinalComponent>> {
    let whole = |shape| {
        vec![OrdinalComponent {
            lower: 0.0,
            upper: 1.0,
            generator: tconorm_generator(shape),
        }]
    };
    match a {
        Aggregator::OrdinalSumTconorm { components } => Some(components.clone()),
        Aggregator::LukasiewiczTConorm => Some(whole(Shape::Identity)),
        Aggregator::ProbabilisticSum => Some(whole(Shape::NegLogOneMinus)),
        Aggregator::Max => Some(Vec::new()),
        _ => None,
    }
}

fn closed_params(source: &Implication, method: ConstructionMethod) -> Result<Closed> {
    let inapplicable = || Error::InapplicableMethod {
        method: method.name().to_string(),
        family: source.family_name().to_string(),
    };
    let params = match (method, source) {
        (ConstructionMethod::NumericInfimum, _) => Closed::Infimum,
        (ConstructionMethod::ClosedFormF, Implication::FImplication { generator }) => Closed::F(*generator),
        (ConstructionMethod::ClosedFormF, Implication::Reichenbach) => Closed::F(one_minus_f()),
        (ConstructionMethod::ClosedFormG, Implication::GImplication { generator }) => Closed::G(*generator),
        (ConstructionMethod::ClosedFormTpower, Implication::TPower { base }) => match base {
            TPowerBase::Min => Closed::TPowerMin,
            TPowerBase::Archimedean { generator } => Closed::TPower(*generator),
        },
        (ConstructionMethod::ClosedFormOrdinalSumSn, Implication::Lukasiewicz) => Closed::OrdinalSum(
            ordinal_components(&Aggregator::LukasiewiczTConorm).unwrap_or_default(),
            Negation::Standard,
        ),
        (ConstructionMethod::ClosedFormOrdinalSumSn, Implication::AnImplication { aggregator, negation }) => {
            let components = ordinal_components(aggregator).ok_or_else(inapplicable)?;
            Closed::OrdinalSum(components, negation.clone())
        }
        (ConstructionMethod::ClosedFormProbabilistic, Implication::Probabilistic { copula }) => {
            Closed::Probabilistic(copula.generator())
        }
        (ConstructionMethod::ClosedFormProbabilisticS, Implication::ProbabilisticS { copula }) => {
            Closed::ProbabilisticS(copula.generator())
        }
        _ => return Err(inapplicable()),
    };
    Ok(params)
}

impl ConstructedAggregator {
    pub fn new(source: Implication, method: ConstructionMethod, tol: f64) -> Result<Self> {
        let c = ConstructedAggregator { source, method, tol };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::Parameter(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        self.source.validate()?;
        if let Closed::OrdinalSum(components, n) = closed_params(&self.source, self.method)? {
            crate::connectives::validate_ordinal_components(&components)?;
            n.validate()?;
        }
        Ok(())
    }

    pub fn uses_bisection(&self) -> bool {
        self.method == ConstructionMethod::NumericInfimum || self.source.uses_bisection()
    }

    pub fn apply(&self, x: f64, y: f64) -> f64 {
        let params = closed_params(&self.source, self.method).unwrap_or(Closed::Infimum);
        let v = match params {
            Closed::Infimum => numeric_infimum(&self.source, x, y, self.tol),
            Closed::F(f) => {
                if x == 0.0 {
                    0.0
                } else {
                    f.pseudo_inverse(f.eval(y) / x)
                }
            }
            Closed::G(g) => {
                if x == 0.0 {
                    0.0
                } else {
                    g.pseudo_inverse(x * g.eval(y))
                }
            }
            Closed::TPowerMin => {
                if y > 0.0 {
                    x
                } else {
                    0.0
                }
            }
            Closed::TPower(t) => {
                if y == 0.0 {
                    0.0
                } else {
                    t.pseudo_inverse(t.eval(x) / y)
                }
            }
            Closed::OrdinalSum(components, n) => ordinal_sum_sn(&components, &n, x, y),
            Closed::Probabilistic(c) => {
                if x == 0.0 || y == 0.0 {
                    0.0
                } else {
                    c.pseudo_inverse(c.eval(x * y) - c.eval(x))
                }
            }
            Closed::ProbabilisticS(c) => {
                if x + y <= 1.0 + INF_SLACK {
                    0.0
                } else {
                    c.pseudo_inverse(c.eval(x + y - 1.0) - c.eval(x))
                }
            }
        };
        v.clamp(0.0, 1.0)
    }

    pub fn into_aggregator(self) -> Aggregator {
        Aggregator::FromImplication(Box::new(self))
    }
}

impl BinaryOp for ConstructedAggregator {
    fn apply(&self, x: f64, y: f64) -> f64 {
        ConstructedAggregator::apply(self, x, y)
    }
    fn uses_bisection(&self) -> bool {
        ConstructedAggregator::uses_bisection(self)
    }
}

/// `inf{c : I(a,c) ≥ b}`, valid because `I(a,·)` is non-decreasing.
fn numeric_infimum(i: &Implication, a: f64, b: f64, tol: f64) -> f64 {
    inf_upper_set(|c| i.apply(a, c) >= b - INF_SLACK, tol)
}

/// Residual-style aggregator of an (S,N)-implication whose t-conorm is an
/// ordinal sum. The generator difference is taken as `f(ỹ) - f(Ñ(x))`, the
/// orientation that reproduces the numeric infimum.
fn ordinal_sum_sn(components: &[OrdinalComponent], n: &Negation, x: f64, y: f64) -> f64 {
    let nx = n.apply(x);
    if nx >= y {
        return 0.0;
    }
    for c in components {
        if c.lower <= nx && nx < c.upper && y <= c.upper {
            let f = &c.generator;
            let d = f.eval(c.to_local(y)) - f.eval(c.to_local(nx));
            return c.to_global(f.pseudo_inverse(d));
        }
    }
    y
}

/// `A_I` by bisection.
pub fn aggregator_from_implication(i: Implication, tol: f64) -> Result<ConstructedAggregator> {
    ConstructedAggregator::new(i, ConstructionMethod::NumericInfimum, tol)
}

pub fn aggregator_for_f_implication(f: Generator) -> Result<ConstructedAggregator> {
    ConstructedAggregator::new(
        Implication::FImplication { generator: f },
        ConstructionMethod::ClosedFormF,
        default_tol(),
    )
}

pub fn aggregator_for_g_implication(g: Generator) -> Result<ConstructedAggregator> {
    ConstructedAggregator::new(
        Implication::GImplication { generator: g },
        ConstructionMethod::ClosedFormG,
        default_tol(),
    )
}

pub fn aggregator_for_tpower(t: Generator) -> Result<ConstructedAggregator> {
    ConstructedAggregator::new(
        Implication::TPower {
            base: TPowerBase::Archimedean { generator: t },
        },
        ConstructionMethod::ClosedFormTpower,
        default_tol(),
    )
}

pub fn aggregator_for_ordinal_sum_sn(components: Vec<OrdinalComponent>, n: Negation) -> Result<ConstructedAggregator> {
    ConstructedAggregator::new(
        Implication::AnImplication {
            aggregator: Box::new(Aggregator::OrdinalSumTconorm { components }),
            negation: n,
        },
        ConstructionMethod::ClosedFormOrdinalSumSn,
        default_tol(),
    )
}

/// Closed form for the probabilistic implication of the Archimedean copula
/// generated by `c`, or for its S-variant.
pub fn aggregator_for_probabilistic(c: Generator, s_variant: bool) -> Result<ConstructedAggregator> {
    let copula = copula_of(c);
    let (source, method) = if s_variant {
        (
            Implication::ProbabilisticS { copula },
            ConstructionMethod::ClosedFormProbabilisticS,
        )
    } else {
        (
            Implication::Probabilistic { copula },
            ConstructionMethod::ClosedFormProbabilistic,
        )
    };
    ConstructedAggregator::new(source, method, default_tol())
}

fn copula_of(c: Generator) -> Copula {
    match c.shape {
        Shape::NegLog => Copula::Product,
        Shape::OneMinus => Copula::Lukasiewicz,
        _ => Copula::Archimedean { generator: c },
    }
}

/// The closed-form method that applies to `i`, if any.
pub fn closed_form_for(i: &Implication) -> Option<ConstructionMethod> {
    ConstructionMethod::ALL
        .into_iter()
        .skip(1)
        .find(|&m| closed_params(i, m).is_ok())
}

/// Lower-left-continuous extension `A*(x,y) = sup{A(u,v) : u < x, v < y}`
/// on the interior, `A` on the border.
///
/// The open-rectangle sup is taken one refinement step inward; the default
/// step is a tenth of a 101-point grid spacing.
pub fn star_extension(a: Aggregator) -> Result<Aggregator> {
    star_extension_with_step(a, 1e-3)
}

pub fn star_extension_with_step(a: Aggregator, step: f64) -> Result<Aggregator> {
    check_border_continuity(&a)?;
    let star = Aggregator::StarExtension {
        base: Box::new(a),
        step,
    };
    star.validate()?;
    Ok(star)
}

/// Rejects aggregators whose restriction to the square's edges jumps by
/// more than the one-step modulus of a smooth function would allow.
fn check_border_continuity(a: &Aggregator) -> Result<()> {
    let n = 1000;
    let edges: [&dyn Fn(f64) -> f64; 4] = [&|t| a.apply(t, 0.0), &|t| a.apply(0.0, t), &|t| a.apply(t, 1.0), &|t| {
        a.apply(1.0, t)
    }];
    for (k, edge) in edges.iter().enumerate() {
        let mut prev = edge(0.0);
        for s in 1..=n {
            let cur = edge(s as f64 / n as f64);
            if (cur - prev).abs() > 0.05 {
                return Err(Error::Precondition(format!(
                    "aggregator is not border continuous (edge {k}, jump {:.3} near {})",
                    (cur - prev).abs(),
                    s as f64 / n as f64
                )));
            }
            prev = cur;
        }
    }
    Ok(())
}

/// Checks `I(a,b) ≤ φ⁻¹(min(φ(N(a)) + 1 - φ(ψ(N(b))), 1))` at all grid pairs,
/// where `ψ(x) = A(x,1)`.
///
/// `A` must be a conjunctor with left neutral element 1 (C1), with
/// `ψ` strictly increasing and below 1 before 1 (C2), and satisfying
/// `A(x, A(y,z)) = A(y, A(x,z))` on a 21-point sub-grid (C3).
pub fn check_contraposition_bound(
    i: &(impl BinaryOp + ?Sized),
    a: &Aggregator,
    n: &Negation,
    phi: &Automorphism,
    grid: &Grid,
) -> Result<CheckReport> {
    let g = grid.points();
    if let Some(&y) = g.iter().find(|&&y| (a.apply(1.0, y) - y).abs() > 1e-9) {
        return Err(Error::Precondition(format!("(C1) fails: A(1, {y}) != {y}")));
    }
    let psi = |x: f64| a.apply(x, 1.0);
    for w in g.windows(2) {
        if !(psi(w[0]) < psi(w[1])) {
            return Err(Error::Precondition(format!(
                "(C2) fails: A(x,1) not strictly increasing between {} and {}",
                w[0], w[1]
            )));
        }
        if psi(w[0]) >= 1.0 {
            return Err(Error::Precondition(format!("(C2) fails: A({}, 1) = 1", w[0])));
        }
    }
    let sub = grid.subsample(21);
    let s = sub.points();
    for &x in s {
        for &y in s {
            for &z in s {
                if (a.apply(x, a.apply(y, z)) - a.apply(y, a.apply(x, z))).abs() > 1e-9 {
                    return Err(Error::Precondition(format!("(C3) fails at ({x}, {y}, {z})")));
                }
            }
        }
    }
    let bound = |x: f64, y: f64| {
        let inner = phi.apply(n.apply(x)) + 1.0 - phi.apply(psi(n.apply(y)));
        phi.invert(inner.min(1.0))
    };
    let (worst, at) = scan_pairs(grid, Execution::default(), |x, y| {
        (i.apply(x, y) - bound(x, y)).max(0.0)
    });
    let tol = if a.uses_bisection() || n.uses_bisection() {
        1e-6
    } else {
        1e-9
    };
    Ok(CheckReport::from_scan("contraposition-bound", worst, at, grid, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FnOp;

    fn grid() -> Vec<f64> {
        (0..=100).map(|k| k as f64 / 100.0).collect()
    }

    fn gen(kind: GeneratorKind, shape: Shape) -> Generator {
        Generator::new(kind, shape).unwrap()
    }

    /// `inf{c : I(a,c) ≥ b}` by scanning a 1e-4 grid; independent of the bisection.
    fn scan_inf(i: &Implication, a: f64, b: f64) -> f64 {
        (0..=10_000)
            .map(|k| k as f64 / 10_000.0)
            .find(|&c| i.apply(a, c) >= b - 1e-12)
            .unwrap_or(1.0)
    }

    #[test]
    fn numeric_infimum_examples() {
        let lk = aggregator_from_implication(Implication::Lukasiewicz, 1e-6).unwrap();
        assert!((lk.apply(0.7, 0.5) - scan_inf(&Implication::Lukasiewicz, 0.7, 0.5)).abs() < 1e-4);
        assert!((lk.apply(0.7, 0.5) - 0.2).abs() < 1e-6);
        let rc = aggregator_from_implication(Implication::Reichenbach, 1e-6).unwrap();
        assert!((rc.apply(1.0, 0.63) - 0.63).abs() < 1e-6);
        assert!((rc.apply(0.9, 0.37) - 0.3).abs() < 1e-6);
    }

    #[test]
    fn f_closed_form_examples() {
        let a = aggregator_for_f_implication(gen(GeneratorKind::FGenerator, Shape::NegLog)).unwrap();
        assert!((a.apply(0.5, 0.25) - 0.0625).abs() < 1e-12);
        let rc = aggregator_for_f_implication(gen(GeneratorKind::FGenerator, Shape::OneMinus)).unwrap();
        assert!((rc.apply(0.9, 0.37) - 0.3).abs() < 1e-12);
        for &b in &grid() {
            assert!((a.apply(1.0, b) - b).abs() < 1e-12);
            assert!((rc.apply(1.0, b) - b).abs() < 1e-12);
        }
    }

    #[test]
    fn g_closed_form_examples() {
        let a = aggregator_for_g_implication(gen(GeneratorKind::GGenerator, Shape::Identity)).unwrap();
        assert!((a.apply(0.5, 0.8) - 0.4).abs() < 1e-12);
        for &b in &grid() {
            assert!((a.apply(1.0, b) - b).abs() < 1e-12);
        }
    }

    #[test]
    fn tpower_closed_form_examples() {
        let a = aggregator_for_tpower(gen(GeneratorKind::TNormAdditive, Shape::NegLog)).unwrap();
        assert!((a.apply(0.5, 0.5) - 0.25).abs() < 1e-12);
        for &x in &grid() {
            assert!((a.apply(x, 1.0) - x).abs() < 1e-12);
        }
        let i = a.source.clone();
        for &x in &grid() {
            for &y in &grid() {
                if x > y && y > 0.0 && x < 1.0 {
                    assert!((a.apply(x, i.apply(x, y)) - y).abs() < 1e-9, "{x} {y}");
                }
            }
        }
    }

    #[test]
    fn ordinal_sum_closed_form_examples() {
        let luk = aggregator_for_ordinal_sum_sn(
            vec![OrdinalComponent {
                lower: 0.0,
                upper: 1.0,
                generator: gen(GeneratorKind::TConormAdditive, Shape::Identity),
            }],
            Negation::Standard,
        )
        .unwrap();
        assert!((luk.apply(0.7, 0.5) - 0.2).abs() < 1e-12);
        assert!((luk.apply(0.7, 0.5) - scan_inf(&Implication::Lukasiewicz, 0.7, 0.5)).abs() < 1e-4);
        assert_eq!(luk.apply(0.3, 0.6), 0.0);
        let partial = aggregator_for_ordinal_sum_sn(
            vec![OrdinalComponent {
                lower: 0.0,
                upper: 0.3,
                generator: gen(GeneratorKind::TConormAdditive, Shape::Identity),
            }],
            Negation::Standard,
        )
        .unwrap();
        // N(0.4) = 0.6 lies outside the only component
        assert_eq!(partial.apply(0.4, 0.8), 0.8);
    }

    #[test]
    fn overlapping_components_are_rejected() {
        let g = gen(GeneratorKind::TConormAdditive, Shape::Identity);
        let r = aggregator_for_ordinal_sum_sn(
            vec![
                OrdinalComponent {
                    lower: 0.0,
                    upper: 0.5,
                    generator: g,
                },
                OrdinalComponent {
                    lower: 0.3,
                    upper: 0.8,
                    generator: g,
                },
            ],
            Negation::Standard,
        );
        assert!(r.is_err());
    }

    #[test]
    fn probabilistic_closed_form_examples() {
        let p = aggregator_for_probabilistic(gen(GeneratorKind::CopulaAdditive, Shape::NegLog), false).unwrap();
        assert!((p.apply(0.4, 0.7) - 0.7).abs() < 1e-12);
        let ps = aggregator_for_probabilistic(gen(GeneratorKind::CopulaAdditive, Shape::NegLog), true).unwrap();
        assert!((ps.apply(0.9, 0.47) - 0.37 / 0.9).abs() < 1e-12);
        let w = aggregator_for_probabilistic(gen(GeneratorKind::CopulaAdditive, Shape::OneMinus), true).unwrap();
        assert_eq!(w.apply(0.3, 0.6), 0.0);
        assert!((w.apply(0.6, 0.7) - 0.7).abs() < 1e-12);
        let kd = Implication::ProbabilisticS {
            copula: Copula::Lukasiewicz,
        };
        assert!((w.apply(0.6, 0.7) - scan_inf(&kd, 0.6, 0.7)).abs() < 1e-4);
    }

    #[test]
    fn inapplicable_methods_are_rejected() {
        let r = ConstructedAggregator::new(Implication::Lukasiewicz, ConstructionMethod::ClosedFormG, 1e-6);
        assert!(matches!(r, Err(Error::InapplicableMethod { .. })));
        assert_eq!(
            closed_form_for(&Implication::Reichenbach),
            Some(ConstructionMethod::ClosedFormF)
        );
        assert_eq!(
            closed_form_for(&Implication::Lukasiewicz),
            Some(ConstructionMethod::ClosedFormOrdinalSumSn)
        );
        let r = Implication::RImplication {
            aggregator: Box::new(Aggregator::Product),
        };
        assert_eq!(closed_form_for(&r), None);
    }

    #[test]
    fn method_names_parse() {
        for m in ConstructionMethod::ALL {
            assert_eq!(m.name().parse::<ConstructionMethod>().unwrap(), m);
        }
        assert_eq!(
            "closed-form-ordinal-sum-SN".parse::<ConstructionMethod>().unwrap(),
            ConstructionMethod::ClosedFormOrdinalSumSn
        );
    }

    #[test]
    fn json_shape() {
        let a: Aggregator = serde_json::from_str(
            r#"{"family":"from-implication","implication":{"family":"reichenbach"},"method":"closed-form-f"}"#,
        )
        .unwrap();
        a.validate().unwrap();
        assert!((a.apply(0.9, 0.37) - 0.3).abs() < 1e-12);
    }

    fn jump_fixture() -> Aggregator {
        let mut x: Vec<f64> = (0..=100).map(|k| k as f64 / 100.0).collect();
        x.insert(50, 0.5);
        let mut value = Vec::new();
        for (idx, &u) in x.iter().enumerate() {
            // the first copy of the repeated knot carries the left limit
            let left = idx == 50;
            value.push(
                x.iter()
                    .map(|&v| {
                        if u < 0.5 || left {
                            u * v
                        } else {
                            u * v + v * (1.0 - v) / 2.0
                        }
                    })
                    .collect(),
            );
        }
        Aggregator::Tabulated(crate::table::Table2d { x, value })
    }

    #[test]
    fn star_extension_of_continuous_aggregators() {
        for a in [Aggregator::Product, Aggregator::Min] {
            let s = star_extension(a.clone()).unwrap();
            for &x in &grid() {
                for &y in &grid() {
                    assert!(s.apply(x, y) <= a.apply(x, y));
                    assert!((s.apply(x, y) - a.apply(x, y)).abs() <= 2.5e-3);
                }
            }
        }
    }

    #[test]
    fn star_extension_recovers_left_limit_at_jump() {
        let a = jump_fixture();
        a.validate().unwrap();
        assert!((a.apply(0.5, 0.5) - 0.375).abs() < 1e-12);
        let s = star_extension(a.clone()).unwrap();
        // oracle: explicit sup over a sampled open rectangle
        let h = 1e-3;
        let mut sup: f64 = 0.0;
        for k in 0..500 {
            for l in 0..500 {
                sup = sup.max(a.apply(k as f64 * h, l as f64 * h));
            }
        }
        assert!((sup - 0.25).abs() < 1e-3);
        assert!((s.apply(0.5, 0.5) - sup).abs() < 2e-3);
        assert!(s.apply(0.5, 0.5) < a.apply(0.5, 0.5) - 0.1);
    }

    #[test]
    fn star_extension_is_idempotent_at_grid_resolution() {
        let s = star_extension(Aggregator::Product).unwrap();
        let ss = star_extension(s.clone()).unwrap();
        for &x in &grid() {
            for &y in &grid() {
                assert!((ss.apply(x, y) - s.apply(x, y)).abs() <= 2.5e-3);
            }
        }
    }

    #[test]
    fn bound_examples() {
        let g = Grid::default();
        let args = (Aggregator::LukasiewiczTNorm, Negation::Standard, Automorphism::Identity);
        let r = check_contraposition_bound(&Implication::Lukasiewicz, &args.0, &args.1, &args.2, &g).unwrap();
        assert!(r.passed());
        assert_eq!(r.worst_violation, 0.0);
        let r = check_contraposition_bound(&Implication::Reichenbach, &args.0, &args.1, &args.2, &g).unwrap();
        assert!(r.passed());
        let top = FnOp(|x: f64, y: f64| if x == 1.0 && y == 0.0 { 0.0 } else { 1.0 });
        let r = check_contraposition_bound(&top, &args.0, &args.1, &args.2, &g).unwrap();
        assert!(!r.passed());
        assert!(r.witness.is_some());
    }

    #[test]
    fn bound_preconditions_are_named() {
        let g = Grid::default();
        let e = check_contraposition_bound(
            &Implication::Lukasiewicz,
            &Aggregator::Max,
            &Negation::Standard,
            &Automorphism::Identity,
            &g,
        )
        .unwrap_err();
        assert!(e.to_string().contains("(C1)"), "{e}");
    }
}
