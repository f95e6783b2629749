use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use acri::classify::{classify, ClassifierConfig};
use acri::conformance::{
    check_ac, check_axioms, check_cpn, check_dac, check_lia, random_rules, random_subset, AxiomOptions, CheckReport,
    Law,
};
use acri::constructions::{aggregator_from_implication, ConstructedAggregator, ConstructionMethod};
use acri::document::{parse_implication, parse_operators, Mode, Operators, Scenario};
use acri::engine::FuzzySet;
use acri::Grid;
use anyhow::Context;
use clap::{Parser, Subcommand};
use serde::Serialize;

/// Number of random rule instances for the inference axioms.
const AXIOM_INSTANCES: usize = 100;

#[derive(Parser)]
#[command(
    name = "acri",
    version,
    about = "Fuzzy inference with aggregation-based modus ponens and tollens"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and compare against its expected output.
    Infer {
        #[arg(long)]
        mode: Option<Mode>,
        #[arg(long)]
        scenario: PathBuf,
        /// Where to write the inferred set (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check laws on an operator bundle.
    Check {
        #[arg(long)]
        ops: PathBuf,
        /// Comma-separated: ac, dac, lia, cpn, a1..a8.
        #[arg(long, value_delimiter = ',', required = true)]
        laws: Vec<String>,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Tabulate the aggregator constructed from an implication.
    BuildAgg {
        #[arg(long)]
        implication: PathBuf,
        #[arg(long)]
        method: ConstructionMethod,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify an entity with the bundled two-attribute rule base.
    ClassifyDemo {
        #[arg(long, allow_negative_numbers = true)]
        attr1: f64,
        #[arg(long, allow_negative_numbers = true)]
        attr2: f64,
        /// Replaces the bundled membership configuration.
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

/// Usage and validation problems exit with 2, law failures with 1.
enum Failure {
    Usage(anyhow::Error),
    Law,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.into())
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Infer { mode, scenario, out } => infer(mode, &scenario, out.as_deref()),
        Command::Check {
            ops,
            laws,
            grid,
            seed,
            report,
        } => check(&ops, &laws, grid, seed, report.as_deref()),
        Command::BuildAgg {
            implication,
            method,
            grid,
            out,
        } => build_agg(&implication, method, grid, &out),
        Command::ClassifyDemo { attr1, attr2, config } => classify_demo(attr1, attr2, config.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Law) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

#[derive(Serialize)]
struct InferOutput<'a> {
    scenario: &'a str,
    mode: Mode,
    output: Printed<'a>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_abs_diff: Option<f64>,
}

/// A fuzzy set with memberships rounded to six decimals for display.
#[derive(Serialize)]
struct Printed<'a> {
    universe: &'a [String],
    memberships: Vec<f64>,
}

impl<'a> Printed<'a> {
    fn of(set: &'a FuzzySet) -> Self {
        Printed {
            universe: set.universe(),
            memberships: set.memberships().iter().map(|m| (m * 1e6).round() / 1e6).collect(),
        }
    }
}

fn infer(mode: Option<Mode>, path: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let text = read(path)?;
    let scenario = Scenario::parse(&text).with_context(|| format!("in {}", path.display()))?;
    let mode = mode.or(scenario.mode).unwrap_or(Mode::Fmp);
    let output = scenario
        .run(mode)
        .with_context(|| format!("running {}", path.display()))?;
    let comparison = scenario.compare(&output)?;
    let doc = InferOutput {
        scenario: &scenario.name,
        mode,
        output: Printed::of(&output),
        max_abs_diff: comparison.as_ref().map(|c| c.max_abs_diff),
    };
    let json = serde_json::to_string_pretty(&doc)? + "\n";
    match out {
        Some(p) => write(p, &json)?,
        None => print!("{json}"),
    }
    let Some(c) = comparison else {
        return Ok(());
    };
    if c.within_tolerance {
        log::info!(
            "{}: max |diff| {:.6e} within {:e}",
            scenario.name,
            c.max_abs_diff,
            scenario.tolerance
        );
        return Ok(());
    }
    eprintln!(
        "{}: max |diff| {:.6} exceeds tolerance {:e}",
        scenario.name, c.max_abs_diff, scenario.tolerance
    );
    for (label, expected, actual) in &c.elements {
        eprintln!(
            "  {label}: expected {expected:.6} got {actual:.6} diff {:.6}",
            actual - expected
        );
    }
    Err(Failure::Law)
}

#[derive(Serialize)]
struct CheckDocument<'a> {
    seed: u64,
    grid: &'a [f64],
    axiom_instances: usize,
    operators: &'a Operators,
    reports: &'a [CheckReport],
}

fn check(ops_path: &Path, laws: &[String], grid_n: usize, seed: u64, report: Option<&Path>) -> Result<(), Failure> {
    let laws: Vec<Law> = laws.iter().map(|l| l.parse()).collect::<Result<_, _>>()?;
    let ops = parse_operators(&read(ops_path)?).with_context(|| format!("in {}", ops_path.display()))?;
    let grid = Grid::uniform(grid_n)?;
    let n = &ops.negation;
    let any_axiom = laws.iter().any(|l| matches!(l, Law::Axiom(_)));
    let rules = if any_axiom {
        random_rules(seed, AXIOM_INSTANCES, true)
    } else {
        Vec::new()
    };
    let pairs: Vec<(FuzzySet, FuzzySet)> = rules
        .iter()
        .enumerate()
        .map(|(k, r)| {
            (
                random_subset(seed.wrapping_add(k as u64 + 1), &r.antecedent),
                r.antecedent.clone(),
            )
        })
        .collect();
    let options = AxiomOptions {
        a2_inputs: Some(pairs.as_slice()),
        seed: Some(seed),
        ..Default::default()
    };
    let mut reports = Vec::with_capacity(laws.len());
    for law in laws {
        let r = match law {
            Law::Ac => check_ac(ops.aggregator()?, ops.implication()?, &grid),
            Law::Dac => check_dac(ops.aggregator()?, ops.implication()?, n, &grid),
            Law::Lia => check_lia(ops.aggregator()?, ops.implication()?, &grid),
            Law::Cpn => check_cpn(ops.implication()?, n, &grid),
            Law::Axiom(a) => {
                let (agg, i) = (ops.aggregator()?, ops.implication()?);
                check_axioms(agg, i, n, &rules, &[a], &options)?.remove(0)
            }
        };
        reports.push(r);
    }
    for r in &reports {
        println!("{}", r.csv_line());
    }
    if let Some(p) = report {
        let doc = CheckDocument {
            seed,
            grid: grid.points(),
            axiom_instances: rules.len(),
            operators: &ops,
            reports: &reports,
        };
        write(p, &(serde_json::to_string_pretty(&doc)? + "\n"))?;
    }
    if reports.iter().all(CheckReport::passed) {
        Ok(())
    } else {
        Err(Failure::Law)
    }
}

/// Largest closed-form deviation from the numeric infimum tolerated before
/// `build-agg` reports a failure.
const ORACLE_TOL: f64 = 1e-4;

fn build_agg(path: &Path, method: ConstructionMethod, grid_n: usize, out: &Path) -> Result<(), Failure> {
    let implication = parse_implication(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    let grid = Grid::uniform(grid_n)?;
    let agg = ConstructedAggregator::new(implication.clone(), method, 1e-9)?;
    let mut csv = String::from("x,y,value\n");
    for &x in grid.points() {
        for &y in grid.points() {
            csv.push_str(&format!("{x:.6},{y:.6},{:.6}\n", agg.apply(x, y)));
        }
    }
    write(out, &csv)?;
    if method == ConstructionMethod::NumericInfimum {
        return Ok(());
    }
    let oracle = aggregator_from_implication(implication, 1e-9)?;
    let deviation = grid
        .points()
        .iter()
        .flat_map(|&x| grid.points().iter().map(move |&y| (x, y)))
        .map(|(x, y)| (agg.apply(x, y) - oracle.apply(x, y)).abs())
        .fold(0.0, f64::max);
    println!("max_deviation_vs_numeric,{deviation:.6e}");
    if deviation <= ORACLE_TOL {
        Ok(())
    } else {
        eprintln!("closed form deviates from the numeric infimum by {deviation:.6} > {ORACLE_TOL:e}");
        Err(Failure::Law)
    }
}

fn classify_demo(attr1: f64, attr2: f64, config: Option<&Path>) -> Result<(), Failure> {
    let config = match config {
        Some(p) => {
            serde_json::from_str::<ClassifierConfig>(&read(p)?).with_context(|| format!("in {}", p.display()))?
        }
        None => ClassifierConfig::default(),
    };
    let c = classify(&config, attr1, attr2)?;
    println!("class,{}", c.label);
    for r in &c.rules {
        println!(
            "rule,{} & {} -> {},firing={:.6},score={:.6}",
            r.first, r.second, r.class, r.firing, r.score
        );
    }
    for (class, score) in &c.class_scores {
        println!("score,{class},{score:.6}");
    }
    if !c.tied_with.is_empty() {
        println!("tie,{} beats {} by class order", c.label, c.tied_with.join(" "));
    }
    Ok(())
}
