//! Sequential against parallel execution on the two hot paths: grid law
//! scans and sup-composition over large universes.
//!
//! Without the `parallel` feature both modes run sequentially, which makes
//! the comparison a baseline sanity check.

use std::hint::black_box;

use acri::conformance::{check_ac_with, check_dac_with};
use acri::connectives::{Aggregator, Negation};
use acri::constructions::aggregator_from_implication;
use acri::engine::{fmp_infer_with, FuzzySet, Rule};
use acri::exec::Execution;
use acri::implications::Implication;
use acri::Grid;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn wave(prefix: &str, n: usize, phase: f64) -> FuzzySet {
    let mut m: Vec<f64> = (0..n).map(|k| 0.5 + 0.5 * (k as f64 * 0.37 + phase).sin()).collect();
    m[n / 2] = 1.0;
    FuzzySet::from_values(prefix, m).unwrap()
}

fn law_scans(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_ac");
    let (a, i) = (Aggregator::LukasiewiczTNorm, Implication::Lukasiewicz);
    for n in [101, 401] {
        let grid = Grid::uniform(n).unwrap();
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &grid, |b, g| {
                b.iter(|| check_ac_with(&a, &i, black_box(g), mode))
            });
        }
    }
    group.finish();

    // bisection-backed aggregator: expensive per point, where threads pay off most
    let mut group = c.benchmark_group("check_dac_numeric");
    group.sample_size(10);
    let numeric = aggregator_from_implication(Implication::Reichenbach, 1e-9).unwrap();
    let grid = Grid::uniform(101).unwrap();
    for (name, mode) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                check_dac_with(
                    &numeric,
                    &Implication::Reichenbach,
                    &Negation::Standard,
                    black_box(&grid),
                    mode,
                )
            })
        });
    }
    group.finish();
}

fn inference(c: &mut Criterion) {
    let mut group = c.benchmark_group("fmp_infer");
    let (a, i) = (Aggregator::Product, Implication::Reichenbach);
    for n in [64, 512] {
        let rule = Rule::new(wave("x", n, 0.0), wave("y", n, 1.0));
        let input = wave("x", n, 0.3);
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, _| {
                b.iter(|| fmp_infer_with(&a, &i, &rule, black_box(&input), mode).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, law_scans, inference);
criterion_main!(benches);
