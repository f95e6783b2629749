use serde::Serialize;

use super::{Aggregator, Negation};
use crate::{Grid, NOISE};

/// A boolean property with the grid point that decides it, when one exists.
///
/// For universal properties the witness is a counterexample; for
/// existential ones (zero/one divisors) it is the example found.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Flag {
    pub holds: bool,
    pub witness: Option<Vec<f64>>,
}

impl Flag {
    pub(crate) fn universal(counterexample: Option<Vec<f64>>) -> Flag {
        Flag {
            holds: counterexample.is_none(),
            witness: counterexample,
        }
    }

    pub(crate) fn existential(example: Option<Vec<f64>>) -> Flag {
        Flag {
            holds: example.is_some(),
            witness: example,
        }
    }
}

/// Grid classification of an aggregation function.
///
/// Universal flags are sound only on the scanned grid. Equalities are
/// tested up to the noise floor.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregatorProfile {
    pub grid: String,
    pub is_conjunctor: Flag,
    pub is_disjunctor: Flag,
    pub left_neutral_one: Flag,
    pub right_neutral_one: Flag,
    pub commutative: Flag,
    pub has_zero_divisors: Flag,
    pub has_one_divisors: Flag,
    /// `A(x, N(x)) = 0` for all `x`.
    pub lnc: Flag,
    /// `A(x, N(x)) = 1` for all `x`.
    pub lem: Flag,
}

fn first_pair(grid: &[f64], mut bad: impl FnMut(f64, f64) -> bool) -> Option<Vec<f64>> {
    for &x in grid {
        for &y in grid {
            if bad(x, y) {
                return Some(vec![x, y]);
            }
        }
    }
    None
}

fn first_point(grid: &[f64], mut bad: impl FnMut(f64) -> bool) -> Option<Vec<f64>> {
    grid.iter().find(|&&x| bad(x)).map(|&x| vec![x])
}

pub fn profile_aggregator(a: &Aggregator, n: &Negation, grid: &Grid) -> AggregatorProfile {
    let g = grid.points();
    let interior: Vec<f64> = g.iter().copied().filter(|&x| x > 0.0 && x < 1.0).collect();
    let conj = |a: &Aggregator| {
        [(1.0, 0.0), (0.0, 1.0)]
            .into_iter()
            .find(|&(x, y)| a.apply(x, y) != 0.0)
            .map(|(x, y)| vec![x, y])
    };
    let disj = |a: &Aggregator| {
        [(1.0, 0.0), (0.0, 1.0)]
            .into_iter()
            .find(|&(x, y)| a.apply(x, y) != 1.0)
            .map(|(x, y)| vec![x, y])
    };
    AggregatorProfile {
        grid: grid.description().to_string(),
        is_conjunctor: Flag::universal(conj(a)),
        is_disjunctor: Flag::universal(disj(a)),
        left_neutral_one: Flag::universal(first_point(g, |y| (a.apply(1.0, y) - y).abs() > NOISE)),
        right_neutral_one: Flag::universal(first_point(g, |x| (a.apply(x, 1.0) - x).abs() > NOISE)),
        commutative: Flag::universal(first_pair(g, |x, y| (a.apply(x, y) - a.apply(y, x)).abs() > NOISE)),
        has_zero_divisors: Flag::existential(first_pair(&interior, |x, y| a.apply(x, y) <= NOISE)),
        has_one_divisors: Flag::existential(first_pair(&interior, |x, y| a.apply(x, y) >= 1.0 - NOISE)),
        lnc: Flag::universal(first_point(g, |x| a.apply(x, n.apply(x)) > NOISE)),
        lem: Flag::universal(first_point(g, |x| a.apply(x, n.apply(x)) < 1.0 - NOISE)),
    }
}
