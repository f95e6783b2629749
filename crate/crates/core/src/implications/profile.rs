use serde::Serialize;

use super::Implication;
use crate::connectives::{Flag, Negation};
use crate::Grid;

/// Tolerance for the equality side of the ordering property.
const OP_TOL: f64 = 1e-9;
/// Sub-grid size for the exchange principle.
const EP_POINTS: usize = 21;

/// Grid classification of an implication. Failed flags carry a witness
/// that reproduces the violation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImplicationProfile {
    pub grid: String,
    /// `I(1, y) = y`
    pub np: Flag,
    /// `I(x, x) = 1`
    pub ip: Flag,
    /// `I(x, I(y, z)) = I(y, I(x, z))`, on a 21-point sub-grid.
    pub ep: Flag,
    /// `I(x, y) = 1 ⟺ x ≤ y`
    pub op: Flag,
    /// `I(x, y) = I(N(y), N(x))`
    pub cp: Flag,
    /// `I(0, y) = 1`
    pub lb: Flag,
    /// `I(x, 1) = 1`
    pub rb: Flag,
}

pub fn profile_implication(i: &Implication, n: &Negation, grid: &Grid) -> ImplicationProfile {
    let g = grid.points();
    let point = |bad: &dyn Fn(f64) -> bool| g.iter().find(|&&x| bad(x)).map(|&x| vec![x]);
    let pair = |bad: &dyn Fn(f64, f64) -> bool| {
        g.iter()
            .flat_map(|&x| g.iter().map(move |&y| (x, y)))
            .find(|&(x, y)| bad(x, y))
            .map(|(x, y)| vec![x, y])
    };
    let sub = grid.subsample(EP_POINTS);
    let s = sub.points();
    let ep = s
        .iter()
        .flat_map(|&x| s.iter().flat_map(move |&y| s.iter().map(move |&z| (x, y, z))))
        .find(|&(x, y, z)| (i.apply(x, i.apply(y, z)) - i.apply(y, i.apply(x, z))).abs() > crate::NOISE)
        .map(|(x, y, z)| vec![x, y, z]);
    ImplicationProfile {
        grid: grid.description().to_string(),
        np: Flag::universal(point(&|y| (i.apply(1.0, y) - y).abs() > crate::NOISE)),
        ip: Flag::universal(point(&|x| i.apply(x, x) != 1.0)),
        ep: Flag::universal(ep),
        op: Flag::universal(pair(&|x, y| ((i.apply(x, y) - 1.0).abs() <= OP_TOL) != (x <= y))),
        cp: Flag::universal(pair(&|x, y| {
            (i.apply(x, y) - i.apply(n.apply(y), n.apply(x))).abs() > crate::NOISE
        })),
        lb: Flag::universal(point(&|y| i.apply(0.0, y) != 1.0)),
        rb: Flag::universal(point(&|x| i.apply(x, 1.0) != 1.0)),
    }
}
