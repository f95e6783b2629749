//! Fuzzy negations, automorphisms of `[0,1]` and binary aggregation
//! functions, with conjugation, duality and grid profiling.

mod aggregator;
mod automorphism;
mod negation;
mod profile;

pub use aggregator::{conjugate_aggregator, dual_aggregator, Aggregator, OrdinalComponent};
pub use automorphism::Automorphism;
pub use negation::{negation_defect, Negation};
pub use profile::{profile_aggregator, AggregatorProfile, Flag};

pub(crate) use aggregator::validate_components as validate_ordinal_components;
