//! Fuzzy implications: the standard families, their lattice and conjugation
//! algebra, natural negations, property profiles and contrapositivisation.

mod copula;
mod implication;
mod profile;

pub use copula::Copula;
pub use implication::{contrapositivise, natural_negation, Implication, Side, TPowerBase};
pub use profile::{profile_implication, ImplicationProfile};
