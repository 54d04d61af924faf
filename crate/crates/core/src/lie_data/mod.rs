//! Degree data for the candidate simple groups: Steinberg and unipotent
//! degrees of the Lie-type families, the alternating-group degree formula,
//! and sporadic/Tits witness degrees.

mod alternating;
mod families;
mod sporadic;

use thiserror::Error;

pub use alternating::{
    alt_16_witness, alt_char_degree, AltWitness, A5_EXTENDIBLE_DEGREE, A6_EXTENDIBLE_DEGREE,
    A7_EXTENDIBLE_DEGREE,
};
pub use families::{steinberg_exponent, unipotent_degree, LieFamily, Sign, SimpleCandidate};
pub use sporadic::{sporadic_fact, sporadic_table, SporadicFact, SPORADIC_TABLE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("inadmissible: {0}")]
    Inadmissible(String),
    #[error("unknown sporadic group {0:?}")]
    UnknownSporadic(String),
    #[error("inexact division in {0}")]
    InexactFormula(String),
}
