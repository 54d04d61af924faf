//! Data for the small Ree groups ²G₂(q), q = 3^f, and their almost simple
//! extensions: parameters, the degree table, degree-set predicates and the
//! maximal subgroups.

mod degrees;
mod maximal;
mod table;

use num_traits::One;
use thiserror::Error;

use crate::exactmath::NatInt;

pub use degrees::{
    cd_superset, certified_degrees, gcd_identities, gcd_identities_check, is_isolated,
    max_two_part, prime_power_degrees, smallest_even_degree, DegreeSet, GcdIdentity, Provenance,
};
pub use maximal::{
    maximal_index_filter, maximal_subgroups, FilterRow, FilterWitness, MaxSubgroupRow,
    MaxSubgroupTag,
};
pub use table::{
    ree_degree_table, DegreeEntry, DegreeFormula, DegreeFormulas, LinearFactor, ReeDegreeTable,
    EXTENDIBLE_LINES, STANDARD_FORMULAS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReeError {
    #[error("f must be odd and ≥ 3 (got {0})")]
    InvalidF(i64),
    #[error("d = {d} does not divide f = {f}")]
    InvalidD { f: u32, d: u32 },
    #[error("degree table line {line}: division by {divisor} is not exact")]
    InexactDivision { line: u8, divisor: u32 },
    #[error("degree table line {line}: factor {factor} is not positive")]
    NonPositiveFactor { line: u8, factor: usize },
    #[error("degree table parse error at input line {at}: {msg}")]
    Parse { at: usize, msg: String },
    #[error("no even member in the degree set")]
    NoEvenDegree,
    #[error("{0} is not a member of the degree set")]
    NotAMember(NatInt),
    #[error("degree set is empty")]
    EmptySet,
}

/// `(f, q = 3^f, θ = 3^{(f+1)/2})` with `f` odd and at least 3, so `θ² = 3q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReeParams {
    f: u32,
    q: NatInt,
    theta: NatInt,
}

impl ReeParams {
    pub fn new(f: i64) -> Result<Self, ReeError> {
        if f < 3 || f % 2 == 0 || f > u32::MAX as i64 {
            return Err(ReeError::InvalidF(f));
        }
        let f = f as u32;
        let three = NatInt::from(3u32);
        Ok(ReeParams {
            f,
            q: three.pow(f),
            theta: three.pow((f + 1) / 2),
        })
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> &NatInt {
        &self.q
    }

    /// `√(3q)`.
    pub fn theta(&self) -> &NatInt {
        &self.theta
    }

    pub fn q_cubed(&self) -> NatInt {
        self.q.pow(3)
    }

    /// `q³(q³ + 1)(q − 1)`, the order of ²G₂(q).
    pub fn group_order(&self) -> NatInt {
        let q3 = self.q_cubed();
        let q3_plus_1 = &q3 + 1u32;
        q3 * q3_plus_1 * (&self.q - 1u32)
    }

    /// `θ(q² − 1)/3`, the smallest even degree.
    pub fn smallest_even_value(&self) -> NatInt {
        &self.theta * (&self.q * &self.q - NatInt::one()) / 3u32
    }
}

pub fn ree_params(f: i64) -> Result<ReeParams, ReeError> {
    ReeParams::new(f)
}

pub fn group_order(params: &ReeParams) -> NatInt {
    params.group_order()
}

/// An almost simple group `H` with socle ²G₂(q) and `|H : H₀| = d`, `d | f`.
///
/// The degree table is carried along so an alternative (for instance a
/// deliberately corrupted) table flows into every downstream computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostSimpleSpec {
    table: ReeDegreeTable,
    d: u32,
}

impl AlmostSimpleSpec {
    pub fn new(params: ReeParams, d: u32) -> Result<Self, ReeError> {
        Self::with_table(ree_degree_table(&params), d)
    }

    pub fn with_table(table: ReeDegreeTable, d: u32) -> Result<Self, ReeError> {
        let f = table.params().f();
        if d == 0 || f % d != 0 {
            return Err(ReeError::InvalidD { f, d });
        }
        Ok(AlmostSimpleSpec { table, d })
    }

    pub fn params(&self) -> &ReeParams {
        self.table.params()
    }

    pub fn table(&self) -> &ReeDegreeTable {
        &self.table
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn f(&self) -> u32 {
        self.params().f()
    }
}
