//! Chief-factor elimination: every candidate simple factor `S` with `k`
//! copies is either ruled out by an arithmetic contradiction against the
//! degree superset, or survives. Also hosts the numeric lemma checks that
//! surround the elimination.

mod checks;
mod engine;

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::exactmath::{self, NatInt};
use crate::lie_data::{LieError, SimpleCandidate};
use crate::ree::{max_two_part, DegreeSet};

pub use checks::{
    big, degree_lemma_checks, degree_sets_check, degree_table_check, elimination_check,
    eta_inertia_check, final_degree_check, gcd_check, maximal_filter_check,
    solvable_quotient_checks, step3_divisibility_check, CheckReport, Status,
};
pub use engine::{
    eliminate_all, eliminate_candidate, enumerate_candidates, max_v3_mixed, mixed_v3_values,
    run_elimination, run_elimination_with, steinberg_constraint, Bounds, EliminationContext,
    MixedV3,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EliminationError {
    #[error("enumeration bounds too small: {0}")]
    BoundsTooSmall(String),
    #[error("k must be 1, 2 or 3 (got {0})")]
    InvalidK(u32),
    #[error(transparent)]
    Candidate(#[from] LieError),
    #[error("expected the unique survivor 2G2(q) with k = 1, found [{}]", .survivors.join(", "))]
    TheoremViolation { survivors: Vec<String> },
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

/// One code per contradiction used to rule a candidate out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReasonCode {
    NotP3,
    ExponentEquation,
    Parity3f,
    K2Parity,
    SixteenDivisibility,
    PrimePowerMismatch,
    EvenDegreeTooSmall,
    Unipotent3PartBound,
    PslPsuRankBound,
    PspRankBound,
    UnipotentDegreeAbsent,
    Psl2Divisibility,
    E7ThreePartOverflow,
    Ree2G2K3Bound,
    A6Exponent,
    A7Bound,
    SporadicWitness,
}

impl ReasonCode {
    pub const ALL: [ReasonCode; 17] = [
        ReasonCode::NotP3,
        ReasonCode::ExponentEquation,
        ReasonCode::Parity3f,
        ReasonCode::K2Parity,
        ReasonCode::SixteenDivisibility,
        ReasonCode::PrimePowerMismatch,
        ReasonCode::EvenDegreeTooSmall,
        ReasonCode::Unipotent3PartBound,
        ReasonCode::PslPsuRankBound,
        ReasonCode::PspRankBound,
        ReasonCode::UnipotentDegreeAbsent,
        ReasonCode::Psl2Divisibility,
        ReasonCode::E7ThreePartOverflow,
        ReasonCode::Ree2G2K3Bound,
        ReasonCode::A6Exponent,
        ReasonCode::A7Bound,
        ReasonCode::SporadicWitness,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ReasonCode::NotP3 => "not-p3",
            ReasonCode::ExponentEquation => "exponent-equation",
            ReasonCode::Parity3f => "parity-3f",
            ReasonCode::K2Parity => "k2-parity",
            ReasonCode::SixteenDivisibility => "16-divisibility",
            ReasonCode::PrimePowerMismatch => "prime-power-mismatch",
            ReasonCode::EvenDegreeTooSmall => "even-degree-too-small",
            ReasonCode::Unipotent3PartBound => "unipotent-3part-bound",
            ReasonCode::PslPsuRankBound => "psl-psu-rank-bound",
            ReasonCode::PspRankBound => "psp-rank-bound",
            ReasonCode::UnipotentDegreeAbsent => "unipotent-degree-absent",
            ReasonCode::Psl2Divisibility => "psl2-divisibility",
            ReasonCode::E7ThreePartOverflow => "e7-3part-overflow",
            ReasonCode::Ree2G2K3Bound => "2g2-k3-bound",
            ReasonCode::A6Exponent => "a6-exponent",
            ReasonCode::A7Bound => "a7-bound",
            ReasonCode::SporadicWitness => "sporadic-witness",
        }
    }
}

impl fmt::Display for ReasonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Eq,
    Lt,
    Le,
    Ge,
}

impl Relation {
    pub fn holds(&self, lhs: &NatInt, rhs: &NatInt) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Ge => ">=",
        }
    }

    /// Symbol of the relation that actually holds when this one fails.
    pub fn negated_symbol(&self) -> &'static str {
        match self {
            Relation::Eq => "!=",
            Relation::Lt => ">=",
            Relation::Le => ">",
            Relation::Ge => "<",
        }
    }
}

/// Numeric evidence for a `RuledOut` verdict. Every variant states a
/// necessary condition for the candidate together with the evaluated
/// quantities showing that it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `lhs relation rhs` is required and false.
    Violated {
        expr: String,
        lhs: NatInt,
        relation: Relation,
        rhs: NatInt,
    },
    /// `value` must divide some degree, yet divides no superset member.
    DividesNoMember { expr: String, value: NatInt },
    /// `value` must be a degree, yet is not a superset member.
    NotAMember { expr: String, value: NatInt },
    /// `value` must divide some degree, but its 2-part exceeds every
    /// member's 2-part.
    TwoPartOverflow {
        expr: String,
        value: NatInt,
        two_part: NatInt,
        max_two_part: NatInt,
    },
    /// `exponent` must be the 3-adic valuation of a non-prime-power member.
    NoMatchingValuation {
        expr: String,
        exponent: u32,
        available: Vec<u32>,
    },
}

impl Witness {
    /// Recomputes the failing condition against `superset`.
    pub fn reverify(&self, superset: &DegreeSet) -> bool {
        match self {
            Witness::Violated {
                lhs, relation, rhs, ..
            } => !relation.holds(lhs, rhs),
            Witness::DividesNoMember { value, .. } => superset.first_multiple_of(value).is_none(),
            Witness::NotAMember { value, .. } => !superset.contains(value),
            Witness::TwoPartOverflow {
                value,
                two_part,
                max_two_part: bound,
                ..
            } => {
                let actual = exactmath::part_p(value, 2).ok();
                actual.as_ref() == Some(two_part)
                    && *bound == max_two_part(superset)
                    && two_part > bound
            }
            Witness::NoMatchingValuation {
                exponent,
                available,
                ..
            } => {
                let recomputed = mixed_v3_values(superset);
                recomputed == *available && !recomputed.contains(exponent)
            }
        }
    }

    pub fn expr(&self) -> &str {
        match self {
            Witness::Violated { expr, .. }
            | Witness::DividesNoMember { expr, .. }
            | Witness::NotAMember { expr, .. }
            | Witness::TwoPartOverflow { expr, .. }
            | Witness::NoMatchingValuation { expr, .. } => expr,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Witness::Violated {
                expr,
                lhs,
                relation,
                rhs,
            } => json!({
                "kind": "violated",
                "expr": expr,
                "lhs": big(lhs),
                "relation": relation.symbol(),
                "rhs": big(rhs),
            }),
            Witness::DividesNoMember { expr, value } => json!({
                "kind": "divides-no-member",
                "expr": expr,
                "value": big(value),
            }),
            Witness::NotAMember { expr, value } => json!({
                "kind": "not-a-member",
                "expr": expr,
                "value": big(value),
            }),
            Witness::TwoPartOverflow {
                expr,
                value,
                two_part,
                max_two_part,
            } => json!({
                "kind": "two-part-overflow",
                "expr": expr,
                "value": big(value),
                "two_part": big(two_part),
                "max_two_part": big(max_two_part),
            }),
            Witness::NoMatchingValuation {
                expr,
                exponent,
                available,
            } => json!({
                "kind": "no-matching-valuation",
                "expr": expr,
                "exponent": exponent,
                "available": available,
            }),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Violated {
                expr,
                lhs,
                relation,
                rhs,
            } => write!(f, "{expr} fails: {lhs} {} {rhs}", relation.negated_symbol()),
            Witness::DividesNoMember { expr, value } => {
                write!(f, "{expr} = {value} divides no member")
            }
            Witness::NotAMember { expr, value } => write!(f, "{expr} = {value} is not a member"),
            Witness::TwoPartOverflow {
                expr,
                value,
                two_part,
                max_two_part,
            } => write!(f, "{expr} = {value} has 2-part {two_part} > {max_two_part}"),
            Witness::NoMatchingValuation {
                expr,
                exponent,
                available,
            } => write!(f, "{expr}: {exponent} not in {available:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Survives,
    RuledOut {
        reason: ReasonCode,
        witness: Witness,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationOutcome {
    pub candidate: SimpleCandidate,
    pub k: u32,
    pub verdict: Verdict,
}

impl EliminationOutcome {
    pub fn survives(&self) -> bool {
        self.verdict == Verdict::Survives
    }

    pub fn reason(&self) -> Option<ReasonCode> {
        match &self.verdict {
            Verdict::RuledOut { reason, .. } => Some(*reason),
            Verdict::Survives => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.verdict {
            Verdict::RuledOut { witness, .. } => Some(witness),
            Verdict::Survives => None,
        }
    }

    pub fn label(&self) -> String {
        format!("{}^{}", self.candidate, self.k)
    }

    pub fn to_json(&self) -> Value {
        match &self.verdict {
            Verdict::Survives => json!({
                "candidate": self.candidate.to_string(),
                "k": self.k,
                "verdict": "survives",
            }),
            Verdict::RuledOut { reason, witness } => json!({
                "candidate": self.candidate.to_string(),
                "k": self.k,
                "verdict": "ruled-out",
                "reason": reason.as_str(),
                "witness": witness.to_json(),
            }),
        }
    }
}
