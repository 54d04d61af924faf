use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use super::degrees::{cd_superset, prime_power_degrees};
use super::{AlmostSimpleSpec, ReeParams};
use crate::exactmath::{self, prime_divisors, NatInt};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MaxSubgroupTag {
    /// `[q³]:C_{q−1}`
    Parabolic,
    /// `2 × PSL₂(q)`
    InvolutionCentralizer,
    /// `2² × D_{(q+1)/2}:C₃`
    DihedralNormalizer,
    /// `C_{q+θ+1}:C₆`
    TorusPlus,
    /// `C_{q−θ+1}:C₆`
    TorusMinus,
    /// `²G₂(q₀)` with `q = q₀^r`, `r` prime
    Subfield { r: u32 },
}

impl fmt::Display for MaxSubgroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxSubgroupTag::Parabolic => write!(f, "[q^3]:C_(q-1)"),
            MaxSubgroupTag::InvolutionCentralizer => write!(f, "2xPSL_2(q)"),
            MaxSubgroupTag::DihedralNormalizer => write!(f, "2^2xD_((q+1)/2):C_3"),
            MaxSubgroupTag::TorusPlus => write!(f, "C_(q+θ+1):C_6"),
            MaxSubgroupTag::TorusMinus => write!(f, "C_(q-θ+1):C_6"),
            MaxSubgroupTag::Subfield { r } => write!(f, "2G2(q^(1/{r}))"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxSubgroupRow {
    pub tag: MaxSubgroupTag,
    pub order: NatInt,
    pub index: NatInt,
}

/// Maximal subgroups of ²G₂(q) with their orders and indices.
pub fn maximal_subgroups(params: &ReeParams) -> Vec<MaxSubgroupRow> {
    let q = params.q();
    let theta = params.theta();
    let group_order = params.group_order();
    let mut orders = vec![
        (MaxSubgroupTag::Parabolic, params.q_cubed() * (q - 1u32)),
        (MaxSubgroupTag::InvolutionCentralizer, q * (q * q - 1u32)),
        (MaxSubgroupTag::DihedralNormalizer, (q + 1u32) * 6u32),
        (MaxSubgroupTag::TorusPlus, (q + theta + 1u32) * 6u32),
        (MaxSubgroupTag::TorusMinus, (q - theta + 1u32) * 6u32),
    ];
    let three = NatInt::from(3u32);
    for r in prime_divisors(params.f() as u64) {
        let q0 = three.pow(params.f() / r as u32);
        let q0_cubed = q0.pow(3);
        let order = &q0_cubed * (&q0_cubed + 1u32) * (&q0 - 1u32);
        orders.push((MaxSubgroupTag::Subfield { r: r as u32 }, order));
    }
    orders
        .into_iter()
        .map(|(tag, order)| {
            let (index, rem) = group_order.div_rem(&order);
            assert!(rem.is_zero(), "order of {tag} does not divide |G|");
            MaxSubgroupRow { tag, order, index }
        })
        .collect()
}

/// Why a row survives or fails the divisibility filter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilterWitness {
    /// Smallest superset member the index divides.
    Divides { member: NatInt },
    /// The index divides no member. Its 3-adic valuation is compared with
    /// the largest one among non-prime-power members; the only prime-power
    /// member is `q³`, which the index does not divide.
    NoMultiple {
        index_v3: u32,
        max_v3_mixed: u32,
        index_divides_prime_power: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterRow {
    pub row: MaxSubgroupRow,
    pub surviving: bool,
    pub witness: FilterWitness,
}

/// Keeps the rows whose index divides some member of `cd_superset(spec)`.
pub fn maximal_index_filter(spec: &AlmostSimpleSpec) -> Vec<FilterRow> {
    let superset = cd_superset(spec);
    let prime_powers = prime_power_degrees(&superset);
    let max_v3_mixed = superset
        .iter()
        .filter(|v| !prime_powers.contains(v) && **v > 1u32.into())
        .map(|v| exactmath::val_p(v, 3).expect("positive"))
        .max()
        .unwrap_or(0);
    maximal_subgroups(spec.params())
        .into_iter()
        .map(|row| match superset.first_multiple_of(&row.index) {
            Some(member) => FilterRow {
                witness: FilterWitness::Divides {
                    member: member.clone(),
                },
                surviving: true,
                row,
            },
            None => FilterRow {
                witness: FilterWitness::NoMultiple {
                    index_v3: exactmath::val_p(&row.index, 3).expect("positive"),
                    max_v3_mixed,
                    index_divides_prime_power: prime_powers
                        .iter()
                        .any(|p| (p % &row.index).is_zero()),
                },
                surviving: false,
                row,
            },
        })
        .collect()
}
