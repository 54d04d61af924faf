use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::{AlmostSimpleSpec, ReeError, ReeParams};
use crate::exactmath::{self, divisors, NatInt};

/// Where a degree comes from: a table line scaled by a divisor of `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Provenance {
    pub line: u8,
    pub multiplier: u32,
}

/// A finite set of positive degrees, ordered by value, each with every
/// `(line, multiplier)` pair producing it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DegreeSet {
    members: BTreeMap<NatInt, Vec<Provenance>>,
}

impl DegreeSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// A set without provenance information.
    pub fn from_values<I: IntoIterator<Item = NatInt>>(values: I) -> Self {
        let mut set = Self::new();
        for v in values {
            set.members.entry(v).or_default();
        }
        set
    }

    pub fn insert(&mut self, value: NatInt, provenance: Provenance) {
        let slot = self.members.entry(value).or_default();
        if !slot.contains(&provenance) {
            slot.push(provenance);
            slot.sort();
        }
    }

    pub fn contains(&self, value: &NatInt) -> bool {
        self.members.contains_key(value)
    }

    pub fn provenance(&self, value: &NatInt) -> Option<&[Provenance]> {
        self.members.get(value).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = &NatInt> {
        self.members.keys()
    }

    pub fn iter_with_provenance(&self) -> impl Iterator<Item = (&NatInt, &[Provenance])> {
        self.members.iter().map(|(v, p)| (v, p.as_slice()))
    }

    pub fn is_subset(&self, other: &DegreeSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Smallest member divisible by `divisor`.
    pub fn first_multiple_of(&self, divisor: &NatInt) -> Option<&NatInt> {
        self.iter().find(|v| (*v % divisor).is_zero())
    }
}

/// `{e·a : e a table degree, a | d}`, except that lines whose characters are
/// invariant under Aut(²G₂(q)) (line 1 and the extendible lines) contribute
/// `a = 1` only.
///
/// Every degree of `H` lies over some `χ ∈ Irr(H₀)` and equals
/// `χ(1)·|H : I_H(χ)|` because `H/H₀` is cyclic. `|H : I_H(χ)|` divides `d` and
/// is 1 when `χ` extends to `H`.
pub fn cd_superset(spec: &AlmostSimpleSpec) -> DegreeSet {
    let mut set = DegreeSet::new();
    let all_divisors = divisors(spec.d() as u64);
    for entry in spec.table().entries() {
        let multipliers: &[u64] = if entry.is_invariant() {
            &[1]
        } else {
            &all_divisors
        };
        for &a in multipliers {
            set.insert(
                &entry.value * a,
                Provenance {
                    line: entry.line,
                    multiplier: a as u32,
                },
            );
        }
    }
    set
}

/// Degrees provably in `cd(H)`: 1, the extendible lines, and `(q³+1)·d`.
pub fn certified_degrees(spec: &AlmostSimpleSpec) -> DegreeSet {
    let mut set = DegreeSet::new();
    for entry in spec.table().entries() {
        if entry.is_invariant() {
            set.insert(
                entry.value.clone(),
                Provenance {
                    line: entry.line,
                    multiplier: 1,
                },
            );
        }
    }
    let q3_plus_1 = spec.params().q_cubed() + 1u32;
    set.insert(
        q3_plus_1 * spec.d(),
        Provenance {
            line: 10,
            multiplier: spec.d(),
        },
    );
    set
}

/// Members greater than 1 that are prime powers.
pub fn prime_power_degrees(set: &DegreeSet) -> DegreeSet {
    let one = NatInt::one();
    let mut out = DegreeSet::new();
    for (value, prov) in set.iter_with_provenance() {
        if *value > one
            && exactmath::is_prime_power(value)
                .expect("value >= 2")
                .is_some()
        {
            out.members.insert(value.clone(), prov.to_vec());
        }
    }
    out
}

/// Largest 2-part over the members; 1 for an empty set.
pub fn max_two_part(set: &DegreeSet) -> NatInt {
    set.iter()
        .filter(|v| !v.is_zero())
        .map(|v| exactmath::part_p(v, 2).expect("positive member"))
        .max()
        .unwrap_or_else(NatInt::one)
}

pub fn smallest_even_degree(set: &DegreeSet) -> Result<NatInt, ReeError> {
    set.iter()
        .find(|v| v.is_even())
        .cloned()
        .ok_or(ReeError::NoEvenDegree)
}

/// `x` is isolated in `set`: no member `y` with `1 < y < x` divides `x`, and
/// no member is a proper multiple of `x`.
pub fn is_isolated(x: &NatInt, set: &DegreeSet) -> Result<bool, ReeError> {
    if !set.contains(x) {
        return Err(ReeError::NotAMember(x.clone()));
    }
    let one = NatInt::one();
    let isolated = set.iter().all(|y| {
        if y == x {
            return true;
        }
        let divides_x = *y > one && y < x && (x % y).is_zero();
        let proper_multiple = y > x && (y % x).is_zero();
        !divides_x && !proper_multiple
    });
    Ok(isolated)
}

/// One gcd in the coprimality block, with the value it must take.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdIdentity {
    pub label: &'static str,
    pub left: NatInt,
    pub right: NatInt,
    pub gcd: NatInt,
    pub expected: NatInt,
}

impl GcdIdentity {
    pub fn holds(&self) -> bool {
        self.gcd == self.expected
    }
}

/// `(q−1, q+1) = 2`, `(q±1, q±θ+1) = 1` and `(q−θ+1, q+θ+1) = 1`.
pub fn gcd_identities(params: &ReeParams) -> Vec<GcdIdentity> {
    let q = params.q();
    let theta = params.theta();
    let q_minus = q - 1u32;
    let q_plus = q + 1u32;
    let t_minus = q - theta + 1u32;
    let t_plus = q + theta + 1u32;
    let pairs: [(&'static str, &NatInt, &NatInt, u32); 6] = [
        ("(q-1, q+1)", &q_minus, &q_plus, 2),
        ("(q-1, q-θ+1)", &q_minus, &t_minus, 1),
        ("(q-1, q+θ+1)", &q_minus, &t_plus, 1),
        ("(q+1, q-θ+1)", &q_plus, &t_minus, 1),
        ("(q+1, q+θ+1)", &q_plus, &t_plus, 1),
        ("(q-θ+1, q+θ+1)", &t_minus, &t_plus, 1),
    ];
    pairs
        .into_iter()
        .map(|(label, a, b, expected)| GcdIdentity {
            label,
            left: a.clone(),
            right: b.clone(),
            gcd: exactmath::gcd(a, b).expect("positive arguments"),
            expected: expected.into(),
        })
        .collect()
}

pub fn gcd_identities_check(params: &ReeParams) -> bool {
    gcd_identities(params).iter().all(GcdIdentity::holds)
}
