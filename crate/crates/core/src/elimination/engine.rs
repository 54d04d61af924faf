use std::collections::BTreeSet;

use num_traits::One;

use super::{EliminationError, EliminationOutcome, ReasonCode, Relation, Verdict, Witness};
use crate::exactmath::{self, NatInt};
use crate::lie_data::{
    alt_16_witness, sporadic_fact, sporadic_table, steinberg_exponent, unipotent_degree, LieFamily,
    SimpleCandidate, A5_EXTENDIBLE_DEGREE, A6_EXTENDIBLE_DEGREE, A7_EXTENDIBLE_DEGREE,
};
use crate::ree::{
    cd_superset, max_two_part, prime_power_degrees, smallest_even_degree, AlmostSimpleSpec,
    DegreeSet,
};

/// `|S|_3^k = 3^{3f}`: `p = 3` and `e·N·k = 3f`.
pub fn steinberg_constraint(candidate: &SimpleCandidate, f: u32, k: u32) -> bool {
    let SimpleCandidate::LieType { family, p, e } = candidate else {
        return false;
    };
    let Ok(n) = steinberg_exponent(family) else {
        return false;
    };
    *p == 3 && u64::from(*e) * u64::from(n) * u64::from(k) == 3 * u64::from(f)
}

/// 3-adic valuations of the members `> 1` that are not prime powers.
pub fn mixed_v3_values(set: &DegreeSet) -> Vec<u32> {
    let prime_powers = prime_power_degrees(set);
    let one = NatInt::one();
    let values: BTreeSet<u32> = set
        .iter()
        .filter(|v| **v > one && !prime_powers.contains(v))
        .map(|v| exactmath::val_p(v, 3).expect("positive member"))
        .collect();
    values.into_iter().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MixedV3 {
    pub max: u32,
    /// Smallest positive valuation, if any member is divisible by 3.
    pub min_positive: Option<u32>,
}

pub fn max_v3_mixed(set: &DegreeSet) -> MixedV3 {
    let values = mixed_v3_values(set);
    MixedV3 {
        max: values.last().copied().unwrap_or(0),
        min_positive: values.iter().copied().find(|&v| v > 0),
    }
}

/// Enumeration limits for the rank parameter and the alternating degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub m_max: u32,
    pub n_max: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            m_max: 100,
            n_max: 200,
        }
    }
}

/// Everything the per-candidate tests read from `(f, d)`, computed once.
#[derive(Debug, Clone)]
pub struct EliminationContext<'a> {
    spec: &'a AlmostSimpleSpec,
    strict: bool,
    superset: DegreeSet,
    mixed_v3: Vec<u32>,
    max_two_part: NatInt,
    smallest_even: NatInt,
}

impl<'a> EliminationContext<'a> {
    pub fn new(spec: &'a AlmostSimpleSpec, strict: bool) -> Self {
        let superset = cd_superset(spec);
        let mixed_v3 = mixed_v3_values(&superset);
        let max_two_part = max_two_part(&superset);
        let smallest_even =
            smallest_even_degree(&superset).unwrap_or_else(|_| spec.params().smallest_even_value());
        EliminationContext {
            spec,
            strict,
            superset,
            mixed_v3,
            max_two_part,
            smallest_even,
        }
    }

    pub fn spec(&self) -> &AlmostSimpleSpec {
        self.spec
    }

    pub fn superset(&self) -> &DegreeSet {
        &self.superset
    }

    pub fn strict(&self) -> bool {
        self.strict
    }

    fn f(&self) -> u32 {
        self.spec.f()
    }

    pub fn eliminate(
        &self,
        candidate: &SimpleCandidate,
        k: u32,
    ) -> Result<EliminationOutcome, EliminationError> {
        if !(1..=3).contains(&k) {
            return Err(EliminationError::InvalidK(k));
        }
        candidate.check_admissible()?;
        let verdict = match candidate {
            SimpleCandidate::LieType { family, p, e } => {
                self.lie_type(candidate, family, *p, *e, k)?
            }
            SimpleCandidate::Alternating { n } => self.alternating(*n, k)?,
            SimpleCandidate::Sporadic { name } => self.sporadic(name, k)?,
            SimpleCandidate::Tits => self.sporadic("Tits", k)?,
        };
        Ok(EliminationOutcome {
            candidate: candidate.clone(),
            k,
            verdict,
        })
    }

    fn two_part_test(&self, expr: String, value: NatInt) -> Option<Witness> {
        let two_part = exactmath::part_p(&value, 2).expect("positive");
        (two_part > self.max_two_part).then(|| Witness::TwoPartOverflow {
            expr,
            value,
            two_part,
            max_two_part: self.max_two_part.clone(),
        })
    }

    fn lie_type(
        &self,
        candidate: &SimpleCandidate,
        family: &LieFamily,
        p: u64,
        e: u32,
        k: u32,
    ) -> Result<Verdict, EliminationError> {
        let out = |reason, witness| Ok(Verdict::RuledOut { reason, witness });
        let f = self.f();
        let nat = |v: u64| NatInt::from(v);
        if p != 3 {
            return out(
                ReasonCode::NotP3,
                Witness::Violated {
                    expr: "p = 3".into(),
                    lhs: nat(p),
                    relation: Relation::Eq,
                    rhs: nat(3),
                },
            );
        }
        let n = steinberg_exponent(family)?;
        let enk = u64::from(e) * u64::from(n) * u64::from(k);
        let exponent_witness = |label: &str| Witness::Violated {
            expr: format!("e·N·k = 3f ({label})"),
            lhs: nat(enk),
            relation: Relation::Eq,
            rhs: nat(3 * u64::from(f)),
        };
        if k == 2 {
            return out(
                ReasonCode::K2Parity,
                exponent_witness("k = 2, left side even"),
            );
        }
        if n % 2 == 0 {
            return out(ReasonCode::Parity3f, exponent_witness("N even, 3f odd"));
        }
        if enk != 3 * u64::from(f) {
            return out(ReasonCode::ExponentEquation, exponent_witness("N odd"));
        }

        let q0 = candidate.q0().expect("Lie type");
        let ek = e * k;
        match *family {
            LieFamily::Psl { m: 2 } => {
                // k = 3: q₀ = q and q₀²(q₀ − 1) divides a degree; k = 1: q₀ = q³
                // and q₀ − 1 divides a degree.
                let (expr, value) = if k == 3 {
                    ("q0^2(q0 - 1)", &q0 * &q0 * (&q0 - 1u32))
                } else {
                    ("q0 - 1", &q0 - 1u32)
                };
                if self.superset.first_multiple_of(&value).is_none() {
                    return out(
                        ReasonCode::Psl2Divisibility,
                        Witness::DividesNoMember {
                            expr: expr.into(),
                            value,
                        },
                    );
                }
            }
            LieFamily::Psl { m: 3 } | LieFamily::Psu { m: 3 } => {
                let (expr, value) = if matches!(family, LieFamily::Psl { .. }) {
                    ("(q0 - 1)^2(q0 + 1)", (&q0 - 1u32).pow(2) * (&q0 + 1u32))
                } else {
                    ("(q0 - 1)(q0 + 1)^2", (&q0 - 1u32) * (&q0 + 1u32).pow(2))
                };
                if let Some(w) = self.two_part_test(expr.into(), value) {
                    return out(ReasonCode::SixteenDivisibility, w);
                }
            }
            LieFamily::Psl { m } | LieFamily::Psu { m } => {
                if let Some(v) = self.unipotent_3part(e, k) {
                    return Ok(v);
                }
                let mm = u64::from(m) * u64::from(m - 1);
                if mm > 18 {
                    return out(
                        ReasonCode::PslPsuRankBound,
                        Witness::Violated {
                            expr: "m(m - 1) <= 18".into(),
                            lhs: nat(mm),
                            relation: Relation::Le,
                            rhs: nat(18),
                        },
                    );
                }
            }
            LieFamily::Psp { m } | LieFamily::OmegaOdd { m } => {
                if let Some(v) = self.unipotent_3part(e, k) {
                    return Ok(v);
                }
                // 3f = e·m²·k together with f <= 2ek + 1
                let lhs = u64::from(ek) * u64::from(m) * u64::from(m);
                let rhs = 6 * u64::from(ek) + 3;
                if lhs > rhs {
                    return out(
                        ReasonCode::PspRankBound,
                        Witness::Violated {
                            expr: "e·m²·k <= 6ek + 3".into(),
                            lhs: nat(lhs),
                            relation: Relation::Le,
                            rhs: nat(rhs),
                        },
                    );
                }
                let chi = unipotent_degree(candidate)?.expect("row exists for PSp and odd Omega");
                let value = chi.pow(k);
                if !self.superset.contains(&value) {
                    return out(
                        ReasonCode::UnipotentDegreeAbsent,
                        Witness::NotAMember {
                            expr: "χ(1)^k, χ(1) = q0(q0^m - 1)(q0^(m-1) + 1)/(q0 - 1)".into(),
                            value,
                        },
                    );
                }
            }
            LieFamily::E7 => {
                let max = self.mixed_v3.last().copied().unwrap_or(0);
                let lhs = 46 * u64::from(ek);
                if lhs > u64::from(max) {
                    let looser = if lhs > 2 * u64::from(f) { ">" } else { "<=" };
                    return out(
                        ReasonCode::E7ThreePartOverflow,
                        Witness::Violated {
                            expr: format!(
                                "46ek <= max val_3 over non-prime-power members \
                                 (also 46ek {looser} 2f = {})",
                                2 * f
                            ),
                            lhs: nat(lhs),
                            relation: Relation::Le,
                            rhs: nat(u64::from(max)),
                        },
                    );
                }
            }
            LieFamily::Ree => {
                if k == 3 {
                    // the 3-part q₀⁵ = q^{5/3} of a degree is at most q·f
                    return out(
                        ReasonCode::Ree2G2K3Bound,
                        Witness::Violated {
                            expr: "3^(2f) < f^3".into(),
                            lhs: NatInt::from(3u32).pow(2 * f),
                            relation: Relation::Lt,
                            rhs: NatInt::from(f).pow(3),
                        },
                    );
                }
            }
            _ => {}
        }
        Ok(Verdict::Survives)
    }

    /// `q₀^k ≥ θ/3`, i.e. `2ek + 1 ≥ f`; in strict mode also `ek` must be the
    /// 3-adic valuation of a non-prime-power member.
    fn unipotent_3part(&self, e: u32, k: u32) -> Option<Verdict> {
        let f = self.f();
        let lhs = 2 * u64::from(e) * u64::from(k) + 1;
        if lhs < u64::from(f) {
            return Some(Verdict::RuledOut {
                reason: ReasonCode::Unipotent3PartBound,
                witness: Witness::Violated {
                    expr: "2ek + 1 >= f".into(),
                    lhs: lhs.into(),
                    relation: Relation::Ge,
                    rhs: f.into(),
                },
            });
        }
        if self.strict && !self.mixed_v3.contains(&(e * k)) {
            return Some(Verdict::RuledOut {
                reason: ReasonCode::Unipotent3PartBound,
                witness: Witness::NoMatchingValuation {
                    expr: "ek is the 3-adic valuation of a non-prime-power member".into(),
                    exponent: e * k,
                    available: self.mixed_v3.clone(),
                },
            });
        }
        None
    }

    fn alternating(&self, n: u32, k: u32) -> Result<Verdict, EliminationError> {
        let out = |reason, witness| Ok(Verdict::RuledOut { reason, witness });
        let f = self.f();
        match n {
            5 => {
                let value = NatInt::from(A5_EXTENDIBLE_DEGREE).pow(k);
                let q3 = self.spec.params().q_cubed();
                if value != q3 {
                    return out(
                        ReasonCode::PrimePowerMismatch,
                        Witness::Violated {
                            expr: "5^k = q^3".into(),
                            lhs: value,
                            relation: Relation::Eq,
                            rhs: q3,
                        },
                    );
                }
            }
            6 => {
                // 9^k is a power of 3, so it must be q³
                let v3 = exactmath::val_p(&NatInt::from(A6_EXTENDIBLE_DEGREE).pow(k), 3)
                    .expect("positive");
                if v3 != 3 * f {
                    return out(
                        ReasonCode::A6Exponent,
                        Witness::Violated {
                            expr: "2k = 3f".into(),
                            lhs: v3.into(),
                            relation: Relation::Eq,
                            rhs: (3 * f).into(),
                        },
                    );
                }
            }
            7 => {
                let value = NatInt::from(A7_EXTENDIBLE_DEGREE).pow(k);
                if value < self.smallest_even {
                    return out(
                        ReasonCode::A7Bound,
                        Witness::Violated {
                            expr: "6^k >= θ(q^2 - 1)/3".into(),
                            lhs: value,
                            relation: Relation::Ge,
                            rhs: self.smallest_even.clone(),
                        },
                    );
                }
            }
            _ => {
                let w = alt_16_witness(n)?;
                let expr = format!("χ_({},{})(1) of A_{n}", w.r, w.s);
                if let Some(w) = self.two_part_test(expr, w.degree) {
                    return out(ReasonCode::SixteenDivisibility, w);
                }
            }
        }
        Ok(Verdict::Survives)
    }

    fn sporadic(&self, name: &str, k: u32) -> Result<Verdict, EliminationError> {
        let fact = sporadic_fact(name)?;
        let out = |reason, witness| Ok(Verdict::RuledOut { reason, witness });
        if !fact.exceptional {
            let expr = format!("witness degree of {}", fact.name);
            if let Some(w) = self.two_part_test(expr, fact.witness_degrees[0].clone()) {
                return out(ReasonCode::SixteenDivisibility, w);
            }
            return Ok(Verdict::Survives);
        }
        let [a, b] = &fact.witness_degrees[..] else {
            panic!("exceptional record {} needs two witness degrees", fact.name);
        };
        if k >= 2 {
            // two copies give a degree divisible by a·b
            let expr = format!("{a}·{b} from two copies of {}", fact.name);
            if let Some(w) = self.two_part_test(expr, a * b) {
                return out(ReasonCode::SporadicWitness, w);
            }
        } else if *a < self.smallest_even {
            return out(
                ReasonCode::EvenDegreeTooSmall,
                Witness::Violated {
                    expr: format!("{a} >= θ(q^2 - 1)/3"),
                    lhs: a.clone(),
                    relation: Relation::Ge,
                    rhs: self.smallest_even.clone(),
                },
            );
        }
        Ok(Verdict::Survives)
    }
}

pub fn eliminate_candidate(
    candidate: &SimpleCandidate,
    spec: &AlmostSimpleSpec,
    k: u32,
) -> Result<EliminationOutcome, EliminationError> {
    EliminationContext::new(spec, false).eliminate(candidate, k)
}

/// Lie-type candidates solving `e·N·k = 3f` with `p = 3`, `k ∈ {1, 3}`, each
/// also emitted with `k = 2`; then `A_5 … A_{n_max}`, the sporadic groups and
/// the Tits group with `k = 1, 2, 3`. Output is in canonical order.
pub fn enumerate_candidates(
    spec: &AlmostSimpleSpec,
    bounds: Bounds,
) -> Result<Vec<(SimpleCandidate, u32)>, EliminationError> {
    let f = spec.f();
    if bounds.m_max < 20 || bounds.n_max < 8 {
        return Err(EliminationError::BoundsTooSmall(format!(
            "need m_max >= 20 and n_max >= 8 (got {} and {})",
            bounds.m_max, bounds.n_max
        )));
    }
    // the smallest exponent at rank m_max + 1 is the PSL one
    let next = u64::from(bounds.m_max + 1) * u64::from(bounds.m_max) / 2;
    if next <= 3 * u64::from(f) {
        return Err(EliminationError::BoundsTooSmall(format!(
            "N(m_max + 1) = {next} does not exceed 3f = {}",
            3 * f
        )));
    }

    let mut families: Vec<LieFamily> = (2..=bounds.m_max)
        .flat_map(LieFamily::rank_families)
        .collect();
    families.extend(LieFamily::exceptional_families());
    let mut lie = Vec::new();
    for family in families {
        let n = steinberg_exponent(&family)?;
        for k in [1, 3] {
            if (3 * f) % (n * k) != 0 {
                continue;
            }
            let e = 3 * f / (n * k);
            // inadmissible solutions (PSL_2(3), ²G₂(3)) are not simple groups
            let Ok(candidate) = SimpleCandidate::lie(family, 3, e) else {
                continue;
            };
            lie.push((candidate.clone(), k));
            lie.push((candidate, 2));
        }
    }
    lie.sort();
    lie.dedup();

    let mut out = lie;
    for n in 5..=bounds.n_max {
        for k in 1..=3 {
            out.push((SimpleCandidate::alternating(n)?, k));
        }
    }
    for fact in sporadic_table() {
        let candidate = SimpleCandidate::sporadic(&fact.name)?;
        for k in 1..=3 {
            out.push((candidate.clone(), k));
        }
    }
    Ok(out)
}

/// Applies every test to every enumerated candidate.
pub fn eliminate_all(
    ctx: &EliminationContext<'_>,
    bounds: Bounds,
) -> Result<Vec<EliminationOutcome>, EliminationError> {
    enumerate_candidates(ctx.spec(), bounds)?
        .iter()
        .map(|(c, k)| ctx.eliminate(c, *k))
        .collect()
}

pub fn run_elimination(
    spec: &AlmostSimpleSpec,
) -> Result<Vec<EliminationOutcome>, EliminationError> {
    run_elimination_with(spec, Bounds::default(), false)
}

/// Fails with `TheoremViolation` unless the only survivor is ²G₂(q) with `k = 1`.
pub fn run_elimination_with(
    spec: &AlmostSimpleSpec,
    bounds: Bounds,
    strict: bool,
) -> Result<Vec<EliminationOutcome>, EliminationError> {
    let ctx = EliminationContext::new(spec, strict);
    let outcomes = eliminate_all(&ctx, bounds)?;
    let survivors: Vec<&EliminationOutcome> = outcomes.iter().filter(|o| o.survives()).collect();
    let expected = SimpleCandidate::LieType {
        family: LieFamily::Ree,
        p: 3,
        e: spec.f(),
    };
    match survivors[..] {
        [only] if only.candidate == expected && only.k == 1 => Ok(outcomes),
        _ => Err(EliminationError::TheoremViolation {
            survivors: survivors.iter().map(|o| o.label()).collect(),
        }),
    }
}
