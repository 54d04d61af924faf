use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::engine::{eliminate_all, Bounds, EliminationContext};
use super::EliminationError;
use crate::exactmath::{divisors, NatInt};
use crate::lie_data::{LieFamily, SimpleCandidate};
use crate::ree::{
    cd_superset, certified_degrees, gcd_identities, is_isolated, max_two_part,
    maximal_index_filter, prime_power_degrees, smallest_even_degree, AlmostSimpleSpec,
    DegreeFormulas, DegreeSet, FilterWitness, MaxSubgroupTag, ReeDegreeTable, ReeParams,
};

/// Big integers are written as decimal strings so no JSON consumer rounds them.
pub fn big(n: &NatInt) -> Value {
    Value::String(n.to_string())
}

fn set_json(set: &DegreeSet) -> Value {
    Value::Array(set.iter().map(big).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// Outcome of one named check at one `(f, d)`; `d` is `None` for checks that
/// depend on `f` alone. `detail` states the decisive relation with both sides.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub check_id: String,
    pub f: u32,
    pub d: Option<u32>,
    pub status: Status,
    pub detail: String,
    pub witness: Value,
    pub anchor: String,
}

impl CheckReport {
    fn new(
        check_id: &str,
        f: u32,
        d: Option<u32>,
        ok: bool,
        detail: String,
        witness: Value,
        anchor: &str,
    ) -> Self {
        CheckReport {
            check_id: check_id.to_string(),
            f,
            d,
            status: Status::from_bool(ok),
            detail,
            witness,
            anchor: anchor.to_string(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check_id": self.check_id,
            "f": self.f,
            "d": self.d,
            "status": self.status.as_str(),
            "detail": self.detail,
            "witness": self.witness,
            "anchor": self.anchor,
        })
    }
}

/// Evaluates `formulas` at `params` and checks the table: eleven distinct
/// values, line 1 is 1, line 9 is `q³`, line 10 is `q³+1`, and every value
/// divides `|²G₂(q)|`. Returns the table when evaluation succeeded.
pub fn degree_table_check(
    formulas: &DegreeFormulas,
    params: &ReeParams,
) -> (CheckReport, Option<ReeDegreeTable>) {
    const ID: &str = "ree.degree-table";
    const ANCHOR: &str = "chi(1) | q^3(q^3+1)(q-1); line 10 = q^3+1";
    let f = params.f();
    let table = match formulas.evaluate(params) {
        Ok(t) => t,
        Err(e) => {
            let report = CheckReport::new(
                ID,
                f,
                None,
                false,
                e.to_string(),
                json!({ "error": e.to_string() }),
                ANCHOR,
            );
            return (report, None);
        }
    };
    let order = params.group_order();
    let q3 = params.q_cubed();
    let mut problems = Vec::new();
    let mut lines = Vec::new();
    for (formula, entry) in formulas.lines().iter().zip(table.entries()) {
        let divides = (&order % &entry.value).is_zero();
        if !divides {
            problems.push(format!(
                "line {}: {} does not divide |G| = {}",
                entry.line, entry.value, order
            ));
        }
        let extends = if entry.extends_to_aut {
            " (extends)"
        } else {
            ""
        };
        lines.push(json!({
            "line": entry.line,
            "formula": formula.to_string(),
            "value": big(&entry.value),
            "extends": entry.extends_to_aut,
            "divides_order": divides,
            "display": format!("line {}: {}{extends}", entry.line, entry.value),
        }));
    }
    let distinct: std::collections::BTreeSet<&NatInt> = table.values().collect();
    if distinct.len() != 11 {
        problems.push(format!("{} distinct values, expected 11", distinct.len()));
    }
    let expected = [(1u8, NatInt::one()), (9, q3.clone()), (10, &q3 + 1u32)];
    for (line, want) in &expected {
        let got = &table.entry(*line).value;
        if got != want {
            problems.push(format!("line {line}: {got} != {want}"));
        }
    }
    let ok = problems.is_empty();
    let detail = if ok {
        format!(
            "11 distinct values, each dividing |G| = {order}; line 10 = q^3 + 1 = {}",
            &q3 + 1u32
        )
    } else {
        problems.join("; ")
    };
    let report = CheckReport::new(
        ID,
        f,
        None,
        ok,
        detail,
        json!({ "group_order": big(&order), "lines": lines, "problems": problems }),
        ANCHOR,
    );
    (report, Some(table))
}

/// Certified degrees lie inside the superset; both sets are listed.
pub fn degree_sets_check(spec: &AlmostSimpleSpec) -> CheckReport {
    let certified = certified_degrees(spec);
    let superset = cd_superset(spec);
    let ok = certified.is_subset(&superset);
    CheckReport::new(
        "ree.degree-sets",
        spec.f(),
        Some(spec.d()),
        ok,
        format!(
            "{} certified members, {} superset members, certified within superset: {ok}",
            certified.len(),
            superset.len()
        ),
        json!({ "certified": set_json(&certified), "superset": set_json(&superset) }),
        "(q^3+1)d in cd(H)",
    )
}

pub fn gcd_check(params: &ReeParams) -> CheckReport {
    let ids = gcd_identities(params);
    let ok = ids.iter().all(|g| g.holds());
    let failing: Vec<String> = ids
        .iter()
        .filter(|g| !g.holds())
        .map(|g| format!("{} = {} != {}", g.label, g.gcd, g.expected))
        .collect();
    let rows: Vec<Value> = ids
        .iter()
        .map(|g| {
            json!({
                "pair": g.label,
                "left": big(&g.left),
                "right": big(&g.right),
                "gcd": big(&g.gcd),
                "expected": big(&g.expected),
            })
        })
        .collect();
    CheckReport::new(
        "ree.gcd-identities",
        params.f(),
        None,
        ok,
        if ok {
            "all six gcds take their expected values".into()
        } else {
            failing.join("; ")
        },
        json!({ "pairs": rows }),
        "(q-1, q+1) = 2",
    )
}

/// Unique prime-power member `q³`, maximal 2-part 8, smallest even member
/// `θ(q²−1)/3`, and `q³` isolated.
pub fn degree_lemma_checks(spec: &AlmostSimpleSpec) -> Vec<CheckReport> {
    let params = spec.params();
    let (f, d) = (spec.f(), Some(spec.d()));
    let superset = cd_superset(spec);
    let q3 = params.q_cubed();
    let mut out = Vec::new();

    let pp = prime_power_degrees(&superset);
    let pp_values: Vec<NatInt> = pp.iter().cloned().collect();
    let ok = pp_values == [q3.clone()];
    out.push(CheckReport::new(
        "ree.prime-power-degree",
        f,
        d,
        ok,
        format!(
            "prime-power members {:?} vs {{q^3}} = {{{q3}}}",
            pp_values.iter().map(|v| v.to_string()).collect::<Vec<_>>()
        ),
        json!({ "prime_powers": set_json(&pp), "q_cubed": big(&q3) }),
        "the only nontrivial prime-power degree is q^3",
    ));

    let two = max_two_part(&superset);
    out.push(CheckReport::new(
        "ree.max-two-part",
        f,
        d,
        two == NatInt::from(8u32),
        format!("max 2-part {two} vs 8"),
        json!({ "max_two_part": big(&two), "expected": "8" }),
        "2-part of every degree divides 2^3",
    ));

    let want = params.smallest_even_value();
    let (ok, got) = match smallest_even_degree(&superset) {
        Ok(v) => (v == want, big(&v)),
        Err(_) => (false, Value::Null),
    };
    out.push(CheckReport::new(
        "ree.smallest-even-degree",
        f,
        d,
        ok,
        format!("smallest even member {got} vs θ(q^2 - 1)/3 = {want}"),
        json!({ "smallest_even": got, "expected": big(&want) }),
        "θ(q^2-1)/3",
    ));

    let isolated = is_isolated(&q3, &superset).unwrap_or(false);
    let blockers: Vec<Value> = superset
        .iter()
        .filter(|y| {
            **y > NatInt::one() && **y != q3 && ((&q3 % *y).is_zero() || (*y % &q3).is_zero())
        })
        .map(big)
        .collect();
    out.push(CheckReport::new(
        "ree.q3-isolated",
        f,
        d,
        isolated,
        format!(
            "q^3 = {q3} isolated: {isolated}, {} related members",
            blockers.len()
        ),
        json!({ "q_cubed": big(&q3), "related_members": blockers }),
        "q^3 is isolated in cd(H)",
    ));
    out
}

/// Exactly the parabolic row, of index `q³+1`, divides a superset member.
pub fn maximal_filter_check(spec: &AlmostSimpleSpec) -> CheckReport {
    let rows = maximal_index_filter(spec);
    let q3_plus_1 = spec.params().q_cubed() + 1u32;
    let survivors: Vec<MaxSubgroupTag> = rows
        .iter()
        .filter(|r| r.surviving)
        .map(|r| r.row.tag)
        .collect();
    let parabolic_index_ok = rows
        .iter()
        .any(|r| r.row.tag == MaxSubgroupTag::Parabolic && r.row.index == q3_plus_1);
    let ok = survivors == [MaxSubgroupTag::Parabolic] && parabolic_index_ok;
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            let witness = match &r.witness {
                FilterWitness::Divides { member } => json!({ "divides": big(member) }),
                FilterWitness::NoMultiple {
                    index_v3,
                    max_v3_mixed,
                    index_divides_prime_power,
                } => json!({
                    "index_v3": index_v3,
                    "max_v3_mixed": max_v3_mixed,
                    "index_divides_prime_power": index_divides_prime_power,
                }),
            };
            json!({
                "subgroup": r.row.tag.to_string(),
                "order": big(&r.row.order),
                "index": big(&r.row.index),
                "surviving": r.surviving,
                "witness": witness,
            })
        })
        .collect();
    CheckReport::new(
        "ree.maximal-filter",
        spec.f(),
        Some(spec.d()),
        ok,
        format!(
            "surviving rows [{}] vs [{}] of index q^3 + 1 = {q3_plus_1}",
            survivors
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join(", "),
            MaxSubgroupTag::Parabolic
        ),
        json!({ "rows": json_rows }),
        "K = [q^3]:C_(q-1) and chi(1) = (q^3+1)a",
    )
}

/// Runs the elimination and checks that the only survivor is ²G₂(q) with
/// `k = 1` and that every witness re-verifies.
pub fn elimination_check(
    spec: &AlmostSimpleSpec,
    bounds: Bounds,
    strict: bool,
) -> Result<CheckReport, EliminationError> {
    let ctx = EliminationContext::new(spec, strict);
    let outcomes = eliminate_all(&ctx, bounds)?;
    let expected = SimpleCandidate::LieType {
        family: LieFamily::Ree,
        p: 3,
        e: spec.f(),
    };
    let survivors: Vec<String> = outcomes
        .iter()
        .filter(|o| o.survives())
        .map(|o| o.label())
        .collect();
    let unique = matches!(
        &outcomes.iter().filter(|o| o.survives()).collect::<Vec<_>>()[..],
        [only] if only.candidate == expected && only.k == 1
    );
    let bad_witnesses: Vec<String> = outcomes
        .iter()
        .filter(|o| o.witness().is_some_and(|w| !w.reverify(ctx.superset())))
        .map(|o| o.label())
        .collect();
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for o in &outcomes {
        *counts
            .entry(o.reason().map_or("survives", |r| r.as_str()))
            .or_default() += 1;
    }
    let ok = unique && bad_witnesses.is_empty();
    Ok(CheckReport::new(
        "step2.elimination",
        spec.f(),
        Some(spec.d()),
        ok,
        format!(
            "survivors [{}] vs [{expected}^1]; {} candidates, {} unverifiable witnesses",
            survivors.join(", "),
            outcomes.len(),
            bad_witnesses.len()
        ),
        json!({
            "strict": strict,
            "m_max": bounds.m_max,
            "n_max": bounds.n_max,
            "survivors": survivors,
            "reason_counts": counts,
            "unverifiable": bad_witnesses,
            "outcomes": outcomes.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
        }),
        "|S|_p^k = 3^{3f}",
    ))
}

/// The three solvable-quotient contradictions. Only meaningful for `d ≥ 2`.
pub fn solvable_quotient_checks(
    spec: &AlmostSimpleSpec,
) -> Result<Vec<CheckReport>, EliminationError> {
    if spec.d() == 1 {
        return Err(EliminationError::NotApplicable(
            "the solvable-quotient argument assumes d != 1".into(),
        ));
    }
    let params = spec.params();
    let (f, d) = (spec.f(), Some(spec.d()));
    let superset = cd_superset(spec);
    let q3 = params.q_cubed();
    let f_sq_minus_1 = NatInt::from(f) * f - 1u32;
    let mut out = Vec::new();

    let line11 = &spec.table().entry(11).value;
    let products: Vec<(u64, NatInt, bool)> = divisors(u64::from(spec.d()))
        .into_iter()
        .map(|a| {
            let v = &q3 * line11 * a;
            let member = superset.contains(&v);
            (a, v, member)
        })
        .collect();
    let members: Vec<String> = products
        .iter()
        .filter(|p| p.2)
        .map(|p| format!("a = {}: {}", p.0, p.1))
        .collect();
    out.push(CheckReport::new(
        "step1.gallagher-product",
        f,
        d,
        members.is_empty(),
        if members.is_empty() {
            format!(
                "q^3·(line 11)·a in superset for none of {} divisors a",
                products.len()
            )
        } else {
            format!("in superset: {}", members.join("; "))
        },
        json!({
            "products": products.iter().map(|(a, v, m)| json!({
                "a": a, "value": big(v), "member": m,
            })).collect::<Vec<_>>(),
        }),
        "q^3(q-1)(q+1)(q+sqrt(3q)+1)a",
    ));

    let lhs = NatInt::from(3u32).pow(3 * f);
    out.push(CheckReport::new(
        "step1.frobenius-q3",
        f,
        d,
        lhs > f_sq_minus_1,
        format!("3^(3f) = {lhs} > f^2 - 1 = {f_sq_minus_1}"),
        json!({ "lhs": big(&lhs), "relation": ">", "rhs": big(&f_sq_minus_1) }),
        "3^{3f} <= f^2-1",
    ));

    let one = NatInt::one();
    let min = superset.iter().find(|v| **v > one).cloned();
    let ok = min.as_ref().is_some_and(|m| *m > f_sq_minus_1);
    out.push(CheckReport::new(
        "step1.frobenius-r3",
        f,
        d,
        ok,
        format!(
            "min nontrivial member {} > f^2 - 1 = {f_sq_minus_1}",
            min.as_ref().map_or("none".into(), |m| m.to_string())
        ),
        json!({
            "lhs": min.as_ref().map_or(Value::Null, big),
            "relation": ">",
            "rhs": big(&f_sq_minus_1),
        }),
        "|G:F| <= r^a - 1 <= f^2-1",
    ));
    Ok(out)
}

/// No `1 ≤ i < f` with `3^i ≡ ±1 (mod (q−1)/2)`.
pub fn eta_inertia_check(params: &ReeParams) -> CheckReport {
    let f = params.f();
    let modulus = (params.q() - 1u32) / 2u32;
    let minus_one = &modulus - 1u32;
    let three = NatInt::from(3u32);
    let residues: Vec<NatInt> = (1..f)
        .map(|i| three.modpow(&NatInt::from(i), &modulus))
        .collect();
    let hits: Vec<u32> = residues
        .iter()
        .zip(1..)
        .filter(|(r, _)| r.is_one() || **r == minus_one)
        .map(|(_, i)| i)
        .collect();
    CheckReport::new(
        "lemma.inertia",
        f,
        None,
        hits.is_empty(),
        format!(
            "3^i mod {modulus} for 1 <= i < {f} avoids {{1, {minus_one}}}: {}",
            hits.is_empty()
        ),
        json!({
            "modulus": big(&modulus),
            "forbidden": [ "1", big(&minus_one) ],
            "residues": residues.iter().map(big).collect::<Vec<_>>(),
            "hits": hits,
        }),
        "3^i ≡ ±1 (mod (q-1)/2)",
    )
}

/// `(q³+1)(q−1)/2` divides no superset member. Tagged with whether
/// `gcd(f, 3) = 1`, the hypothesis of the surrounding argument.
pub fn step3_divisibility_check(spec: &AlmostSimpleSpec) -> CheckReport {
    let params = spec.params();
    let value = (params.q_cubed() + 1u32) * (params.q() - 1u32) / 2u32;
    let superset = cd_superset(spec);
    let hit = superset.first_multiple_of(&value).cloned();
    CheckReport::new(
        "step3.divisibility",
        spec.f(),
        Some(spec.d()),
        hit.is_none(),
        match &hit {
            None => format!("(q^3 + 1)(q - 1)/2 = {value} divides no member"),
            Some(m) => format!("(q^3 + 1)(q - 1)/2 = {value} divides member {m}"),
        },
        json!({
            "value": big(&value),
            "divides_member": hit.as_ref().map_or(Value::Null, big),
            "f_coprime_to_3": spec.f().gcd(&3) == 1,
        }),
        "divisible by (q^3+1)(q-1)/2",
    )
}

/// `(q³+1)d` is certified, line 10 is `q³+1`, and `(q³+1)s` is not a
/// superset member for any divisor `s > d` of `f`.
pub fn final_degree_check(spec: &AlmostSimpleSpec) -> CheckReport {
    let params = spec.params();
    let q3_plus_1 = params.q_cubed() + 1u32;
    let certified = certified_degrees(spec);
    let superset = cd_superset(spec);
    let top = &q3_plus_1 * spec.d();
    let certified_ok = certified.contains(&top);
    let line10_ok = spec.table().entry(10).value == q3_plus_1;
    let larger: Vec<(u64, NatInt, bool)> = divisors(u64::from(spec.f()))
        .into_iter()
        .filter(|&s| s > u64::from(spec.d()))
        .map(|s| {
            let v = &q3_plus_1 * s;
            let member = superset.contains(&v);
            (s, v, member)
        })
        .collect();
    let clash: Vec<String> = larger
        .iter()
        .filter(|x| x.2)
        .map(|x| format!("s = {}: {}", x.0, x.1))
        .collect();
    let ok = certified_ok && line10_ok && clash.is_empty();
    let mut parts = vec![format!("(q^3 + 1)d = {top} certified: {certified_ok}")];
    if !line10_ok {
        parts.push(format!(
            "line 10 = {} != q^3 + 1 = {q3_plus_1}",
            spec.table().entry(10).value
        ));
    }
    parts.push(if clash.is_empty() {
        format!("(q^3 + 1)s absent for all {} divisors s > d", larger.len())
    } else {
        format!("present: {}", clash.join("; "))
    });
    CheckReport::new(
        "final.degree",
        spec.f(),
        Some(spec.d()),
        ok,
        parts.join("; "),
        json!({
            "q3_plus_1_times_d": big(&top),
            "certified": certified_ok,
            "line10_is_q3_plus_1": line10_ok,
            "larger_divisors": larger.iter().map(|(s, v, m)| json!({
                "s": s, "value": big(v), "member": m,
            })).collect::<Vec<_>>(),
        }),
        "degree (q^3+1)s",
    )
}
