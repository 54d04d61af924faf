use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::Zero;

use super::LieError;
use crate::exactmath::{part_p, NatInt};

/// Embedded table: name, exceptional flag, witness degrees, group order.
pub const SPORADIC_TABLE: &str = include_str!("../../data/sporadic.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SporadicFact {
    pub name: String,
    /// No irreducible degree divisible by 16 (J₁ and M₂₂).
    pub exceptional: bool,
    pub witness_degrees: Vec<NatInt>,
    pub has_degree_div_16: bool,
    pub order: NatInt,
}

fn parse_table(text: &str) -> Result<Vec<SporadicFact>, String> {
    let sixteen = NatInt::from(16u32);
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split_whitespace().collect();
        let [name, flag, degrees, order] = cols[..] else {
            return Err(format!("line {}: expected 4 columns", i + 1));
        };
        let exceptional = match flag {
            "yes" => true,
            "no" => false,
            _ => return Err(format!("line {}: bad flag {flag:?}", i + 1)),
        };
        let witness_degrees = degrees
            .split(',')
            .map(|d| {
                d.parse::<NatInt>()
                    .map_err(|e| format!("line {}: {e}", i + 1))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let order: NatInt = order.parse().map_err(|e| format!("line {}: {e}", i + 1))?;
        for w in &witness_degrees {
            if !(&order % w).is_zero() {
                return Err(format!("{name}: witness {w} does not divide the order"));
            }
            if w.is_odd() {
                return Err(format!("{name}: witness {w} is odd"));
            }
        }
        let has_degree_div_16 = !exceptional;
        for w in &witness_degrees {
            let divisible = (w % &sixteen).is_zero();
            if divisible != has_degree_div_16 {
                return Err(format!(
                    "{name}: witness {w} has 2-part {} inconsistent with the exceptional flag",
                    part_p(w, 2).expect("positive")
                ));
            }
        }
        out.push(SporadicFact {
            name: name.to_string(),
            exceptional,
            witness_degrees,
            has_degree_div_16,
            order,
        });
    }
    Ok(out)
}

/// The 26 sporadic groups followed by the Tits group.
pub fn sporadic_table() -> &'static [SporadicFact] {
    static TABLE: OnceLock<Vec<SporadicFact>> = OnceLock::new();
    TABLE.get_or_init(|| {
        parse_table(SPORADIC_TABLE).unwrap_or_else(|e| panic!("sporadic table: {e}"))
    })
}

pub fn sporadic_fact(name: &str) -> Result<&'static SporadicFact, LieError> {
    let key = match name {
        "2F4(2)'" => "Tits",
        "F3+" => "Fi24'",
        "O'N" => "ON",
        other => other,
    };
    sporadic_table()
        .iter()
        .find(|f| f.name == key)
        .ok_or_else(|| LieError::UnknownSporadic(name.to_string()))
}
