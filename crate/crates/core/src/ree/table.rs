use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{ReeError, ReeParams};
use crate::exactmath::NatInt;

/// The shipped degree formulas, one line per row of the degree table.
pub const STANDARD_FORMULAS: &str = include_str!("../../data/ree_degrees.txt");

/// Lines whose characters extend to Aut(²G₂(q)).
pub const EXTENDIBLE_LINES: [u8; 5] = [2, 3, 4, 5, 9];

/// `a·q + b·θ + c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearFactor {
    pub q: i64,
    pub theta: i64,
    pub constant: i64,
}

impl LinearFactor {
    fn eval(&self, params: &ReeParams) -> BigInt {
        BigInt::from(self.q) * BigInt::from(params.q().clone())
            + BigInt::from(self.theta) * BigInt::from(params.theta().clone())
            + BigInt::from(self.constant)
    }
}

impl fmt::Display for LinearFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (coeff, sym) in [(self.q, "q"), (self.theta, "θ")] {
            match coeff {
                0 => {}
                1 => terms.push(sym.to_string()),
                -1 => terms.push(format!("-{sym}")),
                c => terms.push(format!("{c}{sym}")),
            }
        }
        if self.constant != 0 || terms.is_empty() {
            terms.push(self.constant.to_string());
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            match t.strip_prefix('-') {
                Some(rest) => out.push_str(&format!(" - {rest}")),
                None => out.push_str(&format!(" + {t}")),
            }
        }
        if terms.len() > 1 {
            write!(f, "({out})")
        } else {
            write!(f, "{out}")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeFormula {
    pub line: u8,
    pub extends_to_aut: bool,
    pub divisor: u32,
    pub factors: Vec<LinearFactor>,
}

impl DegreeFormula {
    pub fn evaluate(&self, params: &ReeParams) -> Result<NatInt, ReeError> {
        let mut product = BigInt::from(1);
        for (i, factor) in self.factors.iter().enumerate() {
            let v = factor.eval(params);
            if !v.is_positive() {
                return Err(ReeError::NonPositiveFactor {
                    line: self.line,
                    factor: i + 1,
                });
            }
            product *= v;
        }
        let (quot, rem) = product.div_rem(&BigInt::from(self.divisor));
        if !rem.is_zero() {
            return Err(ReeError::InexactDivision {
                line: self.line,
                divisor: self.divisor,
            });
        }
        Ok(quot.to_biguint().expect("product of positive factors"))
    }
}

impl fmt::Display for DegreeFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            write!(f, "1")?;
        }
        let mut i = 0;
        while i < self.factors.len() {
            let run = self.factors[i..]
                .iter()
                .take_while(|x| **x == self.factors[i])
                .count();
            write!(f, "{}", self.factors[i])?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        if self.divisor != 1 {
            write!(f, "/{}", self.divisor)?;
        }
        Ok(())
    }
}

/// The eleven degree formulas, in line order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeFormulas {
    lines: Vec<DegreeFormula>,
}

impl DegreeFormulas {
    pub fn standard() -> Self {
        Self::parse(STANDARD_FORMULAS).expect("shipped degree table parses")
    }

    /// Parses the plain-text table format of `data/ree_degrees.txt`.
    pub fn parse(text: &str) -> Result<Self, ReeError> {
        let mut lines: Vec<DegreeFormula> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let at = idx + 1;
            let err = |msg: String| ReeError::Parse { at, msg };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut cols = content.split_whitespace();
            let line: u8 = cols
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| err("bad line number".into()))?;
            let extends_to_aut = match cols.next() {
                Some("yes") => true,
                Some("no") => false,
                other => return Err(err(format!("expected yes/no, got {other:?}"))),
            };
            let divisor: u32 = cols
                .next()
                .and_then(|s| s.parse().ok())
                .filter(|&d| d > 0)
                .ok_or_else(|| err("bad divisor".into()))?;
            let factors = cols
                .map(|tok| {
                    let parts: Vec<i64> = tok
                        .split(',')
                        .map(|x| x.parse::<i64>())
                        .collect::<Result<_, _>>()
                        .map_err(|_| err(format!("bad factor {tok:?}")))?;
                    match parts[..] {
                        [q, theta, constant] => Ok(LinearFactor { q, theta, constant }),
                        _ => Err(err(format!("factor {tok:?} needs three coefficients"))),
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            if line as usize != lines.len() + 1 {
                return Err(err(format!(
                    "expected line {}, found line {line}",
                    lines.len() + 1
                )));
            }
            lines.push(DegreeFormula {
                line,
                extends_to_aut,
                divisor,
                factors,
            });
        }
        if lines.len() != 11 {
            return Err(ReeError::Parse {
                at: text.lines().count(),
                msg: format!("expected 11 table lines, found {}", lines.len()),
            });
        }
        Ok(DegreeFormulas { lines })
    }

    pub fn lines(&self) -> &[DegreeFormula] {
        &self.lines
    }

    pub fn evaluate(&self, params: &ReeParams) -> Result<ReeDegreeTable, ReeError> {
        let entries = self
            .lines
            .iter()
            .map(|formula| {
                Ok(DegreeEntry {
                    line: formula.line,
                    value: formula.evaluate(params)?,
                    extends_to_aut: formula.extends_to_aut,
                })
            })
            .collect::<Result<Vec<_>, ReeError>>()?;
        Ok(ReeDegreeTable {
            params: params.clone(),
            entries,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeEntry {
    pub line: u8,
    pub value: NatInt,
    pub extends_to_aut: bool,
}

impl DegreeEntry {
    /// Invariant under every field automorphism: the trivial character and the
    /// characters extending to Aut(²G₂(q)).
    pub fn is_invariant(&self) -> bool {
        self.line == 1 || self.extends_to_aut
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReeDegreeTable {
    params: ReeParams,
    entries: Vec<DegreeEntry>,
}

impl ReeDegreeTable {
    pub fn params(&self) -> &ReeParams {
        &self.params
    }

    pub fn entries(&self) -> &[DegreeEntry] {
        &self.entries
    }

    /// Entry for a 1-based table line.
    pub fn entry(&self, line: u8) -> &DegreeEntry {
        &self.entries[line as usize - 1]
    }

    pub fn values(&self) -> impl Iterator<Item = &NatInt> {
        self.entries.iter().map(|e| &e.value)
    }
}

/// Evaluates the shipped formulas. Panics if a division is inexact, which
/// would mean the shipped table is wrong.
pub fn ree_degree_table(params: &ReeParams) -> ReeDegreeTable {
    DegreeFormulas::standard()
        .evaluate(params)
        .unwrap_or_else(|e| panic!("shipped degree table is broken: {e}"))
}
