use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::{sporadic_fact, LieError};
use crate::exactmath::{cyclotomic_eval, is_prime_u64, NatInt};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Families of simple groups of Lie type with their rank parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LieFamily {
    /// `PSL_m`
    Psl {
        m: u32,
    },
    /// `PSU_m`
    Psu {
        m: u32,
    },
    /// `PSp_{2m}`
    Psp {
        m: u32,
    },
    /// `PΩ_{2m+1}`
    OmegaOdd {
        m: u32,
    },
    /// `PΩ^ε_{2m}`
    OmegaEven {
        m: u32,
        sign: Sign,
    },
    /// `²B₂`
    Suzuki,
    /// `³D₄`
    TrialityD4,
    E6 {
        sign: Sign,
    },
    E7,
    E8,
    F4,
    /// `²F₄`
    TwistedF4,
    G2,
    /// `²G₂`
    Ree,
}

impl LieFamily {
    /// Every family, with rank-parametrised ones instantiated at `m`; rank
    /// families whose minimum rank exceeds `m` are skipped.
    pub fn rank_families(m: u32) -> Vec<LieFamily> {
        let mut out = Vec::new();
        if m >= 2 {
            out.push(LieFamily::Psl { m });
            out.push(LieFamily::Psp { m });
        }
        if m >= 3 {
            out.push(LieFamily::Psu { m });
            out.push(LieFamily::OmegaOdd { m });
        }
        if m >= 4 {
            out.push(LieFamily::OmegaEven {
                m,
                sign: Sign::Plus,
            });
            out.push(LieFamily::OmegaEven {
                m,
                sign: Sign::Minus,
            });
        }
        out
    }

    pub fn exceptional_families() -> [LieFamily; 10] {
        [
            LieFamily::Suzuki,
            LieFamily::TrialityD4,
            LieFamily::E6 { sign: Sign::Plus },
            LieFamily::E6 { sign: Sign::Minus },
            LieFamily::E7,
            LieFamily::E8,
            LieFamily::F4,
            LieFamily::TwistedF4,
            LieFamily::G2,
            LieFamily::Ree,
        ]
    }

    fn min_rank(&self) -> Option<u32> {
        match self {
            LieFamily::Psl { .. } => Some(2),
            LieFamily::Psu { .. } => Some(3),
            LieFamily::Psp { .. } => Some(2),
            LieFamily::OmegaOdd { .. } => Some(3),
            LieFamily::OmegaEven { .. } => Some(4),
            _ => None,
        }
    }

    pub fn rank(&self) -> Option<u32> {
        match *self {
            LieFamily::Psl { m }
            | LieFamily::Psu { m }
            | LieFamily::Psp { m }
            | LieFamily::OmegaOdd { m }
            | LieFamily::OmegaEven { m, .. } => Some(m),
            _ => None,
        }
    }

    fn check_rank(&self) -> Result<(), LieError> {
        match (self.rank(), self.min_rank()) {
            (Some(m), Some(min)) if m < min => Err(LieError::Inadmissible(format!(
                "{self} needs rank parameter m >= {min}"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for LieFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieFamily::Psl { m } => write!(f, "PSL_{m}"),
            LieFamily::Psu { m } => write!(f, "PSU_{m}"),
            LieFamily::Psp { m } => write!(f, "PSp_{}", 2 * m),
            LieFamily::OmegaOdd { m } => write!(f, "POmega_{}", 2 * m + 1),
            LieFamily::OmegaEven { m, sign } => write!(f, "POmega{sign}_{}", 2 * m),
            LieFamily::Suzuki => write!(f, "2B2"),
            LieFamily::TrialityD4 => write!(f, "3D4"),
            LieFamily::E6 { sign } => write!(f, "E6{sign}"),
            LieFamily::E7 => write!(f, "E7"),
            LieFamily::E8 => write!(f, "E8"),
            LieFamily::F4 => write!(f, "F4"),
            LieFamily::TwistedF4 => write!(f, "2F4"),
            LieFamily::G2 => write!(f, "G2"),
            LieFamily::Ree => write!(f, "2G2"),
        }
    }
}

/// `N` with `|S|_p = q₀^N`, the exponent of the Steinberg degree.
pub fn steinberg_exponent(family: &LieFamily) -> Result<u32, LieError> {
    family.check_rank()?;
    Ok(match *family {
        LieFamily::Psl { m } | LieFamily::Psu { m } => m * (m - 1) / 2,
        LieFamily::Psp { m } | LieFamily::OmegaOdd { m } => m * m,
        LieFamily::OmegaEven { m, .. } => m * (m - 1),
        LieFamily::Suzuki => 2,
        LieFamily::TrialityD4 => 12,
        LieFamily::E6 { .. } => 36,
        LieFamily::E7 => 63,
        LieFamily::E8 => 120,
        LieFamily::F4 => 24,
        LieFamily::TwistedF4 => 12,
        LieFamily::G2 => 6,
        LieFamily::Ree => 3,
    })
}

/// A candidate non-abelian simple composition factor `S` of the chief factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SimpleCandidate {
    LieType {
        family: LieFamily,
        p: u64,
        e: u32,
    },
    Alternating {
        n: u32,
    },
    Sporadic {
        name: String,
    },
    /// The Tits group ²F₄(2)′.
    Tits,
}

impl SimpleCandidate {
    pub fn lie(family: LieFamily, p: u64, e: u32) -> Result<Self, LieError> {
        let c = SimpleCandidate::LieType { family, p, e };
        c.check_admissible()?;
        Ok(c)
    }

    pub fn alternating(n: u32) -> Result<Self, LieError> {
        if n < 5 {
            return Err(LieError::Inadmissible(format!("A_{n} is not simple")));
        }
        Ok(SimpleCandidate::Alternating { n })
    }

    pub fn sporadic(name: &str) -> Result<Self, LieError> {
        let fact = sporadic_fact(name)?;
        if fact.name == "Tits" {
            return Ok(SimpleCandidate::Tits);
        }
        Ok(SimpleCandidate::Sporadic {
            name: fact.name.clone(),
        })
    }

    /// `q₀ = p^e` for Lie type.
    pub fn q0(&self) -> Option<NatInt> {
        match self {
            SimpleCandidate::LieType { p, e, .. } => Some(NatInt::from(*p).pow(*e)),
            _ => None,
        }
    }

    /// The conditions attached to each family: ranks, characteristic and the
    /// small-field exclusions.
    pub fn check_admissible(&self) -> Result<(), LieError> {
        let bad = |why: String| Err(LieError::Inadmissible(format!("{self}: {why}")));
        match self {
            SimpleCandidate::LieType { family, p, e } => {
                family.check_rank()?;
                if !is_prime_u64(*p) {
                    return bad(format!("{p} is not prime"));
                }
                if *e == 0 {
                    return bad("e must be positive".into());
                }
                let q = self.q0().expect("Lie type");
                let q_is = |v: u32| q == NatInt::from(v);
                match *family {
                    LieFamily::Psl { m } => {
                        if m == 2 && q < NatInt::from(5u32) {
                            return bad("PSL_2 needs q >= 5".into());
                        }
                        if (m == 3 || m == 4) && q_is(2) {
                            return bad("excluded small case".into());
                        }
                    }
                    LieFamily::Psu { m } => {
                        if (m == 3 || m == 4) && q_is(2) {
                            return bad("excluded small case".into());
                        }
                    }
                    LieFamily::Psp { m } => {
                        if m == 2 && q_is(2) {
                            return bad("excluded small case".into());
                        }
                    }
                    LieFamily::OmegaOdd { .. } => {
                        if *p == 2 {
                            return bad("needs q odd".into());
                        }
                    }
                    LieFamily::Suzuki | LieFamily::TwistedF4 => {
                        if *p != 2 || e % 2 == 0 || *e < 3 {
                            return bad("needs q = 2^(2a+1) >= 8".into());
                        }
                    }
                    LieFamily::G2 => {
                        if q_is(2) {
                            return bad("needs q >= 3".into());
                        }
                    }
                    LieFamily::Ree => {
                        if *p != 3 || e % 2 == 0 || *e < 3 {
                            return bad("needs q = 3^(2a+1) >= 27".into());
                        }
                    }
                    _ => {}
                }
                Ok(())
            }
            SimpleCandidate::Alternating { n } if *n < 5 => bad("n must be >= 5".into()),
            SimpleCandidate::Sporadic { name } => sporadic_fact(name).map(|_| ()),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for SimpleCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleCandidate::LieType { family, p, e } => {
                if *e == 1 {
                    write!(f, "{family}({p})")
                } else {
                    write!(f, "{family}({p}^{e})")
                }
            }
            SimpleCandidate::Alternating { n } => write!(f, "A_{n}"),
            SimpleCandidate::Sporadic { name } => f.write_str(name),
            SimpleCandidate::Tits => f.write_str("2F4(2)'"),
        }
    }
}

fn exact_div(num: NatInt, den: &NatInt, what: &str) -> Result<NatInt, LieError> {
    let (quot, rem) = num.div_rem(den);
    if !rem.is_zero() {
        return Err(LieError::InexactFormula(what.to_string()));
    }
    Ok(quot)
}

/// The non-Steinberg unipotent degree listed for the family, evaluated at
/// `q₀`, or `None` when no such row exists for this rank.
pub fn unipotent_degree(candidate: &SimpleCandidate) -> Result<Option<NatInt>, LieError> {
    let SimpleCandidate::LieType { family, .. } = candidate else {
        return Err(LieError::Inadmissible(format!(
            "{candidate} is not of Lie type"
        )));
    };
    candidate.check_admissible()?;
    let q = candidate.q0().expect("Lie type");
    let one = NatInt::one();
    let value = match *family {
        LieFamily::Psl { m } if m >= 4 => {
            let num = &q * (q.pow(m - 1) - &one);
            exact_div(num, &(&q - &one), "PSL unipotent degree")?
        }
        LieFamily::Psu { m } if m >= 4 => {
            // q^{m-1} - (-1)^{m-1}
            let inner = if (m - 1) % 2 == 0 {
                q.pow(m - 1) - &one
            } else {
                q.pow(m - 1) + &one
            };
            exact_div(&q * inner, &(&q + &one), "PSU unipotent degree")?
        }
        LieFamily::Psp { m } | LieFamily::OmegaOdd { m } => {
            let num = &q * (q.pow(m) - &one) * (q.pow(m - 1) + &one);
            exact_div(num, &(&q - &one), "symplectic/orthogonal unipotent degree")?
        }
        LieFamily::E7 => {
            let phi =
                |i| cyclotomic_eval(i, &q).map_err(|e| LieError::InexactFormula(e.to_string()));
            q.pow(46) * phi(7)? * phi(12)? * phi(14)?
        }
        _ => return Ok(None),
    };
    Ok(Some(value))
}
