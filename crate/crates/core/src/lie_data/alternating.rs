use num_integer::Integer;
use num_traits::{One, Zero};

use super::LieError;
use crate::exactmath::NatInt;

/// Degree 5 character of A₅, extending to S₅.
pub const A5_EXTENDIBLE_DEGREE: u32 = 5;
/// Degree 9 character of A₆, extending to A₆·2².
pub const A6_EXTENDIBLE_DEGREE: u32 = 9;
/// Degree 6 character of A₇, extending to S₇.
pub const A7_EXTENDIBLE_DEGREE: u32 = 6;

fn binomial(n: u32, k: u32) -> NatInt {
    if k > n {
        return NatInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = NatInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `χ_{r,s}(1) = C(n,s)·C(n−s−1, r−1)·(n−2s−r)/(r+s)`, the degree of the
/// character of S_n labelled by the partition `(n−s−r, s+1, r−1)`.
pub fn alt_char_degree(n: u32, r: u32, s: u32) -> Result<NatInt, LieError> {
    if n < 8 || r < 1 || r + 2 * s + 1 > n {
        return Err(LieError::Inadmissible(format!(
            "χ_(r,s) needs n >= 8, r >= 1, r + 2s + 1 <= n (got n={n}, r={r}, s={s})"
        )));
    }
    let num = binomial(n, s) * binomial(n - s - 1, r - 1) * (n - 2 * s - r);
    let (quot, rem) = num.div_rem(&NatInt::from(r + s));
    if !rem.is_zero() {
        return Err(LieError::InexactFormula(format!(
            "χ_({r},{s})(1) at n = {n}"
        )));
    }
    Ok(quot)
}

/// A character of S_n restricting irreducibly to A_n with degree divisible by 16.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltWitness {
    pub r: u32,
    pub s: u32,
    pub degree: NatInt,
}

/// `χ_{2,1}` for even n, `χ_{1,2}` for n ≡ 1 (mod 4) and `χ_{3,2}` for n ≡ 3 (mod 4).
pub fn alt_16_witness(n: u32) -> Result<AltWitness, LieError> {
    let (r, s) = match n % 4 {
        0 | 2 => (2, 1),
        1 => (1, 2),
        _ => (3, 2),
    };
    // χ_{r,s} splits on A_n when s = 0, n = 2r + 1 or s = 1, n = 2r + 2
    debug_assert!(!(s == 0 && n == 2 * r + 1) && !(s == 1 && n == 2 * r + 2) || n < 8);
    let degree = alt_char_degree(n, r, s)?;
    Ok(AltWitness { r, s, degree })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_examples() {
        assert_eq!(alt_char_degree(9, 1, 2).unwrap(), NatInt::from(48u32));
        assert_eq!(alt_char_degree(8, 2, 1).unwrap(), NatInt::from(64u32));
        assert_eq!(alt_char_degree(11, 3, 2).unwrap(), NatInt::from(1232u32));
        assert!(alt_char_degree(7, 1, 1).is_err());
        assert!(alt_char_degree(9, 0, 1).is_err());
        assert!(alt_char_degree(9, 5, 2).is_err());
    }

    #[test]
    fn hook_length_cross_check() {
        // S_8, partition (5,2,1): 8!/(7·5·3·2·1·3·1·1) = 64
        assert_eq!(40320 / (7 * 5 * 3 * 2 * 3), 64);
        // S_9, partition (6,3): hooks 7,6,5,3,2,1 / 3,2,1 -> 9!/7560 = 48
        assert_eq!(362_880 / (7 * 6 * 5 * 3 * 2 * 3 * 2), 48);
    }

    #[test]
    fn witnesses() {
        assert_eq!(
            alt_16_witness(9).unwrap(),
            AltWitness {
                r: 1,
                s: 2,
                degree: 48u32.into()
            }
        );
        assert_eq!(
            alt_16_witness(8).unwrap(),
            AltWitness {
                r: 2,
                s: 1,
                degree: 64u32.into()
            }
        );
        assert_eq!(
            alt_16_witness(11).unwrap(),
            AltWitness {
                r: 3,
                s: 2,
                degree: alt_char_degree(11, 3, 2).unwrap()
            }
        );
        assert!(alt_16_witness(7).is_err());
    }
}
