//! Exact integer primitives: p-adic valuations and p-parts, gcd, prime-power
//! detection and cyclotomic polynomial evaluation.
//!
//! Everything here works on [`NatInt`] (an arbitrary-precision unsigned
//! integer) and never touches floating point.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Non-negative arbitrary-precision integer used for every quantity in the crate.
pub type NatInt = BigUint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("valuation of 0 is undefined")]
    UndefinedValuation,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("domain error: {0}")]
    Domain(String),
}

/// `p^exponent` exactly divides the valued integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Valuation {
    pub prime: u64,
    pub exponent: u32,
}

/// Primes used for trial division before falling back to root extraction.
const SMALL_PRIMES_BOUND: u64 = 1000;

/// Miller-Rabin bases: the first 20 primes.
const MR_BASES: [u64; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

fn small_primes() -> impl Iterator<Item = u64> {
    (2..SMALL_PRIMES_BOUND).filter(|&n| is_prime_u64(n))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for 64-bit integers.
///
/// Trial division for small inputs, then Miller-Rabin with the first twelve
/// prime bases, which has no strong pseudoprimes below 3.3 * 10^24.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for &a in &MR_BASES[..12] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin over big integers. A `false` answer is always correct; a
/// `true` answer is proven for `n < 2^64` and probable (20 bases) above.
fn is_probable_prime(n: &NatInt) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = NatInt::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &a in &MR_BASES {
        let mut x = NatInt::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn check_prime(p: u64) -> Result<(), MathError> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(MathError::NotPrime(p))
    }
}

/// Exponent of the largest power of `p` dividing `n`.
pub fn val_p(n: &NatInt, p: u64) -> Result<u32, MathError> {
    check_prime(p)?;
    if n.is_zero() {
        return Err(MathError::UndefinedValuation);
    }
    if p == 2 {
        return Ok(n.trailing_zeros().unwrap_or(0) as u32);
    }
    let p_big = NatInt::from(p);
    let mut m = n.clone();
    let mut exponent = 0;
    loop {
        let (quot, rem) = m.div_rem(&p_big);
        if !rem.is_zero() {
            return Ok(exponent);
        }
        m = quot;
        exponent += 1;
    }
}

pub fn valuation(n: &NatInt, p: u64) -> Result<Valuation, MathError> {
    Ok(Valuation {
        prime: p,
        exponent: val_p(n, p)?,
    })
}

/// `p^{val_p(n)}`, the p-part of `n`.
pub fn part_p(n: &NatInt, p: u64) -> Result<NatInt, MathError> {
    let e = val_p(n, p)?;
    Ok(NatInt::from(p).pow(e))
}

/// Returns `(p, a)` with `n = p^a` for a prime `p`, or `None`.
///
/// When `n` has a prime factor below 1000 the answer is exact. Otherwise the
/// perfect-power root of `n` is tested with Miller-Rabin, so a negative answer
/// is always exact and a positive answer with a root above 2^64 is probable.
pub fn is_prime_power(n: &NatInt) -> Result<Option<(NatInt, u32)>, MathError> {
    if *n < NatInt::from(2u32) {
        return Err(MathError::Domain(format!(
            "prime-power test needs n >= 2, got {n}"
        )));
    }
    for p in small_primes() {
        let p_big = NatInt::from(p);
        if (n % &p_big).is_zero() {
            let a = val_p(n, p)?;
            return Ok((p_big.pow(a) == *n).then_some((p_big, a)));
        }
    }
    // Every prime factor is at least SMALL_PRIMES_BOUND, so the exponent is at
    // most log_1000(n) < bits / 9.
    let max_exp = (n.bits() / 9).max(1) as u32;
    for a in (2..=max_exp).rev() {
        let root = n.nth_root(a);
        if root.pow(a) == *n {
            return Ok(is_probable_prime(&root).then_some((root, a)));
        }
    }
    Ok(is_probable_prime(n).then(|| (n.clone(), 1)))
}

/// Greatest common divisor; `(0, 0)` is rejected.
pub fn gcd(a: &NatInt, b: &NatInt) -> Result<NatInt, MathError> {
    if a.is_zero() && b.is_zero() {
        return Err(MathError::Domain("gcd(0, 0) is undefined".into()));
    }
    Ok(a.gcd(b))
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Distinct prime divisors of `n` in increasing order.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    divisors(n)
        .into_iter()
        .filter(|&d| is_prime_u64(d))
        .collect()
}

/// `Φ_i(x)`, evaluated exactly through `Φ_n(x) = (x^n - 1) / ∏_{d | n, d < n} Φ_d(x)`.
pub fn cyclotomic_eval(i: u32, x: &NatInt) -> Result<NatInt, MathError> {
    if i == 0 {
        return Err(MathError::Domain("cyclotomic index must be >= 1".into()));
    }
    if *x < NatInt::from(2u32) {
        return Err(MathError::Domain(format!(
            "cyclotomic evaluation point must be >= 2, got {x}"
        )));
    }
    let mut table: BTreeMap<u64, NatInt> = BTreeMap::new();
    for n in divisors(i as u64) {
        let mut value = x.pow(n as u32) - 1u32;
        for (&d, phi_d) in &table {
            if n % d == 0 {
                let (quot, rem) = value.div_rem(phi_d);
                assert!(rem.is_zero(), "Φ_{d}({x}) does not divide {x}^{n} - 1");
                value = quot;
            }
        }
        table.insert(n, value);
    }
    Ok(table.remove(&(i as u64)).expect("i divides itself"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> NatInt {
        NatInt::from(v)
    }

    #[test]
    fn val_p_examples() {
        assert_eq!(val_p(&n(1), 2), Ok(0));
        assert_eq!(val_p(&n(2184), 2), Ok(3));
        assert_eq!(val_p(&NatInt::from(3u32).pow(15), 3), Ok(15));
        assert_eq!(val_p(&n(0), 3), Err(MathError::UndefinedValuation));
        assert_eq!(val_p(&n(12), 4), Err(MathError::NotPrime(4)));
        assert_eq!(valuation(&n(2184), 2).unwrap().exponent, 3);
    }

    #[test]
    fn part_p_examples() {
        assert_eq!(part_p(&n(26), 2).unwrap(), n(2));
        assert_eq!(part_p(&n(28), 2).unwrap(), n(4));
        assert_eq!(part_p(&n(703), 2).unwrap(), n(1));
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(is_prime_power(&n(19683)).unwrap(), Some((n(3), 9)));
        assert_eq!(is_prime_power(&n(703)).unwrap(), None);
        assert_eq!(is_prime_power(&n(8)).unwrap(), Some((n(2), 3)));
        assert!(is_prime_power(&n(1)).is_err());
        // 1009^3 and 1013 * 1019 have no factor below 1000
        assert_eq!(
            is_prime_power(&n(1009u64.pow(3))).unwrap(),
            Some((n(1009), 3))
        );
        assert_eq!(is_prime_power(&n(1013 * 1019)).unwrap(), None);
        // 2^61 - 1 is prime, (2^61 - 1)^2 is a prime square
        let m61 = n((1u64 << 61) - 1);
        assert_eq!(is_prime_power(&m61).unwrap(), Some((m61.clone(), 1)));
        assert_eq!(is_prime_power(&(&m61 * &m61)).unwrap(), Some((m61, 2)));
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_eval(1, &n(5)).unwrap(), n(4));
        assert_eq!(cyclotomic_eval(12, &n(3)).unwrap(), n(73));
        assert_eq!(cyclotomic_eval(6, &n(2)).unwrap(), n(3));
        assert!(cyclotomic_eval(0, &n(3)).is_err());
        assert!(cyclotomic_eval(3, &n(1)).is_err());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&n(26), &n(28)).unwrap(), n(2));
        assert_eq!(gcd(&n(19), &n(37)).unwrap(), n(1));
        assert_eq!(gcd(&n(703), &n(703)).unwrap(), n(703));
        assert_eq!(gcd(&n(0), &n(5)).unwrap(), n(5));
        assert!(gcd(&n(0), &n(0)).is_err());
    }

    #[test]
    fn divisor_helpers() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(15), vec![1, 3, 5, 15]);
        assert_eq!(divisors(9), vec![1, 3, 9]);
        assert_eq!(prime_divisors(15), vec![3, 5]);
        assert_eq!(prime_divisors(27), vec![3]);
    }

    #[test]
    fn primality_agrees_with_trial_division() {
        let trial = |m: u64| m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| m % d != 0);
        for m in 0..20_000 {
            assert_eq!(is_prime_u64(m), trial(m), "{m}");
        }
        // strong pseudoprime to bases 2, 3, 5, 7
        assert!(!is_prime_u64(3_215_031_751));
        assert!(is_prime_u64(18_446_744_073_709_551_557));
    }
}
