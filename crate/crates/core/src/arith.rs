//! Integer helpers shared by the number-ring and curve code.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[cfg(test)]
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// p-adic valuation of a nonzero integer.
pub fn vp_int(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
#[cfg(test)]
pub fn vp_rat(q: &BigRational, p: u64) -> i64 {
    vp_int(q.numer(), p) - vp_int(q.denom(), p)
}

/// Prime factorization of |n| (n nonzero). Primes must fit in a u64.
pub fn factor(n: &BigInt) -> Result<BTreeMap<u64, u32>> {
    if n.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut m: BigUint = n.magnitude().clone();
    let mut out = BTreeMap::new();
    // cheap trial division first; num-prime handles what is left
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let pb = BigUint::from(p);
        while (&m % &pb).is_zero() {
            m /= &pb;
            *out.entry(p).or_insert(0) += 1;
        }
    }
    if m > BigUint::one() {
        for (q, e) in num_prime::nt_funcs::factorize(m) {
            let q = q.to_u64().ok_or_else(|| {
                Error::BoundExceeded(format!("prime factor {q} does not fit in 64 bits"))
            })?;
            *out.entry(q).or_insert(0) += e as u32;
        }
    }
    Ok(out)
}

pub fn is_prime(p: u64) -> bool {
    num_prime::nt_funcs::is_prime64(p)
}

/// Integer square root if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

pub fn floor_sqrt(n: &BigInt) -> BigInt {
    if n.is_negative() {
        BigInt::zero()
    } else {
        n.sqrt()
    }
}

pub fn modpow(b: u64, mut e: u64, m: u64) -> u64 {
    let mm = m as u128;
    let mut r = 1u128 % mm;
    let mut bb = b as u128 % mm;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % mm;
        }
        bb = bb * bb % mm;
        e >>= 1;
    }
    r as u64
}

pub fn int_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Kronecker symbol (D / p) for an odd or even prime p.
pub fn kronecker(disc: i64, p: u64) -> i32 {
    if p == 2 {
        if disc % 2 == 0 {
            return 0;
        }
        return match disc.rem_euclid(8) {
            1 | 7 => 1,
            _ => -1,
        };
    }
    let a = disc.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if modpow(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Floor of a rational number.
pub fn floor_rat(q: &BigRational) -> BigInt {
    q.floor().to_integer()
}

/// Fractional part in [0, 1).
pub fn frac(q: &BigRational) -> BigRational {
    q - BigRational::from_integer(floor_rat(q))
}

pub fn is_squarefree(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    let n = d.unsigned_abs();
    let mut k = 2u64;
    while k * k <= n {
        if n % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn factor_small_and_large() {
        let f = factor(&int(-360)).unwrap();
        assert_eq!(f, BTreeMap::from([(2, 3), (3, 2), (5, 1)]));
        let big = int(1_000_003) * int(998_244_353);
        let f = factor(&big).unwrap();
        assert_eq!(f, BTreeMap::from([(1_000_003, 1), (998_244_353, 1)]));
    }

    #[test]
    fn kronecker_matches_splitting() {
        // disc -20: 2 and 5 ramify, 3 and 7 split, 11 and 13 inert
        assert_eq!(kronecker(-20, 2), 0);
        assert_eq!(kronecker(-20, 5), 0);
        assert_eq!(kronecker(-20, 3), 1);
        assert_eq!(kronecker(-20, 7), 1);
        assert_eq!(kronecker(-20, 11), -1);
        assert_eq!(kronecker(-20, 13), -1);
        // disc -3 at 2: inert
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-7, 2), 1);
    }

    #[test]
    fn fractional_parts() {
        assert_eq!(frac(&rat(-1, 3)), rat(2, 3));
        assert_eq!(frac(&rat(7, 2)), rat(1, 2));
        assert_eq!(vp_rat(&rat(12, 25), 5), -2);
    }
}
