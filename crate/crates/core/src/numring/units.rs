use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::Signed;

use super::ideal::{is_principal, FractionalIdeal};
use super::nf::NfElem;
use super::prime::PrimeIdeal;
use super::ring::NumberRing;
use crate::error::{Error, Result};
use crate::lattice::{left_kernel, row_basis, IntMatrix};

/// O_{K,S}^* / n as a product of cyclic groups, one representative per factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitGroupModN {
    pub n: u64,
    /// Cyclic factor orders (factors of order 1 are dropped).
    pub invariants: Vec<u64>,
    pub representatives: Vec<NfElem>,
}

impl UnitGroupModN {
    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }
}

/// Generators of the S-unit group modulo torsion: the fundamental unit (if
/// any) followed by one generator per basis vector of the relation lattice
/// {v in Z^S : prod P_i^v_i principal}.
pub fn s_unit_generators(ring: &NumberRing, s: &[PrimeIdeal]) -> Result<Vec<NfElem>> {
    let distinct: BTreeSet<&PrimeIdeal> = s.iter().collect();
    if distinct.len() != s.len() {
        return Err(Error::InvalidInput("repeated prime in the inverted set".into()));
    }
    let mut out = Vec::new();
    if let Some(eps) = ring.fundamental_unit()? {
        out.push(eps);
    }
    if s.is_empty() {
        return Ok(out);
    }
    let cl = ring.class_group()?;
    let t = cl.invariants().len();
    let k = s.len();
    // rows: images of the S-primes, then the relations of Cl
    let mut rows: IntMatrix = Vec::with_capacity(k + t);
    for p in s {
        let c = cl.dlog(&FractionalIdeal::prime(ring, p))?;
        rows.push(c.iter().map(|&x| x as i128).collect());
    }
    for (i, &m) in cl.invariants().iter().enumerate() {
        rows.push((0..t).map(|j| if i == j { m as i128 } else { 0 }).collect());
    }
    let kernel: IntMatrix = if t == 0 {
        (0..k).map(|i| (0..k).map(|j| i128::from(i == j)).collect()).collect()
    } else {
        left_kernel(&rows, t).into_iter().map(|r| r[..k].to_vec()).collect()
    };
    let basis = row_basis(&kernel, k);
    debug_assert_eq!(basis.len(), k);
    for v in basis {
        let ideal = FractionalIdeal::from_exponents(
            ring,
            s.iter().cloned().zip(v.iter().map(|&e| e as i64)),
        );
        let g = is_principal(ring, &ideal)?.ok_or_else(|| {
            Error::Consistency(format!("relation {ideal} is not principal"))
        })?;
        out.push(normalize_sign(g));
    }
    Ok(out)
}

fn normalize_sign(g: NfElem) -> NfElem {
    if g.is_rational() && g.rational_part().is_negative() {
        -g
    } else {
        g
    }
}

pub fn units_mod_n(ring: &NumberRing, s: &[PrimeIdeal], n: u64) -> Result<UnitGroupModN> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    for p in s {
        if p.d() != ring.d() {
            return Err(Error::BaseMismatch(format!("{p} is not a prime of {ring}")));
        }
    }
    let mut invariants = Vec::new();
    let mut representatives = Vec::new();
    let (zeta, w) = ring.roots_of_unity();
    let g = n.gcd(&w);
    if g > 1 {
        invariants.push(g);
        representatives.push(zeta);
    }
    if n > 1 {
        for u in s_unit_generators(ring, s)? {
            invariants.push(n);
            representatives.push(u);
        }
    }
    Ok(UnitGroupModN { n, invariants, representatives })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numring::factor_element;

    #[test]
    fn examples() {
        let z = NumberRing::integers();
        let u = units_mod_n(&z, &[], 2).unwrap();
        assert_eq!((u.order(), u.representatives.clone()), (2, vec![z.int(-1)]));
        let u = units_mod_n(&z, &z.primes_above(5).unwrap(), 2).unwrap();
        assert_eq!(u.invariants, vec![2, 2]);
        assert_eq!(u.representatives, vec![z.int(-1), z.int(5)]);
        let gi = NumberRing::quadratic(-1).unwrap();
        let u = units_mod_n(&gi, &[], 2).unwrap();
        assert_eq!(u.invariants, vec![2]);
        assert_eq!(u.representatives, vec![gi.omega()]);
        assert_eq!(units_mod_n(&gi, &[], 3).unwrap().order(), 1);
    }

    #[test]
    fn s_units_in_minus5() {
        let r = NumberRing::quadratic(-5).unwrap();
        let p2 = r.primes_above(2).unwrap();
        let p3 = r.primes_above(3).unwrap();
        let s = vec![p2[0].clone(), p3[0].clone()];
        let gens = s_unit_generators(&r, &s).unwrap();
        assert_eq!(gens.len(), 2);
        for g in &gens {
            let f = factor_element(&r, g).unwrap();
            assert!(f.iter().all(|(p, _)| s.contains(p)), "{g} is not an S-unit");
        }
        // p2 alone: the S-unit lattice is generated by p2^2 = (2)
        let gens = s_unit_generators(&r, &p2).unwrap();
        assert_eq!(factor_element(&r, &gens[0]).unwrap().exponent(&p2[0]).abs(), 2);
    }
}
