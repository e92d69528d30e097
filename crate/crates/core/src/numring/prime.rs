use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::fq::{Fq, ResidueField};
use super::nf::NfElem;
use super::ring::NumberRing;
use crate::arith::{int_mod, vp_int};
use crate::error::{Error, Result};

/// How a prime ideal sits over its rational prime p. `root` is the residue r
/// of the ring generator: the ideal is (p, w - r).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Splitting {
    Rational,
    Inert,
    Split { root: u64 },
    Ramified { root: u64 },
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeIdeal {
    p: u64,
    kind: Splitting,
    d: i64,
}

impl PrimeIdeal {
    pub(crate) fn new_unchecked(d: i64, p: u64, kind: Splitting) -> Self {
        PrimeIdeal { p, kind, d }
    }

    pub fn parse(ring: &NumberRing, s: &str) -> Result<Self> {
        crate::parse::parse_prime(ring, s)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn splitting(&self) -> Splitting {
        self.kind
    }

    pub fn residue_degree(&self) -> u32 {
        match self.kind {
            Splitting::Inert => 2,
            _ => 1,
        }
    }

    pub fn ramification(&self) -> u32 {
        match self.kind {
            Splitting::Ramified { .. } => 2,
            _ => 1,
        }
    }

    pub fn norm(&self) -> u64 {
        self.p.pow(self.residue_degree())
    }

    fn omega_poly(&self) -> (i64, i64) {
        if self.d.rem_euclid(4) == 1 {
            (1, (1 - self.d) / 4)
        } else {
            (0, -self.d)
        }
    }

    /// The conjugate prime (itself unless split).
    pub fn conjugate(&self) -> PrimeIdeal {
        match self.kind {
            Splitting::Split { root } => {
                let (tr, _) = self.omega_poly();
                let other = (tr.rem_euclid(self.p as i64) as u64 + self.p - root) % self.p;
                PrimeIdeal { kind: Splitting::Split { root: other }, ..self.clone() }
            }
            _ => self.clone(),
        }
    }

    /// Valuation of a nonzero field element.
    pub fn valuation(&self, a: &NfElem) -> Result<i64> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let c = a.denominator();
        let (x, y) = integral_coords(a, &c);
        let e = self.ramification() as i64;
        Ok(self.valuation_integral(&x, &y) - e * vp_int(&c, self.p))
    }

    /// Valuation of the nonzero integral element x + y*w.
    pub(crate) fn valuation_integral(&self, x: &BigInt, y: &BigInt) -> i64 {
        let p = self.p;
        match self.kind {
            Splitting::Rational => vp_int(x, p),
            Splitting::Inert => vp_int(&x.gcd(y), p),
            Splitting::Ramified { .. } => vp_int(&self.norm_form(x, y), p),
            Splitting::Split { root } => {
                let g = x.gcd(y);
                let k = vp_int(&g, p);
                let pk = BigInt::from(p).pow(k as u32);
                let (x0, y0) = (x / &pk, y / &pk);
                let in_p = (int_mod(&x0, p) as u128 + int_mod(&y0, p) as u128 * root as u128)
                    % p as u128
                    == 0;
                if in_p {
                    k + vp_int(&self.norm_form(&x0, &y0), p)
                } else {
                    k
                }
            }
        }
    }

    fn norm_form(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let (tr, nm) = self.omega_poly();
        x * x + BigInt::from(tr) * x * y + BigInt::from(nm) * y * y
    }

    pub fn residue_field(&self) -> ResidueField {
        match self.kind {
            Splitting::Inert => {
                let (tr, nm) = self.omega_poly();
                let p = self.p as i64;
                ResidueField::quadratic(self.p, tr.rem_euclid(p) as u64, nm.rem_euclid(p) as u64)
            }
            _ => ResidueField::prime(self.p),
        }
    }

    /// Image in the residue field of an element with nonnegative valuation.
    pub fn residue(&self, a: &NfElem) -> Result<Fq> {
        let k = self.residue_field();
        if a.is_zero() {
            return Ok(k.zero());
        }
        if self.valuation(a)? < 0 {
            return Err(Error::InvalidInput(format!("{a} is not integral at {self}")));
        }
        let c = a.denominator();
        let (x, y) = integral_coords(a, &c);
        let m = vp_int(&c, self.p) as u32;
        let pm = BigInt::from(self.p).pow(m);
        let unit_part = int_mod(&(&c / &pm), self.p);
        let (num, den) = match self.kind {
            Splitting::Split { root } => {
                // s = w - conj(root) is a unit at this prime and lies in its
                // conjugate, so (x + y w) s^m / p^m is integral
                let (tr, _) = self.omega_poly();
                let rbar = (tr.rem_euclid(self.p as i64) as u64 + self.p - root) % self.p;
                let sx = -BigInt::from(rbar);
                let sy = BigInt::one();
                let (mut nx, mut ny) = (x, y);
                for _ in 0..m {
                    let (tx, ty) = self.mul(&nx, &ny, &sx, &sy);
                    nx = tx;
                    ny = ty;
                }
                nx /= &pm;
                ny /= &pm;
                let s_red = (root + self.p - rbar) % self.p;
                let den = k.mul(k.from_u64(unit_part), k.pow(k.from_u64(s_red), m as u64));
                (self.reduce_integral(&nx, &ny), den)
            }
            _ => {
                let (nx, ny) = (&x / &pm, &y / &pm);
                (self.reduce_integral(&nx, &ny), k.from_u64(unit_part))
            }
        };
        Ok(k.div(num, den).expect("denominator is a unit at the prime"))
    }

    fn mul(&self, x1: &BigInt, y1: &BigInt, x2: &BigInt, y2: &BigInt) -> (BigInt, BigInt) {
        let (tr, nm) = self.omega_poly();
        let yy = y1 * y2;
        (x1 * x2 - BigInt::from(nm) * &yy, x1 * y2 + x2 * y1 + BigInt::from(tr) * yy)
    }

    fn reduce_integral(&self, x: &BigInt, y: &BigInt) -> Fq {
        let p = self.p;
        match self.kind {
            Splitting::Rational => Fq(int_mod(x, p), 0),
            Splitting::Inert => Fq(int_mod(x, p), int_mod(y, p)),
            Splitting::Split { root } | Splitting::Ramified { root } => {
                let v = (int_mod(x, p) as u128 + int_mod(y, p) as u128 * root as u128) % p as u128;
                Fq(v as u64, 0)
            }
        }
    }

    /// An integral element reducing to the given residue.
    pub fn lift(&self, r: Fq) -> NfElem {
        match self.kind {
            Splitting::Inert => {
                NfElem::from_omega_int(self.d, BigInt::from(r.0), BigInt::from(r.1))
            }
            _ => NfElem::from_int(self.d, r.0 as i64),
        }
    }

    /// An element of valuation exactly 1.
    pub fn uniformizer(&self) -> NfElem {
        match self.kind {
            Splitting::Rational | Splitting::Inert => NfElem::from_int(self.d, self.p as i64),
            Splitting::Ramified { root } => {
                NfElem::from_omega_int(self.d, -BigInt::from(root), BigInt::one())
            }
            Splitting::Split { root } => {
                let y = BigInt::one();
                let p = BigInt::from(self.p);
                let x = -BigInt::from(root);
                if self.valuation_integral(&x, &y) == 1 {
                    NfElem::from_omega_int(self.d, x, y)
                } else {
                    NfElem::from_omega_int(self.d, x + p, y)
                }
            }
        }
    }

    /// Hermite basis {a, b + c*w} of the ideal as a Z-module (c = 0 for Z).
    pub(crate) fn hermite(&self) -> (BigInt, BigInt, BigInt) {
        let p = BigInt::from(self.p);
        match self.kind {
            Splitting::Rational => (p, BigInt::zero(), BigInt::zero()),
            Splitting::Inert => (p.clone(), BigInt::zero(), p),
            Splitting::Split { root } | Splitting::Ramified { root } => {
                let b = (BigInt::from(self.p) - BigInt::from(root)).mod_floor(&p);
                (p, b, BigInt::one())
            }
        }
    }

    /// The second generator a + w rendered in `(p, a+w)`, with a in [0, p).
    fn second_generator(&self) -> Option<NfElem> {
        match self.kind {
            Splitting::Split { root } | Splitting::Ramified { root } => {
                let a = (self.p - root) % self.p;
                Some(NfElem::from_omega_int(self.d, BigInt::from(a), BigInt::one()))
            }
            _ => None,
        }
    }

    pub(crate) fn contains_integral(&self, x: &BigInt, y: &BigInt) -> bool {
        self.reduce_integral(x, y) == Fq(0, 0)
    }
}

fn integral_coords(a: &NfElem, c: &BigInt) -> (BigInt, BigInt) {
    let scaled = a.scale(&BigRational::from_integer(c.clone()));
    let (x, y) = scaled.omega_coords();
    (x.to_integer(), y.to_integer())
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.second_generator() {
            Some(g) => write!(f, "({}, {})", self.p, g),
            None => write!(f, "({})", self.p),
        }
    }
}

impl fmt::Debug for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn ring(d: i64) -> NumberRing {
        NumberRing::quadratic(d).unwrap()
    }

    #[test]
    fn rendering() {
        let r = ring(-5);
        assert_eq!(r.primes_above(2).unwrap()[0].to_string(), "(2, 1+w)");
        assert_eq!(r.primes_above(5).unwrap()[0].to_string(), "(5, w)");
        assert_eq!(r.primes_above(11).unwrap()[0].to_string(), "(11)");
        assert_eq!(NumberRing::integers().primes_above(7).unwrap()[0].to_string(), "(7)");
    }

    #[test]
    fn valuations_in_minus5() {
        let r = ring(-5);
        let p2 = &r.primes_above(2).unwrap()[0];
        let p3 = r.primes_above(3).unwrap();
        assert_eq!(p2.valuation(&r.int(2)).unwrap(), 2);
        assert_eq!(p2.valuation(&r.element(1, 1)).unwrap(), 1);
        // 1 + w has norm 6: one of the primes above 3 divides it, the other not
        let v: Vec<i64> = p3.iter().map(|q| q.valuation(&r.element(1, 1)).unwrap()).collect();
        assert_eq!(v.iter().sum::<i64>(), 1);
        let half = NfElem::from_rational(-5, rat(1, 2));
        assert_eq!(p2.valuation(&half).unwrap(), -2);
        for q in p3.iter().chain(std::iter::once(p2)) {
            assert_eq!(q.valuation(&q.uniformizer()).unwrap(), 1);
        }
    }

    #[test]
    fn residues_respect_arithmetic() {
        let r = ring(-7);
        for p in [2u64, 3, 5, 7, 11] {
            for q in r.primes_above(p).unwrap() {
                let k = q.residue_field();
                let a = NfElem::from_omega(-7, rat(3, 5), rat(1, 5));
                let b = r.element(2, -3);
                if q.valuation(&a).unwrap() < 0 {
                    continue;
                }
                let lhs = q.residue(&(&a * &b)).unwrap();
                let rhs = k.mul(q.residue(&a).unwrap(), q.residue(&b).unwrap());
                assert_eq!(lhs, rhs, "{q}");
                let sum = q.residue(&(&a + &b)).unwrap();
                assert_eq!(sum, k.add(q.residue(&a).unwrap(), q.residue(&b).unwrap()));
            }
        }
    }

    #[test]
    fn split_residue_with_denominator() {
        // 3 splits in Q(sqrt -5); (1 + w)/3 is integral at one prime above 3
        let r = ring(-5);
        let a = NfElem::from_omega(-5, rat(1, 3), rat(1, 3));
        for q in r.primes_above(3).unwrap() {
            let v = q.valuation(&a).unwrap();
            if v >= 0 {
                let k = q.residue_field();
                let back = q.residue(&(&a * &r.int(3))).unwrap();
                assert_eq!(k.mul(q.residue(&a).unwrap(), k.from_u64(3)), back);
            }
        }
    }
}
