//! Elements of Q or of a quadratic field Q(sqrt d), stored as a + b*sqrt(d)
//! with exact rational coordinates.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element a + b*sqrt(d) of the base field. For Q, `d == 1` and `b == 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NfElem {
    d: i64,
    a: BigRational,
    b: BigRational,
}

impl NfElem {
    pub fn new(d: i64, a: BigRational, b: BigRational) -> Self {
        debug_assert!(d != 1 || b.is_zero());
        NfElem { d, a, b }
    }

    pub fn from_rational(d: i64, a: BigRational) -> Self {
        NfElem { d, a, b: BigRational::zero() }
    }

    pub fn from_int(d: i64, n: i64) -> Self {
        Self::from_rational(d, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(d: i64, n: BigInt) -> Self {
        Self::from_rational(d, BigRational::from_integer(n))
    }

    pub fn zero(d: i64) -> Self {
        Self::from_int(d, 0)
    }

    pub fn one(d: i64) -> Self {
        Self::from_int(d, 1)
    }

    /// sqrt(d) itself.
    pub fn sqrt_d(d: i64) -> Self {
        NfElem { d, a: BigRational::zero(), b: BigRational::one() }
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn conj(&self) -> Self {
        NfElem { d: self.d, a: self.a.clone(), b: -&self.b }
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(BigInt::from(self.d)) * &self.b * &self.b
    }

    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(NfElem { d: self.d, a: &self.a / &n, b: -&self.b / &n })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = NfElem::one(self.d);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            self.inv().map(|i| i.pow(e.unsigned_abs()))
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        NfElem { d: self.d, a: &self.a * q, b: &self.b * q }
    }

    /// Coordinates (x, y) with self = x + y*w, where w is the ring generator:
    /// w = (1 + sqrt d)/2 when d = 1 mod 4, else w = sqrt d.
    pub fn omega_coords(&self) -> (BigRational, BigRational) {
        if self.d == 1 {
            return (self.a.clone(), BigRational::zero());
        }
        if self.d.rem_euclid(4) == 1 {
            let y = &self.b + &self.b;
            (&self.a - &self.b, y)
        } else {
            (self.a.clone(), self.b.clone())
        }
    }

    pub fn from_omega(d: i64, x: BigRational, y: BigRational) -> Self {
        if d == 1 {
            debug_assert!(y.is_zero());
            return Self::from_rational(d, x);
        }
        if d.rem_euclid(4) == 1 {
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            let b = &y * &half;
            NfElem { d, a: x + &b, b }
        } else {
            NfElem { d, a: x, b: y }
        }
    }

    pub fn from_omega_int(d: i64, x: BigInt, y: BigInt) -> Self {
        Self::from_omega(d, BigRational::from_integer(x), BigRational::from_integer(y))
    }

    pub fn is_integral(&self) -> bool {
        let (x, y) = self.omega_coords();
        x.is_integer() && y.is_integer()
    }

    /// Smallest positive integer c with c*self integral.
    pub fn denominator(&self) -> BigInt {
        let (x, y) = self.omega_coords();
        x.denom().lcm(y.denom())
    }

    fn same_field(&self, other: &Self) -> i64 {
        if self.d == other.d || other.b.is_zero() {
            self.d
        } else {
            debug_assert!(self.b.is_zero(), "mixing elements of different fields");
            other.d
        }
    }
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Rendered in the ring basis, e.g. `3`, `-1/2`, `w`, `1+w`, `-3/4-2*w`.
impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.omega_coords();
        if y.is_zero() {
            return write!(f, "{x}");
        }
        let mut s = String::new();
        if !x.is_zero() {
            s.push_str(&x.to_string());
        }
        let ya = y.abs();
        if y.is_negative() {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if !ya.is_one() {
            s.push_str(&ya.to_string());
            s.push('*');
        }
        s.push('w');
        f.write_str(&s)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a NfElem> for &'a NfElem {
            type Output = NfElem;
            fn $m(self, rhs: &'a NfElem) -> NfElem {
                let f: fn(&NfElem, &NfElem) -> NfElem = $body;
                f(self, rhs)
            }
        }
        impl $tr<NfElem> for NfElem {
            type Output = NfElem;
            fn $m(self, rhs: NfElem) -> NfElem {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a NfElem> for NfElem {
            type Output = NfElem;
            fn $m(self, rhs: &'a NfElem) -> NfElem {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<NfElem> for &'a NfElem {
            type Output = NfElem;
            fn $m(self, rhs: NfElem) -> NfElem {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |x, y| NfElem { d: x.same_field(y), a: &x.a + &y.a, b: &x.b + &y.b });
binop!(Sub, sub, |x, y| NfElem { d: x.same_field(y), a: &x.a - &y.a, b: &x.b - &y.b });
binop!(Mul, mul, |x, y| {
    let d = x.same_field(y);
    let dd = BigRational::from_integer(BigInt::from(d));
    NfElem {
        d,
        a: &x.a * &y.a + dd * &x.b * &y.b,
        b: &x.a * &y.b + &x.b * &y.a,
    }
});
binop!(Div, div, |x, y| x * &y.inv().expect("division by zero in number field"));

impl Neg for NfElem {
    type Output = NfElem;
    fn neg(self) -> NfElem {
        NfElem { d: self.d, a: -self.a, b: -self.b }
    }
}

impl Neg for &NfElem {
    type Output = NfElem;
    fn neg(self) -> NfElem {
        NfElem { d: self.d, a: -&self.a, b: -&self.b }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn field_ops_in_q_sqrt_minus5() {
        let w = NfElem::sqrt_d(-5);
        let one = NfElem::one(-5);
        let a = &one + &w;
        assert_eq!(a.norm(), rat(6, 1));
        let prod = &a * &a.conj();
        assert_eq!(prod, NfElem::from_int(-5, 6));
        assert_eq!(&(&a / &a), &one);
        assert_eq!(a.to_string(), "1+w");
    }

    #[test]
    fn omega_basis_for_one_mod_four() {
        // d = -3: w = (1 + sqrt -3)/2
        let w = NfElem::from_omega_int(-3, 0.into(), 1.into());
        assert_eq!(w.rational_part(), &rat(1, 2));
        assert_eq!(w.norm(), rat(1, 1));
        assert!(w.is_integral());
        let half = NfElem::from_rational(-3, rat(1, 2));
        assert!(!half.is_integral());
        assert_eq!(w.pow(6), NfElem::one(-3));
    }
}
