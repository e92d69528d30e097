//! Text syntax for rings, elements, prime ideals, divisors, curves and points.
//! The grammar is documented in docs/grammar.md.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numring::{factor_element, NfElem, NumberRing, PrimeIdeal};

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    pub fn eat_word(&mut self, w: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(w) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.pos, msg)
    }

    pub fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        let mut end = start;
        let bytes = self.src.as_bytes();
        if end < bytes.len() && (bytes[end] == b'-' || bytes[end] == b'+') {
            end += 1;
        }
        let digits = end;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        if end == digits {
            return Err(self.error("expected an integer"));
        }
        self.pos = end;
        self.src[start..end].parse().map_err(|_| Error::parse(start, "bad integer"))
    }

    fn unsigned(&mut self) -> Result<BigInt> {
        self.skip_ws();
        match self.rest().chars().next() {
            Some(c) if c.is_ascii_digit() => self.integer(),
            _ => Err(self.error("expected a number")),
        }
    }

    /// unsigned-int ['/' unsigned-int]
    fn rational(&mut self) -> Result<BigRational> {
        let start = self.pos;
        let num = self.unsigned()?;
        if self.eat('/') {
            let den = self.unsigned()?;
            if den.is_zero() {
                return Err(Error::parse(start, "zero denominator"));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn starts_number(&mut self) -> bool {
        self.peek().is_some_and(|c| c.is_ascii_digit())
    }
}

pub fn parse_ring(s: &str) -> Result<NumberRing> {
    let mut c = Cursor::new(s);
    let ring = if c.eat_word("Z[i]") {
        NumberRing::quadratic(-1)?
    } else if c.eat_word("ZZ") || c.eat_word("Z") {
        NumberRing::integers()
    } else if c.eat_word("Q") {
        if c.at_end() {
            return Ok(NumberRing::integers());
        }
        c.expect('(')?;
        if !c.eat_word("sqrt") {
            return Err(c.error("expected 'sqrt'"));
        }
        let paren = c.eat('(');
        let pos = c.pos;
        let d = c.integer()?;
        if paren {
            c.expect(')')?;
        }
        c.expect(')')?;
        let d: i64 = d.try_into().map_err(|_| Error::parse(pos, "radicand out of range"))?;
        NumberRing::quadratic(d)?
    } else {
        return Err(c.error("expected a ring: Z, Z[i] or Q(sqrt d)"));
    };
    c.finish()?;
    Ok(ring)
}

/// Element of the base field: rational combination of 1 and w.
pub fn parse_element(ring: &NumberRing, s: &str) -> Result<NfElem> {
    let mut c = Cursor::new(s);
    let e = element(&mut c, ring)?;
    c.finish()?;
    Ok(e)
}

pub(crate) fn element(c: &mut Cursor, ring: &NumberRing) -> Result<NfElem> {
    let d = ring.d();
    let mut acc = NfElem::zero(d);
    let mut first = true;
    loop {
        let neg = if c.eat('-') {
            true
        } else if c.eat('+') {
            false
        } else if first {
            false
        } else {
            break;
        };
        let term = element_term(c, ring)?;
        acc = if neg { acc - term } else { acc + term };
        first = false;
    }
    Ok(acc)
}

fn element_term(c: &mut Cursor, ring: &NumberRing) -> Result<NfElem> {
    let d = ring.d();
    let coeff = if c.starts_number() { Some(c.rational()?) } else { None };
    let had_star = coeff.is_some() && c.eat('*');
    let gen = if c.eat('w') || (d == -1 && c.eat('i')) {
        if ring.is_integers() {
            return Err(c.error("'w' is not defined over Z"));
        }
        true
    } else if had_star || coeff.is_none() {
        return Err(c.error("expected a number or 'w'"));
    } else {
        false
    };
    let q = coeff.unwrap_or_else(BigRational::one);
    Ok(if gen {
        NfElem::from_omega(d, BigRational::zero(), q)
    } else {
        NfElem::from_rational(d, q)
    })
}

/// `(p)` or `(p, a+b*w)`.
pub fn parse_prime(ring: &NumberRing, s: &str) -> Result<PrimeIdeal> {
    let mut c = Cursor::new(s);
    let p = prime(&mut c, ring)?;
    c.finish()?;
    Ok(p)
}

fn prime(c: &mut Cursor, ring: &NumberRing) -> Result<PrimeIdeal> {
    let start = c.pos;
    match ideal_atom(c, ring)? {
        Atom::Prime(p) => Ok(p),
        Atom::Principal(n) => {
            let f = factor_element(ring, &ring.int(n))
                .map_err(|_| Error::parse(start, "(0) is not a prime ideal"))?;
            let mut it = f.iter();
            match (it.next(), it.next()) {
                (Some((p, 1)), None) => Ok(p.clone()),
                _ => Err(Error::parse(start, format!("({n}) is not a prime ideal of {ring}"))),
            }
        }
    }
}

enum Atom {
    Prime(PrimeIdeal),
    Principal(i64),
}

fn ideal_atom(c: &mut Cursor, ring: &NumberRing) -> Result<Atom> {
    c.expect('(')?;
    let pos = c.pos;
    let n = c.integer()?;
    let n: i64 = n.try_into().map_err(|_| Error::parse(pos, "integer out of range"))?;
    if c.eat(')') {
        return Ok(Atom::Principal(n));
    }
    c.expect(',')?;
    let gpos = c.pos;
    let g = element(c, ring)?;
    c.expect(')')?;
    if n < 2 || !crate::arith::is_prime(n as u64) {
        return Err(Error::parse(pos, format!("{n} is not a rational prime")));
    }
    if !g.is_integral() {
        return Err(Error::parse(gpos, "second generator must be integral"));
    }
    let (x, y) = g.omega_coords();
    let (x, y) = (x.to_integer(), y.to_integer());
    let p = n as u64;
    let containing: Vec<PrimeIdeal> = ring
        .primes_above(p)?
        .into_iter()
        .filter(|q| q.contains_integral(&x, &y))
        .collect();
    match containing.as_slice() {
        [q] => Ok(Atom::Prime(q.clone())),
        [] => Err(Error::parse(gpos, format!("({p}, {g}) is the unit ideal"))),
        _ => Err(Error::parse(gpos, format!("({p}, {g}) is not prime"))),
    }
}

/// Coefficient map of a divisor literal such as `1/2*(2,1+w) + 3*(7)`.
/// A principal atom `(n)` contributes the divisor of n.
pub fn parse_divisor(ring: &NumberRing, s: &str) -> Result<BTreeMap<PrimeIdeal, BigRational>> {
    let mut c = Cursor::new(s);
    let mut out: BTreeMap<PrimeIdeal, BigRational> = BTreeMap::new();
    if c.at_end() {
        return Ok(out);
    }
    if c.eat_word("0") && c.at_end() {
        return Ok(out);
    }
    c = Cursor::new(s);
    let mut first = true;
    loop {
        let neg = if c.eat('-') {
            true
        } else if c.eat('+') {
            false
        } else if first {
            false
        } else {
            break;
        };
        let mut coeff = if c.starts_number() {
            let q = c.rational()?;
            c.eat('*');
            q
        } else {
            BigRational::one()
        };
        if neg {
            coeff = -coeff;
        }
        let start = c.pos;
        match ideal_atom(&mut c, ring)? {
            Atom::Prime(p) => add(&mut out, p, coeff),
            Atom::Principal(n) => {
                let f = factor_element(ring, &ring.int(n))
                    .map_err(|_| Error::parse(start, "(0) has no divisor"))?;
                for (p, e) in f.iter() {
                    add(&mut out, p.clone(), &coeff * BigRational::from_integer(e.into()));
                }
            }
        }
        first = false;
    }
    c.finish()?;
    Ok(out)
}

fn add(map: &mut BTreeMap<PrimeIdeal, BigRational>, p: PrimeIdeal, q: BigRational) {
    let e = map.entry(p.clone()).or_insert_with(BigRational::zero);
    *e += q;
    if e.is_zero() {
        map.remove(&p);
    }
}

/// A set of primes: parenthesized primes separated by commas, semicolons or
/// whitespace. The empty string is the empty set.
pub fn parse_prime_set(ring: &NumberRing, s: &str) -> Result<Vec<PrimeIdeal>> {
    let mut c = Cursor::new(s);
    let mut out: Vec<PrimeIdeal> = Vec::new();
    while !c.at_end() {
        let start = c.pos;
        let p = prime(&mut c, ring)?;
        if out.contains(&p) {
            return Err(Error::parse(start, format!("{p} listed twice")));
        }
        out.push(p);
        if !c.eat(',') {
            c.eat(';');
        }
    }
    Ok(out)
}

/// `[a1,a2,a3,a4,a6]` or the short form `[a4,a6]`.
pub fn parse_curve_coeffs(ring: &NumberRing, s: &str) -> Result<[NfElem; 5]> {
    let mut c = Cursor::new(s);
    c.expect('[')?;
    let mut v = Vec::new();
    if !c.eat(']') {
        loop {
            v.push(element(&mut c, ring)?);
            if c.eat(']') {
                break;
            }
            c.expect(',')?;
        }
    }
    c.finish()?;
    let z = NfElem::zero(ring.d());
    match v.len() {
        5 => Ok(v.try_into().unwrap()),
        2 => Ok([z.clone(), z.clone(), z, v[0].clone(), v[1].clone()]),
        k => Err(Error::parse(0, format!("expected 5 or 2 coefficients, found {k}"))),
    }
}

/// `O`, `(x, y)` or projective `(X : Y : Z)`; returns None for the origin.
pub fn parse_point(ring: &NumberRing, s: &str) -> Result<Option<(NfElem, NfElem)>> {
    let mut c = Cursor::new(s);
    if c.eat('O') || c.eat_word("inf") {
        c.finish()?;
        return Ok(None);
    }
    c.expect('(')?;
    let x = element(&mut c, ring)?;
    let out = if c.eat(':') {
        let y = element(&mut c, ring)?;
        c.expect(':')?;
        let zpos = c.pos;
        let z = element(&mut c, ring)?;
        if z.is_zero() {
            c.expect(')')?;
            c.finish()?;
            if x.is_zero() && !y.is_zero() {
                return Ok(None);
            }
            return Err(Error::parse(zpos, "not a point of an elliptic curve"));
        }
        let z2 = &z * &z;
        (&x / &z2, &y / &(&z2 * &z))
    } else {
        c.expect(',')?;
        let y = element(&mut c, ring)?;
        (x, y)
    };
    c.expect(')')?;
    c.finish()?;
    Ok(Some(out))
}
