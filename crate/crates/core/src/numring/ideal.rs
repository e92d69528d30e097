use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::nf::NfElem;
use super::prime::{PrimeIdeal, Splitting};
use super::ring::{approx_real, NumberRing};
use crate::arith::{exact_sqrt, factor};
use crate::error::{Error, Result};

/// Largest number of norm-form candidates tried by one principality search.
const PRINCIPAL_SEARCH_CAP: u64 = 50_000_000;

/// A nonzero fractional ideal, as exponents on prime ideals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FractionalIdeal {
    ring: NumberRing,
    exps: BTreeMap<PrimeIdeal, i64>,
}

impl FractionalIdeal {
    pub fn unit(ring: &NumberRing) -> Self {
        FractionalIdeal { ring: ring.clone(), exps: BTreeMap::new() }
    }

    pub fn prime(ring: &NumberRing, p: &PrimeIdeal) -> Self {
        Self::from_exponents(ring, [(p.clone(), 1)])
    }

    pub fn from_exponents(
        ring: &NumberRing,
        exps: impl IntoIterator<Item = (PrimeIdeal, i64)>,
    ) -> Self {
        let mut out = Self::unit(ring);
        for (p, e) in exps {
            out.add_exponent(&p, e);
        }
        out
    }

    fn add_exponent(&mut self, p: &PrimeIdeal, e: i64) {
        let entry = self.exps.entry(p.clone()).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.exps.remove(p);
        }
    }

    pub fn ring(&self) -> &NumberRing {
        &self.ring
    }

    pub fn exponent(&self, p: &PrimeIdeal) -> i64 {
        self.exps.get(p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PrimeIdeal, i64)> {
        self.exps.iter().map(|(p, &e)| (p, e))
    }

    pub fn is_unit(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.exps.values().all(|&e| e > 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, e) in other.iter() {
            out.add_exponent(p, e);
        }
        out
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn pow(&self, k: i64) -> Self {
        let exps = self.exps.iter().map(|(p, &e)| (p.clone(), e * k)).collect();
        let mut out = FractionalIdeal { ring: self.ring.clone(), exps };
        out.exps.retain(|_, e| *e != 0);
        out
    }

    /// Absolute norm, a positive rational.
    pub fn norm(&self) -> BigRational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (p, e) in self.iter() {
            let n = BigInt::from(p.norm()).pow(e.unsigned_abs() as u32);
            if e > 0 {
                num *= n;
            } else {
                den *= n;
            }
        }
        BigRational::new(num, den)
    }

    /// A generator if the ideal is principal.
    pub fn generator(&self) -> Result<Option<NfElem>> {
        is_principal(&self.ring, self)
    }
}

impl fmt::Display for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "(1)");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        f.write_str(&parts.join(" * "))
    }
}

impl fmt::Debug for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The principal divisor of a nonzero field element.
pub fn factor_element(ring: &NumberRing, a: &NfElem) -> Result<FractionalIdeal> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    if !ring.contains(a) {
        return Err(Error::InvalidInput(format!("{a} does not lie in {ring}")));
    }
    let c = a.denominator();
    let n = a.scale(&BigRational::from_integer(c.clone())).norm();
    let mut primes: Vec<u64> = factor(&n.to_integer())?.into_keys().collect();
    primes.extend(factor(&c)?.into_keys());
    primes.sort_unstable();
    primes.dedup();
    let mut out = FractionalIdeal::unit(ring);
    for p in primes {
        for q in ring.primes_above(p)? {
            let v = q.valuation(a)?;
            out.add_exponent(&q, v);
        }
    }
    Ok(out)
}

/// Z-basis {a, b + c*w} in Hermite form, 0 <= b < a, c > 0, c | a, c | b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Hermite {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl Hermite {
    pub fn unit() -> Self {
        Hermite { a: BigInt::one(), b: BigInt::zero(), c: BigInt::one() }
    }

    pub fn of_prime(p: &PrimeIdeal) -> Self {
        let (a, b, c) = p.hermite();
        Hermite { a, b, c }
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.c
    }

    fn gens(&self) -> [(BigInt, BigInt); 2] {
        [(self.a.clone(), BigInt::zero()), (self.b.clone(), self.c.clone())]
    }

    pub fn from_generators(gens: &[(BigInt, BigInt)]) -> Self {
        let mut pivot: Option<(BigInt, BigInt)> = None;
        let mut xs: Vec<BigInt> = Vec::new();
        for (x, y) in gens {
            if y.is_zero() {
                xs.push(x.clone());
                continue;
            }
            match pivot.take() {
                None => pivot = Some((x.clone(), y.clone())),
                Some((px, py)) => {
                    let e = py.extended_gcd(y);
                    let g = e.gcd;
                    let nx = &e.x * &px + &e.y * x;
                    let ny = &e.x * &py + &e.y * y;
                    debug_assert_eq!(ny, g);
                    // the complementary combination has zero w-coordinate
                    xs.push((y / &g) * &px - (&py / &g) * x);
                    pivot = Some((nx, ny));
                }
            }
        }
        let (mut px, mut py) = pivot.expect("ideal of full rank");
        if py.is_negative() {
            px = -px;
            py = -py;
        }
        let a = xs.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        debug_assert!(!a.is_zero());
        Hermite { b: px.mod_floor(&a), a, c: py }
    }

    pub fn mul(&self, other: &Self, ring: &NumberRing) -> Self {
        let mut gens = Vec::with_capacity(4);
        for (x1, y1) in self.gens() {
            for (x2, y2) in other.gens() {
                gens.push(ring.mul_coords((&x1, &y1), (&x2, &y2)));
            }
        }
        Hermite::from_generators(&gens)
    }

    pub fn contains(&self, x: &BigInt, y: &BigInt) -> bool {
        if !(y % &self.c).is_zero() {
            return false;
        }
        let k = y / &self.c;
        ((x - k * &self.b) % &self.a).is_zero()
    }
}

/// Integral ideal J and positive integer m with I = J / m.
fn integral_form(ring: &NumberRing, ideal: &FractionalIdeal) -> (Hermite, BigInt) {
    let mut j = Hermite::unit();
    let mut m = BigInt::one();
    for (p, e) in ideal.iter() {
        let (factor, count) = if e > 0 {
            (Some(Hermite::of_prime(p)), e)
        } else {
            m *= BigInt::from(p.p()).pow(e.unsigned_abs() as u32);
            match p.splitting() {
                Splitting::Inert => (None, -e),
                _ => (Some(Hermite::of_prime(&p.conjugate())), -e),
            }
        };
        if let Some(f) = factor {
            for _ in 0..count {
                j = j.mul(&f, ring);
            }
        }
    }
    (j, m)
}

/// A generator of the ideal if it is principal, found by exhaustive search of
/// the norm form over a box that is guaranteed to contain one.
pub fn is_principal(ring: &NumberRing, ideal: &FractionalIdeal) -> Result<Option<NfElem>> {
    if ideal.ring() != ring {
        return Err(Error::BaseMismatch(format!("ideal {ideal} does not belong to {ring}")));
    }
    if ring.is_integers() {
        let mut g = BigRational::one();
        for (p, e) in ideal.iter() {
            let pe = BigRational::from_integer(BigInt::from(p.p()).pow(e.unsigned_abs() as u32));
            g = if e > 0 { g * pe } else { g / pe };
        }
        return Ok(Some(NfElem::from_rational(1, g)));
    }
    let (j, m) = integral_form(ring, ideal);
    let Some((x, y)) = integral_generator(ring, &j)? else {
        return Ok(None);
    };
    let g = NfElem::from_omega_int(ring.d(), x, y).scale(&BigRational::new(BigInt::one(), m));
    if factor_element(ring, &g)? != *ideal {
        return Err(Error::Consistency(format!("generator {g} does not generate {ideal}")));
    }
    Ok(Some(g))
}

fn integral_generator(ring: &NumberRing, j: &Hermite) -> Result<Option<(BigInt, BigInt)>> {
    let n = j.norm();
    if n.is_one() {
        return Ok(Some((BigInt::one(), BigInt::zero())));
    }
    let disc = BigInt::from(ring.discriminant());
    let (tr, _) = ring.omega_poly();
    let tr = BigInt::from(tr);
    let ymax: BigInt = if ring.is_imaginary() {
        // 4N = (2X + tr Y)^2 + |D| Y^2
        (BigInt::from(4) * &n / disc.abs()).sqrt() + 1
    } else {
        let eps = ring.fundamental_unit()?.expect("real quadratic ring has a unit");
        let e = approx_real(&eps).filter(|e| e.is_finite()).ok_or_else(|| {
            Error::BoundExceeded("fundamental unit too large for the principality box".into())
        })?;
        let nf = n.to_f64().unwrap_or(f64::INFINITY);
        let bound = (e + 1.0) * nf.sqrt() / (ring.discriminant() as f64).sqrt();
        if !bound.is_finite() || bound > 1e15 {
            return Err(Error::BoundExceeded(format!("principality box of size {bound:e}")));
        }
        BigInt::from(bound.ceil() as u64) + 1
    };
    let kmax = &ymax / &j.c;
    if kmax > BigInt::from(PRINCIPAL_SEARCH_CAP) {
        return Err(Error::BoundExceeded(format!(
            "principality search over {kmax} candidates for an ideal of norm {n}"
        )));
    }
    let kmax = kmax.to_i64().unwrap();
    let targets: Vec<BigInt> =
        if ring.is_imaginary() { vec![n.clone()] } else { vec![n.clone(), -n.clone()] };
    for k in 0..=kmax {
        for sign in [1i64, -1] {
            if k == 0 && sign == -1 {
                continue;
            }
            let kk = BigInt::from(sign * k);
            let y = &kk * &j.c;
            for t in &targets {
                // X = (-tr Y +- sqrt(D Y^2 + 4t)) / 2
                let rad = &disc * &y * &y + BigInt::from(4) * t;
                let Some(s) = exact_sqrt(&rad) else { continue };
                for root in [s.clone(), -s.clone()] {
                    let twice = root - &tr * &y;
                    if twice.is_odd() {
                        continue;
                    }
                    let x = twice / 2;
                    if j.contains(&x, &y) {
                        return Ok(Some((x, y)));
                    }
                }
            }
        }
    }
    Ok(None)
}
