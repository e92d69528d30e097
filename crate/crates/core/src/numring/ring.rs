use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::classgroup::{self, ClassGroupData, IdealClassGroup};
use super::nf::NfElem;
use super::prime::{PrimeIdeal, Splitting};
use crate::arith::{floor_sqrt, is_prime, is_squarefree, kronecker, modpow};
use crate::error::{Error, Result};

/// Default number of continued-fraction steps spent looking for a
/// fundamental unit of a real quadratic ring.
pub const DEFAULT_UNIT_SEARCH_CAP: usize = 20_000;

/// Z, or the full ring of integers of Q(sqrt d).
#[derive(Clone)]
pub struct NumberRing {
    inner: Arc<Inner>,
}

struct Inner {
    // 1 encodes Z
    d: i64,
    unit_cap: usize,
    fundamental_unit: OnceLock<Result<Option<NfElem>>>,
    class_group: OnceLock<Result<Arc<ClassGroupData>>>,
}

impl NumberRing {
    pub fn integers() -> Self {
        Self::build(1, DEFAULT_UNIT_SEARCH_CAP)
    }

    pub fn quadratic(d: i64) -> Result<Self> {
        Self::quadratic_with_cap(d, DEFAULT_UNIT_SEARCH_CAP)
    }

    /// Like [`NumberRing::quadratic`], with an explicit continued-fraction
    /// budget for the fundamental unit (ignored for imaginary fields).
    pub fn quadratic_with_cap(d: i64, unit_cap: usize) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(Error::InvalidInput(format!(
                "Q(sqrt {d}) needs a squarefree d other than 0 and 1"
            )));
        }
        Ok(Self::build(d, unit_cap))
    }

    fn build(d: i64, unit_cap: usize) -> Self {
        NumberRing {
            inner: Arc::new(Inner {
                d,
                unit_cap,
                fundamental_unit: OnceLock::new(),
                class_group: OnceLock::new(),
            }),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        crate::parse::parse_ring(s)
    }

    /// The radicand d, or 1 for Z.
    pub fn d(&self) -> i64 {
        self.inner.d
    }

    pub fn is_integers(&self) -> bool {
        self.inner.d == 1
    }

    pub fn is_imaginary(&self) -> bool {
        self.inner.d < 0
    }

    pub fn is_real_quadratic(&self) -> bool {
        self.inner.d > 1
    }

    pub fn degree(&self) -> u32 {
        if self.is_integers() {
            1
        } else {
            2
        }
    }

    pub fn discriminant(&self) -> i64 {
        let d = self.inner.d;
        if d == 1 {
            1
        } else if d.rem_euclid(4) == 1 {
            d
        } else {
            4 * d
        }
    }

    /// (tr, nm) with w^2 = tr*w - nm for the ring generator w.
    pub fn omega_poly(&self) -> (i64, i64) {
        let d = self.inner.d;
        if d.rem_euclid(4) == 1 {
            (1, (1 - d) / 4)
        } else {
            (0, -d)
        }
    }

    pub fn omega(&self) -> NfElem {
        NfElem::from_omega_int(self.d(), BigInt::zero(), BigInt::one())
    }

    pub fn element(&self, x: i64, y: i64) -> NfElem {
        NfElem::from_omega_int(self.d(), x.into(), y.into())
    }

    pub fn int(&self, n: i64) -> NfElem {
        NfElem::from_int(self.d(), n)
    }

    pub fn parse_element(&self, s: &str) -> Result<NfElem> {
        crate::parse::parse_element(self, s)
    }

    pub fn parse_prime(&self, s: &str) -> Result<PrimeIdeal> {
        crate::parse::parse_prime(self, s)
    }

    pub fn contains(&self, a: &NfElem) -> bool {
        a.d() == self.d() || (a.is_rational() && self.is_integers())
    }

    /// Norm form x^2 + tr*x*y + nm*y^2 of x + y*w.
    pub(crate) fn norm_form(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let (tr, nm) = self.omega_poly();
        x * x + BigInt::from(tr) * x * y + BigInt::from(nm) * y * y
    }

    /// Product in integer coordinates.
    pub(crate) fn mul_coords(
        &self,
        (x1, y1): (&BigInt, &BigInt),
        (x2, y2): (&BigInt, &BigInt),
    ) -> (BigInt, BigInt) {
        let (tr, nm) = self.omega_poly();
        let yy = y1 * y2;
        (x1 * x2 - BigInt::from(nm) * &yy, x1 * y2 + x2 * y1 + BigInt::from(tr) * yy)
    }

    /// The prime ideals above the rational prime p, in canonical order.
    pub fn primes_above(&self, p: u64) -> Result<Vec<PrimeIdeal>> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        let d = self.d();
        if self.is_integers() {
            return Ok(vec![PrimeIdeal::new_unchecked(d, p, Splitting::Rational)]);
        }
        let roots = self.omega_roots_mod(p);
        let out = match kronecker(self.discriminant(), p) {
            -1 => vec![PrimeIdeal::new_unchecked(d, p, Splitting::Inert)],
            0 => vec![PrimeIdeal::new_unchecked(d, p, Splitting::Ramified { root: roots[0] })],
            _ => roots
                .iter()
                .map(|&r| PrimeIdeal::new_unchecked(d, p, Splitting::Split { root: r }))
                .collect(),
        };
        Ok(out)
    }

    /// Roots of w^2 - tr*w + nm modulo p, ascending.
    pub(crate) fn omega_roots_mod(&self, p: u64) -> Vec<u64> {
        let (tr, nm) = self.omega_poly();
        let tr = tr.rem_euclid(p as i64) as u64;
        let nm = nm.rem_euclid(p as i64) as u64;
        let f = |r: u64| {
            let v = (r as u128 * r as u128 + nm as u128 + (p - tr) as u128 * r as u128)
                % p as u128;
            v == 0
        };
        if p < 1 << 12 {
            return (0..p).filter(|&r| f(r)).collect();
        }
        // odd p: r = (tr +- sqrt(tr^2 - 4nm)) / 2
        let field = super::fq::ResidueField::prime(p);
        let disc = (tr as i128 * tr as i128 - 4 * nm as i128).rem_euclid(p as i128) as u64;
        let Some(s) = field.sqrt(field.from_u64(disc)) else {
            return Vec::new();
        };
        let half = modpow(2, p - 2, p);
        let mut roots: Vec<u64> = [s.0, (p - s.0) % p]
            .iter()
            .map(|&sq| (((tr + sq) % p) as u128 * half as u128 % p as u128) as u64)
            .collect();
        roots.sort_unstable();
        roots.dedup();
        roots
    }

    /// Generator and order of the group of roots of unity.
    pub fn roots_of_unity(&self) -> (NfElem, u64) {
        match self.d() {
            -1 => (self.omega(), 4),
            -3 => (self.omega(), 6),
            d => (NfElem::from_int(d, -1), 2),
        }
    }

    /// Unit rank: 1 for real quadratic rings, 0 otherwise.
    pub fn unit_rank(&self) -> usize {
        usize::from(self.is_real_quadratic())
    }

    /// The fundamental unit eps > 1 of a real quadratic ring.
    pub fn fundamental_unit(&self) -> Result<Option<NfElem>> {
        self.inner
            .fundamental_unit
            .get_or_init(|| {
                if self.is_real_quadratic() {
                    fundamental_unit(self, self.inner.unit_cap).map(Some)
                } else {
                    Ok(None)
                }
            })
            .clone()
    }

    pub fn class_group(&self) -> Result<IdealClassGroup> {
        self.class_group_data().map(IdealClassGroup::full)
    }

    pub(crate) fn class_group_data(&self) -> Result<Arc<ClassGroupData>> {
        self.inner
            .class_group
            .get_or_init(|| classgroup::compute(self).map(Arc::new))
            .clone()
    }

    pub fn class_number(&self) -> Result<u64> {
        Ok(self.class_group()?.order())
    }

    /// Every prime of norm at most `bound`, ordered by norm then rendering.
    pub fn primes_up_to_norm(&self, bound: u64) -> Result<Vec<PrimeIdeal>> {
        let mut out = Vec::new();
        for p in 2..=bound {
            if !is_prime(p) {
                continue;
            }
            for q in self.primes_above(p)? {
                if q.norm() <= bound {
                    out.push(q);
                }
            }
        }
        out.sort_by_key(|q| q.norm());
        Ok(out)
    }
}

fn fundamental_unit(ring: &NumberRing, cap: usize) -> Result<NfElem> {
    // continued fraction of w = (P + sqrt d)/Q; the first convergent h/k with
    // h - k*w a unit gives the fundamental unit up to sign and conjugation
    let d = ring.d();
    let db = BigInt::from(d);
    let s = floor_sqrt(&db);
    let (mut p, mut q) = if d.rem_euclid(4) == 1 {
        (BigInt::one(), BigInt::from(2))
    } else {
        (BigInt::zero(), BigInt::one())
    };
    let (mut h1, mut h2) = (BigInt::one(), BigInt::zero());
    let (mut k1, mut k2) = (BigInt::zero(), BigInt::one());
    for _ in 0..cap {
        let a = if q.is_positive() {
            (&p + &s).div_floor(&q)
        } else {
            let nq: BigInt = -&q;
            let fl: BigInt = (&p + &s).div_floor(&nq);
            -(fl + BigInt::one())
        };
        let h = &a * &h1 + &h2;
        let k = &a * &k1 + &k2;
        let n = ring.norm_form(&h, &(-&k));
        if n.abs().is_one() {
            let u = NfElem::from_omega_int(d, h, -k);
            return Ok(normalize_unit(u));
        }
        h2 = std::mem::replace(&mut h1, h);
        k2 = std::mem::replace(&mut k1, k);
        let pn = &a * &q - &p;
        let qn = (&db - &pn * &pn) / &q;
        p = pn;
        q = qn;
    }
    Err(Error::BoundExceeded(format!(
        "no fundamental unit of Q(sqrt {d}) within {cap} continued-fraction steps"
    )))
}

/// Among +-u, +-conj(u), the one exceeding 1 under the real embedding.
fn normalize_unit(u: NfElem) -> NfElem {
    let cands = [u.clone(), -&u, u.conj(), -u.conj()];
    cands
        .into_iter()
        .find(|c| c.rational_part().is_positive() && c.irrational_part().is_positive())
        .expect("one of the four sign choices is > 1")
}

/// Real embedding a + b*sqrt(d) as f64, for search-bound estimates.
pub(crate) fn approx_real(a: &NfElem) -> Option<f64> {
    let x = a.rational_part().to_f64()?;
    let y = a.irrational_part().to_f64()?;
    Some(x + y * (a.d() as f64).sqrt())
}

impl PartialEq for NumberRing {
    fn eq(&self, other: &Self) -> bool {
        self.d() == other.d()
    }
}

impl Eq for NumberRing {}

impl Hash for NumberRing {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.d().hash(state)
    }
}

impl fmt::Debug for NumberRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NumberRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integers() {
            write!(f, "Z")
        } else {
            write!(f, "Q(sqrt {})", self.d())
        }
    }
}
