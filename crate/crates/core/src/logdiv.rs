//! Divisors with rational coefficients along a marked set of primes D, the
//! logarithmic Picard group they define, and the two descriptions of the
//! Kummer log flat torsors under mu_n.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{floor_rat, frac};
use crate::error::{Error, Result};
use crate::numring::{
    factor_element, is_principal, pic_of_open, units_mod_n, FractionalIdeal, IdealClassGroup,
    NfElem, NumberRing, PrimeIdeal, UnitGroupModN,
};
use crate::qmodz::QmodZ;

/// A ring together with a finite set D of marked primes.
#[derive(Clone)]
pub struct MarkedBase {
    inner: Arc<BaseInner>,
}

struct BaseInner {
    ring: NumberRing,
    primes: Vec<PrimeIdeal>,
    cl: IdealClassGroup,
    // class-group coordinates of each marked prime
    marked_classes: Vec<Vec<u64>>,
}

impl MarkedBase {
    pub fn new(ring: &NumberRing, primes: &[PrimeIdeal]) -> Result<Self> {
        let mut sorted: Vec<PrimeIdeal> = primes.to_vec();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != primes.len() {
            return Err(Error::InvalidInput("marked primes must be distinct".into()));
        }
        if let Some(p) = sorted.iter().find(|p| p.d() != ring.d()) {
            return Err(Error::BaseMismatch(format!("{p} is not a prime of {ring}")));
        }
        let cl = ring.class_group()?;
        let marked_classes = sorted
            .iter()
            .map(|p| cl.dlog(&FractionalIdeal::prime(ring, p)))
            .collect::<Result<_>>()?;
        Ok(MarkedBase {
            inner: Arc::new(BaseInner { ring: ring.clone(), primes: sorted, cl, marked_classes }),
        })
    }

    pub fn parse(ring: &str, primes: &str) -> Result<Self> {
        let ring = NumberRing::parse(ring)?;
        let primes = crate::parse::parse_prime_set(&ring, primes)?;
        MarkedBase::new(&ring, &primes)
    }

    pub fn ring(&self) -> &NumberRing {
        &self.inner.ring
    }

    /// The marked primes, in canonical order.
    pub fn primes(&self) -> &[PrimeIdeal] {
        &self.inner.primes
    }

    pub fn class_group(&self) -> &IdealClassGroup {
        &self.inner.cl
    }

    pub fn is_marked(&self, p: &PrimeIdeal) -> bool {
        self.inner.primes.binary_search(p).is_ok()
    }

    fn index(&self, p: &PrimeIdeal) -> Option<usize> {
        self.inner.primes.binary_search(p).ok()
    }

    fn check_same(&self, other: &MarkedBase) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::BaseMismatch(format!("{self} vs {other}")))
        }
    }

    /// The class group of the open complement of D.
    pub fn pic_of_open(&self) -> Result<IdealClassGroup> {
        pic_of_open(self.ring(), self.primes())
    }
}

impl PartialEq for MarkedBase {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.ring() == other.ring() && self.primes() == other.primes())
    }
}

impl Eq for MarkedBase {}

impl fmt::Display for MarkedBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.primes().iter().map(|p| p.to_string()).collect();
        write!(f, "{} with D = {{{}}}", self.ring(), ps.join(", "))
    }
}

impl fmt::Debug for MarkedBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A Q-linear combination of primes, integral away from D.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalDivisor {
    base: MarkedBase,
    coeffs: BTreeMap<PrimeIdeal, BigRational>,
}

impl RationalDivisor {
    pub fn new(
        base: &MarkedBase,
        coeffs: impl IntoIterator<Item = (PrimeIdeal, BigRational)>,
    ) -> Result<Self> {
        let mut out = RationalDivisor::zero(base);
        for (p, c) in coeffs {
            if p.d() != base.ring().d() {
                return Err(Error::BaseMismatch(format!("{p} is not a prime of {}", base.ring())));
            }
            out.add_term(p, c);
        }
        if let Some((p, c)) = out.coeffs.iter().find(|(p, c)| !c.is_integer() && !base.is_marked(p))
        {
            return Err(Error::InvalidInput(format!(
                "coefficient {c} at {p} must be an integer since {p} is not marked"
            )));
        }
        Ok(out)
    }

    pub fn parse(base: &MarkedBase, s: &str) -> Result<Self> {
        let map = crate::parse::parse_divisor(base.ring(), s)?;
        RationalDivisor::new(base, map)
    }

    pub fn zero(base: &MarkedBase) -> Self {
        RationalDivisor { base: base.clone(), coeffs: BTreeMap::new() }
    }

    pub fn prime(base: &MarkedBase, p: &PrimeIdeal, c: BigRational) -> Result<Self> {
        RationalDivisor::new(base, [(p.clone(), c)])
    }

    pub fn from_ideal(base: &MarkedBase, ideal: &FractionalIdeal) -> Self {
        let mut out = RationalDivisor::zero(base);
        for (p, e) in ideal.iter() {
            out.add_term(p.clone(), BigRational::from_integer(e.into()));
        }
        out
    }

    /// The divisor of a nonzero element.
    pub fn principal(base: &MarkedBase, a: &NfElem) -> Result<Self> {
        Ok(Self::from_ideal(base, &factor_element(base.ring(), a)?))
    }

    fn add_term(&mut self, p: PrimeIdeal, c: BigRational) {
        let e = self.coeffs.entry(p.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&p);
        }
    }

    pub fn base(&self) -> &MarkedBase {
        &self.base
    }

    pub fn coefficient(&self, p: &PrimeIdeal) -> BigRational {
        self.coeffs.get(p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PrimeIdeal, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// The ideal with the same exponents, when every coefficient is an integer.
    pub fn to_ideal(&self) -> Option<FractionalIdeal> {
        if !self.is_integral() {
            return None;
        }
        let exps = self.coeffs.iter().map(|(p, c)| (p.clone(), c.to_integer().to_i64().unwrap()));
        Some(FractionalIdeal::from_exponents(self.base.ring(), exps))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.base.check_same(&other.base)?;
        let mut out = self.clone();
        for (p, c) in other.iter() {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Multiplication by a rational; the caller keeps the result integral
    /// away from D (integer scalars always do).
    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = RationalDivisor::zero(&self.base);
        for (p, c) in self.iter() {
            out.add_term(p.clone(), c * k);
        }
        out
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(k.into()))
    }
}

impl fmt::Display for RationalDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in self.iter() {
            let (sign, abs) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if abs.is_one() {
                write!(f, "{p}")?;
            } else {
                write!(f, "{abs}*{p}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for RationalDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A class in the logarithmic Picard group: rational divisors modulo
/// principal divisors. Stored canonically as the fractional parts of the
/// marked coefficients plus the ideal class of the integral remainder.
#[derive(Clone, PartialEq, Eq)]
pub struct LogPicClass {
    base: MarkedBase,
    fracs: Vec<BigRational>,
    cl: Vec<u64>,
}

impl LogPicClass {
    pub fn trivial(base: &MarkedBase) -> Self {
        LogPicClass {
            base: base.clone(),
            fracs: vec![BigRational::zero(); base.primes().len()],
            cl: vec![0; base.class_group().invariants().len()],
        }
    }

    pub fn base(&self) -> &MarkedBase {
        &self.base
    }

    /// Canonical representative: sum of f_m D_m with f_m in [0, 1), plus a
    /// fixed integral divisor in the ideal class of the remainder.
    pub fn representative(&self) -> RationalDivisor {
        let mut out = RationalDivisor::from_ideal(&self.base, &self.base.class_group().ideal_of(&self.cl));
        for (p, f) in self.base.primes().iter().zip(&self.fracs) {
            out.add_term(p.clone(), f.clone());
        }
        out
    }

    /// Class-group coordinates of the integral part of the representative.
    pub fn ideal_class_coords(&self) -> &[u64] {
        &self.cl
    }

    pub fn is_trivial(&self) -> bool {
        self.fracs.iter().all(|f| f.is_zero()) && self.cl.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.base.check_same(&other.base)?;
        let mut out = self.clone();
        let inv = self.base.class_group().invariants().to_vec();
        for (a, b) in out.cl.iter_mut().zip(&other.cl) {
            *a += b;
        }
        for m in 0..out.fracs.len() {
            let s = &out.fracs[m] + &other.fracs[m];
            let carry = floor_rat(&s);
            out.fracs[m] = frac(&s);
            out.add_marked_multiple(m, &carry);
        }
        out.reduce_cl(&inv);
        Ok(out)
    }

    fn add_marked_multiple(&mut self, m: usize, k: &BigInt) {
        let inv = self.base.class_group().invariants();
        for ((c, &d), &mod_) in self.cl.iter_mut().zip(&self.base.inner.marked_classes[m]).zip(inv) {
            let add = (k * BigInt::from(d)).mod_floor(&BigInt::from(mod_)).to_u64().unwrap();
            *c = (*c + add) % mod_;
        }
    }

    fn reduce_cl(&mut self, inv: &[u64]) {
        for (c, &m) in self.cl.iter_mut().zip(inv) {
            *c %= m;
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Self {
        let inv = self.base.class_group().invariants().to_vec();
        let mut out = self.clone();
        for (c, &m) in out.cl.iter_mut().zip(&inv) {
            *c = (k as i128 * *c as i128).rem_euclid(m as i128) as u64;
        }
        let kq = BigRational::from_integer(k.into());
        for m in 0..out.fracs.len() {
            let s = &self.fracs[m] * &kq;
            let carry = floor_rat(&s);
            out.fracs[m] = frac(&s);
            out.add_marked_multiple(m, &carry);
        }
        out
    }

    /// Least k >= 1 with k times the class trivial.
    pub fn order(&self) -> u64 {
        let l = self
            .fracs
            .iter()
            .fold(BigInt::one(), |acc, f| acc.lcm(f.denom()))
            .to_i64()
            .expect("denominator fits in 64 bits");
        let integral = self.scale(l);
        l as u64 * self.base.class_group().element_order(&integral.cl)
    }

    pub fn nu(&self) -> FracDivisorModZ {
        FracDivisorModZ {
            base: self.base.clone(),
            coeffs: self.fracs.iter().map(|f| QmodZ::new(f.clone())).collect(),
        }
    }
}

impl fmt::Display for LogPicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.representative())
    }
}

impl fmt::Debug for LogPicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The class of a rational divisor.
pub fn log_pic_class(d: &RationalDivisor) -> Result<LogPicClass> {
    let base = &d.base;
    let fracs: Vec<BigRational> = base.primes().iter().map(|p| frac(&d.coefficient(p))).collect();
    let mut integral = d.clone();
    for (p, f) in base.primes().iter().zip(&fracs) {
        integral.add_term(p.clone(), -f.clone());
    }
    let ideal = integral.to_ideal().ok_or_else(|| {
        Error::InvalidInput(format!("{d} is not integral away from the marked primes"))
    })?;
    let cl = base.class_group().dlog(&ideal)?;
    Ok(LogPicClass { base: base.clone(), fracs, cl })
}

/// Equality of classes, decided from the difference of representatives.
pub fn class_equal(c1: &LogPicClass, c2: &LogPicClass) -> Result<bool> {
    c1.base.check_same(&c2.base)?;
    let diff = c1.representative().sub(&c2.representative())?;
    match diff.to_ideal() {
        None => Ok(false),
        Some(ideal) => Ok(is_principal(diff.base.ring(), &ideal)?.is_some()),
    }
}

pub fn order_of_class(c: &LogPicClass) -> u64 {
    c.order()
}

pub fn nu(c: &LogPicClass) -> FracDivisorModZ {
    c.nu()
}

/// An element of the direct sum of copies of Q/Z indexed by D.
#[derive(Clone, PartialEq, Eq)]
pub struct FracDivisorModZ {
    base: MarkedBase,
    coeffs: Vec<QmodZ>,
}

impl FracDivisorModZ {
    pub fn new(base: &MarkedBase, coeffs: Vec<QmodZ>) -> Result<Self> {
        if coeffs.len() != base.primes().len() {
            return Err(Error::InvalidInput(format!(
                "expected {} coefficients, got {}",
                base.primes().len(),
                coeffs.len()
            )));
        }
        Ok(FracDivisorModZ { base: base.clone(), coeffs })
    }

    /// Builds from (prime, value) pairs; primes must be marked.
    pub fn from_pairs(base: &MarkedBase, pairs: &[(PrimeIdeal, QmodZ)]) -> Result<Self> {
        let mut coeffs = vec![QmodZ::zero(); base.primes().len()];
        for (p, q) in pairs {
            let i = base
                .index(p)
                .ok_or_else(|| Error::InvalidInput(format!("{p} is not a marked prime")))?;
            coeffs[i] = &coeffs[i] + q;
        }
        Ok(FracDivisorModZ { base: base.clone(), coeffs })
    }

    pub fn zero(base: &MarkedBase) -> Self {
        FracDivisorModZ { base: base.clone(), coeffs: vec![QmodZ::zero(); base.primes().len()] }
    }

    pub fn base(&self) -> &MarkedBase {
        &self.base
    }

    pub fn coeffs(&self) -> &[QmodZ] {
        &self.coeffs
    }

    pub fn coefficient(&self, p: &PrimeIdeal) -> QmodZ {
        self.base.index(p).map(|i| self.coeffs[i].clone()).unwrap_or_else(QmodZ::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        FracDivisorModZ { base: self.base.clone(), coeffs }
    }

    pub fn scale(&self, k: i64) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.scale(k)).collect();
        FracDivisorModZ { base: self.base.clone(), coeffs }
    }

    /// Order in the group (lcm of the denominators).
    pub fn order(&self) -> u64 {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.order()))
            .to_u64()
            .expect("order fits in 64 bits")
    }

    /// Numerators k_m in [0, n) with coefficient k_m / n.
    fn lifts(&self, n: u64) -> Result<Vec<u64>> {
        let nq = BigRational::from_integer(n.into());
        self.coeffs
            .iter()
            .zip(self.base.primes())
            .map(|(c, p)| {
                let k = c.value() * &nq;
                if !k.is_integer() {
                    return Err(Error::Denominator { prime: p.to_string(), coeff: c.to_string(), n });
                }
                Ok(k.to_integer().to_u64().unwrap())
            })
            .collect()
    }
}

impl fmt::Display for FracDivisorModZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .zip(self.base.primes())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, p)| format!("{c}*{p}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for FracDivisorModZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An element of Pic / n Pic, as coordinates modulo gcd(n, s_i) for the
/// invariant factors s_i of the class group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicModN {
    pub moduli: Vec<u64>,
    pub coords: Vec<u64>,
}

impl PicModN {
    pub fn is_trivial(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for PicModN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .zip(&self.moduli)
            .filter(|(_, &m)| m > 1)
            .map(|(c, m)| format!("{c} mod {m}"))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// theta_n: sends (k_m/n) D_m to the class of sum k_m D_m modulo n Pic.
pub fn theta_n(omega: &FracDivisorModZ, n: u64) -> Result<PicModN> {
    check_n(n)?;
    let ks = omega.lifts(n)?;
    let base = &omega.base;
    let inv = base.class_group().invariants();
    let moduli: Vec<u64> = inv.iter().map(|&s| s.gcd(&n)).collect();
    let mut coords = vec![0u64; inv.len()];
    for (k, cls) in ks.iter().zip(&base.inner.marked_classes) {
        for ((c, &x), &m) in coords.iter_mut().zip(cls).zip(&moduli) {
            *c = ((*c as u128 + *k as u128 * x as u128) % m as u128) as u64;
        }
    }
    Ok(PicModN { moduli, coords })
}

/// The canonical n-lifting M = sum k_m D_m with k_m in [0, n).
pub fn n_lifting(omega: &FracDivisorModZ, n: u64) -> Result<RationalDivisor> {
    check_n(n)?;
    let ks = omega.lifts(n)?;
    let pairs = omega
        .base
        .primes()
        .iter()
        .zip(ks)
        .map(|(p, k)| (p.clone(), BigRational::from_integer(k.into())));
    RationalDivisor::new(&omega.base, pairs)
}

/// For M an integral divisor whose class lies in n Pic: an ideal W and a
/// generator g of the ideal M - nW.
pub fn n_divisibility_witness(
    m: &RationalDivisor,
    n: u64,
) -> Result<Option<(FractionalIdeal, NfElem)>> {
    check_n(n)?;
    let base = &m.base;
    let ideal = m
        .to_ideal()
        .ok_or_else(|| Error::InvalidInput(format!("{m} is not an integral divisor")))?;
    let cl = base.class_group();
    let target = cl.dlog(&ideal)?;
    let radix: Vec<i128> = cl.invariants().iter().map(|&s| s as i128).collect();
    for c in crate::lattice::mixed_radix(&radix) {
        let nc: Vec<u64> = c.iter().zip(cl.invariants()).map(|(&x, &s)| (x * n) % s).collect();
        if nc != target {
            continue;
        }
        let w = cl.ideal_of(&c);
        let rest = ideal.mul(&w.pow(-(n as i64)));
        if let Some(g) = is_principal(base.ring(), &rest)? {
            return Ok(Some((w, g)));
        }
    }
    Ok(None)
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidInput("n must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// H^1 for the flat topology with mu_n coefficients, via the Kummer sequence:
/// units modulo n-th powers and the n-torsion of the Picard group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FppfGroup {
    pub n: u64,
    pub units: UnitGroupModN,
    /// Invariant factors of Pic[n] (factors of order 1 dropped).
    pub pic_torsion: Vec<u64>,
}

impl FppfGroup {
    pub fn order(&self) -> u64 {
        self.units.order() * self.pic_torsion.iter().product::<u64>()
    }
}

/// H^1_fl(Spec R[1/D], mu_n).
pub fn kummer_fppf_group(ring: &NumberRing, inverted: &[PrimeIdeal], n: u64) -> Result<FppfGroup> {
    check_n(n)?;
    let units = units_mod_n(ring, inverted, n)?;
    let pic = pic_of_open(ring, inverted)?;
    let pic_torsion = pic.invariants().iter().map(|&s| s.gcd(&n)).filter(|&g| g > 1).collect();
    Ok(FppfGroup { n, units, pic_torsion })
}

/// H^1 for the Kummer log flat topology with mu_n coefficients, computed
/// from the exact sequence through theta_n, together with the flat
/// cohomology of the open complement it must agree with.
#[derive(Clone, Debug)]
pub struct KummerLogGroup {
    pub n: u64,
    /// |H^1_fl(S, mu_n)|.
    pub fppf_part_order: u64,
    /// Every element of ker theta_n.
    pub kernel: Vec<FracDivisorModZ>,
    /// Generators of ker theta_n with their orders.
    pub kernel_generators: Vec<(FracDivisorModZ, u64)>,
    /// |H^1_fl(U, mu_n)| for U the complement of D.
    pub open_order: u64,
}

impl KummerLogGroup {
    pub fn order(&self) -> u64 {
        self.fppf_part_order * self.kernel.len() as u64
    }

    pub fn orders_agree(&self) -> bool {
        self.order() == self.open_order
    }

    /// Both presentations, without asserting that they agree.
    pub fn compute(base: &MarkedBase, n: u64) -> Result<Self> {
        check_n(n)?;
        let ring = base.ring();
        let fppf_part_order = kummer_fppf_group(ring, &[], n)?.order();
        let open_order = kummer_fppf_group(ring, base.primes(), n)?.order();
        let r = base.primes().len();
        let radix = vec![n as i128; r];
        let mut kernel = Vec::new();
        for ks in crate::lattice::mixed_radix(&radix) {
            let coeffs = ks.iter().map(|&k| QmodZ::from_fraction(k as i64, n as i64)).collect();
            let omega = FracDivisorModZ { base: base.clone(), coeffs };
            if theta_n(&omega, n)?.is_trivial() {
                kernel.push(omega);
            }
        }
        let kernel_generators = greedy_generators(&kernel);
        Ok(KummerLogGroup { n, fppf_part_order, kernel, kernel_generators, open_order })
    }
}

fn greedy_generators(elements: &[FracDivisorModZ]) -> Vec<(FracDivisorModZ, u64)> {
    let mut span: BTreeSet<Vec<QmodZ>> = BTreeSet::new();
    if let Some(first) = elements.first() {
        span.insert(FracDivisorModZ::zero(&first.base).coeffs);
    }
    let mut gens = Vec::new();
    for e in elements {
        if span.contains(&e.coeffs) {
            continue;
        }
        let ord = e.order();
        let old: Vec<Vec<QmodZ>> = span.iter().cloned().collect();
        for k in 1..ord {
            let m = e.scale(k as i64);
            for s in &old {
                let sum: Vec<QmodZ> = s.iter().zip(&m.coeffs).map(|(a, b)| a + b).collect();
                span.insert(sum);
            }
        }
        gens.push((e.clone(), ord));
    }
    gens
}

/// The Kummer log flat group; fails if the two presentations disagree.
pub fn kummer_log_group(base: &MarkedBase, n: u64) -> Result<KummerLogGroup> {
    let g = KummerLogGroup::compute(base, n)?;
    if !g.orders_agree() {
        return Err(Error::Consistency(format!(
            "kummer log order {} differs from flat order {} over the open complement for {base}, n = {n}",
            g.order(),
            g.open_order
        )));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn z5() -> MarkedBase {
        MarkedBase::parse("Z", "(5)").unwrap()
    }

    fn minus5_p2() -> MarkedBase {
        MarkedBase::parse("Q(sqrt -5)", "(2, 1+w)").unwrap()
    }

    fn class(base: &MarkedBase, s: &str) -> LogPicClass {
        log_pic_class(&RationalDivisor::parse(base, s).unwrap()).unwrap()
    }

    #[test]
    fn log_pic_class_examples() {
        let b = z5();
        assert!(class(&b, "3*(5)").is_trivial());
        let half = class(&b, "1/2*(5)");
        assert!(half.add(&half).unwrap().is_trivial());
        let b = minus5_p2();
        let c = class(&b, "(2, 1+w)");
        assert!(!c.is_trivial());
        assert_eq!(c.order(), 2);
    }

    #[test]
    fn equality_examples() {
        let b = z5();
        let a = class(&b, "1/2*(5)");
        let a2 = log_pic_class(
            &RationalDivisor::parse(&b, "1/2*(5)")
                .unwrap()
                .add(&RationalDivisor::principal(&b, &b.ring().int(3)).unwrap())
                .unwrap(),
        )
        .unwrap();
        assert!(class_equal(&a, &a2).unwrap());
        assert_eq!(a, a2);
        assert!(!class_equal(&class(&b, "1/3*(5)"), &class(&b, "2/3*(5)")).unwrap());
        let b = minus5_p2();
        let x = class(&b, "(2,1+w) + 1/2*(2,1+w)");
        let y = class(&b, "1/2*(2,1+w) + (2) - (2,1+w)");
        assert!(class_equal(&x, &y).unwrap());
        assert_eq!(x, y);
    }

    #[test]
    fn orders() {
        let b = z5();
        assert_eq!(class(&b, "1/3*(5)").order(), 3);
        assert_eq!(LogPicClass::trivial(&b).order(), 1);
        assert_eq!(class(&minus5_p2(), "1/2*(2,1+w)").order(), 4);
    }

    #[test]
    fn nu_examples() {
        let b = z5();
        let p5 = b.primes()[0].clone();
        assert_eq!(class(&b, "1/2*(5)").nu().coefficient(&p5), QmodZ::from_fraction(1, 2));
        assert!(class(&b, "(5) + (7)").nu().is_zero());
        let c = class(&b, "1/3*(5) + 4*(7)");
        assert_eq!(c.nu().coefficient(&p5), QmodZ::from_fraction(1, 3));
        assert!(RationalDivisor::parse(&b, "1/2*(7)").is_err());
    }

    #[test]
    fn theta_and_lifting() {
        let b = z5();
        let p5 = b.primes()[0].clone();
        let half = FracDivisorModZ::from_pairs(&b, &[(p5.clone(), QmodZ::from_fraction(1, 2))]).unwrap();
        assert!(theta_n(&half, 2).unwrap().is_trivial());
        assert!(matches!(theta_n(&half, 3), Err(Error::Denominator { .. })));
        let three_q = FracDivisorModZ::from_pairs(&b, &[(p5.clone(), QmodZ::from_fraction(3, 4))]).unwrap();
        assert_eq!(n_lifting(&three_q, 4).unwrap().coefficient(&p5), rat(3, 1));

        let b = minus5_p2();
        let p2 = b.primes()[0].clone();
        let half = FracDivisorModZ::from_pairs(&b, &[(p2.clone(), QmodZ::from_fraction(1, 2))]).unwrap();
        assert!(!theta_n(&half, 2).unwrap().is_trivial());
        assert!(theta_n(&FracDivisorModZ::zero(&b), 2).unwrap().is_trivial());
        let m = n_lifting(&half, 2).unwrap();
        assert_eq!(m.coefficient(&p2), rat(1, 1));
        assert!(n_lifting(&FracDivisorModZ::zero(&b), 2).unwrap().is_zero());
        // [p2] is not twice anything in Z/2
        assert!(n_divisibility_witness(&m, 2).unwrap().is_none());
        assert!(n_divisibility_witness(&m.scale_int(2), 2).unwrap().is_some());
    }

    #[test]
    fn fppf_examples() {
        let z = NumberRing::integers();
        assert_eq!(kummer_fppf_group(&z, &[], 2).unwrap().order(), 2);
        assert_eq!(kummer_fppf_group(&z, &z.primes_above(5).unwrap(), 2).unwrap().order(), 4);
        let r = NumberRing::quadratic(-5).unwrap();
        assert_eq!(kummer_fppf_group(&r, &[], 2).unwrap().order(), 4);
    }

    #[test]
    fn kummer_log_examples() {
        let g = kummer_log_group(&z5(), 2).unwrap();
        assert_eq!(g.order(), 4);
        let z_empty = MarkedBase::parse("Z", "").unwrap();
        let g = kummer_log_group(&z_empty, 3).unwrap();
        assert_eq!(g.order(), kummer_fppf_group(&NumberRing::integers(), &[], 3).unwrap().order());
        // both presentations give 4 for (Z[sqrt -5], {p2}, 2)
        let g = kummer_log_group(&minus5_p2(), 2).unwrap();
        assert_eq!((g.order(), g.open_order), (4, 4));
        assert_eq!(g.kernel.len(), 1);
    }
}
