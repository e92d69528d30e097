//! The monodromy pairing on points, the logarithmic class pairing valued in
//! the log Picard group, and the class pairing restricted to orthogonal
//! component subgroups.
mod miller;
mod points;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::logdiv::{log_pic_class, FracDivisorModZ, LogPicClass, MarkedBase, RationalDivisor};
use crate::neron::{bad_reduction, tate, CurvePoint, EllipticCurve, ReductionData};
use crate::numring::{FractionalIdeal, NfElem, NumberRing, PrimeIdeal};
use crate::qmodz::QmodZ;

pub use miller::{miller_function, miller_function_eval, RationalFunctionOnCurve};
pub use points::{field_sqrt, small_points};

/// Integer x-coordinates searched for auxiliary translation points.
pub const TRANSLATION_SEARCH_BOUND: i64 = 60;
/// Translation points tried before giving up on a support collision.
pub const DEFAULT_TRANSLATION_RETRIES: usize = 16;

/// Monodromy pairing values at the marked primes.
#[derive(Clone, PartialEq, Eq)]
pub struct MonodromyProfile {
    values: BTreeMap<PrimeIdeal, QmodZ>,
}

impl MonodromyProfile {
    pub fn get(&self, p: &PrimeIdeal) -> QmodZ {
        self.values.get(p).cloned().unwrap_or_else(QmodZ::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PrimeIdeal, &QmodZ)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|v| v.is_zero())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn to_frac_divisor(&self, base: &MarkedBase) -> Result<FracDivisorModZ> {
        let pairs: Vec<(PrimeIdeal, QmodZ)> =
            self.values.iter().map(|(p, v)| (p.clone(), v.clone())).collect();
        FracDivisorModZ::from_pairs(base, &pairs)
    }

    /// Equality with the fractional part of a log Picard class.
    pub fn matches(&self, nu: &FracDivisorModZ) -> bool {
        nu.base().primes().iter().all(|p| nu.coefficient(p) == self.get(p))
            && self.values.keys().all(|p| nu.base().is_marked(p) || self.get(p).is_zero())
    }
}

impl fmt::Display for MonodromyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|(p, v)| format!("{p}: {v}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for MonodromyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// form(gamma_s(x), gamma_s(y)) at one prime.
pub fn monodromy_pairing(
    e: &EllipticCurve,
    x: &CurvePoint,
    y: &CurvePoint,
    s: &PrimeIdeal,
) -> Result<QmodZ> {
    for p in [x, y] {
        if !e.contains(p) {
            return Err(Error::NotOnCurve(p.to_string()));
        }
    }
    pairing_at(&tate(e, s)?, x, y)
}

fn pairing_at(data: &ReductionData, x: &CurvePoint, y: &CurvePoint) -> Result<QmodZ> {
    let (cx, cy) = (data.component(x)?, data.component(y)?);
    data.component_group().pairing(cx, cy)
}

/// Monodromy pairing values at every prime of the base.
pub fn monodromy_profile(
    e: &EllipticCurve,
    x: &CurvePoint,
    y: &CurvePoint,
    base: &MarkedBase,
) -> Result<MonodromyProfile> {
    CurvePairing::new(e, base)?.monodromy_profile(x, y)
}

/// The log class pairing <x, y>^log for y of finite order.
pub fn log_class_pairing(
    e: &EllipticCurve,
    x: &CurvePoint,
    y: &CurvePoint,
    base: &MarkedBase,
) -> Result<LogPicClass> {
    Ok(CurvePairing::new(e, base)?.log_class_pairing(x, y, &PairingOptions::default())?.class)
}

/// The class pairing relative to (Gamma, Gamma').
pub fn class_pairing_restricted(
    e: &EllipticCurve,
    x: &CurvePoint,
    y: &CurvePoint,
    base: &MarkedBase,
    gamma: &ComponentSubgroups,
    gamma_prime: &ComponentSubgroups,
) -> Result<IdealClass> {
    CurvePairing::new(e, base)?.class_pairing_restricted(x, y, gamma, gamma_prime)
}

/// Subgroups of the component groups, given by generating components per
/// prime. Primes not listed carry the trivial subgroup.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComponentSubgroups {
    generators: BTreeMap<PrimeIdeal, Vec<usize>>,
}

impl ComponentSubgroups {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn with(mut self, p: &PrimeIdeal, generators: &[usize]) -> Self {
        self.generators.insert(p.clone(), generators.to_vec());
        self
    }

    /// The full component group at every bad prime of the curve.
    pub fn full(e: &EllipticCurve) -> Result<Self> {
        let mut out = Self::default();
        for r in bad_reduction(e)? {
            out.generators.insert(r.prime().clone(), r.component_group().components().to_vec());
        }
        Ok(out)
    }

    pub fn generators(&self, p: &PrimeIdeal) -> &[usize] {
        self.generators.get(p).map(|v| v.as_slice()).unwrap_or(&[])
    }

    fn span(&self, data: &ReductionData) -> Result<BTreeSet<usize>> {
        let g = data.component_group();
        let mut set = BTreeSet::from([0usize]);
        loop {
            let mut grew = false;
            for &a in set.clone().iter() {
                for &b in self.generators(data.prime()) {
                    if set.insert(g.add(a, b)?) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return Ok(set);
            }
        }
    }
}

/// An element of the ideal class group of the base ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealClass {
    pub coords: Vec<u64>,
    pub invariants: Vec<u64>,
    pub representative: FractionalIdeal,
}

impl IdealClass {
    pub fn is_trivial(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for IdealClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.representative)
    }
}

/// Choices made while evaluating the log class pairing. Neither changes the
/// resulting class.
#[derive(Clone, Debug)]
pub struct PairingOptions {
    /// Evaluate on (x + T) - (T); None picks the first admissible point.
    pub translation: Option<CurvePoint>,
    /// Multiplies the Miller function.
    pub miller_scale: Option<NfElem>,
    pub retries: usize,
}

impl Default for PairingOptions {
    fn default() -> Self {
        PairingOptions { translation: None, miller_scale: None, retries: DEFAULT_TRANSLATION_RETRIES }
    }
}

/// The value of the log class pairing together with how it was obtained.
#[derive(Clone, Debug)]
pub struct LogPairing {
    pub class: LogPicClass,
    /// (1/n) div(g(x + T) / g(T)) with div(g) = n(-y) - n(O).
    pub divisor: RationalDivisor,
    pub translation: CurvePoint,
    /// Some(d) when T lies over Q(sqrt d) and the divisor is (n + 1)/(2n)
    /// times that of the norm of g(x + T) / g(T).
    pub extension: Option<i64>,
    pub order: u64,
    /// Component corrections -G(gamma(x), gamma(-y)) at the bad primes where
    /// the components could be located; each agrees with the divisor's
    /// coefficient modulo Z.
    pub corrections: BTreeMap<PrimeIdeal, BigRational>,
}

/// A curve together with a marked base whose marked primes are exactly the
/// primes of bad reduction.
#[derive(Clone, Debug)]
pub struct CurvePairing {
    curve: EllipticCurve,
    base: MarkedBase,
    reductions: Vec<ReductionData>,
}

impl CurvePairing {
    pub fn new(e: &EllipticCurve, base: &MarkedBase) -> Result<Self> {
        if base.ring() != e.ring() {
            return Err(Error::BaseMismatch(format!(
                "curve over {} but base ring {}",
                e.ring(),
                base.ring()
            )));
        }
        let reductions = bad_reduction(e)?;
        let bad: BTreeSet<&PrimeIdeal> = reductions.iter().map(|r| r.prime()).collect();
        let marked: BTreeSet<&PrimeIdeal> = base.primes().iter().collect();
        if bad != marked {
            let show = |s: &BTreeSet<&PrimeIdeal>| {
                s.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
            };
            return Err(Error::InvalidInput(format!(
                "marked primes {{{}}} differ from the bad primes {{{}}}",
                show(&marked),
                show(&bad)
            )));
        }
        Ok(CurvePairing { curve: e.clone(), base: base.clone(), reductions })
    }

    /// The base marked at exactly the bad primes of the curve.
    pub fn with_bad_primes(e: &EllipticCurve) -> Result<Self> {
        let reductions = bad_reduction(e)?;
        let primes: Vec<PrimeIdeal> = reductions.iter().map(|r| r.prime().clone()).collect();
        let base = MarkedBase::new(e.ring(), &primes)?;
        Ok(CurvePairing { curve: e.clone(), base, reductions })
    }

    pub fn curve(&self) -> &EllipticCurve {
        &self.curve
    }

    pub fn base(&self) -> &MarkedBase {
        &self.base
    }

    pub fn reductions(&self) -> &[ReductionData] {
        &self.reductions
    }

    fn check_point(&self, p: &CurvePoint) -> Result<()> {
        if self.curve.contains(p) {
            Ok(())
        } else {
            Err(Error::NotOnCurve(p.to_string()))
        }
    }

    pub fn monodromy_profile(&self, x: &CurvePoint, y: &CurvePoint) -> Result<MonodromyProfile> {
        self.check_point(x)?;
        self.check_point(y)?;
        let mut values = BTreeMap::new();
        for r in &self.reductions {
            values.insert(r.prime().clone(), pairing_at(r, x, y)?);
        }
        Ok(MonodromyProfile { values })
    }

    /// Admissible translation points T: T and x + T avoid O and -y.
    pub fn translation_candidates(&self, x: &CurvePoint, y: &CurvePoint) -> Vec<CurvePoint> {
        let e = &self.curve;
        let target = e.neg(y);
        let mut pool: Vec<CurvePoint> = Vec::new();
        for i in 0..=6 {
            let ix = e.mul(x, i);
            for j in 0..=6 {
                pool.push(e.add(&ix, &e.mul(y, j)));
            }
        }
        pool.extend(small_points(e, TRANSLATION_SEARCH_BOUND));
        let mut seen = Vec::new();
        for t in pool {
            if t.is_infinity() || t == target || seen.contains(&t) {
                continue;
            }
            let xt = e.add(x, &t);
            if xt.is_infinity() || xt == target {
                continue;
            }
            seen.push(t);
        }
        seen
    }

    pub fn log_class_pairing(
        &self,
        x: &CurvePoint,
        y: &CurvePoint,
        opts: &PairingOptions,
    ) -> Result<LogPairing> {
        self.check_point(x)?;
        self.check_point(y)?;
        let e = &self.curve;
        let n = e.order(y)?;
        if x.is_infinity() || y.is_infinity() {
            return Ok(LogPairing {
                class: LogPicClass::trivial(&self.base),
                divisor: RationalDivisor::zero(&self.base),
                translation: CurvePoint::Infinity,
                extension: None,
                order: n,
                corrections: BTreeMap::new(),
            });
        }
        let ny = e.neg(y);
        let mut g = miller_function(e, &ny)?;
        if let Some(c) = &opts.miller_scale {
            if c.is_zero() {
                return Err(Error::InvalidInput("Miller scalar must be nonzero".into()));
            }
            g = g.scale(c);
        }
        let candidates = match &opts.translation {
            Some(t) if self.is_quadratic_translation(t) => {
                return self.quadratic_translation(x, y, n, t, opts);
            }
            Some(t) => {
                self.check_point(t)?;
                vec![t.clone()]
            }
            None => self.translation_candidates(x, y).into_iter().take(opts.retries).collect(),
        };
        let mut last_err = Error::SupportCollision(format!(
            "no admissible translation point found for x = {x}, y = {y}"
        ));
        for t in candidates {
            let xt = e.add(x, &t);
            let ratio = match miller::eval_ratio(&g, &ny, &xt, &t) {
                Ok(v) => v,
                Err(err @ Error::SupportCollision(_)) => {
                    last_err = err;
                    continue;
                }
                Err(err) => return Err(err),
            };
            return self.finish(x, y, n, rat(1, n), t, None, &ratio);
        }
        if opts.translation.is_none() && self.curve.ring().is_integers() && n % 2 == 1 {
            if let Some(t) = self.quadratic_translation_points(1).into_iter().next() {
                return self.quadratic_translation(x, y, n, &t, opts);
            }
        }
        Err(last_err)
    }

    fn is_quadratic_translation(&self, t: &CurvePoint) -> bool {
        self.curve.ring().is_integers() && t.x().is_some_and(|x| x.d() != 1)
    }

    /// Points T = (t, y_T) with integer t whose y-coordinate generates a
    /// quadratic field, one per t, as points over that field.
    pub fn quadratic_translation_points(&self, count: usize) -> Vec<CurvePoint> {
        let e = &self.curve;
        let mut out = Vec::new();
        if !e.ring().is_integers() {
            return out;
        }
        let xs = (0..=TRANSLATION_SEARCH_BOUND).flat_map(|m| if m == 0 { vec![0] } else { vec![m, -m] });
        for t in xs {
            if out.len() >= count {
                break;
            }
            let tq = e.ring().int(t);
            let h = e.a1() * &tq + e.a3();
            let f = &tq * &tq * &tq + e.a2() * &tq * &tq + e.a4() * &tq + e.a6();
            let disc = &h * &h + NfElem::from_int(1, 4) * &f;
            let Some(q) = disc.as_rational() else { continue };
            let Some(d) = squarefree_part(q) else { continue };
            if d == 1 || d == 0 {
                continue;
            }
            let embed = |a: &NfElem| NfElem::from_rational(d, a.rational_part().clone());
            let Some(root) = field_sqrt(&embed(&disc)) else { continue };
            let two = NfElem::from_int(d, 2);
            let yt = (-embed(&h) + root) / two;
            let pt = CurvePoint::affine(NfElem::from_int(d, t), yt);
            out.push(pt);
        }
        out
    }

    /// g(x + T) / g(T) for T over a quadratic field L. The norm to Q is the
    /// value of g on a divisor linearly equivalent to 2((x) - (O)), so it
    /// gives twice the pairing; for odd n the pairing is (n + 1)/2 times that.
    fn quadratic_translation(
        &self,
        x: &CurvePoint,
        y: &CurvePoint,
        n: u64,
        t: &CurvePoint,
        opts: &PairingOptions,
    ) -> Result<LogPairing> {
        if n % 2 == 0 {
            return Err(Error::Unsupported(format!(
                "a quadratic translation only determines twice the pairing, and y has even order {n}"
            )));
        }
        let d = t.x().expect("affine").d();
        let field = NumberRing::quadratic(d)?;
        let embed = |a: &NfElem| NfElem::from_rational(d, a.rational_part().clone());
        let embed_point = |p: &CurvePoint| match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::affine(embed(x), embed(y)),
        };
        let el = EllipticCurve::new(&field, self.curve.a_invariants().clone().map(|a| embed(&a)))?;
        if !el.contains(t) {
            return Err(Error::NotOnCurve(t.to_string()));
        }
        if t.y().is_some_and(|v| v.is_rational()) {
            return Err(Error::InvalidInput(format!("{t} is rational; pass it over Q")));
        }
        let (xl, yl) = (embed_point(x), embed_point(y));
        let nyl = el.neg(&yl);
        let mut g = miller_function(&el, &nyl)?;
        if let Some(c) = &opts.miller_scale {
            if c.is_zero() {
                return Err(Error::InvalidInput("Miller scalar must be nonzero".into()));
            }
            g = g.scale(&embed(c));
        }
        let xt = el.add(&xl, t);
        let ratio = miller::eval_ratio(&g, &nyl, &xt, t)?;
        let norm = NfElem::from_rational(1, ratio.norm());
        self.finish(x, y, n, rat((n + 1) / 2, n), t.clone(), Some(d), &norm)
    }

    #[allow(clippy::too_many_arguments)]
    fn finish(
        &self,
        x: &CurvePoint,
        y: &CurvePoint,
        n: u64,
        scale: BigRational,
        t: CurvePoint,
        extension: Option<i64>,
        ratio: &NfElem,
    ) -> Result<LogPairing> {
        let base = &self.base;
        let principal = RationalDivisor::principal(base, ratio)?;
        let divisor = RationalDivisor::new(
            base,
            principal.iter().map(|(p, c)| (p.clone(), c * &scale)).collect::<Vec<_>>(),
        )
        .map_err(|err| Error::Consistency(format!("Miller divisor not integral off D: {err}")))?;

        let ny = self.curve.neg(y);
        let mut corrections = BTreeMap::new();
        for r in &self.reductions {
            let comps = r.component(x).and_then(|cx| Ok((cx, r.component(&ny)?)));
            let (cx, cny) = match comps {
                Ok(c) => c,
                Err(Error::Unsupported(_)) => continue,
                Err(err) => return Err(err),
            };
            let c = -r.component_group().form_lift(cx, cny)?;
            let diff = divisor.coefficient(r.prime()) - &c;
            if !diff.is_integer() {
                return Err(Error::Consistency(format!(
                    "Miller coefficient {} at {} is not {} modulo Z",
                    divisor.coefficient(r.prime()),
                    r.prime(),
                    c
                )));
            }
            corrections.insert(r.prime().clone(), c);
        }
        let class = log_pic_class(&divisor)?;
        Ok(LogPairing { class, divisor, translation: t, extension, order: n, corrections })
    }

    pub fn class_pairing_restricted(
        &self,
        x: &CurvePoint,
        y: &CurvePoint,
        gamma: &ComponentSubgroups,
        gamma_prime: &ComponentSubgroups,
    ) -> Result<IdealClass> {
        self.check_point(x)?;
        self.check_point(y)?;
        for r in &self.reductions {
            let g = r.component_group();
            let span_x = gamma.span(r)?;
            let span_y = gamma_prime.span(r)?;
            let (cx, cy) = (r.component(x)?, r.component(y)?);
            if !span_x.contains(&cx) {
                return Err(Error::Membership(format!(
                    "{}: component {cx} of x is not in Gamma",
                    r.prime()
                )));
            }
            if !span_y.contains(&cy) {
                return Err(Error::Membership(format!(
                    "{}: component {cy} of y is not in Gamma'",
                    r.prime()
                )));
            }
            for &a in gamma.generators(r.prime()) {
                for &b in gamma_prime.generators(r.prime()) {
                    if !g.pairing(a, b)?.is_zero() {
                        return Err(Error::Orthogonality(format!(
                            "{}: components {a} and {b} pair to {}",
                            r.prime(),
                            g.pairing(a, b)?
                        )));
                    }
                }
            }
        }
        let value = self.log_class_pairing(x, y, &PairingOptions::default())?;
        if !value.class.nu().is_zero() {
            return Err(Error::Consistency(format!(
                "log pairing has nonzero fractional part {} on orthogonal subgroups",
                value.class.nu()
            )));
        }
        let cl = self.base.class_group();
        let coords = value.class.ideal_class_coords().to_vec();
        Ok(IdealClass {
            representative: cl.ideal_of(&coords),
            coords,
            invariants: cl.invariants().to_vec(),
        })
    }
}

fn rat(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Squarefree part of a nonzero rational, as an integer, sign included.
fn squarefree_part(q: &BigRational) -> Option<i64> {
    let n = q.numer() * q.denom();
    if n == BigInt::from(0) {
        return None;
    }
    let mut d: i64 = if n < BigInt::from(0) { -1 } else { 1 };
    for (p, e) in crate::arith::factor(&n).ok()? {
        if e % 2 == 1 {
            d = d.checked_mul(i64::try_from(p).ok()?)?;
        }
    }
    Some(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numring::NumberRing;
    use crate::logdiv::class_equal;

    fn setup(a: [i64; 5]) -> CurvePairing {
        let e = EllipticCurve::from_ints(&NumberRing::integers(), a).unwrap();
        CurvePairing::with_bad_primes(&e).unwrap()
    }

    fn pt(c: &CurvePairing, x: i64, y: i64) -> CurvePoint {
        let z = c.curve().ring();
        c.curve().point(z.int(x), z.int(y)).unwrap()
    }

    #[test]
    fn three_root_curve_at_three() {
        let c = setup([0, -2, 0, -3, 0]);
        let p = pt(&c, 0, 0);
        let three = c.base().primes().iter().find(|q| q.p() == 3).unwrap().clone();
        let prof = c.monodromy_profile(&p, &p).unwrap();
        assert_eq!(prof.get(&three), QmodZ::from_fraction(1, 2));
        let v = c.log_class_pairing(&p, &p, &PairingOptions::default()).unwrap();
        assert!(prof.matches(&v.class.nu()), "{prof} vs {}", v.class.nu());
        assert_eq!(v.class.nu().coefficient(&three), QmodZ::from_fraction(1, 2));
        assert!(v.class.scale(2).is_trivial());
    }

    #[test]
    fn eleven_a1_consistency() {
        let c = setup([0, -1, 1, -10, -20]);
        let p = pt(&c, 5, 5);
        for k in 1..5 {
            let x = c.curve().mul(&p, k);
            let v = c.log_class_pairing(&x, &p, &PairingOptions::default()).unwrap();
            let prof = c.monodromy_profile(&x, &p).unwrap();
            assert!(prof.matches(&v.class.nu()), "k = {k}: {prof} vs {}", v.class.nu());
            assert!(v.class.scale(5).is_trivial());
            assert!(!prof.is_zero());
        }
    }

    #[test]
    fn zero_arguments_are_trivial() {
        let c = setup([0, -1, 1, -10, -20]);
        let p = pt(&c, 5, 5);
        let v = c.log_class_pairing(&CurvePoint::Infinity, &p, &PairingOptions::default());
        assert!(v.unwrap().class.is_trivial());
    }

    #[test]
    fn wrong_base_is_rejected() {
        let z = NumberRing::integers();
        let e = EllipticCurve::from_ints(&z, [0, -1, 1, -10, -20]).unwrap();
        let base = MarkedBase::parse("Z", "(2)").unwrap();
        assert!(matches!(CurvePairing::new(&e, &base), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn restricted_pairing_guards() {
        let c = setup([0, -2, 0, -3, 0]);
        let p = pt(&c, 0, 0);
        let full = ComponentSubgroups::full(c.curve()).unwrap();
        // (0,0) is not on the identity component at 3
        let err = c.class_pairing_restricted(&p, &p, &ComponentSubgroups::trivial(), &full);
        assert!(matches!(err, Err(Error::Membership(_))));
        let err = c.class_pairing_restricted(&p, &p, &full, &full);
        assert!(matches!(err, Err(Error::Orthogonality(_))));
    }

    #[test]
    fn identity_components_give_an_ideal_class() {
        // 65a1: rank one, (0,0) of order 2, (1,0) of infinite order
        let c = setup([1, 0, 0, -1, 0]);
        let y = pt(&c, 0, 0);
        let p = pt(&c, 1, 0);
        assert!(c.curve().order(&p).is_err());
        let k: u64 = c.reductions().iter().map(|r| r.component_group().order()).product();
        let x = c.curve().mul(&p, k as i64);
        let prof = c.monodromy_profile(&x, &y).unwrap();
        assert!(prof.is_zero());
        let full = ComponentSubgroups::full(c.curve()).unwrap();
        let cls = c.class_pairing_restricted(&x, &y, &ComponentSubgroups::trivial(), &full).unwrap();
        assert!(cls.is_trivial());
    }

    #[test]
    fn quadratic_translations_agree_for_odd_order() {
        let c = setup([0, -1, 1, -10, -20]);
        let y = pt(&c, 5, 5);
        let reference = c.log_class_pairing(&y, &y, &PairingOptions::default()).unwrap();
        let ts = c.quadratic_translation_points(3);
        assert_eq!(ts.len(), 3);
        for t in ts {
            let opts = PairingOptions { translation: Some(t), ..Default::default() };
            let v = c.log_class_pairing(&y, &y, &opts).unwrap();
            assert!(v.extension.is_some());
            assert!(class_equal(&v.class, &reference.class).unwrap());
        }
        // even order: only twice the pairing is reachable this way
        let c = setup([0, -2, 0, -3, 0]);
        let y = pt(&c, 0, 0);
        let t = c.quadratic_translation_points(1).remove(0);
        let opts = PairingOptions { translation: Some(t), ..Default::default() };
        assert!(matches!(c.log_class_pairing(&y, &y, &opts), Err(Error::Unsupported(_))));
    }
}
