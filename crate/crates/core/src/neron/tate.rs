use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::curve::{Change, CurvePoint, EllipticCurve};
use super::kodaira::{fiber_geometry, ComponentGroup, FiberGeometry, KodairaType};
use crate::arith::factor;
use crate::error::{Error, Result};
use crate::numring::{Fq, NfElem, PrimeIdeal, ResidueField};

/// Arithmetic in the completion at a prime, through a uniformizer and the
/// residue field.
#[derive(Clone, Debug)]
pub(crate) struct Local {
    pub prime: PrimeIdeal,
    pub pi: NfElem,
    pub k: ResidueField,
}

impl Local {
    pub fn new(prime: &PrimeIdeal) -> Self {
        Local { prime: prime.clone(), pi: prime.uniformizer(), k: prime.residue_field() }
    }

    pub fn d(&self) -> i64 {
        self.prime.d()
    }

    pub fn val(&self, x: &NfElem) -> i64 {
        if x.is_zero() {
            i64::MAX
        } else {
            self.prime.valuation(x).expect("nonzero")
        }
    }

    /// x is in the maximal ideal.
    pub fn pdiv(&self, x: &NfElem) -> bool {
        self.val(x) > 0
    }

    pub fn red(&self, x: &NfElem) -> Fq {
        self.prime.residue(x).expect("integral at the prime")
    }

    pub fn lift(&self, r: Fq) -> NfElem {
        self.prime.lift(r)
    }

    pub fn preduce(&self, x: &NfElem) -> NfElem {
        self.lift(self.red(x))
    }

    /// A lift of the inverse of the residue of a unit.
    pub fn pinv(&self, x: &NfElem) -> NfElem {
        self.lift(self.k.inv(self.red(x)).expect("unit at the prime"))
    }

    /// A lift of the p-th root of the residue (p the residue characteristic).
    pub fn proot(&self, x: &NfElem) -> NfElem {
        self.lift(self.k.frobenius_root(self.red(x)))
    }

    pub fn int(&self, n: i64) -> NfElem {
        NfElem::from_int(self.d(), n)
    }

    /// Number of roots in the residue field of a monic or general polynomial
    /// given low to high.
    pub fn count_roots(&self, coeffs: &[NfElem]) -> usize {
        let poly: Vec<Fq> = coeffs.iter().map(|c| self.red(c)).collect();
        self.k.roots(&poly).len()
    }

    /// Roots in the residue field, sorted by encoding.
    pub fn roots(&self, coeffs: &[NfElem]) -> Vec<Fq> {
        let poly: Vec<Fq> = coeffs.iter().map(|c| self.red(c)).collect();
        let mut r = self.k.roots(&poly);
        r.sort_by_key(|&x| self.k.encode(x));
        r.dedup();
        r
    }

    /// a x^2 + b x + c has a root in the residue field.
    pub fn quad_roots(&self, a: &NfElem, b: &NfElem, c: &NfElem) -> bool {
        let (ra, rb, rc) = (self.red(a), self.red(b), self.red(c));
        let k = &self.k;
        if k.is_zero(ra) {
            return !k.is_zero(rb) || k.is_zero(rc);
        }
        k.has_root(&[rc, rb, ra])
    }
}

/// Local reduction data of a curve at one prime.
#[derive(Clone, Debug)]
pub struct ReductionData {
    prime: PrimeIdeal,
    kodaira: KodairaType,
    conductor_exponent: u32,
    tamagawa: u64,
    /// Some(split) for multiplicative reduction.
    split: Option<bool>,
    disc_valuation: i64,
    minimal_disc_valuation: i64,
    minimal_model: EllipticCurve,
    changes: Vec<Change>,
    geometry: FiberGeometry,
    group: ComponentGroup,
    star_end: Option<StarEnd>,
}

/// Where the I_n^* subprocedure stopped: the far pair of leaves are the roots
/// of Y^2 + (a3/m) Y - a6/m^2, or of (a2/pi) X^2 + a4/(pi mx) X + a6/(mx my).
#[derive(Clone, Debug)]
pub(crate) enum StarEnd {
    Y { m: NfElem },
    X { mx: NfElem, my: NfElem },
}

impl ReductionData {
    pub fn prime(&self) -> &PrimeIdeal {
        &self.prime
    }

    pub fn kodaira(&self) -> KodairaType {
        self.kodaira
    }

    pub fn conductor_exponent(&self) -> u32 {
        self.conductor_exponent
    }

    /// Order of the group of components defined over the residue field.
    pub fn tamagawa_number(&self) -> u64 {
        self.tamagawa
    }

    pub fn is_split(&self) -> Option<bool> {
        self.split
    }

    pub fn discriminant_valuation(&self) -> i64 {
        self.disc_valuation
    }

    pub fn minimal_discriminant_valuation(&self) -> i64 {
        self.minimal_disc_valuation
    }

    /// A model minimal at this prime, in which the reduction's singular
    /// point (if any) sits at (0, 0) modulo the prime.
    pub fn minimal_model(&self) -> &EllipticCurve {
        &self.minimal_model
    }

    pub fn fiber(&self) -> &FiberGeometry {
        &self.geometry
    }

    /// The geometric component group with its pairing.
    pub fn component_group(&self) -> &ComponentGroup {
        &self.group
    }

    /// Image of a point of the input model on the local minimal model.
    pub fn to_minimal(&self, p: &CurvePoint) -> CurvePoint {
        self.changes.iter().fold(p.clone(), |q, c| c.apply_point(&q))
    }

    pub(crate) fn local(&self) -> Local {
        Local::new(&self.prime)
    }

    pub(crate) fn star_end(&self) -> Option<&StarEnd> {
        self.star_end.as_ref()
    }
}

impl fmt::Display for ReductionData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} (Phi = {}, c = {})", self.prime, self.kodaira, self.group, self.tamagawa)
    }
}

struct Model {
    e: EllipticCurve,
    changes: Vec<Change>,
}

impl Model {
    fn rst(&mut self, r: NfElem, s: NfElem, t: NfElem) {
        let c = Change::Rst(r, s, t);
        self.e = c.apply_curve(&self.e);
        self.changes.push(c);
    }

    fn scale(&mut self, u: NfElem) {
        let c = Change::Scale(u);
        self.e = c.apply_curve(&self.e);
        self.changes.push(c);
    }

    fn a(&self) -> [NfElem; 5] {
        self.e.a_invariants().clone()
    }

    fn b(&self) -> [NfElem; 4] {
        self.e.b_invariants().clone()
    }
}

/// Tate's algorithm at one prime.
pub fn tate(e: &EllipticCurve, prime: &PrimeIdeal) -> Result<ReductionData> {
    if prime.d() != e.ring().d() {
        return Err(Error::BaseMismatch(format!("{prime} is not a prime of {}", e.ring())));
    }
    let loc = Local::new(prime);
    let p = prime.p();
    let pi = loc.pi.clone();
    let disc_valuation = loc.val(e.discriminant());
    let mut m = Model { e: e.clone(), changes: Vec::new() };
    let mut star_end = None;

    // make the model integral at the prime
    let need = m
        .a()
        .iter()
        .zip([1i64, 2, 3, 4, 6])
        .filter(|(a, _)| !a.is_zero())
        .map(|(a, w)| (-loc.val(a)).div_euclid(w) + i64::from((-loc.val(a)).rem_euclid(w) != 0))
        .max()
        .unwrap_or(0);
    if need > 0 {
        m.scale(pi.powi(-need).expect("nonzero"));
    }

    let half = if p == 2 { loc.int(0) } else { loc.pinv(&loc.int(2)) };
    let pi2 = &pi * &pi;
    let pi3 = &pi2 * &pi;

    let (kodaira, fp, cp, split) = loop {
        let vpd = loc.val(m.e.discriminant());
        if vpd == 0 {
            break (KodairaType::I0, 0i64, 1u64, None);
        }
        let [a1, a2, a3, a4, a6] = m.a();
        let [b2, b4, b6, _] = m.b();
        let (c4, c6) = (m.e.c4().clone(), m.e.c6().clone());

        // move the singular point to (0, 0)
        let (r, t) = if p == 2 {
            if loc.pdiv(&b2) {
                let r = loc.proot(&a4);
                let t = loc.proot(&(((&r + &a2) * &r + &a4) * &r + &a6));
                (r, t)
            } else {
                let inv = loc.pinv(&a1);
                let r = &inv * &a3;
                let t = &inv * (&a4 + &r * &r);
                (r, t)
            }
        } else if p == 3 {
            let r = if loc.pdiv(&b2) {
                // cube root of -b6
                loc.proot(&-&b6)
            } else {
                -(loc.pinv(&b2) * &b4)
            };
            let t = &a1 * &r + &a3;
            (r, t)
        } else {
            let r = if loc.pdiv(&c4) {
                -(loc.pinv(&loc.int(12)) * &b2)
            } else {
                -(loc.pinv(&(loc.int(12) * &c4)) * (&c6 + &b2 * &c4))
            };
            let t = -(&half * (&a1 * &r + &a3));
            (r, t)
        };
        let (r, t) = (loc.preduce(&r), loc.preduce(&t));
        m.rst(r, loc.int(0), t);
        let [a1, a2, a3, _, a6] = m.a();
        let [b2, _, b6, b8] = m.b();

        if !loc.pdiv(&b2) {
            let split = loc.quad_roots(&loc.int(1), &a1, &-&a2);
            let n = vpd as u64;
            let cp = if split { n } else if n % 2 == 0 { 2 } else { 1 };
            break (KodairaType::In(vpd as u32), 1, cp, Some(split));
        }
        if loc.val(&a6) < 2 {
            break (KodairaType::II, vpd, 1, None);
        }
        if loc.val(&b8) < 3 {
            break (KodairaType::III, vpd - 1, 2, None);
        }
        if loc.val(&b6) < 3 {
            let cp = if loc.quad_roots(&loc.int(1), &(&a3 / &pi), &-(&a6 / &pi2)) { 3 } else { 1 };
            break (KodairaType::IV, vpd - 2, cp, None);
        }

        // now p | a1, a2; p^2 | a3, a4; p^3 | a6
        let (s, t) = if p == 2 {
            (loc.proot(&a2), &pi * loc.proot(&(&a6 / &pi2)))
        } else if p == 3 {
            (a1.clone(), a3.clone())
        } else {
            (-(&a1 * &half), -(&a3 * &half))
        };
        m.rst(loc.int(0), s, t);
        let [_, a2, _, a4, a6] = m.a();

        // roots of T^3 + b T^2 + c T + d
        let b = &a2 / &pi;
        let c = &a4 / &pi2;
        let d = &a6 / &pi3;
        let w = loc.int(27) * &d * &d - &b * &b * &c * &c + loc.int(4) * b.pow(3) * &d
            - loc.int(18) * &b * &c * &d
            + loc.int(4) * c.pow(3);
        let x = loc.int(3) * &c - &b * &b;
        let sw = if loc.pdiv(&w) {
            if loc.pdiv(&x) {
                3
            } else {
                2
            }
        } else {
            1
        };
        if sw == 1 {
            let cp = 1 + loc.count_roots(&[d, c, b, loc.int(1)]) as u64;
            break (KodairaType::I0Star, vpd - 4, cp, None);
        }
        if sw == 2 {
            // double root moved to T = 0
            let r = if p == 2 {
                loc.proot(&c)
            } else if p == 3 {
                &c * loc.pinv(&b)
            } else {
                (&b * &c - loc.int(9) * &d) * loc.pinv(&(loc.int(2) * &x))
            };
            m.rst(&pi * loc.preduce(&r), loc.int(0), loc.int(0));
            let (mut ix, mut iy) = (3i64, 3i64);
            let mut mx = pi2.clone();
            let mut my = pi2.clone();
            let cp;
            loop {
                let [_, _, a3, _, a6] = m.a();
                let a3t = &a3 / &my;
                let a6t = &a6 / &(&mx * &my);
                if loc.pdiv(&(&a3t * &a3t + loc.int(4) * &a6t)) {
                    let t = if p == 2 {
                        &my * loc.proot(&a6t)
                    } else {
                        &my * loc.preduce(&-(&a3t * &half))
                    };
                    m.rst(loc.int(0), loc.int(0), t);
                    my = &my * &pi;
                    iy += 1;
                    let [_, a2, _, a4, a6] = m.a();
                    let a2t = &a2 / &pi;
                    let a4t = &a4 / &(&pi * &mx);
                    let a6t = &a6 / &(&mx * &my);
                    if loc.pdiv(&(&a4t * &a4t - loc.int(4) * &a6t * &a2t)) {
                        let r = if p == 2 {
                            &mx * loc.proot(&(&a6t * loc.pinv(&a2t)))
                        } else {
                            &mx * loc.preduce(&-(&a4t * loc.pinv(&(loc.int(2) * &a2t))))
                        };
                        m.rst(r, loc.int(0), loc.int(0));
                        mx = &mx * &pi;
                        ix += 1;
                    } else {
                        cp = if loc.quad_roots(&a2t, &a4t, &a6t) { 4 } else { 2 };
                        star_end = Some(StarEnd::X { mx, my });
                        break;
                    }
                } else {
                    cp = if loc.quad_roots(&loc.int(1), &a3t, &-&a6t) { 4 } else { 2 };
                    star_end = Some(StarEnd::Y { m: my });
                    break;
                }
            }
            let n = (ix + iy - 5) as u32;
            break (KodairaType::InStar(n), vpd - ix - iy + 1, cp, None);
        }

        // triple root moved to T = 0
        let r = if p == 2 {
            b.clone()
        } else if p == 3 {
            loc.proot(&-&d)
        } else {
            -(&b * loc.pinv(&loc.int(3)))
        };
        m.rst(&pi * loc.preduce(&r), loc.int(0), loc.int(0));
        let [_, _, a3, _, a6] = m.a();
        let x3t = &a3 / &pi2;
        let x6t = &a6 / &pi.pow(4);
        if !loc.pdiv(&(&x3t * &x3t + loc.int(4) * &x6t)) {
            let cp = if loc.quad_roots(&loc.int(1), &x3t, &-&x6t) { 3 } else { 1 };
            break (KodairaType::IVStar, vpd - 6, cp, None);
        }
        let t = if p == 2 {
            -(&pi2 * loc.proot(&x6t))
        } else {
            &pi2 * loc.preduce(&-(&x3t * &half))
        };
        m.rst(loc.int(0), loc.int(0), t);
        let [_, _, _, a4, a6] = m.a();
        if loc.val(&a4) < 4 {
            break (KodairaType::IIIStar, vpd - 7, 2, None);
        }
        if loc.val(&a6) < 6 {
            break (KodairaType::IIStar, vpd - 8, 1, None);
        }
        // non-minimal: scale by the uniformizer and start again
        m.scale(pi.clone());
    };

    let minimal_disc_valuation = loc.val(m.e.discriminant());
    let geometry = fiber_geometry(kodaira);
    let group = ComponentGroup::from_geometry(&geometry)?;
    Ok(ReductionData {
        prime: prime.clone(),
        kodaira,
        conductor_exponent: fp as u32,
        tamagawa: cp,
        split,
        disc_valuation,
        minimal_disc_valuation,
        minimal_model: m.e,
        changes: m.changes,
        geometry,
        group,
        star_end,
    })
}

/// Rational primes that can divide the discriminant or a denominator.
fn candidate_primes(e: &EllipticCurve) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    let mut add = |n: &BigInt| -> Result<()> {
        if !n.is_zero() && !n.abs().is_one() {
            out.extend(factor(n)?.into_keys());
        }
        Ok(())
    };
    let nd = e.discriminant().norm();
    add(nd.numer())?;
    add(nd.denom())?;
    for a in e.a_invariants() {
        add(&a.denominator())?;
    }
    Ok(out)
}

/// Reduction data at every prime of bad reduction, sorted by prime.
pub fn bad_reduction(e: &EllipticCurve) -> Result<Vec<ReductionData>> {
    let mut out = Vec::new();
    for p in candidate_primes(e)? {
        for q in e.ring().primes_above(p)? {
            let data = tate(e, &q)?;
            if data.kodaira() != KodairaType::I0 {
                out.push(data);
            }
        }
    }
    Ok(out)
}

/// The primes of bad reduction.
pub fn bad_primes(e: &EllipticCurve) -> Result<Vec<PrimeIdeal>> {
    Ok(bad_reduction(e)?.into_iter().map(|r| r.prime).collect())
}
