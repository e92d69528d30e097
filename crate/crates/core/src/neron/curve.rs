use std::fmt;

use crate::error::{Error, Result};
use crate::numring::{NfElem, NumberRing};

/// Torsion orders are searched up to this bound; it exceeds every torsion
/// order occurring over Q and over quadratic fields.
pub const TORSION_SEARCH_BOUND: u64 = 30;

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q or a quadratic field.
#[derive(Clone, PartialEq, Eq)]
pub struct EllipticCurve {
    ring: NumberRing,
    a: [NfElem; 5],
    b: [NfElem; 4],
    c4: NfElem,
    c6: NfElem,
    disc: NfElem,
}

/// A point in affine coordinates, or the origin O.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { x: NfElem, y: NfElem },
}

impl CurvePoint {
    pub fn affine(x: NfElem, y: NfElem) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&NfElem> {
        match self {
            CurvePoint::Affine { x, .. } => Some(x),
            CurvePoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&NfElem> {
        match self {
            CurvePoint::Affine { y, .. } => Some(y),
            CurvePoint::Infinity => None,
        }
    }

    /// Projective coordinates (X : Y : Z) with Z in {0, 1}.
    pub fn projective(&self, d: i64) -> [NfElem; 3] {
        match self {
            CurvePoint::Affine { x, y } => [x.clone(), y.clone(), NfElem::one(d)],
            CurvePoint::Infinity => [NfElem::zero(d), NfElem::one(d), NfElem::zero(d)],
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl fmt::Debug for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl EllipticCurve {
    pub fn new(ring: &NumberRing, a: [NfElem; 5]) -> Result<Self> {
        if let Some(bad) = a.iter().find(|x| !ring.contains(x)) {
            return Err(Error::InvalidInput(format!("{bad} is not in the field of {ring}")));
        }
        let d = ring.d();
        let a: [NfElem; 5] = a.map(|x| if x.d() == d { x } else { NfElem::from_rational(d, x.rational_part().clone()) });
        let [a1, a2, a3, a4, a6] = &a;
        let k = |n: i64| NfElem::from_int(d, n);
        let b2 = a1 * a1 + k(4) * a2;
        let b4 = k(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + k(4) * a6;
        let b8 = a1 * a1 * a6 + k(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        let c4 = &b2 * &b2 - k(24) * &b4;
        let c6 = -(&b2 * &b2 * &b2) + k(36) * &b2 * &b4 - k(216) * &b6;
        let disc = -(&b2 * &b2 * &b8) - k(8) * &b4 * &b4 * &b4 - k(27) * &b6 * &b6
            + k(9) * &b2 * &b4 * &b6;
        if disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(EllipticCurve { ring: ring.clone(), a, b: [b2, b4, b6, b8], c4, c6, disc })
    }

    pub fn from_ints(ring: &NumberRing, a: [i64; 5]) -> Result<Self> {
        Self::new(ring, a.map(|x| ring.int(x)))
    }

    pub fn parse(ring: &NumberRing, s: &str) -> Result<Self> {
        let a = crate::parse::parse_curve_coeffs(ring, s)?;
        Self::new(ring, a)
    }

    pub fn ring(&self) -> &NumberRing {
        &self.ring
    }

    pub fn a_invariants(&self) -> &[NfElem; 5] {
        &self.a
    }

    pub fn a1(&self) -> &NfElem {
        &self.a[0]
    }
    pub fn a2(&self) -> &NfElem {
        &self.a[1]
    }
    pub fn a3(&self) -> &NfElem {
        &self.a[2]
    }
    pub fn a4(&self) -> &NfElem {
        &self.a[3]
    }
    pub fn a6(&self) -> &NfElem {
        &self.a[4]
    }

    /// (b2, b4, b6, b8).
    pub fn b_invariants(&self) -> &[NfElem; 4] {
        &self.b
    }

    pub fn c4(&self) -> &NfElem {
        &self.c4
    }

    pub fn c6(&self) -> &NfElem {
        &self.c6
    }

    pub fn discriminant(&self) -> &NfElem {
        &self.disc
    }

    fn k(&self, n: i64) -> NfElem {
        NfElem::from_int(self.ring.d(), n)
    }

    pub fn point(&self, x: NfElem, y: NfElem) -> Result<CurvePoint> {
        let p = CurvePoint::Affine { x, y };
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(Error::NotOnCurve(p.to_string()))
        }
    }

    pub fn parse_point(&self, s: &str) -> Result<CurvePoint> {
        match crate::parse::parse_point(&self.ring, s)? {
            None => Ok(CurvePoint::Infinity),
            Some((x, y)) => self.point(x, y),
        }
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => self.weierstrass(x, y).is_zero(),
        }
    }

    /// y^2 + a1 xy + a3 y - (x^3 + a2 x^2 + a4 x + a6).
    pub fn weierstrass(&self, x: &NfElem, y: &NfElem) -> NfElem {
        let [a1, a2, a3, a4, a6] = &self.a;
        y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6)
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: -y - self.a1() * x - self.a3(),
            },
        }
    }

    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let [a1, a2, a3, a4, a6] = &self.a;
        let (lambda, nu) = if x1 == x2 {
            let den = y1 + y2 + a1 * x2 + a3;
            if den.is_zero() {
                return CurvePoint::Infinity;
            }
            // tangent line; here y1 == y2
            let den = self.k(2) * y1 + a1 * x1 + a3;
            let lambda = (self.k(3) * x1 * x1 + self.k(2) * a2 * x1 + a4 - a1 * y1) / &den;
            let nu = (-(x1 * x1 * x1) + a4 * x1 + self.k(2) * a6 - a3 * y1) / &den;
            (lambda, nu)
        } else {
            let dx = x2 - x1;
            ((y2 - y1) / &dx, (y1 * x2 - y2 * x1) / &dx)
        };
        let x3 = &lambda * &lambda + a1 * &lambda - a2 - x1 - x2;
        let y3 = -(&lambda + a1) * &x3 - nu - a3;
        CurvePoint::Affine { x: x3, y: y3 }
    }

    pub fn sub(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        self.add(p, &self.neg(q))
    }

    pub fn mul(&self, p: &CurvePoint, k: i64) -> CurvePoint {
        let base = if k < 0 { self.neg(p) } else { p.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &b);
            }
            b = self.add(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// Exact order of a torsion point.
    pub fn order(&self, p: &CurvePoint) -> Result<u64> {
        let mut q = p.clone();
        for n in 1..=TORSION_SEARCH_BOUND {
            if q.is_infinity() {
                return Ok(n);
            }
            q = self.add(&q, p);
        }
        Err(Error::NonTorsion(TORSION_SEARCH_BOUND))
    }

    /// The model in coordinates x = x' + r, y = y' + s x' + t.
    pub fn rst_transform(&self, r: &NfElem, s: &NfElem, t: &NfElem) -> EllipticCurve {
        let [a1, a2, a3, a4, a6] = &self.a;
        let k = |n| self.k(n);
        let b1 = a1 + k(2) * s;
        let b2 = a2 - s * a1 + k(3) * r - s * s;
        let b3 = a3 + r * a1 + k(2) * t;
        let b4 = a4 - s * a3 + k(2) * r * a2 - (t + r * s) * a1 + k(3) * r * r - k(2) * s * t;
        let b6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        EllipticCurve::new(&self.ring, [b1, b2, b3, b4, b6]).expect("isomorphic model")
    }

    /// The model in coordinates x = u^2 x', y = u^3 y'.
    pub fn scale(&self, u: &NfElem) -> EllipticCurve {
        let mut a = self.a.clone();
        for (ai, w) in a.iter_mut().zip([1u64, 2, 3, 4, 6]) {
            *ai = &*ai / &u.pow(w);
        }
        EllipticCurve::new(&self.ring, a).expect("isomorphic model")
    }
}

impl fmt::Display for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A coordinate change, recorded so that points can follow a model.
#[derive(Clone, Debug)]
pub(crate) enum Change {
    Rst(NfElem, NfElem, NfElem),
    Scale(NfElem),
}

impl Change {
    pub fn apply_curve(&self, e: &EllipticCurve) -> EllipticCurve {
        match self {
            Change::Rst(r, s, t) => e.rst_transform(r, s, t),
            Change::Scale(u) => e.scale(u),
        }
    }

    pub fn apply_point(&self, p: &CurvePoint) -> CurvePoint {
        match (self, p) {
            (_, CurvePoint::Infinity) => CurvePoint::Infinity,
            (Change::Rst(r, s, t), CurvePoint::Affine { x, y }) => {
                let xr = x - r;
                let yr = y - s * &xr - t;
                CurvePoint::Affine { x: xr, y: yr }
            }
            (Change::Scale(u), CurvePoint::Affine { x, y }) => {
                let u2 = u * u;
                CurvePoint::Affine { x: x / &u2, y: y / &(&u2 * u) }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e11a1() -> EllipticCurve {
        EllipticCurve::from_ints(&NumberRing::integers(), [0, -1, 1, -10, -20]).unwrap()
    }

    #[test]
    fn invariants_of_11a1() {
        let e = e11a1();
        let z = NumberRing::integers();
        assert_eq!(e.discriminant(), &z.int(-161051));
        assert_eq!(e.c4(), &z.int(496));
        assert_eq!(e.c6(), &z.int(20008));
        // 1728 disc = c4^3 - c6^2
        let lhs = z.int(1728) * e.discriminant();
        assert_eq!(lhs, e.c4().pow(3) - e.c6().pow(2));
    }

    #[test]
    fn five_torsion() {
        let e = e11a1();
        let z = NumberRing::integers();
        let p = e.point(z.int(5), z.int(5)).unwrap();
        assert_eq!(e.order(&p).unwrap(), 5);
        assert_eq!(e.mul(&p, 5), CurvePoint::Infinity);
        assert_eq!(e.mul(&p, -1), e.neg(&p));
        assert!(e.point(z.int(1), z.int(1)).is_err());
    }

    #[test]
    fn singular_rejected() {
        let z = NumberRing::integers();
        assert_eq!(EllipticCurve::from_ints(&z, [0, 0, 0, 0, 0]), Err(Error::SingularCurve));
    }

    #[test]
    fn transforms_preserve_points() {
        let e = e11a1();
        let z = NumberRing::integers();
        let p = e.point(z.int(16), z.int(-61)).unwrap();
        let ch = Change::Rst(z.int(3), z.int(-2), z.int(7));
        let e2 = ch.apply_curve(&e);
        assert!(e2.contains(&ch.apply_point(&p)));
        assert_eq!(e2.discriminant(), e.discriminant());
        let ch = Change::Scale(z.int(2));
        let e3 = ch.apply_curve(&e);
        assert!(e3.contains(&ch.apply_point(&p)));
        // addition commutes with the change of model
        let q = e.mul(&p, 2);
        assert_eq!(ch.apply_point(&q), e3.mul(&ch.apply_point(&p), 2));
    }

    #[test]
    fn rank_one_point_has_infinite_order() {
        let z = NumberRing::integers();
        let e = EllipticCurve::from_ints(&z, [0, 0, 1, -1, 0]).unwrap();
        let p = e.point(z.int(0), z.int(0)).unwrap();
        assert_eq!(e.order(&p), Err(Error::NonTorsion(TORSION_SEARCH_BOUND)));
    }
}
