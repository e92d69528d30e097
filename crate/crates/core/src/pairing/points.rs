use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::exact_sqrt;
use crate::neron::{CurvePoint, EllipticCurve};
use crate::numring::NfElem;

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = exact_sqrt(q.numer())?;
    let d = exact_sqrt(q.denom())?;
    Some(BigRational::new(n, d))
}

/// Square root in Q(sqrt d), if one exists.
pub fn field_sqrt(a: &NfElem) -> Option<NfElem> {
    let d = a.d();
    if a.is_zero() {
        return Some(NfElem::zero(d));
    }
    let (u, v) = (a.rational_part(), a.irrational_part());
    let dd = BigRational::from_integer(BigInt::from(d));
    if v.is_zero() {
        if let Some(r) = rational_sqrt(u) {
            return Some(NfElem::from_rational(d, r));
        }
        if d != 1 {
            let r = rational_sqrt(&(u / &dd))?;
            return Some(NfElem::new(d, BigRational::zero(), r));
        }
        return None;
    }
    // (s + t sqrt d)^2 = u + v sqrt d
    let r = rational_sqrt(&(u * u - &dd * v * v))?;
    let two = BigRational::from_integer(BigInt::from(2));
    for s2 in [(u + &r) / &two, (u - &r) / &two] {
        if let Some(s) = rational_sqrt(&s2) {
            if s.is_zero() {
                continue;
            }
            let t = v / (&two * &s);
            let cand = NfElem::new(d, s, t);
            if &(&cand * &cand) == a {
                return Some(cand);
            }
        }
    }
    None
}

/// Points with integer x-coordinate |x| <= bound, ordered by |x| then sign.
pub fn small_points(e: &EllipticCurve, bound: i64) -> Vec<CurvePoint> {
    let d = e.ring().d();
    let k = |n: i64| NfElem::from_int(d, n);
    let mut out = Vec::new();
    let xs = (0..=bound).flat_map(|m| if m == 0 { vec![0] } else { vec![m, -m] });
    for xi in xs {
        let x = k(xi);
        // y^2 + h y - f = 0
        let h = e.a1() * &x + e.a3();
        let f = &x * &x * &x + e.a2() * &x * &x + e.a4() * &x + e.a6();
        let disc = &h * &h + k(4) * &f;
        let Some(s) = field_sqrt(&disc) else { continue };
        let y1 = (-&h + &s) / k(2);
        let y2 = (-&h - &s) / k(2);
        out.push(CurvePoint::affine(x.clone(), y1.clone()));
        if y2 != y1 {
            out.push(CurvePoint::affine(x, y2));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numring::NumberRing;

    #[test]
    fn square_roots() {
        let k = NumberRing::quadratic(-5).unwrap();
        let a = k.parse_element("3+2*w").unwrap();
        let sq = &a * &a;
        let r = field_sqrt(&sq).unwrap();
        assert!(r == a || r == -&a);
        assert!(field_sqrt(&k.int(-5)).is_some());
        assert!(field_sqrt(&k.int(2)).is_none());
        let z = NumberRing::integers();
        assert!(field_sqrt(&z.int(-1)).is_none());
    }

    #[test]
    fn small_points_lie_on_the_curve() {
        let z = NumberRing::integers();
        let e = EllipticCurve::from_ints(&z, [0, -2, 0, -3, 0]).unwrap();
        let pts = small_points(&e, 10);
        assert!(pts.len() >= 3);
        assert!(pts.iter().all(|p| e.contains(p)));
    }
}
