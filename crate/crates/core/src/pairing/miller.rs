use std::fmt;

use crate::error::{Error, Result};
use crate::neron::{CurvePoint, EllipticCurve};
use crate::numring::NfElem;

/// Polynomial in x, coefficients low to high, no trailing zeros.
type Poly = Vec<NfElem>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_add(a: &Poly, b: &Poly, d: i64) -> Poly {
    let n = a.len().max(b.len());
    let z = NfElem::zero(d);
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

fn poly_sub(a: &Poly, b: &Poly, d: i64) -> Poly {
    let neg: Poly = b.iter().map(|c| -c).collect();
    poly_add(a, &neg, d)
}

fn poly_mul(a: &Poly, b: &Poly, d: i64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![NfElem::zero(d); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + x * y;
        }
    }
    trim(out)
}

/// Exact division; None if the remainder is nonzero.
fn poly_div_exact(a: &Poly, b: &Poly, d: i64) -> Option<Poly> {
    let b = trim(b.clone());
    let lead = b.last()?.clone();
    let mut r = a.clone();
    if r.len() < b.len() {
        return if r.iter().all(|c| c.is_zero()) { Some(Vec::new()) } else { None };
    }
    let mut q = vec![NfElem::zero(d); r.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let c = &r[i + b.len() - 1] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] = &r[i + j] - &c * bj;
            }
        }
        q[i] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(trim(q))
    } else {
        None
    }
}

fn poly_eval(a: &Poly, x: &NfElem, d: i64) -> NfElem {
    a.iter().rev().fold(NfElem::zero(d), |acc, c| acc * x + c)
}

/// A rational function num / den on the curve, where num = A(x) + B(x) y lies
/// in the affine coordinate ring and den is a polynomial in x.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunctionOnCurve {
    d: i64,
    a: Poly,
    b: Poly,
    den: Poly,
}

impl RationalFunctionOnCurve {
    pub fn one(d: i64) -> Self {
        RationalFunctionOnCurve { d, a: vec![NfElem::one(d)], b: Vec::new(), den: vec![NfElem::one(d)] }
    }

    /// True when the denominator is constant, so the function is regular
    /// away from O.
    pub fn is_polynomial(&self) -> bool {
        self.den.len() <= 1
    }

    /// Value at an affine point; None at a pole.
    pub fn eval(&self, p: &CurvePoint) -> Option<NfElem> {
        let (x, y) = (p.x()?, p.y()?);
        let den = poly_eval(&self.den, x, self.d);
        if den.is_zero() {
            return None;
        }
        let num = poly_eval(&self.a, x, self.d) + poly_eval(&self.b, x, self.d) * y;
        Some(num / den)
    }

    pub fn scale(&self, c: &NfElem) -> Self {
        let mut out = self.clone();
        out.a = trim(out.a.iter().map(|x| x * c).collect());
        out.b = trim(out.b.iter().map(|x| x * c).collect());
        out
    }

    /// Order of the pole at O, for a polynomial function.
    pub fn pole_order_at_infinity(&self) -> i64 {
        let da = self.a.len() as i64 - 1;
        let db = self.b.len() as i64 - 1;
        let pa = if self.a.is_empty() { i64::MIN } else { 2 * da };
        let pb = if self.b.is_empty() { i64::MIN } else { 2 * db + 3 };
        pa.max(pb) - 2 * (self.den.len() as i64 - 1)
    }
}

impl fmt::Display for RationalFunctionOnCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Poly| {
            let terms: Vec<String> = p
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| match i {
                    0 => format!("({c})"),
                    1 => format!("({c})*x"),
                    _ => format!("({c})*x^{i}"),
                })
                .collect();
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            }
        };
        write!(f, "[{}] + [{}]*y", show(&self.a), show(&self.b))?;
        if !self.is_polynomial() {
            write!(f, " / [{}]", show(&self.den))?;
        }
        Ok(())
    }
}

impl fmt::Debug for RationalFunctionOnCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

struct CoordRing<'a> {
    e: &'a EllipticCurve,
    d: i64,
}

impl CoordRing<'_> {
    fn c(&self, x: &NfElem) -> Poly {
        trim(vec![x.clone()])
    }

    /// (A1 + B1 y)(A2 + B2 y) with y^2 = F(x) - (a1 x + a3) y.
    fn mul(&self, (a1, b1): (&Poly, &Poly), (a2, b2): (&Poly, &Poly)) -> (Poly, Poly) {
        let d = self.d;
        let e = self.e;
        let f = trim(vec![e.a6().clone(), e.a4().clone(), e.a2().clone(), NfElem::one(d)]);
        let h = trim(vec![e.a3().clone(), e.a1().clone()]);
        let bb = poly_mul(b1, b2, d);
        let a = poly_add(&poly_mul(a1, a2, d), &poly_mul(&bb, &f, d), d);
        let b = poly_sub(
            &poly_add(&poly_mul(a1, b2, d), &poly_mul(b1, a2, d), d),
            &poly_mul(&bb, &h, d),
            d,
        );
        (a, b)
    }
}

/// The function g with div(g) = n(P) - n(O), n the exact order of P, built
/// with Miller's loop and returned as an element A(x) + B(x) y of the
/// coordinate ring.
pub fn miller_function(e: &EllipticCurve, p: &CurvePoint) -> Result<RationalFunctionOnCurve> {
    if !e.contains(p) {
        return Err(Error::NotOnCurve(p.to_string()));
    }
    let n = e.order(p)?;
    let d = e.ring().d();
    let ring = CoordRing { e, d };
    let mut num: (Poly, Poly) = (vec![NfElem::one(d)], Vec::new());
    let mut den: Poly = vec![NfElem::one(d)];
    let CurvePoint::Affine { x: xp, y: yp } = p else {
        return Ok(RationalFunctionOnCurve::one(d));
    };
    let mut q = p.clone();
    for i in 1..n {
        let (xq, yq) = (q.x().expect("affine").clone(), q.y().expect("affine").clone());
        let line: (Poly, Poly) = if i + 1 == n {
            // q = -p: the chord is the vertical line x = x_p
            (trim(vec![-xp, NfElem::one(d)]), Vec::new())
        } else {
            let lambda = if xq == *xp {
                let top = NfElem::from_int(d, 3) * xp * xp + NfElem::from_int(d, 2) * e.a2() * xp
                    + e.a4()
                    - e.a1() * yp;
                let bot = NfElem::from_int(d, 2) * yp + e.a1() * xp + e.a3();
                top / bot
            } else {
                (&yq - yp) / (&xq - xp)
            };
            let nu = yp - &lambda * xp;
            (trim(vec![-nu, -lambda]), vec![NfElem::one(d)])
        };
        num = ring.mul((&num.0, &num.1), (&line.0, &line.1));
        let r = e.add(&q, p);
        if let CurvePoint::Affine { x: xr, .. } = &r {
            den = poly_mul(&den, &trim(vec![-xr, NfElem::one(d)]), d);
        }
        q = r;
    }
    let a = poly_div_exact(&num.0, &den, d);
    let b = poly_div_exact(&num.1, &den, d);
    match (a, b) {
        (Some(a), Some(b)) => Ok(RationalFunctionOnCurve { d, a, b, den: ring.c(&NfElem::one(d)) }),
        _ => Err(Error::Consistency(format!(
            "Miller function for {p} is not regular away from O"
        ))),
    }
}

/// g(P1) / g(P2) for the Miller function g of y, with div(g) = n(y) - n(O).
pub fn miller_function_eval(
    e: &EllipticCurve,
    y: &CurvePoint,
    p1: &CurvePoint,
    p2: &CurvePoint,
) -> Result<NfElem> {
    let g = miller_function(e, y)?;
    eval_ratio(&g, y, p1, p2)
}

pub(crate) fn eval_ratio(
    g: &RationalFunctionOnCurve,
    y: &CurvePoint,
    p1: &CurvePoint,
    p2: &CurvePoint,
) -> Result<NfElem> {
    if p1 == p2 {
        return Ok(NfElem::one(g.d));
    }
    for p in [p1, p2] {
        if p.is_infinity() || p == y {
            return Err(Error::SupportCollision(format!(
                "{p} lies on the support of div(g) = n({y}) - n(O)"
            )));
        }
    }
    let v1 = g.eval(p1).expect("regular at affine points");
    let v2 = g.eval(p2).expect("regular at affine points");
    if v1.is_zero() || v2.is_zero() {
        return Err(Error::Consistency(format!("Miller function vanishes off {y}")));
    }
    Ok(v1 / v2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numring::NumberRing;

    fn curve(a: [i64; 5]) -> EllipticCurve {
        EllipticCurve::from_ints(&NumberRing::integers(), a).unwrap()
    }

    fn pt(e: &EllipticCurve, x: i64, y: i64) -> CurvePoint {
        e.point(e.ring().int(x), e.ring().int(y)).unwrap()
    }

    #[test]
    fn two_torsion_gives_x() {
        let e = curve([0, -2, 0, -3, 0]);
        let y = pt(&e, 0, 0);
        let g = miller_function(&e, &y).unwrap();
        // g is a scalar multiple of x
        let p1 = pt(&e, 3, 0);
        let p2 = pt(&e, -1, 0);
        let v = miller_function_eval(&e, &y, &p1, &p2).unwrap();
        assert_eq!(v, e.ring().int(-3));
        assert_eq!(g.pole_order_at_infinity(), 2);
    }

    #[test]
    fn five_torsion_divisor() {
        let e = curve([0, -1, 1, -10, -20]);
        let y = pt(&e, 5, 5);
        let g = miller_function(&e, &y).unwrap();
        assert!(g.is_polynomial());
        assert_eq!(g.pole_order_at_infinity(), 5);
        // zero only at y among the torsion points
        assert!(g.eval(&y).unwrap().is_zero());
        for k in 2..5 {
            let q = e.mul(&y, k);
            assert!(!g.eval(&q).unwrap().is_zero());
        }
    }

    #[test]
    fn telescoping_and_trivial_difference() {
        let e = curve([0, -1, 1, -10, -20]);
        let y = pt(&e, 5, 5);
        let p1 = pt(&e, 16, -61);
        let p2 = pt(&e, 5, -6);
        let p3 = pt(&e, 16, 60);
        let a = miller_function_eval(&e, &y, &p1, &p2).unwrap();
        let b = miller_function_eval(&e, &y, &p2, &p3).unwrap();
        let c = miller_function_eval(&e, &y, &p1, &p3).unwrap();
        assert_eq!(a * b, c);
        assert!(miller_function_eval(&e, &y, &p1, &p1).unwrap().is_one());
        assert!(matches!(
            miller_function_eval(&e, &y, &y, &p1),
            Err(Error::SupportCollision(_))
        ));
    }
}
