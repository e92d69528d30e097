use std::fmt;

use super::curve::{CurvePoint, EllipticCurve};
use super::kodaira::KodairaType;
use super::tate::{tate, Local, ReductionData, StarEnd};
use crate::error::{Error, Result};
use crate::numring::{Fq, NfElem, PrimeIdeal};

/// The component of the Néron special fiber met by a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentIndex {
    pub kodaira: KodairaType,
    /// Index into the fiber table; 0 is the identity component.
    pub component: usize,
    /// Coordinates in the invariant-factor decomposition of Phi.
    pub coords: Vec<u64>,
    pub group_invariants: Vec<u64>,
}

impl fmt::Display for ComponentIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} component {}", self.kodaira, self.component)
    }
}

impl ReductionData {
    /// Index of the component met by the closure of a point of the input
    /// model.
    pub fn component(&self, p: &CurvePoint) -> Result<usize> {
        if self.component_group().order() == 1 {
            return Ok(0);
        }
        let q = self.to_minimal(p);
        let CurvePoint::Affine { x, y } = &q else { return Ok(0) };
        let loc = self.local();
        if loc.val(x) < 0 {
            return Ok(0);
        }
        if loc.val(x) < 1 || loc.val(y) < 1 {
            return Ok(0);
        }
        let e = self.minimal_model();
        match self.kodaira() {
            KodairaType::In(n) => multiplicative_component(&loc, e, x, y, n as usize),
            KodairaType::III => Ok(1),
            KodairaType::IIIStar => Ok(6),
            KodairaType::IV => type_iv_component(&loc, e, x, y),
            KodairaType::I0Star => type_i0star_component(&loc, e, x),
            KodairaType::InStar(n) => {
                let end = self.star_end().ok_or_else(|| {
                    Error::Consistency(format!("I{n}* fiber without subprocedure data"))
                })?;
                type_instar_component(&loc, e, x, y, end)
            }
            KodairaType::IVStar => type_ivstar_component(&loc, e, y),
            t => Err(Error::Consistency(format!(
                "{t} has no non-identity component to reach"
            ))),
        }
    }

    pub fn component_index(&self, p: &CurvePoint) -> Result<ComponentIndex> {
        let component = self.component(p)?;
        let g = self.component_group();
        Ok(ComponentIndex {
            kodaira: self.kodaira(),
            component,
            coords: g.element(component)?.to_vec(),
            group_invariants: g.invariants().to_vec(),
        })
    }
}

/// Component of a point on the Néron model at a prime.
pub fn reduction_component(
    e: &EllipticCurve,
    p: &CurvePoint,
    prime: &PrimeIdeal,
) -> Result<ComponentIndex> {
    if !e.contains(p) {
        return Err(Error::NotOnCurve(p.to_string()));
    }
    tate(e, prime)?.component_index(p)
}

fn position(loc: &Local, roots: &[Fq], r: Fq, what: &str) -> Result<usize> {
    roots.iter().position(|&x| x == r).ok_or_else(|| {
        Error::Consistency(format!("residue {:?} is not a {what} at {}", r, loc.prime))
    })
}

/// Split I_n: measure the point against the node, refined to precision
/// n + 1, and read the branch off the tangent slope.
fn multiplicative_component(
    loc: &Local,
    e: &EllipticCurve,
    x: &NfElem,
    y: &NfElem,
    n: usize,
) -> Result<usize> {
    let [a1, a2, a3, a4, _] = e.a_invariants();
    let k = |m: i64| loc.int(m);
    let (mut x0, mut y0) = (k(0), k(0));
    let target = n as i64 + 1;
    for _ in 0..64 {
        let f1 = a1 * &y0 - k(3) * &x0 * &x0 - k(2) * a2 * &x0 - a4;
        let f2 = k(2) * &y0 + a1 * &x0 + a3;
        if loc.val(&f1) >= target && loc.val(&f2) >= target {
            break;
        }
        let j11 = -(k(6) * &x0) - k(2) * a2;
        let j12 = a1.clone();
        let j22 = k(2);
        let det = &j11 * &j22 - &j12 * &j12;
        let dx = (-(&f1 * &j22) + &f2 * &j12) / &det;
        let dy = (-(&f2 * &j11) + &f1 * &j12) / &det;
        x0 = x0 + dx;
        y0 = y0 + dy;
    }
    let xs = x - &x0;
    let ys = y - &y0;
    let kk = loc.val(&xs).min(loc.val(&ys));
    if 2 * kk >= n as i64 {
        if n % 2 != 0 {
            return Err(Error::Consistency(format!("point too close to the node of I{n}")));
        }
        return Ok(n / 2);
    }
    let slope = loc.red(&(&ys / &xs));
    let roots = loc.roots(&[-a2, a1.clone(), k(1)]);
    if roots.len() != 2 {
        return Err(Error::Consistency(format!(
            "point on a non-identity component of nonsplit I{n} at {}",
            loc.prime
        )));
    }
    Ok(match position(loc, &roots, slope, "tangent slope")? {
        0 => kk as usize,
        _ => n - kk as usize,
    })
}

/// IV: after clearing a1 and a2 the two outer components are the roots of
/// Y^2 + (a3/pi) Y - a6/pi^2.
fn type_iv_component(loc: &Local, e: &EllipticCurve, x: &NfElem, y: &NfElem) -> Result<usize> {
    let [a1, a2, a3, _, a6] = e.a_invariants();
    let p = loc.prime.p();
    let s = if p == 2 {
        loc.proot(a2)
    } else if p == 3 {
        a1.clone()
    } else {
        -(a1 * loc.pinv(&loc.int(2)))
    };
    let ys = y - &s * x;
    let pi2 = &loc.pi * &loc.pi;
    let roots = loc.roots(&[-(a6 / &pi2), a3 / &loc.pi, loc.int(1)]);
    let y0 = loc.red(&(&ys / &loc.pi));
    Ok(1 + position(loc, &roots, y0, "root of the IV quadratic")?)
}

/// I0*: the three outer components are the roots of the cubic
/// T^3 + (a2/pi) T^2 + (a4/pi^2) T + a6/pi^3.
fn type_i0star_component(loc: &Local, e: &EllipticCurve, x: &NfElem) -> Result<usize> {
    let [_, a2, _, a4, a6] = e.a_invariants();
    let pi = &loc.pi;
    let roots = loc.roots(&[a6 / &pi.pow(3), a4 / &(pi * pi), a2 / pi, loc.int(1)]);
    let x0 = loc.red(&(x / pi));
    Ok(1 + position(loc, &roots, x0, "root of the I0* cubic")?)
}

/// I_n^*, n >= 1: x/pi picks the simple root of the cubic (the near leaf 1)
/// or the double root at 0, in which case the point lands on one of the far
/// leaves 2, 3 cut out by the quadratic where the subprocedure stopped.
fn type_instar_component(
    loc: &Local,
    e: &EllipticCurve,
    x: &NfElem,
    y: &NfElem,
    end: &StarEnd,
) -> Result<usize> {
    let [_, a2, a3, a4, a6] = e.a_invariants();
    let pi = &loc.pi;
    let x0 = loc.red(&(x / pi));
    if !loc.k.is_zero(x0) {
        let simple = loc.red(&-(a2 / pi));
        if x0 != simple {
            return Err(Error::Consistency(format!(
                "x/pi is not a root of the I_n* cubic at {}",
                loc.prime
            )));
        }
        return Ok(1);
    }
    let (roots, r, what) = match end {
        StarEnd::Y { m } => {
            if loc.val(y) < loc.val(m) {
                return Err(Error::Consistency(format!("y too large for a far leaf at {}", loc.prime)));
            }
            let roots = loc.roots(&[-(a6 / &(m * m)), a3 / m, loc.int(1)]);
            (roots, loc.red(&(y / m)), "root of the far Y quadratic")
        }
        StarEnd::X { mx, my } => {
            if loc.val(x) < loc.val(mx) {
                return Err(Error::Consistency(format!("x too large for a far leaf at {}", loc.prime)));
            }
            let roots = loc.roots(&[a6 / &(mx * my), a4 / &(pi * mx), a2 / pi]);
            (roots, loc.red(&(x / mx)), "root of the far X quadratic")
        }
    };
    Ok(2 + position(loc, &roots, r, what)?)
}

/// IV*: with the triple root at 0 the two outer leaves are the roots of
/// Y^2 + (a3/pi^2) Y - a6/pi^4.
fn type_ivstar_component(loc: &Local, e: &EllipticCurve, y: &NfElem) -> Result<usize> {
    let [_, _, a3, _, a6] = e.a_invariants();
    let pi2 = &loc.pi * &loc.pi;
    if loc.val(y) < 2 {
        return Err(Error::Consistency(format!("y too large for an outer IV* leaf at {}", loc.prime)));
    }
    let roots = loc.roots(&[-(a6 / &(&pi2 * &pi2)), a3 / &pi2, loc.int(1)]);
    Ok(1 + position(loc, &roots, loc.red(&(y / &pi2)), "root of the IV* quadratic")?)
}
