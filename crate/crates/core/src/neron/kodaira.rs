use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{inverse_rat, smith, IntMatrix};
use crate::qmodz::QmodZ;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KodairaType {
    I0,
    /// Multiplicative reduction with n >= 1 components.
    In(u32),
    II,
    III,
    IV,
    I0Star,
    /// I_n^* with n >= 1.
    InStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    /// Number of components of the special fiber.
    pub fn components(&self) -> usize {
        match *self {
            KodairaType::I0 | KodairaType::II => 1,
            KodairaType::In(n) => n as usize,
            KodairaType::III => 2,
            KodairaType::IV => 3,
            KodairaType::I0Star => 5,
            KodairaType::InStar(n) => n as usize + 5,
            KodairaType::IVStar => 7,
            KodairaType::IIIStar => 8,
            KodairaType::IIStar => 9,
        }
    }

    /// Order of the geometric component group.
    pub fn component_group_order(&self) -> u64 {
        match *self {
            KodairaType::I0 | KodairaType::II | KodairaType::IIStar => 1,
            KodairaType::In(n) => n as u64,
            KodairaType::III | KodairaType::IIIStar => 2,
            KodairaType::IV | KodairaType::IVStar => 3,
            KodairaType::I0Star | KodairaType::InStar(_) => 4,
        }
    }

    pub fn is_multiplicative(&self) -> bool {
        matches!(self, KodairaType::In(n) if *n >= 1)
    }

    pub fn is_good(&self) -> bool {
        matches!(self, KodairaType::I0 | KodairaType::In(0))
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I0 => write!(f, "I0"),
            KodairaType::In(n) => write!(f, "I{n}"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::I0Star => write!(f, "I0*"),
            KodairaType::InStar(n) => write!(f, "I{n}*"),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
        }
    }
}

impl FromStr for KodairaType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::parse(0, format!("unknown Kodaira symbol '{t}'"));
        Ok(match t {
            "I0" => KodairaType::I0,
            "II" => KodairaType::II,
            "III" => KodairaType::III,
            "IV" => KodairaType::IV,
            "I0*" => KodairaType::I0Star,
            "IV*" => KodairaType::IVStar,
            "III*" => KodairaType::IIIStar,
            "II*" => KodairaType::IIStar,
            _ => {
                let rest = t.strip_prefix('I').ok_or_else(bad)?;
                let (digits, star) = match rest.strip_suffix('*') {
                    Some(d) => (d, true),
                    None => (rest, false),
                };
                let n: u32 = digits.parse().map_err(|_| bad())?;
                match (star, n) {
                    (false, 0) => KodairaType::I0,
                    (false, n) => KodairaType::In(n),
                    (true, 0) => KodairaType::I0Star,
                    (true, n) => KodairaType::InStar(n),
                }
            }
        })
    }
}

/// Multiplicities and intersection matrix of the special fiber of the
/// minimal regular model. Component 0 is the identity component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberGeometry {
    pub multiplicities: Vec<i64>,
    pub intersection: Vec<Vec<i64>>,
}

impl FiberGeometry {
    pub fn len(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    /// Components of multiplicity one, in index order.
    pub fn reduced_components(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.multiplicities[i] == 1).collect()
    }

    fn from_edges(mult: Vec<i64>, edges: &[(usize, usize)]) -> Self {
        let r = mult.len();
        let mut m = vec![vec![0i64; r]; r];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = -2;
        }
        for &(i, j) in edges {
            m[i][j] += 1;
            m[j][i] += 1;
        }
        FiberGeometry { multiplicities: mult, intersection: m }
    }

    /// Checks the structural invariants: symmetric, nonnegative off the
    /// diagonal, negative diagonal (when there are at least two components),
    /// multiplicity vector in the kernel, component 0 of multiplicity one,
    /// and negative definite after deleting component 0.
    pub fn validate(&self) -> Result<()> {
        let r = self.len();
        let m = &self.intersection;
        let bad = |msg: &str| Err(Error::InvalidInput(format!("intersection matrix: {msg}")));
        if r == 0 || m.len() != r || m.iter().any(|row| row.len() != r) {
            return bad("shape does not match the multiplicities");
        }
        if self.multiplicities[0] != 1 || self.multiplicities.iter().any(|&x| x < 1) {
            return bad("multiplicities must be positive with m_0 = 1");
        }
        for i in 0..r {
            for j in 0..r {
                if m[i][j] != m[j][i] {
                    return bad("not symmetric");
                }
                if i != j && m[i][j] < 0 {
                    return bad("negative off-diagonal entry");
                }
            }
            if r > 1 && m[i][i] >= 0 {
                return bad("nonnegative self-intersection");
            }
            let dot: i64 = (0..r).map(|j| m[i][j] * self.multiplicities[j]).sum();
            if dot != 0 {
                return bad("multiplicity vector is not in the kernel");
            }
        }
        // negative definite on the complement of component 0: all pivots of
        // Gaussian elimination must be negative
        let mut a: Vec<Vec<BigRational>> = (1..r)
            .map(|i| (1..r).map(|j| BigRational::from_integer(BigInt::from(m[i][j]))).collect())
            .collect();
        for c in 0..a.len() {
            if !a[c][c].is_negative() {
                return bad("not negative definite off the identity component");
            }
            let piv = a[c][c].clone();
            for i in c + 1..a.len() {
                let f = &a[i][c] / &piv;
                if f.is_zero() {
                    continue;
                }
                let src = a[c].clone();
                for (x, s) in a[i].iter_mut().zip(src) {
                    *x -= &f * s;
                }
            }
        }
        Ok(())
    }
}

/// Fiber geometry for each Kodaira type.
///
/// Index conventions: for I_n the components form a cycle 0..n; for I_n^*
/// the four reduced leaves are 0, 1 (at the chain start) and 2, 3 (at the
/// chain end) with the chain at 4..=4+n; for IV^* the leaves are 0, 1, 2;
/// for III^* they are 0 and 6; for II^* only 0.
pub fn fiber_geometry(t: KodairaType) -> FiberGeometry {
    use KodairaType::*;
    match t {
        I0 | II | In(0) | In(1) => {
            FiberGeometry { multiplicities: vec![1], intersection: vec![vec![0]] }
        }
        In(2) | III => FiberGeometry {
            multiplicities: vec![1, 1],
            intersection: vec![vec![-2, 2], vec![2, -2]],
        },
        In(n) => {
            let n = n as usize;
            let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            FiberGeometry::from_edges(vec![1; n], &edges)
        }
        IV => FiberGeometry::from_edges(vec![1; 3], &[(0, 1), (1, 2), (0, 2)]),
        I0Star | InStar(_) => {
            let n = match t {
                InStar(n) => n as usize,
                _ => 0,
            };
            let mut mult = vec![1; 4];
            mult.extend(vec![2; n + 1]);
            let (c0, cn) = (4, 4 + n);
            let mut edges = vec![(0, c0), (1, c0), (2, cn), (3, cn)];
            edges.extend((c0..cn).map(|i| (i, i + 1)));
            FiberGeometry::from_edges(mult, &edges)
        }
        IVStar => FiberGeometry::from_edges(
            vec![1, 1, 1, 2, 2, 2, 3],
            &[(0, 3), (1, 4), (2, 5), (3, 6), (4, 6), (5, 6)],
        ),
        IIIStar => FiberGeometry::from_edges(
            vec![1, 2, 3, 4, 3, 2, 1, 2],
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7)],
        ),
        IIStar => FiberGeometry::from_edges(
            vec![1, 2, 3, 4, 5, 6, 4, 2, 3],
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8)],
        ),
    }
}

/// The component group Phi = ker(m^T) / im(M) of a fiber, together with the
/// Q/Z-valued pairing induced by the inverse of the intersection matrix with
/// the identity component removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentGroup {
    invariants: Vec<u64>,
    /// Reduced components; each represents one element of Phi.
    components: Vec<usize>,
    coords: Vec<Vec<u64>>,
    /// Exact rational lift of the pairing between reduced components.
    form: Vec<Vec<BigRational>>,
}

impl ComponentGroup {
    pub fn from_geometry(g: &FiberGeometry) -> Result<Self> {
        g.validate()?;
        let r = g.len();
        let m: IntMatrix =
            g.intersection.iter().map(|row| row.iter().map(|&x| x as i128).collect()).collect();
        let s = smith(&m, r);
        let zeros = s.diag.iter().filter(|&&x| x == 0).count();
        if zeros != 1 {
            return Err(Error::Consistency(format!(
                "intersection matrix has corank {zeros}, expected 1"
            )));
        }
        let idx: Vec<usize> = (0..s.diag.len()).filter(|&i| s.diag[i] > 1).collect();
        let invariants: Vec<u64> = idx.iter().map(|&i| s.diag[i] as u64).collect();
        let components = g.reduced_components();
        let coords: Vec<Vec<u64>> = components
            .iter()
            .map(|&c| {
                idx.iter()
                    .map(|&i| {
                        let y = s.u[i][c] - s.u[i][0];
                        y.rem_euclid(s.diag[i]) as u64
                    })
                    .collect()
            })
            .collect();
        let order: u64 = invariants.iter().product();
        if components.len() as u64 != order {
            return Err(Error::Consistency(format!(
                "{} reduced components but |Phi| = {order}",
                components.len()
            )));
        }
        let form = if r == 1 {
            vec![vec![BigRational::zero()]]
        } else {
            let sub: Vec<Vec<BigRational>> = (1..r)
                .map(|i| {
                    (1..r)
                        .map(|j| BigRational::from_integer(BigInt::from(g.intersection[i][j])))
                        .collect()
                })
                .collect();
            let inv = inverse_rat(&sub)
                .ok_or_else(|| Error::Consistency("singular reduced intersection matrix".into()))?;
            let entry = |a: usize, b: usize| {
                if a == 0 || b == 0 {
                    BigRational::zero()
                } else {
                    inv[a - 1][b - 1].clone()
                }
            };
            components
                .iter()
                .map(|&a| components.iter().map(|&b| entry(a, b)).collect())
                .collect()
        };
        Ok(ComponentGroup { invariants, components, coords, form })
    }

    pub fn of_type(t: KodairaType) -> Self {
        Self::from_geometry(&fiber_geometry(t)).expect("standard fiber tables are valid")
    }

    /// Invariant factors, each > 1.
    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    /// Reduced components in index order; component 0 is the identity.
    pub fn components(&self) -> &[usize] {
        &self.components
    }

    fn slot(&self, component: usize) -> Result<usize> {
        self.components.iter().position(|&c| c == component).ok_or_else(|| {
            Error::InvalidInput(format!("component {component} is not of multiplicity one"))
        })
    }

    /// Coordinates in the invariant-factor decomposition.
    pub fn element(&self, component: usize) -> Result<&[u64]> {
        Ok(&self.coords[self.slot(component)?])
    }

    /// The reduced component representing the given coordinates.
    pub fn component_of(&self, coords: &[u64]) -> Result<usize> {
        let reduced: Vec<u64> =
            coords.iter().zip(&self.invariants).map(|(c, m)| c % m).collect();
        self.coords
            .iter()
            .position(|c| *c == reduced)
            .map(|i| self.components[i])
            .ok_or_else(|| Error::InvalidInput(format!("no element with coordinates {coords:?}")))
    }

    pub fn add(&self, a: usize, b: usize) -> Result<usize> {
        let (ea, eb) = (self.element(a)?, self.element(b)?);
        let sum: Vec<u64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
        self.component_of(&sum)
    }

    pub fn neg(&self, a: usize) -> Result<usize> {
        let e = self.element(a)?;
        let inv: Vec<u64> = e.iter().zip(&self.invariants).map(|(x, m)| (m - x) % m).collect();
        self.component_of(&inv)
    }

    pub fn element_order(&self, a: usize) -> Result<u64> {
        let e = self.element(a)?;
        Ok(e
            .iter()
            .zip(&self.invariants)
            .map(|(&x, &m)| m / num_integer::gcd(x, m))
            .fold(1, crate::arith::lcm_u64))
    }

    /// Rational lift (e_a - e_0)^T G (e_b - e_0) of the pairing.
    pub fn form_lift(&self, a: usize, b: usize) -> Result<BigRational> {
        Ok(self.form[self.slot(a)?][self.slot(b)?].clone())
    }

    /// The component pairing in Q/Z.
    pub fn pairing(&self, a: usize, b: usize) -> Result<QmodZ> {
        Ok(QmodZ::new(self.form_lift(a, b)?))
    }
}

impl fmt::Display for ComponentGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariants.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.invariants.iter().map(|m| format!("Z/{m}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

pub fn component_group_from_matrix(g: &FiberGeometry) -> Result<ComponentGroup> {
    ComponentGroup::from_geometry(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    const ALL: [KodairaType; 14] = [
        KodairaType::I0,
        KodairaType::In(1),
        KodairaType::In(2),
        KodairaType::In(3),
        KodairaType::In(7),
        KodairaType::II,
        KodairaType::III,
        KodairaType::IV,
        KodairaType::I0Star,
        KodairaType::InStar(1),
        KodairaType::InStar(4),
        KodairaType::IVStar,
        KodairaType::IIIStar,
        KodairaType::IIStar,
    ];

    #[test]
    fn tables_are_valid() {
        for t in ALL {
            let g = fiber_geometry(t);
            assert_eq!(g.len(), t.components().max(1), "{t}");
            g.validate().unwrap();
            let phi = ComponentGroup::from_geometry(&g).unwrap();
            assert_eq!(phi.order(), t.component_group_order(), "{t}");
        }
    }

    #[test]
    fn group_structures() {
        assert_eq!(ComponentGroup::of_type(KodairaType::I0Star).invariants(), &[2, 2]);
        assert_eq!(ComponentGroup::of_type(KodairaType::InStar(1)).invariants(), &[4]);
        assert_eq!(ComponentGroup::of_type(KodairaType::InStar(2)).invariants(), &[2, 2]);
        assert_eq!(ComponentGroup::of_type(KodairaType::In(6)).invariants(), &[6]);
        assert_eq!(ComponentGroup::of_type(KodairaType::IIStar).to_string(), "0");
    }

    #[test]
    fn cycle_form_is_ij_over_n() {
        for n in 2..=9u32 {
            let phi = ComponentGroup::of_type(KodairaType::In(n));
            for i in 0..n as usize {
                for j in 0..n as usize {
                    let want = QmodZ::from_fraction((i * j) as i64, n as i64);
                    assert_eq!(phi.pairing(i, j).unwrap(), want, "I{n} ({i},{j})");
                }
            }
            // component i is i times component 1
            let mut c = 0;
            for i in 0..n as usize {
                assert_eq!(c, i);
                c = phi.add(c, 1).unwrap();
            }
        }
    }

    #[test]
    fn small_additive_forms() {
        let iii = ComponentGroup::of_type(KodairaType::III);
        assert_eq!(iii.pairing(1, 1).unwrap(), QmodZ::from_fraction(1, 2));
        let iv = ComponentGroup::of_type(KodairaType::IV);
        assert_eq!(iv.pairing(1, 1).unwrap(), QmodZ::from_fraction(1, 3));
        assert_eq!(iv.pairing(1, 2).unwrap(), QmodZ::from_fraction(2, 3));
        assert_eq!(iv.form_lift(1, 1).unwrap(), rat(-2, 3));
    }

    #[test]
    fn forms_are_symmetric_and_nondegenerate() {
        for t in ALL {
            let phi = ComponentGroup::of_type(t);
            let cs = phi.components().to_vec();
            for &a in &cs {
                for &b in &cs {
                    assert_eq!(phi.pairing(a, b).unwrap(), phi.pairing(b, a).unwrap());
                }
                if a != 0 {
                    assert!(cs.iter().any(|&b| !phi.pairing(a, b).unwrap().is_zero()), "{t}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_matrices() {
        let g = FiberGeometry {
            multiplicities: vec![1, 1],
            intersection: vec![vec![-2, 1], vec![1, -2]],
        };
        assert!(g.validate().is_err());
        let g = FiberGeometry {
            multiplicities: vec![1, 1],
            intersection: vec![vec![-2, 2], vec![3, -2]],
        };
        assert!(g.validate().is_err());
    }

    #[test]
    fn kodaira_symbols_round_trip() {
        for t in ALL {
            assert_eq!(t.to_string().parse::<KodairaType>().unwrap(), t);
        }
        assert!("I*".parse::<KodairaType>().is_err());
    }
}
