use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use super::ideal::{is_principal, FractionalIdeal};
use super::prime::PrimeIdeal;
use super::ring::NumberRing;
use crate::error::{Error, Result};
use crate::lattice::{mixed_radix, smith, IntMatrix};

/// The full class group of a ring, with the data needed for discrete logs.
#[derive(Debug)]
pub(crate) struct ClassGroupData {
    ring: NumberRing,
    factor_base: Vec<PrimeIdeal>,
    invariants: Vec<u64>,
    generators: Vec<FractionalIdeal>,
    // coordinates of each factor-base prime
    base_coords: Vec<Vec<u64>>,
}

pub(crate) fn compute(ring: &NumberRing) -> Result<ClassGroupData> {
    if ring.is_integers() {
        return Ok(ClassGroupData {
            ring: ring.clone(),
            factor_base: Vec::new(),
            invariants: Vec::new(),
            generators: Vec::new(),
            base_coords: Vec::new(),
        });
    }
    let disc = ring.discriminant().unsigned_abs() as f64;
    let bound = if ring.is_imaginary() {
        2.0 / std::f64::consts::PI * disc.sqrt()
    } else {
        disc.sqrt() / 2.0
    };
    let factor_base = ring.primes_up_to_norm(bound.floor() as u64)?;
    let k = factor_base.len();
    let gens: Vec<FractionalIdeal> =
        factor_base.iter().map(|p| FractionalIdeal::prime(ring, p)).collect();

    // lower-triangular relations: g_j^e is the first power of g_j landing in
    // the subgroup spanned by g_0..g_{j-1}
    let mut rel: IntMatrix = Vec::with_capacity(k);
    let mut diag: Vec<i128> = Vec::with_capacity(k);
    for j in 0..k {
        let mut e = 1i64;
        let row = 'search: loop {
            let power = gens[j].pow(e);
            for v in mixed_radix(&diag) {
                let mut ideal = power.clone();
                for (i, &vi) in v.iter().enumerate() {
                    ideal = ideal.mul(&gens[i].pow(-(vi as i64)));
                }
                if is_principal(ring, &ideal)?.is_some() {
                    let mut row: Vec<i128> = v.iter().map(|&x| -(x as i128)).collect();
                    row.push(e as i128);
                    row.resize(k, 0);
                    break 'search row;
                }
            }
            e += 1;
        };
        diag.push(e as i128);
        rel.push(row);
    }

    let s = smith(&rel, k);
    let keep: Vec<usize> = (0..k).filter(|&i| s.diag[i] > 1).collect();
    let invariants: Vec<u64> = keep.iter().map(|&i| s.diag[i] as u64).collect();
    let generators = keep
        .iter()
        .map(|&i| product(ring, &gens, &s.v_inv[i]))
        .collect();
    let base_coords = (0..k)
        .map(|l| {
            keep.iter()
                .zip(&invariants)
                .map(|(&i, &m)| s.v[l][i].rem_euclid(m as i128) as u64)
                .collect()
        })
        .collect();
    Ok(ClassGroupData { ring: ring.clone(), factor_base, invariants, generators, base_coords })
}

fn product(ring: &NumberRing, gens: &[FractionalIdeal], exps: &[i128]) -> FractionalIdeal {
    gens.iter()
        .zip(exps)
        .fold(FractionalIdeal::unit(ring), |acc, (g, &e)| acc.mul(&g.pow(e as i64)))
}

impl ClassGroupData {
    fn ideal_of(&self, coords: &[u64]) -> FractionalIdeal {
        self.generators
            .iter()
            .zip(coords)
            .fold(FractionalIdeal::unit(&self.ring), |acc, (g, &c)| acc.mul(&g.pow(c as i64)))
    }

    fn dlog_prime(&self, p: &PrimeIdeal) -> Result<Vec<u64>> {
        if let Some(i) = self.factor_base.iter().position(|q| q == p) {
            return Ok(self.base_coords[i].clone());
        }
        let radix: Vec<i128> = self.invariants.iter().map(|&m| m as i128).collect();
        let target = FractionalIdeal::prime(&self.ring, p);
        for c in mixed_radix(&radix) {
            let q = target.mul(&self.ideal_of(&c).inv());
            if is_principal(&self.ring, &q)?.is_some() {
                return Ok(c);
            }
        }
        Err(Error::Consistency(format!("{p} has no class in the computed class group")))
    }

    fn dlog(&self, ideal: &FractionalIdeal) -> Result<Vec<u64>> {
        if ideal.ring() != &self.ring {
            return Err(Error::BaseMismatch(format!("{ideal} is not an ideal of {}", self.ring)));
        }
        let mut acc = vec![0u64; self.invariants.len()];
        for (p, e) in ideal.iter() {
            let c = self.dlog_prime(p)?;
            for ((a, ci), &m) in acc.iter_mut().zip(c).zip(&self.invariants) {
                let add = (ci as i128 * e as i128).rem_euclid(m as i128) as u64;
                *a = (*a + add) % m;
            }
        }
        Ok(acc)
    }
}

/// A finite abelian group of ideal classes: the class group of a ring or a
/// quotient of it. Coordinates are taken with respect to `generators`.
#[derive(Clone, Debug)]
pub struct IdealClassGroup {
    data: Arc<ClassGroupData>,
    invariants: Vec<u64>,
    generators: Vec<FractionalIdeal>,
    // class-group coordinates -> coordinates of this group
    proj: IntMatrix,
}

impl IdealClassGroup {
    pub(crate) fn full(data: Arc<ClassGroupData>) -> Self {
        let t = data.invariants.len();
        IdealClassGroup {
            invariants: data.invariants.clone(),
            generators: data.generators.clone(),
            proj: crate::lattice::identity(t),
            data,
        }
    }

    pub fn ring(&self) -> &NumberRing {
        &self.data.ring
    }

    /// Invariant factors, each > 1, each dividing the next.
    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn generators(&self) -> &[FractionalIdeal] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    /// Coordinates of the class of an ideal.
    pub fn dlog(&self, ideal: &FractionalIdeal) -> Result<Vec<u64>> {
        let full = self.data.dlog(ideal)?;
        Ok(self.project(&full))
    }

    fn project(&self, full: &[u64]) -> Vec<u64> {
        self.invariants
            .iter()
            .enumerate()
            .map(|(j, &m)| {
                let s: i128 = full.iter().zip(&self.proj).map(|(&x, row)| x as i128 * row[j]).sum();
                s.rem_euclid(m as i128) as u64
            })
            .collect()
    }

    pub fn is_trivial_class(&self, ideal: &FractionalIdeal) -> Result<bool> {
        Ok(self.dlog(ideal)?.iter().all(|&c| c == 0))
    }

    /// An ideal in the class with the given coordinates.
    pub fn ideal_of(&self, coords: &[u64]) -> FractionalIdeal {
        self.generators
            .iter()
            .zip(coords)
            .fold(FractionalIdeal::unit(self.ring()), |acc, (g, &c)| acc.mul(&g.pow(c as i64)))
    }

    /// Order of the class with the given coordinates.
    pub fn element_order(&self, coords: &[u64]) -> u64 {
        coords
            .iter()
            .zip(&self.invariants)
            .map(|(&c, &m)| m / m.gcd(&c))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// Order of the n-torsion subgroup.
    pub fn torsion_order(&self, n: u64) -> u64 {
        self.invariants.iter().map(|&m| m.gcd(&n)).product()
    }

    /// Quotient by the subgroup generated by the classes of `ideals`.
    pub fn quotient(&self, ideals: &[FractionalIdeal]) -> Result<IdealClassGroup> {
        let t = self.invariants.len();
        let mut rows: IntMatrix = (0..t)
            .map(|i| (0..t).map(|j| if i == j { self.invariants[i] as i128 } else { 0 }).collect())
            .collect();
        for ideal in ideals {
            rows.push(self.dlog(ideal)?.iter().map(|&c| c as i128).collect());
        }
        let s = smith(&rows, t);
        let keep: Vec<usize> = (0..t).filter(|&i| s.diag[i] > 1).collect();
        let invariants: Vec<u64> = keep.iter().map(|&i| s.diag[i] as u64).collect();
        let generators = keep
            .iter()
            .map(|&i| {
                let c: Vec<u64> = (0..t)
                    .map(|j| s.v_inv[i][j].rem_euclid(self.invariants[j] as i128) as u64)
                    .collect();
                self.ideal_of(&c)
            })
            .collect();
        // compose: full coords -> our coords -> quotient coords
        let proj = (0..self.proj.len())
            .map(|r| {
                keep.iter()
                    .map(|&k| (0..t).map(|j| self.proj[r][j] * s.v[j][k]).sum())
                    .collect()
            })
            .collect();
        Ok(IdealClassGroup { data: self.data.clone(), invariants, generators, proj })
    }
}

impl fmt::Display for IdealClassGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariants.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.invariants.iter().map(|m| format!("Z/{m}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// The class group of the ring with the primes of D inverted.
pub fn pic_of_open(ring: &NumberRing, d: &[PrimeIdeal]) -> Result<IdealClassGroup> {
    let cl = ring.class_group()?;
    let ideals: Vec<FractionalIdeal> = d.iter().map(|p| FractionalIdeal::prime(ring, p)).collect();
    cl.quotient(&ideals)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class_number(d: i64) -> u64 {
        NumberRing::quadratic(d).unwrap().class_number().unwrap()
    }

    #[test]
    fn small_class_numbers() {
        assert_eq!(NumberRing::integers().class_number().unwrap(), 1);
        for (d, h) in [(-1, 1), (-2, 1), (-3, 1), (-5, 2), (-6, 2), (-14, 4), (-23, 3), (-47, 5)] {
            assert_eq!(class_number(d), h, "d = {d}");
        }
        for (d, h) in [(2, 1), (5, 1), (10, 2), (15, 2), (79, 3)] {
            assert_eq!(class_number(d), h, "d = {d}");
        }
    }

    #[test]
    fn noncyclic_class_group() {
        // Q(sqrt -21): Cl = Z/2 x Z/2
        let cl = NumberRing::quadratic(-21).unwrap().class_group().unwrap();
        assert_eq!(cl.invariants(), &[2, 2]);
    }

    #[test]
    fn minus5_generated_by_p2() {
        let r = NumberRing::quadratic(-5).unwrap();
        let cl = r.class_group().unwrap();
        assert_eq!(cl.invariants(), &[2]);
        let p2 = FractionalIdeal::prime(&r, &r.primes_above(2).unwrap()[0]);
        assert_eq!(cl.dlog(&p2).unwrap(), vec![1]);
        // primes outside the factor base
        let p3 = FractionalIdeal::prime(&r, &r.primes_above(3).unwrap()[0]);
        assert_eq!(cl.dlog(&p3).unwrap(), vec![1]);
        let p29 = r.primes_above(29).unwrap();
        let p = FractionalIdeal::prime(&r, &p29[0]);
        // 29 = 3^2 + 5*2^2
        assert_eq!(cl.dlog(&p).unwrap(), vec![0]);
    }

    #[test]
    fn pic_of_open_examples() {
        let z = NumberRing::integers();
        assert!(pic_of_open(&z, &z.primes_above(7).unwrap()).unwrap().is_trivial());
        let r = NumberRing::quadratic(-5).unwrap();
        assert!(pic_of_open(&r, &r.primes_above(2).unwrap()).unwrap().is_trivial());
        assert_eq!(pic_of_open(&r, &r.primes_above(5).unwrap()).unwrap().invariants(), &[2]);
        // Q(sqrt -21), killing one factor leaves Z/2
        let r = NumberRing::quadratic(-21).unwrap();
        let q = pic_of_open(&r, &r.primes_above(2).unwrap()).unwrap();
        assert_eq!(q.order(), 2);
        let p3 = FractionalIdeal::prime(&r, &r.primes_above(3).unwrap()[0]);
        let p2 = FractionalIdeal::prime(&r, &r.primes_above(2).unwrap()[0]);
        assert!(q.is_trivial_class(&p2).unwrap());
        // [p3] survives iff it is not in <[p2]>
        let full = r.class_group().unwrap();
        let same = full.dlog(&p3).unwrap() == full.dlog(&p2).unwrap();
        assert_eq!(q.is_trivial_class(&p3).unwrap(), same || full.is_trivial_class(&p3).unwrap());
    }
}
