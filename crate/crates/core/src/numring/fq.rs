//! Residue fields F_p and F_{p^2} of the supported rings.

use crate::arith::modpow;

/// c0 + c1*w in F_q, with w the image of the ring generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(pub u64, pub u64);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    p: u64,
    deg: u32,
    // w^2 = tr*w - nm
    tr: u64,
    nm: u64,
}

const BRUTE_FORCE_LIMIT: u64 = 1 << 16;

impl ResidueField {
    pub fn prime(p: u64) -> Self {
        ResidueField { p, deg: 1, tr: 0, nm: 0 }
    }

    /// F_p[w]/(w^2 - tr*w + nm); the polynomial must be irreducible mod p.
    pub fn quadratic(p: u64, tr: u64, nm: u64) -> Self {
        ResidueField { p, deg: 2, tr: tr % p, nm: nm % p }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.deg)
    }

    pub fn zero(&self) -> Fq {
        Fq(0, 0)
    }

    pub fn one(&self) -> Fq {
        Fq(1 % self.p, 0)
    }

    pub fn from_u64(&self, n: u64) -> Fq {
        Fq(n % self.p, 0)
    }

    /// Total order used to label roots deterministically.
    pub fn encode(&self, x: Fq) -> u64 {
        x.0 + x.1 * self.p
    }

    pub fn decode(&self, n: u64) -> Fq {
        Fq(n % self.p, n / self.p)
    }

    fn m(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        Fq((a.0 + b.0) % self.p, (a.1 + b.1) % self.p)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        Fq((self.p - a.0) % self.p, (self.p - a.1) % self.p)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if self.deg == 1 {
            return Fq(self.m(a.0, b.0), 0);
        }
        // (a0 + a1 w)(b0 + b1 w) = a0b0 + (a0b1 + a1b0) w + a1b1 (tr w - nm)
        let hh = self.m(a.1, b.1);
        let c0 = (self.m(a.0, b.0) + self.p - self.m(hh, self.nm)) % self.p;
        let c1 = (self.m(a.0, b.1) + self.m(a.1, b.0) + self.m(hh, self.tr)) % self.p;
        Fq(c0, c1)
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut acc = self.one();
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self, a: Fq) -> bool {
        a.0 == 0 && a.1 == 0
    }

    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if self.is_zero(a) {
            return None;
        }
        if self.deg == 1 {
            return Some(Fq(modpow(a.0, self.p - 2, self.p), 0));
        }
        // conj(w) = tr - w; N(a) = a * conj(a) lies in F_p
        let conj = Fq((a.0 + self.m(a.1, self.tr)) % self.p, (self.p - a.1) % self.p);
        let n = self.mul(a, conj);
        debug_assert_eq!(n.1, 0);
        let ninv = modpow(n.0, self.p - 2, self.p);
        Some(Fq(self.m(conj.0, ninv), self.m(conj.1, ninv)))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Option<Fq> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn is_square(&self, a: Fq) -> bool {
        if self.is_zero(a) || self.p == 2 {
            return true;
        }
        self.pow(a, (self.size() - 1) / 2) == self.one()
    }

    /// Inverse of Frobenius: the unique x with x^p = a.
    pub fn frobenius_root(&self, a: Fq) -> Fq {
        if self.deg == 1 {
            a
        } else {
            self.pow(a, self.p)
        }
    }

    /// A square root, when one exists.
    pub fn sqrt(&self, a: Fq) -> Option<Fq> {
        if self.is_zero(a) {
            return Some(a);
        }
        if self.p == 2 {
            return Some(self.frobenius_root(a));
        }
        if !self.is_square(a) {
            return None;
        }
        // Tonelli-Shanks in the cyclic group F_q^*
        let q = self.size();
        let mut s = 0;
        let mut t = q - 1;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let z = (2..q)
            .map(|n| self.decode(n))
            .find(|&z| !self.is_square(z))
            .expect("nonresidue exists in odd characteristic");
        let mut m = s;
        let mut c = self.pow(z, t);
        let mut tt = self.pow(a, t);
        let mut r = self.pow(a, t.div_ceil(2));
        while tt != self.one() {
            let mut i = 0;
            let mut t2 = tt;
            while t2 != self.one() {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul(b, b);
            }
            m = i;
            c = self.mul(b, b);
            tt = self.mul(tt, c);
            r = self.mul(r, b);
        }
        Some(r)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        (0..self.size()).map(move |n| self.decode(n))
    }

    fn eval(&self, poly: &[Fq], x: Fq) -> Fq {
        poly.iter().rev().fold(self.zero(), |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Distinct roots in F_q of a polynomial (coefficients low to high),
    /// sorted by `encode`.
    pub fn roots(&self, poly: &[Fq]) -> Vec<Fq> {
        let f = self.trim(poly.to_vec());
        if f.len() <= 1 {
            return Vec::new();
        }
        let mut out = if self.size() <= BRUTE_FORCE_LIMIT {
            self.elements().filter(|&x| self.is_zero(self.eval(&f, x))).collect()
        } else {
            let f = self.monic(f);
            // split part: gcd(f, x^q - x)
            let xq = self.pow_x_mod(self.size(), &f);
            let g = self.gcd(&f, &self.sub_poly(&xq, &[self.zero(), self.one()]));
            let mut acc = Vec::new();
            self.split_linear(g, &mut acc);
            acc
        };
        out.sort_by_key(|&x| self.encode(x));
        out.dedup();
        out
    }

    pub fn has_root(&self, poly: &[Fq]) -> bool {
        !self.roots(poly).is_empty()
    }

    fn trim(&self, mut f: Vec<Fq>) -> Vec<Fq> {
        while f.last().is_some_and(|&c| self.is_zero(c)) {
            f.pop();
        }
        f
    }

    fn monic(&self, f: Vec<Fq>) -> Vec<Fq> {
        let lc = self.inv(*f.last().unwrap()).unwrap();
        f.into_iter().map(|c| self.mul(c, lc)).collect()
    }

    fn sub_poly(&self, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(self.zero());
                let y = b.get(i).copied().unwrap_or(self.zero());
                self.sub(x, y)
            })
            .collect();
        self.trim(out)
    }

    fn mul_poly(&self, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        self.trim(out)
    }

    fn rem(&self, a: &[Fq], m: &[Fq]) -> Vec<Fq> {
        let mut r = self.trim(a.to_vec());
        let lc_inv = self.inv(*m.last().unwrap()).unwrap();
        while r.len() >= m.len() {
            let c = self.mul(*r.last().unwrap(), lc_inv);
            let shift = r.len() - m.len();
            for (i, &mc) in m.iter().enumerate() {
                r[shift + i] = self.sub(r[shift + i], self.mul(c, mc));
            }
            r = self.trim(r);
        }
        r
    }

    fn gcd(&self, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        let mut a = self.trim(a.to_vec());
        let mut b = self.trim(b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            self.monic(a)
        }
    }

    fn pow_mod(&self, base: &[Fq], mut e: u64, m: &[Fq]) -> Vec<Fq> {
        let mut acc = vec![self.one()];
        let mut b = self.rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.mul_poly(&acc, &b), m);
            }
            b = self.rem(&self.mul_poly(&b, &b), m);
            e >>= 1;
        }
        acc
    }

    fn pow_x_mod(&self, e: u64, m: &[Fq]) -> Vec<Fq> {
        self.pow_mod(&[self.zero(), self.one()], e, m)
    }

    // Cantor-Zassenhaus for a product of distinct monic linear factors.
    fn split_linear(&self, g: Vec<Fq>, out: &mut Vec<Fq>) {
        match g.len() {
            0 | 1 => {}
            2 => out.push(self.neg(self.div(g[0], g[1]).unwrap())),
            _ => {
                let e = (self.size() - 1) / 2;
                for shift in 0..self.size() {
                    let a = self.decode(shift);
                    let h = self.pow_mod(&[a, self.one()], e, &g);
                    let h = self.sub_poly(&h, &[self.one()]);
                    let d = self.gcd(&g, &h);
                    if d.len() > 1 && d.len() < g.len() {
                        let q = self.quotient(&g, &d);
                        self.split_linear(d, out);
                        self.split_linear(q, out);
                        return;
                    }
                }
            }
        }
    }

    fn quotient(&self, a: &[Fq], m: &[Fq]) -> Vec<Fq> {
        let mut r = a.to_vec();
        let mut q = vec![self.zero(); a.len() - m.len() + 1];
        let lc_inv = self.inv(*m.last().unwrap()).unwrap();
        while r.len() >= m.len() && !r.is_empty() {
            let c = self.mul(*r.last().unwrap(), lc_inv);
            let shift = r.len() - m.len();
            q[shift] = c;
            for (i, &mc) in m.iter().enumerate() {
                r[shift + i] = self.sub(r[shift + i], self.mul(c, mc));
            }
            r = self.trim(r);
        }
        q
    }
}
