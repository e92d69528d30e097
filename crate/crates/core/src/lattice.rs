//! Integer lattice helpers: Smith and Hermite normal forms, exact rational
//! matrix inversion.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type IntMatrix = Vec<Vec<i128>>;

/// U * A * V = diag, with U, V unimodular.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<i128>,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Smith {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|&&x| x != 0).count()
    }
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

pub fn smith(a: &IntMatrix, cols: usize) -> Smith {
    let m = a.len();
    let n = cols;
    let mut a = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut v_inv = identity(n);
    let k = m.min(n);
    let mut t = 0;
    while t < k {
        // pivot: smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        v_inv.swap(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(a[t][t]);
                    row_axpy(&mut a, i, t, -q);
                    row_axpy(&mut u, i, t, -q);
                    if a[i][t] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..n {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(a[t][t]);
                    col_axpy(&mut a, j, t, -q);
                    col_axpy(&mut v, j, t, -q);
                    // inverse of the column operation acts on rows of v_inv
                    row_axpy(&mut v_inv, t, j, q);
                    if a[t][j] != 0 {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                // divisibility condition on the trailing block
                let piv = a[t][t];
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| a[i][j] % piv != 0));
                match bad {
                    None => break,
                    Some(i) => {
                        row_axpy(&mut a, t, i, 1);
                        row_axpy(&mut u, t, i, 1);
                        continue;
                    }
                }
            }
            // move the smallest remaining entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t + 1..m {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..n {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
                u.swap(t, best.0);
            } else if best.1 != t {
                swap_cols(&mut a, t, best.1);
                swap_cols(&mut v, t, best.1);
                v_inv.swap(t, best.1);
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        t += 1;
    }
    let diag = (0..k).map(|i| a[i][i]).collect();
    Smith { diag, u, v, v_inv }
}

fn swap_cols(a: &mut IntMatrix, i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

// row_i += q * row_j
fn row_axpy(a: &mut IntMatrix, i: usize, j: usize, q: i128) {
    if q == 0 {
        return;
    }
    let src = a[j].clone();
    for (x, s) in a[i].iter_mut().zip(src) {
        *x += q * s;
    }
}

// col_i += q * col_j
fn col_axpy(a: &mut IntMatrix, i: usize, j: usize, q: i128) {
    if q == 0 {
        return;
    }
    for row in a.iter_mut() {
        row[i] += q * row[j];
    }
}

#[cfg(test)]
pub fn mat_mul(a: &IntMatrix, b: &IntMatrix, inner: usize, cols: usize) -> IntMatrix {
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect())
        .collect()
}

#[cfg(test)]
pub fn vec_mat(x: &[i128], m: &IntMatrix, cols: usize) -> Vec<i128> {
    (0..cols).map(|j| x.iter().zip(m).map(|(xi, row)| xi * row[j]).sum()).collect()
}

/// Basis of the lattice spanned by the given rows (row echelon form, zero
/// rows dropped).
pub fn row_basis(rows: &IntMatrix, cols: usize) -> IntMatrix {
    let mut a: IntMatrix = rows.clone();
    let mut out = Vec::new();
    for c in 0..cols {
        loop {
            let nz: Vec<usize> = (0..a.len()).filter(|&i| a[i][c] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| a[i][c].abs()).unwrap();
            for &i in &nz {
                if i != piv {
                    let q = a[i][c].div_euclid(a[piv][c]);
                    row_axpy(&mut a, i, piv, -q);
                }
            }
        }
        if let Some(i) = (0..a.len()).find(|&i| a[i][c] != 0) {
            let mut r = a.swap_remove(i);
            if r[c] < 0 {
                r.iter_mut().for_each(|x| *x = -*x);
            }
            out.push(r);
        }
        a.retain(|r| r.iter().any(|&x| x != 0));
    }
    out
}

/// Rows spanning {x : x A = 0} for an m x n integer matrix A.
pub fn left_kernel(a: &IntMatrix, cols: usize) -> IntMatrix {
    let s = smith(a, cols);
    let r = s.rank();
    s.u[r..].to_vec()
}

/// All vectors v with 0 <= v_i < radix_i, in lexicographic order.
pub fn mixed_radix(radix: &[i128]) -> impl Iterator<Item = Vec<u64>> {
    let radix: Vec<u64> = radix.iter().map(|&r| r as u64).collect();
    let total: u64 = radix.iter().product();
    (0..total).map(move |mut n| {
        let mut v = vec![0; radix.len()];
        for i in (0..radix.len()).rev() {
            v[i] = n % radix[i];
            n /= radix[i];
        }
        v
    })
}

/// Exact inverse over Q, if the matrix is invertible.
pub fn inverse_rat(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, piv);
        let inv = BigRational::one() / &m[c][c];
        for x in m[c].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let src = m[c].clone();
                for (x, s) in m[i].iter_mut().zip(src) {
                    *x -= &f * s;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(a: &IntMatrix, cols: usize) -> Smith {
        let s = smith(a, cols);
        let uav = mat_mul(&mat_mul(&s.u, a, a.len(), cols), &s.v, cols, cols);
        for (i, row) in uav.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let want = if i == j { s.diag[i] } else { 0 };
                assert_eq!(x, want, "entry ({i},{j}) of UAV");
            }
        }
        assert_eq!(mat_mul(&s.v, &s.v_inv, cols, cols), identity(cols));
        for w in s.diag.windows(2) {
            if w[1] != 0 {
                assert_eq!(w[1] % w[0], 0);
            }
        }
        s
    }

    #[test]
    fn smith_of_cycle_laplacian() {
        // I5 fiber: cokernel Z + Z/5
        let n = 5;
        let a: IntMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match (i as i64 - j as i64).rem_euclid(n as i64) {
                        0 => -2,
                        1 | 4 => 1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        let s = check(&a, n);
        assert_eq!(s.diag, vec![1, 1, 1, 5, 0]);
    }

    #[test]
    fn kernel_and_basis() {
        let a: IntMatrix = vec![vec![2, 4], vec![1, 2], vec![3, 6]];
        for k in left_kernel(&a, 2) {
            assert_eq!(vec_mat(&k, &a, 2), vec![0, 0]);
        }
        let b = row_basis(&vec![vec![4, 6], vec![6, 9], vec![2, 3]], 2);
        assert_eq!(b, vec![vec![2, 3]]);
    }

    proptest! {
        #[test]
        fn smith_reconstructs(entries in proptest::collection::vec(-20i128..20, 12)) {
            let a: IntMatrix = entries.chunks(4).map(|c| c.to_vec()).collect();
            check(&a, 4);
        }
    }
}
