//! Exact linear algebra over a field and determinants over `F[x]`.

use super::field::Field;
use super::poly::{Poly, PolyOps};

pub type Matrix<E> = Vec<Vec<E>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(k: &F, m: &mut Matrix<F::Elt>) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !k.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = k.inv(&m[r][c]).unwrap();
        for j in c..cols {
            m[r][j] = k.mul(&m[r][j], &inv);
        }
        for i in 0..rows {
            if i != r && !k.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let t = k.mul(&factor, &m[r][j]);
                    m[i][j] = k.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(k: &F, m: &Matrix<F::Elt>) -> usize {
    let mut a = m.clone();
    rref(k, &mut a).len()
}

/// A basis of the right kernel `{v : m v = 0}`; `ncols` is needed for empty `m`.
pub fn nullspace<F: Field>(k: &F, m: &Matrix<F::Elt>, ncols: usize) -> Vec<Vec<F::Elt>> {
    let mut a = m.clone();
    let pivots = rref(k, &mut a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![k.zero(); ncols];
            v[fc] = k.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg(&a[row][fc]);
            }
            v
        })
        .collect()
}

pub fn det<F: Field>(k: &F, m: &Matrix<F::Elt>) -> F::Elt {
    let n = m.len();
    let mut a = m.clone();
    let mut d = k.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !k.is_zero(&a[i][c])) else {
            return k.zero();
        };
        if p != c {
            a.swap(p, c);
            d = k.neg(&d);
        }
        d = k.mul(&d, &a[c][c]);
        let inv = k.inv(&a[c][c]).unwrap();
        for i in c + 1..n {
            if k.is_zero(&a[i][c]) {
                continue;
            }
            let factor = k.mul(&a[i][c], &inv);
            for j in c..n {
                let t = k.mul(&factor, &a[c][j]);
                a[i][j] = k.sub(&a[i][j], &t);
            }
        }
    }
    d
}

/// Determinant of a matrix with entries in `F[x]` by fraction-free
/// (Bareiss) elimination; every division is exact.
pub fn det_poly<F: Field>(k: &F, m: &Matrix<Poly<F::Elt>>) -> Poly<F::Elt> {
    let n = m.len();
    if n == 0 {
        return Poly::constant(k, k.one());
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = Poly::constant(k, k.one());
    for c in 0..n - 1 {
        if a[c][c].is_zero() {
            let Some(p) = (c + 1..n).find(|&i| !a[i][c].is_zero()) else {
                return Poly::zero();
            };
            a.swap(p, c);
            sign = !sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let t = k.poly_sub(
                    &k.poly_mul(&a[i][j], &a[c][c]),
                    &k.poly_mul(&a[i][c], &a[c][j]),
                );
                a[i][j] = k.poly_div_exact(&t, &prev);
            }
            a[i][c] = Poly::zero();
        }
        prev = a[c][c].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        k.poly_neg(&d)
    } else {
        d
    }
}
