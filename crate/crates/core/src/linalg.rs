//! Small dense linear algebra over Q: row reduction, rank, kernels.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::poly::{Monomial, Poly};
use crate::rational::Rational;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{ v : rows * v = 0 }`, one vector per free column.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    (0..ncols)
        .filter(|c| !pivot_set.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free].clone();
            }
            v
        })
        .collect()
}

/// Determinant by Gaussian elimination over Q.
pub fn determinant(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let inv = m[c][c].recip();
        let pivot_row = m[c].clone();
        for row in m.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] * &inv;
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                *v -= &f * pv;
            }
        }
    }
    det
}

/// Coefficient matrix of a list of polynomials: one row per polynomial,
/// one column per monomial occurring in any of them (ascending order).
pub fn coefficient_rows(polys: &[Poly]) -> (Vec<Monomial>, Vec<Vec<Rational>>) {
    let monos: Vec<Monomial> =
        polys.iter().flat_map(|p| p.terms().map(|(m, _)| *m)).collect::<BTreeSet<_>>().into_iter().collect();
    let rows = polys.iter().map(|p| monos.iter().map(|m| p.coeff(m)).collect()).collect();
    (monos, rows)
}

/// Transpose of [`coefficient_rows`]: one column per polynomial.
pub fn coefficient_columns(polys: &[Poly]) -> Vec<Vec<Rational>> {
    let (monos, rows) = coefficient_rows(polys);
    (0..monos.len()).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}
