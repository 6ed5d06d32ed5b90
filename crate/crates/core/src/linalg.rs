//! Dense Gaussian elimination over any [`Scalar`] field.

use crate::ring::Scalar;

/// Row-reduce in place; returns pivot columns in order.
fn eliminate<S: Scalar>(m: &mut [Vec<S>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = S::one().div(&m[row][col]).expect("pivot is nonzero");
        for c in col..m[row].len() {
            m[row][c] = m[row][c].mul(&inv);
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..m[r].len() {
                    let t = m[row][c].mul(&f);
                    m[r][c] = m[r][c].sub(&t);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<S: Scalar>(rows: &[Vec<S>]) -> usize {
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut m = rows.to_vec();
    eliminate(&mut m, cols).len()
}

/// Some `x` with `A x = b`, free variables set to zero; `None` if inconsistent.
pub fn solve<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut m: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut r = r.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let pivots = eliminate(&mut m, cols);
    if m.iter().skip(pivots.len()).any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![S::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

pub fn det<S: Scalar>(rows: &[Vec<S>]) -> S {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut acc = S::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return S::zero();
        };
        if p != col {
            m.swap(p, col);
            acc = acc.neg();
        }
        acc = acc.mul(&m[col][col]);
        let inv = S::one().div(&m[col][col]).expect("pivot is nonzero");
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = m[r][col].mul(&inv);
                for c in col..n {
                    let t = m[col][c].mul(&f);
                    m[r][c] = m[r][c].sub(&t);
                }
            }
        }
    }
    acc
}
