//! Dense linear algebra over cyclotomic fields.

use crate::cyclo::CycloNum;

/// Row-reduces `m` in place and returns the pivot columns.
pub fn row_reduce(m: &mut [Vec<CycloNum>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for k in c..cols {
            m[r][k] = &m[r][k] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..cols {
                    if m[r][k].is_zero() {
                        continue;
                    }
                    let t = &m[r][k] * &f;
                    m[i][k] = &m[i][k] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<CycloNum>]) -> usize {
    let mut w = m.to_vec();
    row_reduce(&mut w).len()
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(m: &[Vec<CycloNum>]) -> Option<Vec<Vec<CycloNum>>> {
    let n = m.len();
    let mut w: Vec<Vec<CycloNum>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { CycloNum::one() } else { CycloNum::zero() }));
            r
        })
        .collect();
    let piv = row_reduce(&mut w);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(w.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `m x = b` for square invertible `m`.
pub fn solve(m: &[Vec<CycloNum>], b: &[CycloNum]) -> Option<Vec<CycloNum>> {
    let n = m.len();
    let mut w: Vec<Vec<CycloNum>> = m
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let piv = row_reduce(&mut w);
    if piv.len() < n || piv.iter().any(|&p| p >= n) {
        return None;
    }
    Some(w.into_iter().map(|r| r[n].clone()).collect())
}

/// Trace of a square matrix.
pub fn trace(m: &[Vec<CycloNum>]) -> CycloNum {
    m.iter().enumerate().map(|(i, r)| r[i].clone()).sum()
}

pub fn mat_mul(a: &[Vec<CycloNum>], b: &[Vec<CycloNum>]) -> Vec<Vec<CycloNum>> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![CycloNum::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if b[l][j].is_zero() {
                    continue;
                }
                out[i][j] = &out[i][j] + &(&a[i][l] * &b[l][j]);
            }
        }
    }
    out
}
