//! Dense Gaussian elimination over an arbitrary [`Field`].
//!
//! Matrices are row-major `Vec<Vec<Value>>`. Systems here are tiny (tens of
//! unknowns), so nothing clever is attempted.

use crate::exactfields::{Field, Value};

pub type Matrix = Vec<Vec<Value>>;

pub fn zeros(f: &Field, rows: usize, cols: usize) -> Matrix {
    vec![vec![f.zero(); cols]; rows]
}

pub fn identity(f: &Field, n: usize) -> Matrix {
    let mut m = zeros(f, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = f.one();
    }
    m
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(f: &Field, m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = f.inv(&m[r][c]).expect("nonzero pivot");
        if !f.is_one(&inv) {
            for x in m[r].iter_mut().skip(c) {
                *x = f.mul(x, &inv);
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !f.is_zero(p) {
                    *x = f.sub(x, &f.mul(&factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: &Field, m: &Matrix) -> usize {
    let mut w = m.clone();
    rref(f, &mut w).len()
}

/// Basis of `{v : m·v = 0}`; `cols` is needed when `m` has no rows.
pub fn kernel(f: &Field, m: &Matrix, cols: usize) -> Vec<Vec<Value>> {
    let mut w = m.clone();
    let pivots = rref(f, &mut w);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&w[r][fc]);
            }
            v
        })
        .collect()
}

/// One solution of `m·x = b` (free variables set to zero), if consistent.
pub fn solve(f: &Field, m: &Matrix, b: &[Value], cols: usize) -> Option<Vec<Value>> {
    let mut aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![f.zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn inverse(f: &Field, m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(f: &Field, m: &Matrix, v: &[Value]) -> Vec<Value> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).fold(f.zero(), |acc, (a, b)| {
                if f.is_zero(a) || f.is_zero(b) {
                    acc
                } else {
                    f.add(&acc, &f.mul(a, b))
                }
            })
        })
        .collect()
}

/// Matrix whose columns are the given vectors.
pub fn from_columns(f: &Field, cols: &[Vec<Value>], rows: usize) -> Matrix {
    let mut m = zeros(f, rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            m[i][j] = x.clone();
        }
    }
    m
}

pub fn determinant(f: &Field, m: &Matrix) -> Value {
    let n = m.len();
    let mut w = m.clone();
    let mut det = f.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !f.is_zero(&w[i][c])) else {
            return f.zero();
        };
        if pr != c {
            w.swap(pr, c);
            det = f.neg(&det);
        }
        det = f.mul(&det, &w[c][c]);
        let inv = f.inv(&w[c][c]).unwrap();
        for i in c + 1..n {
            if f.is_zero(&w[i][c]) {
                continue;
            }
            let factor = f.mul(&w[i][c], &inv);
            for j in c..n {
                let t = f.mul(&factor, &w[c][j]);
                w[i][j] = f.sub(&w[i][j], &t);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfields::q;

    #[test]
    fn kernel_of_rank_one() {
        let f = Field::rationals();
        let m = vec![vec![q(1, 1), q(2, 1), q(3, 1)], vec![q(2, 1), q(4, 1), q(6, 1)]];
        let k = kernel(&f, &m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&f, &m, v).iter().all(|x| f.is_zero(x)));
        }
    }

    #[test]
    fn inverse_and_determinant() {
        let f = Field::rationals();
        let m = vec![vec![q(2, 1), q(1, 1)], vec![q(1, 1), q(1, 1)]];
        let inv = inverse(&f, &m).unwrap();
        assert_eq!(inv, vec![vec![q(1, 1), q(-1, 1)], vec![q(-1, 1), q(2, 1)]]);
        assert_eq!(determinant(&f, &m), q(1, 1));
    }

    #[test]
    fn inconsistent_system() {
        let f = Field::prime(5).unwrap();
        let one = Value::Prime(1);
        let m = vec![vec![one.clone()], vec![one.clone()]];
        assert!(solve(&f, &m, &[Value::Prime(1), Value::Prime(2)], 1).is_none());
    }
}
