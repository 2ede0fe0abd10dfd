//! q-th roots and Frobenius-semilinear systems in characteristic p.
//!
//! Over a finite field the Frobenius map is bijective and its inverse is a
//! power map. Over a finite tower `M` above 𝔽_p(t) it is only injective;
//! there we use that `K = 𝔽_p(t)` has basis `1, t, …, t^{q-1}` over `K^q`,
//! which turns `Σ w_i c_i^q = v` into an ordinary linear system over `K`.

use num_bigint::BigUint;
use num_traits::Pow;

use super::{BaseField, Field, Value};
use crate::linalg;

fn is_power_of(q: usize, p: u64) -> bool {
    let mut x = q as u64;
    if p < 2 || x < p {
        return false;
    }
    while x % p == 0 {
        x /= p;
    }
    x == 1
}

fn log_p(q: usize, p: u64) -> usize {
    let mut k = 0;
    let mut x = q as u64;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

/// `w` with `w^q = v`, when it exists. `q` must be a power of the
/// characteristic; in characteristic 0 the answer is always `None`.
pub fn qth_root(field: &Field, v: &Value, q: usize) -> Option<Value> {
    let p = field.characteristic();
    if p == 0 || !is_power_of(q, p) {
        return None;
    }
    match field.base() {
        BaseField::Prime(_) => Some(finite_qth_root(field, v, q)),
        BaseField::RationalFunctions(_) => {
            let w = rational_function_qth_root(field, v, q)?;
            debug_assert_eq!(&field.pow(&w, q as u64), v);
            Some(w)
        }
        BaseField::Rationals => None,
    }
}

fn finite_qth_root(field: &Field, v: &Value, q: usize) -> Value {
    let p = field.characteristic();
    let n = field.absolute_degree();
    let k = log_p(q, p) % n;
    if k == 0 {
        return v.clone();
    }
    let e = BigUint::from(p).pow((n - k) as u32);
    field.pow_big(v, &e)
}

/// Coefficient blocks of `Σ_l coeff_l · y_l`, split into the `q` components
/// over `K^q`, one row per (coordinate, component).
fn split_rows(field: &Field, coeffs: &[Value], q: usize) -> Vec<Vec<Value>> {
    let k = field.base_field();
    let p = field.characteristic();
    let n = field.absolute_degree();
    let cols: Vec<Vec<Value>> = coeffs.iter().map(|c| field.coords_over(c, &k)).collect();
    let mut rows = vec![vec![k.zero(); coeffs.len()]; n * q];
    for (l, col) in cols.iter().enumerate() {
        for (kk, entry) in col.iter().enumerate() {
            let Value::RatFun(rf) = entry else { unreachable!() };
            if rf.is_zero() {
                continue;
            }
            for (r, comp) in rf.frobenius_components(q, p).into_iter().enumerate() {
                rows[kk * q + r][l] = Value::RatFun(comp);
            }
        }
    }
    rows
}

fn rational_function_qth_root(field: &Field, v: &Value, q: usize) -> Option<Value> {
    let k = field.base_field();
    let basis = field.basis_over(&k);
    let powered: Vec<Value> = basis.iter().map(|b| field.pow(b, q as u64)).collect();
    let m = split_rows(field, &powered, q);
    let rhs_rows = split_rows(field, std::slice::from_ref(v), q);
    let rhs: Vec<Value> = rhs_rows.into_iter().map(|r| r[0].clone()).collect();
    let y = linalg::solve(&k, &m, &rhs, basis.len())?;
    Some(field.from_coords_over(&y, &k))
}

/// Basis over `field` of `{c ∈ field^m : Σ_i rows[j][i]·c_i^q = 0 ∀j}`.
///
/// In characteristic 0 the Frobenius is not available; pass `q = 1` there
/// to get the plain linear kernel.
pub fn frobenius_kernel(field: &Field, rows: &[Vec<Value>], m: usize, q: usize) -> Vec<Vec<Value>> {
    if q == 1 {
        return linalg::kernel(field, &rows.to_vec(), m);
    }
    match field.base() {
        BaseField::Prime(_) => {
            let rooted: Vec<Vec<Value>> =
                rows.iter().map(|r| r.iter().map(|w| finite_qth_root(field, w, q)).collect()).collect();
            linalg::kernel(field, &rooted, m)
        }
        BaseField::RationalFunctions(_) => rational_function_kernel(field, rows, m, q),
        BaseField::Rationals => panic!("Frobenius kernel requested in characteristic 0"),
    }
}

fn rational_function_kernel(field: &Field, rows: &[Vec<Value>], m: usize, q: usize) -> Vec<Vec<Value>> {
    let k = field.base_field();
    let n = field.absolute_degree();
    let basis = field.basis_over(&k);
    let powered: Vec<Value> = basis.iter().map(|b| field.pow(b, q as u64)).collect();
    let mut big: linalg::Matrix = Vec::new();
    for row in rows {
        // coefficient of unknown (i, l) is row[i]·b_l^q
        let coeffs: Vec<Value> =
            (0..m * n).map(|idx| field.mul(&row[idx / n], &powered[idx % n])).collect();
        big.extend(split_rows(field, &coeffs, q));
    }
    let sols = linalg::kernel(&k, &big, m * n);
    let vectors: Vec<Vec<Value>> = sols
        .iter()
        .map(|s| (0..m).map(|i| field.from_coords_over(&s[i * n..(i + 1) * n], &k)).collect())
        .collect();
    independent_subset(field, &vectors)
}

/// A maximal linearly independent subset (over `field`), in input order.
pub fn independent_subset(field: &Field, vectors: &[Vec<Value>]) -> Vec<Vec<Value>> {
    let mut chosen: Vec<Vec<Value>> = Vec::new();
    let mut rank = 0;
    for v in vectors {
        let mut trial = chosen.clone();
        trial.push(v.clone());
        let r = linalg::rank(field, &trial);
        if r > rank {
            rank = r;
            chosen = trial;
        }
    }
    chosen
}
