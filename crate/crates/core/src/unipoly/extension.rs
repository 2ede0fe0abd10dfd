//! Factoring over extension fields.
//!
//! Number-field towers use Trager's norm method: shift `g(x − sγ)` by a
//! primitive element γ until its norm down to ℚ is square-free, factor the
//! norm over ℚ, and recover the factors as gcds. Finite towers go straight
//! to Cantor–Zassenhaus. Over 𝔽_p(t) towers only the cases decidable by
//! root search and the binomial criterion are handled.

use super::{factor_finite, factor_rational, rational_roots, Factorization, Poly};
use crate::error::{Error, Result};
use crate::exactfields::{frobenius, BaseField, Field, Value};
use crate::linalg;
use crate::towers;

/// Largest shift tried before giving up on a square-free norm.
const MAX_SHIFT: i64 = 40;

/// Factorization of `f` (over a subfield of `field`) over `field`.
pub fn factor_in(field: &Field, f: &Poly) -> Result<Factorization> {
    let g = if f.field() == field { f.clone() } else { f.embed_into(field)? };
    if g.is_zero() {
        return Err(Error::domain("cannot factor the zero polynomial"));
    }
    match field.base() {
        BaseField::Prime(_) => factor_finite(&g),
        BaseField::Rationals if field.depth() == 0 => factor_rational(&g),
        BaseField::Rationals => factor_number_field(&g),
        BaseField::RationalFunctions(_) => factor_rational_function_tower(&g),
    }
}

/// Factorization of `f` over the extension `upper` of its field.
pub fn factor_over_extension(f: &Poly, upper: &Field) -> Result<Factorization> {
    factor_in(upper, f)
}

/// Distinct roots of `f` in `field`, sorted.
pub fn roots_in(f: &Poly, field: &Field) -> Result<Vec<Value>> {
    let fac = factor_in(field, f)?;
    let mut out: Vec<Value> = fac
        .factors
        .iter()
        .filter(|(h, _)| h.deg() == 1)
        .map(|(h, _)| field.neg(&h.coeffs()[0]))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// `Norm_{F/ℚ}(f)` for `f` over a number-field tower `F`, as a polynomial
/// over ℚ. Computed by evaluating at integer points, taking element norms
/// as determinants of multiplication matrices, and interpolating.
pub fn norm_of(f: &Poly) -> Result<Poly> {
    let field = f.field();
    if field.characteristic() != 0 {
        return Err(Error::domain("norm_of is implemented for number-field towers"));
    }
    let q = field.base_field();
    if f.is_zero() {
        return Ok(Poly::zero(&q));
    }
    let n = field.absolute_degree();
    let total = n * f.deg();
    let points: Vec<Value> = (0..=total as i64).map(|i| q.from_i64(i)).collect();
    let values: Vec<Value> = points.iter().map(|x| element_norm(field, &f.eval(&field.embed_unchecked(x, &q)))).collect();
    // Vandermonde solve for the coefficients
    let rows: linalg::Matrix =
        points.iter().map(|x| (0..=total).map(|k| q.pow(x, k as u64)).collect()).collect();
    let coeffs = linalg::solve(&q, &rows, &values, total + 1)
        .ok_or_else(|| Error::internal("interpolation system is singular"))?;
    Ok(Poly::from_coeffs(&q, coeffs))
}

/// Norm of an element down to the base field.
pub(crate) fn element_norm(field: &Field, v: &Value) -> Value {
    let q = field.base_field();
    let basis = field.basis_over(&q);
    let cols: Vec<Vec<Value>> = basis.iter().map(|b| field.coords_over(&field.mul(v, b), &q)).collect();
    let m = linalg::from_columns(&q, &cols, basis.len());
    linalg::determinant(&q, &m)
}

fn factor_number_field(f: &Poly) -> Result<Factorization> {
    let field = f.field();
    let mut out = Factorization { unit: f.lc().unwrap().clone(), factors: Vec::new() };
    let dec = f.squarefree_decomposition()?;
    for (part, mult) in dec.parts {
        for g in trager(&part)? {
            out.factors.push((g, mult));
        }
    }
    debug_assert_eq!(out.expand(field), *f);
    out.normalize();
    Ok(out)
}

fn shifts() -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=MAX_SHIFT).flat_map(|s| [s, -s]))
}

/// Irreducible monic factors of a monic square-free `g` over a number field.
fn trager(g: &Poly) -> Result<Vec<Poly>> {
    if g.deg() <= 1 {
        return Ok(vec![g.monic()]);
    }
    let field = g.field();
    let flat = towers::flat_model(field)?;
    let gamma = &flat.gamma;
    for s in shifts() {
        let sg = field.scale_int(s, gamma);
        let gs = g.compose(&Poly::from_coeffs(field, vec![field.neg(&sg), field.one()]));
        let norm = norm_of(&gs)?;
        if !norm.is_squarefree()? {
            continue;
        }
        let fac = factor_rational(&norm)?;
        if fac.factors.len() == 1 {
            return Ok(vec![g.monic()]);
        }
        let back = Poly::from_coeffs(field, vec![sg, field.one()]);
        let mut out = Vec::new();
        for (ni, _) in &fac.factors {
            let h = gs.gcd(&ni.embed_into(field)?)?;
            if h.deg() > 0 {
                out.push(h.compose(&back).monic());
            }
        }
        let total: usize = out.iter().map(Poly::deg).sum();
        if total != g.deg() {
            return Err(Error::internal("norm factors do not account for the whole polynomial"));
        }
        return Ok(out);
    }
    Err(Error::internal("no shift makes the norm square-free"))
}

// ---- 𝔽_p(t) towers ----

fn factor_rational_function_tower(f: &Poly) -> Result<Factorization> {
    let field = f.field();
    let mut out = Factorization { unit: f.lc().unwrap().clone(), factors: Vec::new() };
    let dec = f.squarefree_decomposition()?;
    for (piece, mult) in dec.stuck {
        if !is_irreducible_binomial(&piece) {
            return Err(Error::capability(format!(
                "cannot factor the inseparable piece {} over {}",
                piece,
                field.describe()
            )));
        }
        out.factors.push((piece, mult));
    }
    for (part, mult) in dec.parts {
        for g in split_separable(&part)? {
            out.factors.push((g, mult));
        }
    }
    out.normalize();
    Ok(out)
}

/// `x^{p^k} − c` with `c` not a p-th power is irreducible in characteristic p.
fn is_irreducible_binomial(g: &Poly) -> bool {
    let field = g.field();
    let p = field.characteristic() as usize;
    let n = g.deg();
    let mut q = 1;
    while q < n {
        q *= p;
    }
    if q != n || n < 2 {
        return false;
    }
    let middle_zero = g.coeffs()[1..n].iter().all(|c| field.is_zero(c));
    middle_zero && frobenius::qth_root(field, &field.neg(&g.coeffs()[0]), p).is_none()
}

/// Splits a separable monic polynomial over an 𝔽_p(t) tower when the
/// answer is certain: linear factors from root search, and a remainder
/// that is provably irreducible.
fn split_separable(g: &Poly) -> Result<Vec<Poly>> {
    let field = g.field();
    let mut rest = g.monic();
    let mut out = Vec::new();
    for r in candidate_roots(&rest)? {
        let lin = Poly::linear(field, &r);
        while rest.deg() > 0 && field.is_zero(&rest.eval(&r)) {
            rest = rest.exact_div(&lin)?;
            out.push(lin.clone());
        }
    }
    match rest.deg() {
        0 => {}
        1 => out.push(rest),
        // over 𝔽_p(t) itself the root search is complete
        2 | 3 if field.depth() == 0 => out.push(rest),
        _ => {
            return Err(Error::capability(format!(
                "cannot decide irreducibility of {} over {}",
                rest,
                field.describe()
            )))
        }
    }
    Ok(out)
}

/// Candidate roots: all roots in 𝔽_p(t) when the coefficients lie there,
/// plus `c0 + c1·θ` for tower generators θ and `c0, c1 ∈ 𝔽_p`.
fn candidate_roots(g: &Poly) -> Result<Vec<Value>> {
    let field = g.field();
    let k = field.base_field();
    let p = field.characteristic();
    let mut cands = Vec::new();
    let restricted: Option<Vec<Value>> = g.coeffs().iter().map(|c| field.restrict(c, &k)).collect();
    if let Some(cs) = restricted {
        for r in rational_roots(&Poly::from_coeffs(&k, cs))? {
            cands.push(field.embed_unchecked(&r, &k));
        }
    }
    let gens = field.generators_over(&k);
    for c0 in 0..p {
        let base = field.from_i64(c0 as i64);
        cands.push(base.clone());
        for theta in &gens {
            for c1 in 1..p {
                cands.push(field.add(&base, &field.scale_int(c1 as i64, theta)));
            }
        }
    }
    let mut out = Vec::new();
    for c in cands {
        if !out.contains(&c) && field.is_zero(&g.eval(&c)) {
            out.push(c);
        }
    }
    Ok(out)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfields::q;

    fn sqrt2() -> Field {
        let qq = Field::rationals();
        Field::extension_unchecked(&qq, vec![q(-2, 1), q(0, 1), q(1, 1)], false)
    }

    fn cbrt2() -> Field {
        let qq = Field::rationals();
        Field::extension_unchecked(&qq, vec![q(-2, 1), q(0, 1), q(0, 1), q(1, 1)], false)
    }

    #[test]
    fn x2_minus_2_splits_over_sqrt2() {
        let l = sqrt2();
        let f = Poly::from_ints(&Field::rationals(), &[-2, 0, 1]);
        let fac = factor_over_extension(&f, &l).unwrap();
        let a = l.generator().unwrap();
        assert_eq!(
            fac.factors,
            {
                let mut v = vec![(Poly::linear(&l, &a), 1), (Poly::linear(&l, &l.neg(&a)), 1)];
                v.sort_by(|x, y| super::super::poly_order(&x.0, &y.0));
                v
            }
        );
    }

    #[test]
    fn x3_minus_2_over_cbrt2() {
        let l = cbrt2();
        let a = l.generator().unwrap();
        let f = Poly::from_ints(&Field::rationals(), &[-2, 0, 0, 1]);
        let fac = factor_over_extension(&f, &l).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.factors[0].0, Poly::linear(&l, &a));
        let quad = Poly::from_coeffs(&l, vec![l.mul(&a, &a), a.clone(), l.one()]);
        assert_eq!(fac.factors[1].0, quad);
    }

    #[test]
    fn norm_of_linear_is_minimal_polynomial() {
        let l = sqrt2();
        let a = l.generator().unwrap();
        // Norm(x - (1 + a)) = x^2 - 2x - 1
        let f = Poly::linear(&l, &l.add(&l.one(), &a));
        assert_eq!(norm_of(&f).unwrap(), Poly::from_ints(&Field::rationals(), &[-1, -2, 1]));
    }

    #[test]
    fn artin_schreier_splits() {
        // x^2 + x + t over 𝔽_2(t)(a), a^2 + a + t = 0: roots a and a + 1
        let k = Field::rational_functions(2).unwrap();
        let t = k.generator().unwrap();
        let l = Field::extension_unchecked(&k, vec![t.clone(), k.one(), k.one()], false);
        let f = Poly::from_coeffs(&k, vec![t, k.one(), k.one()]);
        let roots = roots_in(&f, &l).unwrap();
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn inseparable_binomial_is_irreducible_over_base() {
        let k = Field::rational_functions(2).unwrap();
        let t = k.generator().unwrap();
        let f = Poly::from_coeffs(&k, vec![k.neg(&t), k.zero(), k.one()]);
        let fac = factor_in(&k, &f).unwrap();
        assert!(fac.is_irreducible());
    }
}
