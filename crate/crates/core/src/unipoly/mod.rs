//! Univariate polynomials over a [`Field`]: arithmetic, gcd, resultants,
//! square-free decomposition and factorization.

mod extension;
mod finite;
mod integer;
mod rational_functions;

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactfields::{dense, frobenius, join_terms, Field, Value};

pub use extension::{factor_over_extension, factor_in, roots_in, norm_of};
pub use finite::factor_finite;
pub use integer::factor_rational;
pub use rational_functions::rational_roots;

/// Dense polynomial, coefficients low-to-high, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Value>,
}

impl Poly {
    pub fn zero(field: &Field) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Self {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: Value) -> Self {
        Poly::from_coeffs(field, vec![c])
    }

    pub fn x(field: &Field) -> Self {
        Poly { field: field.clone(), coeffs: vec![field.zero(), field.one()] }
    }

    /// `c·x^k`
    pub fn monomial(field: &Field, c: Value, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Poly::from_coeffs(field, coeffs)
    }

    pub fn from_coeffs(field: &Field, coeffs: Vec<Value>) -> Self {
        let mut coeffs = coeffs;
        dense::trim(field, &mut coeffs);
        Poly { field: field.clone(), coeffs }
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Poly::from_coeffs(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    /// `x - c`
    pub fn linear(field: &Field, root: &Value) -> Self {
        Poly { field: field.clone(), coeffs: vec![field.neg(root), field.one()] }
            .trimmed()
    }

    fn trimmed(mut self) -> Self {
        dense::trim(&self.field, &mut self.coeffs);
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Value] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Value> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Value {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| self.field.is_one(c))
    }

    pub fn lc(&self) -> Option<&Value> {
        self.coeffs.last()
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::domain(format!(
                "polynomials over different fields: {} vs {}",
                self.field.describe(),
                other.field.describe()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert!(self.field == other.field);
        Poly { field: self.field.clone(), coeffs: dense::add(&self.field, &self.coeffs, &other.coeffs) }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        debug_assert!(self.field == other.field);
        Poly { field: self.field.clone(), coeffs: dense::sub(&self.field, &self.coeffs, &other.coeffs) }
    }

    pub fn neg(&self) -> Poly {
        Poly { field: self.field.clone(), coeffs: dense::neg(&self.field, &self.coeffs) }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert!(self.field == other.field);
        Poly { field: self.field.clone(), coeffs: dense::mul(&self.field, &self.coeffs, &other.coeffs) }
    }

    pub fn scale(&self, c: &Value) -> Poly {
        Poly { field: self.field.clone(), coeffs: dense::scale(&self.field, &self.coeffs, c) }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `(q, r)` with `self = q·divisor + r`, `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_same(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = dense::divrem(&self.field, &self.coeffs, &divisor.coeffs);
        Ok((Poly { field: self.field.clone(), coeffs: q }, Poly { field: self.field.clone(), coeffs: r }))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return Err(Error::internal("inexact polynomial division"));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.rem(self).is_ok_and(|r| r.is_zero())
    }

    pub fn monic(&self) -> Poly {
        Poly { field: self.field.clone(), coeffs: dense::monic(&self.field, &self.coeffs) }
    }

    /// Monic gcd; both inputs zero is a domain error.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::domain("gcd(0, 0) is undefined"));
        }
        Ok(Poly { field: self.field.clone(), coeffs: dense::gcd(&self.field, &self.coeffs, &other.coeffs) })
    }

    /// `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.check_same(other)?;
        let (g, s, t) = dense::ext_gcd(&self.field, &self.coeffs, &other.coeffs);
        let f = &self.field;
        Ok((Poly::from_coeffs(f, g), Poly::from_coeffs(f, s), Poly::from_coeffs(f, t)))
    }

    /// Formal derivative; `k·c` is computed in the field, so it vanishes
    /// when the characteristic divides `k`.
    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| f.scale_int(k as i64, c))
            .collect();
        Poly::from_coeffs(f, coeffs)
    }

    pub fn eval(&self, x: &Value) -> Value {
        dense::eval(&self.field, &self.coeffs, x)
    }

    /// `self(inner(x))`
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Poly::constant(&self.field, c.clone()));
        }
        acc
    }

    /// `self^e mod modulus`
    pub fn pow_mod(&self, e: &BigUint, modulus: &Poly) -> Result<Poly> {
        let mut acc = Poly::one(&self.field).rem(modulus)?;
        let base = self.rem(modulus)?;
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus)?;
            if e.bit(i) {
                acc = acc.mul(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// Coefficients mapped into an extension of this polynomial's field.
    pub fn embed_into(&self, upper: &Field) -> Result<Poly> {
        if !upper.extends(&self.field) {
            return Err(Error::domain(format!(
                "{} does not extend {}",
                upper.describe(),
                self.field.describe()
            )));
        }
        Ok(Poly::from_coeffs(upper, self.coeffs.iter().map(|c| upper.embed_unchecked(c, &self.field)).collect()))
    }

    /// Coefficients mapped by an arbitrary ring map into `target`.
    pub fn map_coeffs(&self, target: &Field, mut map: impl FnMut(&Value) -> Value) -> Poly {
        Poly::from_coeffs(target, self.coeffs.iter().map(&mut map).collect())
    }

    /// Resultant by the Euclidean remainder sequence; equals the Sylvester
    /// determinant.
    pub fn resultant(&self, other: &Poly) -> Result<Value> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Err(Error::domain("resultant with the zero polynomial"));
        }
        let f = &self.field;
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = f.one();
        loop {
            let (m, n) = (a.deg(), b.deg());
            if n == 0 {
                return Ok(f.mul(&acc, &f.pow(b.lc().unwrap(), m as u64)));
            }
            let r = a.rem(&b)?;
            if r.is_zero() {
                return Ok(f.zero());
            }
            // res(a, b) = (-1)^{mn} lc(b)^{m - deg r} res(b, r)
            let mut factor = f.pow(b.lc().unwrap(), (m - r.deg()) as u64);
            if m * n % 2 == 1 {
                factor = f.neg(&factor);
            }
            acc = f.mul(&acc, &factor);
            a = b;
            b = r;
        }
    }

    /// Square-free decomposition, characteristic aware. Pieces whose
    /// derivative vanishes but whose coefficients have no p-th roots are
    /// reported in `stuck` instead of being split further.
    pub fn squarefree_decomposition(&self) -> Result<SquarefreeDecomposition> {
        if self.is_zero() {
            return Err(Error::domain("square-free decomposition of zero"));
        }
        let mut out = SquarefreeDecomposition { parts: Vec::new(), stuck: Vec::new() };
        sqf_rec(&self.monic(), 1, &mut out)?;
        out.parts.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| poly_order(&a.0, &b.0)));
        Ok(out)
    }

    /// Monic square-free part, or a witness that the polynomial is
    /// inseparable over a field lacking the needed p-th roots.
    pub fn squarefree_part(&self) -> Result<SquarefreePart> {
        let dec = self.squarefree_decomposition()?;
        if let Some((piece, _)) = dec.stuck.first() {
            return Ok(SquarefreePart::InseparableWitness { piece: piece.clone() });
        }
        let mut acc = Poly::one(&self.field);
        for (p, _) in &dec.parts {
            acc = acc.mul(p);
        }
        Ok(SquarefreePart::Squarefree(acc))
    }

    pub fn is_squarefree(&self) -> Result<bool> {
        Ok(!self.is_zero() && self.gcd(&self.derivative())?.deg() == 0)
    }

    /// Printed in the CLI grammar with the given variable name.
    pub fn format_in(&self, var: &str) -> String {
        let terms: Vec<(String, usize)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(i, c)| (self.field.format(c), i))
            .collect();
        join_terms(&terms, var, true)
    }
}

fn sqf_rec(f: &Poly, mult: usize, out: &mut SquarefreeDecomposition) -> Result<()> {
    if f.deg() == 0 {
        return Ok(());
    }
    let d = f.derivative();
    if d.is_zero() {
        let p = f.field.characteristic() as usize;
        let mut root_coeffs = Vec::new();
        for (i, c) in f.coeffs.iter().enumerate() {
            if i % p != 0 {
                debug_assert!(f.field.is_zero(c));
                continue;
            }
            match frobenius::qth_root(&f.field, c, p) {
                Some(r) => root_coeffs.push(r),
                None => {
                    out.stuck.push((f.clone(), mult));
                    return Ok(());
                }
            }
        }
        let g = Poly::from_coeffs(&f.field, root_coeffs);
        return sqf_rec(&g, mult * p, out);
    }
    let mut c = f.gcd(&d)?;
    let mut w = f.exact_div(&c)?;
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c)?;
        let z = w.exact_div(&y)?;
        if z.deg() > 0 {
            out.parts.push((z.monic(), i * mult));
        }
        i += 1;
        c = c.exact_div(&y)?;
        w = y;
    }
    if c.deg() > 0 {
        sqf_rec(&c.monic(), mult, out)?;
    }
    Ok(())
}

/// Result of [`Poly::squarefree_decomposition`].
#[derive(Clone, Debug)]
pub struct SquarefreeDecomposition {
    /// Square-free, pairwise coprime monic pieces with multiplicities.
    pub parts: Vec<(Poly, usize)>,
    /// Pieces `g(x^p)` whose coefficients have no p-th roots in the field.
    pub stuck: Vec<(Poly, usize)>,
}

impl SquarefreeDecomposition {
    pub fn is_complete(&self) -> bool {
        self.stuck.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquarefreePart {
    Squarefree(Poly),
    InseparableWitness { piece: Poly },
}

/// Deterministic order: degree first, then coefficients low-to-high.
pub fn poly_order(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    a.coeffs.len().cmp(&b.coeffs.len()).then_with(|| a.coeffs.cmp(&b.coeffs))
}

/// `f = unit · Π factor^multiplicity` with monic irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Value,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn expand(&self, field: &Field) -> Poly {
        let mut acc = Poly::constant(field, self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m as u64));
        }
        acc
    }

    pub(crate) fn sort(&mut self) {
        self.factors.sort_by(|a, b| poly_order(&a.0, &b.0).then(a.1.cmp(&b.1)));
    }

    /// Merges equal factors by adding multiplicities.
    pub(crate) fn normalize(&mut self) {
        self.sort();
        let mut merged: Vec<(Poly, usize)> = Vec::new();
        for (f, m) in self.factors.drain(..) {
            match merged.last_mut() {
                Some((g, k)) if *g == f => *k += m,
                _ => merged.push((f, m)),
            }
        }
        self.factors = merged;
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factorization over the polynomial's own field (ℚ, 𝔽_q, number-field and
/// finite-field towers; 𝔽_p(t) towers only in the decidable cases).
pub fn factor(f: &Poly) -> Result<Factorization> {
    factor_in(f.field(), f)
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field.describe(), self.format_in("x"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("x"))
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.format_in("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfields::{q, RatFun};

    fn qx(cs: &[i64]) -> Poly {
        Poly::from_ints(&Field::rationals(), cs)
    }

    #[test]
    fn divmod_examples() {
        let (quo, r) = qx(&[-1, 0, 1]).divmod(&qx(&[-1, 1])).unwrap();
        assert_eq!(quo, qx(&[1, 1]));
        assert!(r.is_zero());

        let f2 = Field::prime(2).unwrap();
        let (quo, r) = Poly::from_ints(&f2, &[0, 0, 0, 1]).divmod(&Poly::from_ints(&f2, &[1, 0, 1])).unwrap();
        assert_eq!(quo, Poly::from_ints(&f2, &[0, 1]));
        assert_eq!(r, Poly::from_ints(&f2, &[0, 1]));

        let (quo, r) = qx(&[0, 1]).divmod(&qx(&[-2, 0, 1])).unwrap();
        assert!(quo.is_zero());
        assert_eq!(r, qx(&[0, 1]));
    }

    #[test]
    fn division_by_zero_polynomial() {
        assert_eq!(qx(&[1, 1]).divmod(&qx(&[])).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(qx(&[-1, 0, 1]).gcd(&qx(&[1, -2, 1])).unwrap(), qx(&[-1, 1]));
        assert_eq!(qx(&[4, 0, 2]).gcd(&qx(&[])).unwrap(), qx(&[2, 0, 1]));
        assert!(qx(&[]).gcd(&qx(&[])).is_err());
    }

    #[test]
    fn gcd_with_vanishing_derivative_over_f2t() {
        let k = Field::rational_functions(2).unwrap();
        let t = k.generator().unwrap();
        let f = Poly::from_coeffs(&k, vec![k.neg(&t), k.zero(), k.one()]);
        assert!(f.derivative().is_zero());
        assert_eq!(f.gcd(&f.derivative()).unwrap(), f);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(qx(&[-2, 0, 0, 1]).derivative(), qx(&[0, 0, 3]));
        assert!(qx(&[7]).derivative().is_zero());
    }

    #[test]
    fn squarefree_examples() {
        // (x-1)^2 (x+1)
        let f = qx(&[-1, 1]).pow(2).mul(&qx(&[1, 1]));
        assert_eq!(f.squarefree_part().unwrap(), SquarefreePart::Squarefree(qx(&[-1, 0, 1])));
        let g = qx(&[-2, 0, 0, 1]);
        assert_eq!(g.squarefree_part().unwrap(), SquarefreePart::Squarefree(g.clone()));

        let k = Field::rational_functions(2).unwrap();
        let f = Poly::from_coeffs(&k, vec![Value::RatFun(RatFun::t()), k.zero(), k.one()]);
        assert!(matches!(f.squarefree_part().unwrap(), SquarefreePart::InseparableWitness { .. }));
    }

    #[test]
    fn squarefree_in_characteristic_p_uses_roots() {
        // (x+1)^2 (x+2)^3 over 𝔽_3: the cube has zero derivative
        let f3 = Field::prime(3).unwrap();
        let f = Poly::from_ints(&f3, &[1, 1]).pow(2).mul(&Poly::from_ints(&f3, &[2, 1]).pow(3));
        let dec = f.squarefree_decomposition().unwrap();
        assert!(dec.is_complete());
        assert_eq!(
            dec.parts,
            vec![(Poly::from_ints(&f3, &[1, 1]), 2), (Poly::from_ints(&f3, &[2, 1]), 3)]
        );
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(qx(&[-2, 1]).resultant(&qx(&[-3, 1])).unwrap(), q(-1, 1));
        assert_eq!(qx(&[-2, 0, 1]).resultant(&qx(&[0, 1])).unwrap(), q(-2, 1));
        let f = qx(&[-1, 0, 1]);
        assert_eq!(f.resultant(&f.derivative()).unwrap(), q(-4, 1));
    }

    #[test]
    fn printing() {
        assert_eq!(qx(&[-2, 0, 1]).to_string(), "x^2 - 2");
        assert_eq!(qx(&[1, -1, 0, 3]).to_string(), "3*x^3 - x + 1");
    }
}
