//! The composite ring `T = K + XL[X]`: polynomials over L whose constant
//! term lies in K.
//!
//! Noetherianity is decided by finiteness of `[L:K]`. Ideal statements are
//! checked as bounded-degree certificates: explicit T-combinations found
//! by linear algebra over K on coefficient coordinates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactfields::{Field, Value};
use crate::linalg;
use crate::towers::Extension;
use crate::unipoly::Poly;

#[derive(Clone, Debug)]
pub struct CompositeRing {
    ext: Extension,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CompositeElement {
    poly: Poly,
}

impl CompositeElement {
    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn add(&self, other: &Self) -> Self {
        CompositeElement { poly: self.poly.add(&other.poly) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        CompositeElement { poly: self.poly.mul(&other.poly) }
    }
}

/// `target = Σ coefficients[j] · generators[j]`.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub target: Poly,
    pub coefficients: Vec<Poly>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenerationCertificate {
    pub generators: Vec<CompositeElement>,
    pub degree_bound: usize,
    pub witnesses: Vec<Witness>,
}

impl CompositeRing {
    pub fn new(ext: &Extension) -> Self {
        CompositeRing { ext: ext.clone() }
    }

    pub fn extension(&self) -> &Extension {
        &self.ext
    }

    fn upper(&self) -> Result<&Field> {
        self.ext
            .upper()
            .map_err(|_| Error::capability("composite over an infinite extension has no element arithmetic"))
    }

    /// Constant coefficient in K.
    pub fn contains(&self, p: &Poly) -> Result<bool> {
        let l = self.upper()?;
        if p.field() != l {
            return Err(Error::domain(format!("polynomial over {} is not over {}", p.field().describe(), l.describe())));
        }
        Ok(l.restrict(&p.coeff(0), self.ext.lower()).is_some())
    }

    pub fn element(&self, p: Poly) -> Result<CompositeElement> {
        if !self.contains(&p)? {
            return Err(Error::domain(format!("{p} has constant term outside the base field")));
        }
        Ok(CompositeElement { poly: p })
    }

    /// Product, with the constant-term invariant re-checked.
    pub fn mul(&self, a: &CompositeElement, b: &CompositeElement) -> Result<CompositeElement> {
        let c = a.mul(b);
        if !self.contains(&c.poly)? {
            return Err(Error::internal("product left the composite ring"));
        }
        Ok(c)
    }

    pub fn is_noetherian(&self) -> bool {
        self.ext.is_finite()
    }

    /// K-basis of L as products of generator powers, ordered by total
    /// degree and then by tower coordinate index.
    pub fn monomial_basis(&self) -> Result<Vec<Value>> {
        let l = self.upper()?;
        let k = self.ext.lower();
        let levels = l.levels_above(k);
        let basis = l.basis_over(k);
        let mut keyed: Vec<(usize, usize, Value)> = basis
            .into_iter()
            .enumerate()
            .map(|(idx, b)| {
                // decode exponents: the lowest level varies fastest
                let mut rest = idx;
                let mut total = 0;
                for lvl in &levels {
                    let d = lvl.local_degree();
                    total += rest % d;
                    rest /= d;
                }
                (total, idx, b)
            })
            .collect();
        keyed.sort_by_key(|(t, i, _)| (*t, *i));
        Ok(keyed.into_iter().map(|(_, _, b)| b).collect())
    }

    /// `{X·b_1, …, X·b_n}` for the monomial basis, `b_1 = 1`.
    pub fn xl_ideal_generators(&self) -> Result<Vec<CompositeElement>> {
        let l = self.upper()?;
        Ok(self
            .monomial_basis()?
            .into_iter()
            .map(|b| CompositeElement { poly: Poly::monomial(l, b, 1) })
            .collect())
    }

    /// Witnesses that every `b_i·X^k`, `1 ≤ k ≤ bound`, lies in the ideal
    /// generated by `gens`, with T-coefficients of degree at most `bound`.
    pub fn certify_generation(&self, gens: &[CompositeElement], bound: usize) -> Result<GenerationCertificate> {
        if bound == 0 {
            return Err(Error::domain("degree bound must be at least 1"));
        }
        let l = self.upper()?.clone();
        let mut witnesses = Vec::new();
        for k in 1..=bound {
            for b in self.monomial_basis()? {
                let target = Poly::monomial(&l, b, k);
                let limits = vec![bound; gens.len()];
                match self.solve_combination(&target, gens, &limits)? {
                    Some(coefficients) => witnesses.push(Witness { target, coefficients }),
                    None => {
                        return Err(Error::NotGenerated {
                            bound,
                            detail: format!("{target} is not a T-combination of the generators"),
                        })
                    }
                }
            }
        }
        Ok(GenerationCertificate { generators: gens.to_vec(), degree_bound: bound, witnesses })
    }

    /// A T-combination of `gens` equal to `target` in which every product
    /// `c_j·g_j` has degree at most `bound`, or `None`.
    pub fn ideal_membership_bounded(
        &self,
        target: &CompositeElement,
        gens: &[CompositeElement],
        bound: usize,
    ) -> Result<Option<Witness>> {
        let limits: Vec<Option<usize>> = gens.iter().map(|g| bound.checked_sub(g.poly.deg())).collect();
        // generators that cannot appear within the bound get a zero coefficient
        let usable: Vec<usize> = (0..gens.len()).filter(|&j| limits[j].is_some() && !gens[j].poly.is_zero()).collect();
        let sub: Vec<CompositeElement> = usable.iter().map(|&j| gens[j].clone()).collect();
        let sub_limits: Vec<usize> = usable.iter().map(|&j| limits[j].unwrap()).collect();
        if target.poly.degree().is_some_and(|d| d > bound) {
            return Ok(None);
        }
        let Some(coeffs) = self.solve_combination(&target.poly, &sub, &sub_limits)? else {
            return Ok(None);
        };
        let l = self.upper()?;
        let mut full = vec![Poly::zero(l); gens.len()];
        for (slot, c) in usable.iter().zip(coeffs) {
            full[*slot] = c;
        }
        Ok(Some(Witness { target: target.poly.clone(), coefficients: full }))
    }

    /// Solves `Σ c_j·g_j = target` over K, where `c_j ∈ T` has degree at
    /// most `limits[j]`: one unknown for each constant term (in K) and n
    /// for every higher coefficient (in L).
    fn solve_combination(&self, target: &Poly, gens: &[CompositeElement], limits: &[usize]) -> Result<Option<Vec<Poly>>> {
        let l = self.upper()?;
        let k = self.ext.lower();
        let basis = l.basis_over(k);
        let n = basis.len();
        let top = gens
            .iter()
            .zip(limits)
            .map(|(g, lim)| g.poly.degree().unwrap_or(0) + lim)
            .chain(std::iter::once(target.degree().unwrap_or(0)))
            .max()
            .unwrap_or(0);
        let rows = (top + 1) * n;
        let coords_of = |p: &Poly| -> Vec<Value> {
            (0..=top).flat_map(|i| l.coords_over(&p.coeff(i), k)).collect()
        };
        // (generator, degree, basis index or None for the K-constant)
        let mut unknowns: Vec<(usize, usize, Option<usize>)> = Vec::new();
        let mut columns: Vec<Vec<Value>> = Vec::new();
        for (j, g) in gens.iter().enumerate() {
            unknowns.push((j, 0, None));
            columns.push(coords_of(&g.poly));
            for d in 1..=limits[j] {
                for (bi, b) in basis.iter().enumerate() {
                    unknowns.push((j, d, Some(bi)));
                    columns.push(coords_of(&g.poly.mul(&Poly::monomial(l, b.clone(), d))));
                }
            }
        }
        let m = linalg::from_columns(k, &columns, rows);
        let rhs = coords_of(target);
        let Some(sol) = linalg::solve(k, &m, &rhs, columns.len()) else {
            return Ok(None);
        };
        let mut coeffs: Vec<Vec<Value>> = gens.iter().zip(limits).map(|(_, lim)| vec![l.zero(); lim + 1]).collect();
        for ((j, d, bi), x) in unknowns.iter().zip(&sol) {
            let v = match bi {
                None => l.embed_unchecked(x, k),
                Some(i) => l.mul(&l.embed_unchecked(x, k), &basis[*i]),
            };
            coeffs[*j][*d] = l.add(&coeffs[*j][*d], &v);
        }
        let polys: Vec<Poly> = coeffs.into_iter().map(|c| Poly::from_coeffs(l, c)).collect();
        let expanded = polys.iter().zip(gens).fold(Poly::zero(l), |acc, (c, g)| acc.add(&c.mul(&g.poly)));
        if &expanded != target {
            return Err(Error::internal("witness does not expand to its target"));
        }
        for c in &polys {
            if !self.contains(c)? {
                return Err(Error::internal("witness coefficient outside the composite ring"));
            }
        }
        Ok(Some(polys))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::towers::make_extension;

    fn sqrt2_ring() -> (CompositeRing, Field) {
        let q = Field::rationals();
        let e = make_extension(&q, &Poly::from_ints(&q, &[-2, 0, 1]), false).unwrap();
        let l = e.upper().unwrap().clone();
        (CompositeRing::new(&e), l)
    }

    #[test]
    fn membership() {
        let (t, l) = sqrt2_ring();
        let a = l.generator().unwrap();
        assert!(t.contains(&Poly::from_coeffs(&l, vec![l.from_i64(3), a.clone()])).unwrap());
        assert!(!t.contains(&Poly::from_coeffs(&l, vec![a, l.one()])).unwrap());
        assert!(t.contains(&Poly::zero(&l)).unwrap());
    }

    #[test]
    fn product_example() {
        let (t, l) = sqrt2_ring();
        let a = l.generator().unwrap();
        let x = t.element(Poly::from_coeffs(&l, vec![l.one(), a.clone()])).unwrap();
        let y = t.element(Poly::from_coeffs(&l, vec![l.from_i64(2), l.one()])).unwrap();
        let expected = Poly::from_coeffs(&l, vec![l.from_i64(2), l.add(&l.one(), &l.scale_int(2, &a)), a]);
        assert_eq!(t.mul(&x, &y).unwrap().poly(), &expected);
    }

    #[test]
    fn xl_generators_and_certificate() {
        let (t, l) = sqrt2_ring();
        let gens = t.xl_ideal_generators().unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[1].poly().to_string(), "a*x");
        let cert = t.certify_generation(&gens, 6).unwrap();
        assert_eq!(cert.witnesses.len(), 12);
        // {X} alone does not reach √2·X
        let err = t.certify_generation(&gens[..1], 3).unwrap_err();
        assert!(matches!(err, Error::NotGenerated { .. }));
        let _ = l;
    }

    #[test]
    fn bounded_membership() {
        let (t, l) = sqrt2_ring();
        let gens = t.xl_ideal_generators().unwrap();
        let one = t.element(Poly::one(&l)).unwrap();
        assert!(t.ideal_membership_bounded(&one, &gens, 6).unwrap().is_none());
        let a = l.generator().unwrap();
        let target = t.element(Poly::monomial(&l, l.add(&l.one(), &a), 2)).unwrap();
        let w = t.ideal_membership_bounded(&target, &gens, 2).unwrap().unwrap();
        assert_eq!(w.coefficients.len(), 2);
    }
}
