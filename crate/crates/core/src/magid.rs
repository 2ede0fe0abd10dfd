//! Finite-dimensional commutative algebras `M ⊗_K L ≅ M[x]/(f)` and the
//! separability criteria on them: no nonzero nilpotents, every element a
//! unit times an idempotent, generation by idempotents.
//!
//! `M` is the splitting field of `f` over L rather than an algebraically
//! closed field; once `f` splits, nilpotents and idempotent counts of
//! `M[x]/(f)` no longer change.

use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{self, Flag};
use crate::error::{Error, Result};
use crate::exactfields::{frobenius, Field, Value};
use crate::linalg;
use crate::towers::{self, Extension};
use crate::unipoly::{factor_in, Poly};

pub const SURROGATE_NOTE: &str = "M = splitting field surrogate";
/// Algebras with at most this many elements are checked exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 16;
pub const RANDOM_SAMPLES: usize = 1000;

/// Basis, structure constants and identity of a commutative algebra over
/// `base`. When built from `M[x]/(f)` the presentation is kept for the
/// CRT-based operations.
#[derive(Clone, Debug)]
pub struct FiniteCommAlgebra {
    base: Field,
    dim: usize,
    labels: Vec<String>,
    /// `constants[i][j]` holds the coordinates of `e_i · e_j`.
    constants: Vec<Vec<Vec<Value>>>,
    one: Vec<Value>,
    presentation: Option<Poly>,
    split: OnceLock<Result<Split>>,
}

#[derive(Clone, Debug)]
struct Split {
    blocks: Vec<Block>,
    idempotents: Vec<Vec<Value>>,
}

/// One CRT block `g^m` of `f = Π g_i^{m_i}` over M.
#[derive(Clone, Debug)]
struct Block {
    factor: Poly,
    multiplicity: usize,
    power: Poly,
}

impl FiniteCommAlgebra {
    /// Checks commutativity, associativity on all basis triples, and that
    /// `one` is an identity.
    pub fn new(base: &Field, labels: Vec<String>, constants: Vec<Vec<Vec<Value>>>, one: Vec<Value>) -> Result<Self> {
        let alg = FiniteCommAlgebra { base: base.clone(), dim: labels.len(), labels, constants, one, presentation: None, split: OnceLock::new() };
        alg.check_axioms()?;
        Ok(alg)
    }

    /// `base[x]/(f)` with monomial basis `1, x, …, x^{n−1}`.
    pub fn quotient(f: &Poly) -> Result<Self> {
        let m = f.field();
        let f = f.monic();
        let n = f.deg();
        if n == 0 {
            return Err(Error::domain("quotient by a constant"));
        }
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        let coords = |p: &Poly| -> Vec<Value> { (0..n).map(|i| p.coeff(i)).collect() };
        let mut constants = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                constants[i][j] = coords(&Poly::monomial(m, m.one(), i + j).rem(&f)?);
            }
        }
        let mut one = vec![m.zero(); n];
        one[0] = m.one();
        let alg = FiniteCommAlgebra { base: m.clone(), dim: n, labels, constants, one, presentation: Some(f), split: OnceLock::new() };
        alg.check_axioms()?;
        Ok(alg)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.dim;
        let unit = |i: usize| {
            let mut v = vec![self.base.zero(); n];
            v[i] = self.base.one();
            v
        };
        for i in 0..n {
            for j in 0..n {
                if self.constants[i][j] != self.constants[j][i] {
                    return Err(Error::Construction(format!("structure constants not commutative at ({i}, {j})")));
                }
                for k in 0..n {
                    let left = self.mul(&self.constants[i][j], &unit(k));
                    let right = self.mul(&unit(i), &self.constants[j][k]);
                    if left != right {
                        return Err(Error::Construction(format!("not associative on ({i}, {j}, {k})")));
                    }
                }
            }
            if self.mul(&self.one, &unit(i)) != unit(i) {
                return Err(Error::Construction("identity is not two-sided".into()));
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn one(&self) -> &[Value] {
        &self.one
    }

    pub fn presentation(&self) -> Option<&Poly> {
        self.presentation.as_ref()
    }

    pub fn zero(&self) -> Vec<Value> {
        vec![self.base.zero(); self.dim]
    }

    pub fn is_zero(&self, a: &[Value]) -> bool {
        a.iter().all(|c| self.base.is_zero(c))
    }

    pub fn add(&self, a: &[Value], b: &[Value]) -> Vec<Value> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[Value], b: &[Value]) -> Vec<Value> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }

    pub fn mul(&self, a: &[Value], b: &[Value]) -> Vec<Value> {
        let f = &self.base;
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                let xy = f.mul(x, y);
                for (o, c) in out.iter_mut().zip(&self.constants[i][j]) {
                    if !f.is_zero(c) {
                        *o = f.add(o, &f.mul(&xy, c));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[Value], mut e: u64) -> Vec<Value> {
        let mut acc = self.one.clone();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn basis_vector(&self, i: usize) -> Vec<Value> {
        let mut v = self.zero();
        v[i] = self.base.one();
        v
    }

    fn as_poly(&self, a: &[Value]) -> Poly {
        Poly::from_coeffs(&self.base, a.to_vec())
    }

    fn from_poly(&self, p: &Poly) -> Vec<Value> {
        (0..self.dim).map(|i| p.coeff(i)).collect()
    }

    pub fn format(&self, a: &[Value]) -> String {
        match &self.presentation {
            Some(_) => self.as_poly(a).to_string(),
            None => {
                let terms: Vec<String> = a
                    .iter()
                    .zip(&self.labels)
                    .filter(|(c, _)| !self.base.is_zero(c))
                    .map(|(c, l)| format!("({})*{l}", self.base.format(c)))
                    .collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join(" + ")
                }
            }
        }
    }

    /// Basis of the nilradical. Characteristic 0: kernel of the trace form.
    /// Characteristic p: kernel of the Frobenius-semilinear map `a ↦ a^q`
    /// with `q = p^k ≥ dim`, which kills exactly the nilpotents.
    pub fn nilradical(&self) -> Vec<Vec<Value>> {
        let f = &self.base;
        let n = self.dim;
        let p = f.characteristic();
        if p == 0 {
            let trace = |a: &[Value]| -> Value {
                (0..n).fold(f.zero(), |acc, j| f.add(&acc, &self.mul(a, &self.basis_vector(j))[j]))
            };
            let form: linalg::Matrix = (0..n)
                .map(|i| (0..n).map(|j| trace(&self.constants[i][j])).collect())
                .collect();
            return linalg::kernel(f, &form, n);
        }
        let mut q = 1usize;
        while q < n {
            q *= p as usize;
        }
        if q == 1 {
            q = p as usize;
        }
        let powered: Vec<Vec<Value>> = (0..n).map(|i| self.pow(&self.basis_vector(i), q as u64)).collect();
        let rows: Vec<Vec<Value>> = (0..n).map(|r| (0..n).map(|i| powered[i][r].clone()).collect()).collect();
        frobenius::frobenius_kernel(f, &rows, n, q)
    }

    fn split(&self) -> Result<&Split> {
        self.split.get_or_init(|| self.compute_split()).as_ref().map_err(Clone::clone)
    }

    fn compute_split(&self) -> Result<Split> {
        let f = self
            .presentation
            .as_ref()
            .ok_or_else(|| Error::capability("idempotent decomposition needs a presentation M[x]/(f)"))?;
        let fac = factor_in(&self.base, f)?;
        let mut blocks = Vec::new();
        let mut idempotents = Vec::new();
        for (g, m) in fac.factors {
            let power = g.pow(m as u64);
            let cofactor = f.exact_div(&power)?;
            let (d, s, _) = cofactor.ext_gcd(&power)?;
            if d.deg() != 0 {
                return Err(Error::internal("CRT blocks are not coprime"));
            }
            idempotents.push(self.from_poly(&cofactor.mul(&s).rem(f)?));
            blocks.push(Block { factor: g, multiplicity: m, power });
        }
        Ok(Split { blocks, idempotents })
    }

    fn blocks(&self) -> Result<Vec<Block>> {
        Ok(self.split()?.blocks.clone())
    }

    /// Primitive orthogonal idempotents, one per CRT block of `f`.
    pub fn idempotents(&self) -> Result<Vec<Vec<Value>>> {
        Ok(self.split()?.idempotents.clone())
    }

    /// `a = u·e` with `u` a unit and `e` idempotent, or `None` when some
    /// block component of `a` is a nonzero non-unit.
    pub fn unit_times_idempotent(&self, a: &[Value]) -> Result<Option<(Vec<Value>, Vec<Value>)>> {
        let split = self.split()?;
        let pa = self.as_poly(a);
        let mut u = self.zero();
        let mut e = self.zero();
        for (b, ei) in split.blocks.iter().zip(&split.idempotents) {
            let comp = pa.rem(&b.power)?;
            if comp.is_zero() {
                u = self.add(&u, ei);
            } else if comp.rem(&b.factor)?.is_zero() {
                return Ok(None);
            } else {
                u = self.add(&u, &self.mul(a, ei));
                e = self.add(&e, ei);
            }
        }
        Ok(Some((u, e)))
    }

    /// With a presentation, `a` is a unit iff it is nonzero modulo every
    /// irreducible factor of `f`.
    pub fn is_unit(&self, a: &[Value]) -> Result<bool> {
        if self.presentation.is_some() {
            let pa = self.as_poly(a);
            for b in &self.split()?.blocks {
                if pa.rem(&b.factor)?.is_zero() {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        let cols: Vec<Vec<Value>> = (0..self.dim).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        Ok(linalg::rank(&self.base, &cols) == self.dim)
    }
}

/// `M ⊗_K L` for `L = K[x]/(f)` simple over K, as `M[x]/(f)` with `M` the
/// splitting field of `f` over L (or `m` when supplied, which must split
/// `f`).
pub fn tensor_algebra(ext: &Extension, m: Option<&Field>) -> Result<(FiniteCommAlgebra, Field, Poly)> {
    let f = defining_polynomial(ext)?;
    let l = ext.upper()?;
    let m = match m {
        Some(m) => {
            let fac = factor_in(m, &f)?;
            if fac.factors.iter().any(|(g, _)| g.deg() > 1) {
                return Err(Error::capability(format!("{f} does not split over {}", m.describe())));
            }
            m.clone()
        }
        None => towers::splitting_field(&f, l)?,
    };
    let alg = FiniteCommAlgebra::quotient(&f.embed_into(&m)?)?;
    Ok((alg, m, f))
}

/// `f` with `L ≅ K[x]/(f)`: the top modulus for one level, otherwise the
/// minimal polynomial of a primitive element.
fn defining_polynomial(ext: &Extension) -> Result<Poly> {
    let l = ext.upper()?;
    let k = ext.lower();
    match l.levels_above(k).len() {
        0 => Ok(Poly::from_coeffs(k, vec![k.neg(&k.one()), k.one()])),
        1 => Ok(Poly::from_coeffs(k, l.modulus().unwrap().to_vec())),
        _ => Ok(towers::primitive_element(ext)?.minpoly),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MagidReport {
    pub defining_polynomial: String,
    pub m_field: String,
    pub dimension: usize,
    /// (a) L separable over K.
    pub separable: Flag,
    /// (b) no nonzero nilpotents.
    pub reduced: bool,
    /// (c) every element is a unit times an idempotent.
    pub unit_times_idempotent: bool,
    /// (d) generated by idempotents as an M-algebra.
    pub idempotent_generated: bool,
    pub nilradical_dim: usize,
    pub nilradical_basis: Vec<String>,
    pub idempotents: Vec<String>,
    pub c_method: String,
    pub c_elements_checked: usize,
    pub c_counterexample: Option<String>,
    pub notes: Vec<String>,
}

/// Evaluates (b), (c), (d) on `M ⊗_K L` and checks them against the
/// separability verdict (a). Disagreement is an internal error.
pub fn magid_check(ext: &Extension, seed: u64) -> Result<MagidReport> {
    let r = evaluate(ext, seed)?;
    if let Some(s) = r.separable.known() {
        if r.reduced != s || r.unit_times_idempotent != s || r.idempotent_generated != s {
            return Err(Error::internal(format!(
                "Magid conditions disagree: (a) {s}, (b) {}, (c) {}, (d) {}",
                r.reduced, r.unit_times_idempotent, r.idempotent_generated
            )));
        }
    }
    Ok(r)
}

/// Conditions (a)–(d) without the agreement assertion.
pub fn evaluate(ext: &Extension, seed: u64) -> Result<MagidReport> {
    let separable = match classify::is_separable(ext) {
        Ok(b) => Flag::from(b),
        Err(e) if e.is_capability() => Flag::Unknown,
        Err(e) => return Err(e),
    };
    let (alg, m, f) = tensor_algebra(ext, None)?;
    let nil = alg.nilradical();
    let blocks = alg.blocks()?;
    let expected_nil: usize = blocks.iter().map(|b| (b.multiplicity - 1) * b.factor.deg()).sum();
    if expected_nil != nil.len() {
        return Err(Error::internal(format!(
            "nilradical dimension {} disagrees with the factorization count {expected_nil}",
            nil.len()
        )));
    }
    let idem = alg.idempotents()?;
    check_idempotents(&alg, &idem)?;
    let reduced = nil.is_empty();

    let (c_ok, c_method, checked, counterexample) = check_condition_c(&alg, &blocks, seed)?;
    let d_ok = linalg::rank(&m, &idem) == alg.dim();

    Ok(MagidReport {
        defining_polynomial: f.to_string(),
        m_field: m.describe(),
        dimension: alg.dim(),
        separable,
        reduced,
        unit_times_idempotent: c_ok,
        idempotent_generated: d_ok,
        nilradical_dim: nil.len(),
        nilradical_basis: nil.iter().map(|v| alg.format(v)).collect(),
        idempotents: idem.iter().map(|v| alg.format(v)).collect(),
        c_method,
        c_elements_checked: checked,
        c_counterexample: counterexample,
        notes: vec![SURROGATE_NOTE.to_string()],
    })
}

fn check_idempotents(alg: &FiniteCommAlgebra, idem: &[Vec<Value>]) -> Result<()> {
    let mut sum = alg.zero();
    for (i, e) in idem.iter().enumerate() {
        if alg.mul(e, e) != *e {
            return Err(Error::internal("CRT interpolant is not idempotent"));
        }
        for other in &idem[i + 1..] {
            if !alg.is_zero(&alg.mul(e, other)) {
                return Err(Error::internal("idempotents are not orthogonal"));
            }
        }
        sum = alg.add(&sum, e);
    }
    if sum != alg.one() {
        return Err(Error::internal("idempotents do not sum to one"));
    }
    Ok(())
}

fn check_condition_c(
    alg: &FiniteCommAlgebra,
    blocks: &[Block],
    seed: u64,
) -> Result<(bool, String, usize, Option<String>)> {
    let m = alg.base();
    let total = m.order().and_then(|q| num_traits::ToPrimitive::to_u64(&num_traits::Pow::pow(q, alg.dim() as u32)));
    let candidates: Box<dyn Iterator<Item = Vec<Value>>> = match total {
        Some(t) if t <= EXHAUSTIVE_LIMIT => {
            let elems = m.elements(EXHAUSTIVE_LIMIT).unwrap();
            let q = elems.len() as u64;
            let dim = alg.dim();
            Box::new((0..t).map(move |mut idx| {
                (0..dim)
                    .map(|_| {
                        let c = elems[(idx % q) as usize].clone();
                        idx /= q;
                        c
                    })
                    .collect()
            }))
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut v: Vec<Vec<Value>> = (0..RANDOM_SAMPLES).map(|_| (0..alg.dim()).map(|_| m.random(&mut rng)).collect()).collect();
            // multiples of each irreducible factor reach the non-unit part
            // of every block, where random elements almost never land
            let f = alg.presentation().unwrap();
            for b in blocks {
                for _ in 0..RANDOM_SAMPLES / 10 {
                    let r = Poly::from_coeffs(m, (0..alg.dim()).map(|_| m.random(&mut rng)).collect());
                    v.push(alg.from_poly(&r.mul(&b.factor).rem(f)?));
                }
            }
            Box::new(v.into_iter())
        }
    };
    let method = match total {
        Some(t) if t <= EXHAUSTIVE_LIMIT => "exhaustive",
        _ => "sampled",
    };
    let mut checked = 0;
    for a in candidates {
        checked += 1;
        match alg.unit_times_idempotent(&a)? {
            Some((u, e)) => {
                if alg.mul(&u, &e) != a || alg.mul(&e, &e) != e || !alg.is_unit(&u)? {
                    return Err(Error::internal("unit-times-idempotent decomposition fails verification"));
                }
            }
            None => return Ok((false, method.to_string(), checked, Some(alg.format(&a)))),
        }
    }
    Ok((true, method.to_string(), checked, None))
}
