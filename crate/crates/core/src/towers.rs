//! Extensions and towers: construction, minimal polynomials, primitive
//! elements, embeddings, automorphism groups, fixed fields and splitting
//! fields.
//!
//! Embeddings are stored by the images of the tower generators above the
//! base. Extending a partial map one level at a time, by sending the next
//! generator to each root of its mapped defining polynomial, is exactly the
//! embedding-extension argument for simple algebraic extensions.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactfields::{BaseField, Field, Value};
use crate::linalg;
use crate::unipoly::{factor_in, rational_roots, roots_in, Poly};

const SAMPLE_SEED: u64 = 0x7011_e75;
const MULTIPLICATIVITY_SAMPLES: usize = 8;
/// Coefficient tuples enumerated when searching finite fields exhaustively.
const ENUMERATION_CAP: u64 = 1 << 16;

// ---- extensions ----

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InfiniteKind {
    Algebraic,
    Transcendental,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Finite(usize),
    Infinite,
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::Finite(n) => Some(n),
            Degree::Infinite => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(n) => write!(f, "{n}"),
            Degree::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Degree::Finite(n) => s.serialize_u64(*n as u64),
            Degree::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// `K ⊂ L`, either a concrete tower or an infinite-degree marker that only
/// supports classification queries.
#[derive(Clone, Debug)]
pub struct Extension {
    lower: Field,
    upper: Option<Field>,
    infinite: Option<InfiniteKind>,
}

impl Extension {
    pub fn new(lower: &Field, upper: &Field) -> Result<Self> {
        if !upper.extends(lower) {
            return Err(Error::domain(format!("{} does not extend {}", upper.describe(), lower.describe())));
        }
        Ok(Extension { lower: lower.clone(), upper: Some(upper.clone()), infinite: None })
    }

    /// An extension of infinite degree, annotated as algebraic or not.
    pub fn infinite(lower: &Field, kind: InfiniteKind) -> Self {
        Extension { lower: lower.clone(), upper: None, infinite: Some(kind) }
    }

    pub fn lower(&self) -> &Field {
        &self.lower
    }

    pub fn upper(&self) -> Result<&Field> {
        self.upper.as_ref().ok_or_else(|| Error::capability("extension of infinite degree has no element arithmetic"))
    }

    pub fn infinite_kind(&self) -> Option<InfiniteKind> {
        self.infinite
    }

    pub fn degree(&self) -> Degree {
        match &self.upper {
            Some(u) => Degree::Finite(u.degree_over(&self.lower).unwrap()),
            None => Degree::Infinite,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.upper.is_some()
    }

    pub fn describe(&self) -> String {
        match (&self.upper, self.infinite) {
            (Some(u), _) => format!("{} / {}", u.describe(), self.lower.describe()),
            (None, Some(InfiniteKind::Algebraic)) => format!("algebraic closure of {}", self.lower.describe()),
            (None, _) => format!("transcendental extension of {}", self.lower.describe()),
        }
    }
}

/// Adjoins a root of `f` to `k`, checking irreducibility where the base
/// permits. Over 𝔽_p(t) towers an undecidable case is accepted only with
/// `trusted`; a factor that is actually found is always rejected.
pub fn adjoin(k: &Field, f: &Poly, trusted: bool) -> Result<Field> {
    if f.field() != k {
        return Err(Error::domain("defining polynomial lives over a different field"));
    }
    if f.is_zero() || f.deg() < 2 {
        return Err(Error::Construction(format!("defining polynomial {f} must have degree at least 2")));
    }
    let f = f.monic();
    let verdict = match k.base() {
        BaseField::RationalFunctions(_) if k.depth() == 0 && f.deg() <= 3 => {
            if rational_roots(&f)?.is_empty() {
                Ok(true)
            } else {
                Ok(false)
            }
        }
        _ => factor_in(k, &f).map(|fac| fac.is_irreducible()),
    };
    match verdict {
        Ok(true) => Ok(Field::extension_unchecked(k, f.into_coeffs(), false)),
        Ok(false) => Err(Error::Construction(format!("{f} is reducible over {}", k.describe()))),
        Err(e) if e.is_capability() && trusted => Ok(Field::extension_unchecked(k, f.into_coeffs(), true)),
        Err(e) if e.is_capability() => Err(Error::capability(format!(
            "irreducibility of {f} over {} cannot be verified; pass it as trusted to proceed",
            k.describe()
        ))),
        Err(e) => Err(e),
    }
}

/// `K ⊂ K[x]/(f)`.
pub fn make_extension(k: &Field, f: &Poly, trusted: bool) -> Result<Extension> {
    let l = adjoin(k, f, trusted)?;
    Extension::new(k, &l)
}

// ---- minimal polynomials and primitive elements ----

/// Minimal polynomial of `a ∈ field` over the ancestor `lower`, from the
/// first linear dependence among `1, a, a², …`.
pub fn min_poly(field: &Field, a: &Value, lower: &Field) -> Result<Poly> {
    let n = field
        .degree_over(lower)
        .ok_or_else(|| Error::domain(format!("{} is not below {}", lower.describe(), field.describe())))?;
    let mut cols: Vec<Vec<Value>> = Vec::new();
    let mut power = field.one();
    for k in 0..=n {
        let coords = field.coords_over(&power, lower);
        if k > 0 {
            let m = linalg::from_columns(lower, &cols, n);
            if let Some(sol) = linalg::solve(lower, &m, &coords, cols.len()) {
                let mut cs: Vec<Value> = sol.iter().map(|c| lower.neg(c)).collect();
                cs.push(lower.one());
                return Ok(Poly::from_coeffs(lower, cs));
            }
        }
        cols.push(coords);
        power = field.mul(&power, a);
    }
    Err(Error::internal("no linear dependence among n+1 powers"))
}

/// `γ` with `K(γ) = L`, its minimal polynomial, and every tower generator
/// written as a polynomial in `γ`.
#[derive(Clone, Debug)]
pub struct PrimitiveElement {
    pub gamma: Value,
    pub minpoly: Poly,
    /// The `c` of `γ = α₁ + c·α₂ + c²·α₃ + …` when found by the scan.
    pub shift: Option<u64>,
    pub generator_coords: Vec<Poly>,
}

/// Primitive element over the base field of a tower, cached on the field.
#[derive(Debug)]
pub struct FlatModel {
    pub gamma: Value,
    pub minpoly: Poly,
}

pub(crate) fn flat_model(field: &Field) -> Result<Arc<FlatModel>> {
    field
        .data()
        .flat
        .get_or_init(|| {
            let k = field.base_field();
            let (gamma, minpoly, _) = find_primitive(field, &k)?;
            Ok(Arc::new(FlatModel { gamma, minpoly }))
        })
        .clone()
}

pub fn primitive_element(ext: &Extension) -> Result<PrimitiveElement> {
    let l = ext.upper()?;
    let k = ext.lower();
    for g in l.generators_over(k) {
        let m = min_poly(l, &g, k)?;
        if !m.is_squarefree()? {
            return Err(Error::capability(format!(
                "generator with minimal polynomial {m} is inseparable; no primitive element guarantee"
            )));
        }
    }
    let (gamma, minpoly, shift) = find_primitive(l, k)?;
    let n = minpoly.deg();
    let powers: Vec<Vec<Value>> = {
        let mut out = Vec::with_capacity(n);
        let mut p = l.one();
        for _ in 0..n {
            out.push(l.coords_over(&p, k));
            p = l.mul(&p, &gamma);
        }
        out
    };
    let m = linalg::from_columns(k, &powers, n);
    let mut generator_coords = Vec::new();
    for g in l.generators_over(k) {
        let sol = linalg::solve(k, &m, &l.coords_over(&g, k), n)
            .ok_or_else(|| Error::internal("generator outside the span of powers of the primitive element"))?;
        generator_coords.push(Poly::from_coeffs(k, sol));
    }
    Ok(PrimitiveElement { gamma, minpoly, shift, generator_coords })
}

fn find_primitive(l: &Field, k: &Field) -> Result<(Value, Poly, Option<u64>)> {
    let n = l.degree_over(k).unwrap();
    let gens = l.generators_over(k);
    if gens.is_empty() {
        return Ok((l.one(), Poly::from_coeffs(k, vec![k.neg(&k.one()), k.one()]), Some(0)));
    }
    let bound = 2 * n * n;
    let p = l.characteristic();
    let distinct = if p == 0 { bound as u64 } else { p.min(bound as u64 + 1) };
    for c in 0..=distinct.min(bound as u64) {
        let mut gamma = l.zero();
        let mut coef = l.one();
        let cv = l.from_i64(c as i64);
        for g in &gens {
            gamma = l.add(&gamma, &l.mul(&coef, g));
            coef = l.mul(&coef, &cv);
        }
        let m = min_poly(l, &gamma, k)?;
        if m.deg() == n {
            return Ok((gamma, m, Some(c)));
        }
    }
    if let Some(elems) = l.elements(ENUMERATION_CAP) {
        for v in elems {
            let m = min_poly(l, &v, k)?;
            if m.deg() == n {
                return Ok((v, m, None));
            }
        }
    }
    Err(Error::internal(format!("no primitive element of the form α₁ + c·α₂ + … with c ≤ {bound}")))
}

// ---- embeddings ----

/// A ring map `source → target` fixing the common subfield `base`, given
/// by the images of `source`'s generators above `base`.
#[derive(Clone, PartialEq, Eq)]
pub struct Embedding {
    source: Field,
    base: Field,
    target: Field,
    images: Vec<Value>,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Embedding[{}]", self.describe())
    }
}

impl Embedding {
    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn images(&self) -> &[Value] {
        &self.images
    }

    pub fn apply(&self, v: &Value) -> Value {
        self.apply_at(&self.source, v)
    }

    fn apply_at(&self, level: &Field, v: &Value) -> Value {
        if level.depth() == self.base.depth() {
            return self.target.embed_unchecked(v, &self.base);
        }
        let parent = level.parent().unwrap();
        let img = &self.images[level.depth() - self.base.depth() - 1];
        let Value::Ext(cs) = v else { unreachable!() };
        let mut acc = self.target.zero();
        for c in cs.iter().rev() {
            acc = self.target.add(&self.target.mul(&acc, img), &self.apply_at(parent, c));
        }
        acc
    }

    /// Image of an arbitrary element used as a generator, such as a
    /// primitive element.
    pub fn generator_image(&self, gamma: &Value) -> Value {
        self.apply(gamma)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Embedding) -> Result<Embedding> {
        if inner.target != self.source || inner.base != self.base {
            return Err(Error::domain("embeddings do not compose"));
        }
        Ok(Embedding {
            source: inner.source.clone(),
            base: self.base.clone(),
            target: self.target.clone(),
            images: inner.images.iter().map(|v| self.apply(v)).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.images == self.source.generators_over(&self.base)
    }

    pub fn describe(&self) -> String {
        let gens: Vec<String> = self
            .source
            .levels_above(&self.base)
            .iter()
            .zip(&self.images)
            .map(|(lvl, img)| format!("{} -> {}", lvl.symbol().unwrap(), self.target.format(img)))
            .collect();
        if gens.is_empty() {
            "id".to_string()
        } else {
            gens.join(", ")
        }
    }

    fn check_multiplicative(&self) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        for _ in 0..MULTIPLICATIVITY_SAMPLES {
            let a = self.source.random(&mut rng);
            let b = self.source.random(&mut rng);
            let lhs = self.apply(&self.source.mul(&a, &b));
            let rhs = self.target.mul(&self.apply(&a), &self.apply(&b));
            if lhs != rhs {
                return Err(Error::internal(format!("embedding {} is not multiplicative", self.describe())));
            }
        }
        Ok(())
    }
}

/// All `base`-embeddings of `source` into `target`.
pub fn embeddings(source: &Field, target: &Field, base: &Field) -> Result<Vec<Embedding>> {
    if !source.extends(base) || !target.extends(base) {
        return Err(Error::domain("both fields must extend the common base"));
    }
    let mut partial: Vec<Vec<Value>> = vec![Vec::new()];
    let levels = source.levels_above(base);
    for lvl in &levels {
        let parent = lvl.parent().unwrap();
        let mut next = Vec::new();
        for images in &partial {
            let phi = Embedding { source: parent.clone(), base: base.clone(), target: target.clone(), images: images.clone() };
            let mapped = Poly::from_coeffs(target, lvl.modulus().unwrap().iter().map(|c| phi.apply(c)).collect());
            for r in roots_in(&mapped, target)? {
                let mut imgs = images.clone();
                imgs.push(r);
                next.push(imgs);
            }
        }
        partial = next;
    }
    let out: Vec<Embedding> = partial
        .into_iter()
        .map(|images| Embedding { source: source.clone(), base: base.clone(), target: target.clone(), images })
        .collect();
    for e in &out {
        e.check_multiplicative()?;
    }
    Ok(out)
}

// ---- automorphism groups ----

#[derive(Clone, Debug)]
pub struct GroupTable {
    pub elements: Vec<Embedding>,
    /// `table[i][j]` is the index of `elements[i] ∘ elements[j]`.
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl GroupTable {
    pub fn from_elements(elements: Vec<Embedding>) -> Result<Self> {
        let n = elements.len();
        let identity = elements
            .iter()
            .position(Embedding::is_identity)
            .ok_or_else(|| Error::internal("automorphism list lacks the identity"))?;
        let mut table = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let c = elements[i].compose(&elements[j])?;
                table[i][j] = elements
                    .iter()
                    .position(|e| e.images == c.images)
                    .ok_or_else(|| Error::internal("automorphisms not closed under composition"))?;
            }
        }
        for row in &table {
            if !row.contains(&identity) {
                return Err(Error::internal("automorphism without inverse"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::internal("composition table is not associative"));
                    }
                }
            }
        }
        Ok(GroupTable { elements, table, identity })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut cur = i;
        while cur != self.identity {
            cur = self.table[i][cur];
            k += 1;
        }
        k
    }

    /// Sorted multiset of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order()).map(|i| self.element_order(i)).collect();
        v.sort_unstable();
        v
    }

    /// Name from the order and the element-order multiset; enough to
    /// separate all groups of order at most 12.
    pub fn identify(&self) -> String {
        let n = self.order();
        let prof = self.order_profile();
        let count = |k: usize| prof.iter().filter(|&&o| o == k).count();
        if prof.contains(&n) {
            return format!("C{n}");
        }
        let name = match n {
            4 => "V4",
            6 => "S3",
            8 if count(4) == 6 => "Q8",
            8 if count(4) == 2 && count(2) == 5 => "D4",
            8 if count(4) == 4 => "C2xC4",
            8 if count(2) == 7 => "C2^3",
            9 => "C3xC3",
            10 => "D5",
            12 if count(3) == 8 => "A4",
            12 if count(2) == 7 => "D6",
            12 if count(6) == 6 => "C2xC6",
            12 if count(4) == 6 => "Dic3",
            _ => "unidentified",
        };
        name.to_string()
    }

    /// Indices of the subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut sub = vec![self.identity];
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.table[g][x];
                if !sub.contains(&y) {
                    sub.push(y);
                    frontier.push(y);
                }
            }
        }
        sub.sort_unstable();
        sub
    }
}

/// `Aut_K(L)` with a verified composition table.
pub fn automorphisms(ext: &Extension) -> Result<GroupTable> {
    let l = ext.upper()?;
    GroupTable::from_elements(embeddings(l, l, ext.lower())?)
}

// ---- fixed fields ----

#[derive(Clone, Debug)]
pub struct FixedField {
    /// Basis over K of `L^H`, as elements of L.
    pub basis: Vec<Value>,
    pub primitive: Value,
    pub minpoly: Poly,
    pub equals_base: bool,
}

impl FixedField {
    pub fn degree(&self) -> usize {
        self.basis.len()
    }
}

/// `L^H` for the subgroup `H` given by indices into `group`.
pub fn fixed_field(ext: &Extension, group: &GroupTable, subgroup: &[usize]) -> Result<FixedField> {
    let l = ext.upper()?;
    let k = ext.lower();
    let n = l.degree_over(k).unwrap();
    let basis = l.basis_over(k);
    let mut rows: linalg::Matrix = Vec::new();
    for &i in subgroup {
        let sigma = &group.elements[i];
        let cols: Vec<Vec<Value>> = basis
            .iter()
            .enumerate()
            .map(|(j, b)| {
                let mut c = l.coords_over(&sigma.apply(b), k);
                c[j] = k.sub(&c[j], &k.one());
                c
            })
            .collect();
        rows.extend(linalg::from_columns(k, &cols, n));
    }
    let ker = linalg::kernel(k, &rows, n);
    let fixed: Vec<Value> = ker.iter().map(|v| l.from_coords_over(v, k)).collect();
    let d = fixed.len();
    let (primitive, minpoly) = fixed_primitive(l, k, &fixed)?;
    Ok(FixedField { basis: fixed, primitive, minpoly, equals_base: d == 1 })
}

fn fixed_primitive(l: &Field, k: &Field, basis: &[Value]) -> Result<(Value, Poly)> {
    let d = basis.len();
    let combine = |coeffs: &[Value]| {
        basis.iter().zip(coeffs).fold(l.zero(), |acc, (b, c)| l.add(&acc, &l.mul(&l.embed_unchecked(c, k), b)))
    };
    let mut tries: Vec<Vec<Value>> = Vec::new();
    for c in 0..(2 * d * d + 2) as i64 {
        let cv = k.from_i64(c);
        tries.push((0..d).map(|i| k.pow(&cv, i as u64)).collect());
    }
    if let Ok(t) = k.generator() {
        for shift in 0..3 {
            let x = k.add(&t, &k.from_i64(shift));
            tries.push((0..d).map(|i| k.pow(&x, i as u64)).collect());
        }
    }
    for coeffs in &tries {
        let v = combine(coeffs);
        let m = min_poly(l, &v, k)?;
        if m.deg() == d {
            return Ok((v, m));
        }
    }
    if let Some(elems) = k.elements(ENUMERATION_CAP) {
        let q = elems.len();
        let total = (q as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
        if total <= ENUMERATION_CAP {
            for idx in 0..total {
                let mut r = idx;
                let coeffs: Vec<Value> = (0..d)
                    .map(|_| {
                        let c = elems[(r % q as u64) as usize].clone();
                        r /= q as u64;
                        c
                    })
                    .collect();
                let v = combine(&coeffs);
                let m = min_poly(l, &v, k)?;
                if m.deg() == d {
                    return Ok((v, m));
                }
            }
        }
    }
    Err(Error::internal("no primitive element found for the fixed field"))
}

// ---- splitting fields ----

/// A tower over `over` in which `f` splits, built by adjoining one
/// irreducible nonlinear factor at a time.
pub fn splitting_field(f: &Poly, over: &Field) -> Result<Field> {
    let mut m = over.clone();
    loop {
        let fac = factor_in(&m, f)?;
        match fac.factors.iter().find(|(g, _)| g.deg() > 1) {
            None => return Ok(m),
            Some((g, _)) => {
                m = Field::extension_unchecked(&m, g.monic().into_coeffs(), false);
            }
        }
    }
}

/// Splitting field over L of the minimal polynomials over K of L's
/// generators.
pub fn normal_closure(ext: &Extension) -> Result<Field> {
    let l = ext.upper()?;
    let k = ext.lower();
    let mut m = l.clone();
    for g in l.generators_over(k) {
        let mp = min_poly(l, &g, k)?;
        m = splitting_field(&mp, &m)?;
    }
    Ok(m)
}
