//! Exact arithmetic for ℚ, 𝔽_p, 𝔽_p(t) and towers of simple algebraic
//! extensions over them.
//!
//! A [`Field`] is a cheap, shareable descriptor. Raw [`Value`]s carry no
//! reference to their field; all arithmetic goes through the descriptor
//! (`field.mul(&a, &b)`). [`FieldElem`] pairs the two and checks that
//! operands belong to the same field.
//!
//! Extension elements are coordinate vectors over the level directly below,
//! always of full length `d` (the degree of that level's defining
//! polynomial), so equal elements have identical representations.

pub(crate) mod dense;
pub mod fpx;
pub mod frobenius;
mod ratfun;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

pub use ratfun::RatFun;

use crate::error::{Error, Result};

/// A raw field element. Interpret only together with its [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Rational(BigRational),
    Prime(u64),
    RatFun(RatFun),
    Ext(Vec<Value>),
}

/// The bottom of every tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseField {
    Rationals,
    Prime(u64),
    RationalFunctions(u64),
}

impl BaseField {
    pub fn characteristic(self) -> u64 {
        match self {
            BaseField::Rationals => 0,
            BaseField::Prime(p) | BaseField::RationalFunctions(p) => p,
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::Prime(p) => write!(f, "GF({p})"),
            BaseField::RationalFunctions(p) => write!(f, "GF({p})(t)"),
        }
    }
}

pub(crate) struct ExtLevel {
    pub(crate) parent: Field,
    /// Monic, low-to-high, length `degree + 1`.
    pub(crate) modulus: Vec<Value>,
    pub(crate) trusted: bool,
}

pub(crate) struct FieldData {
    base: BaseField,
    ext: Option<ExtLevel>,
    depth: usize,
    abs_degree: usize,
    pub(crate) flat: OnceLock<Result<Arc<crate::towers::FlatModel>>>,
}

/// Descriptor of a base field or of one level of a tower.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.base != other.0.base || self.0.depth != other.0.depth {
            return false;
        }
        match (&self.0.ext, &other.0.ext) {
            (None, None) => true,
            (Some(a), Some(b)) => a.modulus == b.modulus && a.parent == b.parent,
            _ => false,
        }
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.describe())
    }
}

/// Deterministic trial division; desk scale only.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

const MAX_PRIME: u64 = 1 << 31;

fn checked_prime(p: u64) -> Result<u64> {
    if p >= MAX_PRIME {
        return Err(Error::domain(format!("modulus {p} exceeds 2^31")));
    }
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    Ok(p)
}

fn base_field(base: BaseField) -> Field {
    Field(Arc::new(FieldData { base, ext: None, depth: 0, abs_degree: 1, flat: OnceLock::new() }))
}

fn value_is_zero(v: &Value) -> bool {
    match v {
        Value::Rational(r) => r.is_zero(),
        Value::Prime(x) => *x == 0,
        Value::RatFun(r) => r.is_zero(),
        Value::Ext(cs) => cs.iter().all(value_is_zero),
    }
}

fn value_is_one(v: &Value) -> bool {
    match v {
        Value::Rational(r) => r.is_one(),
        Value::Prime(x) => *x == 1,
        Value::RatFun(r) => r.is_one(),
        Value::Ext(cs) => cs.split_first().is_some_and(|(c0, rest)| value_is_one(c0) && rest.iter().all(value_is_zero)),
    }
}

impl Field {
    pub fn rationals() -> Field {
        base_field(BaseField::Rationals)
    }

    pub fn prime(p: u64) -> Result<Field> {
        Ok(base_field(BaseField::Prime(checked_prime(p)?)))
    }

    pub fn rational_functions(p: u64) -> Result<Field> {
        Ok(base_field(BaseField::RationalFunctions(checked_prime(p)?)))
    }

    pub fn from_base(base: BaseField) -> Result<Field> {
        match base {
            BaseField::Rationals => Ok(Field::rationals()),
            BaseField::Prime(p) => Field::prime(p),
            BaseField::RationalFunctions(p) => Field::rational_functions(p),
        }
    }

    /// Adjoins a root of `modulus` (monic, degree ≥ 2, coefficients in
    /// `parent`) without checking irreducibility.
    pub(crate) fn extension_unchecked(parent: &Field, modulus: Vec<Value>, trusted: bool) -> Field {
        debug_assert!(modulus.len() >= 3);
        debug_assert!(parent.is_one(modulus.last().unwrap()));
        let d = modulus.len() - 1;
        Field(Arc::new(FieldData {
            base: parent.0.base,
            depth: parent.0.depth + 1,
            abs_degree: parent.0.abs_degree * d,
            ext: Some(ExtLevel { parent: parent.clone(), modulus, trusted }),
            flat: OnceLock::new(),
        }))
    }

    pub(crate) fn data(&self) -> &FieldData {
        &self.0
    }

    pub fn base(&self) -> BaseField {
        self.0.base
    }

    pub fn base_field(&self) -> Field {
        let mut f = self;
        while let Some(p) = f.parent() {
            f = p;
        }
        f.clone()
    }

    pub fn parent(&self) -> Option<&Field> {
        self.0.ext.as_ref().map(|l| &l.parent)
    }

    /// Defining polynomial of the top level (monic, low-to-high).
    pub fn modulus(&self) -> Option<&[Value]> {
        self.0.ext.as_ref().map(|l| l.modulus.as_slice())
    }

    pub fn is_trusted(&self) -> bool {
        self.0.ext.as_ref().is_some_and(|l| l.trusted)
    }

    /// Number of adjoined levels above the base.
    pub fn depth(&self) -> usize {
        self.0.depth
    }

    /// Degree of the top level over its parent (1 for a base field).
    pub fn local_degree(&self) -> usize {
        self.modulus().map_or(1, |m| m.len() - 1)
    }

    /// Degree over the base field.
    pub fn absolute_degree(&self) -> usize {
        self.0.abs_degree
    }

    pub fn characteristic(&self) -> u64 {
        self.0.base.characteristic()
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.0.base, BaseField::Prime(_))
    }

    /// Number of elements, for finite fields.
    pub fn order(&self) -> Option<BigUint> {
        match self.0.base {
            BaseField::Prime(p) => Some(BigUint::from(p).pow(self.0.abs_degree as u32)),
            _ => None,
        }
    }

    /// Generator symbol of the top level: `a` for the first adjoined
    /// level, `b` for the second, and so on.
    pub fn symbol(&self) -> Option<char> {
        if self.0.depth == 0 {
            None
        } else {
            Some(level_symbol(self.0.depth))
        }
    }

    /// The chain `[self, parent, …, base]`.
    pub fn chain(&self) -> Vec<Field> {
        let mut out = vec![self.clone()];
        let mut f = self;
        while let Some(p) = f.parent() {
            out.push(p.clone());
            f = p;
        }
        out
    }

    /// True when `lower` is `self` or one of its ancestors.
    pub fn extends(&self, lower: &Field) -> bool {
        self.degree_over(lower).is_some()
    }

    /// `[self : lower]` when `lower` lies on this field's chain.
    pub fn degree_over(&self, lower: &Field) -> Option<usize> {
        if lower.0.depth > self.0.depth || lower.0.base != self.0.base {
            return None;
        }
        let mut f = self;
        while f.0.depth > lower.0.depth {
            f = f.parent().unwrap();
        }
        if f == lower {
            Some(self.0.abs_degree / lower.0.abs_degree)
        } else {
            None
        }
    }

    /// The levels strictly above `lower`, bottom-up.
    pub fn levels_above(&self, lower: &Field) -> Vec<Field> {
        let mut out = Vec::new();
        let mut f = self;
        while f.0.depth > lower.0.depth {
            out.push(f.clone());
            f = f.parent().unwrap();
        }
        out.reverse();
        out
    }

    pub fn describe(&self) -> String {
        match &self.0.ext {
            None => self.0.base.to_string(),
            Some(l) => {
                let sym = self.symbol().unwrap();
                let poly = crate::unipoly::Poly::from_coeffs(&l.parent, l.modulus.clone());
                format!("{}[{}]/({})", l.parent.describe(), sym, poly.format_in(&sym.to_string()))
            }
        }
    }

    // ---- element constructors ----

    pub fn zero(&self) -> Value {
        match &self.0.ext {
            Some(l) => Value::Ext(vec![l.parent.zero(); l.modulus.len() - 1]),
            None => match self.0.base {
                BaseField::Rationals => Value::Rational(BigRational::zero()),
                BaseField::Prime(_) => Value::Prime(0),
                BaseField::RationalFunctions(_) => Value::RatFun(RatFun::zero()),
            },
        }
    }

    pub fn one(&self) -> Value {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Value {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Value {
        match &self.0.ext {
            Some(l) => {
                let mut cs = vec![l.parent.zero(); l.modulus.len() - 1];
                cs[0] = l.parent.from_bigint(n);
                Value::Ext(cs)
            }
            None => match self.0.base {
                BaseField::Rationals => Value::Rational(BigRational::from_integer(n.clone())),
                BaseField::Prime(p) => Value::Prime(reduce_bigint(n, p)),
                BaseField::RationalFunctions(p) => Value::RatFun(RatFun::constant(reduce_bigint(n, p), p)),
            },
        }
    }

    /// Embeds a rational number; only meaningful in characteristic 0.
    pub fn from_rational(&self, r: &BigRational) -> Result<Value> {
        if self.characteristic() != 0 {
            return Err(Error::domain("rational constant in positive characteristic"));
        }
        let v = Value::Rational(r.clone());
        Ok(self.embed_unchecked(&v, &self.base_field()))
    }

    /// The adjoined generator of the top level; `t` for 𝔽_p(t).
    pub fn generator(&self) -> Result<Value> {
        match &self.0.ext {
            Some(l) => {
                let mut cs = vec![l.parent.zero(); l.modulus.len() - 1];
                cs[1] = l.parent.one();
                Ok(Value::Ext(cs))
            }
            None => match self.0.base {
                BaseField::RationalFunctions(_) => Ok(Value::RatFun(RatFun::t())),
                _ => Err(Error::domain("base field has no generator")),
            },
        }
    }

    /// Structural validity of a raw value for this field.
    pub fn contains(&self, v: &Value) -> bool {
        match (&self.0.ext, v) {
            (Some(l), Value::Ext(cs)) => cs.len() == l.modulus.len() - 1 && cs.iter().all(|c| l.parent.contains(c)),
            (None, Value::Rational(_)) => self.0.base == BaseField::Rationals,
            (None, Value::Prime(x)) => matches!(self.0.base, BaseField::Prime(p) if *x < p),
            (None, Value::RatFun(_)) => matches!(self.0.base, BaseField::RationalFunctions(_)),
            _ => false,
        }
    }

    // ---- arithmetic ----

    pub fn is_zero(&self, v: &Value) -> bool {
        value_is_zero(v)
    }

    pub fn is_one(&self, v: &Value) -> bool {
        value_is_one(v)
    }

    pub fn add(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Rational(x), Value::Rational(y)) => Value::Rational(x + y),
            (Value::Prime(x), Value::Prime(y)) => Value::Prime((x + y) % self.characteristic()),
            (Value::RatFun(x), Value::RatFun(y)) => Value::RatFun(x.add(y, self.characteristic())),
            (Value::Ext(x), Value::Ext(y)) => {
                let parent = self.parent().expect("extension value in base field");
                Value::Ext(x.iter().zip(y).map(|(s, t)| parent.add(s, t)).collect())
            }
            _ => panic!("mismatched values in field addition"),
        }
    }

    pub fn neg(&self, a: &Value) -> Value {
        match a {
            Value::Rational(x) => Value::Rational(-x),
            Value::Prime(x) => {
                let p = self.characteristic();
                Value::Prime((p - x) % p)
            }
            Value::RatFun(x) => Value::RatFun(x.neg(self.characteristic())),
            Value::Ext(x) => {
                let parent = self.parent().expect("extension value in base field");
                Value::Ext(x.iter().map(|s| parent.neg(s)).collect())
            }
        }
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Value {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Rational(x), Value::Rational(y)) => Value::Rational(x * y),
            (Value::Prime(x), Value::Prime(y)) => Value::Prime(fpx::mul_mod(*x, *y, self.characteristic())),
            (Value::RatFun(x), Value::RatFun(y)) => Value::RatFun(x.mul(y, self.characteristic())),
            (Value::Ext(x), Value::Ext(y)) => Value::Ext(self.ext_mul(x, y)),
            _ => panic!("mismatched values in field multiplication"),
        }
    }

    fn ext_mul(&self, a: &[Value], b: &[Value]) -> Vec<Value> {
        let l = self.0.ext.as_ref().expect("extension level");
        let par = &l.parent;
        let d = l.modulus.len() - 1;
        let mut prod = vec![par.zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if par.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if par.is_zero(y) {
                    continue;
                }
                prod[i + j] = par.add(&prod[i + j], &par.mul(x, y));
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = std::mem::replace(&mut prod[k], par.zero());
            if par.is_zero(&c) {
                continue;
            }
            for (j, m) in l.modulus[..d].iter().enumerate() {
                if !par.is_zero(m) {
                    prod[k - d + j] = par.sub(&prod[k - d + j], &par.mul(&c, m));
                }
            }
        }
        prod.truncate(d);
        prod
    }

    pub fn inv(&self, a: &Value) -> Result<Value> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match a {
            Value::Rational(x) => Value::Rational(x.recip()),
            Value::Prime(x) => Value::Prime(fpx::inv_mod(*x, self.characteristic())),
            Value::RatFun(x) => Value::RatFun(x.inv(self.characteristic()).unwrap()),
            Value::Ext(x) => {
                let l = self.0.ext.as_ref().expect("extension level");
                let par = &l.parent;
                let mut poly = x.clone();
                dense::trim(par, &mut poly);
                let (g, s, _) = dense::ext_gcd(par, &poly, &l.modulus);
                if g.len() != 1 {
                    return Err(Error::internal(format!(
                        "defining polynomial of {} is reducible: element shares a factor with it",
                        self.describe()
                    )));
                }
                let mut cs = s;
                cs.resize(l.modulus.len() - 1, par.zero());
                Value::Ext(cs)
            }
        })
    }

    pub fn div(&self, a: &Value, b: &Value) -> Result<Value> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Value, mut e: u64) -> Value {
        let mut acc = self.one();
        let mut base = a.clone();
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

    pub fn pow_big(&self, a: &Value, e: &BigUint) -> Value {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// `n · a` for a machine integer `n`.
    pub fn scale_int(&self, n: i64, a: &Value) -> Value {
        self.mul(&self.from_i64(n), a)
    }

    // ---- moving between levels ----

    /// Maps an element of the ancestor `from` into this field.
    pub fn embed(&self, v: &Value, from: &Field) -> Result<Value> {
        if !self.extends(from) {
            return Err(Error::domain(format!("{} is not a subfield of {}", from.describe(), self.describe())));
        }
        Ok(self.embed_unchecked(v, from))
    }

    pub(crate) fn embed_unchecked(&self, v: &Value, from: &Field) -> Value {
        if self.0.depth == from.0.depth {
            return v.clone();
        }
        let l = self.0.ext.as_ref().unwrap();
        let mut cs = vec![l.parent.zero(); l.modulus.len() - 1];
        cs[0] = l.parent.embed_unchecked(v, from);
        Value::Ext(cs)
    }

    /// Inverse of [`Field::embed`]: `Some` iff `v` lies in the ancestor
    /// `lower` (all coordinates above it vanish).
    pub fn restrict(&self, v: &Value, lower: &Field) -> Option<Value> {
        if self.0.depth == lower.0.depth {
            return Some(v.clone());
        }
        let l = self.0.ext.as_ref()?;
        match v {
            Value::Ext(cs) if cs[1..].iter().all(value_is_zero) => l.parent.restrict(&cs[0], lower),
            _ => None,
        }
    }

    /// Coordinates of `v` over the ancestor `lower`, in recursive order
    /// (the top-level exponent is the most significant index).
    pub fn coords_over(&self, v: &Value, lower: &Field) -> Vec<Value> {
        if self.0.depth == lower.0.depth {
            return vec![v.clone()];
        }
        let parent = self.parent().unwrap();
        match v {
            Value::Ext(cs) => cs.iter().flat_map(|c| parent.coords_over(c, lower)).collect(),
            _ => panic!("non-extension value at extension level"),
        }
    }

    pub fn from_coords_over(&self, coords: &[Value], lower: &Field) -> Value {
        if self.0.depth == lower.0.depth {
            debug_assert_eq!(coords.len(), 1);
            return coords[0].clone();
        }
        let parent = self.parent().unwrap();
        let chunk = parent.0.abs_degree / lower.0.abs_degree;
        Value::Ext(coords.chunks(chunk).map(|c| parent.from_coords_over(c, lower)).collect())
    }

    /// Basis of this field over `lower` matching [`Field::coords_over`].
    pub fn basis_over(&self, lower: &Field) -> Vec<Value> {
        let n = self.degree_over(lower).expect("ancestor");
        (0..n)
            .map(|i| {
                let mut c = vec![lower.zero(); n];
                c[i] = lower.one();
                self.from_coords_over(&c, lower)
            })
            .collect()
    }

    /// The generators of the levels above `lower`, embedded in `self`,
    /// bottom-up.
    pub fn generators_over(&self, lower: &Field) -> Vec<Value> {
        self.levels_above(lower)
            .iter()
            .map(|lvl| self.embed_unchecked(&lvl.generator().unwrap(), lvl))
            .collect()
    }

    // ---- enumeration and sampling ----

    /// Every element of a finite field of order at most `cap`.
    pub fn elements(&self, cap: u64) -> Option<Vec<Value>> {
        let order = self.order()?.to_u64()?;
        if order > cap {
            return None;
        }
        Some(match &self.0.ext {
            None => (0..order).map(Value::Prime).collect(),
            Some(l) => {
                let sub = l.parent.elements(cap)?;
                let d = l.modulus.len() - 1;
                let mut out = vec![Vec::with_capacity(d)];
                for _ in 0..d {
                    let mut next = Vec::with_capacity(out.len() * sub.len());
                    for prefix in &out {
                        for s in &sub {
                            let mut v = prefix.clone();
                            v.push(s.clone());
                            next.push(v);
                        }
                    }
                    out = next;
                }
                out.into_iter().map(Value::Ext).collect()
            }
        })
    }

    /// A random element with small coordinates.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Value {
        match &self.0.ext {
            Some(l) => Value::Ext((0..l.modulus.len() - 1).map(|_| l.parent.random(rng)).collect()),
            None => match self.0.base {
                BaseField::Rationals => {
                    let n: i64 = rng.gen_range(-9..=9);
                    let d: i64 = rng.gen_range(1..=4);
                    Value::Rational(BigRational::new(n.into(), d.into()))
                }
                BaseField::Prime(p) => Value::Prime(rng.gen_range(0..p)),
                BaseField::RationalFunctions(p) => {
                    let dn = rng.gen_range(0..=2);
                    let dd = rng.gen_range(0..=1);
                    let num: Vec<u64> = (0..=dn).map(|_| rng.gen_range(0..p)).collect();
                    let mut den: Vec<u64> = (0..dd).map(|_| rng.gen_range(0..p)).collect();
                    den.push(1);
                    Value::RatFun(RatFun::new(num, den, p))
                }
            },
        }
    }

    // ---- printing ----

    /// Human-readable form using `t` and the level symbols `a, b, …`.
    /// The output re-parses with the CLI grammar.
    pub fn format(&self, v: &Value) -> String {
        match v {
            Value::Rational(r) => r.to_string(),
            Value::Prime(x) => x.to_string(),
            Value::RatFun(r) => {
                let num = format_fp_poly(r.numerator(), "t");
                if r.denominator() == [1] {
                    num
                } else {
                    let den = format_fp_poly(r.denominator(), "t");
                    let num = if is_compound(&num) { format!("({num})") } else { num };
                    let den = if r.denominator().len() > 1 && !is_monomial(r.denominator()) {
                        format!("({den})")
                    } else {
                        den
                    };
                    format!("{num}/{den}")
                }
            }
            Value::Ext(cs) => {
                let parent = self.parent().unwrap();
                let sym = self.symbol().unwrap().to_string();
                let terms: Vec<(String, usize)> = cs
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, c)| !parent.is_zero(c))
                    .map(|(i, c)| (parent.format(c), i))
                    .collect();
                join_terms(&terms, &sym, false)
            }
        }
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().unwrap()
}

pub(crate) fn level_symbol(depth: usize) -> char {
    // skip t and x, which the grammar reserves
    let mut letters = ('a'..='z').filter(|c| *c != 't' && *c != 'x');
    letters.nth(depth - 1).unwrap_or('?')
}

fn is_compound(s: &str) -> bool {
    s.char_indices().any(|(i, c)| i > 0 && (c == '+' || c == '-'))
}

fn is_monomial(a: &[u64]) -> bool {
    a.iter().filter(|&&c| c != 0).count() == 1 && *a.last().unwrap() == 1
}

fn format_fp_poly(a: &[u64], var: &str) -> String {
    let terms: Vec<(String, usize)> =
        a.iter().enumerate().rev().filter(|(_, &c)| c != 0).map(|(i, c)| (c.to_string(), i)).collect();
    join_terms(&terms, var, false)
}

/// Joins `(coefficient, exponent)` pairs, highest exponent first.
pub(crate) fn join_terms(terms: &[(String, usize)], var: &str, spaced: bool) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (coef, exp)) in terms.iter().enumerate() {
        let power = match exp {
            0 => String::new(),
            1 => var.to_string(),
            e => format!("{var}^{e}"),
        };
        let term = if *exp == 0 {
            coef.clone()
        } else if coef == "1" {
            power
        } else if coef == "-1" {
            format!("-{power}")
        } else if is_compound(coef) {
            format!("({coef})*{power}")
        } else {
            format!("{coef}*{power}")
        };
        if k == 0 {
            out.push_str(&term);
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(if spaced { " - " } else { "-" });
            out.push_str(rest);
        } else {
            out.push_str(if spaced { " + " } else { "+" });
            out.push_str(&term);
        }
    }
    out
}

/// A field element bundled with its field; mixed-field arithmetic is a
/// domain error rather than a panic.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    field: Field,
    value: Value,
}

impl FieldElem {
    pub fn new(field: &Field, value: Value) -> Result<Self> {
        if !field.contains(&value) {
            return Err(Error::domain(format!("value does not belong to {}", field.describe())));
        }
        Ok(FieldElem { field: field.clone(), value })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn into_value(self) -> Value {
        self.value
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::domain(format!(
                "descriptor mismatch: {} vs {}",
                self.field.describe(),
                other.field.describe()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(FieldElem { field: self.field.clone(), value: self.field.add(&self.value, &other.value) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(FieldElem { field: self.field.clone(), value: self.field.sub(&self.value, &other.value) })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(FieldElem { field: self.field.clone(), value: self.field.mul(&self.value, &other.value) })
    }

    pub fn neg(&self) -> Self {
        FieldElem { field: self.field.clone(), value: self.field.neg(&self.value) }
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(FieldElem { field: self.field.clone(), value: self.field.inv(&self.value)? })
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.field.format(&self.value), self.field.describe())
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(&self.value))
    }
}

/// Shorthand for building rationals in code and tests.
pub fn q(n: i64, d: i64) -> Value {
    Value::Rational(BigRational::new(n.into(), d.into()))
}
