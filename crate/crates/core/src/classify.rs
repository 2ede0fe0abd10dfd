//! Extension types: finite, algebraic, separable, normal, Galois, plus the
//! side conditions (fixed field, perfect base, group order, degree two,
//! embedding stability) that the characterization statements assume.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactfields::{BaseField, Field, Value};
use crate::linalg;
use crate::towers::{self, Degree, Extension, InfiniteKind};
use crate::unipoly::factor_in;

/// A decided boolean, or `Unknown` when a capability limit was hit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flag {
    True,
    False,
    Unknown,
}

impl Flag {
    pub fn known(self) -> Option<bool> {
        match self {
            Flag::True => Some(true),
            Flag::False => Some(false),
            Flag::Unknown => None,
        }
    }

    pub fn is_true(self) -> bool {
        self == Flag::True
    }

    pub fn and(self, other: Flag) -> Flag {
        match (self, other) {
            (Flag::False, _) | (_, Flag::False) => Flag::False,
            (Flag::True, Flag::True) => Flag::True,
            _ => Flag::Unknown,
        }
    }

    pub fn not(self) -> Flag {
        match self {
            Flag::True => Flag::False,
            Flag::False => Flag::True,
            Flag::Unknown => Flag::Unknown,
        }
    }
}

impl From<bool> for Flag {
    fn from(b: bool) -> Self {
        if b {
            Flag::True
        } else {
            Flag::False
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flag::True => write!(f, "true"),
            Flag::False => write!(f, "false"),
            Flag::Unknown => write!(f, "unknown"),
        }
    }
}

impl Serialize for Flag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.known() {
            Some(b) => s.serialize_bool(b),
            None => s.serialize_str("unknown"),
        }
    }
}

pub const HYP_FIXED_FIELD: &str = "fixed_field_is_base";
pub const HYP_PERFECT: &str = "perfect_base";
pub const HYP_AUT_ORDER: &str = "aut_order_equals_degree";
pub const HYP_DEGREE_TWO: &str = "degree_two";
pub const HYP_STABLE: &str = "embedding_stability";

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub extension: String,
    pub degree: Degree,
    pub finite: Flag,
    pub algebraic: Flag,
    pub separable: Flag,
    pub normal: Flag,
    pub galois: Flag,
    pub perfect_base: bool,
    pub aut_order: Option<usize>,
    pub fixed_field_is_k: Flag,
    pub group_id: Option<String>,
    pub automorphisms: Vec<String>,
    pub generator_min_polys: Vec<String>,
    pub hypothesis_flags: BTreeMap<String, Flag>,
    pub reasons: BTreeMap<String, String>,
}

pub fn degree_of(ext: &Extension) -> Degree {
    ext.degree()
}

/// ℚ and finite fields (and finite extensions of them) are perfect;
/// 𝔽_p(t) and its finite extensions are not.
pub fn is_perfect_base(k: &Field) -> bool {
    !matches!(k.base(), BaseField::RationalFunctions(_))
}

fn finite_upper(ext: &Extension) -> Result<&Field> {
    ext.upper().map_err(|_| Error::capability("extension of infinite degree"))
}

pub fn is_separable(ext: &Extension) -> Result<bool> {
    let l = finite_upper(ext)?;
    let k = ext.lower();
    for g in l.generators_over(k) {
        let m = towers::min_poly(l, &g, k)?;
        if m.gcd(&m.derivative())?.deg() > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every generator's minimal polynomial over K splits into linear factors
/// over L.
pub fn is_normal(ext: &Extension) -> Result<bool> {
    let l = finite_upper(ext)?;
    let k = ext.lower();
    for g in l.generators_over(k) {
        let m = towers::min_poly(l, &g, k)?;
        let fac = factor_in(l, &m)?;
        if fac.factors.iter().any(|(h, _)| h.deg() > 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Separable and normal, cross-checked against `|Aut| = [L:K]`.
pub fn is_galois(ext: &Extension) -> Result<bool> {
    let galois = is_separable(ext)? && is_normal(ext)?;
    let aut = towers::automorphisms(ext)?.order();
    let n = ext.degree().finite().unwrap();
    if galois != (aut == n) {
        return Err(Error::internal(format!(
            "separable-and-normal says {galois} but |Aut| = {aut} and degree {n}"
        )));
    }
    Ok(galois)
}

/// Every K-embedding of L into its normal closure has image L.
pub fn embedding_stability(ext: &Extension) -> Result<bool> {
    let l = finite_upper(ext)?;
    let k = ext.lower();
    let closure = towers::normal_closure(ext)?;
    let basis = l.basis_over(k);
    let n = basis.len();
    let own: Vec<Vec<Value>> = basis.iter().map(|b| closure.coords_over(&closure.embed_unchecked(b, l), k)).collect();
    for phi in towers::embeddings(l, &closure, k)? {
        let mut rows = own.clone();
        rows.extend(basis.iter().map(|b| closure.coords_over(&phi.apply(b), k)));
        if linalg::rank(k, &rows) != n {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Turns a capability error into `Unknown` with a recorded reason; other
/// errors propagate.
fn flag_of(name: &str, r: Result<bool>, reasons: &mut BTreeMap<String, String>) -> Result<Flag> {
    match r {
        Ok(b) => Ok(b.into()),
        Err(Error::Capability(msg)) => {
            reasons.insert(name.to_string(), msg);
            Ok(Flag::Unknown)
        }
        Err(e) => Err(e),
    }
}

/// Full report. Capability limits become `Unknown` flags with reasons;
/// disagreement between independent routes is an internal error.
pub fn classify(ext: &Extension) -> Result<ExtensionReport> {
    let mut reasons = BTreeMap::new();
    let k = ext.lower();
    let perfect = is_perfect_base(k);
    let degree = ext.degree();
    let mut report = ExtensionReport {
        extension: ext.describe(),
        degree,
        finite: ext.is_finite().into(),
        algebraic: Flag::True,
        separable: Flag::Unknown,
        normal: Flag::Unknown,
        galois: Flag::Unknown,
        perfect_base: perfect,
        aut_order: None,
        fixed_field_is_k: Flag::Unknown,
        group_id: None,
        automorphisms: Vec::new(),
        generator_min_polys: Vec::new(),
        hypothesis_flags: BTreeMap::new(),
        reasons: BTreeMap::new(),
    };

    let Ok(l) = ext.upper() else {
        let algebraic = ext.infinite_kind() == Some(InfiniteKind::Algebraic);
        report.algebraic = algebraic.into();
        if !algebraic {
            // the three notions are defined for algebraic extensions only
            report.separable = Flag::False;
            report.normal = Flag::False;
            report.galois = Flag::False;
        } else {
            if perfect {
                report.separable = Flag::True;
            } else {
                reasons.insert("separable".into(), "infinite extension of an imperfect base".into());
            }
            reasons.insert("normal".into(), "normality of an infinite marker is not decidable".into());
            reasons.insert("galois".into(), "normality of an infinite marker is not decidable".into());
        }
        reasons.insert("fixed_field_is_k".into(), "no automorphism group for an infinite marker".into());
        reasons.insert("aut_order".into(), "no automorphism group for an infinite marker".into());
        report.hypothesis_flags = BTreeMap::from([
            (HYP_FIXED_FIELD.to_string(), Flag::Unknown),
            (HYP_PERFECT.to_string(), perfect.into()),
            (HYP_AUT_ORDER.to_string(), Flag::Unknown),
            (HYP_DEGREE_TWO.to_string(), Flag::False),
            (HYP_STABLE.to_string(), Flag::Unknown),
        ]);
        reasons.insert(HYP_STABLE.into(), "embeddings of an infinite marker are not representable".into());
        report.reasons = reasons;
        return Ok(report);
    };

    let n = degree.finite().unwrap();
    for g in l.generators_over(k) {
        report.generator_min_polys.push(towers::min_poly(l, &g, k)?.to_string());
    }
    report.separable = flag_of("separable", is_separable(ext), &mut reasons)?;
    report.normal = flag_of("normal", is_normal(ext), &mut reasons)?;
    report.galois = report.separable.and(report.normal);
    if report.galois == Flag::Unknown {
        reasons.insert("galois".into(), "separability or normality undecided".into());
    }

    let mut aut_equal = Flag::Unknown;
    match towers::automorphisms(ext) {
        Ok(group) => {
            let order = group.order();
            report.aut_order = Some(order);
            report.group_id = Some(group.identify());
            report.automorphisms = group.elements.iter().map(|e| e.describe()).collect();
            aut_equal = (order == n).into();
            let all: Vec<usize> = (0..order).collect();
            let ff = towers::fixed_field(ext, &group, &all)?;
            report.fixed_field_is_k = ff.equals_base.into();
        }
        Err(Error::Capability(msg)) => {
            reasons.insert("aut_order".into(), msg.clone());
            reasons.insert("fixed_field_is_k".into(), msg);
        }
        Err(e) => return Err(e),
    }

    // independent routes must agree
    if let (Some(g), Some(a)) = (report.galois.known(), aut_equal.known()) {
        if g != a {
            return Err(Error::internal(format!(
                "{}: separable-and-normal gives {g} but |Aut| = degree gives {a}",
                report.extension
            )));
        }
    }
    if let (Some(g), Some(f)) = (report.galois.known(), report.fixed_field_is_k.known()) {
        if g != f {
            return Err(Error::internal(format!(
                "{}: Galois is {g} but the fixed field test gives {f}",
                report.extension
            )));
        }
    }
    if report.galois == Flag::Unknown && aut_equal != Flag::Unknown {
        // |Aut| = [L:K] decides Galois on its own for finite extensions
        report.galois = aut_equal;
        reasons.remove("galois");
    }
    if perfect && report.separable == Flag::False {
        return Err(Error::internal("inseparable extension of a perfect field"));
    }

    let stable = flag_of(HYP_STABLE, embedding_stability(ext), &mut reasons)?;
    if let (Some(s), Some(nm)) = (stable.known(), report.normal.known()) {
        if s != nm {
            return Err(Error::internal(format!(
                "{}: embedding stability {s} disagrees with normality {nm}",
                report.extension
            )));
        }
    }
    report.hypothesis_flags = BTreeMap::from([
        (HYP_FIXED_FIELD.to_string(), report.fixed_field_is_k),
        (HYP_PERFECT.to_string(), perfect.into()),
        (HYP_AUT_ORDER.to_string(), aut_equal),
        (HYP_DEGREE_TWO.to_string(), (n == 2).into()),
        (HYP_STABLE.to_string(), stable),
    ]);
    report.reasons = reasons;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unipoly::Poly;

    fn ext_q(cs: &[i64]) -> Extension {
        let q = Field::rationals();
        towers::make_extension(&q, &Poly::from_ints(&q, cs), false).unwrap()
    }

    #[test]
    fn sqrt2_report() {
        let r = classify(&ext_q(&[-2, 0, 1])).unwrap();
        assert_eq!(r.degree, Degree::Finite(2));
        assert_eq!((r.separable, r.normal, r.galois), (Flag::True, Flag::True, Flag::True));
        assert_eq!(r.aut_order, Some(2));
        assert_eq!(r.fixed_field_is_k, Flag::True);
        assert_eq!(r.group_id.as_deref(), Some("C2"));
    }

    #[test]
    fn cube_root_report() {
        let r = classify(&ext_q(&[-2, 0, 0, 1])).unwrap();
        assert_eq!((r.separable, r.normal, r.galois), (Flag::True, Flag::False, Flag::False));
        assert_eq!(r.aut_order, Some(1));
        assert_eq!(r.fixed_field_is_k, Flag::False);
        assert_eq!(r.hypothesis_flags[HYP_STABLE], Flag::False);
    }

    #[test]
    fn inseparable_report() {
        let k = Field::rational_functions(2).unwrap();
        let t = k.generator().unwrap();
        let f = Poly::from_coeffs(&k, vec![k.neg(&t), k.zero(), k.one()]);
        let e = towers::make_extension(&k, &f, false).unwrap();
        let r = classify(&e).unwrap();
        assert_eq!((r.separable, r.normal, r.galois), (Flag::False, Flag::True, Flag::False));
        assert_eq!(r.aut_order, Some(1));
        assert!(!r.perfect_base);
    }

    #[test]
    fn perfect_bases() {
        assert!(is_perfect_base(&Field::rationals()));
        assert!(is_perfect_base(&Field::prime(5).unwrap()));
        assert!(!is_perfect_base(&Field::rational_functions(2).unwrap()));
    }

    #[test]
    fn infinite_marker() {
        let e = Extension::infinite(&Field::rationals(), InfiniteKind::Algebraic);
        let r = classify(&e).unwrap();
        assert_eq!(r.degree, Degree::Infinite);
        assert_eq!(r.finite, Flag::False);
        assert_eq!(r.algebraic, Flag::True);
        assert_eq!(r.normal, Flag::Unknown);
        assert!(r.reasons.contains_key("normal"));
        assert!(is_separable(&e).unwrap_err().is_capability());
    }
}
