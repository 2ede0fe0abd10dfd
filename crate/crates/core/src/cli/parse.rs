//! Input grammar: base tokens, polynomial strings in `x`, and the JSON
//! input spec shared by the command line and catalog files.
//!
//! Polynomials are arithmetic expressions over `+ - * / ^` and parentheses
//! in the variable `x`, the base symbol `t` and the tower symbols `a, b, …`.
//! A product may omit `*` before a symbol or a parenthesis (`2x`, `3(x+1)`).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfields::{BaseField, Field};
use crate::towers::{self, Extension, InfiniteKind};
use crate::unipoly::Poly;

/// `Q`, `GF(p)` or `GF(p)(t)`, whitespace-insensitive.
pub fn parse_base(s: &str) -> Result<Field> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |m: &str| Error::Parse { column: 1, message: format!("{m}: {s:?}") };
    if compact == "Q" {
        return Ok(Field::rationals());
    }
    let rest = compact.strip_prefix("GF(").ok_or_else(|| bad("expected Q, GF(p) or GF(p)(t)"))?;
    let close = rest.find(')').ok_or_else(|| bad("unclosed GF("))?;
    let p: u64 = rest[..close].parse().map_err(|_| bad("characteristic is not an integer"))?;
    let base = match &rest[close + 1..] {
        "" => BaseField::Prime(p),
        "(t)" => BaseField::RationalFunctions(p),
        _ => return Err(bad("trailing input after GF(p)")),
    };
    Field::from_base(base).map_err(|e| bad(&e.to_string()))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Sym(char),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Num(chars[start..i].iter().collect()), col));
        } else if c.is_ascii_lowercase() {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(Error::Parse { column: col, message: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

/// Value of a subexpression, remembering whether it is a plain integer
/// literal so that `1/2` can be rejected over prime fields.
struct Val {
    poly: Poly,
    integer_literal: bool,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    field: &'a Field,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.len + 1)
    }

    fn err<T>(&self, column: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { column, message: message.into() })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    // expr := ["-"|"+"] term (("+"|"-") term)*
    fn expr(&mut self) -> Result<Val> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc.poly = acc.poly.neg();
        }
        loop {
            if self.eat('+') {
                let rhs = self.term()?;
                acc = Val { poly: acc.poly.add(&rhs.poly), integer_literal: false };
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = Val { poly: acc.poly.sub(&rhs.poly), integer_literal: false };
            } else {
                return Ok(acc);
            }
        }
    }

    // term := power (("*"|"/"|implicit) power)*
    fn term(&mut self) -> Result<Val> {
        let mut acc = self.power()?;
        loop {
            let col = self.column();
            if self.eat('*') {
                let rhs = self.power()?;
                acc = Val { poly: acc.poly.mul(&rhs.poly), integer_literal: false };
            } else if self.eat('/') {
                let rhs = self.power()?;
                if acc.integer_literal && rhs.integer_literal && self.field.characteristic() != 0 {
                    return self.err(col, format!("rational coefficient in {}", self.field.describe()));
                }
                if !rhs.poly.is_constant() {
                    return self.err(col, "division by a polynomial in x");
                }
                if rhs.poly.is_zero() {
                    return self.err(col, "division by zero");
                }
                let inv = self.field.inv(&rhs.poly.coeff(0))?;
                acc = Val { poly: acc.poly.scale(&inv), integer_literal: false };
            } else if matches!(self.peek(), Some(Tok::Sym(_)) | Some(Tok::Op('('))) {
                let rhs = self.power()?;
                acc = Val { poly: acc.poly.mul(&rhs.poly), integer_literal: false };
            } else {
                return Ok(acc);
            }
        }
    }

    // power := atom ["^" nat]
    fn power(&mut self) -> Result<Val> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let col = self.column();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let e: u64 = n.parse().or_else(|_| self.err(col, "exponent too large"))?;
                Ok(Val { poly: base.poly.pow(e), integer_literal: false })
            }
            _ => self.err(col, "exponent must be a non-negative integer"),
        }
    }

    fn atom(&mut self) -> Result<Val> {
        let col = self.column();
        let f = self.field;
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let v: num_bigint::BigInt = n.parse().unwrap();
                Ok(Val { poly: Poly::constant(f, f.from_bigint(&v)), integer_literal: true })
            }
            Some(Tok::Sym('x')) => {
                self.pos += 1;
                Ok(Val { poly: Poly::x(f), integer_literal: false })
            }
            Some(Tok::Sym(s)) => {
                self.pos += 1;
                let v = symbol_value(f, s).ok_or_else(|| Error::Parse {
                    column: col,
                    message: format!("symbol {s} is not defined in {}", f.describe()),
                })?;
                Ok(Val { poly: Poly::constant(f, v), integer_literal: false })
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err(self.column(), "expected ')'");
                }
                Ok(Val { poly: inner.poly, integer_literal: inner.integer_literal })
            }
            Some(Tok::Op(c)) => self.err(col, format!("unexpected {c:?}")),
            None => self.err(col, "unexpected end of input"),
        }
    }
}

/// `t` or a tower symbol, as an element of `f`.
fn symbol_value(f: &Field, s: char) -> Option<crate::exactfields::Value> {
    if s == 't' {
        let base = f.base_field();
        if !matches!(base.base(), BaseField::RationalFunctions(_)) {
            return None;
        }
        return Some(f.embed_unchecked(&base.generator().ok()?, &base));
    }
    f.chain()
        .into_iter()
        .find(|level| level.symbol() == Some(s))
        .map(|level| f.embed_unchecked(&level.generator().unwrap(), &level))
}

/// A polynomial in `x` with coefficients in `field`.
pub fn parse_poly(s: &str, field: &Field) -> Result<Poly> {
    let toks = tokenize(s)?;
    let len = s.chars().count();
    if toks.is_empty() {
        return Err(Error::Parse { column: 1, message: "empty polynomial".into() });
    }
    let mut p = Parser { toks, pos: 0, field, len };
    let v = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err(p.column(), "unexpected trailing input");
    }
    Ok(v.poly)
}

/// One extension description, as given on the command line or in a
/// catalog file.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct InputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub base: String,
    #[serde(default)]
    pub ext: Vec<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub trusted: bool,
    /// `"algebraic"` or `"transcendental"` for an infinite marker.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub infinite: Option<String>,
    /// Report fields the classification must reproduce.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expected: BTreeMap<String, serde_json::Value>,
}

/// The fields of a parsed spec: `levels[0]` is the base and each later
/// entry adjoins one root.
#[derive(Clone, Debug)]
pub struct Built {
    pub levels: Vec<Field>,
    pub extension: Extension,
    pub defining_polys: Vec<Poly>,
}

impl Built {
    pub fn base(&self) -> &Field {
        &self.levels[0]
    }

    pub fn top(&self) -> &Field {
        self.levels.last().unwrap()
    }
}

impl InputSpec {
    pub fn new(base: &str, ext: &[&str]) -> Self {
        InputSpec { base: base.into(), ext: ext.iter().map(|s| s.to_string()).collect(), ..Default::default() }
    }

    pub fn display_name(&self) -> String {
        if let Some(n) = &self.name {
            return n.clone();
        }
        let mut s = self.base.clone();
        for e in &self.ext {
            s.push_str(&format!(" [{e}]"));
        }
        if let Some(kind) = &self.infinite {
            s.push_str(&format!(" ({kind} infinite)"));
        }
        s
    }

    pub fn build(&self) -> Result<Built> {
        let base = parse_base(&self.base)?;
        if let Some(kind) = &self.infinite {
            if !self.ext.is_empty() {
                return Err(Error::domain("an infinite marker takes no defining polynomials"));
            }
            let kind = match kind.as_str() {
                "algebraic" => InfiniteKind::Algebraic,
                "transcendental" => InfiniteKind::Transcendental,
                other => return Err(Error::domain(format!("unknown infinite kind {other:?}"))),
            };
            return Ok(Built {
                levels: vec![base.clone()],
                extension: Extension::infinite(&base, kind),
                defining_polys: Vec::new(),
            });
        }
        let mut levels = vec![base.clone()];
        let mut polys = Vec::new();
        for s in &self.ext {
            let k = levels.last().unwrap().clone();
            let f = parse_poly(s, &k)?;
            if f.is_zero() {
                return Err(Error::domain("zero defining polynomial"));
            }
            let f = f.monic();
            levels.push(towers::adjoin(&k, &f, self.trusted)?);
            polys.push(f);
        }
        let extension = Extension::new(&base, levels.last().unwrap())?;
        Ok(Built { levels, extension, defining_polys: polys })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bases() {
        assert_eq!(parse_base("Q").unwrap(), Field::rationals());
        assert_eq!(parse_base(" GF(7) ").unwrap(), Field::prime(7).unwrap());
        assert_eq!(parse_base("GF(2)(t)").unwrap(), Field::rational_functions(2).unwrap());
        assert!(parse_base("GF(6)").is_err());
        assert!(parse_base("R").is_err());
    }

    #[test]
    fn polynomials() {
        let q = Field::rationals();
        assert_eq!(parse_poly("x^2 - 2", &q).unwrap(), Poly::from_ints(&q, &[-2, 0, 1]));
        assert_eq!(parse_poly("  x^2-2 ", &q).unwrap(), Poly::from_ints(&q, &[-2, 0, 1]));
        assert_eq!(parse_poly("2x + 3(x+1)", &q).unwrap(), Poly::from_ints(&q, &[3, 5]));
        let f2 = Field::prime(2).unwrap();
        assert_eq!(parse_poly("x^2+x+1", &f2).unwrap(), Poly::from_ints(&f2, &[1, 1, 1]));
        let q2 = parse_poly("x^2 - 1/2", &q).unwrap();
        assert_eq!(q2.coeff(0), crate::exactfields::q(-1, 2));
    }

    #[test]
    fn errors_carry_columns() {
        let f3 = Field::prime(3).unwrap();
        match parse_poly("x^2 - 1/2", &f3) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 8),
            other => panic!("{other:?}"),
        }
        let q = Field::rationals();
        assert!(matches!(parse_poly("x^2 + t", &q), Err(Error::Parse { column: 7, .. })));
        assert!(matches!(parse_poly("x^2 +", &q), Err(Error::Parse { column: 6, .. })));
        assert!(matches!(parse_poly("x^2 # 1", &q), Err(Error::Parse { column: 5, .. })));
        assert!(matches!(parse_poly("x^y", &q), Err(Error::Parse { column: 3, .. })));
        assert!(matches!(parse_poly("(x+1", &q), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("1/x", &q), Err(Error::Parse { .. })));
    }

    #[test]
    fn tower_symbols_and_roundtrip() {
        let mut spec = InputSpec::new("GF(3)(t)", &["x^2 - t", "x^3 - x - a/(t+1)"]);
        spec.trusted = true;
        let built = spec.build().unwrap();
        let l = &built.levels[1];
        let f = &built.defining_polys[1];
        assert_eq!(parse_poly(&f.to_string(), l).unwrap(), *f);
        let q = Field::rationals();
        let spec = InputSpec::new("Q", &["x^2-2", "x^2-3"]);
        let built = spec.build().unwrap();
        let m = built.top();
        let g = parse_poly("(a*b - 1/2)x^3 + (b - a)x - 7/3", m).unwrap();
        assert_eq!(parse_poly(&g.to_string(), m).unwrap(), g);
        let _ = q;
    }

    #[test]
    fn reducible_input_is_rejected() {
        let spec = InputSpec::new("Q", &["x^2-4"]);
        assert!(matches!(spec.build(), Err(Error::Construction(_))));
    }
}
