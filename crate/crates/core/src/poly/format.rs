//! Text and JSON forms of rational polynomials.
//!
//! Text: terms in descending grevlex order, `*` between factors, `^` for
//! powers, one space on each side of a binary `+`/`-`, unit coefficients
//! omitted. `parse_poly(to_text(p)) == p`.

use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{var_list, MPoly, Monomial, PolyError, QPoly};
use crate::scalar::{format_rational, parse_rational, Q};

pub fn to_text(p: &QPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let abs = c.abs();
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || m.is_one() {
            factors.push(format_rational(&abs));
        }
        for (name, &e) in p.vars().iter().zip(m.exps()) {
            match e {
                0 => {}
                1 => factors.push(name.clone()),
                _ => factors.push(format!("{name}^{e}")),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

impl fmt::Display for MPoly<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_text(self))
    }
}

/// Parses a sum of monomials such as `3*x^2*y - 1/2*y + 7` over `vars`.
pub fn parse_poly(text: &str, vars: &[&str]) -> Result<QPoly, PolyError> {
    let names = var_list(vars);
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    p.skip_ws();
    let mut first = true;
    while p.pos < p.s.len() {
        let mut neg = false;
        match p.peek() {
            Some(b'+') if !first => p.pos += 1,
            Some(b'-') => {
                neg = true;
                p.pos += 1;
            }
            _ if first => {}
            _ => return Err(p.err("expected `+` or `-`")),
        }
        p.skip_ws();
        let (m, c) = p.term(&names)?;
        terms.push((m, if neg { -c } else { c }));
        p.skip_ws();
        first = false;
    }
    if first {
        return Err(p.err("empty polynomial"));
    }
    Ok(MPoly::from_terms(names, terms))
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).expect("ascii")
    }

    fn term(&mut self, names: &std::sync::Arc<[String]>) -> Result<(Monomial, Q), PolyError> {
        let mut coeff = Q::one();
        let mut exps = vec![0u32; names.len()];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() || c == b'.' => {
                    let start = self.pos;
                    let num = self.take_while(|c| c.is_ascii_digit() || c == b'.').to_string();
                    let mut lit = num;
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        let den = self.take_while(|c| c.is_ascii_digit());
                        lit = format!("{lit}/{den}");
                    }
                    let v = parse_rational(&lit)
                        .ok_or(PolyError::Parse { pos: start, msg: format!("bad number `{lit}`") })?;
                    coeff *= v;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == b'_').to_string();
                    let idx = names.iter().position(|v| *v == name).ok_or(PolyError::UnknownVariable(name))?;
                    let mut e = 1u32;
                    self.skip_ws();
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        let digits = self.take_while(|c| c.is_ascii_digit());
                        e = digits.parse().map_err(|_| PolyError::Parse {
                            pos: start,
                            msg: "bad exponent".to_string(),
                        })?;
                    }
                    exps[idx] += e;
                }
                _ => return Err(self.err("expected a number or a variable")),
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((Monomial::new(exps), coeff));
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: String,
}

/// Structured export mirroring the term list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

pub fn to_json(p: &QPoly) -> PolyJson {
    PolyJson {
        vars: p.vars().to_vec(),
        terms: p
            .terms()
            .iter()
            .map(|(m, c)| TermJson { exp: m.exps().to_vec(), coef: format_rational(c) })
            .collect(),
    }
}

pub fn from_json(j: &PolyJson) -> Result<QPoly, PolyError> {
    let vars: std::sync::Arc<[String]> = j.vars.clone().into();
    let mut terms = Vec::with_capacity(j.terms.len());
    for (i, t) in j.terms.iter().enumerate() {
        if t.exp.len() != vars.len() {
            return Err(PolyError::Parse { pos: i, msg: "exponent length mismatch".to_string() });
        }
        let c = parse_rational(&t.coef)
            .ok_or(PolyError::Parse { pos: i, msg: format!("bad coefficient `{}`", t.coef) })?;
        terms.push((Monomial::new(t.exp.clone()), c));
    }
    Ok(MPoly::from_terms(vars, terms))
}
