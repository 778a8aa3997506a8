//! Text formats for rings and polynomials.
//!
//! Polynomials are sums of terms built from numbers, variables, `*`, `^` and
//! parentheses, e.g. `x^2*y - 1/2*x + 3`. Rings are written `QQ[x,y]`,
//! `GF(2)[x,y]`, `QQ[x;gens=x^2,x^3]` or `QQ[x,y;weights=1,3]`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::poly::{Monomial, Poly};
use crate::ring::{AmbientRing, WeightVector};

fn perr<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

pub fn parse_ring(s: &str) -> Result<AmbientRing> {
    let s = s.trim();
    let open = match s.find('[') {
        Some(i) => i,
        None => return perr(0, "expected '[' after the field"),
    };
    if !s.ends_with(']') {
        return perr(s.len(), "expected closing ']'");
    }
    let field = parse_field(&s[..open])?;
    let inner = &s[open + 1..s.len() - 1];
    let mut parts = inner.split(';');
    let vars: Vec<String> = parts
        .next()
        .unwrap_or("")
        .split(',')
        .map(|v| v.trim().to_string())
        .collect();
    for (i, v) in vars.iter().enumerate() {
        let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok || vars[..i].contains(v) {
            return perr(open + 1, format!("bad variable name '{v}'"));
        }
    }
    let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let mut ring = AmbientRing::polynomial(field, &var_refs);
    let mut gens = None;
    let mut weights = None;
    for opt in parts {
        let (key, val) = match opt.split_once('=') {
            Some(kv) => kv,
            None => return perr(open, format!("ring option '{opt}' needs key=value")),
        };
        match key.trim() {
            "gens" => {
                let mut ms = Vec::new();
                for g in val.split(',') {
                    let p = parse_poly(g, &ring)?;
                    if p.num_terms() != 1 || !p.leading_coeff().is_one() {
                        return perr(open, format!("generator '{g}' is not a monomial"));
                    }
                    ms.push(p.leading_monomial().unwrap().clone());
                }
                gens = Some(ms);
            }
            "weights" => {
                let mut w = Vec::new();
                for t in val.split(',') {
                    match t.trim().parse::<u32>() {
                        Ok(x) => w.push(x),
                        Err(_) => return perr(open, format!("bad weight '{t}'")),
                    }
                }
                weights = Some(WeightVector::new(w)?);
            }
            k => return perr(open, format!("unknown ring option '{k}'")),
        }
    }
    let grading = weights.unwrap_or_else(|| WeightVector::ones(vars.len()));
    if grading.0.len() != vars.len() {
        return perr(open, "weights length differs from number of variables");
    }
    ring = match gens {
        Some(g) => ring.with_gens(g, grading)?,
        None => ring.with_grading(grading)?,
    };
    Ok(ring)
}

fn parse_field(s: &str) -> Result<FieldSpec> {
    let s = s.trim();
    if s == "QQ" || s == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(rest) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
        return match rest.trim().parse::<u32>() {
            Ok(p) => FieldSpec::prime(p),
            Err(_) => perr(3, format!("bad characteristic '{rest}'")),
        };
    }
    perr(0, format!("unknown field '{s}'"))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a AmbientRing,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.ring.zero();
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() || c == b'_' => {
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let e = self.integer()?;
            let e: u32 = match e.try_into() {
                Ok(v) => v,
                Err(_) => return perr(start, "exponent too large"),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return perr(start, "expected an integer");
        }
        let txt = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(txt.parse::<BigInt>().unwrap())
    }

    fn atom(&mut self) -> Result<Poly> {
        let start = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return perr(self.pos, "expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                let a = self.power()?;
                Ok(-&a)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut den = BigInt::one();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let p = self.pos;
                    den = self.integer()?;
                    if den.is_zero() {
                        return perr(p, "division by zero");
                    }
                }
                let c = self.ring.field.ratio(&num, &den)?;
                Ok(self.ring.constant(c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let s = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[s..self.pos]).unwrap();
                match self.ring.var_index(name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => perr(s, format!("unknown variable '{name}'")),
                }
            }
            Some(c) => perr(start, format!("unexpected character '{}'", c as char)),
            None => perr(start, "unexpected end of input"),
        }
    }
}

/// Parses a polynomial of `ring`; monomials outside a subalgebra are rejected.
pub fn parse_poly(s: &str, ring: &AmbientRing) -> Result<Poly> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
        ring,
    };
    let f = p.expr()?;
    if p.peek().is_some() {
        return perr(p.pos, "trailing input");
    }
    if ring.is_subalgebra() {
        ring.check(&f)?;
    }
    Ok(f)
}

fn format_monomial(m: &Monomial, vars: &[String]) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                vars[i].clone()
            } else {
                format!("{}^{}", vars[i], e)
            }
        })
        .collect();
    parts.join("*")
}

/// Canonical text: terms in descending graded-lex order.
pub fn format_poly(f: &Poly, vars: &[String]) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in f.terms().rev().enumerate() {
        let neg = c.is_negative();
        let abs: Scalar = if neg { c.neg() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = format_monomial(m, vars);
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rings() {
        let r = parse_ring("GF(2)[x,y]").unwrap();
        assert_eq!(r.field, FieldSpec::Prime(2));
        let s = parse_ring("QQ[x;gens=x^2,x^3]").unwrap();
        assert!(s.is_subalgebra());
        assert_eq!(s.to_string(), "QQ[x;gens=x^2,x^3]");
        let w = parse_ring("QQ[x,y;weights=1,3]").unwrap();
        assert_eq!(w.grading.0, vec![1, 3]);
        assert!(parse_ring("GF(4)[x]").is_err());
        assert!(parse_ring("QQ[x,x]").is_err());
    }

    #[test]
    fn roundtrip_rational() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let f = r.parse("x^2*y - 1/2*x + 3").unwrap();
        assert_eq!(r.fmt(&f), "x^2*y - 1/2*x + 3");
        assert_eq!(r.parse(&r.fmt(&f)).unwrap(), f);
        let g = r.parse("-(x^2+x)").unwrap();
        assert_eq!(r.fmt(&g), "-x^2 - x");
    }

    #[test]
    fn prime_field_coefficients() {
        let r = parse_ring("GF(3)[x]").unwrap();
        assert_eq!(r.fmt(&r.parse("-x + 1/2").unwrap()), "2*x + 2");
        assert!(matches!(
            r.parse("x/3"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(r.parse("1/3*x"), Err(Error::CoefficientNotInField(_))));
    }

    #[test]
    fn subalgebra_rejects_outside_monomials() {
        let r = parse_ring("QQ[x;gens=x^2,x^3]").unwrap();
        assert!(matches!(r.parse("x + 1"), Err(Error::MonomialOutsideSubalgebra(_))));
        assert!(r.parse("x^5 + x^2").is_ok());
    }

    #[test]
    fn error_positions() {
        let r = parse_ring("QQ[x,y]").unwrap();
        match r.parse("x + z") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
    }
}
