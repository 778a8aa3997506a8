//! Unit-fraction sums and the elementary operations of the reciprocal
//! complement: unit tests and inversion, splitting, distinct representations,
//! greedy expansions of rationals and graded valuations.

mod distinct;
mod greedy;
mod units;
mod valuation;

pub use crate::member::decompose;
pub use distinct::{distinctify, split_identity};
pub use greedy::greedy_egyptian_rational;
pub use units::{inverse_tree, invert_unit, is_unit_graded};
pub use valuation::{is_egyptian, valuation_graded, Egyptian, Valuation};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfunc::{sum_many, RatFunc};
use crate::ring::AmbientRing;

/// `sum 1/d_i` over nonzero ring elements `d_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitFractionSum {
    pub denominators: Vec<Poly>,
}

impl UnitFractionSum {
    pub fn new(denominators: Vec<Poly>) -> Result<Self> {
        if denominators.iter().any(|d| d.is_zero()) {
            return Err(Error::Precondition("zero denominator in unit-fraction sum".into()));
        }
        Ok(UnitFractionSum { denominators })
    }

    pub fn len(&self) -> usize {
        self.denominators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.denominators.is_empty()
    }

    /// `(sum 1/d_i)(sum 1/e_j) = sum 1/(d_i e_j)`.
    pub fn product(&self, o: &UnitFractionSum) -> UnitFractionSum {
        let mut out = Vec::with_capacity(self.len() * o.len());
        for d in &self.denominators {
            for e in &o.denominators {
                out.push(d * e);
            }
        }
        UnitFractionSum { denominators: out }
    }

    pub fn to_json(&self, ring: &AmbientRing) -> Value {
        json!({ "denominators": self.denominators.iter().map(|d| ring.fmt(d)).collect::<Vec<_>>() })
    }

    pub fn display(&self, ring: &AmbientRing) -> String {
        if self.denominators.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .denominators
            .iter()
            .map(|d| format!("1/({})", ring.fmt(d)))
            .collect();
        parts.join(" + ")
    }
}

/// Value of a unit-fraction sum as a single fraction over a common multiple
/// of the denominators.
pub fn to_ratfunc(s: &UnitFractionSum, ring: &AmbientRing) -> RatFunc {
    if s.denominators.is_empty() {
        return RatFunc::from_poly(ring.zero());
    }
    let terms: Vec<RatFunc> = s
        .denominators
        .iter()
        .map(|d| RatFunc::recip_of(d).expect("nonzero denominators"))
        .collect();
    sum_many(&terms)
}

/// Parses `1 + 1/x - 1/(x+1)` style sums, or JSON `{"denominators": [...]}`.
/// A bare term `c` stands for `1/(1/c)`; `-1/d` stands for `1/(-d)`.
pub fn parse_ufs(s: &str, ring: &AmbientRing) -> Result<UnitFractionSum> {
    let t = s.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: e.to_string(),
        })?;
        let arr = v
            .get("denominators")
            .and_then(|d| d.as_array())
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: "expected {\"denominators\": [...]}".into(),
            })?;
        let mut ds = Vec::new();
        for d in arr {
            let txt = d.as_str().ok_or_else(|| Error::Parse {
                pos: 0,
                msg: "denominators must be strings".into(),
            })?;
            ds.push(ring.parse(txt)?);
        }
        return UnitFractionSum::new(ds);
    }
    // Split at top-level signs.
    let bytes = t.as_bytes();
    let mut depth = 0i32;
    let mut pieces: Vec<(usize, bool, &str)> = Vec::new();
    let mut start = 0;
    let mut neg = false;
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                let prev = t[..i].trim_end();
                let after_op = prev.is_empty() || prev.ends_with('/') || prev.ends_with('^') || prev.ends_with('*');
                if !after_op {
                    pieces.push((start, neg, &t[start..i]));
                    start = i + 1;
                    neg = c == b'-';
                } else if prev.is_empty() {
                    start = i + 1;
                    neg = c == b'-';
                }
            }
            _ => {}
        }
    }
    pieces.push((start, neg, &t[start..]));
    let mut ds = Vec::new();
    for (pos, neg, piece) in pieces {
        let piece = piece.trim();
        let d = if let Some(rest) = piece.strip_prefix("1/") {
            ring.parse(rest).map_err(|e| shift_pos(e, pos + 2))?
        } else {
            let c = ring.parse(piece).map_err(|e| shift_pos(e, pos))?;
            match c.constant_value() {
                Some(v) if !v.is_zero() => ring.constant(v.inv()),
                _ => {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("term '{piece}' is neither 1/d nor a nonzero constant"),
                    })
                }
            }
        };
        if d.is_zero() {
            return Err(Error::Parse {
                pos,
                msg: "zero denominator".into(),
            });
        }
        ds.push(if neg { -&d } else { d });
    }
    UnitFractionSum::new(ds)
}

fn shift_pos(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ring;
    use crate::ratfunc::ratfunc_equal;

    #[test]
    fn parse_forms() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let s = parse_ufs("1 + 1/x - 1/(x+1)", &r).unwrap();
        let names: Vec<String> = s.denominators.iter().map(|d| r.fmt(d)).collect();
        assert_eq!(names, vec!["1", "x", "-x - 1"]);
        let j = parse_ufs(r#"{"denominators": ["1", "x"]}"#, &r).unwrap();
        assert_eq!(j.len(), 2);
        let c = parse_ufs("2 + 1/y", &r).unwrap();
        assert_eq!(r.fmt(&c.denominators[0]), "1/2");
    }

    #[test]
    fn value_of_split() {
        let r = parse_ring("QQ[x]").unwrap();
        let s = parse_ufs("1/(x+1) + 1/(x^2+x)", &r).unwrap();
        let v = to_ratfunc(&s, &r);
        assert!(ratfunc_equal(&v, &RatFunc::recip_of(&r.parse("x").unwrap()).unwrap()));
    }
}
