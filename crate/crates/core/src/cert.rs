//! Certificates. Membership is certified by an expression tree built from
//! unit fractions `1/d` (d a nonzero ring element), scalars, sums and
//! products; replay evaluates the tree exactly. Non-membership is certified
//! by a degree or leading-form obstruction that replay recomputes.

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::Result;
use crate::field::Scalar;
use crate::poly::{Degree, Poly};
use crate::ratfunc::{ratfunc_equal, sum_many, RatFunc};
use crate::ring::{AmbientRing, WeightVector};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    /// `1/d`.
    Recip(Poly),
    Const(Scalar),
    Add(Vec<Arc<Expr>>),
    Mul(Vec<Arc<Expr>>),
}

impl Expr {
    pub fn recip(d: Poly) -> Arc<Expr> {
        Arc::new(Expr::Recip(d))
    }

    pub fn constant(c: Scalar) -> Arc<Expr> {
        Arc::new(Expr::Const(c))
    }

    pub fn add(items: Vec<Arc<Expr>>) -> Arc<Expr> {
        if items.len() == 1 {
            return items.into_iter().next().unwrap();
        }
        Arc::new(Expr::Add(items))
    }

    pub fn mul(items: Vec<Arc<Expr>>) -> Arc<Expr> {
        let items: Vec<Arc<Expr>> = items
            .into_iter()
            .filter(|e| !matches!(&**e, Expr::Const(c) if c.is_one()))
            .collect();
        match items.len() {
            0 => panic!("Expr::mul of only unit constants; use Expr::constant"),
            1 => items.into_iter().next().unwrap(),
            _ => Arc::new(Expr::Mul(items)),
        }
    }

    /// `c * e`.
    pub fn scaled(c: Scalar, e: Arc<Expr>) -> Arc<Expr> {
        if c.is_one() {
            return e;
        }
        Arc::new(Expr::Mul(vec![Expr::constant(c), e]))
    }

    /// Exact value. Shared subtrees are evaluated once.
    pub fn eval(self: &Arc<Self>, field_one: &Poly) -> Result<RatFunc> {
        let mut memo: HashMap<*const Expr, RatFunc> = HashMap::new();
        eval_rec(self, field_one, &mut memo)
    }

    /// Every `1/d` leaf.
    pub fn recip_leaves(&self) -> Vec<&Poly> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Poly>) {
        match self {
            Expr::Recip(d) => out.push(d),
            Expr::Const(_) => {}
            Expr::Add(v) | Expr::Mul(v) => v.iter().for_each(|e| e.collect_leaves(out)),
        }
    }

    /// Expands into a list of unit-fraction denominators.
    pub fn flatten(&self, one: &Poly) -> Vec<Poly> {
        match self {
            Expr::Recip(d) => vec![d.clone()],
            Expr::Const(c) if c.is_zero() => vec![],
            Expr::Const(c) => vec![one.scale(&c.inv())],
            Expr::Add(v) => v.iter().flat_map(|e| e.flatten(one)).collect(),
            Expr::Mul(v) => {
                let mut acc = vec![one.clone()];
                for e in v {
                    let f = e.flatten(one);
                    let mut next = Vec::with_capacity(acc.len() * f.len());
                    for a in &acc {
                        for b in &f {
                            next.push(a * b);
                        }
                    }
                    acc = next;
                }
                acc
            }
        }
    }

    /// Number of terms `flatten` would produce, without building them.
    pub fn flat_len(&self) -> u128 {
        match self {
            Expr::Recip(_) => 1,
            Expr::Const(c) => u128::from(!c.is_zero()),
            Expr::Add(v) => v.iter().map(|e| e.flat_len()).sum(),
            Expr::Mul(v) => v.iter().map(|e| e.flat_len()).fold(1u128, |a, b| a.saturating_mul(b)),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Expr::Recip(_) | Expr::Const(_) => 1,
            Expr::Add(v) | Expr::Mul(v) => 1 + v.iter().map(|e| e.node_count()).sum::<usize>(),
        }
    }

    pub fn to_json(&self, ring: &AmbientRing) -> Value {
        match self {
            Expr::Recip(d) => json!({ "recip": ring.fmt(d) }),
            Expr::Const(c) => json!({ "scalar": c.to_string() }),
            Expr::Add(v) => json!({ "add": v.iter().map(|e| e.to_json(ring)).collect::<Vec<_>>() }),
            Expr::Mul(v) => json!({ "mul": v.iter().map(|e| e.to_json(ring)).collect::<Vec<_>>() }),
        }
    }

    /// Copy with one coefficient changed: the first `1/d` leaf gets `d + 1`,
    /// or failing that the first scalar gets `c + 1`. Used by mutation tests.
    pub fn mutated(self: &Arc<Self>) -> Arc<Expr> {
        let mut done = false;
        mutate_rec(self, &mut done)
    }
}

fn mutate_rec(e: &Arc<Expr>, done: &mut bool) -> Arc<Expr> {
    if *done {
        return e.clone();
    }
    match &**e {
        Expr::Recip(d) => {
            *done = true;
            let one = Poly::one(d.field(), d.nvars());
            // Keep the leaf nonzero.
            let bumped = &d.clone() + &one;
            let d2 = if bumped.is_zero() { &bumped + &one } else { bumped };
            Arc::new(Expr::Recip(d2))
        }
        Expr::Const(c) => {
            *done = true;
            Arc::new(Expr::Const(c.add(&c.field().one())))
        }
        Expr::Add(v) => Arc::new(Expr::Add(v.iter().map(|x| mutate_rec(x, done)).collect())),
        Expr::Mul(v) => Arc::new(Expr::Mul(v.iter().map(|x| mutate_rec(x, done)).collect())),
    }
}

fn eval_rec(e: &Arc<Expr>, one: &Poly, memo: &mut HashMap<*const Expr, RatFunc>) -> Result<RatFunc> {
    let key = Arc::as_ptr(e);
    if let Some(v) = memo.get(&key) {
        return Ok(v.clone());
    }
    let v = match &**e {
        Expr::Recip(d) => RatFunc::recip_of(d)?,
        Expr::Const(c) => RatFunc::from_poly(one.scale(c)),
        Expr::Add(v) => {
            if v.is_empty() {
                RatFunc::from_poly(one.scale(&one.field().zero()))
            } else {
                let parts = v.iter().map(|x| eval_rec(x, one, memo)).collect::<Result<Vec<_>>>()?;
                sum_many(&parts)
            }
        }
        Expr::Mul(v) => {
            let mut acc = RatFunc::from_poly(one.clone());
            for x in v {
                acc = acc.mul(&eval_rec(x, one, memo)?);
            }
            acc
        }
    };
    memo.insert(key, v.clone());
    Ok(v)
}

/// Proof that `a/b` lies in the reciprocal complement.
#[derive(Clone, Debug)]
pub struct InCertificate {
    pub expression: Arc<Expr>,
    pub claimed_value: RatFunc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OutKind {
    /// `w`-degree of the numerator exceeds that of the denominator.
    Weight(WeightVector),
    /// Equal `w`-degrees with non-proportional leading forms; `w` positive.
    LeadingForm(WeightVector),
    /// Univariate K[x]: numerator degree exceeds denominator degree.
    DvrValuation,
}

/// Proof that `a/b` is not in the reciprocal complement. The obstruction is
/// stated for `(a - shift*b)/b`, which is a member exactly when `a/b` is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutCertificate {
    pub kind: OutKind,
    pub shift: Option<Scalar>,
}

#[derive(Clone, Debug)]
pub enum MembershipVerdict {
    In(InCertificate),
    Out(OutCertificate),
    Unknown { caps: Value },
}

impl MembershipVerdict {
    pub fn tag(&self) -> &'static str {
        match self {
            MembershipVerdict::In(_) => "in",
            MembershipVerdict::Out(_) => "out",
            MembershipVerdict::Unknown { .. } => "unknown",
        }
    }

    pub fn is_in(&self) -> bool {
        matches!(self, MembershipVerdict::In(_))
    }

    pub fn is_out(&self) -> bool {
        matches!(self, MembershipVerdict::Out(_))
    }

    pub fn to_json(&self, ring: &AmbientRing) -> Value {
        match self {
            MembershipVerdict::In(c) => json!({
                "verdict": "in",
                "certificate": c.expression.to_json(ring),
                "caps": Value::Null,
            }),
            MembershipVerdict::Out(c) => json!({
                "verdict": "out",
                "certificate": out_json(c),
                "caps": Value::Null,
            }),
            MembershipVerdict::Unknown { caps } => json!({
                "verdict": "unknown",
                "certificate": Value::Null,
                "caps": caps,
            }),
        }
    }
}

fn out_json(c: &OutCertificate) -> Value {
    let shift = c.shift.as_ref().map(|s| Value::String(s.to_string())).unwrap_or(Value::Null);
    match &c.kind {
        OutKind::Weight(w) => json!({ "weight": w.0, "shift": shift }),
        OutKind::LeadingForm(w) => json!({ "leading_form": w.0, "shift": shift }),
        OutKind::DvrValuation => json!({ "dvr_valuation": true, "shift": shift }),
    }
}

/// Leading forms proportional (`f = c*g` for a scalar `c`)?
pub fn proportional(f: &Poly, g: &Poly) -> Option<Scalar> {
    if f.is_zero() || g.is_zero() || f.num_terms() != g.num_terms() {
        return None;
    }
    let c = f.leading_coeff().div(&g.leading_coeff());
    (g.scale(&c) == *f).then_some(c)
}

/// Replays a verdict for `a/b` from scratch. `Unknown` never verifies.
pub fn verify_certificate(v: &MembershipVerdict, a: &Poly, b: &Poly, ring: &AmbientRing) -> bool {
    if b.is_zero() || !ring.contains(a) || !ring.contains(b) {
        return false;
    }
    match v {
        MembershipVerdict::In(c) => verify_in(&c.expression, a, b, ring),
        MembershipVerdict::Out(c) => verify_out(c, a, b, ring),
        MembershipVerdict::Unknown { .. } => false,
    }
}

/// Checks that the tree only uses nonzero ring elements as denominators and
/// evaluates to `a/b`.
pub fn verify_in(e: &Arc<Expr>, a: &Poly, b: &Poly, ring: &AmbientRing) -> bool {
    if e.recip_leaves().iter().any(|d| d.is_zero() || !ring.contains(d)) {
        return false;
    }
    match e.eval(&ring.one()) {
        Ok(val) => match RatFunc::new(a.clone(), b.clone()) {
            Ok(target) => ratfunc_equal(&val, &target),
            Err(_) => false,
        },
        Err(_) => false,
    }
}

fn verify_out(c: &OutCertificate, a: &Poly, b: &Poly, ring: &AmbientRing) -> bool {
    let a2 = match &c.shift {
        Some(s) => a - &b.scale(s),
        None => a.clone(),
    };
    if a2.is_zero() {
        return false;
    }
    match &c.kind {
        OutKind::Weight(w) => {
            w.0.len() == ring.nvars() && w.0.iter().any(|&x| x > 0) && a2.weighted_degree(&w.0) > b.weighted_degree(&w.0)
        }
        OutKind::LeadingForm(w) => {
            if w.0.len() != ring.nvars() || !w.is_positive() {
                return false;
            }
            a2.weighted_degree(&w.0) == b.weighted_degree(&w.0)
                && proportional(&a2.leading_form(&w.0), &b.leading_form(&w.0)).is_none()
        }
        OutKind::DvrValuation => {
            ring.is_univariate_full() && matches!((a2.total_degree(), b.total_degree()), (Degree::Fin(x), Degree::Fin(y)) if x > y)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ring;

    #[test]
    fn verifies_simple_split() {
        let r = parse_ring("QQ[x]").unwrap();
        let p = |s: &str| r.parse(s).unwrap();
        // x/(x+1) = 1 - 1/(x+1)
        let e = Expr::add(vec![Expr::constant(r.field.one()), Expr::recip(p("-x-1"))]);
        assert!(verify_in(&e, &p("x"), &p("x+1"), &r));
        assert!(!verify_in(&e.mutated(), &p("x"), &p("x+1"), &r));
        assert_eq!(e.flatten(&r.one()).len(), 2);
    }

    #[test]
    fn out_certificate_replay() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let p = |s: &str| r.parse(s).unwrap();
        let w = MembershipVerdict::Out(OutCertificate {
            kind: OutKind::Weight(WeightVector(vec![1, 0])),
            shift: None,
        });
        assert!(verify_certificate(&w, &p("x"), &p("y"), &r));
        assert!(!verify_certificate(&w, &p("y"), &p("x"), &r));
        let lf = MembershipVerdict::Out(OutCertificate {
            kind: OutKind::LeadingForm(WeightVector(vec![1, 1])),
            shift: None,
        });
        assert!(verify_certificate(&lf, &p("x+y"), &p("x-y"), &r));
        assert!(!verify_certificate(&lf, &p("2*x-2*y"), &p("x-y"), &r));
    }

    #[test]
    fn rejects_denominator_outside_subalgebra() {
        let r = parse_ring("QQ[x;gens=x^2,x^3]").unwrap();
        let x = r.var(0);
        let e = Expr::recip(x.clone());
        assert!(!verify_in(&e, &r.one(), &x, &r));
    }
}
