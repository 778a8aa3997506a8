//! Units `u + sum 1/f_i` (u a nonzero scalar, f_i nonconstant) and their
//! inverses as unit-fraction sums.
//!
//! With `a_S = 1 + sum_{i in S} 1/f_i`, `F_S = prod_{i in S} f_i` and
//! `N_S = F_S a_S` (a polynomial), the inverse satisfies, for any `k in S`
//! and `S' = S - {k}`,
//!
//! ```text
//! 1/a_S = (1/a_S') (1 - 1/(f_k + 1)) (1 + sum_{i in S'} G(S - {k,i}, S))
//! G(T, S) = f_T / N_S               (T a proper subset of S)
//! G({}, S) = 1/N_S
//! G(T, S) = G(T - k, S - k) - (1/a_{S-k}) G(T - k, S)      (k in T)
//! ```
//!
//! Both recursions only ever ask for `1/a` of strictly smaller index sets, so
//! the inverse is a finite tree of sums and products of unit fractions.

use std::collections::HashMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::cert::Expr;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::poly::Poly;
use crate::recip::UnitFractionSum;
use crate::ring::AmbientRing;

/// Constant part `u` and nonconstant denominators of a sum.
fn split_constant(s: &UnitFractionSum, ring: &AmbientRing) -> (Scalar, Vec<Poly>) {
    let mut u = ring.field.zero();
    let mut rest = Vec::new();
    for d in &s.denominators {
        match d.constant_value() {
            Some(c) => u = u.add(&c.inv()),
            None => rest.push(d.clone()),
        }
    }
    (u, rest)
}

/// In a graded domain with degree-zero part K, `u + sum 1/f_i` is a unit of
/// the reciprocal complement exactly when its constant part `u` is nonzero.
pub fn is_unit_graded(s: &UnitFractionSum, ring: &AmbientRing) -> bool {
    !split_constant(s, ring).0.is_zero()
}

struct InverseBuilder<'a> {
    fs: &'a [Poly],
    one: Poly,
    inv_memo: HashMap<u32, Arc<Expr>>,
    g_memo: HashMap<(u32, u32), Arc<Expr>>,
}

fn members(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

fn highest(mask: u32) -> usize {
    31 - mask.leading_zeros() as usize
}

impl<'a> InverseBuilder<'a> {
    /// `N_S = F_S + sum_{i in S} F_S / f_i`.
    fn n_poly(&self, s: u32) -> Poly {
        let idx: Vec<usize> = members(s).collect();
        let mut total = self.one.clone();
        for &i in &idx {
            total = &total * &self.fs[i];
        }
        for &skip in &idx {
            let mut t = self.one.clone();
            for &j in &idx {
                if j != skip {
                    t = &t * &self.fs[j];
                }
            }
            total = &total + &t;
        }
        total
    }

    fn inv(&mut self, s: u32) -> Arc<Expr> {
        if s == 0 {
            return Expr::constant(self.one.field().one());
        }
        if let Some(e) = self.inv_memo.get(&s) {
            return e.clone();
        }
        let k = highest(s);
        let rest = s & !(1 << k);
        let field = self.one.field();
        let fk1 = &self.fs[k] + &self.one;
        let mut tail = vec![Expr::constant(field.one())];
        for i in members(rest) {
            tail.push(self.g(s & !(1 << k) & !(1 << i), s));
        }
        let e = Expr::mul(vec![
            self.inv(rest),
            Expr::add(vec![Expr::constant(field.one()), Expr::recip(-&fk1)]),
            Expr::add(tail),
        ]);
        self.inv_memo.insert(s, e.clone());
        e
    }

    fn g(&mut self, t: u32, s: u32) -> Arc<Expr> {
        if let Some(e) = self.g_memo.get(&(t, s)) {
            return e.clone();
        }
        let e = if t == 0 {
            Expr::recip(self.n_poly(s))
        } else {
            let k = highest(t);
            let t2 = t & !(1 << k);
            let s2 = s & !(1 << k);
            let minus_one = self.one.field().from_i64(-1);
            Expr::add(vec![
                self.g(t2, s2),
                Arc::new(Expr::Mul(vec![Expr::constant(minus_one), self.inv(s2), self.g(t2, s)])),
            ])
        };
        self.g_memo.insert((t, s), e.clone());
        e
    }
}

/// Tree for `(u + sum 1/f_i)^{-1}`; `None` when `u = 0`.
pub fn inverse_tree(s: &UnitFractionSum, ring: &AmbientRing) -> Option<Arc<Expr>> {
    let (u, fs) = split_constant(s, ring);
    if u.is_zero() {
        return None;
    }
    if fs.len() >= 32 {
        return None;
    }
    // u + sum 1/f_i = u (1 + sum 1/(u f_i))
    let gs: Vec<Poly> = fs.iter().map(|f| f.scale(&u)).collect();
    let mut b = InverseBuilder {
        fs: &gs,
        one: ring.one(),
        inv_memo: HashMap::new(),
        g_memo: HashMap::new(),
    };
    let full = if gs.is_empty() { 0 } else { (1u32 << gs.len()) - 1 };
    let e = b.inv(full);
    Some(Expr::scaled(u.inv(), e))
}

/// Inverse of a unit as a flat unit-fraction sum. The flattened size grows
/// quickly with the number of nonconstant terms; exceeding the budget is
/// reported as `BudgetExhausted`.
pub fn invert_unit(s: &UnitFractionSum, ring: &AmbientRing, budget: &Budget) -> Result<UnitFractionSum> {
    let e = inverse_tree(s, ring).ok_or(Error::NotAUnit)?;
    let n = e.flat_len();
    budget.charge(n.min(u64::MAX as u128) as u64)?;
    UnitFractionSum::new(e.flatten(&ring.one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ring;
    use crate::ratfunc::{ratfunc_equal, RatFunc};
    use crate::recip::{parse_ufs, to_ratfunc};

    fn check_inverse(ring: &str, s: &str) -> usize {
        let r = parse_ring(ring).unwrap();
        let s = parse_ufs(s, &r).unwrap();
        let inv = invert_unit(&s, &r, &Budget::unlimited()).unwrap();
        let prod = to_ratfunc(&s, &r).mul(&to_ratfunc(&inv, &r));
        assert!(ratfunc_equal(&prod, &RatFunc::from_poly(r.one())));
        inv.len()
    }

    #[test]
    fn one_plus_reciprocal() {
        let r = parse_ring("QQ[x]").unwrap();
        let s = parse_ufs("1 + 1/x", &r).unwrap();
        let inv = invert_unit(&s, &r, &Budget::unlimited()).unwrap();
        let names: Vec<String> = inv.denominators.iter().map(|d| r.fmt(d)).collect();
        assert_eq!(names, vec!["1", "-x - 1"]);
    }

    #[test]
    fn inverse_sizes() {
        assert_eq!(check_inverse("QQ[x,y]", "1 + 1/x + 1/y"), 8);
        assert_eq!(check_inverse("QQ[x]", "2"), 1);
        assert_eq!(check_inverse("QQ[x,y]", "3 + 1/(x*y) - 1/(x+y^2)"), 8);
        assert_eq!(check_inverse("GF(5)[x,y]", "2 + 1/x + 1/(x+y) + 1/y^2"), 304);
    }

    #[test]
    fn non_unit_rejected() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let s = parse_ufs("1/x + 1/y", &r).unwrap();
        assert!(!is_unit_graded(&s, &r));
        assert_eq!(invert_unit(&s, &r, &Budget::unlimited()), Err(Error::NotAUnit));
        let t = parse_ufs("1 - 1 + 1/x", &r).unwrap();
        assert!(!is_unit_graded(&t, &r));
    }
}
