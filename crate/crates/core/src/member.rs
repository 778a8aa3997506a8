//! Membership of `a/b` in the reciprocal complement.
//!
//! Pipeline: exact degree test on K[x]; degree obstructions for a set of
//! weights; leading-form reduction in the ring grading; then a search for an
//! explicit unit-fraction expression. The search tries, in order: direct
//! divisibility, the univariate Fibonacci expansion, the divisor closure of
//! `b`, cancelling a common factor, multipliers `c` with `c a` in the span of
//! the divisors of `c b`, splitting along a factorization of `b`, the shift
//! `a/b = (a/(b+u)) (1 + u/b)`, and the partial-term split
//! `a/b = (a/g) (1 + r/g)^{-1}` for `b = g + r`.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde_json::json;

use crate::budget::{Budget, DEFAULT_BUDGET};
use crate::cert::{proportional, Expr, InCertificate, MembershipVerdict, OutCertificate, OutKind};
use crate::error::{Error, Result};
use crate::factor::{divisors_in_ring, FactorCaps, FactoredPoly, Factorizer};
use crate::factroid::TrackedSpan;
use crate::field::Scalar;
use crate::poly::{Monomial, Poly};
use crate::ratfunc::RatFunc;
use crate::recip::{inverse_tree, UnitFractionSum};
use crate::ring::{AmbientRing, WeightVector};

#[derive(Clone, Debug)]
pub struct MemberConfig {
    /// Weights tried for degree obstructions; `None` uses the ring defaults.
    pub weights: Option<Vec<WeightVector>>,
    /// Largest total degree of a multiplier `c`.
    pub c_cap: u32,
    pub caps: FactorCaps,
    pub closure_steps: usize,
    pub budget: u64,
    /// Known divisors offered to the factorizer.
    pub hints: Vec<Poly>,
    /// Worker threads for the multiplier search (1 = sequential).
    pub jobs: usize,
    pub max_depth: usize,
    /// Multipliers tried per subproblem.
    pub multiplier_limit: usize,
}

impl Default for MemberConfig {
    fn default() -> Self {
        MemberConfig {
            weights: None,
            c_cap: 4,
            caps: FactorCaps {
                degree_cap: crate::factor::DEFAULT_DEGREE_CAP,
                enumeration_cap: 1 << 16,
            },
            closure_steps: 3,
            budget: DEFAULT_BUDGET,
            hints: Vec::new(),
            jobs: 1,
            max_depth: 5,
            multiplier_limit: 256,
        }
    }
}

type Key = (Poly, Poly);

pub struct Engine {
    pub ring: AmbientRing,
    pub cfg: MemberConfig,
    fz: Factorizer,
    budget: Budget,
    memo: Mutex<HashMap<Key, Option<Arc<Expr>>>>,
    active: Mutex<HashSet<Key>>,
}

fn deg(f: &Poly) -> u64 {
    f.total_degree().finite().unwrap_or(0)
}

/// Multiplies two factorizations (factor lists merged by equality).
fn merge(a: &FactoredPoly, b: &FactoredPoly) -> FactoredPoly {
    let mut out = a.clone();
    out.unit = a.unit.mul(&b.unit);
    out.complete = a.complete && b.complete;
    for (f, m) in &b.factors {
        match out.factors.iter_mut().find(|(g, _)| g == f) {
            Some(e) => e.1 += m,
            None => out.factors.push((f.clone(), *m)),
        }
    }
    out
}

fn atoms(f: &FactoredPoly) -> Vec<Poly> {
    f.factors
        .iter()
        .flat_map(|(p, m)| std::iter::repeat_n(p.clone(), *m as usize))
        .collect()
}

/// Fibonacci expansion of `a/b` for polynomials in the single variable `v`
/// with `deg a <= deg b`: subtract the constant `lc a / lc b` when degrees
/// agree, otherwise write `b = q a + r` and use `a/b = 1/q - r/(q b)`. The
/// numerator degree strictly decreases.
pub fn fibonacci_expr(a: &Poly, b: &Poly, v: usize) -> Option<Arc<Expr>> {
    if !a.is_zero() && a.deg_in(v) > b.deg_in(v) {
        return None;
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut parts = Vec::new();
    while !a.is_zero() {
        if a.deg_in(v) == b.deg_in(v) {
            let l = a.leading_coeff().div(&b.leading_coeff());
            a = &a - &b.scale(&l);
            parts.push(Expr::constant(l));
        } else {
            let (q, r) = b.div_rem_in(&a, v);
            parts.push(Expr::recip(q.clone()));
            a = -&r;
            b = &q * &b;
        }
    }
    Some(Expr::add(parts))
}

impl Engine {
    pub fn new(ring: &AmbientRing, cfg: MemberConfig) -> Self {
        let fz = Factorizer::new(ring, cfg.caps);
        fz.add_hints(&cfg.hints);
        let budget = Budget::new(cfg.budget);
        Engine {
            ring: ring.clone(),
            cfg,
            fz,
            budget,
            memo: Mutex::new(HashMap::new()),
            active: Mutex::new(HashSet::new()),
        }
    }

    pub fn factorizer(&self) -> &Factorizer {
        &self.fz
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    fn weights(&self) -> Vec<WeightVector> {
        self.cfg.weights.clone().unwrap_or_else(|| self.ring.default_weights())
    }

    /// Positive weight used for leading-form reduction.
    fn lf_weight(&self) -> WeightVector {
        if self.ring.grading.is_positive() {
            self.ring.grading.clone()
        } else {
            WeightVector::ones(self.ring.nvars())
        }
    }

    fn caps_json(&self) -> serde_json::Value {
        json!({
            "c_cap": self.cfg.c_cap,
            "degree_cap": self.cfg.caps.degree_cap,
            "enumeration_cap": self.cfg.caps.enumeration_cap,
            "closure_steps": self.cfg.closure_steps,
            "budget": self.cfg.budget,
            "budget_used": self.budget.used(),
        })
    }

    pub fn member(&self, a: &Poly, b: &Poly) -> Result<MembershipVerdict> {
        self.ring.check(a)?;
        self.ring.check(b)?;
        if b.is_zero() {
            return Err(Error::Precondition("denominator is zero".into()));
        }
        let target = RatFunc::new(a.clone(), b.clone())?;
        let inn = |e: Arc<Expr>| {
            MembershipVerdict::In(InCertificate {
                expression: e,
                claimed_value: target.clone(),
            })
        };
        if a.is_zero() {
            return Ok(inn(Expr::add(vec![])));
        }
        if self.ring.is_univariate_full() {
            return Ok(if deg(a) <= deg(b) {
                inn(fibonacci_expr(a, b, 0).expect("degree condition holds"))
            } else {
                MembershipVerdict::Out(OutCertificate {
                    kind: OutKind::DvrValuation,
                    shift: None,
                })
            });
        }
        let field = self.ring.field;
        let mut shift = field.zero();
        let mut a2 = a.clone();
        let shift_opt = |s: &Scalar| (!s.is_zero()).then(|| s.clone());
        let lf = self.lf_weight();
        loop {
            for w in self.weights() {
                if a2.weighted_degree(&w.0) > b.weighted_degree(&w.0) {
                    return Ok(MembershipVerdict::Out(OutCertificate {
                        kind: OutKind::Weight(w),
                        shift: shift_opt(&shift),
                    }));
                }
            }
            if a2.weighted_degree(&lf.0) != b.weighted_degree(&lf.0) {
                break;
            }
            match proportional(&a2.leading_form(&lf.0), &b.leading_form(&lf.0)) {
                None => {
                    return Ok(MembershipVerdict::Out(OutCertificate {
                        kind: OutKind::LeadingForm(lf),
                        shift: shift_opt(&shift),
                    }))
                }
                Some(l) => {
                    a2 = &a2 - &b.scale(&l);
                    shift = shift.add(&l);
                    if a2.is_zero() {
                        return Ok(inn(Expr::constant(shift)));
                    }
                }
            }
        }
        match self.solve(&a2, b, 0) {
            Some(e) => {
                let e = if shift.is_zero() {
                    e
                } else {
                    Expr::add(vec![Expr::constant(shift), e])
                };
                Ok(inn(e))
            }
            None => Ok(MembershipVerdict::Unknown { caps: self.caps_json() }),
        }
    }

    /// Explicit expression for `a/b`, if the search finds one.
    pub fn decompose_expr(&self, a: &Poly, b: &Poly) -> Option<Arc<Expr>> {
        self.solve(a, b, 0)
    }

    fn obstructed(&self, a: &Poly, b: &Poly) -> bool {
        self.weights()
            .iter()
            .any(|w| a.weighted_degree(&w.0) > b.weighted_degree(&w.0))
    }

    pub(crate) fn solve(&self, a: &Poly, b: &Poly, depth: usize) -> Option<Arc<Expr>> {
        if a.is_zero() {
            return Some(Expr::add(vec![]));
        }
        if depth > self.cfg.max_depth || self.budget.tick().is_err() {
            return None;
        }
        let l = b.leading_coeff().inv();
        let key = (a.scale(&l), b.scale(&l));
        if let Some(r) = self.memo.lock().unwrap().get(&key) {
            return r.clone();
        }
        if !self.active.lock().unwrap().insert(key.clone()) {
            return None;
        }
        let r = self.solve_inner(&key.0, &key.1, depth);
        self.active.lock().unwrap().remove(&key);
        if r.is_some() || !self.budget.exhausted() {
            self.memo.lock().unwrap().insert(key, r.clone());
        }
        r
    }

    fn solve_inner(&self, a: &Poly, b: &Poly, depth: usize) -> Option<Arc<Expr>> {
        let ring = &self.ring;
        if let Ok(q) = a.divexact(b) {
            return q.constant_value().map(Expr::constant);
        }
        if let Ok(q) = b.divexact(a) {
            if ring.contains(&q) {
                return Some(Expr::recip(q));
            }
        }
        if self.obstructed(a, b) {
            return None;
        }
        let lf = self.lf_weight();
        if a.weighted_degree(&lf.0) == b.weighted_degree(&lf.0) {
            let l = proportional(&a.leading_form(&lf.0), &b.leading_form(&lf.0))?;
            let rest = a - &b.scale(&l);
            let e = self.solve(&rest, b, depth + 1)?;
            return Some(Expr::add(vec![Expr::constant(l), e]));
        }
        if !ring.is_subalgebra() {
            let mut vs = a.vars_used();
            vs.extend(b.vars_used());
            vs.sort();
            vs.dedup();
            if vs.len() == 1 {
                return fibonacci_expr(a, b, vs[0]);
            }
        }
        if let Some(e) = self.by_closure(a, b) {
            return Some(e);
        }
        let fa = self.fz.factor(a);
        let fb = self.fz.factor(b);
        if let Some((p, _)) = fa.factors.iter().find(|(p, _)| fb.factors.iter().any(|(q, _)| q == p)) {
            let (a1, b1) = (a.divexact(p).unwrap(), b.divexact(p).unwrap());
            if ring.contains(&a1) && ring.contains(&b1) {
                if let Some(e) = self.solve(&a1, &b1, depth + 1) {
                    return Some(e);
                }
            }
        }
        if let Some(e) = self.by_multiplier(a, b, &fb) {
            return Some(e);
        }
        if let Some(e) = self.by_factor_split(a, b, &fa, &fb, depth) {
            return Some(e);
        }
        if let Some(e) = self.by_shift(a, b, depth) {
            return Some(e);
        }
        self.by_partial_split(a, b, depth)
    }

    /// `a` in the divisor closure of `b` (closure steps capped).
    fn by_closure(&self, a: &Poly, b: &Poly) -> Option<Arc<Expr>> {
        let mut t = TrackedSpan::new(deg(b));
        t.add(b.clone(), Some(Expr::constant(self.ring.field.one())));
        for _ in 0..self.cfg.closure_steps {
            match t.step(&self.ring, &self.fz, &self.budget) {
                Ok(true) => {}
                _ => break,
            }
            if let Some(Some(e)) = t.cert_for(a) {
                return Some(e);
            }
        }
        None
    }

    /// Candidate multipliers in increasing degree.
    fn multipliers(&self, b: &Poly, fb: &FactoredPoly) -> Vec<Poly> {
        let ring = &self.ring;
        let cap = self.cfg.c_cap as u64;
        let limit = self.cfg.multiplier_limit;
        if ring.field.is_finite() {
            let mut out = monic_ring_polys(ring, cap, limit + 1);
            out.retain(|c| !c.is_constant());
            out.truncate(limit);
            return out;
        }
        let mut pool: Vec<Poly> = fb.factors.iter().map(|(p, _)| p.clone()).collect();
        for u in ring.field.scalar_sample() {
            let s = b + &ring.constant(u);
            if !s.is_zero() && !s.is_constant() {
                pool.extend(self.fz.factor(&s).factors.into_iter().map(|(p, _)| p));
            }
        }
        for v in 0..ring.nvars() {
            for k in [0i64, 1, -1] {
                pool.push(&ring.var(v) + &ring.int(k));
            }
        }
        pool.extend(self.cfg.hints.iter().map(|h| h.monic()));
        pool.sort();
        pool.dedup();
        let mut out = pool.clone();
        for i in 0..pool.len() {
            for j in i..pool.len() {
                out.push(&pool[i] * &pool[j]);
            }
        }
        out.retain(|c| !c.is_constant() && deg(c) <= cap && ring.contains(c));
        out.sort_by(|x, y| (deg(x), x).cmp(&(deg(y), y)));
        out.dedup();
        out.truncate(limit);
        out
    }

    /// `c a` in the span of the divisors of `c b`.
    fn multiplier_check(&self, a: &Poly, b: &Poly, fb: &FactoredPoly, c: &Poly) -> Option<Arc<Expr>> {
        if self.budget.tick().is_err() {
            return None;
        }
        linear_certificate(&self.ring, &self.fz, a, b, fb, c)
    }

    fn by_multiplier(&self, a: &Poly, b: &Poly, fb: &FactoredPoly) -> Option<Arc<Expr>> {
        let cands = self.multipliers(b, fb);
        if self.cfg.jobs > 1 {
            cands
                .par_iter()
                .find_map_first(|c| self.multiplier_check(a, b, fb, c))
        } else {
            cands.iter().find_map(|c| self.multiplier_check(a, b, fb, c))
        }
    }

    fn by_factor_split(
        &self,
        a: &Poly,
        b: &Poly,
        fa: &FactoredPoly,
        fb: &FactoredPoly,
        depth: usize,
    ) -> Option<Arc<Expr>> {
        let ring = &self.ring;
        let ba = atoms(fb);
        let aa = atoms(fa);
        if ba.len() < 2 || ba.len() > 5 || aa.len() > 5 {
            return None;
        }
        let prod = |xs: &[Poly], mask: u32| {
            xs.iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .fold(ring.one(), |acc, (_, p)| &acc * p)
        };
        let mut seen = HashSet::new();
        for mb in 1..(1u32 << ba.len()) - 1 {
            let b1 = prod(&ba, mb);
            let b2 = b.divexact(&b1).ok()?;
            if !ring.contains(&b1) || !ring.contains(&b2) {
                continue;
            }
            for ma in 0..(1u32 << aa.len()) {
                let a1 = prod(&aa, ma);
                let a2 = a.divexact(&a1).ok()?;
                if !ring.contains(&a1) || !ring.contains(&a2) {
                    continue;
                }
                if self.obstructed(&a1, &b1) || self.obstructed(&a2, &b2) {
                    continue;
                }
                if !seen.insert((a1.clone(), b1.clone())) {
                    continue;
                }
                let e1 = match self.solve(&a1, &b1, depth + 1) {
                    Some(e) => e,
                    None => continue,
                };
                if let Some(e2) = self.solve(&a2, &b2, depth + 1) {
                    return Some(Expr::mul(vec![e1, e2]));
                }
            }
        }
        None
    }

    fn by_shift(&self, a: &Poly, b: &Poly, depth: usize) -> Option<Arc<Expr>> {
        let ring = &self.ring;
        for u in ring.field.scalar_sample() {
            let b2 = b + &ring.constant(u.clone());
            if b2.is_zero() || b2.is_constant() {
                continue;
            }
            if self.fz.factor(&b2).len_with_multiplicity() < 2 {
                continue;
            }
            if let Some(e) = self.solve(a, &b2, depth + 1) {
                // b2/b = 1 + u/b
                let tail = Expr::add(vec![Expr::constant(ring.field.one()), Expr::recip(b.scale(&u.inv()))]);
                return Some(Expr::mul(vec![e, tail]));
            }
        }
        None
    }

    fn by_partial_split(&self, a: &Poly, b: &Poly, depth: usize) -> Option<Arc<Expr>> {
        let ring = &self.ring;
        let terms: Vec<(Monomial, Scalar)> = b.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        if terms.len() < 2 || terms.len() > 8 {
            return None;
        }
        let n = terms.len();
        let mut masks: Vec<u32> = (1..(1u32 << n) - 1).filter(|m| m.count_ones() <= 2).collect();
        masks.sort_by_key(|m| m.count_ones());
        for mask in masks {
            let r = Poly::from_terms(
                ring.field,
                ring.nvars(),
                terms
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, t)| t.clone()),
            );
            let g = b - &r;
            if ring.degree(&r) >= ring.degree(&g) {
                continue;
            }
            if self.fz.factor(&g).len_with_multiplicity() < 2 && a.divexact(&g).is_err() && g.divexact(a).is_err() {
                continue;
            }
            let er = match self.solve(&r, &g, depth + 1) {
                Some(e) => e,
                None => continue,
            };
            if er.flat_len() > 8 {
                continue;
            }
            let mut dens = vec![ring.one()];
            dens.extend(er.flatten(&ring.one()));
            let theta = match UnitFractionSum::new(dens) {
                Ok(t) => t,
                Err(_) => continue,
            };
            let inv = match inverse_tree(&theta, ring) {
                Some(e) => e,
                None => continue,
            };
            if let Some(ea) = self.solve(a, &g, depth + 1) {
                return Some(Expr::mul(vec![ea, inv]));
            }
        }
        None
    }
}

/// `c a` in the span of the ring divisors of `c b`: then
/// `a/b = sum l_i / (c b / e_i)` for `c a = sum l_i e_i`.
pub(crate) fn linear_certificate(
    ring: &AmbientRing,
    fz: &Factorizer,
    a: &Poly,
    b: &Poly,
    fb: &FactoredPoly,
    c: &Poly,
) -> Option<Arc<Expr>> {
    let ca = c * a;
    let cb = c * b;
    if ca.total_degree() > cb.total_degree() {
        return None;
    }
    let fcb = merge(&fz.factor(c), fb);
    let divs = divisors_in_ring(&fcb, ring).ok()?;
    let mut t = TrackedSpan::new(deg(&cb));
    for d in divs {
        let cof = cb.divexact(&d).ok()?;
        t.add(d, Some(Expr::recip(cof)));
    }
    t.cert_for(&ca).flatten()
}

/// Monic ring elements of total degree at most `cap`, by increasing degree
/// and graded-lex within a degree, at most `limit` of them.
pub fn monic_ring_polys(ring: &AmbientRing, cap: u64, limit: usize) -> Vec<Poly> {
    let field = ring.field;
    let p = field.size().expect("finite field") as u32;
    let monos = ring.monomials_up_to(cap);
    let mut out = Vec::new();
    for (li, lead) in monos.iter().enumerate() {
        let lower = &monos[..li];
        let mut digits = vec![0u32; lower.len()];
        loop {
            if out.len() >= limit {
                return out;
            }
            let mut f = Poly::monomial(field, lead.clone(), field.one());
            for (m, &d) in lower.iter().zip(&digits) {
                if d != 0 {
                    f.add_term(m.clone(), field.from_i64(d as i64));
                }
            }
            out.push(f);
            let mut i = 0;
            loop {
                if i == digits.len() {
                    break;
                }
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
    }
    out
}

/// Combinations of `basis` with first nonzero coefficient 1, over GF(p).
pub fn monic_combinations(basis: &[Poly], field: crate::field::FieldSpec) -> Vec<Poly> {
    let p = field.size().expect("finite field");
    let mut out = Vec::new();
    for lead in 0..basis.len() {
        let tail = &basis[lead + 1..];
        let count = p.pow(tail.len() as u32);
        for mut k in 0..count {
            let mut f = basis[lead].clone();
            for t in tail {
                let d = k % p;
                k /= p;
                if d != 0 {
                    f = &f + &t.scale(&field.from_i64(d as i64));
                }
            }
            out.push(f);
        }
    }
    out
}

/// Convenience wrapper with default configuration.
pub fn member(a: &Poly, b: &Poly, ring: &AmbientRing) -> Result<MembershipVerdict> {
    Engine::new(ring, MemberConfig::default()).member(a, b)
}

/// Unit-fraction decomposition of `a/b`.
pub fn decompose(a: &Poly, b: &Poly, ring: &AmbientRing, cfg: MemberConfig) -> Result<UnitFractionSum> {
    let engine = Engine::new(ring, cfg);
    match engine.member(a, b)? {
        MembershipVerdict::In(c) => UnitFractionSum::new(c.expression.flatten(&ring.one())),
        MembershipVerdict::Out(_) => Err(Error::NoDecomposition("not a member".into())),
        MembershipVerdict::Unknown { .. } => Err(Error::NoDecomposition(format!(
            "search exhausted after {} steps",
            engine.budget().used()
        ))),
    }
}

/// Result of the exhaustive finite-field oracle.
#[derive(Clone, Debug)]
pub enum OracleVerdict {
    In { multiplier: Poly, certificate: Arc<Expr> },
    /// No witness with multipliers up to the stated degree.
    OutAtBound { c_cap: u32, enumeration_cap: u64 },
    Unknown(String),
}

#[derive(Clone, Copy, Debug)]
pub struct OracleCaps {
    pub c_cap: u32,
    pub enumeration_cap: u64,
    pub closure_steps: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            c_cap: 4,
            enumeration_cap: crate::factor::DEFAULT_ENUMERATION_CAP,
            closure_steps: 8,
        }
    }
}

/// Brute-force search over GF(p): every monic multiplier `c` in the ring with
/// `deg c <= c_cap` (1 first, then increasing degree, graded-lex), first for
/// `c a` in the span of the divisors of `c b`, then for `c a` in the divisor
/// closure of `c b`.
pub fn oracle_member_gf(a: &Poly, b: &Poly, ring: &AmbientRing, caps: OracleCaps) -> Result<OracleVerdict> {
    if !ring.field.is_finite() {
        return Err(Error::UnsupportedRing("oracle needs a finite field".into()));
    }
    ring.check(a)?;
    ring.check(b)?;
    if b.is_zero() {
        return Err(Error::Precondition("denominator is zero".into()));
    }
    let fcaps = FactorCaps {
        degree_cap: crate::factor::DEFAULT_DEGREE_CAP + caps.c_cap as u64,
        enumeration_cap: caps.enumeration_cap,
    };
    let fz = Factorizer::new(ring, fcaps);
    let p = ring.field.size().unwrap() as u128;
    let monos = ring.monomials_up_to(caps.c_cap as u64).len() as u32;
    if p.saturating_pow(monos) > caps.enumeration_cap as u128 * p {
        return Ok(OracleVerdict::Unknown("multiplier enumeration exceeds cap".into()));
    }
    let cs = monic_ring_polys(ring, caps.c_cap as u64, usize::MAX);
    let fb = fz.factor(b);
    if !fb.complete {
        return Ok(OracleVerdict::Unknown("denominator not completely factored".into()));
    }
    for c in &cs {
        if let Some(e) = linear_certificate(ring, &fz, a, b, &fb, c) {
            return Ok(OracleVerdict::In {
                multiplier: c.clone(),
                certificate: e,
            });
        }
    }
    let budget = Budget::unlimited();
    for c in &cs {
        let ca = c * a;
        let cb = c * b;
        if ca.total_degree() > cb.total_degree() {
            continue;
        }
        let mut t = TrackedSpan::new(deg(&cb));
        t.add(cb.clone(), Some(Expr::constant(ring.field.one())));
        for _ in 0..caps.closure_steps {
            let changed = t.step(ring, &fz, &budget)?;
            if let Some(Some(e)) = t.cert_for(&ca) {
                return Ok(OracleVerdict::In {
                    multiplier: c.clone(),
                    certificate: e,
                });
            }
            if !changed {
                break;
            }
        }
        if !t.exhaustive {
            return Ok(OracleVerdict::Unknown("closure step exceeded enumeration cap".into()));
        }
    }
    Ok(OracleVerdict::OutAtBound {
        c_cap: caps.c_cap,
        enumeration_cap: caps.enumeration_cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::verify_certificate;
    use crate::parse::parse_ring;

    fn check(ring: &str, a: &str, b: &str) -> MembershipVerdict {
        let r = parse_ring(ring).unwrap();
        let (pa, pb) = (r.parse(a).unwrap(), r.parse(b).unwrap());
        let v = member(&pa, &pb, &r).unwrap();
        if !matches!(v, MembershipVerdict::Unknown { .. }) {
            assert!(verify_certificate(&v, &pa, &pb, &r), "{a} / {b}");
        }
        v
    }

    #[test]
    fn basic_verdicts() {
        assert!(check("QQ[x]", "x", "x^2+1").is_in());
        assert!(check("QQ[x]", "x^2+1", "x+3").is_out());
        assert!(matches!(
            check("QQ[x,y]", "x", "y"),
            MembershipVerdict::Out(OutCertificate { kind: OutKind::Weight(ref w), .. }) if w.0 == vec![1, 0]
        ));
        assert!(matches!(
            check("QQ[x,y]", "x+y", "x-y"),
            MembershipVerdict::Out(OutCertificate { kind: OutKind::LeadingForm(_), .. })
        ));
        assert!(check("QQ[x,y]", "x", "1").is_out());
    }

    #[test]
    fn bivariate_members() {
        assert!(check("QQ[x,y]", "x*y", "x*y+x+y").is_in());
        assert!(check("QQ[x,y]", "y", "x^3+y^2+x^4*y").is_in());
        assert!(check("QQ[x,y]", "x", "x^3+y^2+x^4*y").is_in());
        assert!(check("QQ[x;gens=x^2,x^3]", "x^3", "x^6").is_in());
    }

    #[test]
    fn decompose_examples() {
        let r = parse_ring("QQ[x]").unwrap();
        let d = decompose(&r.parse("x").unwrap(), &r.parse("x+1").unwrap(), &r, MemberConfig::default()).unwrap();
        let names: Vec<String> = d.denominators.iter().map(|p| r.fmt(p)).collect();
        assert_eq!(names, vec!["1", "-x - 1"]);
        let e = decompose(&r.parse("1").unwrap(), &r.parse("x").unwrap(), &r, MemberConfig::default()).unwrap();
        assert_eq!(e.denominators, vec![r.parse("x").unwrap()]);
    }

    #[test]
    fn oracle_agrees_on_small_gf2() {
        let r = parse_ring("GF(2)[x]").unwrap();
        let p = |s: &str| r.parse(s).unwrap();
        assert!(matches!(
            oracle_member_gf(&p("x"), &p("x^4+x+1"), &r, OracleCaps::default()).unwrap(),
            OracleVerdict::In { .. }
        ));
        assert!(matches!(
            oracle_member_gf(&p("x^2"), &p("x+1"), &r, OracleCaps::default()).unwrap(),
            OracleVerdict::OutAtBound { .. }
        ));
    }

    #[test]
    fn oracle_subalgebra() {
        let r = parse_ring("GF(2)[x;gens=x^2,x^3]").unwrap();
        let p = |s: &str| r.parse(s).unwrap();
        assert!(matches!(
            oracle_member_gf(&p("x^3"), &p("x^6"), &r, OracleCaps::default()).unwrap(),
            OracleVerdict::In { .. }
        ));
        assert!(matches!(
            oracle_member_gf(&p("x^3"), &p("x^4"), &r, OracleCaps { c_cap: 3, ..Default::default() }).unwrap(),
            OracleVerdict::OutAtBound { .. }
        ));
    }
}
