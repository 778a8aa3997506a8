//! Factroids: K-spaces closed under taking divisors.
//!
//! `F_1(V)` is the span of all divisors (inside the ring) of elements of `V`;
//! the closure `[S]` is the union of the chain `S ⊆ F_1(S) ⊆ F_2(S) ⊆ ...`.
//! Over GF(p) a step examines every element of the current span (up to an
//! enumeration cap), so it is exact. Over the rationals a step examines a
//! finite sample of elements (rows, pairwise sums and differences, constant
//! shifts) and the divisors known from the factorizer, so the computed space
//! is always contained in the true one.

use std::sync::Arc;

use crate::cert::Expr;
use crate::error::{Error, Result};
use crate::factor::{divisors_in_ring, FactorCaps, Factorizer};
use crate::field::Scalar;
use crate::linalg::{kernel, SpanBasis};
use crate::poly::Poly;
use crate::ring::AmbientRing;

#[derive(Clone, Debug)]
pub struct FSpace {
    pub basis: SpanBasis,
    /// Every element has total degree at most this.
    pub degree_cap: u64,
    /// No step added anything new.
    pub closed: bool,
    /// Each step examined every element of the span.
    pub exhaustive: bool,
}

impl FSpace {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.basis.contains(f)
    }
}

fn total_deg(f: &Poly) -> u64 {
    f.total_degree().finite().unwrap_or(0)
}

/// A span whose generators carry a certificate for `generator / b` for a
/// fixed denominator `b`.
pub(crate) struct TrackedSpan {
    pub basis: SpanBasis,
    pub gens: Vec<Poly>,
    pub certs: Vec<Option<Arc<Expr>>>,
    pub degree_cap: u64,
    pub exhaustive: bool,
}

impl TrackedSpan {
    pub fn new(degree_cap: u64) -> Self {
        TrackedSpan {
            basis: SpanBasis::new(),
            gens: Vec::new(),
            certs: Vec::new(),
            degree_cap,
            exhaustive: true,
        }
    }

    /// Adds `g` when it is not yet in the span.
    pub fn add(&mut self, g: Poly, cert: Option<Arc<Expr>>) -> bool {
        if g.is_zero() || self.basis.contains(&g) {
            return false;
        }
        self.basis.insert(&g);
        self.gens.push(g);
        self.certs.push(cert);
        true
    }

    /// Certificate for `f / b` when `f` is in the span and all generators used carry one.
    pub fn cert_for(&self, f: &Poly) -> Option<Option<Arc<Expr>>> {
        let coeffs = self.basis.in_span(f)?;
        let combo = self.basis.combine(&coeffs);
        let mut parts = Vec::new();
        for (i, c) in combo {
            match &self.certs[i] {
                None => return Some(None),
                Some(e) => parts.push(Expr::scaled(c, e.clone())),
            }
        }
        Some(Some(Expr::add(parts)))
    }

    /// Elements examined by one step, each as a combination of rows.
    fn candidates(&self, ring: &AmbientRing, caps: FactorCaps) -> Vec<Vec<Scalar>> {
        let rows = self.basis.rows();
        let dim = rows.len();
        let field = ring.field;
        let unit = |i: usize, c: Scalar| {
            let mut v = vec![field.zero(); dim];
            v[i] = c;
            v
        };
        if let Some(p) = field.size() {
            let total = (p as u128).saturating_pow(dim as u32);
            if total <= caps.enumeration_cap as u128 {
                // Every element up to scalars: first nonzero coordinate is 1.
                let mut out = Vec::new();
                for lead in 0..dim {
                    let tail = dim - lead - 1;
                    let count = (p as u64).pow(tail as u32);
                    for k in 0..count {
                        let mut v = vec![field.zero(); dim];
                        v[lead] = field.one();
                        let mut x = k;
                        for j in 0..tail {
                            v[lead + 1 + j] = field.from_i64((x % p) as i64);
                            x /= p;
                        }
                        out.push(v);
                    }
                }
                return out;
            }
        }
        let mut out: Vec<Vec<Scalar>> = (0..dim).map(|i| unit(i, field.one())).collect();
        let one_row = rows.iter().position(|r| r.is_constant());
        for i in 0..dim {
            for j in i + 1..dim {
                for s in [field.one(), field.from_i64(-1)] {
                    let mut v = unit(i, field.one());
                    v[j] = s;
                    out.push(v);
                }
            }
            if let Some(o) = one_row {
                if o != i {
                    for u in field.scalar_sample() {
                        let mut v = unit(i, field.one());
                        v[o] = u;
                        out.push(v);
                    }
                }
            }
        }
        out
    }

    /// One divisor step. Returns whether anything was added.
    pub fn step(&mut self, ring: &AmbientRing, fz: &Factorizer, budget: &crate::budget::Budget) -> Result<bool> {
        let caps = fz.caps;
        let enumerated = ring.field.size().is_some_and(|p| {
            (p as u128).saturating_pow(self.basis.dim() as u32) <= caps.enumeration_cap as u128
        });
        if !enumerated {
            self.exhaustive = false;
        }
        let rows: Vec<Poly> = self.basis.rows().to_vec();
        let mut found: Vec<(Poly, Poly, Vec<Scalar>)> = Vec::new();
        let snapshot = self.basis.clone();
        for coeffs in self.candidates(ring, caps) {
            budget.tick()?;
            let mut h = ring.zero();
            for (c, r) in coeffs.iter().zip(&rows) {
                if !c.is_zero() {
                    h = &h + &r.scale(c);
                }
            }
            if h.is_zero() || h.is_constant() {
                continue;
            }
            let fac = fz.factor(&h);
            if !fac.complete && enumerated && ring.field.is_finite() {
                self.exhaustive = false;
            }
            let divs = match divisors_in_ring(&fac, ring) {
                Ok(d) => d,
                Err(Error::CapExceeded(_)) => {
                    self.exhaustive = false;
                    continue;
                }
                Err(e) => return Err(e),
            };
            for d in divs {
                if !snapshot.contains(&d) && !found.iter().any(|(x, _, _)| *x == d) {
                    found.push((d, h.clone(), coeffs.clone()));
                }
            }
        }
        let mut changed = false;
        for (d, h, coeffs) in found {
            let cert = if self.certs.iter().all(|c| c.is_some()) {
                let combo = snapshot.combine(&coeffs);
                let parts: Vec<Arc<Expr>> = combo
                    .into_iter()
                    .map(|(i, c)| Expr::scaled(c, self.certs[i].clone().unwrap()))
                    .collect();
                let hcert = Expr::add(parts);
                let cof = h.divexact(&d).expect("divisor divides");
                Some(Expr::mul(vec![Expr::recip(cof), hcert]))
            } else {
                None
            };
            changed |= self.add(d, cert);
        }
        Ok(changed)
    }

    pub fn into_fspace(self, closed: bool) -> FSpace {
        FSpace {
            basis: self.basis,
            degree_cap: self.degree_cap,
            closed,
            exhaustive: self.exhaustive,
        }
    }
}

fn tracked_from_list(s: &[Poly], ring: &AmbientRing) -> Result<TrackedSpan> {
    for f in s {
        ring.check(f)?;
    }
    let cap = s.iter().map(total_deg).max().unwrap_or(0);
    let mut t = TrackedSpan::new(cap);
    for f in s {
        t.add(f.clone(), None);
    }
    Ok(t)
}

/// One application of `F_1` to the span of `s`.
pub fn f1_step(s: &[Poly], ring: &AmbientRing, caps: FactorCaps) -> Result<FSpace> {
    let mut t = tracked_from_list(s, ring)?;
    let fz = Factorizer::new(ring, caps);
    let changed = t.step(ring, &fz, &crate::budget::Budget::unlimited())?;
    Ok(t.into_fspace(!changed))
}

/// Iterates `F_1` until nothing changes or `max_steps` is reached.
pub fn factroid_closure(s: &[Poly], ring: &AmbientRing, caps: FactorCaps, max_steps: usize) -> Result<FSpace> {
    let fz = Factorizer::new(ring, caps);
    fz.add_hints(s);
    closure_with(s, ring, &fz, max_steps)
}

pub(crate) fn closure_with(s: &[Poly], ring: &AmbientRing, fz: &Factorizer, max_steps: usize) -> Result<FSpace> {
    let mut t = tracked_from_list(s, ring)?;
    let budget = crate::budget::Budget::unlimited();
    for _ in 0..max_steps {
        if !t.step(ring, fz, &budget)? {
            return Ok(t.into_fspace(true));
        }
    }
    Ok(t.into_fspace(false))
}

/// `{ f in D : deg f <= cap - deg c, c f in V }` as a space.
pub fn colon_space(v: &FSpace, c: &Poly, ring: &AmbientRing) -> Result<FSpace> {
    if c.is_zero() {
        return Err(Error::Precondition("colon by zero".into()));
    }
    ring.check(c)?;
    let dc = total_deg(c);
    let mut out = SpanBasis::new();
    if dc <= v.degree_cap {
        let dom = ring.monomials_up_to(v.degree_cap - dc);
        let images: Vec<Poly> = dom
            .iter()
            .map(|m| v.basis.reduce(&c.mul_monomial(m, &ring.field.one())).0)
            .collect();
        for k in kernel(&images) {
            let f = Poly::from_terms(ring.field, ring.nvars(), dom.iter().cloned().zip(k));
            out.insert(&f);
        }
    }
    Ok(FSpace {
        basis: out,
        degree_cap: v.degree_cap.saturating_sub(dc),
        closed: v.closed,
        exhaustive: v.exhaustive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ring;

    fn p(r: &AmbientRing, s: &str) -> Poly {
        r.parse(s).unwrap()
    }

    #[test]
    fn gf2_single_step() {
        let r = parse_ring("GF(2)[x]").unwrap();
        let f = f1_step(&[p(&r, "x^2 + x")], &r, FactorCaps::default()).unwrap();
        // divisors 1, x, x+1, x^2+x: span of dimension 3
        assert_eq!(f.dim(), 3);
        assert!(f.exhaustive);
    }

    #[test]
    fn gf2_closure_of_x_squared_plus_x() {
        let r = parse_ring("GF(2)[x]").unwrap();
        let f = factroid_closure(&[p(&r, "x^2 + x")], &r, FactorCaps::default(), 10).unwrap();
        assert!(f.closed);
        assert_eq!(f.dim(), 3);
    }

    #[test]
    fn rational_irreducible_generator_is_closed() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let f = factroid_closure(&[p(&r, "x^3 + y^2 + x^4*y")], &r, FactorCaps::default(), 5).unwrap();
        assert!(f.closed);
        assert_eq!(f.dim(), 2);
        assert!(f.contains(&p(&r, "1")));
    }

    #[test]
    fn subalgebra_closure_contains_x_cubed() {
        let r = parse_ring("QQ[x;gens=x^2,x^3]").unwrap();
        let f = f1_step(&[p(&r, "x^6")], &r, FactorCaps::default()).unwrap();
        assert!(f.contains(&p(&r, "x^3")));
        let small = crate::linalg::span_of(&["1", "x^2", "x^4", "x^6"].map(|s| p(&r, s)));
        assert!(!small.contains(&p(&r, "x^3")));
    }

    #[test]
    fn colon_examples() {
        let r = parse_ring("QQ[x]").unwrap();
        let mk = |gens: &[&str]| FSpace {
            basis: crate::linalg::span_of(&gens.iter().map(|s| p(&r, s)).collect::<Vec<_>>()),
            degree_cap: 1,
            closed: true,
            exhaustive: true,
        };
        let c = colon_space(&mk(&["1", "x"]), &p(&r, "x"), &r).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&p(&r, "1")));
        let d = colon_space(&mk(&["x"]), &p(&r, "x"), &r).unwrap();
        assert_eq!(d.dim(), 1);
    }
}
