//! Factorization: exhaustive trial division over GF(p), and over the rationals
//! a known-divisor pool plus irreducibility certificates by reduction mod p.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::poly::{Degree, Monomial, Poly};
use crate::ring::AmbientRing;

/// Default cap on the total degree handed to exhaustive factorization.
pub const DEFAULT_DEGREE_CAP: u64 = 8;
/// Default cap on enumerated candidates (2^20).
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 20;

/// `unit * prod(factor^mult)` with monic factors. `complete` records whether
/// every factor is known to be irreducible in the ambient polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredPoly {
    pub unit: Scalar,
    pub factors: Vec<(Poly, u32)>,
    pub complete: bool,
}

impl FactoredPoly {
    pub fn expand(&self, ring: &AmbientRing) -> Poly {
        let mut r = ring.constant(self.unit.clone());
        for (f, m) in &self.factors {
            r = &r * &f.pow(*m);
        }
        r
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn len_with_multiplicity(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    fn push(&mut self, f: Poly, m: u32) {
        if let Some(e) = self.factors.iter_mut().find(|(g, _)| *g == f) {
            e.1 += m;
        } else {
            self.factors.push((f, m));
        }
    }

    fn sort(&mut self) {
        self.factors.sort_by(|a, b| a.0.cmp(&b.0));
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FactorCaps {
    pub degree_cap: u64,
    pub enumeration_cap: u64,
}

impl Default for FactorCaps {
    fn default() -> Self {
        FactorCaps {
            degree_cap: DEFAULT_DEGREE_CAP,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

fn deg(f: &Poly) -> u64 {
    f.total_degree().finite().unwrap_or(0)
}

/// Complete factorization over GF(p) by trial division against every monic
/// polynomial of degree at most half the degree.
pub fn factor_exhaustive_gf(f: &Poly, caps: FactorCaps) -> Result<FactoredPoly> {
    let field = f.field();
    if !field.is_finite() {
        return Err(Error::UnsupportedRing("exhaustive factorization needs a finite field".into()));
    }
    if f.is_zero() {
        return Err(Error::Precondition("cannot factor zero".into()));
    }
    if deg(f) > caps.degree_cap {
        return Err(Error::CapExceeded(format!(
            "degree {} above cap {}",
            deg(f),
            caps.degree_cap
        )));
    }
    let mut out = FactoredPoly {
        unit: f.leading_coeff(),
        factors: Vec::new(),
        complete: true,
    };
    let mut g = f.monic();
    let mut budget = caps.enumeration_cap;
    let mut min_deg = 1;
    while deg(&g) > 0 {
        match smallest_divisor(&g, min_deg, &mut budget)? {
            None => {
                out.push(g.clone(), 1);
                break;
            }
            Some(h) => {
                min_deg = deg(&h);
                let mut m = 0;
                while let Ok(q) = g.divexact(&h) {
                    g = q;
                    m += 1;
                }
                out.push(h, m);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Smallest-degree monic proper divisor of `g` with degree >= `min_deg`.
fn smallest_divisor(g: &Poly, min_deg: u64, budget: &mut u64) -> Result<Option<Poly>> {
    let field = g.field();
    let p = field.size().unwrap();
    let n = g.nvars();
    let lm = g.leading_monomial().unwrap().clone();
    let bounds: Vec<u32> = (0..n).map(|v| g.deg_in(v)).collect();
    let total = deg(g);
    for d in min_deg..=total / 2 {
        let mut all: Vec<Monomial> = Vec::new();
        enumerate_bounded(n, d, &bounds, &mut all);
        all.sort();
        for (li, leader) in all.iter().enumerate() {
            if leader.degree() != d || !leader.divides(&lm) {
                continue;
            }
            let lower = &all[..li];
            let count = (p as u128).saturating_pow(lower.len() as u32);
            if count > *budget as u128 {
                return Err(Error::CapExceeded(format!(
                    "factor enumeration needs {count} candidates"
                )));
            }
            *budget -= count as u64;
            let mut digits = vec![0u32; lower.len()];
            loop {
                let mut h = Poly::monomial(field, leader.clone(), field.one());
                for (m, &c) in lower.iter().zip(&digits) {
                    if c != 0 {
                        h.add_term(m.clone(), field.from_i64(c as i64));
                    }
                }
                if g.divexact(&h).is_ok() {
                    return Ok(Some(h));
                }
                if !increment(&mut digits, p as u32) {
                    break;
                }
            }
        }
    }
    Ok(None)
}

fn increment(digits: &mut [u32], base: u32) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn enumerate_bounded(n: usize, maxdeg: u64, bounds: &[u32], out: &mut Vec<Monomial>) {
    fn rec(i: usize, left: u64, bounds: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left.min(bounds[i] as u64) {
            cur[i] = e as u32;
            rec(i + 1, left - e, bounds, cur, out);
        }
        cur[i] = 0;
    }
    let mut cur = vec![0; n];
    rec(0, maxdeg, bounds, &mut cur, out);
}

/// Integer primitive part of a rational polynomial, as coefficients over `field`.
fn reduce_mod(f: &Poly, p: u32) -> Option<Poly> {
    let mut lcm = BigInt::one();
    for (_, c) in f.terms() {
        lcm = lcm.lcm(c.as_rational()?.denom());
    }
    let ints: Vec<(Monomial, BigInt)> = f
        .terms()
        .map(|(m, c)| {
            let r = c.as_rational().unwrap();
            (m.clone(), r.numer() * (&lcm / r.denom()))
        })
        .collect();
    let mut content = BigInt::zero();
    for (_, c) in &ints {
        content = content.gcd(c);
    }
    let gf = FieldSpec::Prime(p);
    Some(Poly::from_terms(
        gf,
        f.nvars(),
        ints.into_iter().map(|(m, c)| (m, gf.from_bigint(&(c / &content)))),
    ))
}

/// Irreducibility over the rationals certified by an irreducible reduction mod
/// a small prime that keeps the total degree. `false` means "not certified".
pub fn certify_irreducible_rational(f: &Poly, caps: FactorCaps) -> bool {
    if f.field() != FieldSpec::Rationals || f.is_zero() {
        return false;
    }
    let d = f.total_degree();
    if d == Degree::Fin(1) {
        return true;
    }
    if d == Degree::Fin(0) {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13] {
        let fp = match reduce_mod(f, p) {
            Some(x) => x,
            None => return false,
        };
        if fp.total_degree() != d {
            continue;
        }
        if let Ok(fac) = factor_exhaustive_gf(&fp, caps) {
            if fac.factors.len() == 1 && fac.factors[0].1 == 1 {
                return true;
            }
        }
    }
    false
}

/// Factorization engine with a shared pool of known divisors and a cache.
pub struct Factorizer {
    pub ring: AmbientRing,
    pub caps: FactorCaps,
    pool: Mutex<Vec<Poly>>,
    cache: Mutex<HashMap<Poly, FactoredPoly>>,
}

impl Factorizer {
    pub fn new(ring: &AmbientRing, caps: FactorCaps) -> Self {
        let mut pool = Vec::new();
        for v in 0..ring.nvars() {
            for u in ring.field.scalar_sample() {
                pool.push(&ring.var(v) + &ring.constant(u));
            }
        }
        Factorizer {
            ring: ring.clone(),
            caps,
            pool: Mutex::new(pool),
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// Adds candidate divisors (normalized monic, nonconstant).
    pub fn add_hints(&self, hints: &[Poly]) {
        let mut pool = self.pool.lock().unwrap();
        for h in hints {
            if h.is_zero() || h.is_constant() {
                continue;
            }
            let m = h.monic();
            if !pool.contains(&m) {
                pool.push(m);
            }
        }
        self.cache.lock().unwrap().clear();
    }

    /// Best available factorization; `complete` is always true over GF(p)
    /// within the caps.
    pub fn factor(&self, f: &Poly) -> FactoredPoly {
        let key = f.monic();
        if let Some(r) = self.cache.lock().unwrap().get(&key) {
            let mut r = r.clone();
            r.unit = f.leading_coeff();
            return r;
        }
        let mut r = if f.field().is_finite() {
            factor_exhaustive_gf(&key, self.caps).unwrap_or_else(|_| self.factor_known(&key))
        } else {
            self.factor_known(&key)
        };
        self.cache.lock().unwrap().insert(key, r.clone());
        r.unit = f.leading_coeff();
        r
    }

    fn factor_known(&self, f: &Poly) -> FactoredPoly {
        let ring = &self.ring;
        let mut out = FactoredPoly {
            unit: f.leading_coeff(),
            factors: Vec::new(),
            complete: true,
        };
        if f.is_constant() {
            return out;
        }
        let mut g = f.monic();
        let content = g.monomial_content();
        for (v, &e) in content.0.iter().enumerate() {
            if e > 0 {
                out.push(ring.var(v), e);
            }
        }
        g = g
            .divexact(&Poly::monomial(f.field(), content, f.field().one()))
            .expect("monomial content divides");
        let pool = self.pool.lock().unwrap().clone();
        let mut atoms: Vec<(Poly, u32)> = Vec::new();
        for h in &pool {
            if deg(&g) == 0 {
                break;
            }
            if deg(h) > deg(&g) {
                continue;
            }
            let mut m = 0;
            while let Ok(q) = g.divexact(h) {
                g = q;
                m += 1;
            }
            if m > 0 {
                atoms.push((h.clone(), m));
            }
        }
        if deg(&g) > 0 {
            atoms.push((g.monic(), 1));
        }
        for (a, m) in atoms {
            if !self.is_irreducible(&a) {
                out.complete = false;
            }
            out.push(a, m);
        }
        out.sort();
        out
    }

    fn is_irreducible(&self, a: &Poly) -> bool {
        if deg(a) == 1 {
            return true;
        }
        if a.field().is_finite() {
            matches!(factor_exhaustive_gf(a, self.caps), Ok(f) if f.factors.len() == 1 && f.factors[0].1 == 1)
        } else {
            certify_irreducible_rational(a, self.caps)
        }
    }
}

/// All monic `d` with `d` and `f/d` both in the ring, from a factorization of `f`.
pub fn divisors_in_ring(fac: &FactoredPoly, ring: &AmbientRing) -> Result<Vec<Poly>> {
    let count: u64 = fac.factors.iter().map(|(_, m)| *m as u64 + 1).product();
    if count > DEFAULT_ENUMERATION_CAP {
        return Err(Error::CapExceeded(format!("{count} divisors")));
    }
    let powers: Vec<Vec<Poly>> = fac
        .factors
        .iter()
        .map(|(f, m)| {
            let mut v = vec![ring.one()];
            for _ in 0..*m {
                let next = v.last().unwrap() * f;
                v.push(next);
            }
            v
        })
        .collect();
    let mut exps = vec![0u32; fac.factors.len()];
    let mut out = Vec::new();
    loop {
        let mut d = ring.one();
        let mut co = ring.one();
        for (i, &e) in exps.iter().enumerate() {
            d = &d * &powers[i][e as usize];
            co = &co * &powers[i][(fac.factors[i].1 - e) as usize];
        }
        if ring.contains(&d) && ring.contains(&co) {
            out.push(d);
        }
        let mut i = 0;
        loop {
            if i == exps.len() {
                out.sort();
                out.dedup();
                return Ok(out);
            }
            exps[i] += 1;
            if exps[i] <= fac.factors[i].1 {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ring;

    #[test]
    fn gf2_quadratic_splits() {
        let r = parse_ring("GF(2)[x]").unwrap();
        let f = r.parse("x^2 + x").unwrap();
        let fac = factor_exhaustive_gf(&f, FactorCaps::default()).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(&r), f);
        let g = r.parse("x^2 + x + 1").unwrap();
        assert_eq!(factor_exhaustive_gf(&g, FactorCaps::default()).unwrap().factors.len(), 1);
    }

    #[test]
    fn gf3_bivariate() {
        let r = parse_ring("GF(3)[x,y]").unwrap();
        let f = r.parse("x*y + x + y + 1").unwrap();
        let fac = factor_exhaustive_gf(&f, FactorCaps::default()).unwrap();
        let names: Vec<String> = fac.factors.iter().map(|(p, _)| r.fmt(p)).collect();
        assert_eq!(names, vec!["y + 1", "x + 1"]);
    }

    #[test]
    fn degree_cap_enforced() {
        let r = parse_ring("GF(2)[x]").unwrap();
        let f = r.parse("x^9 + 1").unwrap();
        assert!(matches!(
            factor_exhaustive_gf(&f, FactorCaps::default()),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn subalgebra_divisors() {
        let r = parse_ring("QQ[x;gens=x^2,x^3]").unwrap();
        let fz = Factorizer::new(&r, FactorCaps::default());
        let f = r.parse("x^6").unwrap();
        let ds: Vec<String> = divisors_in_ring(&fz.factor(&f), &r)
            .unwrap()
            .iter()
            .map(|d| r.fmt(d))
            .collect();
        assert_eq!(ds, vec!["1", "x^2", "x^3", "x^4", "x^6"]);
    }

    #[test]
    fn rational_known_factors() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let fz = Factorizer::new(&r, FactorCaps::default());
        let f = r.parse("x*y + x + y + 1").unwrap();
        let fac = fz.factor(&f);
        assert!(fac.complete);
        assert_eq!(fac.factors.len(), 2);
        let g = r.parse("x*y + x + y").unwrap();
        let gf = fz.factor(&g);
        assert!(gf.complete);
        assert_eq!(gf.factors.len(), 1);
        assert!(certify_irreducible_rational(
            &r.parse("x^3 + y^2 + x^4*y").unwrap(),
            FactorCaps::default()
        ));
    }
}
