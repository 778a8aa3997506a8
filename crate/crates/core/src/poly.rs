//! Sparse multivariate polynomials over a [`FieldSpec`], ordered by graded-lex.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::NotDivisible;
use crate::field::{FieldSpec, Scalar};

/// Exponent vector. Ordered graded-lex with x1 > x2 > ... .
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, w: &[u32]) -> u64 {
        self.0.iter().zip(w).map(|(&e, &wi)| e as u64 * wi as u64).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        Monomial(o.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Degree of a polynomial; the zero polynomial has degree `NegInf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Fin(u64),
}

impl Degree {
    pub fn finite(self) -> Option<u64> {
        match self {
            Degree::NegInf => None,
            Degree::Fin(d) => Some(d),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        Poly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: FieldSpec, nvars: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(field, nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(field: FieldSpec, nvars: usize) -> Self {
        Poly::constant(field, nvars, field.one())
    }

    pub fn var(field: FieldSpec, nvars: usize, i: usize) -> Self {
        Poly::monomial(field, Monomial::var(nvars, i), field.one())
    }

    pub fn monomial(field: FieldSpec, m: Monomial, c: Scalar) -> Self {
        let mut p = Poly::zero(field, m.0.len());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(field: FieldSpec, nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Poly::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Scalar> {
        if !self.is_constant() {
            return None;
        }
        Some(self.coeff(&Monomial::one(self.nvars)))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coeff(&self) -> Scalar {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn total_degree(&self) -> Degree {
        match self.leading_monomial() {
            None => Degree::NegInf,
            Some(m) => Degree::Fin(m.degree()),
        }
    }

    pub fn weighted_degree(&self, w: &[u32]) -> Degree {
        self.terms
            .keys()
            .map(|m| Degree::Fin(m.weighted_degree(w)))
            .max()
            .unwrap_or(Degree::NegInf)
    }

    /// Sum of the terms of maximal `w`-degree.
    pub fn leading_form(&self, w: &[u32]) -> Poly {
        let d = self.weighted_degree(w);
        Poly::from_terms(
            self.field,
            self.nvars,
            self.terms
                .iter()
                .filter(|(m, _)| Degree::Fin(m.weighted_degree(w)) == d)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field, self.nvars);
        }
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field, self.nvars);
        }
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.mul(c))).collect(),
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().inv())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one(self.field, self.nvars);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Exact quotient `self / d`, or `NotDivisible`.
    pub fn divexact(&self, d: &Poly) -> Result<Poly, NotDivisible> {
        let (lm, lc) = match d.leading_term() {
            None => return Err(NotDivisible),
            Some((m, c)) => (m.clone(), c.inv()),
        };
        let mut r = self.clone();
        let mut q = Poly::zero(self.field, self.nvars);
        while let Some((m, c)) = r.leading_term() {
            if !lm.divides(m) {
                return Err(NotDivisible);
            }
            let tm = lm.quotient_of(m);
            let tc = c.mul(&lc);
            r = &r - &d.mul_monomial(&tm, &tc);
            q.add_term(tm, tc);
        }
        Ok(q)
    }

    pub fn divides(&self, f: &Poly) -> bool {
        f.divexact(self).is_ok()
    }

    pub fn deg_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    /// Indices of the variables that occur.
    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&v| self.terms.keys().any(|m| m.0[v] > 0))
            .collect()
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.nvars),
            Some(first) => it.fold(first.clone(), |g, m| g.gcd(m)),
        }
    }

    /// Substitutes `x_v = 0`.
    pub fn subs_zero(&self, v: usize) -> Poly {
        Poly::from_terms(
            self.field,
            self.nvars,
            self.terms
                .iter()
                .filter(|(m, _)| m.0[v] == 0)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Division with remainder in one variable, for polynomials that only involve `x_v`.
    pub fn div_rem_in(&self, d: &Poly, v: usize) -> (Poly, Poly) {
        let dd = d.deg_in(v);
        let lc = d.leading_coeff().inv();
        let mut q = Poly::zero(self.field, self.nvars);
        let mut r = self.clone();
        while !r.is_zero() && r.deg_in(v) >= dd {
            let k = r.deg_in(v) - dd;
            let mut m = Monomial::one(self.nvars);
            m.0[v] = k;
            let c = r.leading_coeff().mul(&lc);
            r = &r - &d.mul_monomial(&m, &c);
            q.add_term(m, c);
        }
        (q, r)
    }

    /// Maps every coefficient through `f`, possibly into another field.
    pub fn map_coeffs(&self, field: FieldSpec, f: impl Fn(&Scalar) -> Scalar) -> Poly {
        Poly::from_terms(field, self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// True when `self = c * o` for a nonzero scalar `c`.
    pub fn is_associate(&self, o: &Poly) -> bool {
        if self.is_zero() || o.is_zero() {
            return self.is_zero() && o.is_zero();
        }
        self.monic() == o.monic()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.neg());
        }
        r
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut r = Poly::zero(self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        r
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: compare term lists from the leading term down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = self.terms.iter().rev();
        let b = other.terms.iter().rev();
        a.cmp(b)
    }
}
