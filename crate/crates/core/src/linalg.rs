//! Exact linear algebra on polynomials viewed as coefficient vectors over
//! their monomials.
//!
//! A [`SpanBasis`] keeps its rows fully reduced: every row is monic at its
//! leading monomial (the pivot) and no pivot occurs in any other row, so a
//! single pass over the rows reduces any polynomial.

use std::collections::BTreeSet;

use crate::field::Scalar;
use crate::poly::{Monomial, Poly};

#[derive(Clone, Debug)]
pub struct SpanBasis {
    rows: Vec<Poly>,
    /// Per row, its expression in the inserted polynomials (sparse).
    combos: Vec<Vec<(usize, Scalar)>>,
    inserted: usize,
}

/// Outcome of [`find_linear_dependency`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dependency {
    /// Coefficients `u` with `sum u_i p_i = 0`, last nonzero entry equal to 1.
    Found(Vec<Scalar>),
    Independent,
}

impl SpanBasis {
    pub fn new() -> Self {
        SpanBasis {
            rows: Vec::new(),
            combos: Vec::new(),
            inserted: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Rows sorted by descending pivot.
    pub fn rows(&self) -> &[Poly] {
        &self.rows
    }

    /// Monomials occurring in some row, descending.
    pub fn ambient_monomials(&self) -> Vec<Monomial> {
        let set: BTreeSet<Monomial> = self
            .rows
            .iter()
            .flat_map(|r| r.terms().map(|(m, _)| m.clone()))
            .collect();
        set.into_iter().rev().collect()
    }

    /// Number of polynomials inserted so far (including dependent ones).
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduces `f`; returns the remainder and the coefficient taken from each row.
    pub fn reduce(&self, f: &Poly) -> (Poly, Vec<Scalar>) {
        let mut r = f.clone();
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let piv = row.leading_monomial().unwrap();
            let c = r.coeff(piv);
            if !c.is_zero() {
                r = &r - &row.scale(&c);
            }
            coeffs.push(c);
        }
        (r, coeffs)
    }

    /// Inserts `f`. Returns `None` when `f` was independent, or its expression in
    /// the previously inserted polynomials when it was already in the span.
    pub fn insert(&mut self, f: &Poly) -> Option<Vec<(usize, Scalar)>> {
        let idx = self.inserted;
        self.inserted += 1;
        let (r, coeffs) = self.reduce(f);
        let combo = self.combine(&coeffs);
        if r.is_zero() {
            return Some(combo);
        }
        // r = f - sum c_i row_i
        let mut rc: Vec<(usize, Scalar)> = combo.into_iter().map(|(i, c)| (i, c.neg())).collect();
        rc.push((idx, r.field().one()));
        let lc = r.leading_coeff().inv();
        let row = r.scale(&lc);
        let rc: Vec<(usize, Scalar)> = rc.into_iter().map(|(i, c)| (i, c.mul(&lc))).collect();
        let piv = row.leading_monomial().unwrap().clone();
        for k in 0..self.rows.len() {
            let c = self.rows[k].coeff(&piv);
            if !c.is_zero() {
                self.rows[k] = &self.rows[k] - &row.scale(&c);
                let mut merged = self.combos[k].clone();
                for (i, v) in &rc {
                    add_sparse(&mut merged, *i, &v.mul(&c).neg());
                }
                self.combos[k] = merged;
            }
        }
        let pos = self
            .rows
            .iter()
            .position(|x| x.leading_monomial().unwrap() < &piv)
            .unwrap_or(self.rows.len());
        self.rows.insert(pos, row);
        self.combos.insert(pos, rc);
        None
    }

    /// Converts row coefficients into coefficients on inserted polynomials.
    pub fn combine(&self, row_coeffs: &[Scalar]) -> Vec<(usize, Scalar)> {
        let mut out: Vec<(usize, Scalar)> = Vec::new();
        for (c, combo) in row_coeffs.iter().zip(&self.combos) {
            if c.is_zero() {
                continue;
            }
            for (i, v) in combo {
                add_sparse(&mut out, *i, &v.mul(c));
            }
        }
        out.sort_by_key(|(i, _)| *i);
        out
    }

    /// Coefficients over the rows when `f` is in the span.
    pub fn in_span(&self, f: &Poly) -> Option<Vec<Scalar>> {
        let (r, coeffs) = self.reduce(f);
        r.is_zero().then_some(coeffs)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.reduce(f).0.is_zero()
    }
}

impl Default for SpanBasis {
    fn default() -> Self {
        SpanBasis::new()
    }
}

fn add_sparse(v: &mut Vec<(usize, Scalar)>, i: usize, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    if let Some(pos) = v.iter().position(|(j, _)| *j == i) {
        let s = v[pos].1.add(c);
        if s.is_zero() {
            v.remove(pos);
        } else {
            v[pos].1 = s;
        }
    } else {
        v.push((i, c.clone()));
    }
}

pub fn span_of(polys: &[Poly]) -> SpanBasis {
    let mut b = SpanBasis::new();
    for p in polys {
        b.insert(p);
    }
    b
}

pub fn in_span(f: &Poly, basis: &SpanBasis) -> Option<Vec<Scalar>> {
    basis.in_span(f)
}

/// The dependency among `polys` that ends at the earliest possible index,
/// normalized so its last nonzero coefficient is 1.
pub fn find_linear_dependency(polys: &[Poly]) -> Dependency {
    let mut b = SpanBasis::new();
    for (k, p) in polys.iter().enumerate() {
        if let Some(combo) = b.insert(p) {
            let field = p.field();
            let mut u = vec![field.zero(); polys.len()];
            for (i, c) in combo {
                u[i] = c.neg();
            }
            u[k] = field.one();
            return Dependency::Found(u);
        }
    }
    Dependency::Independent
}

/// Basis of the kernel of the linear map sending the `i`-th unit vector to
/// `images[i]`, each kernel vector given as coefficients on the inputs.
pub fn kernel(images: &[Poly]) -> Vec<Vec<Scalar>> {
    let mut b = SpanBasis::new();
    let mut out = Vec::new();
    for (k, p) in images.iter().enumerate() {
        if let Some(combo) = b.insert(p) {
            let field = p.field();
            let mut u = vec![field.zero(); images.len()];
            for (i, c) in combo {
                u[i] = c.neg();
            }
            u[k] = field.one();
            out.push(u);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ring;

    #[test]
    fn gf2_span_dimension() {
        let r = parse_ring("GF(2)[x]").unwrap();
        let b = span_of(&[r.parse("x^2 + x").unwrap(), r.parse("x").unwrap()]);
        assert_eq!(b.dim(), 2);
        assert!(b.contains(&r.parse("x^2").unwrap()));
        assert!(!b.contains(&r.parse("1").unwrap()));
    }

    #[test]
    fn dependency_normalization() {
        let r = parse_ring("QQ[y]").unwrap();
        let y = r.parse("y").unwrap();
        match find_linear_dependency(&[y.clone(), y]) {
            Dependency::Found(u) => {
                assert_eq!(u[0], r.field.from_i64(-1));
                assert!(u[1].is_one());
            }
            Dependency::Independent => panic!(),
        }
        let one = r.parse("1").unwrap();
        let yy = r.parse("y").unwrap();
        assert_eq!(find_linear_dependency(&[one, yy]), Dependency::Independent);
    }

    #[test]
    fn combos_reconstruct_rows() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let ps: Vec<Poly> = ["x + y", "x - y", "x^2 + x", "y"]
            .iter()
            .map(|s| r.parse(s).unwrap())
            .collect();
        let b = span_of(&ps);
        let target = r.parse("3*x^2 + 2*y").unwrap();
        let coeffs = b.in_span(&target).unwrap();
        let mut acc = r.zero();
        for (i, c) in b.combine(&coeffs) {
            acc = &acc + &ps[i].scale(&c);
        }
        assert_eq!(acc, target);
    }

    #[test]
    fn kernel_of_scalar_multiples() {
        let r = parse_ring("QQ[x]").unwrap();
        let x = r.parse("x").unwrap();
        let k = kernel(&[x.clone(), x.scale(&r.field.from_i64(2)), r.parse("1").unwrap()]);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0], r.field.from_i64(-2));
    }
}
