//! Ambient rings: K[x1..xn] or a monomial subalgebra K[gens] inside it.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::poly::{Monomial, Poly};

/// Nonnegative integer weights, not all zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(pub Vec<u32>);

impl WeightVector {
    pub fn new(w: Vec<u32>) -> Result<Self> {
        if w.iter().all(|&x| x == 0) {
            return Err(Error::Precondition("weight vector is all zero".into()));
        }
        Ok(WeightVector(w))
    }

    pub fn ones(n: usize) -> Self {
        WeightVector(vec![1; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut w = vec![0; n];
        w[i] = 1;
        WeightVector(w)
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&x| x > 0)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientRing {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    /// Monomial generators of a subalgebra; `None` for the full polynomial ring.
    pub gens: Option<Vec<Monomial>>,
    /// Grading used for valuations and leading forms.
    pub grading: WeightVector,
}

impl AmbientRing {
    pub fn polynomial(field: FieldSpec, vars: &[&str]) -> Self {
        AmbientRing {
            field,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            gens: None,
            grading: WeightVector::ones(vars.len()),
        }
    }

    pub fn subalgebra(field: FieldSpec, vars: &[&str], gens: Vec<Monomial>) -> Result<Self> {
        let grading = WeightVector::ones(vars.len());
        AmbientRing::polynomial(field, vars).with_gens(gens, grading)
    }

    pub(crate) fn with_gens(mut self, gens: Vec<Monomial>, grading: WeightVector) -> Result<Self> {
        if gens.iter().any(|g| g.0.len() != self.vars.len()) {
            return Err(Error::Precondition("generator has wrong number of variables".into()));
        }
        if gens.iter().any(|g| g.weighted_degree(&grading.0) == 0) {
            return Err(Error::Precondition(
                "every generator needs positive grading degree".into(),
            ));
        }
        self.gens = Some(gens);
        self.grading = grading;
        Ok(self)
    }

    pub fn with_grading(mut self, grading: WeightVector) -> Result<Self> {
        if grading.0.len() != self.vars.len() {
            return Err(Error::Precondition("weight vector length mismatch".into()));
        }
        if let Some(g) = &self.gens {
            if g.iter().any(|m| m.weighted_degree(&grading.0) == 0) {
                return Err(Error::Precondition(
                    "every generator needs positive grading degree".into(),
                ));
            }
        }
        self.grading = grading;
        Ok(self)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_subalgebra(&self) -> bool {
        self.gens.is_some()
    }

    /// K[x] itself (one variable, no generator restriction).
    pub fn is_univariate_full(&self) -> bool {
        self.nvars() == 1 && self.gens.is_none()
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.field, self.nvars())
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.field, self.nvars())
    }

    pub fn constant(&self, c: Scalar) -> Poly {
        Poly::constant(self.field, self.nvars(), c)
    }

    pub fn int(&self, n: i64) -> Poly {
        self.constant(self.field.from_i64(n))
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.field, self.nvars(), i)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        match &self.gens {
            None => true,
            Some(gens) => {
                let mut memo = HashMap::new();
                semigroup_contains(gens, m, &mut memo)
            }
        }
    }

    pub fn contains(&self, f: &Poly) -> bool {
        f.terms().all(|(m, _)| self.contains_monomial(m))
    }

    pub fn check(&self, f: &Poly) -> Result<()> {
        for (m, _) in f.terms() {
            if !self.contains_monomial(m) {
                let mono = Poly::monomial(self.field, m.clone(), self.field.one());
                return Err(Error::MonomialOutsideSubalgebra(self.fmt(&mono)));
            }
        }
        Ok(())
    }

    /// Degree in the ring grading.
    pub fn degree(&self, f: &Poly) -> crate::poly::Degree {
        f.weighted_degree(&self.grading.0)
    }

    /// Monomials of the ring of total degree at most `d`, ascending graded-lex.
    pub fn monomials_up_to(&self, d: u64) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == cur.len() {
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur[i] = e as u32;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, d, &mut cur, &mut out);
        out.retain(|m| self.contains_monomial(m));
        out.sort();
        out
    }

    /// Weight vectors tried for non-membership certificates: each coordinate
    /// weight, all ones, and the ring grading.
    pub fn default_weights(&self) -> Vec<WeightVector> {
        let n = self.nvars();
        let mut ws: Vec<WeightVector> = (0..n).map(|i| WeightVector::unit(n, i)).collect();
        for w in [WeightVector::ones(n), self.grading.clone()] {
            if !ws.contains(&w) {
                ws.push(w);
            }
        }
        ws
    }

    /// Renders a polynomial with this ring's variable names.
    pub fn fmt(&self, f: &Poly) -> String {
        crate::parse::format_poly(f, &self.vars)
    }

    pub fn parse(&self, s: &str) -> Result<Poly> {
        crate::parse::parse_poly(s, self)
    }
}

fn semigroup_contains(gens: &[Monomial], m: &Monomial, memo: &mut HashMap<Monomial, bool>) -> bool {
    if m.is_one() {
        return true;
    }
    if let Some(&b) = memo.get(m) {
        return b;
    }
    let mut found = false;
    for g in gens {
        if g.divides(m) && semigroup_contains(gens, &g.quotient_of(m), memo) {
            found = true;
            break;
        }
    }
    memo.insert(m.clone(), found);
    found
}

impl fmt::Display for AmbientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}", self.field, self.vars.join(","))?;
        if let Some(gens) = &self.gens {
            let g: Vec<String> = gens
                .iter()
                .map(|m| self.fmt(&Poly::monomial(self.field, m.clone(), self.field.one())))
                .collect();
            write!(f, ";gens={}", g.join(","))?;
        }
        if self.grading != WeightVector::ones(self.nvars()) {
            let w: Vec<String> = self.grading.0.iter().map(|x| x.to_string()).collect();
            write!(f, ";weights={}", w.join(","))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerical_semigroup_two_three() {
        let r = AmbientRing::subalgebra(
            FieldSpec::Rationals,
            &["x"],
            vec![Monomial(vec![2]), Monomial(vec![3])],
        )
        .unwrap();
        let inside: Vec<u32> = (0..10).filter(|&k| r.contains_monomial(&Monomial(vec![k]))).collect();
        assert_eq!(inside, vec![0, 2, 3, 4, 5, 6, 7, 8, 9]);
    }

    #[test]
    fn monomial_listing() {
        let r = AmbientRing::polynomial(FieldSpec::Rationals, &["x", "y"]);
        assert_eq!(r.monomials_up_to(2).len(), 6);
    }

    #[test]
    fn zero_degree_generator_rejected() {
        let r = AmbientRing::polynomial(FieldSpec::Rationals, &["x", "y"]);
        let w = WeightVector(vec![1, 0]);
        assert!(r.with_gens(vec![Monomial(vec![0, 1])], w).is_err());
    }
}
