//! Rational functions `num/den` over a polynomial ring, compared by
//! cross-multiplication.

use crate::error::{Error, Result};
use crate::poly::Poly;

#[derive(Clone, Debug)]
pub struct RatFunc {
    pub num: Poly,
    pub den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Precondition("zero denominator".into()));
        }
        Ok(RatFunc { num, den }.normalized())
    }

    pub fn from_poly(p: Poly) -> Self {
        let one = Poly::one(p.field(), p.nvars());
        RatFunc { num: p, den: one }
    }

    /// `1/d`; `d` must be nonzero.
    pub fn recip_of(d: &Poly) -> Result<Self> {
        RatFunc::new(Poly::one(d.field(), d.nvars()), d.clone())
    }

    /// Monic denominator, with cheap exact cancellation when one side divides
    /// the other.
    fn normalized(self) -> Self {
        let RatFunc { mut num, mut den } = self;
        if num.is_zero() {
            return RatFunc {
                den: Poly::one(num.field(), num.nvars()),
                num,
            };
        }
        if !den.is_constant() {
            if let Ok(q) = num.divexact(&den) {
                num = q;
                den = Poly::one(num.field(), num.nvars());
            } else if let Ok(q) = den.divexact(&num) {
                den = q;
                num = Poly::one(num.field(), num.nvars());
            }
        }
        let lc = den.leading_coeff().inv();
        RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        sum_many(&[self.clone(), o.clone()])
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
        .normalized()
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }
}

/// Exact equality `a/b == c/d` via `a*d == c*b`.
pub fn ratfunc_equal(x: &RatFunc, y: &RatFunc) -> bool {
    &x.num * &y.den == &y.num * &x.den
}

/// Sum over a common denominator built from a pool of atoms: each
/// denominator is divided by the atoms found so far and any nonconstant
/// remainder becomes a new atom. The product of atoms to their largest
/// multiplicities is a common multiple of all denominators.
pub fn sum_many(terms: &[RatFunc]) -> RatFunc {
    let (field, nvars) = match terms.first() {
        None => panic!("sum_many needs at least one term"),
        Some(t) => (t.num.field(), t.num.nvars()),
    };
    let one = Poly::one(field, nvars);
    // Group equal denominators first (denominators are monic after normalizing).
    let mut groups: Vec<(Poly, Poly)> = Vec::new();
    for t in terms {
        if t.num.is_zero() {
            continue;
        }
        let lc = t.den.leading_coeff().inv();
        let den = t.den.scale(&lc);
        let num = t.num.scale(&lc);
        match groups.iter_mut().find(|(d, _)| *d == den) {
            Some(g) => g.1 = &g.1 + &num,
            None => groups.push((den, num)),
        }
    }
    groups.retain(|(_, n)| !n.is_zero());
    if groups.is_empty() {
        return RatFunc::from_poly(Poly::zero(field, nvars));
    }
    if groups.len() == 1 {
        let (d, n) = groups.pop().unwrap();
        return RatFunc { num: n, den: d }.normalized();
    }
    let mut order: Vec<usize> = (0..groups.len()).collect();
    order.sort_by_key(|&i| (groups[i].0.total_degree(), groups[i].0.num_terms()));
    let mut atoms: Vec<Poly> = Vec::new();
    let mut counts: Vec<Vec<u32>> = vec![Vec::new(); groups.len()];
    for &i in &order {
        let mut g = groups[i].0.clone();
        let mut c = vec![0u32; atoms.len()];
        for (k, a) in atoms.iter().enumerate() {
            while let Ok(q) = g.divexact(a) {
                g = q;
                c[k] += 1;
            }
        }
        if !g.is_constant() {
            atoms.push(g.monic());
            c.push(1);
        }
        counts[i] = c;
    }
    let mut maxc = vec![0u32; atoms.len()];
    for c in &counts {
        for (k, &e) in c.iter().enumerate() {
            maxc[k] = maxc[k].max(e);
        }
    }
    let mut num = Poly::zero(field, nvars);
    let mut lcm = one.clone();
    for (k, a) in atoms.iter().enumerate() {
        lcm = &lcm * &a.pow(maxc[k]);
    }
    for (i, (d, n)) in groups.iter().enumerate() {
        let mut cof = one.clone();
        let mut prod = one.clone();
        for (k, a) in atoms.iter().enumerate() {
            let e = counts[i].get(k).copied().unwrap_or(0);
            cof = &cof * &a.pow(maxc[k] - e);
            prod = &prod * &a.pow(e);
        }
        // d = unit * prod
        let unit = d.leading_coeff().div(&prod.leading_coeff());
        num = &num + &(&cof * n).scale(&unit.inv());
    }
    RatFunc { num, den: lcm }.normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ring;

    #[test]
    fn shared_atoms() {
        let r = parse_ring("QQ[x]").unwrap();
        let p = |s: &str| r.parse(s).unwrap();
        let terms = vec![
            RatFunc::recip_of(&p("x")).unwrap(),
            RatFunc::recip_of(&p("x+1")).unwrap().neg(),
            RatFunc::recip_of(&p("x^2+x")).unwrap().neg(),
        ];
        let s = sum_many(&terms);
        assert!(s.is_zero(), "{:?}", s);
        let t = sum_many(&[
            RatFunc::recip_of(&p("x")).unwrap(),
            RatFunc::recip_of(&p("2*x")).unwrap(),
        ]);
        assert!(ratfunc_equal(&t, &RatFunc::new(p("3"), p("2*x")).unwrap()));
    }

    #[test]
    fn zero_denominator_rejected() {
        let r = parse_ring("QQ[x]").unwrap();
        assert!(RatFunc::new(r.one(), r.zero()).is_err());
    }
}
