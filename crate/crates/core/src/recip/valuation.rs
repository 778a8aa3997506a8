use crate::poly::Degree;
use crate::ratfunc::RatFunc;
use crate::ring::AmbientRing;

/// `nu(f/g) = deg g - deg f` in the ring grading; zero has value `Infinity`.
/// Elements of the reciprocal complement have `nu >= 0`; a negative value
/// certifies non-membership.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn is_unit(&self) -> bool {
        *self == Valuation::Finite(0)
    }

    /// Outside the valuation ring (certifies non-membership).
    pub fn not_in_w(&self) -> bool {
        matches!(self, Valuation::Finite(v) if *v < 0)
    }

    pub fn plus(self, o: Valuation) -> Valuation {
        match (self, o) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

pub fn valuation_graded(rf: &RatFunc, ring: &AmbientRing) -> Valuation {
    match (ring.degree(&rf.num), ring.degree(&rf.den)) {
        (Degree::NegInf, _) => Valuation::Infinity,
        (Degree::Fin(a), Degree::Fin(b)) => Valuation::Finite(b as i64 - a as i64),
        (_, Degree::NegInf) => unreachable!("denominator is nonzero"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Egyptian {
    Yes,
    No,
    Unknown,
}

/// Whether `d` itself is a sum of unit fractions. Nonzero constants are;
/// elements of positive degree in a nonnegative grading are not. Zero is the
/// empty sum.
pub fn is_egyptian(d: &crate::poly::Poly, ring: &AmbientRing) -> Egyptian {
    if d.is_constant() {
        return Egyptian::Yes;
    }
    let pos = |w: &[u32]| matches!(d.weighted_degree(w), Degree::Fin(k) if k > 0);
    if pos(&ring.grading.0) || pos(&vec![1; ring.nvars()]) {
        Egyptian::No
    } else {
        Egyptian::Unknown
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ring;

    #[test]
    fn valuation_values() {
        let r = parse_ring("QQ[x]").unwrap();
        let p = |s: &str| r.parse(s).unwrap();
        let v = |a: &str, b: &str| valuation_graded(&RatFunc::new(p(a), p(b)).unwrap(), &r);
        assert_eq!(v("x", "x^2+1"), Valuation::Finite(1));
        assert!(v("x^2+1", "x+3").not_in_w());
        assert_eq!(v("0", "x"), Valuation::Infinity);
        assert!(v("x+1", "x").is_unit());
    }

    #[test]
    fn egyptian_elements() {
        let r = parse_ring("QQ[x;gens=x^2,x^3]").unwrap();
        assert_eq!(is_egyptian(&r.parse("3").unwrap(), &r), Egyptian::Yes);
        assert_eq!(is_egyptian(&r.parse("x^2").unwrap(), &r), Egyptian::No);
    }
}
