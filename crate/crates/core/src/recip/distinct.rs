use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::poly::Poly;
use crate::recip::UnitFractionSum;
use crate::ring::AmbientRing;

/// `1/f = 1/(f+u) + 1/(u^{-1} f (f+u))`; returns the two new denominators.
pub fn split_identity(f: &Poly, u: &Scalar) -> Result<(Poly, Poly)> {
    if u.is_zero() {
        return Err(Error::Precondition("split shift must be nonzero".into()));
    }
    let shifted = f + &Poly::constant(f.field(), f.nvars(), u.clone());
    if shifted.is_zero() || f.is_zero() {
        return Err(Error::DegenerateSplit);
    }
    let other = (f * &shifted).scale(&u.inv());
    Ok((shifted, other))
}

/// Rewrites a sum so that no denominator repeats, preserving its value.
///
/// Policy: take the highest-degree repeated denominator (largest in the
/// canonical order on ties) and split one copy with the first shift in the
/// field's fixed unit sequence that creates no denominator already present.
/// When no shift qualifies (small fields), the copies of that denominator are
/// merged: `k` copies of `1/d` become `1/(d/k)`, or vanish when `k = 0` in K.
pub fn distinctify(s: &UnitFractionSum, ring: &AmbientRing, budget: &Budget) -> Result<UnitFractionSum> {
    let mut ds = s.denominators.clone();
    let shifts = ring.field.unit_sequence(64);
    loop {
        budget.tick()?;
        let dup = {
            let mut best: Option<&Poly> = None;
            for (i, d) in ds.iter().enumerate() {
                if ds[i + 1..].contains(d) {
                    let better = match best {
                        None => true,
                        Some(b) => (d.total_degree(), d) > (b.total_degree(), b),
                    };
                    if better {
                        best = Some(d);
                    }
                }
            }
            best.cloned()
        };
        let d = match dup {
            None => return UnitFractionSum::new(ds),
            Some(d) => d,
        };
        let mut done = false;
        for u in &shifts {
            let (a, b) = match split_identity(&d, u) {
                Ok(x) => x,
                Err(Error::DegenerateSplit) => continue,
                Err(e) => return Err(e),
            };
            if a == b || a == d || b == d || ds.contains(&a) || ds.contains(&b) {
                continue;
            }
            let pos = ds.iter().position(|x| *x == d).unwrap();
            ds.remove(pos);
            ds.push(a);
            ds.push(b);
            done = true;
            break;
        }
        if !done {
            let k = ds.iter().filter(|x| **x == d).count() as i64;
            ds.retain(|x| *x != d);
            let kk = ring.field.from_i64(k);
            if !kk.is_zero() {
                ds.push(d.scale(&kk.inv()));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ring;
    use crate::ratfunc::ratfunc_equal;
    use crate::recip::{parse_ufs, to_ratfunc};

    #[test]
    fn split_of_x() {
        let r = parse_ring("QQ[x]").unwrap();
        let (a, b) = split_identity(&r.parse("x").unwrap(), &r.field.one()).unwrap();
        assert_eq!(r.fmt(&a), "x + 1");
        assert_eq!(r.fmt(&b), "x^2 + x");
        let c = r.parse("-1").unwrap();
        assert_eq!(split_identity(&c, &r.field.one()), Err(Error::DegenerateSplit));
    }

    #[test]
    fn three_copies_over_rationals() {
        let r = parse_ring("QQ[x]").unwrap();
        let s = parse_ufs("1/x + 1/x + 1/x", &r).unwrap();
        let d = distinctify(&s, &r, &Budget::new(10_000)).unwrap();
        let names: Vec<String> = d.denominators.iter().map(|p| r.fmt(p)).collect();
        assert_eq!(names, vec!["x", "x + 1", "x^2 + x", "x + 2", "1/2*x^2 + x"]);
        assert!(ratfunc_equal(&to_ratfunc(&s, &r), &to_ratfunc(&d, &r)));
    }

    #[test]
    fn characteristic_two_merges() {
        let r = parse_ring("GF(2)[x]").unwrap();
        let s = parse_ufs("1/x + 1/x + 1/x", &r).unwrap();
        let d = distinctify(&s, &r, &Budget::new(10_000)).unwrap();
        assert!(ratfunc_equal(&to_ratfunc(&s, &r), &to_ratfunc(&d, &r)));
        let mut sorted = d.denominators.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), d.len());
    }
}
