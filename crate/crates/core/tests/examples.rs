//! Worked input/output examples for each public operation. Values marked as
//! derived in comments are recomputed here by brute force before comparison.

use num_bigint::BigInt;
use num_rational::BigRational;
use recip::budget::Budget;
use recip::cert::{verify_certificate, MembershipVerdict, OutCertificate, OutKind};
use recip::factor::{divisors_in_ring, factor_exhaustive_gf, FactorCaps};
use recip::factroid::{colon_space, f1_step, factroid_closure};
use recip::linalg::{find_linear_dependency, in_span, span_of, Dependency};
use recip::member::{decompose, member, oracle_member_gf, MemberConfig, OracleCaps, OracleVerdict};
use recip::parse::parse_ring;
use recip::ratfunc::{ratfunc_equal, RatFunc};
use recip::recip::{
    distinctify, greedy_egyptian_rational, invert_unit, is_egyptian, is_unit_graded, split_identity, to_ratfunc,
    valuation_graded, Egyptian, UnitFractionSum, Valuation,
};
use recip::{AmbientRing, Degree, Poly, WeightVector};

fn ring(s: &str) -> AmbientRing {
    parse_ring(s).unwrap()
}

fn polys(r: &AmbientRing, xs: &[&str]) -> Vec<Poly> {
    xs.iter().map(|s| r.parse(s).unwrap()).collect()
}

fn ufs(r: &AmbientRing, xs: &[&str]) -> UnitFractionSum {
    UnitFractionSum::new(polys(r, xs)).unwrap()
}

fn names(r: &AmbientRing, s: &UnitFractionSum) -> Vec<String> {
    s.denominators.iter().map(|d| r.fmt(d)).collect()
}

/// All polynomials over GF(p) in one variable of degree at most `d`.
fn all_univariate(r: &AmbientRing, d: u32) -> Vec<Poly> {
    let p = r.field.size().unwrap() as i64;
    let mut out = vec![r.zero()];
    for k in 0..=d {
        let xk = r.var(0).pow(k);
        let mut next = out.clone();
        for f in &out {
            for c in 1..p {
                next.push(f + &xk.scale(&r.field.from_i64(c)));
            }
        }
        out = next;
    }
    out
}

/// Divisors of `f` found by multiplying out every pair of small polynomials.
fn brute_divisors(r: &AmbientRing, f: &Poly) -> Vec<Poly> {
    let d = f.total_degree().finite().unwrap() as u32;
    let all = all_univariate(r, d);
    let mut out = Vec::new();
    for a in &all {
        for b in &all {
            if &(a * b) == f && !a.is_zero() && a.leading_coeff().is_one() && !out.contains(a) {
                out.push(a.clone());
            }
        }
    }
    out
}

#[test]
fn parsing() {
    let r = ring("QQ[x,y]");
    let f = r.parse("x^2*y - 1/2").unwrap();
    assert_eq!(f.num_terms(), 2);
    assert_eq!(r.fmt(&f), "x^2*y - 1/2");
    assert!(ring("GF(2)[x]").parse("x+x").unwrap().is_zero());
    assert!(ring("QQ[x;gens=x^2,x^3]").parse("x").is_err());
}

#[test]
fn weighted_degrees_and_forms() {
    let r = ring("QQ[x,y]");
    let p = |s: &str| r.parse(s).unwrap();
    assert_eq!(p("x^2*y").weighted_degree(&[1, 3]), Degree::Fin(5));
    assert_eq!(p("0").weighted_degree(&[1, 1]), Degree::NegInf);
    assert_eq!(p("x^3+y^2+x^4*y").weighted_degree(&[1, 1]), Degree::Fin(5));
    assert_eq!(p("x^3+y^2+x^4*y").leading_form(&[1, 1]), p("x^4*y"));
    assert_eq!(p("x+y").leading_form(&[1, 1]), p("x+y"));
    let u = ring("QQ[x]");
    assert_eq!(u.parse("2*x+1").unwrap().leading_form(&[1]), u.parse("2*x").unwrap());
}

#[test]
fn finite_field_factorizations() {
    let g2 = ring("GF(2)[x]");
    let f = factor_exhaustive_gf(&g2.parse("x^2+x").unwrap(), FactorCaps::default()).unwrap();
    assert!(f.unit.is_one());
    assert_eq!(f.factors, vec![(g2.parse("x").unwrap(), 1), (g2.parse("x+1").unwrap(), 1)]);
    let irr = factor_exhaustive_gf(&g2.parse("x^2+x+1").unwrap(), FactorCaps::default()).unwrap();
    assert_eq!(irr.factors.len(), 1);
    let g3 = ring("GF(3)[x,y]");
    let f = factor_exhaustive_gf(&g3.parse("x*y+x+y+1").unwrap(), FactorCaps::default()).unwrap();
    let mut fs: Vec<Poly> = f.factors.iter().map(|(p, _)| p.clone()).collect();
    fs.sort();
    let mut want = polys(&g3, &["x+1", "y+1"]);
    want.sort();
    assert_eq!(fs, want);
}

#[test]
fn ring_divisors() {
    let s = ring("QQ[x;gens=x^2,x^3]");
    let fz = recip::factor::Factorizer::new(&s, FactorCaps::default());
    let mut d = divisors_in_ring(&fz.factor(&s.parse("x^6").unwrap()), &s).unwrap();
    d.sort();
    let mut want = polys(&s, &["1", "x^2", "x^3", "x^4", "x^6"]);
    want.sort();
    assert_eq!(d, want);
    let q = ring("QQ[x,y]");
    let fz = recip::factor::Factorizer::new(&q, FactorCaps::default());
    let d = divisors_in_ring(&fz.factor(&q.parse("(x+1)*(y+1)").unwrap()), &q).unwrap();
    assert_eq!(d.len(), 4);
    // oracle: every divisor found by brute force in GF(2)[x] is listed
    let g2 = ring("GF(2)[x]");
    let f = g2.parse("x^4+x^2").unwrap();
    let fz = recip::factor::Factorizer::new(&g2, FactorCaps::default());
    let mut listed = divisors_in_ring(&fz.factor(&f), &g2).unwrap();
    let mut brute = brute_divisors(&g2, &f);
    listed.sort();
    brute.sort();
    assert_eq!(listed, brute);
}

#[test]
fn arithmetic() {
    let r = ring("QQ[x,y]");
    let p = |s: &str| r.parse(s).unwrap();
    assert_eq!(p("x^2+x").divexact(&p("x")).unwrap(), p("x+1"));
    assert!(p("x+1").divexact(&p("x")).is_err());
    assert_eq!(&p("x+1") * &p("y+1"), p("x*y+x+y+1"));
}

#[test]
fn spans_and_dependencies() {
    let q = ring("QQ[x]");
    let s = span_of(&polys(&q, &["x", "x+1", "1"]));
    assert_eq!(s.dim(), 2);
    assert!(s.contains(&q.one()) && s.contains(&q.var(0)));
    assert_eq!(span_of(&[]).dim(), 0);
    let g2 = ring("GF(2)[x]");
    assert_eq!(span_of(&polys(&g2, &["x^2+x", "x"])).dim(), 2);
    assert_eq!(in_span(&q.zero(), &s).unwrap().iter().filter(|c| !c.is_zero()).count(), 0);
    assert!(in_span(&q.var(0), &span_of(&[q.one()])).is_none());
    let closed = factroid_closure(&[g2.parse("x^2+x").unwrap()], &g2, FactorCaps::default(), 5).unwrap();
    assert!(in_span(&g2.var(0), &closed.basis).is_some());
    // four polynomials of degree <= 3 without constant term: always dependent
    let t = ring("QQ[t]");
    assert!(matches!(
        find_linear_dependency(&polys(&t, &["t", "t^2+t", "t^3", "t^3-2*t^2"])),
        Dependency::Found(_)
    ));
    assert!(matches!(find_linear_dependency(&polys(&t, &["1", "t"])), Dependency::Independent));
    let r = ring("QQ[x,y]");
    match find_linear_dependency(&polys(&r, &["y", "y"])) {
        Dependency::Found(c) => {
            assert!(c[1].is_one());
            assert!(c[0].add(&c[1]).is_zero());
        }
        d => panic!("{d:?}"),
    }
}

#[test]
fn values_of_sums() {
    let r = ring("QQ[x,y]");
    let p = |s: &str| r.parse(s).unwrap();
    let eq = |a: &RatFunc, n: &str, d: &str| ratfunc_equal(a, &RatFunc::new(p(n), p(d)).unwrap());
    assert!(eq(&to_ratfunc(&ufs(&r, &["x", "y"]), &r), "x+y", "x*y"));
    assert!(to_ratfunc(&UnitFractionSum::new(vec![]).unwrap(), &r).is_zero());
    assert!(eq(&to_ratfunc(&ufs(&r, &["1", "x", "y"]), &r), "x*y+x+y", "x*y"));
    let rf = |n: &str, d: &str| RatFunc::new(p(n), p(d)).unwrap();
    assert!(ratfunc_equal(&rf("x+1", "x"), &rf("x^2+x", "x^2")));
    assert!(!ratfunc_equal(&rf("1", "x"), &rf("1", "y")));
    assert!(ratfunc_equal(&rf("x", "x*y"), &rf("1", "y")));
}

#[test]
fn units() {
    let r = ring("QQ[x,y]");
    assert!(is_unit_graded(&ufs(&r, &["1", "x", "y"]), &r));
    assert!(!is_unit_graded(&ufs(&r, &["x", "y"]), &r));
    assert!(is_unit_graded(&ufs(&r, &["2", "2"]), &r));
}

#[test]
fn splits() {
    let q = ring("QQ[x]");
    let x = q.var(0);
    let one = q.field.one();
    let (a, b) = split_identity(&x, &one).unwrap();
    assert_eq!((q.fmt(&a), q.fmt(&b)), ("x + 1".into(), "x^2 + x".into()));
    let (a, b) = split_identity(&x, &q.field.from_i64(2)).unwrap();
    assert_eq!((q.fmt(&a), q.fmt(&b)), ("x + 2".into(), "1/2*x^2 + x".into()));
    assert!(matches!(split_identity(&q.int(-1), &one), Err(recip::Error::DegenerateSplit)));
}

#[test]
fn distinct_rewrites() {
    let q = ring("QQ[x,y]");
    let b = Budget::new(10_000);
    let out = distinctify(&ufs(&q, &["x", "x"]), &q, &b).unwrap();
    let mut n = names(&q, &out);
    n.sort();
    assert_eq!(n, vec!["x", "x + 1", "x^2 + x"]);
    let s = ufs(&q, &["x", "x", "x"]);
    let out = distinctify(&s, &q, &b).unwrap();
    assert_eq!(out.len(), 5);
    assert!(ratfunc_equal(&to_ratfunc(&s, &q), &to_ratfunc(&out, &q)));
    assert_eq!(names(&q, &distinctify(&ufs(&q, &["x", "y"]), &q, &b).unwrap()), vec!["x", "y"]);
}

#[test]
fn decompositions() {
    let q = ring("QQ[x]");
    let d = decompose(&q.var(0), &q.parse("x+1").unwrap(), &q, MemberConfig::default()).unwrap();
    assert_eq!(names(&q, &d), vec!["1", "-x - 1"]);
    let d = decompose(&q.one(), &q.var(0), &q, MemberConfig::default()).unwrap();
    assert_eq!(names(&q, &d), vec!["x"]);
    let r = ring("QQ[x,y]");
    let (a, b) = (r.parse("x*y").unwrap(), r.parse("x*y+x+y").unwrap());
    let d = decompose(&a, &b, &r, MemberConfig::default()).unwrap();
    assert!(ratfunc_equal(&to_ratfunc(&d, &r), &RatFunc::new(a, b).unwrap()));
    assert!(decompose(&r.var(0), &r.var(1), &r, MemberConfig::default()).is_err());
}

#[test]
fn inverses() {
    let q = ring("QQ[x]");
    let b = Budget::new(100_000);
    assert_eq!(names(&q, &invert_unit(&ufs(&q, &["1", "x"]), &q, &b).unwrap()), vec!["1", "-x - 1"]);
    assert_eq!(names(&q, &invert_unit(&ufs(&q, &["2"]), &q, &b).unwrap()), vec!["1/2"]);
    let r = ring("QQ[x,y]");
    let s = ufs(&r, &["1", "x", "y"]);
    let inv = invert_unit(&s, &r, &b).unwrap();
    assert_eq!(inv.len(), 8);
    let prod = to_ratfunc(&s, &r).mul(&to_ratfunc(&inv, &r));
    assert!(ratfunc_equal(&prod, &RatFunc::from_poly(r.one())));
    assert!(matches!(invert_unit(&ufs(&r, &["x"]), &r, &b), Err(recip::Error::NotAUnit)));
}

#[test]
fn valuations() {
    let q = ring("QQ[x]");
    let v = |n: &str, d: &str| valuation_graded(&RatFunc::new(q.parse(n).unwrap(), q.parse(d).unwrap()).unwrap(), &q);
    assert_eq!(v("x+1", "x"), Valuation::Finite(0));
    assert_eq!(v("1", "x^2+x"), Valuation::Finite(2));
    assert!(v("x", "1").not_in_w());
    assert_eq!(is_egyptian(&q.var(0), &q), Egyptian::No);
    assert_eq!(is_egyptian(&q.int(3), &q), Egyptian::Yes);
    let g2 = ring("GF(2)[x]");
    assert_eq!(is_egyptian(&g2.parse("x^2+x").unwrap(), &g2), Egyptian::No);
}

#[test]
fn greedy_expansions() {
    let q = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let s = |v: Vec<BigInt>| v.iter().map(|n| n.to_string()).collect::<Vec<_>>();
    // replay of the greedy steps with exact rationals
    let mut rest = q(4, 17);
    let mut manual = Vec::new();
    while rest != q(0, 1) {
        let n: BigInt = (rest.denom() + rest.numer() - BigInt::from(1)) / rest.numer();
        rest -= BigRational::new(1.into(), n.clone());
        manual.push(n.to_string());
    }
    assert_eq!(manual, vec!["5", "29", "1233", "3039345"]);
    assert_eq!(s(greedy_egyptian_rational(&q(4, 17)).unwrap()), manual);
    assert_eq!(s(greedy_egyptian_rational(&q(1, 1)).unwrap()), vec!["1"]);
    assert_eq!(s(greedy_egyptian_rational(&q(2, 3)).unwrap()), vec!["2", "6"]);
}

#[test]
fn one_step_spans() {
    let q = ring("QQ[x]");
    let f = f1_step(&polys(&q, &["x^2"]), &q, FactorCaps::default()).unwrap();
    assert_eq!(f.dim(), 3);
    let s = ring("QQ[x;gens=x^2,x^3]");
    let f = f1_step(&polys(&s, &["x^6"]), &s, FactorCaps::default()).unwrap();
    assert_eq!(f.dim(), 5);
    assert!(f.contains(&s.parse("x^3").unwrap()) && !f.contains(&s.parse("x^5").unwrap()));
    // GF(2): divisors of x^2 + x by brute force, then their span
    let g2 = ring("GF(2)[x]");
    let h = g2.parse("x^2+x").unwrap();
    let brute = span_of(&brute_divisors(&g2, &h));
    let f = f1_step(&[h], &g2, FactorCaps::default()).unwrap();
    assert_eq!(f.dim(), brute.dim());
    assert!(brute.rows().iter().all(|r| f.contains(r)));
}

#[test]
fn closures() {
    let g2 = ring("GF(2)[x]");
    let c = factroid_closure(&polys(&g2, &["x^2+x"]), &g2, FactorCaps::default(), 10).unwrap();
    assert_eq!(c.dim(), 3);
    assert!(c.closed && c.exhaustive);
    // brute force: iterate "span of all divisors of all span elements" to a fixed point
    let all = all_univariate(&g2, 2);
    let mut cur = span_of(&polys(&g2, &["x^2+x"]));
    loop {
        let mut gens: Vec<Poly> = cur.rows().to_vec();
        for f in all.iter().filter(|f| !f.is_zero() && cur.contains(f)) {
            gens.extend(brute_divisors(&g2, f));
        }
        let next = span_of(&gens);
        if next.dim() == cur.dim() {
            break;
        }
        cur = next;
    }
    assert_eq!(cur.dim(), c.dim());
    let r = ring("QQ[x,y]");
    let c = factroid_closure(&polys(&r, &["x^3+y^2+x^4*y"]), &r, FactorCaps::default(), 4).unwrap();
    assert!(c.closed);
    assert_eq!(c.dim(), 2);
    let k = factroid_closure(&polys(&r, &["3"]), &r, FactorCaps::default(), 4).unwrap();
    assert_eq!(k.dim(), 1);
}

#[test]
fn colon_spaces() {
    let q = ring("QQ[x]");
    let x = q.var(0);
    let big = factroid_closure(&polys(&q, &["x^3"]), &q, FactorCaps::default(), 4).unwrap();
    let small = factroid_closure(&polys(&q, &["x^2"]), &q, FactorCaps::default(), 4).unwrap();
    let col = colon_space(&big, &x, &q).unwrap();
    assert!(small.basis.rows().iter().all(|r| col.contains(r)));
}

#[test]
fn membership_examples() {
    let r = ring("QQ[x,y]");
    let p = |s: &str| r.parse(s).unwrap();
    let v = member(&p("1"), &p("x"), &r).unwrap();
    assert!(v.is_in());
    match member(&p("x"), &p("y"), &r).unwrap() {
        MembershipVerdict::Out(c) => assert_eq!(c.kind, OutKind::Weight(WeightVector(vec![1, 0]))),
        v => panic!("{v:?}"),
    }
    assert!(member(&p("x"), &p("1"), &r).unwrap().is_out());
    match member(&p("x+y"), &p("x-y"), &r).unwrap() {
        MembershipVerdict::Out(c) => assert_eq!(c.kind, OutKind::LeadingForm(WeightVector(vec![1, 1]))),
        v => panic!("{v:?}"),
    }
}

#[test]
fn certificate_checks() {
    let q = ring("QQ[x]");
    let (x, x1) = (q.var(0), q.parse("x+1").unwrap());
    let v = member(&x, &x1, &q).unwrap();
    assert!(verify_certificate(&v, &x, &x1, &q));
    let r = ring("QQ[x,y]");
    let w = |w: Vec<u32>| MembershipVerdict::Out(OutCertificate { kind: OutKind::Weight(WeightVector(w)), shift: None });
    assert!(verify_certificate(&w(vec![1, 0]), &r.var(0), &r.var(1), &r));
    assert!(!verify_certificate(&w(vec![0, 1]), &r.var(0), &r.var(1), &r));
}

#[test]
fn oracle_examples() {
    let s = ring("GF(2)[x;gens=x^2,x^3]");
    let p = |t: &str| s.parse(t).unwrap();
    assert!(matches!(oracle_member_gf(&p("x^3"), &p("x^6"), &s, OracleCaps::default()).unwrap(), OracleVerdict::In { .. }));
    let caps = OracleCaps { c_cap: 3, ..Default::default() };
    assert!(matches!(
        oracle_member_gf(&p("x^3"), &p("x^4"), &s, caps).unwrap(),
        OracleVerdict::OutAtBound { c_cap: 3, .. }
    ));
}
