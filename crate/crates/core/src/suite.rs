//! Reproduction suite: ten checks with pinned tolerances and time limits.
//!
//! Every certificate produced along the way is logged and replayed by the
//! last check, which also confirms that perturbed certificates are rejected.

use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;
use crate::cert::{verify_certificate, verify_in, Expr, MembershipVerdict, OutKind};
use crate::factroid::f1_step;
use crate::linalg::span_of;
use crate::member::{oracle_member_gf, Engine, MemberConfig, OracleCaps, OracleVerdict};
use crate::parse::parse_ring;
use crate::poly::Poly;
use crate::ratfunc::{ratfunc_equal, RatFunc};
use crate::recip::{
    greedy_egyptian_rational, invert_unit, is_unit_graded, to_ratfunc, valuation_graded, distinctify,
    UnitFractionSum, Valuation,
};
use crate::ring::AmbientRing;
use crate::spectrum::{
    irred_conditions_report, linalg2_witness, monomial_prime_lattice, Condition, ContainmentVerdict, IrredBounds,
};

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {} {} ({:.2}s{}): {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.elapsed.as_secs_f64(),
            self.limit.map(|l| format!(", limit {}s", l.as_secs())).unwrap_or_default(),
            self.detail
        )
    }
}

enum Logged {
    In(Arc<Expr>, Poly, Poly, AmbientRing),
    Verdict(MembershipVerdict, Poly, Poly, AmbientRing),
}

pub struct Suite {
    seed: u64,
    log: Mutex<Vec<Logged>>,
}

fn ring(s: &str) -> AmbientRing {
    parse_ring(s).expect("fixed ring")
}

fn random_poly(r: &AmbientRing, rng: &mut ChaCha8Rng, max_deg: u64, coeff: i64) -> Poly {
    let monos = r.monomials_up_to(max_deg);
    loop {
        let mut f = r.zero();
        for m in &monos {
            if rng.gen_bool(0.4) {
                f.add_term(m.clone(), r.field.from_i64(rng.gen_range(-coeff..=coeff)));
            }
        }
        if !f.is_constant() {
            return f;
        }
    }
}

fn recip_sum(s: &UnitFractionSum) -> Arc<Expr> {
    Expr::add(s.denominators.iter().cloned().map(Expr::recip).collect())
}

/// Runs `body` and wraps its outcome with timing.
fn timed(
    id: u32,
    name: &'static str,
    limit: Option<u64>,
    body: impl FnOnce() -> std::result::Result<String, String>,
) -> CriterionResult {
    let t = Instant::now();
    let r = body();
    let elapsed = t.elapsed();
    let limit = limit.map(Duration::from_secs);
    let (mut passed, mut detail) = match r {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(l) = limit {
        if elapsed > l {
            passed = false;
            detail = format!("over time limit; {detail}");
        }
    }
    CriterionResult { id, name, passed, detail, elapsed, limit }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

impl Suite {
    pub fn new(seed: u64) -> Self {
        Suite { seed, log: Mutex::new(Vec::new()) }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9e37_79b9).wrapping_add(salt))
    }

    fn log_in(&self, e: Arc<Expr>, a: &Poly, b: &Poly, r: &AmbientRing) {
        self.log.lock().unwrap().push(Logged::In(e, a.clone(), b.clone(), r.clone()));
    }

    fn log_verdict(&self, v: &MembershipVerdict, a: &Poly, b: &Poly, r: &AmbientRing) {
        if !matches!(v, MembershipVerdict::Unknown { .. }) {
            self.log.lock().unwrap().push(Logged::Verdict(v.clone(), a.clone(), b.clone(), r.clone()));
        }
    }

    /// Inverse of `1 + 1/f` is `1 - 1/(f+1)`.
    pub fn inversion_identity(&self) -> CriterionResult {
        timed(1, "inversion identity", Some(1), || {
            let mut rng = self.rng(1);
            let cases: Vec<(AmbientRing, u64, usize)> = vec![(ring("GF(5)[x,y]"), 3, 50), (ring("QQ[x]"), 3, 10)];
            let mut count = 0;
            for (r, d, n) in cases {
                for _ in 0..n {
                    let f = random_poly(&r, &mut rng, d, 4);
                    let s = UnitFractionSum::new(vec![r.one(), f.clone()]).unwrap();
                    let inv = invert_unit(&s, &r, &Budget::new(10_000)).map_err(|e| e.to_string())?;
                    let want = -&(&f + &r.one());
                    let mut got = inv.denominators.clone();
                    got.sort();
                    let mut exp = vec![r.one(), want];
                    exp.sort();
                    ensure!(got == exp, "inverse of 1 + 1/({}) is {}", r.fmt(&f), inv.display(&r));
                    let prod = to_ratfunc(&s, &r).mul(&to_ratfunc(&inv, &r));
                    ensure!(ratfunc_equal(&prod, &RatFunc::from_poly(r.one())), "product is not 1");
                    self.log_in(Expr::mul(vec![recip_sum(&s), recip_sum(&inv)]), &r.one(), &r.one(), &r);
                    count += 1;
                }
            }
            Ok(format!("{count} inverses equal {{1, -(f+1)}}, products exactly 1"))
        })
    }

    fn invert_check(&self, r: &AmbientRing, vars: &[&str]) -> std::result::Result<usize, String> {
        let mut ds = vec![r.one()];
        ds.extend(vars.iter().map(|v| r.parse(v).unwrap()));
        let s = UnitFractionSum::new(ds).unwrap();
        let inv = invert_unit(&s, r, &Budget::new(1_000_000)).map_err(|e| e.to_string())?;
        let prod = to_ratfunc(&s, r).mul(&to_ratfunc(&inv, r));
        ensure!(ratfunc_equal(&prod, &RatFunc::from_poly(r.one())), "product is not 1");
        self.log_in(Expr::mul(vec![recip_sum(&s), recip_sum(&inv)]), &r.one(), &r.one(), r);
        Ok(inv.len())
    }

    pub fn small_inverses(&self) -> CriterionResult {
        timed(2, "inverses of 1+1/x+1/y and 1+1/x+1/y+1/z", Some(65), || {
            let t = Instant::now();
            let n2 = self.invert_check(&ring("QQ[x,y]"), &["x", "y"])?;
            let t2 = t.elapsed();
            ensure!(n2 <= 10, "two-variable inverse has {n2} terms");
            ensure!(t2 <= Duration::from_secs(5), "two-variable inverse took {t2:?}");
            let t = Instant::now();
            let n3 = self.invert_check(&ring("QQ[x,y,z]"), &["x", "y", "z"])?;
            let t3 = t.elapsed();
            ensure!(t3 <= Duration::from_secs(60), "three-variable inverse took {t3:?}");
            Ok(format!("{n2} terms ({t2:.2?}), {n3} terms ({t3:.2?}), products exactly 1"))
        })
    }

    /// Over GF(2)[x], `a/b` is a member iff `deg a <= deg b`.
    pub fn univariate_law(&self) -> CriterionResult {
        timed(3, "univariate degree law over GF(2)[x]", Some(120), || {
            let r = ring("GF(2)[x]");
            let polys: Vec<Poly> = crate::member::monic_ring_polys(&r, 4, usize::MAX)
                .into_iter()
                .filter(|p| !p.is_constant())
                .collect();
            ensure!(polys.len() == 30, "expected 30 polynomials, got {}", polys.len());
            let mut pairs = 0;
            for a in &polys {
                for b in &polys {
                    let expect = a.total_degree() <= b.total_degree();
                    let v = Engine::new(&r, MemberConfig::default()).member(a, b).map_err(|e| e.to_string())?;
                    ensure!(!matches!(v, MembershipVerdict::Unknown { .. }), "member unknown on {} / {}", r.fmt(a), r.fmt(b));
                    ensure!(v.is_in() == expect, "member wrong on {} / {}", r.fmt(a), r.fmt(b));
                    self.log_verdict(&v, a, b, &r);
                    match oracle_member_gf(a, b, &r, OracleCaps::default()).map_err(|e| e.to_string())? {
                        OracleVerdict::In { certificate, .. } => {
                            ensure!(expect, "oracle finds {} / {} inside", r.fmt(a), r.fmt(b));
                            self.log_in(certificate, a, b, &r);
                        }
                        OracleVerdict::OutAtBound { .. } => {
                            ensure!(!expect, "oracle misses {} / {}", r.fmt(a), r.fmt(b))
                        }
                        OracleVerdict::Unknown(why) => return Err(format!("oracle unknown on {} / {}: {why}", r.fmt(a), r.fmt(b))),
                    }
                    pairs += 1;
                }
            }
            Ok(format!("{pairs} pairs, member and oracle agree with the degree law, no unknowns"))
        })
    }

    pub fn valuation_laws(&self) -> CriterionResult {
        timed(4, "valuation laws over GF(3)[x]", None, || {
            let r = ring("GF(3)[x]");
            let mut rng = self.rng(4);
            let member_pair = |rng: &mut ChaCha8Rng| -> std::result::Result<RatFunc, String> {
                let b = random_poly(&r, rng, 4, 2);
                let mut a = random_poly(&r, rng, 4, 2);
                while a.total_degree() > b.total_degree() {
                    a = random_poly(&r, rng, b.total_degree().finite().unwrap(), 2);
                }
                let v = Engine::new(&r, MemberConfig::default()).member(&a, &b).map_err(|e| e.to_string())?;
                ensure!(v.is_in(), "{} / {} not found inside", r.fmt(&a), r.fmt(&b));
                self.log_verdict(&v, &a, &b, &r);
                RatFunc::new(a, b).map_err(|e| e.to_string())
            };
            for _ in 0..100 {
                let x = member_pair(&mut rng)?;
                let y = member_pair(&mut rng)?;
                let (vx, vy) = (valuation_graded(&x, &r), valuation_graded(&y, &r));
                ensure!(valuation_graded(&x.mul(&y), &r) == vx.plus(vy), "product law fails");
                let vs = valuation_graded(&x.add(&y), &r);
                ensure!(vs >= vx.min(vy), "sum law fails");
                ensure!(vx >= Valuation::Finite(0) && vy >= Valuation::Finite(0), "negative valuation on a member");
            }
            Ok("100 pairs: v(ab) = v(a) + v(b), v(a+b) >= min".into())
        })
    }

    pub fn monomial_lattice(&self) -> CriterionResult {
        timed(5, "monomial prime lattice n = 2, 3", Some(60), || {
            let mut summary = Vec::new();
            for (n, name) in [(2usize, "QQ[x,y]"), (3, "QQ[x,y,z]")] {
                let r = ring(name);
                let l = monomial_prime_lattice(n, &r, 4, &MemberConfig::default()).map_err(|e| e.to_string())?;
                ensure!(l.unknown_count() == 0, "n = {n}: {} unknown entries", l.unknown_count());
                ensure!(l.is_anti_isomorphic(), "n = {n}: order or heights differ from the subset lattice");
                for e in &l.entries {
                    let f = &l.nodes[e.larger].generator;
                    let g = &l.nodes[e.smaller].generator;
                    match &e.verdict {
                        ContainmentVerdict::Holds { e: k, certificate } => {
                            ensure!(*k == 1, "containment needs e = {k}");
                            let v = MembershipVerdict::In(certificate.clone());
                            ensure!(verify_certificate(&v, f, g, &r), "containment certificate fails replay");
                            self.log_verdict(&v, f, g, &r);
                        }
                        ContainmentVerdict::FailsWithCert { certificates, .. } => {
                            for (i, c) in certificates.iter().enumerate() {
                                ensure!(matches!(c.kind, OutKind::Weight(_)), "non-containment without weight certificate");
                                let v = MembershipVerdict::Out(c.clone());
                                let ge = g.pow(i as u32 + 1);
                                ensure!(verify_certificate(&v, f, &ge, &r), "weight certificate fails replay");
                                self.log_verdict(&v, f, &ge, &r);
                            }
                        }
                        ContainmentVerdict::Unknown { .. } => unreachable!("counted above"),
                    }
                }
                summary.push(format!("n = {n}: {} nodes, {} pairs", l.nodes.len(), l.entries.len()));
            }
            Ok(summary.join("; "))
        })
    }

    pub fn worked_examples(&self) -> CriterionResult {
        timed(6, "worked examples", Some(30), || {
            let r = ring("QQ[x,y]");
            let p = |s: &str| r.parse(s).unwrap();
            // (a) xy + x + y is associated to xy
            let f = p("x*y+x+y");
            ensure!(&f + &r.one() == &p("x+1") * &p("y+1"), "f + 1 does not factor");
            let theta = UnitFractionSum::new(vec![r.one(), p("x"), p("y")]).unwrap();
            ensure!(is_unit_graded(&theta, &r), "1 + 1/x + 1/y is not a unit");
            let inv = invert_unit(&theta, &r, &Budget::new(10_000)).map_err(|e| e.to_string())?;
            let route = Expr::mul(vec![Expr::recip(p("x")), Expr::recip(p("y")), recip_sum(&inv)]);
            ensure!(verify_in(&route, &r.one(), &f, &r), "1/f = (1/x)(1/y)(1 + 1/x + 1/y)^-1 fails");
            self.log_in(route, &r.one(), &f, &r);
            for (a, b) in [(p("x*y"), f.clone()), (f.clone(), p("x*y"))] {
                let v = Engine::new(&r, MemberConfig::default()).member(&a, &b).map_err(|e| e.to_string())?;
                ensure!(v.is_in() && verify_certificate(&v, &a, &b, &r), "associate quotient not certified");
                self.log_verdict(&v, &a, &b, &r);
            }
            // (b) y / (x^3 + y^2 + x^4 y) through g = y (y + x^4)
            let f = p("x^3+y^2+x^4*y");
            let g = &p("y") * &p("y+x^4");
            ensure!(&f - &g == p("x^3"), "f - g is not x^3");
            let engine = Engine::new(&r, MemberConfig::default());
            let rest = engine.decompose_expr(&p("x^3"), &g).ok_or("x^3 / (y (y + x^4)) not decomposed")?;
            ensure!(verify_in(&rest, &p("x^3"), &g, &r), "x^3 / g certificate fails");
            let mut th = vec![r.one()];
            th.extend(rest.flatten(&r.one()));
            let theta = UnitFractionSum::new(th).map_err(|e| e.to_string())?;
            ensure!(is_unit_graded(&theta, &r), "f/g is not a unit");
            let inv = invert_unit(&theta, &r, &Budget::new(100_000)).map_err(|e| e.to_string())?;
            let route = Expr::mul(vec![Expr::recip(p("y")), Expr::recip(p("y+x^4")), recip_sum(&inv)]);
            ensure!(verify_in(&route, &r.one(), &f, &r), "1/f = (1/y)(1/(y+x^4)) theta^-1 fails");
            self.log_in(route, &r.one(), &f, &r);
            let v = Engine::new(&r, MemberConfig::default()).member(&p("y"), &f).map_err(|e| e.to_string())?;
            ensure!(v.is_in() && verify_certificate(&v, &p("y"), &f, &r), "member(y, f) not certified");
            self.log_verdict(&v, &p("y"), &f, &r);
            // (c) x^3 in F_1(x^6) inside K[x^2, x^3]
            let s = ring("QQ[x;gens=x^2,x^3]");
            let q = |t: &str| s.parse(t).unwrap();
            let sp = f1_step(&[q("x^6")], &s, Default::default()).map_err(|e| e.to_string())?;
            ensure!(sp.contains(&q("x^3")), "x^3 missing from F_1(x^6)");
            ensure!(!span_of(&[q("1"), q("x^2"), q("x^4"), q("x^6")]).contains(&q("x^3")), "x^3 in the power span");
            let v = Engine::new(&s, MemberConfig::default()).member(&q("x^3"), &q("x^6")).map_err(|e| e.to_string())?;
            ensure!(v.is_in() && verify_certificate(&v, &q("x^3"), &q("x^6"), &s), "x^3 / x^6 not certified");
            self.log_verdict(&v, &q("x^3"), &q("x^6"), &s);
            // (d) ladder for xy + x + y
            let rep = irred_conditions_report(&p("x*y+x+y"), &r, &IrredBounds::default()).map_err(|e| e.to_string())?;
            ensure!(matches!(rep.condition("4"), Condition::Fails(w) if w.starts_with("u = 1:")), "(4) does not fail at u = 1");
            ensure!(rep.chain_consistent(), "report breaks the implication chain");
            Ok("(a) associates, (b) unit route and member, (c) F_1 step, (d) u = 1 witness".into())
        })
    }

    pub fn linalg2(&self) -> CriterionResult {
        timed(7, "linear-algebra witness for x/(fg)^N", Some(10), || {
            let r = ring("QQ[x,y]");
            let p = |s: &str| r.parse(s).unwrap();
            let (f, g) = (p("y+x^2"), p("y+x"));
            let w = linalg2_witness(&f, &g, &r, 0, 3).map_err(|e| e.to_string())?;
            ensure!(w.n <= 3 && !w.h.is_zero(), "bad witness");
            ensure!(w.h.divexact(&p("x")).is_ok(), "x does not divide h");
            let h = w
                .coeffs
                .iter()
                .fold(r.zero(), |acc, ((i, j), u)| &acc + &(&f.pow(*i) * &g.pow(*j)).scale(u));
            ensure!(h == w.h, "h does not expand to the stated combination");
            let b = (&f * &g).pow(w.n);
            ensure!(verify_in(&w.certificate, &p("x"), &b, &r), "witness certificate fails");
            self.log_in(w.certificate.clone(), &p("x"), &b, &r);
            let cfg = MemberConfig { hints: vec![f.clone(), g.clone()], ..Default::default() };
            let v = Engine::new(&r, cfg).member(&p("x"), &b).map_err(|e| e.to_string())?;
            ensure!(v.is_in() && verify_certificate(&v, &p("x"), &b, &r), "member(x, (fg)^N) not certified");
            self.log_verdict(&v, &p("x"), &b, &r);
            Ok(format!("N = {}, h = {}", w.n, r.fmt(&w.h)))
        })
    }

    pub fn distinctify_check(&self) -> CriterionResult {
        timed(8, "distinct denominators over GF(5)[x,y]", None, || {
            let r = ring("GF(5)[x,y]");
            let mut rng = self.rng(8);
            for _ in 0..100 {
                let k = rng.gen_range(1..=4);
                let mut ds: Vec<Poly> = (0..k).map(|_| random_poly(&r, &mut rng, 2, 2)).collect();
                let extra = rng.gen_range(1..=4);
                for _ in 0..extra {
                    let d = ds[rng.gen_range(0..ds.len())].clone();
                    ds.push(d);
                }
                let s = UnitFractionSum::new(ds).unwrap();
                let out = distinctify(&s, &r, &Budget::new(10_000)).map_err(|e| format!("{} : {e}", s.display(&r)))?;
                let mut sorted = out.denominators.clone();
                sorted.sort();
                sorted.dedup();
                ensure!(sorted.len() == out.len(), "repeated denominator in {}", out.display(&r));
                let val = to_ratfunc(&s, &r);
                ensure!(ratfunc_equal(&val, &to_ratfunc(&out, &r)), "value changed for {}", s.display(&r));
                self.log_in(recip_sum(&out), &val.num, &val.den, &r);
            }
            Ok("100 sums: pairwise distinct, values equal, no budget failures at 10^4".into())
        })
    }

    pub fn greedy(&self) -> CriterionResult {
        timed(9, "greedy Egyptian fractions", None, || {
            let q = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
            let v: Vec<String> = greedy_egyptian_rational(&q(4, 17))
                .map_err(|e| e.to_string())?
                .iter()
                .map(|n| n.to_string())
                .collect();
            ensure!(v == ["5", "29", "1233", "3039345"], "4/17 gives {v:?}");
            let mut rng = self.rng(9);
            for _ in 0..500 {
                let b = rng.gen_range(2..=200i64);
                let a = rng.gen_range(1..b);
                let x = q(a, b);
                let ds = greedy_egyptian_rational(&x).map_err(|e| e.to_string())?;
                ensure!(ds.windows(2).all(|w| w[0] < w[1]), "{a}/{b} not strictly increasing");
                let s: BigRational = ds.iter().map(|n| BigRational::new(BigInt::one(), n.clone())).sum();
                ensure!(s == x, "{a}/{b} sum mismatch");
            }
            Ok("4/17 = 1/5 + 1/29 + 1/1233 + 1/3039345; 500 random rationals exact".into())
        })
    }

    /// Replays everything logged so far and checks that perturbing one
    /// coefficient breaks each membership certificate.
    pub fn soundness(&self) -> CriterionResult {
        timed(10, "certificate replay and mutation", None, || {
            let log = self.log.lock().unwrap();
            ensure!(!log.is_empty(), "no certificates logged");
            let (mut replayed, mut mutated) = (0, 0);
            for item in log.iter() {
                let (e, a, b, r) = match item {
                    Logged::In(e, a, b, r) => {
                        ensure!(verify_in(e, a, b, r), "logged identity fails replay");
                        (e.clone(), a, b, r)
                    }
                    Logged::Verdict(v, a, b, r) => {
                        ensure!(verify_certificate(v, a, b, r), "logged verdict fails replay");
                        replayed += 1;
                        match v {
                            MembershipVerdict::In(c) => (c.expression.clone(), a, b, r),
                            _ => continue,
                        }
                    }
                };
                let m = e.mutated();
                if m.to_json(r) == e.to_json(r) {
                    // nothing to perturb (empty sum)
                    continue;
                }
                ensure!(!verify_in(&m, a, b, r), "mutated certificate still verifies");
                mutated += 1;
            }
            Ok(format!("{} items replayed ({replayed} verdicts), {mutated} mutations rejected", log.len()))
        })
    }

    pub fn run(&self, id: u32) -> Option<CriterionResult> {
        Some(match id {
            1 => self.inversion_identity(),
            2 => self.small_inverses(),
            3 => self.univariate_law(),
            4 => self.valuation_laws(),
            5 => self.monomial_lattice(),
            6 => self.worked_examples(),
            7 => self.linalg2(),
            8 => self.distinctify_check(),
            9 => self.greedy(),
            10 => self.soundness(),
            _ => return None,
        })
    }

    /// All ten in order; the callback sees each result as it completes.
    pub fn run_all(&self, mut on_result: impl FnMut(&CriterionResult)) -> Vec<CriterionResult> {
        (1..=10)
            .map(|i| {
                let r = self.run(i).expect("known criterion");
                on_result(&r);
                r
            })
            .collect()
    }
}
