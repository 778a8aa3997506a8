//! Command-line front end. Prints one JSON document (or a plain rendering
//! with `--format text`) per invocation.
//!
//! Exit status: 0 for a definitive answer, 2 when the answer is unknown or a
//! search ran out of budget, 64 for malformed input.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use recip::budget::{Budget, DEFAULT_BUDGET};
use recip::cert::{verify_certificate, MembershipVerdict};
use recip::factroid::{colon_space, f1_step, factroid_closure, FSpace};
use recip::linalg::span_of;
use recip::member::{oracle_member_gf, Engine, MemberConfig, OracleCaps, OracleVerdict};
use recip::parse::parse_ring;
use recip::recip::{distinctify, greedy_egyptian_rational, invert_unit, parse_ufs, to_ratfunc};
use recip::spectrum::{
    irred_conditions_report, l_of_pf_truncated, linalg2_witness, monomial_prime_lattice, p_of_w_member,
    prime_contains, pseudoradical_member_2var, ContainmentVerdict, IrredBounds, PofW, Pseudoradical,
    DEFAULT_E_MAX,
};
use recip::suite::Suite;
use recip::{AmbientRing, Error, Poly};

const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "recip", version, about = "Reciprocal complements of polynomial rings")]
struct Cli {
    /// Ring, e.g. "QQ[x,y]", "GF(5)[x,y]", "QQ[x;gens=x^2,x^3]".
    #[arg(long, global = true, default_value = "QQ[x,y]")]
    ring: String,
    /// Search step budget.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Comma-separated caps: degree=N, enum=N, c=N, steps=N, depth=N.
    #[arg(long, global = true)]
    caps: Option<String>,
    #[arg(long, global = true, default_value_t = 20240611)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Re-verify certificates before printing.
    #[arg(long, global = true)]
    replay: bool,
    /// Worker threads for parallel searches.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Known divisor offered to the factorizer (repeatable).
    #[arg(long = "hint", global = true)]
    hints: Vec<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Is a/b in the reciprocal complement?
    Member { a: String, b: String },
    /// Write a/b as a sum of unit fractions.
    Decompose { a: String, b: String },
    /// Invert a unit given as a unit-fraction sum, e.g. "1 + 1/x".
    Invert { sum: String },
    /// Rewrite a unit-fraction sum with pairwise distinct denominators.
    Distinctify { sum: String },
    /// Divisor closure of the span of the given polynomials.
    Factroid {
        polys: Vec<String>,
        #[arg(long, default_value_t = 8)]
        steps: usize,
        /// Apply a single divisor step only.
        #[arg(long)]
        one_step: bool,
    },
    /// {f : c f in V} for V spanned by the given polynomials.
    Colon {
        c: String,
        polys: Vec<String>,
        /// Close V under divisors first.
        #[arg(long)]
        close: bool,
    },
    /// Is p_g contained in p_f?
    PrimeContains {
        g: String,
        f: String,
        #[arg(long, default_value_t = DEFAULT_E_MAX)]
        e_max: u32,
    },
    /// Containments among the primes p_J for monomials x_J.
    Lattice {
        n: usize,
        #[arg(long, default_value_t = DEFAULT_E_MAX)]
        e_max: u32,
        /// Print DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Pseudoradical membership of 1/f in two variables.
    Pseudoradical { f: String },
    /// Witness N, h with x_v / (fg)^N a member.
    Linalg2 {
        f: String,
        g: String,
        #[arg(long, default_value = "x")]
        var: String,
        #[arg(long, default_value_t = 6)]
        n_max: u32,
    },
    /// Degree-capped inner approximation of L(p_f).
    LOfPf {
        f: String,
        #[arg(long, default_value_t = 3)]
        cap: u64,
        #[arg(long, default_value_t = DEFAULT_E_MAX)]
        e_max: u32,
    },
    /// Is 1/x in p(W) for W generated by the given polynomials?
    POfW {
        x: String,
        gens: Vec<String>,
        #[arg(long, default_value_t = 4)]
        max_factors: u32,
    },
    /// Irreducibility conditions (1**), (2), (3), (4), (5) for g.
    IrredReport {
        g: String,
        #[arg(long, default_value_t = DEFAULT_E_MAX)]
        e_max: u32,
    },
    /// Greedy Egyptian-fraction expansion of a positive rational.
    Greedy { q: String },
    /// Exhaustive multiplier search over a finite field.
    Oracle {
        a: String,
        b: String,
        #[arg(long, default_value_t = 4)]
        c_cap: u32,
    },
    /// Run the ten-criterion reproduction suite.
    #[command(name = "verify-paper")]
    Reproduce,
}

struct Outcome {
    value: Value,
    definitive: bool,
    /// Raw text to print instead of the JSON value.
    raw: Option<String>,
}

impl Outcome {
    fn done(value: Value) -> Self {
        Outcome { value, definitive: true, raw: None }
    }

    fn unknown(value: Value) -> Self {
        Outcome { value, definitive: false, raw: None }
    }
}

enum Failure {
    Usage(String),
    Exhausted(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded(_) | Error::BudgetExhausted(_) | Error::NoDecomposition(_) => {
                Failure::Exhausted(json!({ "error": e.to_string() }))
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

struct Ctx {
    ring: AmbientRing,
    cfg: MemberConfig,
    replay: bool,
    seed: u64,
}

impl Ctx {
    fn poly(&self, s: &str) -> Result<Poly, Failure> {
        self.ring.parse(s).map_err(|e| Failure::Usage(format!("{s:?}: {e}")))
    }

    fn polys(&self, xs: &[String]) -> Result<Vec<Poly>, Failure> {
        xs.iter().map(|s| self.poly(s)).collect()
    }

    fn fspace_json(&self, f: &FSpace) -> Value {
        json!({
            "dim": f.dim(),
            "basis": f.basis.rows().iter().map(|p| self.ring.fmt(p)).collect::<Vec<_>>(),
            "degree_cap": f.degree_cap,
            "closed": f.closed,
            "exhaustive": f.exhaustive,
        })
    }
}

fn apply_caps(list: &str, cfg: &mut MemberConfig) -> Result<(), Failure> {
    for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("cap {part:?} is not key=value")))?;
        let n: u64 = v.parse().map_err(|_| Failure::Usage(format!("cap {part:?} needs an integer")))?;
        match k {
            "degree" => cfg.caps.degree_cap = n,
            "enum" => cfg.caps.enumeration_cap = n,
            "c" => cfg.c_cap = n as u32,
            "steps" => cfg.closure_steps = n as usize,
            "depth" => cfg.max_depth = n as usize,
            _ => return Err(Failure::Usage(format!("unknown cap {k:?}"))),
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let ring = parse_ring(&cli.ring).map_err(|e| Failure::Usage(format!("ring {:?}: {e}", cli.ring)))?;
    let mut cfg = MemberConfig { budget: cli.budget, jobs: cli.jobs.max(1), ..Default::default() };
    if let Some(c) = &cli.caps {
        apply_caps(c, &mut cfg)?;
    }
    let mut ctx = Ctx { ring, cfg, replay: cli.replay, seed: cli.seed };
    ctx.cfg.hints = ctx.polys(&cli.hints)?;
    let r = &ctx.ring;
    Ok(match cli.cmd {
        Cmd::Member { a, b } => {
            let (a, b) = (ctx.poly(&a)?, ctx.poly(&b)?);
            let engine = Engine::new(r, ctx.cfg.clone());
            let v = engine.member(&a, &b)?;
            let mut out = v.to_json(r);
            if ctx.replay && !matches!(v, MembershipVerdict::Unknown { .. }) {
                let ok = verify_certificate(&v, &a, &b, r);
                out["replayed"] = json!(ok);
                if !ok {
                    return Ok(Outcome::unknown(out));
                }
            }
            if matches!(v, MembershipVerdict::Unknown { .. }) {
                Outcome::unknown(out)
            } else {
                Outcome::done(out)
            }
        }
        Cmd::Decompose { a, b } => {
            let (a, b) = (ctx.poly(&a)?, ctx.poly(&b)?);
            let d = recip::member::decompose(&a, &b, r, ctx.cfg.clone())?;
            let mut out = d.to_json(r);
            if ctx.replay {
                let target = recip::ratfunc::RatFunc::new(a, b)?;
                out["replayed"] = json!(recip::ratfunc::ratfunc_equal(&to_ratfunc(&d, r), &target));
            }
            Outcome::done(out)
        }
        Cmd::Invert { sum } => {
            let s = parse_ufs(&sum, r)?;
            let inv = invert_unit(&s, r, &Budget::new(ctx.cfg.budget))?;
            let mut out = inv.to_json(r);
            if ctx.replay {
                let prod = to_ratfunc(&s, r).mul(&to_ratfunc(&inv, r));
                out["replayed"] = json!(recip::ratfunc::ratfunc_equal(
                    &prod,
                    &recip::ratfunc::RatFunc::from_poly(r.one())
                ));
            }
            Outcome::done(out)
        }
        Cmd::Distinctify { sum } => {
            let s = parse_ufs(&sum, r)?;
            let out = distinctify(&s, r, &Budget::new(ctx.cfg.budget))?;
            let mut v = out.to_json(r);
            if ctx.replay {
                v["replayed"] = json!(recip::ratfunc::ratfunc_equal(&to_ratfunc(&s, r), &to_ratfunc(&out, r)));
            }
            Outcome::done(v)
        }
        Cmd::Factroid { polys, steps, one_step } => {
            let ps = ctx.polys(&polys)?;
            let caps = ctx.cfg.caps;
            let f = if one_step { f1_step(&ps, r, caps)? } else { factroid_closure(&ps, r, caps, steps)? };
            Outcome::done(ctx.fspace_json(&f))
        }
        Cmd::Colon { c, polys, close } => {
            let c = ctx.poly(&c)?;
            let ps = ctx.polys(&polys)?;
            let v = if close {
                factroid_closure(&ps, r, ctx.cfg.caps, 8)?
            } else {
                FSpace {
                    basis: span_of(&ps),
                    degree_cap: ps.iter().filter_map(|p| p.total_degree().finite()).max().unwrap_or(0),
                    closed: false,
                    exhaustive: true,
                }
            };
            Outcome::done(ctx.fspace_json(&colon_space(&v, &c, r)?))
        }
        Cmd::PrimeContains { g, f, e_max } => {
            let (g, f) = (ctx.poly(&g)?, ctx.poly(&f)?);
            let v = prime_contains(&g, &f, r, e_max, &ctx.cfg)?;
            let out = v.to_json(r);
            if let ContainmentVerdict::Unknown { .. } = v {
                Outcome::unknown(out)
            } else {
                Outcome::done(out)
            }
        }
        Cmd::Lattice { n, e_max, dot } => {
            let l = monomial_prime_lattice(n, r, e_max, &ctx.cfg)?;
            let mut o = if l.unknown_count() == 0 { Outcome::done(l.to_json(r)) } else { Outcome::unknown(l.to_json(r)) };
            if dot {
                o.raw = Some(l.to_dot(r));
            }
            o
        }
        Cmd::Pseudoradical { f } => {
            let f = ctx.poly(&f)?;
            match pseudoradical_member_2var(&f, r, None)? {
                Pseudoradical::Yes(a, b) => Outcome::done(json!({
                    "verdict": "yes",
                    "factors": [r.fmt(&a), r.fmt(&b)],
                })),
                Pseudoradical::No(p) => Outcome::done(json!({ "verdict": "no", "factor": r.fmt(&p) })),
                Pseudoradical::Unknown => Outcome::unknown(json!({ "verdict": "unknown" })),
            }
        }
        Cmd::Linalg2 { f, g, var, n_max } => {
            let (f, g) = (ctx.poly(&f)?, ctx.poly(&g)?);
            let v = r
                .var_index(&var)
                .ok_or_else(|| Failure::Usage(format!("unknown variable {var:?}")))?;
            let w = linalg2_witness(&f, &g, r, v, n_max)?;
            let mut out = w.to_json(r);
            let b = (&f * &g).pow(w.n);
            let x = r.var(v);
            let mut cfg = ctx.cfg.clone();
            cfg.hints.extend([f.clone(), g.clone()]);
            let follow = Engine::new(r, cfg).member(&x, &b)?;
            out["member"] = follow.to_json(r);
            if ctx.replay {
                out["replayed"] = json!(recip::cert::verify_in(&w.certificate, &x, &b, r));
            }
            Outcome::done(out)
        }
        Cmd::LOfPf { f, cap, e_max } => {
            let f = ctx.poly(&f)?;
            Outcome::done(l_of_pf_truncated(&f, r, cap, e_max, &ctx.cfg)?.to_json(r))
        }
        Cmd::POfW { x, gens, max_factors } => {
            let x = ctx.poly(&x)?;
            let gs = ctx.polys(&gens)?;
            let v = p_of_w_member(&x, &gs, r, max_factors, &ctx.cfg)?;
            let out = v.to_json(r);
            if let PofW::Unknown { .. } = v {
                Outcome::unknown(out)
            } else {
                Outcome::done(out)
            }
        }
        Cmd::IrredReport { g, e_max } => {
            let g = ctx.poly(&g)?;
            let b = IrredBounds { e_max, member: ctx.cfg.clone(), ..Default::default() };
            let rep = irred_conditions_report(&g, r, &b)?;
            let mut out = rep.to_json();
            out["chain_consistent"] = json!(rep.chain_consistent());
            Outcome::done(out)
        }
        Cmd::Greedy { q } => {
            let qq = parse_ring("QQ[t]").expect("fixed ring");
            let v = qq
                .parse(&q)
                .ok()
                .and_then(|p| p.constant_value())
                .and_then(|c| c.as_rational().cloned())
                .ok_or_else(|| Failure::Usage(format!("{q:?} is not a rational number")))?;
            let ds = greedy_egyptian_rational(&v)?;
            Outcome::done(json!({ "denominators": ds.iter().map(|n| n.to_string()).collect::<Vec<_>>() }))
        }
        Cmd::Oracle { a, b, c_cap } => {
            let (a, b) = (ctx.poly(&a)?, ctx.poly(&b)?);
            let caps = OracleCaps { c_cap, ..Default::default() };
            match oracle_member_gf(&a, &b, r, caps)? {
                OracleVerdict::In { multiplier, certificate } => {
                    let mut out = json!({
                        "verdict": "in",
                        "multiplier": r.fmt(&multiplier),
                        "certificate": certificate.to_json(r),
                    });
                    if ctx.replay {
                        out["replayed"] = json!(recip::cert::verify_in(&certificate, &a, &b, r));
                    }
                    Outcome::done(out)
                }
                OracleVerdict::OutAtBound { c_cap, enumeration_cap } => Outcome::done(json!({
                    "verdict": "out_at_bound",
                    "caps": { "c_cap": c_cap, "enumeration_cap": enumeration_cap },
                })),
                OracleVerdict::Unknown(why) => Outcome::unknown(json!({ "verdict": "unknown", "reason": why })),
            }
        }
        Cmd::Reproduce => {
            let suite = Suite::new(ctx.seed);
            let results = suite.run_all(|_| {});
            let all = results.iter().all(|c| c.passed);
            let lines: Vec<String> = results.iter().map(|c| c.line()).collect();
            let out = json!({
                "passed": all,
                "criteria": results.iter().map(|c| json!({
                    "id": c.id,
                    "name": c.name,
                    "passed": c.passed,
                    "detail": c.detail,
                })).collect::<Vec<_>>(),
            });
            let mut o = if all { Outcome::done(out) } else { Outcome::unknown(out) };
            o.raw = Some(lines.join("\n") + "\n");
            o
        }
    })
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) | Value::Array(_) if !is_flat(x) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar_text(x))),
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", scalar_text(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_text(x, indent + 1, out);
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", scalar_text(x))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) if xs.is_empty() => "[]".into(),
        Value::Array(xs) => xs.iter().map(scalar_text).collect::<Vec<_>>().join(", "),
        x => x.to_string(),
    }
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// Write to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.jobs > 1 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    let format = cli.format;
    match run(cli) {
        Ok(o) => {
            match (&o.raw, format) {
                (Some(raw), _) => emit(raw),
                (None, Format::Json) => emit(&json_text(&o.value)),
                (None, Format::Text) => {
                    let mut s = String::new();
                    render_text(&o.value, 0, &mut s);
                    emit(&s);
                }
            }
            ExitCode::from(if o.definitive { 0 } else { EXIT_UNKNOWN })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Exhausted(v)) => {
            emit(&json_text(&v));
            ExitCode::from(EXIT_UNKNOWN)
        }
    }
}
