//! Queries about prime ideals of the reciprocal complement.
//!
//! For nonconstant `f`, `p_f` is the largest prime avoiding `1/f`, and
//! `p_g ⊆ p_f` exactly when `f/g^e` is a member for some `e >= 1`. Everything
//! here reduces to bounded membership searches, so answers carry the bound
//! that produced them.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cert::{Expr, InCertificate, MembershipVerdict, OutCertificate};
use crate::error::{Error, Result};
use crate::factor::{divisors_in_ring, FactoredPoly, Factorizer};
use crate::factroid::FSpace;
use crate::linalg::{find_linear_dependency, span_of, Dependency, SpanBasis};
use crate::member::{Engine, MemberConfig};
use crate::poly::{Monomial, Poly};
use crate::ring::AmbientRing;

pub const DEFAULT_E_MAX: u32 = 4;

#[derive(Clone, Debug)]
pub enum ContainmentVerdict {
    /// `f/g^e` is a member, so `p_g ⊆ p_f`.
    Holds { e: u32, certificate: InCertificate },
    /// `f/g^e` is certified outside for every `e <= e_max`.
    FailsWithCert { e_max: u32, certificates: Vec<OutCertificate> },
    Unknown { e_max: u32 },
}

impl ContainmentVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ContainmentVerdict::Holds { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, ContainmentVerdict::Unknown { .. })
    }

    pub fn to_json(&self, ring: &AmbientRing) -> Value {
        match self {
            ContainmentVerdict::Holds { e, certificate } => json!({
                "verdict": "holds",
                "e": e,
                "certificate": certificate.expression.to_json(ring),
            }),
            ContainmentVerdict::FailsWithCert { e_max, certificates } => json!({
                "verdict": "fails",
                "e_max": e_max,
                "certificates": certificates
                    .iter()
                    .map(|c| MembershipVerdict::Out(c.clone()).to_json(ring)["certificate"].clone())
                    .collect::<Vec<_>>(),
            }),
            ContainmentVerdict::Unknown { e_max } => json!({ "verdict": "unknown", "e_max": e_max }),
        }
    }
}

fn contains_unchecked(g: &Poly, f: &Poly, ring: &AmbientRing, e_max: u32, cfg: &MemberConfig) -> Result<ContainmentVerdict> {
    let mut outs = Vec::new();
    let mut unknown = false;
    for e in 1..=e_max {
        let engine = Engine::new(ring, cfg.clone());
        match engine.member(f, &g.pow(e))? {
            MembershipVerdict::In(c) => return Ok(ContainmentVerdict::Holds { e, certificate: c }),
            MembershipVerdict::Out(c) => outs.push(c),
            MembershipVerdict::Unknown { .. } => unknown = true,
        }
    }
    Ok(if unknown {
        ContainmentVerdict::Unknown { e_max }
    } else {
        ContainmentVerdict::FailsWithCert { e_max, certificates: outs }
    })
}

/// Decides `p_g ⊆ p_f` by searching for `e <= e_max` with `f/g^e` a member.
pub fn prime_contains(g: &Poly, f: &Poly, ring: &AmbientRing, e_max: u32, cfg: &MemberConfig) -> Result<ContainmentVerdict> {
    for h in [g, f] {
        ring.check(h)?;
        if h.is_constant() {
            return Err(Error::Precondition("p_f needs a nonconstant f".into()));
        }
    }
    contains_unchecked(g, f, ring, e_max, cfg)
}

#[derive(Clone, Debug)]
pub struct LatticeNode {
    pub subset: Vec<usize>,
    pub generator: Poly,
    /// Longest chain of listed primes strictly below this one.
    pub height: usize,
}

#[derive(Clone, Debug)]
pub struct LatticeEntry {
    /// Is `p_smaller ⊆ p_larger`?
    pub smaller: usize,
    pub larger: usize,
    pub verdict: ContainmentVerdict,
}

#[derive(Clone, Debug)]
pub struct LatticeReport {
    pub n: usize,
    pub nodes: Vec<LatticeNode>,
    pub entries: Vec<LatticeEntry>,
}

fn subset_name(ring: &AmbientRing, s: &[usize]) -> String {
    if s.is_empty() {
        "m".into()
    } else {
        s.iter().map(|&i| ring.vars[i].as_str()).collect::<Vec<_>>().join("")
    }
}

impl LatticeReport {
    pub fn unknown_count(&self) -> usize {
        self.entries.iter().filter(|e| e.verdict.is_unknown()).count()
    }

    pub fn contains(&self, smaller: usize, larger: usize) -> bool {
        self.entries
            .iter()
            .any(|e| e.smaller == smaller && e.larger == larger && e.verdict.holds())
    }

    /// Holds exactly when `J ⊆ J'` for `p_{J'} ⊆ p_J`, and heights are `n - #J`.
    pub fn is_anti_isomorphic(&self) -> bool {
        let sub = |a: &[usize], b: &[usize]| a.iter().all(|x| b.contains(x));
        self.entries.iter().all(|e| {
            let j = &self.nodes[e.larger].subset;
            let jp = &self.nodes[e.smaller].subset;
            e.verdict.holds() == sub(j, jp)
        }) && self.nodes.iter().all(|n| n.height == self.n - n.subset.len())
    }

    pub fn to_json(&self, ring: &AmbientRing) -> Value {
        let nodes: Vec<Value> = self
            .nodes
            .iter()
            .map(|n| json!({ "J": n.subset, "name": subset_name(ring, &n.subset), "height": n.height }))
            .collect();
        let edges: Vec<Value> = self
            .entries
            .iter()
            .filter_map(|e| match &e.verdict {
                ContainmentVerdict::Holds { e: k, certificate } if e.smaller != e.larger => Some(json!({
                    "from": self.nodes[e.smaller].subset,
                    "to": self.nodes[e.larger].subset,
                    "e": k,
                    "certificate": certificate.expression.to_json(ring),
                })),
                _ => None,
            })
            .collect();
        let non: Vec<Value> = self
            .entries
            .iter()
            .filter(|e| !e.verdict.holds())
            .map(|e| {
                json!({
                    "from": self.nodes[e.smaller].subset,
                    "to": self.nodes[e.larger].subset,
                    "verdict": e.verdict.to_json(ring),
                })
            })
            .collect();
        json!({ "n": self.n, "nodes": nodes, "edges": edges, "non_containments": non })
    }

    /// Hasse diagram; an edge `a -> b` means `p_a ⊊ p_b` with nothing between.
    pub fn to_dot(&self, ring: &AmbientRing) -> String {
        let mut s = String::from("digraph primes {\n  rankdir=BT;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            s.push_str(&format!(
                "  n{i} [label=\"p_{} (ht {})\"];\n",
                subset_name(ring, &n.subset),
                n.height
            ));
        }
        let k = self.nodes.len();
        for a in 0..k {
            for b in 0..k {
                if a == b || !self.contains(a, b) {
                    continue;
                }
                let covered = (0..k).any(|c| c != a && c != b && self.contains(a, c) && self.contains(c, b));
                if !covered {
                    s.push_str(&format!("  n{a} -> n{b};\n"));
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// The primes `p_J = p_{prod_{i in J} x_i}` for all `J ⊆ {0..n-1}` (with
/// `p_∅` the maximal ideal), every pairwise containment, and chain heights.
pub fn monomial_prime_lattice(n: usize, ring: &AmbientRing, e_max: u32, cfg: &MemberConfig) -> Result<LatticeReport> {
    if ring.is_subalgebra() || n == 0 || n > 4 || n > ring.nvars() {
        return Err(Error::Precondition("lattice needs a full polynomial ring and 1 <= n <= 4".into()));
    }
    let mut subsets: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
        .collect();
    subsets.sort_by(|a: &Vec<usize>, b| (a.len(), a).cmp(&(b.len(), b)));
    let gens: Vec<Poly> = subsets
        .iter()
        .map(|s| s.iter().fold(ring.one(), |acc, &i| &acc * &ring.var(i)))
        .collect();
    let k = subsets.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).collect();
    let verdicts: Vec<Result<ContainmentVerdict>> = pairs
        .par_iter()
        .map(|&(a, b)| contains_unchecked(&gens[a], &gens[b], ring, e_max, cfg))
        .collect();
    let mut entries = Vec::with_capacity(k * k);
    for ((a, b), v) in pairs.into_iter().zip(verdicts) {
        entries.push(LatticeEntry { smaller: a, larger: b, verdict: v? });
    }
    let below = |x: usize| -> Vec<usize> {
        entries
            .iter()
            .filter(|e| e.larger == x && e.smaller != x && e.verdict.holds())
            .map(|e| e.smaller)
            .collect()
    };
    // heights by longest chain, smallest primes (largest J) first
    let mut height: BTreeMap<usize, usize> = BTreeMap::new();
    for x in (0..k).rev() {
        let h = below(x).iter().map(|y| height.get(y).map_or(0, |h| h + 1)).max().unwrap_or(0);
        height.insert(x, h);
    }
    let nodes = subsets
        .into_iter()
        .zip(gens)
        .enumerate()
        .map(|(i, (subset, generator))| LatticeNode { subset, generator, height: height[&i] })
        .collect();
    Ok(LatticeReport { n, nodes, entries })
}

#[derive(Clone, Debug)]
pub enum Pseudoradical {
    /// Two non-associated irreducible factors.
    Yes(Poly, Poly),
    /// A single irreducible class.
    No(Poly),
    Unknown,
}

/// In K[x,y], `1/f` lies in the pseudoradical iff `f` has two non-associated
/// irreducible factors. A caller-supplied factorization takes precedence.
pub fn pseudoradical_member_2var(f: &Poly, ring: &AmbientRing, known: Option<&FactoredPoly>) -> Result<Pseudoradical> {
    if ring.nvars() != 2 || ring.is_subalgebra() {
        return Err(Error::UnsupportedRing("criterion is stated for K[x,y] only".into()));
    }
    ring.check(f)?;
    if f.is_constant() {
        return Err(Error::Precondition("f must be nonconstant".into()));
    }
    let fac = match known {
        Some(k) => k.clone(),
        None => Factorizer::new(ring, Default::default()).factor(f),
    };
    let fs: Vec<&Poly> = fac.factors.iter().map(|(p, _)| p).collect();
    if fs.len() >= 2 {
        return Ok(Pseudoradical::Yes(fs[0].clone(), fs[1].clone()));
    }
    Ok(if fac.complete && fs.len() == 1 {
        Pseudoradical::No(fs[0].clone())
    } else {
        Pseudoradical::Unknown
    })
}

#[derive(Clone, Debug)]
pub struct Linalg2Witness {
    pub n: u32,
    pub h: Poly,
    /// `h = sum u_ij f^i g^j`.
    pub coeffs: Vec<((u32, u32), crate::field::Scalar)>,
    /// `x_v` already divides `f` or `g`.
    pub trivial: bool,
    /// Expression for `x_v / (fg)^n`.
    pub certificate: std::sync::Arc<Expr>,
}

impl Linalg2Witness {
    pub fn to_json(&self, ring: &AmbientRing) -> Value {
        json!({
            "N": self.n,
            "h": ring.fmt(&self.h),
            "coeffs": self.coeffs.iter().map(|((i, j), u)| json!({"i": i, "j": j, "u": u.to_string()})).collect::<Vec<_>>(),
            "trivial": self.trivial,
            "certificate": self.certificate.to_json(ring),
        })
    }
}

/// Finds `N` and `h = sum u_ij f^i g^j` (0 <= i,j <= N) divisible by `x_v`,
/// from the first linear dependency among `f1^i g1^j` in lex order of `(i,j)`,
/// where `f1, g1` are `f, g` at `x_v = 0`. Then
/// `x_v/(fg)^N = (1/(h/x_v)) sum u_ij / (f^(N-i) g^(N-j))`.
pub fn linalg2_witness(f: &Poly, g: &Poly, ring: &AmbientRing, v: usize, n_max: u32) -> Result<Linalg2Witness> {
    if ring.nvars() != 2 || ring.is_subalgebra() || v >= 2 {
        return Err(Error::Precondition("needs K[x,y] and a variable index 0 or 1".into()));
    }
    for p in [f, g] {
        ring.check(p)?;
        if p.is_constant() || !p.coeff(&Monomial(vec![0; 2])).is_zero() {
            return Err(Error::Precondition("f and g must be nonconstant with zero constant term".into()));
        }
    }
    let fz = Factorizer::new(ring, Default::default());
    let (ff, fg) = (fz.factor(f), fz.factor(g));
    if ff.factors.iter().any(|(p, _)| fg.factors.iter().any(|(q, _)| p == q)) {
        return Err(Error::Precondition("f and g share a factor".into()));
    }
    let x = ring.var(v);
    let one = ring.field.one();
    for (p, i, j) in [(f, 1, 0), (g, 0, 1)] {
        if let Ok(q) = p.divexact(&x) {
            let cert = Expr::mul(vec![Expr::recip(q), Expr::recip(if i == 1 { g.clone() } else { f.clone() })]);
            return Ok(Linalg2Witness {
                n: 1,
                h: p.clone(),
                coeffs: vec![((i, j), one.clone())],
                trivial: true,
                certificate: cert,
            });
        }
    }
    let (f1, g1) = (f.subs_zero(v), g.subs_zero(v));
    for n in 1..=n_max {
        let idx: Vec<(u32, u32)> = (0..=n).flat_map(|i| (0..=n).map(move |j| (i, j))).collect();
        let vals: Vec<Poly> = idx.iter().map(|&(i, j)| &f1.pow(i) * &g1.pow(j)).collect();
        let Dependency::Found(u) = find_linear_dependency(&vals) else {
            continue;
        };
        let coeffs: Vec<((u32, u32), crate::field::Scalar)> = idx
            .iter()
            .zip(u)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&ij, c)| (ij, c))
            .collect();
        let h = coeffs
            .iter()
            .fold(ring.zero(), |acc, ((i, j), c)| &acc + &(&f.pow(*i) * &g.pow(*j)).scale(c));
        if h.is_zero() {
            return Err(Error::Precondition("f and g are algebraically dependent".into()));
        }
        let hx = h.divexact(&x).map_err(|_| Error::Precondition("h not divisible by the variable".into()))?;
        let sum = Expr::add(
            coeffs
                .iter()
                .map(|((i, j), c)| {
                    Expr::scaled(c.clone(), Expr::recip(&f.pow(n - i) * &g.pow(n - j)))
                })
                .collect(),
        );
        let certificate = Expr::mul(vec![Expr::recip(hx), sum]);
        return Ok(Linalg2Witness { n, h, coeffs, trivial: false, certificate });
    }
    Err(Error::CapExceeded(format!("no dependency with N <= {n_max}")))
}

#[derive(Clone, Debug)]
pub struct LTruncation {
    pub space: FSpace,
    /// `(g, e, certificate for g/f^e)`.
    pub members: Vec<(Poly, u32, InCertificate)>,
    /// Candidates with an obstruction for every `e <= e_max`.
    pub excluded: Vec<Poly>,
    pub unknown: Vec<Poly>,
}

impl LTruncation {
    pub fn to_json(&self, ring: &AmbientRing) -> Value {
        json!({
            "dim": self.space.dim(),
            "basis": self.space.basis.rows().iter().map(|p| ring.fmt(p)).collect::<Vec<_>>(),
            "members": self.members.iter().map(|(g, e, c)| json!({
                "g": ring.fmt(g), "e": e, "certificate": c.expression.to_json(ring)
            })).collect::<Vec<_>>(),
            "excluded": self.excluded.iter().map(|p| ring.fmt(p)).collect::<Vec<_>>(),
            "unknown": self.unknown.iter().map(|p| ring.fmt(p)).collect::<Vec<_>>(),
        })
    }
}

/// Inner approximation of `L(p_f) = ⋃_e G(f^e)` in degree `<= cap`: the span of
/// the candidates (ring monomials and powers of `f`) that are members over some
/// `f^e`, `e <= e_max`.
pub fn l_of_pf_truncated(f: &Poly, ring: &AmbientRing, cap: u64, e_max: u32, cfg: &MemberConfig) -> Result<LTruncation> {
    ring.check(f)?;
    if f.is_constant() {
        return Err(Error::Precondition("f must be nonconstant".into()));
    }
    let mut cands: Vec<Poly> = (0..=e_max).map(|k| f.pow(k)).collect();
    cands.extend(
        ring.monomials_up_to(cap)
            .into_iter()
            .map(|m| Poly::monomial(ring.field, m, ring.field.one())),
    );
    cands.retain(|p| p.total_degree().finite().unwrap_or(0) <= cap);
    let mut basis = SpanBasis::new();
    let (mut members, mut excluded, mut unknown) = (Vec::new(), Vec::new(), Vec::new());
    for c in cands {
        if basis.contains(&c) {
            continue;
        }
        match contains_unchecked(f, &c, ring, e_max, cfg)? {
            ContainmentVerdict::Holds { e, certificate } => {
                basis.insert(&c);
                members.push((c, e, certificate));
            }
            ContainmentVerdict::FailsWithCert { .. } => excluded.push(c),
            ContainmentVerdict::Unknown { .. } => unknown.push(c),
        }
    }
    Ok(LTruncation {
        space: FSpace { basis, degree_cap: cap, closed: false, exhaustive: false },
        members,
        excluded,
        unknown,
    })
}

#[derive(Clone, Debug)]
pub enum PofW {
    /// `x/w` is a member for the product `w`, so `1/x` is not in `p(W)`.
    NotInP { w: Poly, certificate: InCertificate },
    /// Every product of at most `max_factors` generators is obstructed.
    InPAtBound { max_factors: u32, certificates: Vec<(Poly, OutCertificate)> },
    Unknown { max_factors: u32 },
}

impl PofW {
    pub fn to_json(&self, ring: &AmbientRing) -> Value {
        match self {
            PofW::NotInP { w, certificate } => json!({
                "verdict": "not_in_p",
                "w": ring.fmt(w),
                "certificate": certificate.expression.to_json(ring),
            }),
            PofW::InPAtBound { max_factors, certificates } => json!({
                "verdict": "in_p_at_bound",
                "max_factors": max_factors,
                "certificates": certificates.iter().map(|(w, c)| json!({
                    "w": ring.fmt(w),
                    "certificate": MembershipVerdict::Out(c.clone()).to_json(ring)["certificate"].clone(),
                })).collect::<Vec<_>>(),
            }),
            PofW::Unknown { max_factors } => json!({ "verdict": "unknown", "max_factors": max_factors }),
        }
    }
}

/// Products of the generators with at most `k` factors, fewest factors first.
fn monoid_products(gens: &[Poly], ring: &AmbientRing, k: u32) -> Vec<Poly> {
    let mut out: Vec<Poly> = Vec::new();
    let mut layer: Vec<(Poly, usize)> = vec![(ring.one(), 0)];
    for _ in 0..k {
        let mut next = Vec::new();
        for (p, start) in &layer {
            for (i, g) in gens.iter().enumerate().skip(*start) {
                next.push((p * g, i));
            }
        }
        for (p, _) in &next {
            if !out.contains(p) {
                out.push(p.clone());
            }
        }
        layer = next;
    }
    out
}

/// Is `1/x` in `p(W)` for the monoid `W` generated by `gens`? Searches for a
/// product `w` with `x/w` a member.
pub fn p_of_w_member(x: &Poly, gens: &[Poly], ring: &AmbientRing, max_factors: u32, cfg: &MemberConfig) -> Result<PofW> {
    ring.check(x)?;
    if x.is_zero() || gens.is_empty() {
        return Err(Error::Precondition("x must be nonzero and W nonempty".into()));
    }
    for g in gens {
        ring.check(g)?;
        if g.is_zero() {
            return Err(Error::Precondition("zero generator".into()));
        }
    }
    let mut outs = Vec::new();
    let mut unknown = false;
    for w in monoid_products(gens, ring, max_factors) {
        match Engine::new(ring, cfg.clone()).member(x, &w)? {
            MembershipVerdict::In(c) => return Ok(PofW::NotInP { w, certificate: c }),
            MembershipVerdict::Out(c) => outs.push((w, c)),
            MembershipVerdict::Unknown { .. } => unknown = true,
        }
    }
    Ok(if unknown {
        PofW::Unknown { max_factors }
    } else {
        PofW::InPAtBound { max_factors, certificates: outs }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Every relevant element or scalar was examined.
    Exhaustive,
    /// A fixed sample of scalars was examined.
    Sampled,
    /// Checked for `e <= e_max` only.
    WithinBounds,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition {
    Holds(Basis),
    Fails(String),
    /// Follows from another verdict in the chain.
    Implied { within_bounds: bool },
    Unknown,
}

impl Condition {
    fn positive(&self) -> bool {
        matches!(self, Condition::Holds(_) | Condition::Implied { .. })
    }

    fn fails(&self) -> bool {
        matches!(self, Condition::Fails(_))
    }

    fn to_json(&self) -> Value {
        match self {
            Condition::Holds(b) => json!({ "verdict": "holds", "basis": format!("{b:?}").to_lowercase() }),
            Condition::Fails(w) => json!({ "verdict": "fails", "witness": w }),
            Condition::Implied { within_bounds } => json!({ "verdict": "implied", "within_bounds": within_bounds }),
            Condition::Unknown => json!({ "verdict": "unknown" }),
        }
    }
}

/// The ladder `(1**) ⇒ (2) ⇒ (3) ⇒ (4) ⇒ (5)` for a nonconstant `g`:
/// (1**) `G(g^e) = <1, g, .., g^e>` for all `e`; (2) `1/g` irreducible in
/// the reciprocal complement; (3) `G(g) = <1, g>`; (4) `g + u` irreducible
/// for every scalar `u`; (5) `g` irreducible.
#[derive(Clone, Debug)]
pub struct IrredReport {
    /// Index 0 is (1**), then (2), (3), (4), (5).
    pub conditions: [Condition; 5],
}

const LABELS: [&str; 5] = ["1**", "2", "3", "4", "5"];

impl IrredReport {
    pub fn condition(&self, label: &str) -> &Condition {
        &self.conditions[LABELS.iter().position(|l| *l == label).expect("known label")]
    }

    /// No condition is positive while a later one fails.
    pub fn chain_consistent(&self) -> bool {
        (0..5).all(|i| !self.conditions[i].positive() || !self.conditions[i + 1..].iter().any(Condition::fails))
    }

    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        for (l, c) in LABELS.iter().zip(&self.conditions) {
            m.insert(l.to_string(), c.to_json());
        }
        Value::Object(m)
    }
}

#[derive(Clone, Debug)]
pub struct IrredBounds {
    pub e_max: u32,
    /// Over GF(p), enumerate the candidate space when it has at most this many lines.
    pub enumeration_cap: u64,
    pub member: MemberConfig,
}

impl Default for IrredBounds {
    fn default() -> Self {
        IrredBounds { e_max: DEFAULT_E_MAX, enumeration_cap: 4096, member: MemberConfig::default() }
    }
}

/// Irreducibility inside the ring: `Some(factor)` for a proper factorization.
fn ring_reducible(g: &Poly, ring: &AmbientRing, fz: &Factorizer) -> Option<std::result::Result<Poly, ()>> {
    let fac = fz.factor(g);
    let divs = match divisors_in_ring(&fac, ring) {
        Ok(d) => d,
        Err(_) => return None,
    };
    let dg = g.total_degree();
    if let Some(d) = divs.into_iter().find(|d| !d.is_constant() && d.total_degree() < dg) {
        return Some(Ok(d));
    }
    if fac.complete {
        Some(Err(()))
    } else {
        None
    }
}

/// Searches `G(h)` for an element outside `base`. Candidates are limited to
/// the span of monomials whose weighted degrees stay within those of `h`,
/// which contains all of `G(h)`.
fn factor_space_excess(h: &Poly, base: &[Poly], ring: &AmbientRing, bounds: &IrredBounds) -> Result<Condition> {
    let ws = ring.default_weights();
    let d = h.total_degree().finite().unwrap_or(0);
    let span = span_of(base);
    let admissible: Vec<Poly> = ring
        .monomials_up_to(d)
        .into_iter()
        .filter(|m| {
            let p = Poly::monomial(ring.field, m.clone(), ring.field.one());
            ws.iter().all(|w| p.weighted_degree(&w.0) <= h.weighted_degree(&w.0))
        })
        .map(|m: Monomial| Poly::monomial(ring.field, m, ring.field.one()))
        .collect();
    // complement of span(base) inside the admissible span
    let mut quot = span.clone();
    let mut comp: Vec<Poly> = Vec::new();
    for m in &admissible {
        if quot.insert(m).is_none() {
            comp.push(m.clone());
        }
    }
    if comp.is_empty() {
        return Ok(Condition::Holds(Basis::Exhaustive));
    }
    let mut unknown = false;
    for m in &comp {
        match Engine::new(ring, bounds.member.clone()).member(m, h)? {
            MembershipVerdict::In(_) => return Ok(Condition::Fails(ring.fmt(m))),
            MembershipVerdict::Unknown { .. } => unknown = true,
            MembershipVerdict::Out(_) => {}
        }
    }
    if let Some(p) = ring.field.size() {
        let lines = (p as u128).saturating_pow(comp.len() as u32);
        if lines <= bounds.enumeration_cap as u128 {
            unknown = false;
            for v in crate::member::monic_combinations(&comp, ring.field) {
                match Engine::new(ring, bounds.member.clone()).member(&v, h)? {
                    MembershipVerdict::In(_) => return Ok(Condition::Fails(ring.fmt(&v))),
                    MembershipVerdict::Unknown { .. } => unknown = true,
                    MembershipVerdict::Out(_) => {}
                }
            }
            if !unknown {
                return Ok(Condition::Holds(Basis::Exhaustive));
            }
        }
    }
    let _ = unknown;
    Ok(Condition::Unknown)
}

pub fn irred_conditions_report(g: &Poly, ring: &AmbientRing, bounds: &IrredBounds) -> Result<IrredReport> {
    ring.check(g)?;
    if g.is_constant() {
        return Err(Error::Precondition("g must be nonconstant".into()));
    }
    let fz = Factorizer::new(ring, bounds.member.caps);
    let c5 = match ring_reducible(g, ring, &fz) {
        Some(Ok(d)) => Condition::Fails(format!("factor {}", ring.fmt(&d))),
        Some(Err(())) => Condition::Holds(Basis::Exhaustive),
        None => Condition::Unknown,
    };
    let scalars = match ring.field.size() {
        Some(_) => ring.field.elements(),
        None => {
            let mut v = vec![ring.field.zero()];
            v.extend(ring.field.scalar_sample());
            v
        }
    };
    let mut c4 = Condition::Holds(if ring.field.is_finite() { Basis::Exhaustive } else { Basis::Sampled });
    for u in &scalars {
        let gu = g + &ring.constant(u.clone());
        match ring_reducible(&gu, ring, &fz) {
            Some(Ok(d)) => {
                c4 = Condition::Fails(format!("u = {u}: factor {}", ring.fmt(&d)));
                break;
            }
            Some(Err(())) => {}
            None => c4 = Condition::Unknown,
        }
    }
    let c3 = factor_space_excess(g, &[ring.one(), g.clone()], ring, bounds)?;
    let mut c1 = Condition::Holds(Basis::WithinBounds);
    for e in 1..=bounds.e_max {
        let ge = g.pow(e);
        let base: Vec<Poly> = (0..=e).map(|k| g.pow(k)).collect();
        match factor_space_excess(&ge, &base, ring, bounds)? {
            Condition::Fails(w) => {
                c1 = Condition::Fails(format!("e = {e}: {w}"));
                break;
            }
            Condition::Unknown => c1 = Condition::Unknown,
            _ => {}
        }
    }
    let c2 = if c3.fails() {
        Condition::Fails("deduced from (3)".into())
    } else if c1.positive() {
        Condition::Implied { within_bounds: true }
    } else {
        Condition::Unknown
    };
    let mut conditions = [c1, c2, c3, c4, c5];
    for i in (0..4).rev() {
        if conditions[i + 1].fails() && !conditions[i].fails() {
            conditions[i] = Condition::Fails(format!("deduced from ({})", LABELS[i + 1]));
        }
    }
    for i in 0..4 {
        if matches!(conditions[i], Condition::Holds(Basis::Exhaustive) | Condition::Implied { within_bounds: false })
            && conditions[i + 1] == Condition::Unknown
        {
            conditions[i + 1] = Condition::Implied { within_bounds: false };
        }
    }
    Ok(IrredReport { conditions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::{verify_certificate, OutKind};
    use crate::parse::parse_ring;

    #[test]
    fn containment_examples() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let p = |s: &str| r.parse(s).unwrap();
        let cfg = MemberConfig::default();
        assert!(matches!(
            prime_contains(&p("x*y"), &p("x"), &r, 4, &cfg).unwrap(),
            ContainmentVerdict::Holds { e: 1, .. }
        ));
        match prime_contains(&p("x"), &p("x*y"), &r, 4, &cfg).unwrap() {
            ContainmentVerdict::FailsWithCert { certificates, .. } => {
                assert_eq!(certificates.len(), 4);
                assert!(certificates.iter().all(|c| c.kind == OutKind::Weight(crate::WeightVector(vec![0, 1]))));
            }
            v => panic!("{v:?}"),
        }
        assert!(prime_contains(&p("x^2"), &p("x"), &r, 4, &cfg).unwrap().holds());
        assert!(prime_contains(&p("1"), &p("x"), &r, 4, &cfg).is_err());
    }

    #[test]
    fn lattice_n2() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let l = monomial_prime_lattice(2, &r, 2, &MemberConfig::default()).unwrap();
        assert_eq!(l.unknown_count(), 0);
        assert!(l.is_anti_isomorphic());
        assert!(l.to_dot(&r).contains("->"));
    }

    #[test]
    fn pseudoradical_examples() {
        let r = parse_ring("QQ[x,y]").unwrap();
        assert!(matches!(pseudoradical_member_2var(&r.parse("x*y").unwrap(), &r, None).unwrap(), Pseudoradical::Yes(..)));
        assert!(matches!(pseudoradical_member_2var(&r.parse("x^2").unwrap(), &r, None).unwrap(), Pseudoradical::No(..)));
        let g = parse_ring("GF(2)[x,y]").unwrap();
        assert!(matches!(pseudoradical_member_2var(&g.parse("x*(x+1)").unwrap(), &g, None).unwrap(), Pseudoradical::Yes(..)));
        assert!(pseudoradical_member_2var(&r.parse("x").unwrap(), &parse_ring("QQ[x,y,z]").unwrap(), None).is_err());
    }

    #[test]
    fn linalg2_examples() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let p = |s: &str| r.parse(s).unwrap();
        let w = linalg2_witness(&p("y+x^2"), &p("y+x"), &r, 0, 4).unwrap();
        assert_eq!(w.n, 1);
        assert!(w.h.is_associate(&p("x^2-x")));
        let b = (&p("y+x^2") * &p("y+x")).pow(w.n);
        assert!(crate::cert::verify_in(&w.certificate, &p("x"), &b, &r));
        let t = linalg2_witness(&p("x"), &p("y"), &r, 0, 4).unwrap();
        assert!(t.trivial);
        assert!(crate::cert::verify_in(&t.certificate, &p("x"), &p("x*y"), &r));
    }

    #[test]
    fn l_truncation_excludes_y() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let p = |s: &str| r.parse(s).unwrap();
        let l = l_of_pf_truncated(&p("x"), &r, 3, 3, &MemberConfig::default()).unwrap();
        for s in ["1", "x", "x^2", "x^3"] {
            assert!(l.space.contains(&p(s)), "{s}");
        }
        assert!(!l.space.contains(&p("y")));
        assert!(l.unknown.is_empty());
    }

    #[test]
    fn p_of_w_examples() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let p = |s: &str| r.parse(s).unwrap();
        let cfg = MemberConfig::default();
        assert!(matches!(p_of_w_member(&p("x"), &[p("x")], &r, 3, &cfg).unwrap(), PofW::NotInP { .. }));
        assert!(matches!(p_of_w_member(&p("y"), &[p("x")], &r, 3, &cfg).unwrap(), PofW::InPAtBound { .. }));
        let s = parse_ring("QQ[x;gens=x^2,x^3]").unwrap();
        match p_of_w_member(&s.parse("x^3").unwrap(), &[s.parse("x^2").unwrap()], &s, 3, &cfg).unwrap() {
            PofW::NotInP { w, certificate } => {
                assert_eq!(w, s.parse("x^6").unwrap());
                let v = MembershipVerdict::In(certificate);
                assert!(verify_certificate(&v, &s.parse("x^3").unwrap(), &w, &s));
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn irred_reports() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let b = IrredBounds::default();
        let rep = irred_conditions_report(&r.parse("x*y+x+y").unwrap(), &r, &b).unwrap();
        assert_eq!(*rep.condition("5"), Condition::Holds(Basis::Exhaustive));
        assert!(matches!(rep.condition("4"), Condition::Fails(w) if w.starts_with("u = 1:")));
        assert!(rep.chain_consistent());
        let rep = irred_conditions_report(&r.parse("x^3+y^2+x^4*y").unwrap(), &r, &b).unwrap();
        assert_eq!(*rep.condition("4"), Condition::Holds(Basis::Sampled));
        assert_eq!(*rep.condition("3"), Condition::Fails("y".into()));
        assert!(rep.chain_consistent());
        let s = parse_ring("QQ[x;gens=x^2,x^3]").unwrap();
        let rep = irred_conditions_report(&s.parse("x^2").unwrap(), &s, &b).unwrap();
        assert!(matches!(rep.condition("1**"), Condition::Fails(w) if w == "e = 3: x^3"), "{rep:?}");
        assert!(rep.chain_consistent());
    }
}
