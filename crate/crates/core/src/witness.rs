//! Construction and exact certification of an integer-like hyperbolic
//! automorphism commuting with the holonomy.
//!
//! Each orbit of components gets a seed on its representative that commutes
//! with the stabilizer, raised to a power so that products across orbits stay
//! off the unit circle, and is transported to the rest of the orbit by
//! holonomy elements.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebraic::aberth_roots;
use crate::cancel::{CancelToken, Cancelled};
use crate::coherent::CoherentPartition;
use crate::graph::Graph;
use crate::holonomy::HolonomyAction;
use crate::hyperbolic::{self, HyperbolicError, HyperbolicityCertificate};
use crate::lie::{GraphLieAlgebra, LieError};
use crate::perm::Permutation;
use crate::poly::Poly;
use crate::repdecomp::{decide, Verdict};
use crate::{IntMatrix, IntPolynomial};

pub const DEFAULT_SEARCH_BOUND: i64 = 3;
pub const DEFAULT_MAX_RETRIES: u32 = 8;
pub const DEFAULT_MARGIN: f64 = 2.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WitnessError {
    #[error("decision is {0}, not yes; no witness is constructed")]
    NotDecidedYes(&'static str),
    #[error("no {c}-hyperbolic integer-like seed of dimension {dim} found ({method}, bound {bound}, {tried} candidates)")]
    SeedSearchExhausted { dim: usize, c: u8, bound: i64, tried: usize, method: &'static str },
    #[error("degenerate eigenvalue bounds for orbit {orbit}: min {min}, max {max}")]
    DegenerateBounds { orbit: usize, min: f64, max: f64 },
    #[error("certification failed at stage {stage}: {detail}")]
    Certification { stage: &'static str, detail: String },
    #[error("exponent escalation gave up after {0} attempts")]
    RetriesExhausted(u32),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Hyperbolic(#[from] HyperbolicError),
    #[error(transparent)]
    Cancelled(#[from] Cancelled),
}

#[derive(Clone, Debug)]
pub struct WitnessOptions {
    pub search_bound: i64,
    pub max_retries: u32,
    pub margin: f64,
    /// Random commutant words tried when exhaustive search is too large.
    pub random_candidates: usize,
    /// Largest exhaustive search space over orbital coefficients.
    pub exhaustive_limit: usize,
    pub seed: u64,
    pub cancel: CancelToken,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions {
            search_bound: DEFAULT_SEARCH_BOUND,
            max_retries: DEFAULT_MAX_RETRIES,
            margin: DEFAULT_MARGIN,
            random_candidates: 4096,
            exhaustive_limit: 50_000,
            seed: 0x5eed,
            cancel: CancelToken::never(),
        }
    }
}

/// Cycles of a permutation of `0..dim`, fixed points included.
fn local_cycles(sigma: &Permutation) -> Vec<Vec<usize>> {
    sigma.all_cycles()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Seed {
    pub matrix: IntMatrix,
    pub source: String,
    pub certificate: HyperbolicityCertificate,
}

fn certify_seed(m: &IntMatrix, c: u8, cancel: &CancelToken) -> Result<Option<HyperbolicityCertificate>, WitnessError> {
    if !m.determinant().abs_is_one() {
        return Ok(None);
    }
    let cert = hyperbolic::is_c_hyperbolic_with(m, c, cancel)?;
    Ok((cert.valid && cert.integer_like).then_some(cert))
}

trait AbsIsOne {
    fn abs_is_one(&self) -> bool;
}

impl AbsIsOne for BigInt {
    fn abs_is_one(&self) -> bool {
        self.is_one() || (-self).is_one()
    }
}

/// First monic polynomial of degree `d` with constant term ±1 and other
/// coefficients in `[-2, 2]` whose companion matrix is `c`-hyperbolic, in a
/// fixed enumeration order.
fn catalog_polynomial(d: usize, c: u8) -> Option<IntPolynomial> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u8), Option<IntPolynomial>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&(d, c)) {
        return p.clone();
    }
    let known = match (d, c) {
        (2, 1) => Some("x^2 - 3x + 1"),
        (3, _) => Some("x^3 - x^2 - 2x + 1"),
        (2, _) => None,
        _ => Some(""),
    };
    let found = match known {
        None => None,
        Some(s) if !s.is_empty() => Some(s.parse().expect("catalog polynomial")),
        Some(_) => search_polynomial(d, c),
    };
    cache.lock().unwrap().insert((d, c), found.clone());
    found
}

fn search_polynomial(d: usize, c: u8) -> Option<IntPolynomial> {
    let middle = d - 1;
    let total = 5usize.pow(middle as u32);
    for c0 in [1i64, -1] {
        for code in 0..total {
            let mut coeffs = vec![c0];
            let mut k = code;
            for _ in 0..middle {
                coeffs.push((k % 5) as i64 - 2);
                k /= 5;
            }
            coeffs.push(1);
            let p = Poly::from_i64s(&coeffs);
            let m = IntMatrix::companion(&p);
            if let Ok(cert) = hyperbolic::is_c_hyperbolic(&m, c) {
                if cert.valid {
                    return Some(p);
                }
            }
        }
    }
    None
}

/// A `c`-hyperbolic integer-like matrix of dimension `dim` built from
/// companion blocks, if the catalog covers `dim`.
fn catalog_block(dim: usize, c: u8) -> Option<(IntMatrix, String)> {
    let pieces: Vec<usize> = if c == 1 {
        if dim < 2 {
            return None;
        }
        let mut v = vec![2; dim / 2];
        if dim % 2 == 1 {
            v[0] = 3;
        }
        v
    } else {
        match dim {
            0..=2 => return None,
            _ => {
                let mut v = vec![3; dim / 3];
                match dim % 3 {
                    1 => *v.last_mut().unwrap() = 4,
                    2 => *v.last_mut().unwrap() = 5,
                    _ => {}
                }
                v
            }
        }
    };
    let polys: Vec<IntPolynomial> = pieces.iter().map(|&d| catalog_polynomial(d, c)).collect::<Option<_>>()?;
    let blocks: Vec<IntMatrix> = polys.iter().map(IntMatrix::companion).collect();
    let names: Vec<String> = polys.iter().map(ToString::to_string).collect();
    Some((IntMatrix::block_diagonal(&blocks), format!("companion of {}", names.join(" ⊕ "))))
}

/// Catalog candidates commuting with `sigma`: when all cycles share a length
/// `L`, `C ⊗ I_L` for a catalog `C` of dimension equal to the cycle count;
/// when several lengths occur, one such block per length.
pub fn seed_catalog(dim: usize, c: u8, sigma: &Permutation) -> Vec<(IntMatrix, String)> {
    assert_eq!(sigma.len(), dim);
    let cycles = local_cycles(sigma);
    let mut lengths: Vec<usize> = cycles.iter().map(Vec::len).collect();
    lengths.sort_unstable();
    lengths.dedup();
    let mut m = IntMatrix::zeros(dim, dim);
    let mut names = Vec::new();
    for &l in &lengths {
        let group: Vec<&Vec<usize>> = cycles.iter().filter(|cy| cy.len() == l).collect();
        let Some((cm, name)) = catalog_block(group.len(), c) else {
            return Vec::new();
        };
        for (i, ci) in group.iter().enumerate() {
            for (j, cj) in group.iter().enumerate() {
                for p in 0..l {
                    m[(ci[p], cj[p])] = cm[(i, j)].clone();
                }
            }
        }
        names.push(if l == 1 { name } else { format!("({name}) ⊗ I_{l}") });
    }
    vec![(m, names.join(" ⊕ "))]
}

/// Basis of the commutant of `sigma`: one 0/1 matrix per orbit of `⟨σ⟩` on
/// pairs of points, grouped by the pair of cycles involved.
fn orbitals(sigma: &Permutation) -> Vec<(usize, usize, IntMatrix)> {
    let dim = sigma.len();
    let cycles = local_cycles(sigma);
    let mut out = Vec::new();
    for (i, ci) in cycles.iter().enumerate() {
        for (j, cj) in cycles.iter().enumerate() {
            let g = ci.len().gcd(&cj.len());
            let l = ci.len().lcm(&cj.len());
            for t in 0..g {
                let mut m = IntMatrix::zeros(dim, dim);
                for p in 0..l {
                    m[(ci[(p + t) % ci.len()], cj[p % cj.len()])] = BigInt::one();
                }
                out.push((i, j, m));
            }
        }
    }
    out
}

/// Unimodular generators of part of the commutant of `sigma`.
fn commutant_generators(sigma: &Permutation) -> Vec<IntMatrix> {
    let dim = sigma.len();
    let cycles = local_cycles(sigma);
    let id = IntMatrix::identity(dim);
    let mut gens = Vec::new();
    for (i, j, o) in orbitals(sigma) {
        if i != j {
            gens.push(id.add(&o));
            gens.push(id.sub(&o));
        }
    }
    for (i, ci) in cycles.iter().enumerate() {
        for cj in cycles.iter().skip(i + 1) {
            if ci.len() == cj.len() {
                let mut images: Vec<usize> = (0..dim).collect();
                for p in 0..ci.len() {
                    images[ci[p]] = cj[p];
                    images[cj[p]] = ci[p];
                }
                gens.push(IntMatrix::permutation(&images));
            }
        }
        if ci.len() > 1 {
            let mut images: Vec<usize> = (0..dim).collect();
            for p in 0..ci.len() {
                images[ci[p]] = ci[(p + 1) % ci.len()];
            }
            gens.push(IntMatrix::permutation(&images));
        }
        let mut neg = id.clone();
        for &p in ci {
            neg[(p, p)] = BigInt::from(-1);
        }
        gens.push(neg);
    }
    gens
}

/// Seed for an orbit whose representative has `dim` vertices, level `c` and
/// stabilizer acting by `sigma`: catalog first, then an exhaustive search over
/// commutant coordinates in `[-B, B]` if small enough, otherwise seeded random
/// words in unimodular commutant generators.
pub fn select_seed(dim: usize, c: u8, sigma: &Permutation, opts: &WitnessOptions) -> Result<Seed, WitnessError> {
    let cancel = &opts.cancel;
    let p = IntMatrix::permutation(sigma.images());
    for (m, source) in seed_catalog(dim, c, sigma) {
        debug_assert!(m.commutes_with(&p));
        if let Some(certificate) = certify_seed(&m, c, cancel)? {
            return Ok(Seed { matrix: m, source, certificate });
        }
    }
    let basis = orbitals(sigma);
    let b = opts.search_bound;
    let width = (2 * b + 1) as usize;
    let space = width.checked_pow(basis.len() as u32).filter(|&s| s <= opts.exhaustive_limit);
    if let Some(space) = space {
        let mut coeffs = vec![-b; basis.len()];
        for tried in 0..space {
            cancel.check()?;
            let mut k = tried;
            for x in coeffs.iter_mut() {
                *x = (k % width) as i64 - b;
                k /= width;
            }
            let mut m = IntMatrix::zeros(dim, dim);
            for (x, (_, _, o)) in coeffs.iter().zip(&basis) {
                if *x != 0 {
                    m = m.add(&o.scale(&BigInt::from(*x)));
                }
            }
            if let Some(certificate) = certify_seed(&m, c, cancel)? {
                return Ok(Seed { matrix: m, source: format!("exhaustive search, bound {b}"), certificate });
            }
        }
        return Err(WitnessError::SeedSearchExhausted { dim, c, bound: b, tried: space, method: "exhaustive" });
    }

    let gens = commutant_generators(sigma);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ ((dim as u64) << 8) ^ u64::from(c));
    let batch = 32;
    let mut tried = 0;
    while tried < opts.random_candidates {
        cancel.check()?;
        let words: Vec<Vec<usize>> = (0..batch)
            .map(|_| {
                let len = rng.random_range(4..=24);
                (0..len).map(|_| rng.random_range(0..gens.len())).collect()
            })
            .collect();
        let results: Vec<Result<Option<(IntMatrix, HyperbolicityCertificate)>, WitnessError>> = words
            .par_iter()
            .map(|w| {
                let m = w.iter().fold(IntMatrix::identity(dim), |acc, &g| acc.mul(&gens[g]));
                Ok(certify_seed(&m, c, cancel)?.map(|cert| (m, cert)))
            })
            .collect();
        for r in results {
            tried += 1;
            if let Some((matrix, certificate)) = r? {
                return Ok(Seed { matrix, source: format!("random commutant word #{tried}"), certificate });
            }
        }
    }
    Err(WitnessError::SeedSearchExhausted { dim, c, bound: b, tried, method: "random words" })
}

/// `(min, max)` of `|log|μ||` over the eigenvalues of `m`.
pub fn log_modulus_bounds(m: &IntMatrix) -> (f64, f64) {
    let p = m.char_poly();
    let logs: Vec<f64> = aberth_roots(&p.to_f64_coeffs()).iter().map(|z| z.norm().ln().abs()).collect();
    let min = logs.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = logs.iter().cloned().fold(0.0, f64::max);
    (min, max)
}

/// Exponents `k_1 = 1` and `k_i` minimal with
/// `k_i · min_i ≥ margin · Σ_{j<i} k_j · max_j`.
pub fn choose_exponents(bounds: &[(f64, f64)], margin: f64) -> Result<Vec<u32>, WitnessError> {
    let mut out: Vec<u32> = Vec::with_capacity(bounds.len());
    let mut acc = 0.0;
    for (orbit, &(min, max)) in bounds.iter().enumerate() {
        if !(min > 0.0 && min.is_finite() && max.is_finite() && max >= min) {
            return Err(WitnessError::DegenerateBounds { orbit, min, max });
        }
        let k = if orbit == 0 {
            1
        } else {
            let target = margin * acc;
            let mut k = (target / min).ceil().max(1.0) as u32;
            while k > 1 && f64::from(k - 1) * min >= target {
                k -= 1;
            }
            while f64::from(k) * min < target {
                k += 1;
            }
            k
        };
        acc += f64::from(k) * max;
        out.push(k);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitPlan {
    pub orbit_index: usize,
    pub rep: usize,
    pub c: u8,
    pub seed: Seed,
    pub log_bounds: (f64, f64),
    pub exponent: u32,
    /// `(component, element index)` with the element mapping `rep` onto the
    /// component.
    pub conjugators: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockPlan {
    pub orbits: Vec<OrbitPlan>,
}

/// Stabilizer generator of orbit `i` as a permutation of the representative's
/// vertices in ascending order.
fn local_stabilizer(action: &HolonomyAction, part: &CoherentPartition, i: usize) -> Option<Permutation> {
    let rep = action.orbit_rep(i);
    let h = &action.elements()[action.stabilizer(i).generator?];
    let comp = part.component(rep);
    let images = comp.iter().map(|&v| comp.iter().position(|&u| u == h.apply(v)).expect("stabilized")).collect();
    Some(Permutation::new(images).expect("restriction is a bijection"))
}

pub fn plan_witness(
    part: &CoherentPartition,
    action: &HolonomyAction,
    opts: &WitnessOptions,
) -> Result<BlockPlan, WitnessError> {
    let decision = decide(action, part);
    if decision.verdict != Verdict::Yes {
        return Err(WitnessError::NotDecidedYes(decision.verdict.as_str()));
    }
    let mut orbits = Vec::new();
    for i in 0..action.orbits().len() {
        let rep = action.orbit_rep(i);
        let c = action.c_value(i);
        let sigma = local_stabilizer(action, part, i).expect("decided orbits have cyclic stabilizers");
        let seed = select_seed(part.component(rep).len(), c, &sigma, opts)?;
        let log_bounds = log_modulus_bounds(&seed.matrix);
        let conjugators = action.orbits()[i].iter().map(|&m| (m, action.conjugator(m))).collect();
        orbits.push(OrbitPlan { orbit_index: i, rep, c, seed, log_bounds, exponent: 1, conjugators });
    }
    let bounds: Vec<(f64, f64)> = orbits.iter().map(|o| o.log_bounds).collect();
    for (o, k) in orbits.iter_mut().zip(choose_exponents(&bounds, opts.margin)?) {
        o.exponent = k;
    }
    Ok(BlockPlan { orbits })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockCheck {
    pub component: usize,
    pub char_poly: IntPolynomial,
    pub matches_seed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub plan: BlockPlan,
    pub v_matrix: IntMatrix,
    pub full_matrix: IntMatrix,
    pub certificate: HyperbolicityCertificate,
    pub commutation: Vec<(String, bool)>,
    pub automorphism: bool,
    pub blocks: Vec<BlockCheck>,
    pub attempts: u32,
}

/// Assemble `g = ⊕ g_λ` from a plan and certify it exactly. Refuses unless
/// the holonomy decision is yes.
pub fn assemble_witness(
    g: &Graph,
    part: &CoherentPartition,
    action: &HolonomyAction,
    plan: &BlockPlan,
    alg: &GraphLieAlgebra,
    cancel: &CancelToken,
) -> Result<Witness, WitnessError> {
    let decision = decide(action, part);
    if decision.verdict != Verdict::Yes {
        return Err(WitnessError::NotDecidedYes(decision.verdict.as_str()));
    }
    let n = g.vertex_count();
    let mut v = IntMatrix::zeros(n, n);
    let mut powered = Vec::new();
    for o in &plan.orbits {
        let phi = o.seed.matrix.pow(o.exponent);
        let rep = part.component(o.rep);
        for &(_, h) in &o.conjugators {
            let h = &action.elements()[h];
            for (a, &ua) in rep.iter().enumerate() {
                for (b, &ub) in rep.iter().enumerate() {
                    v[(h.apply(ua), h.apply(ub))] = phi[(a, b)].clone();
                }
            }
        }
        powered.push(phi);
    }
    let full = alg.extend(&v)?;

    let mut blocks = Vec::new();
    for (o, phi) in plan.orbits.iter().zip(&powered) {
        let expected = hyperbolic::char_poly_with(phi, cancel)?;
        for &(comp, _) in &o.conjugators {
            let idx = part.component(comp);
            let cp = hyperbolic::char_poly_with(&v.submatrix(idx, idx), cancel)?;
            blocks.push(BlockCheck { component: comp, matches_seed: cp == expected, char_poly: cp });
        }
    }
    blocks.sort_by_key(|b| b.component);
    if let Some(b) = blocks.iter().find(|b| !b.matches_seed) {
        return Err(WitnessError::Certification {
            stage: "blocks",
            detail: format!("block {} has char poly {}", part.name(b.component), b.char_poly),
        });
    }

    let commutation: Vec<(String, bool)> = action
        .generators()
        .iter()
        .map(|s| {
            let ext = alg.extend(&IntMatrix::permutation(s.images())).expect("permutations are invertible");
            (g.format_permutation(s), full.commutes_with(&ext))
        })
        .collect();
    if let Some((s, _)) = commutation.iter().find(|(_, ok)| !ok) {
        return Err(WitnessError::Certification { stage: "commutation", detail: format!("does not commute with {s}") });
    }
    let automorphism = alg.is_automorphism(&full)?;
    if !automorphism {
        return Err(WitnessError::Certification { stage: "automorphism", detail: "bracket not preserved".into() });
    }
    let certificate = hyperbolic::is_c_hyperbolic_with(&full, 1, cancel)?;
    if !certificate.integer_like {
        return Err(WitnessError::Certification {
            stage: "integer-like",
            detail: format!("constant term of {} is not ±1", certificate.char_poly),
        });
    }
    if !certificate.valid {
        return Err(WitnessError::Certification {
            stage: "hyperbolicity",
            detail: certificate.reason.clone().unwrap_or_default(),
        });
    }
    Ok(Witness {
        plan: plan.clone(),
        v_matrix: v,
        full_matrix: full,
        certificate,
        commutation,
        automorphism,
        blocks,
        attempts: 1,
    })
}

/// Plan and assemble, doubling the exponent margin after a hyperbolicity
/// failure.
pub fn construct_witness(
    g: &Graph,
    part: &CoherentPartition,
    action: &HolonomyAction,
    alg: &GraphLieAlgebra,
    opts: &WitnessOptions,
) -> Result<Witness, WitnessError> {
    let mut plan = plan_witness(part, action, opts)?;
    let bounds: Vec<(f64, f64)> = plan.orbits.iter().map(|o| o.log_bounds).collect();
    let mut margin = opts.margin;
    for attempt in 1..=opts.max_retries.max(1) {
        match assemble_witness(g, part, action, &plan, alg, &opts.cancel) {
            Ok(mut w) => {
                w.attempts = attempt;
                return Ok(w);
            }
            Err(WitnessError::Certification { stage: "hyperbolicity", .. }) => {
                margin *= 2.0;
                for (o, k) in plan.orbits.iter_mut().zip(choose_exponents(&bounds, margin)?) {
                    o.exponent = k;
                }
            }
            Err(e) => return Err(e),
        }
    }
    Err(WitnessError::RetriesExhausted(opts.max_retries))
}

pub(crate) fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub(crate) fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(int_json).collect())).collect(),
    )
}

impl Witness {
    pub fn to_json(&self, g: &Graph, part: &CoherentPartition, action: &HolonomyAction) -> Value {
        let plan: Vec<Value> = self
            .plan
            .orbits
            .iter()
            .map(|o| {
                json!({
                    "orbit": o.orbit_index,
                    "rep": part.name(o.rep),
                    "c": o.c,
                    "seed": matrix_json(&o.seed.matrix),
                    "seed_source": o.seed.source,
                    "seed_char_poly": o.seed.certificate.char_poly,
                    "seed_certificate": o.seed.certificate,
                    "exponent": o.exponent,
                    "conjugators": o.conjugators.iter().map(|&(comp, h)| json!({
                        "component": part.name(comp),
                        "element": g.format_permutation(&action.elements()[h]),
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "dimension": self.full_matrix.rows(),
            "v_matrix": matrix_json(&self.v_matrix),
            "full_matrix": matrix_json(&self.full_matrix),
            "char_poly": self.certificate.char_poly,
            "certificate": self.certificate,
            "integer_like": self.certificate.integer_like,
            "automorphism": self.automorphism,
            "commutation": self.commutation.iter().map(|(s, ok)| json!({"generator": s, "commutes": ok})).collect::<Vec<_>>(),
            "blocks": self.blocks.iter().map(|b| json!({
                "component": part.name(b.component),
                "char_poly": b.char_poly,
                "matches_seed": b.matches_seed,
            })).collect::<Vec<_>>(),
            "plan": plan,
            "attempts": self.attempts,
        })
    }

    /// Human-readable account of the construction and its checks.
    pub fn proof_sketch(&self, g: &Graph, part: &CoherentPartition, action: &HolonomyAction) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "Witness on n_G of dimension {} (V: {}, W: {}).", self.full_matrix.rows(), g.vertex_count(), g.edge_count());
        for o in &self.plan.orbits {
            let members: Vec<String> = o.conjugators.iter().map(|&(c, _)| part.name(c)).collect();
            let _ = writeln!(
                s,
                "Orbit {{{}}} with c = {}: seed on {} ({}), char poly {}, raised to the power {}.",
                members.join(", "),
                o.c,
                part.name(o.rep),
                o.seed.source,
                o.seed.certificate.char_poly,
                o.exponent
            );
            for &(comp, h) in &o.conjugators {
                if comp != o.rep {
                    let _ = writeln!(
                        s,
                        "  g_{} is the seed transported by {}.",
                        part.name(comp),
                        g.format_permutation(&action.elements()[h])
                    );
                }
            }
        }
        let _ = writeln!(s, "Full characteristic polynomial: {}.", self.certificate.char_poly);
        let _ = writeln!(s, "Constant term is ±1: {}.", self.certificate.integer_like);
        let ev = &self.certificate.stages[0].evidence;
        let _ = writeln!(s, "Unit-circle test: {}; no root of modulus one.", ev.description());
        for (gen, ok) in &self.commutation {
            let _ = writeln!(s, "Commutes with the extension of {gen}: {ok}.");
        }
        let _ = writeln!(s, "Preserves the bracket on all basis pairs: {}.", self.automorphism);
        s
    }
}
