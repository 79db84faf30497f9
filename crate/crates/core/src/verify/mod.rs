//! Randomized verification of the identities and inequalities of the engine.
//!
//! A *suite* is a named predicate evaluated on generated cases. *Gating*
//! suites encode statements that are proved for the engine's definitions; a
//! single failure is a bug. *Diagnostic* suites probe claims that are known
//! to fail on some inputs; they report pass rates and counterexamples but
//! never fail a run.

pub mod generator;

use num::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    chain_dominating_bound, chain_identity_check, destabilization, diagonalize, dominating_number,
    dropler_intensity, expansion_index, is_hybrid, min_index_check, mixed_specific_check,
    normalization_stage, unionization_stage, analytic_range_bound, ExpansionExpr,
};
use crate::error::{Error, Result};
use crate::expansion::{
    at_origin, contract, expand, expand_mixed, expand_mixed_pow, expand_pow, mixed_totient,
    specialize, totient, totient_formula, value_at, Direction, MixedDirection, PolyTuple,
};
use crate::io::TupleFile;
use crate::measure::{area, check_integral_inequality, BoxDomain};
use crate::polyring::{format_rational, Monomial, Polynomial, Rational};
pub use generator::{gen_random_tuple, vars_for, GenConfig};
use generator::{
    case_rng, gen_direction, gen_disjoint_like, gen_distinct_path, gen_interval, gen_path,
    gen_small_rational, gen_tuple, gen_tuple_shaped,
};

/// Version string embedded in reports.
pub const ENGINE_VERSION: &str = concat!("expd ", env!("CARGO_PKG_VERSION"));

/// Maximum number of counterexamples kept per report.
pub const COUNTEREXAMPLE_CAP: usize = 10;

/// Whether a suite can fail a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    /// Must hold on every case.
    Gating,
    /// Reported only.
    Diagnostic,
}

/// One failing case.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    /// `"17"` for generated case 17, `"planted:0"` for the first planted tuple.
    pub case: String,
    /// The primary tuple of the case.
    pub instance: TupleFile,
    /// What was compared and what came out.
    pub detail: String,
}

/// Result of one suite run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Suite name.
    pub suite: String,
    /// Gating or diagnostic.
    pub classification: Classification,
    /// Number of cases evaluated (planted plus generated).
    pub cases: usize,
    /// Number of cases where the predicate failed.
    pub failures: usize,
    /// Number of cases where the predicate did not apply.
    pub inapplicable: usize,
    /// Up to [`COUNTEREXAMPLE_CAP`] failing cases, in case order.
    pub counterexamples: Vec<Counterexample>,
    /// Engine version.
    pub engine_version: String,
    /// Generator settings.
    pub config: GenConfig,
}

impl VerificationReport {
    /// Whether this report makes a run fail.
    #[must_use]
    pub fn gating_failed(&self) -> bool {
        self.classification == Classification::Gating && self.failures > 0
    }
}

/// Outcome of a predicate on one case.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    /// The predicate held.
    Pass,
    /// The predicate failed; the string explains how.
    Fail(String),
    /// The case does not satisfy the predicate's hypotheses.
    Inapplicable,
}

/// Inputs to a predicate: the primary tuple, a direction, and a private random stream.
pub struct Case<'a> {
    /// Primary tuple.
    pub t: PolyTuple,
    /// Primary direction.
    pub d: Direction,
    /// Stream for secondary draws.
    pub rng: ChaCha8Rng,
    /// Generator bounds.
    pub cfg: &'a GenConfig,
    /// Case index (for variant selection).
    pub index: u64,
}

type Predicate = fn(&mut Case<'_>) -> Result<Outcome>;

/// A named predicate.
pub struct Suite {
    /// Name used on the command line and in reports.
    pub name: &'static str,
    /// Gating or diagnostic.
    pub classification: Classification,
    /// The predicate.
    pub check: Predicate,
}

use Classification::{Diagnostic, Gating};

/// The full roster, in report order.
pub const SUITES: &[Suite] = &[
    Suite { name: "linearity", classification: Gating, check: linearity },
    Suite { name: "commutativity", classification: Gating, check: commutativity },
    Suite { name: "totient_formula", classification: Gating, check: totient_formula_suite },
    Suite { name: "totient_sum_upper", classification: Gating, check: totient_sum_upper },
    Suite { name: "totient_sum_eq", classification: Diagnostic, check: totient_sum_eq },
    Suite { name: "recovery_roundtrip", classification: Gating, check: recovery_roundtrip },
    Suite { name: "specialization_commutes", classification: Gating, check: specialization_commutes },
    Suite { name: "destab_range", classification: Gating, check: destab_range },
    Suite { name: "strong_destab", classification: Diagnostic, check: strong_destab },
    Suite { name: "dropler_energy_eq", classification: Gating, check: dropler_energy_eq },
    Suite { name: "dropler_max_upper", classification: Gating, check: dropler_max_upper },
    Suite { name: "dropler_max_eq", classification: Diagnostic, check: dropler_max_eq },
    Suite { name: "dropler_min_upper", classification: Gating, check: dropler_min_upper },
    Suite { name: "dropler_min_eq", classification: Diagnostic, check: dropler_min_eq },
    Suite { name: "mixed_totient_upper", classification: Gating, check: mixed_totient_upper },
    Suite { name: "mixed_totient_eq", classification: Diagnostic, check: mixed_totient_eq },
    Suite { name: "connection", classification: Gating, check: connection },
    Suite { name: "mixed_specific_inequality", classification: Gating, check: mixed_specific_inequality },
    Suite { name: "actual_inequality_corollary", classification: Gating, check: actual_inequality_corollary },
    Suite { name: "min_index_inequality", classification: Gating, check: min_index_inequality },
    Suite { name: "chain_identity", classification: Gating, check: chain_identity },
    Suite { name: "index_transitivity", classification: Gating, check: index_transitivity },
    Suite { name: "dominating_vs_index", classification: Gating, check: dominating_vs_index },
    Suite { name: "dominating_chain_bound", classification: Gating, check: dominating_chain_bound },
    Suite { name: "dominating_chain_bound_literal", classification: Diagnostic, check: dominating_chain_bound_literal },
    Suite { name: "area_linearity", classification: Gating, check: area_linearity },
    Suite { name: "integral_inequality", classification: Gating, check: integral_inequality },
    Suite { name: "rho_bound", classification: Diagnostic, check: rho_bound },
    Suite { name: "unionization_bound", classification: Diagnostic, check: unionization_bound },
    Suite { name: "analytic_range", classification: Gating, check: analytic_range },
    Suite { name: "hybrid_diagonal_transfer", classification: Gating, check: hybrid_diagonal_transfer },
];

/// Names of all suites, in report order.
#[must_use]
pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

/// Looks up a suite by name.
pub fn find_suite(name: &str) -> Result<&'static Suite> {
    SUITES.iter().find(|s| s.name == name).ok_or_else(|| Error::UnknownSuite(name.to_string()))
}

/// Runs one suite on `cfg.cases` generated cases.
pub fn run_suite(name: &str, cfg: &GenConfig) -> Result<VerificationReport> {
    run_suite_with(name, cfg, &[])
}

/// Runs one suite on the planted tuples (direction 0) followed by `cfg.cases` generated cases.
pub fn run_suite_with(name: &str, cfg: &GenConfig, planted: &[PolyTuple]) -> Result<VerificationReport> {
    cfg.validate()?;
    let suite = find_suite(name)?;
    let mut jobs: Vec<(String, u64, Option<&PolyTuple>)> = planted
        .iter()
        .enumerate()
        .map(|(i, t)| (format!("planted:{i}"), u64::MAX - i as u64, Some(t)))
        .collect();
    jobs.extend((0..cfg.cases as u64).map(|i| (i.to_string(), i, None)));
    let outcomes: Vec<(String, PolyTuple, Outcome)> = jobs
        .par_iter()
        .map(|(label, stream, plant)| {
            let mut rng = case_rng(cfg, *stream);
            let (t, d) = match plant {
                Some(t) => ((*t).clone(), 0),
                None => {
                    let t = gen_tuple(&mut rng, cfg);
                    let d = gen_direction(&mut rng, t.arity());
                    (t, d)
                }
            };
            let mut case = Case { t: t.clone(), d, rng, cfg, index: *stream };
            let outcome = (suite.check)(&mut case).unwrap_or_else(|e| Outcome::Fail(format!("error: {e}")));
            (label.clone(), t, outcome)
        })
        .collect();
    let mut report = VerificationReport {
        suite: suite.name.to_string(),
        classification: suite.classification,
        cases: outcomes.len(),
        failures: 0,
        inapplicable: 0,
        counterexamples: Vec::new(),
        engine_version: ENGINE_VERSION.to_string(),
        config: cfg.clone(),
    };
    for (label, t, outcome) in outcomes {
        match outcome {
            Outcome::Pass => {}
            Outcome::Inapplicable => report.inapplicable += 1,
            Outcome::Fail(detail) => {
                report.failures += 1;
                if report.counterexamples.len() < COUNTEREXAMPLE_CAP {
                    report.counterexamples.push(Counterexample {
                        case: label,
                        instance: TupleFile::from_tuple(&vars_for(t.arity()), &t),
                        detail,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Runs every suite in roster order.
pub fn run_all(cfg: &GenConfig, planted: &[PolyTuple]) -> Result<Vec<VerificationReport>> {
    SUITES.iter().map(|s| run_suite_with(s.name, cfg, planted)).collect()
}

// ---------------------------------------------------------------------------
// Helpers shared by predicates.

fn show(t: &PolyTuple) -> String {
    t.display(&vars_for(t.arity()))
}

fn check(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(detail())
    }
}

fn like(c: &mut Case<'_>) -> PolyTuple {
    gen_tuple_shaped(&mut c.rng, c.cfg, c.t.arity(), c.t.len())
}

/// Second direction, distinct from `d` when the arity allows.
fn other_direction(c: &mut Case<'_>) -> Direction {
    let n = c.t.arity();
    if n == 1 {
        0
    } else {
        (c.d + c.rng.gen_range(1..n)) % n
    }
}

fn x_power(arity: usize, d: Direction, e: u32) -> Polynomial {
    Polynomial::from_terms(arity, [(Monomial::one(arity).with_exponent(d, e), Rational::one())])
}

/// A mother tuple with totient at least `min_phi` in direction `d`: `t` itself, or `t`
/// with `x_d^e` added to its first entry.
fn mother(c: &Case<'_>, min_phi: u32) -> Result<PolyTuple> {
    if totient(&c.t, c.d)? >= min_phi {
        return Ok(c.t.clone());
    }
    let e = c.cfg.max_degree.max(min_phi - 1);
    let mut entries = c.t.entries().to_vec();
    entries[0] = entries[0].try_add(&x_power(c.t.arity(), c.d, e))?;
    PolyTuple::new(entries)
}

/// Offsets `k_1 ≥ k_2 ≥ … ≥ k_n = 0` of a chain `S_i = E^{k_i}(M)`, with `E(S_1) ≠ 0`.
fn chain_offsets(c: &mut Case<'_>, phi: u32, len: usize, strict: bool) -> Vec<u32> {
    let top = phi - 2;
    let mut ks: Vec<u32> = if strict {
        let mut pool: Vec<u32> = (1..=top).collect();
        let mut out = Vec::new();
        for _ in 1..len.min(pool.len() + 1) {
            out.push(pool.swap_remove(c.rng.gen_range(0..pool.len())));
        }
        out
    } else {
        (1..len).map(|_| c.rng.gen_range(0..=top)).collect()
    };
    ks.push(0);
    ks.sort_unstable_by(|a, b| b.cmp(a));
    ks
}

fn chain_exprs(m: &PolyTuple, d: Direction, ks: &[u32]) -> Result<Vec<ExpansionExpr>> {
    ks.iter().map(|&k| ExpansionExpr::single(expand_pow(m, d, k)?, d)).collect()
}

fn random_chain(c: &mut Case<'_>, strict: bool) -> Result<(PolyTuple, Vec<u32>, Vec<ExpansionExpr>)> {
    let m = mother(c, 3)?;
    let phi = totient(&m, c.d)?;
    let len = c.rng.gen_range(3..=5);
    let ks = chain_offsets(c, phi, len, strict);
    let chain = chain_exprs(&m, c.d, &ks)?;
    Ok((m, ks, chain))
}

// ---------------------------------------------------------------------------
// Predicates.

fn linearity(c: &mut Case<'_>) -> Result<Outcome> {
    let b = like(c);
    let (p, q) = (gen_small_rational(&mut c.rng), gen_small_rational(&mut c.rng));
    let lhs = expand(&PolyTuple::linear_combine(&p, &c.t, &q, &b)?, c.d)?;
    let rhs = PolyTuple::linear_combine(&p, &expand(&c.t, c.d)?, &q, &expand(&b, c.d)?)?;
    Ok(check(lhs == rhs, || format!("E(pA+qB) = {} but pE(A)+qE(B) = {}", show(&lhs), show(&rhs))))
}

fn commutativity(c: &mut Case<'_>) -> Result<Outcome> {
    let e = other_direction(c);
    let a = expand(&expand(&c.t, c.d)?, e)?;
    let b = expand(&expand(&c.t, e)?, c.d)?;
    Ok(check(a == b, || format!("E_{e}E_{} = {} vs E_{}E_{e} = {}", c.d, show(&a), c.d, show(&b))))
}

fn totient_formula_suite(c: &mut Case<'_>) -> Result<Outcome> {
    let (it, cf) = (totient(&c.t, c.d)?, totient_formula(&c.t, c.d)?);
    Ok(check(it == cf, || format!("iterated totient {it}, closed form {cf}")))
}

/// The second summand: independent, disjoint-support, or a cancelling family.
fn summand(c: &mut Case<'_>) -> Result<(PolyTuple, &'static str)> {
    Ok(match c.index % 3 {
        0 => (like(c), "independent"),
        1 => (gen_disjoint_like(&mut c.rng, c.cfg, &c.t), "disjoint"),
        _ => (expand(&c.t, c.d)?.try_sub(&c.t)?, "cancelling"),
    })
}

fn sum_totients(c: &mut Case<'_>) -> Result<(u32, u32, u32, &'static str)> {
    let (b, kind) = summand(c)?;
    let s = c.t.try_add(&b)?;
    Ok((totient(&c.t, c.d)?, totient(&b, c.d)?, totient(&s, c.d)?, kind))
}

fn totient_sum_upper(c: &mut Case<'_>) -> Result<Outcome> {
    let (a, b, s, kind) = sum_totients(c)?;
    Ok(check(s <= a.max(b), || format!("{kind} summand: totients {a}, {b}, sum {s}")))
}

fn totient_sum_eq(c: &mut Case<'_>) -> Result<Outcome> {
    let (a, b, s, kind) = sum_totients(c)?;
    Ok(check(s == a.max(b), || format!("{kind} summand: totients {a}, {b}, sum {s} != max")))
}

fn recovery_roundtrip(c: &mut Case<'_>) -> Result<Outcome> {
    let back = expand(&contract(&c.t, c.d)?, c.d)?;
    if back != c.t {
        return Ok(Outcome::Fail(format!("E(contract(t)) = {}", show(&back))));
    }
    let rec = contract(&expand(&c.t, c.d)?, c.d)?;
    let want = c.t.try_map(|p| p.try_sub(&p.free_part(c.d)?))?;
    Ok(check(rec == want, || format!("contract(E(t)) = {}, expected {}", show(&rec), show(&want))))
}

fn specialization_commutes(c: &mut Case<'_>) -> Result<Outcome> {
    let assign: Vec<(Direction, Rational)> = (0..c.t.arity())
        .filter(|&i| i != c.d)
        .map(|i| (i, gen_small_rational(&mut c.rng)))
        .collect();
    let a = specialize(&expand(&c.t, c.d)?, &assign, c.d)?;
    let b = expand(&specialize(&c.t, &assign, c.d)?, c.d)?;
    Ok(check(a == b, || format!("spec(E t) = {}, E(spec t) = {}", show(&a), show(&b))))
}

fn destab_range(c: &mut Case<'_>) -> Result<Outcome> {
    if c.t.is_zero() {
        return Ok(Outcome::Inapplicable);
    }
    let r = destabilization(&c.t, c.d)?;
    let phi = totient(&c.t, c.d)?;
    let consistent = r.natural == (r.stage == 0) && r.strong == !r.value.has_zero_entry();
    Ok(check(r.stage < phi && consistent, || format!("stage {} with totient {phi}", r.stage)))
}

fn strong_destab(c: &mut Case<'_>) -> Result<Outcome> {
    if c.t.is_zero() {
        return Ok(Outcome::Inapplicable);
    }
    let phi = totient(&c.t, c.d)?;
    let v = at_origin(&expand_pow(&c.t, c.d, phi - 1)?, c.d)?;
    Ok(check(!v.has_zero_entry(), || format!("stage {} value {} has a zero entry", phi - 1, show(&v))))
}

fn source_through(c: &mut Case<'_>) -> Result<ExpansionExpr> {
    let m = gen_path(&mut c.rng, c.t.arity(), Some(c.d));
    ExpansionExpr::new(c.t.clone(), m, 1)
}

fn dropler_energy_eq(c: &mut Case<'_>) -> Result<Outcome> {
    let src = source_through(c)?;
    let r = dropler_intensity(&src, &c.t, c.d)?;
    let phi = totient_formula(&c.t, c.d)?;
    let ok = if r.admits { r.energy + r.intensity == phi } else { r.energy == 0 && r.intensity >= phi };
    Ok(check(ok, || format!("intensity {}, energy {}, totient {phi}", r.intensity, r.energy)))
}

fn sum_op(v: &PolyTuple, s: Direction, t: Direction) -> Result<PolyTuple> {
    expand(v, s)?.try_add(&expand(v, t)?)
}

/// Intensities of the source in two directions, and the operators' annihilation steps.
fn two_intensities(c: &mut Case<'_>) -> Result<(u32, u32, Direction, Direction, PolyTuple)> {
    let e = other_direction(c);
    let src = source_through(c)?;
    let k1 = dropler_intensity(&src, &c.t, c.d)?.intensity;
    let k2 = dropler_intensity(&src, &c.t, e)?.intensity;
    Ok((k1, k2, c.d, e, src.value))
}

fn annihilation_step<F: Fn(&PolyTuple) -> Result<PolyTuple>>(v: &PolyTuple, op: F, cap: u32) -> Result<Option<u32>> {
    let mut cur = v.clone();
    for k in 1..=cap {
        cur = op(&cur)?;
        if cur.is_zero() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

fn dropler_max_upper(c: &mut Case<'_>) -> Result<Outcome> {
    let (k1, k2, s, t, v) = two_intensities(c)?;
    let bound = k1 + k2 - 1;
    let step = annihilation_step(&v, |w| sum_op(w, s, t), bound)?;
    Ok(check(step.is_some(), || format!("(E_{s}+E_{t})^{bound} does not annihilate {}", show(&v))))
}

fn dropler_max_eq(c: &mut Case<'_>) -> Result<Outcome> {
    let (k1, k2, s, t, v) = two_intensities(c)?;
    let step = annihilation_step(&v, |w| sum_op(w, s, t), k1 + k2)?;
    Ok(check(step == Some(k1.max(k2)), || {
        format!("intensities {k1}, {k2}; (E_{s}+E_{t}) annihilates {} at step {step:?}", show(&v))
    }))
}

fn mixed_pair_step(c: &mut Case<'_>) -> Result<(u32, u32, Option<u32>, String)> {
    let (k1, k2, s, t, v) = two_intensities(c)?;
    let pair = MixedDirection::new(vec![s, t])?;
    let step = annihilation_step(&v, |w| expand_mixed(w, &pair), k1.max(k2))?;
    Ok((k1, k2, step, show(&v)))
}

fn dropler_min_upper(c: &mut Case<'_>) -> Result<Outcome> {
    let (k1, k2, step, v) = mixed_pair_step(c)?;
    Ok(check(step.is_some_and(|k| k <= k1.min(k2)), || {
        format!("intensities {k1}, {k2}; mixed operator kills {v} at step {step:?}")
    }))
}

fn dropler_min_eq(c: &mut Case<'_>) -> Result<Outcome> {
    let (k1, k2, step, v) = mixed_pair_step(c)?;
    Ok(check(step == Some(k1.min(k2)), || {
        format!("intensities {k1}, {k2}; mixed operator kills {v} at step {step:?}")
    }))
}

fn mixed_vs_min(c: &mut Case<'_>) -> Result<(u32, u32, MixedDirection)> {
    let m = gen_path(&mut c.rng, c.t.arity(), None);
    let phi_m = mixed_totient(&c.t, &m)?;
    let mut min = u32::MAX;
    for d in m.distinct() {
        min = min.min(totient(&c.t, d)?);
    }
    Ok((phi_m, min, m))
}

fn mixed_totient_upper(c: &mut Case<'_>) -> Result<Outcome> {
    let (phi_m, min, m) = mixed_vs_min(c)?;
    Ok(check(phi_m <= min, || format!("path {:?}: mixed totient {phi_m} > min {min}", m.dirs())))
}

fn mixed_totient_eq(c: &mut Case<'_>) -> Result<Outcome> {
    let (phi_m, min, m) = mixed_vs_min(c)?;
    Ok(check(phi_m == min, || format!("path {:?}: mixed totient {phi_m} != min {min}", m.dirs())))
}

fn connection(c: &mut Case<'_>) -> Result<Outcome> {
    let m = gen_path(&mut c.rng, c.t.arity(), Some(c.d));
    let src = ExpansionExpr::new(c.t.clone(), m.clone(), 1)?;
    if src.value.is_zero() {
        return Ok(Outcome::Inapplicable);
    }
    let diag = diagonalize(&c.t, &m, c.d)?;
    let k = dropler_intensity(&src, &c.t, c.d)?.intensity;
    let phi = totient(&diag.spot, c.d)?;
    Ok(check(phi == k + diag.order, || {
        format!("path {:?}: totient of spot {phi}, intensity {k} + order {}", m.dirs(), diag.order)
    }))
}

fn mixed_specific_inequality(c: &mut Case<'_>) -> Result<Outcome> {
    let m = gen_path(&mut c.rng, c.t.arity(), None);
    let r = mixed_specific_check(&c.t, &m)?;
    let ok = r.holds && r.energy_form_holds.unwrap_or(true);
    Ok(check(ok, || format!("path {:?}: {r:?}", m.dirs())))
}

fn actual_inequality_corollary(c: &mut Case<'_>) -> Result<Outcome> {
    let m = gen_distinct_path(&mut c.rng, c.t.arity());
    let r = mixed_specific_check(&c.t, &m)?;
    Ok(check(r.all_orders_one && r.corollary_holds, || format!("path {:?}: {r:?}", m.dirs())))
}

fn min_index_inequality(c: &mut Case<'_>) -> Result<Outcome> {
    let m = gen_path(&mut c.rng, c.t.arity(), None);
    let r = min_index_check(&c.t, &m)?;
    Ok(check(r.holds, || format!("path {:?}: {r:?}", m.dirs())))
}

fn chain_identity(c: &mut Case<'_>) -> Result<Outcome> {
    let (_, ks, chain) = random_chain(c, false)?;
    let r = chain_identity_check(&chain)?;
    Ok(check(r.identity_holds && r.corollary_holds, || format!("offsets {ks:?}: {r:?}")))
}

fn index_transitivity(c: &mut Case<'_>) -> Result<Outcome> {
    let m = mother(c, 3)?;
    let phi = totient(&m, c.d)?;
    let ks = {
        let mut v: Vec<u32> = (0..3).map(|_| c.rng.gen_range(0..=phi - 2)).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    };
    let ch = chain_exprs(&m, c.d, &ks)?;
    let r1 = expansion_index(&ch[2], &ch[1])?;
    let r2 = expansion_index(&ch[1], &ch[0])?;
    let r = expansion_index(&ch[2], &ch[0])?;
    let ok = matches!((r1, r2, r), (Some(a), Some(b), Some(t)) if t == a + b - 1);
    Ok(check(ok, || format!("offsets {ks:?}: [C:B]={r1:?} [B:A]={r2:?} [C:A]={r:?}")))
}

fn dominating_vs_index(c: &mut Case<'_>) -> Result<Outcome> {
    let (_, ks, chain) = random_chain(c, false)?;
    let n = chain.len();
    let top = &chain[n - 1];
    for (i, member) in chain.iter().enumerate() {
        let r = expansion_index(top, member)?;
        let dn = dominating_number(member, top)?;
        if !matches!((r, dn), (Some(a), Some(b)) if a <= b) {
            return Ok(Outcome::Fail(format!("offsets {ks:?}, member {}: index {r:?}, dominating {dn:?}", i + 1)));
        }
    }
    for k in 1..=n {
        let b = chain_dominating_bound(&chain, k)?;
        if !b.holds {
            return Ok(Outcome::Fail(format!("offsets {ks:?}, k = {k}: {b:?}")));
        }
    }
    Ok(Outcome::Pass)
}

/// `Σ_i D[S_i|S_n]` over a strictly increasing chain, and the top totient.
fn dominating_total(c: &mut Case<'_>) -> Result<(Vec<u32>, u32, u32, u32)> {
    let m = mother(c, 3)?;
    let phi = totient(&m, c.d)?;
    let len = c.rng.gen_range(2..=5);
    let ks = chain_offsets(c, phi, len, true);
    let chain = chain_exprs(&m, c.d, &ks)?;
    let top = &chain[chain.len() - 1];
    let mut total = 0;
    for member in &chain {
        total += dominating_number(member, top)?
            .ok_or_else(|| Error::Precondition("member not dominated".into()))?;
    }
    Ok((ks.clone(), total, phi, ks.len() as u32))
}

fn dominating_chain_bound(c: &mut Case<'_>) -> Result<Outcome> {
    let (ks, total, phi, n) = dominating_total(c)?;
    // Each D is one more than the member's offset below the top, so the
    // offsets are distinct values in [0, Φ−2].
    let lhs = total - n;
    let rhs = (phi - 1) * (phi - 2) / 2;
    Ok(check(lhs <= rhs, || format!("offsets {ks:?}: Σ(D−1) = {lhs} > {rhs}")))
}

fn dominating_chain_bound_literal(c: &mut Case<'_>) -> Result<Outcome> {
    let (ks, total, phi, _) = dominating_total(c)?;
    // Σ D ≤ (Φ−1)/2 · (Φ−2), compared as 2ΣD ≤ (Φ−1)(Φ−2).
    let rhs2 = (phi - 1) * (phi - 2);
    Ok(check(2 * total <= rhs2, || format!("offsets {ks:?}: ΣD = {total}, bound {}/2", rhs2)))
}

fn random_box(c: &mut Case<'_>, m: &MixedDirection) -> Result<BoxDomain> {
    BoxDomain::new(
        m.distinct()
            .into_iter()
            .map(|d| {
                let (lo, hi) = gen_interval(&mut c.rng);
                (d, lo, hi)
            })
            .collect(),
    )
}

fn area_linearity(c: &mut Case<'_>) -> Result<Outcome> {
    let b = like(c);
    let m = gen_path(&mut c.rng, c.t.arity(), None);
    let bx = random_box(c, &m)?;
    let (p, q) = (gen_small_rational(&mut c.rng), gen_small_rational(&mut c.rng));
    let lhs = area(&PolyTuple::linear_combine(&p, &c.t, &q, &b)?, &m, &bx)?;
    let rhs = Polynomial::linear_combine(&p, &area(&c.t, &m, &bx)?, &q, &area(&b, &m, &bx)?)?;
    Ok(check(lhs == rhs, || {
        let v = vars_for(c.t.arity());
        format!("area(pA+qB) = {} vs {}", lhs.format(&v), rhs.format(&v))
    }))
}

/// Largest number of integrated variables in `integral_inequality`.
const INTEGRAL_DIMENSION: usize = 2;
/// Relative quadrature tolerance in `integral_inequality`.
const INTEGRAL_TOL: f64 = 1e-9;

fn integral_inequality(c: &mut Case<'_>) -> Result<Outcome> {
    // Integration runs over at most two variables: the rest are fixed at
    // random values first, which keeps the adaptive quadrature cheap on
    // non-smooth integrands while both sides remain plain numbers.
    let n = c.t.arity().min(INTEGRAL_DIMENSION);
    let fixed: Vec<(Direction, Rational)> =
        (n..c.t.arity()).map(|i| (i, gen_small_rational(&mut c.rng))).collect();
    let t = value_at(&c.t, &fixed)?;
    let mut dirs: Vec<Direction> = (0..n).collect();
    let extra = c.rng.gen_range(0..n);
    dirs.push(extra);
    let m = MixedDirection::new(dirs)?;
    let bx = random_box(c, &m)?;
    let r = check_integral_inequality(&t, &m, &bx, INTEGRAL_TOL)?;
    Ok(check(r.holds, || {
        let b: Vec<String> = bx
            .bounds
            .iter()
            .map(|(d, a, b)| format!("{d}:{}:{}", format_rational(a), format_rational(b)))
            .collect();
        let f: Vec<String> = fixed.iter().map(|(d, v)| format!("{d}={}", format_rational(v))).collect();
        format!("fixed [{}], box {}: lhs {} < rhs {}", f.join(","), b.join(","), r.lhs, r.rhs)
    }))
}

fn rho_bound(c: &mut Case<'_>) -> Result<Outcome> {
    let (rho, _) = normalization_stage(&c.t, c.d)?;
    Ok(check(rho <= 2, || format!("normalization stage {rho} > 2")))
}

fn unionization_bound(c: &mut Case<'_>) -> Result<Outcome> {
    let (rho, _) = normalization_stage(&c.t, c.d)?;
    if rho == 0 {
        return Ok(Outcome::Inapplicable);
    }
    let j = unionization_stage(&c.t, c.d)?;
    let phi = totient(&c.t, c.d)?;
    Ok(check(j >= phi / rho, || format!("unionization {j} < ⌊{phi}/{rho}⌋")))
}

fn analytic_range(c: &mut Case<'_>) -> Result<Outcome> {
    let b = analytic_range_bound(&c.t, c.d)?;
    let phi = totient_formula(&c.t, c.d)?;
    Ok(check(2 * b <= phi && phi <= 2 * b + 1, || format!("bound {b} for totient {phi}")))
}

fn hybrid_diagonal_transfer(c: &mut Case<'_>) -> Result<Outcome> {
    if c.t.arity() < 2 {
        return Ok(Outcome::Inapplicable);
    }
    let e = other_direction(c);
    let mut dirs = vec![c.d, e];
    if c.rng.gen_bool(0.5) {
        dirs.push(if c.rng.gen_bool(0.5) { c.d } else { e });
    }
    let m = MixedDirection::new(dirs)?;
    let a = diagonalize(&c.t, &m, c.d)?;
    let b = diagonalize(&c.t, &m, e)?;
    let e1 = ExpansionExpr::new(a.spot, MixedDirection::single(c.d), a.order)?;
    let e2 = ExpansionExpr::new(b.spot, MixedDirection::single(e), b.order)?;
    let target = expand_mixed_pow(&c.t, &m, 1)?;
    let ok = is_hybrid(&e1, &e2)? && e1.value == target && e2.value == target;
    Ok(check(ok, || format!("path {:?}: {} vs {}", m.dirs(), show(&e1.value), show(&e2.value))))
}
