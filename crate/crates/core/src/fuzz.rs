//! Seeded random instances and the invariants checked on them.
//!
//! Every instance is generated from a single `u64` seed, so a failure can be
//! replayed with [`run_instance`].

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::adr::{has_surjective_radical_hom, verify_left_approximation, AdrModule};
use crate::basic::BasicAlgebra;
use crate::chain::{find_rejective_chain, verify_total_left_chain, DEFAULT_SEARCH_BOUND};
use crate::linalg::Prime;
use crate::module::{decompose_into, hom_space, radical_hom_space, Module};
use crate::presentation::{parse_presentation, Element, Presentation, DEFAULT_CAP};
use crate::qh::{
    check_left_strongly_qh, find_strongly_qh_order, is_strongly_qh, four_conditions_suite, OrderSpec, QhError,
    DEFAULT_GLDIM_CAP,
};

pub const MAX_VERTICES: usize = 5;
pub const MAX_ARROWS: usize = 6;
pub const MAX_RELATIONS: usize = 3;
/// Instances whose algebra or catalog exceed these sizes are redrawn.
pub const MAX_ALGEBRA_DIM: usize = 16;
pub const MAX_CATALOG: usize = 10;
/// Exhaustive order search is only attempted on catalogs this small.
pub const MAX_EXHAUSTIVE: usize = 4;

pub const INVARIANTS: [&str; 9] = [
    "stratification",
    "radical-quotient-approximation",
    "total-left-chain",
    "left-strongly-qh-adr-order",
    "gldim-bound",
    "chain-length-bound",
    "radical-quotients-in-add",
    "four-conditions-agree",
    "search-matches-orders",
];

/// DSL text of a random admissible presentation: arrows go from lower to
/// higher vertices, plus at most one loop per vertex killed by a power.
pub fn random_presentation_text(rng: &mut impl Rng) -> String {
    let n = rng.gen_range(1..=MAX_VERTICES);
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    let count = rng.gen_range(usize::from(n == 1)..=MAX_ARROWS.min(n * (n + 1) / 2 + 1));
    let mut looped = vec![false; n];
    let mut loops = 0;
    for _ in 0..count {
        let s = rng.gen_range(0..n);
        let t = rng.gen_range(s..n);
        if s == t {
            if looped[s] || loops >= 2 {
                continue;
            }
            looped[s] = true;
            loops += 1;
        }
        arrows.push((s, t));
    }
    let mut rels: Vec<Vec<usize>> = Vec::new();
    for (i, &(s, t)) in arrows.iter().enumerate() {
        if s == t {
            rels.push(vec![i; rng.gen_range(2..=3)]);
        }
    }
    let extra = rng.gen_range(0..=MAX_RELATIONS.saturating_sub(rels.len()));
    for _ in 0..extra {
        let len = rng.gen_range(2..=3);
        let Some(&(s0, _)) = arrows.choose(rng) else { break };
        let mut walk = Vec::new();
        let mut at = s0;
        for _ in 0..len {
            let out: Vec<usize> = (0..arrows.len()).filter(|&i| arrows[i].0 == at).collect();
            let Some(&a) = out.choose(rng) else { break };
            walk.push(a);
            at = arrows[a].1;
        }
        if walk.len() >= 2 && !rels.contains(&walk) {
            rels.push(walk);
        }
    }
    let mut text = String::from("quiver\nvertices:");
    for v in 1..=n {
        text.push_str(&format!(" {v}"));
    }
    text.push('\n');
    for (i, (s, t)) in arrows.iter().enumerate() {
        text.push_str(&format!("arrow x{i}: {} -> {}\n", s + 1, t + 1));
    }
    if !rels.is_empty() {
        text.push_str("relations\n");
        for r in rels {
            let names: Vec<String> = r.iter().map(|a| format!("x{a}")).collect();
            text.push_str(&format!("rel: {}\n", names.join("*")));
        }
    }
    text
}

/// A random local module `P(v)/U` with `U` generated inside the radical.
pub fn random_local(rng: &mut impl Rng, pres: &Arc<Presentation>, name: &str) -> Module {
    let p = pres.prime();
    // mostly non-simple projectives, so that catalogs are not trivial
    let n = pres.quiver().num_vertices();
    let rich: Vec<usize> = (0..n).filter(|&v| Module::projective(pres, v).dim() > 1).collect();
    let v = match rich.choose(rng) {
        Some(&v) if rng.gen_bool(0.9) => v,
        _ => rng.gen_range(0..n),
    };
    let proj = Module::projective(pres, v);
    let paths: Vec<_> = pres.paths_from(v).filter(|q| !q.is_trivial()).cloned().collect();
    let mut kernel = proj.radical_power(proj.loewy_length());
    if !paths.is_empty() && rng.gen_bool(0.5) {
        for _ in 0..rng.gen_range(1..=2) {
            let mut e = Element::zero();
            for _ in 0..rng.gen_range(1..=2) {
                let q = paths.choose(rng).expect("nonempty").clone();
                e.add_term(p, q, rng.gen_range(1..p.get()));
            }
            if let Ok(x) = Module::projective_vector(pres, v, &e) {
                kernel = kernel.sum(&proj.generate_from(&x));
            }
        }
    }
    proj.quotient(&kernel, name).0
}

/// A random instance: an algebra and a semilocal module over it.
pub struct Instance {
    pub seed: u64,
    pub text: String,
    pub pres: Arc<Presentation>,
    pub adr: AdrModule,
}

pub fn generate(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let text = random_presentation_text(&mut rng);
        let Ok(pres) = parse_presentation(&text, Prime::DEFAULT, DEFAULT_CAP) else { continue };
        if pres.dim() > MAX_ALGEBRA_DIM {
            continue;
        }
        let pres = Arc::new(pres);
        let k = rng.gen_range(1..=3);
        let locals: Vec<Module> = (0..k).map(|i| random_local(&mut rng, &pres, &format!("X{}", i + 1))).collect();
        let Ok(adr) = AdrModule::new(pres.clone(), locals) else { continue };
        if adr.len() > MAX_CATALOG || AdrModule::of_algebra(&pres).map_or(true, |a| a.len() > MAX_CATALOG) {
            continue;
        }
        return Instance { seed, text, pres, adr };
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// `None` when the invariant does not apply to the instance.
    pub passed: Option<bool>,
    pub detail: String,
}

fn check(name: &str, passed: Option<bool>, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub seed: u64,
    pub presentation: String,
    pub catalog: Vec<String>,
    pub checks: Vec<Check>,
}

impl InstanceReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed != Some(false))
    }
}

/// Recomputes `F_{i,j}` from the definition and compares.
fn stratification_sound(adr: &AdrModule) -> Result<bool, QhError> {
    let table = adr.stratify()?;
    let cat = adr.catalog();
    let m = adr.loewy_length();
    let mut seen = vec![false; cat.len()];
    for (i, degree) in table.layers.iter().enumerate() {
        let mut rest: Vec<usize> = (0..cat.len()).filter(|&x| cat[x].loewy_length() == m - i).collect();
        for layer in degree {
            for &x in &rest {
                let mut minimal = true;
                for &n in &rest {
                    if has_surjective_radical_hom(&cat[x], &cat[n])? {
                        minimal = false;
                    }
                }
                if minimal != layer.contains(&x) {
                    return Ok(false);
                }
            }
            for &x in layer {
                if std::mem::replace(&mut seen[x], true) {
                    return Ok(false);
                }
            }
            rest.retain(|x| !layer.contains(x));
        }
        if !rest.is_empty() {
            return Ok(false);
        }
    }
    Ok(seen.iter().all(|&s| s) && table.n_m() == adr.adr_chain()?.len())
}

fn radical_quotient_approximation(adr: &AdrModule) -> Result<bool, QhError> {
    let table = adr.stratify()?;
    let m = adr.loewy_length();
    if m < 2 {
        return Ok(true);
    }
    let cat = adr.catalog();
    let all: Vec<&Module> = cat.iter().collect();
    let first = &table.layers[0][0];
    let rest: Vec<&Module> = (0..cat.len()).filter(|k| !first.contains(k)).map(|k| &cat[k]).collect();
    for &x in first {
        let (y, rho) = cat[x].quotient(&cat[x].radical_power(m - 1), "q");
        if !verify_left_approximation(&cat[x], &y, &rho, &rest) {
            return Ok(false);
        }
        let lhs: usize = all.iter().map(|z| hom_space(&y, z).dim()).sum();
        let mut rhs = 0;
        for z in &all {
            rhs += radical_hom_space(&cat[x], z)?.dim();
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// If every `P(i)J` lies in add Ã then so does every `P(i)J/P(i)J^j`.
fn radical_quotients_in_add(pres: &Arc<Presentation>, regular: &AdrModule) -> Result<Option<bool>, QhError> {
    let radicals: Vec<Module> = (0..pres.quiver().num_vertices())
        .map(|v| {
            let p = Module::projective(pres, v);
            p.sub_module(&p.radical(), "PJ").0
        })
        .collect();
    if !radicals.iter().all(|r| r.is_zero() || decompose_into(r, regular.catalog()).is_ok()) {
        return Ok(None);
    }
    for r in &radicals {
        for j in 1..=pres.loewy_length() {
            let q = r.quotient(&r.radical_power(j), "q").0;
            if !q.is_zero() && decompose_into(&q, regular.catalog()).is_err() {
                return Ok(Some(false));
            }
        }
    }
    Ok(Some(true))
}

fn err_check(name: &str, e: impl std::fmt::Display) -> Check {
    check(name, Some(false), format!("error: {e}"))
}

/// Generates the instance for `seed` and runs every invariant on it.
pub fn run_instance(seed: u64) -> InstanceReport {
    let inst = generate(seed);
    let adr = &inst.adr;
    let labels = adr.labels();
    let mut checks = Vec::new();

    checks.push(match stratification_sound(adr) {
        Ok(b) => check(INVARIANTS[0], Some(b), ""),
        Err(e) => err_check(INVARIANTS[0], e),
    });
    checks.push(match radical_quotient_approximation(adr) {
        Ok(b) => check(INVARIANTS[1], Some(b), ""),
        Err(e) => err_check(INVARIANTS[1], e),
    });

    match BasicAlgebra::from_modules(adr.catalog()) {
        Err(e) => {
            for name in &INVARIANTS[2..6] {
                checks.push(err_check(name, &e));
            }
        }
        Ok(b) => {
            let chain = adr.adr_chain().expect("stratification checked above");
            let total = verify_total_left_chain(&b, &chain).map(|r| r.ok());
            checks.push(match &total {
                Ok(ok) => check(INVARIANTS[2], Some(*ok), format!("length {}", chain.len())),
                Err(e) => err_check(INVARIANTS[2], e),
            });
            let order = OrderSpec::from_chain(&labels, &chain);
            checks.push(match check_left_strongly_qh(&b, &order) {
                Ok(c) => check(INVARIANTS[3], Some(c.ok()), order.to_string()),
                Err(e) => err_check(INVARIANTS[3], e),
            });
            match b.global_dimension(DEFAULT_GLDIM_CAP) {
                Ok(gl) => {
                    let n_m = chain.len();
                    checks.push(check(INVARIANTS[4], Some(gl <= n_m), format!("gl B = {gl}, n_M = {n_m}")));
                    let applies = matches!(total, Ok(true)).then_some(gl <= chain.len());
                    checks.push(check(INVARIANTS[5], applies, format!("gl B = {gl}")));
                }
                Err(e) => {
                    checks.push(err_check(INVARIANTS[4], &e));
                    checks.push(err_check(INVARIANTS[5], &e));
                }
            }
            if b.num_vertices() <= MAX_EXHAUSTIVE {
                let res = find_rejective_chain(&b, DEFAULT_SEARCH_BOUND)
                    .map_err(QhError::from)
                    .and_then(|c| Ok((c.clone(), find_strongly_qh_order(&b, MAX_EXHAUSTIVE)?)))
                    .and_then(|(c, o)| {
                        let induced = match &c {
                            Some(c) => is_strongly_qh(&b, &OrderSpec::from_chain(&labels, c))?,
                            None => true,
                        };
                        Ok(c.is_some() == o.is_some() && induced)
                    });
                checks.push(match res {
                    Ok(ok) => check(INVARIANTS[8], Some(ok), ""),
                    Err(e) => err_check(INVARIANTS[8], e),
                });
            }
        }
    }

    match AdrModule::of_algebra(&inst.pres) {
        Ok(regular) => {
            checks.push(match radical_quotients_in_add(&inst.pres, &regular) {
                Ok(r) => check(INVARIANTS[6], r, ""),
                Err(e) => err_check(INVARIANTS[6], e),
            });
        }
        Err(e) => checks.push(err_check(INVARIANTS[6], e)),
    }
    checks.push(if inst.pres.loewy_length() < 2 {
        check(INVARIANTS[7], None, "Loewy length one")
    } else {
        match four_conditions_suite(&inst.pres, DEFAULT_SEARCH_BOUND, DEFAULT_GLDIM_CAP) {
            Ok(r) => check(INVARIANTS[7], Some(true), format!("all {}", r.strongly_qh)),
            Err(e) => err_check(INVARIANTS[7], e),
        }
    });
    checks.sort_by_key(|c| INVARIANTS.iter().position(|n| *n == c.name));

    InstanceReport { seed, presentation: inst.text, catalog: labels, checks }
}

/// Seed of the `i`-th instance of a run.
pub fn instance_seed(base: u64, i: u64) -> u64 {
    base.wrapping_mul(1_000_003).wrapping_add(i)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantTally {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub seed: u64,
    pub count: usize,
    pub tallies: Vec<InvariantTally>,
    /// Thm 3.1 instances by outcome: `[all true, all false]`.
    pub four_conditions: [usize; 2],
    pub failures: Vec<InstanceReport>,
}

impl FuzzSummary {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run(seed: u64, count: usize) -> FuzzSummary {
    let mut tallies: Vec<InvariantTally> = INVARIANTS
        .iter()
        .map(|n| InvariantTally { name: n.to_string(), passed: 0, failed: 0, skipped: 0 })
        .collect();
    let mut four = [0, 0];
    let mut failures = Vec::new();
    for i in 0..count {
        let r = run_instance(instance_seed(seed, i as u64));
        for t in tallies.iter_mut() {
            match r.checks.iter().find(|c| c.name == t.name).and_then(|c| c.passed) {
                Some(true) => t.passed += 1,
                Some(false) => t.failed += 1,
                None => t.skipped += 1,
            }
        }
        if let Some(c) = r.checks.iter().find(|c| c.name == INVARIANTS[7] && c.passed == Some(true)) {
            four[usize::from(c.detail == "all false")] += 1;
        }
        if !r.ok() {
            failures.push(r);
        }
    }
    FuzzSummary { seed, count, tallies, four_conditions: four, failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        for s in 0..5 {
            assert_eq!(generate(s).text, generate(s).text);
            assert_eq!(generate(s).adr.labels(), generate(s).adr.labels());
        }
        assert_eq!(run(3, 2), run(3, 2));
    }

    #[test]
    fn presentations_respect_limits() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let t = random_presentation_text(&mut rng);
            assert!(t.matches("arrow ").count() <= MAX_ARROWS);
            if let Ok(p) = parse_presentation(&t, Prime::DEFAULT, DEFAULT_CAP) {
                assert!(p.quiver().num_vertices() <= MAX_VERTICES);
            }
        }
    }

    #[test]
    fn small_run_passes() {
        let s = run(1, 12);
        assert!(s.ok(), "{:#?}", s.failures);
        assert_eq!(run(1, 0).count, 0);
    }
}
