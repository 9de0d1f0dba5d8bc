//! Verification of rejective chains of add Ã, and search for them.
//!
//! All checks use the cosemisimple rejective criterion: a subcategory `C'` is
//! cosemisimple left rejective in `C` iff every indecomposable `X ∈ C \ C'`
//! has a map `φ: X -> Y` with `Y ∈ C'` such that `- ∘ φ: C(Y, -) -> J_C(X, -)`
//! is bijective on `C`. Such a `φ` is necessarily a minimal left
//! `C'`-approximation, so it suffices to test the minimal one.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::adr::{verify_left_approximation, Chain};
use crate::basic::BasicAlgebra;
use crate::linalg::{Matrix, Span};
use crate::module::{find_isomorphism, Module, Morphism};

pub const DEFAULT_SEARCH_BOUND: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("catalog has {size} members, above the search bound {bound}")]
    SearchBoundExceeded { size: usize, bound: usize },
    #[error("algebra has no module realization; A-total checks need one")]
    NoRealization,
}

/// Why the criterion failed for one target `u`: `count` maps `g ∘ φ` span a
/// space of dimension `rank`, while `J(X, u)` has dimension `radical`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFailure {
    pub target: String,
    pub count: usize,
    pub rank: usize,
    pub radical: usize,
}

/// Outcome of the criterion for one object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub object: String,
    /// Basis elements of `B` forming the components of `φ`.
    pub components: Vec<usize>,
    /// Summands of `Y`, one label per component.
    pub codomain: Vec<String>,
    pub failures: Vec<WitnessFailure>,
}

impl Witness {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Components of the minimal left `sub`-approximation of `x`, as basis
/// elements of `B` with source `x`.
pub fn minimal_left_approximation(alg: &BasicAlgebra, x: usize, sub: &[usize]) -> Vec<usize> {
    let p = alg.prime();
    let mut out = Vec::new();
    for &z in sub {
        let target = alg.pair(x, z);
        let mut factoring = Span::new(p, target.len());
        for &w in sub {
            for &h in alg.pair(x, w) {
                for &r in alg.pair(w, z) {
                    if alg.element(r).identity {
                        continue;
                    }
                    let mut v = vec![0u32; target.len()];
                    for &(k, c) in alg.mul(r, h) {
                        v[alg.position(k)] = p.add(v[alg.position(k)], c);
                    }
                    factoring.insert(&v);
                }
            }
        }
        out.extend(factoring.complement_indices().into_iter().map(|i| target[i]));
    }
    out
}

/// Tests the left criterion for `x ∉ sub` on the objects of `ambient`.
pub fn left_witness(alg: &BasicAlgebra, x: usize, sub: &[usize], ambient: &[usize]) -> Witness {
    let p = alg.prime();
    let components = minimal_left_approximation(alg, x, sub);
    let mut failures = Vec::new();
    for &u in ambient {
        let target = alg.pair(x, u);
        let radical = target.len() - usize::from(x == u);
        let mut span = Span::new(p, target.len());
        let mut count = 0;
        let mut contained = true;
        for &phi in &components {
            let z = alg.element(phi).target;
            for &g in alg.pair(z, u) {
                count += 1;
                let mut v = vec![0u32; target.len()];
                for &(k, c) in alg.mul(g, phi) {
                    if alg.element(k).identity {
                        contained = false;
                    }
                    v[alg.position(k)] = p.add(v[alg.position(k)], c);
                }
                span.insert(&v);
            }
        }
        if !contained || span.dim() != count || count != radical {
            failures.push(WitnessFailure { target: alg.labels()[u].clone(), count, rank: span.dim(), radical });
        }
    }
    Witness {
        object: alg.labels()[x].clone(),
        codomain: components.iter().map(|&c| alg.labels()[alg.element(c).target].clone()).collect(),
        components,
        failures,
    }
}

/// The right criterion, i.e. the left criterion in the opposite algebra.
pub fn right_witness(op: &BasicAlgebra, x: usize, sub: &[usize], ambient: &[usize]) -> Witness {
    left_witness(op, x, sub, ambient)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproximationRecord {
    pub object: String,
    pub target: Vec<String>,
    /// Whether the canonical surjection `X -> X/XJ^l` was used.
    pub canonical: bool,
    pub epic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub step: usize,
    pub removed: Vec<String>,
    pub approximations: Vec<ApproximationRecord>,
    pub left: Vec<Witness>,
    pub right: Vec<Witness>,
}

impl StepReport {
    pub fn ok(&self) -> bool {
        self.approximations.iter().all(|a| a.epic) && self.left.iter().all(Witness::ok) && self.right.iter().all(Witness::ok)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub kind: String,
    pub length: usize,
    pub steps: Vec<StepReport>,
}

impl ChainReport {
    pub fn ok(&self) -> bool {
        self.steps.iter().all(StepReport::ok)
    }

    /// `(step, object, target)` for every failed check.
    pub fn failures(&self) -> Vec<(usize, String, String)> {
        let mut out = Vec::new();
        for s in &self.steps {
            for a in s.approximations.iter().filter(|a| !a.epic) {
                out.push((s.step, a.object.clone(), "epic approximation".to_string()));
            }
            for w in s.left.iter().chain(&s.right) {
                for f in &w.failures {
                    out.push((s.step, w.object.clone(), f.target.clone()));
                }
            }
        }
        out
    }
}

/// Sum of component maps `X -> ⊕ Z` is surjective at every vertex.
fn jointly_surjective(maps: &[&Morphism], targets: &[&Module], source: &Module) -> bool {
    let p = source.prime();
    (0..source.dims().len()).all(|v| {
        let mut stacked = Matrix::zeros(p, 0, source.dims()[v]);
        for f in maps {
            stacked = stacked.vstack(&f.maps[v]);
        }
        let rows: usize = targets.iter().map(|z| z.dims()[v]).sum();
        stacked.rank() == rows
    })
}

/// An epic left approximation of catalog member `x` by `sub` in mod A:
/// first the canonical surjection onto a radical quotient, then the minimal
/// approximation.
fn epic_left_approximation(alg: &BasicAlgebra, x: usize, sub: &[usize]) -> Result<ApproximationRecord, ChainError> {
    let real = alg.realization().ok_or(ChainError::NoRealization)?;
    let labels = alg.labels();
    let mx = &real.modules[x];
    let members: Vec<&Module> = sub.iter().map(|&z| &real.modules[z]).collect();
    for l in (1..mx.loewy_length()).rev() {
        let (q, rho) = mx.quotient(&mx.radical_power(l), "q");
        for &z in sub {
            let mz = &real.modules[z];
            if mz.dims() != q.dims() {
                continue;
            }
            if let Some(iso) = find_isomorphism(&q, mz) {
                let f = iso.compose(&rho);
                if verify_left_approximation(mx, mz, &f, &members) {
                    return Ok(ApproximationRecord { object: labels[x].clone(), target: vec![labels[z].clone()], canonical: true, epic: true });
                }
            }
        }
    }
    let comps = minimal_left_approximation(alg, x, sub);
    let maps: Vec<&Morphism> = comps.iter().map(|&c| &real.maps[c]).collect();
    let targets: Vec<&Module> = comps.iter().map(|&c| &real.modules[alg.element(c).target]).collect();
    let epic = !sub.is_empty() && jointly_surjective(&maps, &targets, mx);
    Ok(ApproximationRecord {
        object: labels[x].clone(),
        target: comps.iter().map(|&c| labels[alg.element(c).target].clone()).collect(),
        canonical: false,
        epic,
    })
}

/// A-total left rejective chain: at step `i`, every object of `C_0` outside
/// `C_i` has an epic (in mod A) left `C_i`-approximation (skipped at the
/// final step, where `C_n = 0`), and `C_i` is cosemisimple left rejective in
/// `C_{i-1}`.
pub fn verify_total_left_chain(alg: &BasicAlgebra, chain: &Chain) -> Result<ChainReport, ChainError> {
    let n = chain.len();
    let all = &chain.subcategories[0];
    let mut steps = Vec::with_capacity(n);
    for i in 1..=n {
        let prev = &chain.subcategories[i - 1];
        let cur = &chain.subcategories[i];
        let mut approximations = Vec::new();
        if i < n {
            for &x in all.iter().filter(|x| !cur.contains(x)) {
                approximations.push(epic_left_approximation(alg, x, cur)?);
            }
        }
        let removed = chain.removed(i);
        let left = removed.iter().map(|&x| left_witness(alg, x, cur, prev)).collect();
        steps.push(StepReport {
            step: i,
            removed: removed.iter().map(|&x| alg.labels()[x].clone()).collect(),
            approximations,
            left,
            right: Vec::new(),
        });
    }
    Ok(ChainReport { kind: "a-total-left".into(), length: n, steps })
}

/// Rejective chain: each `C_i` is cosemisimple left and right rejective in
/// `C_{i-1}`.
pub fn verify_rejective_chain(alg: &BasicAlgebra, chain: &Chain) -> ChainReport {
    let op = alg.opposite();
    let n = chain.len();
    let mut steps = Vec::with_capacity(n);
    for i in 1..=n {
        let prev = &chain.subcategories[i - 1];
        let cur = &chain.subcategories[i];
        let removed = chain.removed(i);
        steps.push(StepReport {
            step: i,
            removed: removed.iter().map(|&x| alg.labels()[x].clone()).collect(),
            approximations: Vec::new(),
            left: removed.iter().map(|&x| left_witness(alg, x, cur, prev)).collect(),
            right: removed.iter().map(|&x| right_witness(&op, x, cur, prev)).collect(),
        });
    }
    ChainReport { kind: "rejective".into(), length: n, steps }
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

struct Search<'a> {
    alg: &'a BasicAlgebra,
    op: BasicAlgebra,
    failed: HashSet<u32>,
    witness: HashMap<(usize, u32, u32), bool>,
}

impl Search<'_> {
    fn passes(&mut self, x: usize, sub: u32, ambient: u32) -> bool {
        if let Some(&r) = self.witness.get(&(x, sub, ambient)) {
            return r;
        }
        let (s, a) = (members(sub), members(ambient));
        let r = left_witness(self.alg, x, &s, &a).ok() && right_witness(&self.op, x, &s, &a).ok();
        self.witness.insert((x, sub, ambient), r);
        r
    }

    fn removal_sets(current: u32) -> Vec<u32> {
        let elems = members(current);
        let mut sets: Vec<Vec<usize>> = Vec::new();
        for bits in 1u32..(1 << elems.len()) {
            sets.push((0..elems.len()).filter(|i| bits & (1 << i) != 0).map(|i| elems[i]).collect());
        }
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        sets.into_iter().map(|s| s.iter().fold(0u32, |m, &i| m | (1 << i))).collect()
    }

    fn run(&mut self, current: u32, layers: &mut Vec<Vec<usize>>) -> bool {
        if current == 0 {
            return true;
        }
        if self.failed.contains(&current) {
            return false;
        }
        for r in Self::removal_sets(current) {
            let rest = current & !r;
            if members(r).into_iter().all(|x| self.passes(x, rest, current)) {
                layers.push(members(r));
                if self.run(rest, layers) {
                    return true;
                }
                layers.pop();
            }
        }
        self.failed.insert(current);
        false
    }
}

/// Depth-first search for a rejective chain of add Ã, trying removal sets by
/// size and then lexicographically. Returns the first chain found.
pub fn find_rejective_chain(alg: &BasicAlgebra, bound: usize) -> Result<Option<Chain>, ChainError> {
    let size = alg.num_vertices();
    if size > bound || size > 31 {
        return Err(ChainError::SearchBoundExceeded { size, bound });
    }
    let mut search = Search { alg, op: alg.opposite(), failed: HashSet::new(), witness: HashMap::new() };
    let mut layers = Vec::new();
    let full = if size == 0 { 0 } else { (1u32 << size) - 1 };
    Ok(search.run(full, &mut layers).then(|| Chain::from_layers(size, layers)))
}
