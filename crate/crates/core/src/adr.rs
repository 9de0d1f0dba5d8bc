//! The basic module Ã of a semilocal module, its radical-layer
//! stratification, and the induced chain of subcategories of add Ã.

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::linalg::Span;
use crate::module::{decompose_into, hom_space, is_isomorphic, radical_hom_space, Module, ModuleError, Morphism};
use crate::presentation::Presentation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdrError {
    #[error("no local modules given")]
    EmptyInput,
    #[error("module `{0}` is not local")]
    NotLocal(String),
    #[error("stratification made no progress in degree {0}")]
    NonTerminatingLayer(usize),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// A semilocal module `M`, given by its local summands, together with the
/// catalog `F` of indecomposable summands of Ã.
#[derive(Clone, Debug)]
pub struct AdrModule {
    pres: Arc<Presentation>,
    locals: Vec<Module>,
    catalog: Vec<Module>,
    loewy: usize,
    surjective: OnceLock<Vec<Vec<bool>>>,
}

impl AdrModule {
    pub fn new(pres: Arc<Presentation>, locals: Vec<Module>) -> Result<Self, AdrError> {
        if locals.is_empty() {
            return Err(AdrError::EmptyInput);
        }
        for x in &locals {
            if !x.is_local() {
                return Err(AdrError::NotLocal(x.name().to_string()));
            }
        }
        let lls: Vec<usize> = locals.iter().map(Module::loewy_length).collect();
        let loewy = *lls.iter().max().unwrap();
        let mut candidates: Vec<(usize, usize, Module)> = Vec::new();
        for (idx, x) in locals.iter().enumerate() {
            for k in 1..=lls[idx] {
                let q = if k == lls[idx] { x.clone() } else { x.quotient(&x.radical_power(k), "").0 };
                candidates.push((k, idx, q));
            }
        }
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut catalog: Vec<Module> = Vec::new();
        for (k, idx, q) in candidates {
            if catalog.iter().any(|c| c.dims() == q.dims() && is_isomorphic(c, &q)) {
                continue;
            }
            let label = catalog_label(&pres, &locals[idx], lls[idx], k, &q);
            catalog.push(q.with_name(label));
        }
        Ok(AdrModule { pres, locals, catalog, loewy, surjective: OnceLock::new() })
    }

    /// The ADR input `M = A`, i.e. all indecomposable projectives.
    pub fn of_algebra(pres: &Arc<Presentation>) -> Result<Self, AdrError> {
        let locals = (0..pres.quiver().num_vertices()).map(|v| Module::projective(pres, v)).collect();
        AdrModule::new(pres.clone(), locals)
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn locals(&self) -> &[Module] {
        &self.locals
    }

    pub fn catalog(&self) -> &[Module] {
        &self.catalog
    }

    pub fn labels(&self) -> Vec<String> {
        self.catalog.iter().map(|m| m.name().to_string()).collect()
    }

    pub fn label(&self, i: usize) -> &str {
        self.catalog[i].name()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.catalog.iter().position(|m| m.name() == label)
    }

    pub fn len(&self) -> usize {
        self.catalog.len()
    }

    pub fn is_empty(&self) -> bool {
        self.catalog.is_empty()
    }

    /// Loewy length of `M`.
    pub fn loewy_length(&self) -> usize {
        self.loewy
    }

    /// `surjective[x][n]`: whether some radical map from member `x` onto
    /// member `n` is surjective.
    pub fn surjective_radical_table(&self) -> &Vec<Vec<bool>> {
        self.surjective.get_or_init(|| {
            let n = self.catalog.len();
            (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| x != y && has_surjective_radical_hom(&self.catalog[x], &self.catalog[y]).unwrap_or(false))
                        .collect()
                })
                .collect()
        })
    }

    /// The sets `F_{i,j}`.
    pub fn stratify(&self) -> Result<StratTable, AdrError> {
        let surj = self.surjective_radical_table();
        let lls: Vec<usize> = self.catalog.iter().map(Module::loewy_length).collect();
        let mut layers = Vec::with_capacity(self.loewy);
        for i in 0..self.loewy {
            let mut remaining: Vec<usize> = (0..self.catalog.len()).filter(|&x| lls[x] == self.loewy - i).collect();
            let mut degree = Vec::new();
            while !remaining.is_empty() {
                let layer: Vec<usize> = remaining
                    .iter()
                    .copied()
                    .filter(|&x| remaining.iter().all(|&n| !surj[x][n]))
                    .collect();
                if layer.is_empty() {
                    return Err(AdrError::NonTerminatingLayer(i));
                }
                remaining.retain(|x| !layer.contains(x));
                degree.push(layer);
            }
            layers.push(degree);
        }
        Ok(StratTable { layers })
    }

    pub fn adr_chain(&self) -> Result<Chain, AdrError> {
        Ok(Chain::from_layers(self.catalog.len(), self.stratify()?.ordered_layers()))
    }
}

fn catalog_label(pres: &Arc<Presentation>, x: &Module, ll: usize, k: usize, q: &Module) -> String {
    if k == ll {
        return x.name().to_string();
    }
    let v = q.local_vertex().expect("quotients of local modules are local");
    let vl = &pres.quiver().vertices()[v];
    if k == 1 {
        return format!("S({vl})");
    }
    let p = Module::projective(pres, v);
    let pk = p.quotient(&p.radical_power(k), "").0;
    if is_isomorphic(&pk, q) {
        if k >= p.loewy_length() {
            format!("P({vl})")
        } else {
            format!("P({vl})/P({vl})J^{k}")
        }
    } else {
        format!("{}/J^{k}", x.name())
    }
}

/// The partition of the catalog into `F_{i,j}`; `layers[i][j - 1]` holds
/// `F_{i,j}` as catalog indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratTable {
    pub layers: Vec<Vec<Vec<usize>>>,
}

impl StratTable {
    pub fn n(&self, i: usize) -> usize {
        self.layers[i].len()
    }

    pub fn n_m(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    /// Layers in ADR order: `F_{0,1}, ..., F_{0,n_0}, F_{1,1}, ...`.
    pub fn ordered_layers(&self) -> Vec<Vec<usize>> {
        self.layers.iter().flatten().cloned().collect()
    }

    /// Blocks of the length order: `F_0, F_1, ...`.
    pub fn length_blocks(&self) -> Vec<Vec<usize>> {
        self.layers.iter().map(|d| d.iter().flatten().copied().collect()).collect()
    }
}

/// A strictly decreasing chain `C_0 ⊃ C_1 ⊃ ... ⊃ C_n = 0` of subcategories
/// of add Ã, each given by its indecomposables (catalog indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub subcategories: Vec<Vec<usize>>,
}

impl Chain {
    /// Removes one layer per step, starting from the whole catalog.
    pub fn from_layers(size: usize, layers: Vec<Vec<usize>>) -> Chain {
        let mut current: Vec<usize> = (0..size).collect();
        let mut subcategories = vec![current.clone()];
        for layer in layers {
            current.retain(|x| !layer.contains(x));
            subcategories.push(current.clone());
        }
        Chain { subcategories }
    }

    pub fn len(&self) -> usize {
        self.subcategories.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Indecomposables removed at step `i` (1-based), i.e. `C_{i-1} \ C_i`.
    pub fn removed(&self, i: usize) -> Vec<usize> {
        let next = &self.subcategories[i];
        self.subcategories[i - 1].iter().copied().filter(|x| !next.contains(x)).collect()
    }

    /// The removed layers, first-removed first.
    pub fn layers(&self) -> Vec<Vec<usize>> {
        (1..=self.len()).map(|i| self.removed(i)).collect()
    }

    /// Whether the chain is strictly decreasing and ends at zero.
    pub fn is_well_formed(&self) -> bool {
        self.subcategories.last().is_some_and(Vec::is_empty)
            && self.subcategories.windows(2).all(|w| w[1].len() < w[0].len() && w[1].iter().all(|x| w[0].contains(x)))
    }
}

/// Whether some non-isomorphism from local `x` onto local `n` is surjective.
pub fn has_surjective_radical_hom(x: &Module, n: &Module) -> Result<bool, ModuleError> {
    let rad = radical_hom_space(x, n)?;
    let (_, top) = n.quotient(&n.radical(), "top");
    Ok(rad.basis.iter().any(|f| !top.compose(f).is_zero()))
}

/// Checks that `f: x -> y` is epic and that every map from `x` into a member
/// of `sub` factors through `f`. With `sub` empty this holds only for `x = 0`.
pub fn verify_left_approximation(x: &Module, y: &Module, f: &Morphism, sub: &[&Module]) -> bool {
    if sub.is_empty() {
        return x.is_zero();
    }
    if !f.is_surjective() {
        return false;
    }
    let p = x.prime();
    sub.iter().all(|z| {
        let target = hom_space(x, z);
        let ambient = x.dims().iter().zip(z.dims()).map(|(a, b)| a * b).sum();
        let mut span = Span::new(p, ambient);
        for g in hom_space(y, z).basis {
            span.insert(&g.compose(f).flatten());
        }
        span.dim() == target.dim()
    })
}

/// The monic right approximation `XJ ↪ X` for a local `x`: checks that `XJ`
/// lies in add(`sub`) and that `Hom(w, XJ) -> J(w, X)` is bijective for
/// every `w` in `ambient`.
pub fn verify_right_rejective_step(x: &Module, sub: &[Module], ambient: &[Module]) -> Result<bool, ModuleError> {
    let (xj, _) = x.sub_module(&x.radical(), "XJ");
    if decompose_into(&xj, sub).is_err() {
        return Ok(false);
    }
    for w in ambient {
        // composition with an injection is injective and lands in the radical
        if hom_space(w, &xj).dim() != radical_hom_space(w, x)?.dim() {
            return Ok(false);
        }
    }
    Ok(true)
}
