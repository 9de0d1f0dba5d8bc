//! Based endomorphism algebras `B = End_A(X_1 ⊕ ... ⊕ X_n)` of multiplicity
//! free sums of local modules, and finite-dimensional right B-modules.
//!
//! The basis of `B` is the union of bases of `Hom(X_s, X_t)`; a basis element
//! with source `s` and target `t` lies in `e_t B e_s`, and the product `a·b`
//! is the composition `a ∘ b`. A right B-module `M` has spaces `M_t = M e_t`,
//! and `b ∈ e_t B e_s` acts `M_t -> M_s`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{Matrix, Prime, Span};
use crate::module::{hom_space, Module, Morphism};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BasicError {
    #[error("End({0}) has a residue field larger than the ground field")]
    NonSplitEndomorphism(String),
    #[error("module `{0}` is not local")]
    NotLocal(String),
    #[error("projective resolution did not terminate within {cap} steps")]
    CapExceeded { cap: usize },
    #[error("multiplication table is not associative on ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("malformed multiplication table: {0}")]
    Malformed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub source: usize,
    pub target: usize,
    pub identity: bool,
}

/// Concrete modules and maps behind the basis, when `B` was built from them.
#[derive(Clone, Debug)]
pub struct Realization {
    pub modules: Vec<Module>,
    pub maps: Vec<Morphism>,
}

/// Sparse vector over the basis of `B`.
pub type Coeffs = Vec<(usize, u32)>;

#[derive(Clone, Debug)]
pub struct BasicAlgebra {
    p: Prime,
    labels: Vec<String>,
    elements: Vec<BasisElement>,
    /// `pairs[s][t]`: basis elements with source `s` and target `t`.
    pairs: Vec<Vec<Vec<usize>>>,
    position: Vec<usize>,
    identities: Vec<usize>,
    table: Vec<Coeffs>,
    realization: Option<Arc<Realization>>,
}

impl BasicAlgebra {
    /// Builds an algebra from a multiplication table indexed `a * dim + b`.
    pub fn from_table(p: Prime, labels: Vec<String>, elements: Vec<BasisElement>, table: Vec<Coeffs>) -> Result<Self, BasicError> {
        let n = labels.len();
        let dim = elements.len();
        if table.len() != dim * dim {
            return Err(BasicError::Malformed(format!("expected {} products, found {}", dim * dim, table.len())));
        }
        let mut pairs = vec![vec![Vec::new(); n]; n];
        let mut position = Vec::with_capacity(dim);
        let mut identities = vec![usize::MAX; n];
        for (i, e) in elements.iter().enumerate() {
            if e.source >= n || e.target >= n {
                return Err(BasicError::Malformed(format!("element {i} has an unknown endpoint")));
            }
            if e.identity {
                if e.source != e.target || identities[e.source] != usize::MAX {
                    return Err(BasicError::Malformed(format!("bad identity element {i}")));
                }
                identities[e.source] = i;
            }
            position.push(pairs[e.source][e.target].len());
            pairs[e.source][e.target].push(i);
        }
        if let Some(x) = identities.iter().position(|&i| i == usize::MAX) {
            return Err(BasicError::Malformed(format!("vertex {x} has no identity")));
        }
        Ok(BasicAlgebra { p, labels, elements, pairs, position, identities, table, realization: None })
    }

    /// `End(X_1 ⊕ ... ⊕ X_n)` for pairwise non-isomorphic local modules.
    pub fn from_modules(modules: &[Module]) -> Result<Self, BasicError> {
        let p = modules.first().map_or(Prime::DEFAULT, Module::prime);
        let n = modules.len();
        let mut elements = Vec::new();
        let mut maps = Vec::new();
        let mut spans: Vec<Vec<Span>> = Vec::with_capacity(n);
        for (s, x) in modules.iter().enumerate() {
            if !x.is_local() {
                return Err(BasicError::NotLocal(x.name().to_string()));
            }
            let mut row = Vec::with_capacity(n);
            for (t, y) in modules.iter().enumerate() {
                let basis: Vec<Morphism> = if s == t {
                    let (rad, incl) = x.sub_module(&x.radical(), "rad");
                    let radical: Vec<Morphism> = hom_space(x, &rad).basis.iter().map(|f| incl.compose(f)).collect();
                    if hom_space(x, x).dim() != radical.len() + 1 {
                        return Err(BasicError::NonSplitEndomorphism(x.name().to_string()));
                    }
                    std::iter::once(Morphism::identity(p, x.dims())).chain(radical).collect()
                } else {
                    hom_space(x, y).basis
                };
                let ambient = x.dims().iter().zip(y.dims()).map(|(a, b)| a * b).sum();
                row.push(Span::from_vectors(p, ambient, &basis.iter().map(Morphism::flatten).collect::<Vec<_>>()));
                for (k, f) in basis.into_iter().enumerate() {
                    elements.push(BasisElement { source: s, target: t, identity: s == t && k == 0 });
                    maps.push(f);
                }
            }
            spans.push(row);
        }
        let dim = elements.len();
        let mut table = vec![Vec::new(); dim * dim];
        let mut offsets = vec![vec![0usize; n]; n];
        {
            let mut seen = vec![vec![false; n]; n];
            for (i, e) in elements.iter().enumerate() {
                if !seen[e.source][e.target] {
                    seen[e.source][e.target] = true;
                    offsets[e.source][e.target] = i;
                }
            }
        }
        for a in 0..dim {
            for b in 0..dim {
                let (ea, eb) = (elements[a], elements[b]);
                if ea.source != eb.target {
                    continue;
                }
                let h = maps[a].compose(&maps[b]);
                let coords = spans[eb.source][ea.target].coords(&h.flatten()).expect("composition lies in the Hom space");
                let off = offsets[eb.source][ea.target];
                table[a * dim + b] = coords.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (off + k, c)).collect();
            }
        }
        let labels = modules.iter().map(|m| m.name().to_string()).collect();
        let mut alg = BasicAlgebra::from_table(p, labels, elements, table)?;
        alg.realization = Some(Arc::new(Realization { modules: modules.to_vec(), maps }));
        Ok(alg)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> BasisElement {
        self.elements[i]
    }

    /// Basis elements of `e_t B e_s`, i.e. maps from `s` to `t`.
    pub fn pair(&self, source: usize, target: usize) -> &[usize] {
        &self.pairs[source][target]
    }

    /// Index of a basis element inside its `pair`.
    pub fn position(&self, i: usize) -> usize {
        self.position[i]
    }

    pub fn identity(&self, v: usize) -> usize {
        self.identities[v]
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_deref()
    }

    /// `a · b` for basis elements.
    pub fn mul(&self, a: usize, b: usize) -> &Coeffs {
        &self.table[a * self.dim() + b]
    }

    pub fn table(&self) -> &[Coeffs] {
        &self.table
    }

    /// Radical basis: every non-identity basis element.
    pub fn radical_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.elements[i].identity).collect()
    }

    pub fn hom_dims(&self) -> Vec<Vec<usize>> {
        self.pairs.iter().map(|row| row.iter().map(Vec::len).collect()).collect()
    }

    pub fn opposite(&self) -> BasicAlgebra {
        let dim = self.dim();
        let elements =
            self.elements.iter().map(|e| BasisElement { source: e.target, target: e.source, identity: e.identity }).collect();
        let mut table = vec![Vec::new(); dim * dim];
        for a in 0..dim {
            for b in 0..dim {
                table[a * dim + b] = self.table[b * dim + a].clone();
            }
        }
        BasicAlgebra::from_table(self.p, self.labels.clone(), elements, table).expect("opposite of a valid table")
    }

    /// Exhaustive associativity check on basis triples.
    pub fn check_associative(&self) -> Result<(), BasicError> {
        let p = self.p;
        let dim = self.dim();
        for a in 0..dim {
            for b in 0..dim {
                if self.elements[a].source != self.elements[b].target {
                    continue;
                }
                let ab = self.mul(a, b);
                for c in 0..dim {
                    if self.elements[b].source != self.elements[c].target {
                        continue;
                    }
                    let mut left = vec![0u32; dim];
                    for &(k, x) in ab {
                        for &(l, y) in self.mul(k, c) {
                            left[l] = p.add(left[l], p.mul(x, y));
                        }
                    }
                    let mut right = vec![0u32; dim];
                    for &(k, x) in self.mul(b, c) {
                        for &(l, y) in self.mul(a, k) {
                            right[l] = p.add(right[l], p.mul(x, y));
                        }
                    }
                    if left != right {
                        return Err(BasicError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// Spans of `e_t rad^k e_s` for `k = 1, 2, ...` until zero; entry `k - 1`
    /// is indexed `[s][t]` in local coordinates of the pair.
    pub fn radical_powers(&self) -> Vec<Vec<Vec<Span>>> {
        let n = self.num_vertices();
        let mut current: Vec<Vec<Span>> = (0..n)
            .map(|s| {
                (0..n)
                    .map(|t| {
                        let ids = &self.pairs[s][t];
                        let vs: Vec<Vec<u32>> = ids
                            .iter()
                            .filter(|&&i| !self.elements[i].identity)
                            .map(|&i| unit(ids.len(), self.position[i]))
                            .collect();
                        Span::from_vectors(self.p, ids.len(), &vs)
                    })
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        let bound = self.dim() + 1;
        while current.iter().flatten().any(|s| s.dim() > 0) && out.len() <= bound {
            let next = self.times_radical(&current);
            out.push(current);
            current = next;
        }
        out
    }

    /// `{x · r : x ∈ U, r ∈ rad}` for a family of per-pair subspaces `U`.
    #[allow(clippy::needless_range_loop)]
    fn times_radical(&self, u: &[Vec<Span>]) -> Vec<Vec<Span>> {
        let n = self.num_vertices();
        let p = self.p;
        let mut out: Vec<Vec<Span>> =
            (0..n).map(|s| (0..n).map(|t| Span::new(p, self.pairs[s][t].len())).collect()).collect();
        for w in 0..n {
            for t in 0..n {
                for x in u[w][t].basis() {
                    for s in 0..n {
                        for &r in &self.pairs[s][w] {
                            if self.elements[r].identity {
                                continue;
                            }
                            let mut v = vec![0u32; self.pairs[s][t].len()];
                            for (k, &c) in x.iter().enumerate() {
                                if c == 0 {
                                    continue;
                                }
                                let a = self.pairs[w][t][k];
                                for &(l, d) in self.mul(a, r) {
                                    let pos = self.position[l];
                                    v[pos] = p.add(v[pos], p.mul(c, d));
                                }
                            }
                            out[s][t].insert(&v);
                        }
                    }
                }
            }
        }
        out
    }

    /// Nilpotency index of the radical (`0` for a semisimple algebra).
    pub fn radical_nilpotency(&self) -> usize {
        self.radical_powers().len()
    }

    /// `arrows[t][s] = dim e_t (rad / rad²) e_s`.
    pub fn ext_quiver(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let powers = self.radical_powers();
        let mut arrows = vec![vec![0; n]; n];
        if let Some(rad) = powers.first() {
            for s in 0..n {
                for t in 0..n {
                    let sq = powers.get(1).map_or(0, |r2| r2[s][t].dim());
                    arrows[t][s] = rad[s][t].dim() - sq;
                }
            }
        }
        arrows
    }

    pub fn projective(&self, x: usize) -> RightBModule {
        RightBModule::projective(self, x)
    }

    pub fn simple(&self, x: usize) -> RightBModule {
        RightBModule::simple(self, x)
    }

    /// `E(x) = D(B e_x)`.
    pub fn injective(&self, x: usize) -> RightBModule {
        RightBModule::projective(&self.opposite(), x).dual()
    }

    /// Largest projective dimension of a simple module.
    pub fn global_dimension(&self, cap: usize) -> Result<usize, BasicError> {
        let mut best = 0;
        for x in 0..self.num_vertices() {
            best = best.max(self.simple(x).projective_dimension(self, cap)?);
        }
        Ok(best)
    }
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// A finite-dimensional right module over a [`BasicAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightBModule {
    dims: Vec<usize>,
    /// `acts[b]`: matrix of `b ∈ e_t B e_s`, shape `dims[s] x dims[t]`.
    acts: Vec<Matrix>,
}

/// Per-vertex subspaces of a [`RightBModule`].
#[derive(Clone, Debug)]
pub struct BSubmodule {
    pub spans: Vec<Span>,
}

impl BSubmodule {
    pub fn dims(&self) -> Vec<usize> {
        self.spans.iter().map(Span::dim).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.spans.iter().all(|s| s.dim() == 0)
    }
}

impl RightBModule {
    pub fn new(alg: &BasicAlgebra, dims: Vec<usize>, acts: Vec<Matrix>) -> Result<Self, BasicError> {
        if acts.len() != alg.dim() {
            return Err(BasicError::Malformed("one action matrix per basis element is required".into()));
        }
        for (b, m) in acts.iter().enumerate() {
            let e = alg.element(b);
            if (m.rows(), m.cols()) != (dims[e.source], dims[e.target]) {
                return Err(BasicError::Malformed(format!("action of element {b} has the wrong shape")));
            }
        }
        Ok(RightBModule { dims, acts })
    }

    pub fn projective(alg: &BasicAlgebra, x: usize) -> RightBModule {
        let n = alg.num_vertices();
        let dims: Vec<usize> = (0..n).map(|y| alg.pair(y, x).len()).collect();
        let acts = (0..alg.dim())
            .map(|b| {
                let e = alg.element(b);
                let mut m = Matrix::zeros(alg.prime(), dims[e.source], dims[e.target]);
                for &c in alg.pair(e.target, x) {
                    for &(k, v) in alg.mul(c, b) {
                        m.set(alg.position(k), alg.position(c), v);
                    }
                }
                m
            })
            .collect();
        RightBModule { dims, acts }
    }

    pub fn simple(alg: &BasicAlgebra, x: usize) -> RightBModule {
        let mut dims = vec![0; alg.num_vertices()];
        dims[x] = 1;
        let acts = (0..alg.dim())
            .map(|b| {
                let e = alg.element(b);
                if e.identity && e.source == x {
                    Matrix::identity(alg.prime(), 1)
                } else {
                    Matrix::zeros(alg.prime(), dims[e.source], dims[e.target])
                }
            })
            .collect();
        RightBModule { dims, acts }
    }

    pub fn zero(alg: &BasicAlgebra) -> RightBModule {
        let acts = (0..alg.dim()).map(|_| Matrix::zeros(alg.prime(), 0, 0)).collect();
        RightBModule { dims: vec![0; alg.num_vertices()], acts }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn action(&self, b: usize) -> &Matrix {
        &self.acts[b]
    }

    /// Vector-space dual, a right module over the opposite algebra.
    pub fn dual(&self) -> RightBModule {
        RightBModule { dims: self.dims.clone(), acts: self.acts.iter().map(Matrix::transpose).collect() }
    }

    /// Checks `(m·a)·b = m·(ab)` on all composable basis pairs.
    pub fn check_action(&self, alg: &BasicAlgebra) -> bool {
        let p = alg.prime();
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                let (ea, eb) = (alg.element(a), alg.element(b));
                if ea.source != eb.target {
                    continue;
                }
                let lhs = self.acts[b].mul(&self.acts[a]);
                let mut rhs = Matrix::zeros(p, self.dims[eb.source], self.dims[ea.target]);
                for &(k, c) in alg.mul(a, b) {
                    rhs.add_scaled(&self.acts[k], c);
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    fn empty_sub(&self, p: Prime) -> BSubmodule {
        BSubmodule { spans: self.dims.iter().map(|&d| Span::new(p, d)).collect() }
    }

    /// Closure of the given vectors under the action of `B`.
    pub fn generate(&self, alg: &BasicAlgebra, gens: &[(usize, Vec<u32>)]) -> BSubmodule {
        let mut sub = self.empty_sub(alg.prime());
        let mut queue = Vec::new();
        for (v, x) in gens {
            if sub.spans[*v].insert(x) {
                queue.push((*v, x.clone()));
            }
        }
        while let Some((t, x)) = queue.pop() {
            for s in 0..self.dims.len() {
                for &b in alg.pair(s, t) {
                    if alg.element(b).identity {
                        continue;
                    }
                    let y = self.acts[b].mul_vec(&x);
                    if sub.spans[s].insert(&y) {
                        queue.push((s, y));
                    }
                }
            }
        }
        sub
    }

    /// `M · rad B`.
    pub fn radical(&self, alg: &BasicAlgebra) -> BSubmodule {
        let mut sub = self.empty_sub(alg.prime());
        for b in alg.radical_basis() {
            let s = alg.element(b).source;
            for c in self.acts[b].columns() {
                sub.spans[s].insert(&c);
            }
        }
        sub
    }

    /// Vectors killed by the radical.
    pub fn socle(&self, alg: &BasicAlgebra) -> BSubmodule {
        let p = alg.prime();
        let mut sub = self.empty_sub(p);
        for t in 0..self.dims.len() {
            let mut stacked = Matrix::zeros(p, 0, self.dims[t]);
            for s in 0..self.dims.len() {
                for &b in alg.pair(s, t) {
                    if !alg.element(b).identity {
                        stacked = stacked.vstack(&self.acts[b]);
                    }
                }
            }
            for x in stacked.kernel_basis() {
                sub.spans[t].insert(&x);
            }
        }
        sub
    }

    pub fn top_dims(&self, alg: &BasicAlgebra) -> Vec<usize> {
        self.radical(alg).dims().iter().zip(&self.dims).map(|(r, d)| d - r).collect()
    }

    pub fn quotient(&self, alg: &BasicAlgebra, u: &BSubmodule) -> RightBModule {
        let p = alg.prime();
        let comps: Vec<Vec<usize>> = u.spans.iter().map(Span::complement_indices).collect();
        let dims: Vec<usize> = comps.iter().map(Vec::len).collect();
        let acts = (0..alg.dim())
            .map(|b| {
                let e = alg.element(b);
                let cols: Vec<Vec<u32>> = comps[e.target]
                    .iter()
                    .map(|&i| {
                        let r = u.spans[e.source].reduce(&self.acts[b].column(i));
                        comps[e.source].iter().map(|&j| r[j]).collect()
                    })
                    .collect();
                Matrix::from_columns(p, dims[e.source], &cols)
            })
            .collect();
        RightBModule { dims, acts }
    }

    pub fn sub_module(&self, alg: &BasicAlgebra, u: &BSubmodule) -> RightBModule {
        let p = alg.prime();
        let bases: Vec<Span> = u.spans.iter().map(|s| Span::from_vectors(p, s.ambient(), s.basis())).collect();
        let dims = u.dims();
        let acts = (0..alg.dim())
            .map(|b| {
                let e = alg.element(b);
                let cols: Vec<Vec<u32>> = u.spans[e.target]
                    .basis()
                    .iter()
                    .map(|x| bases[e.source].coords(&self.acts[b].mul_vec(x)).expect("submodule is closed"))
                    .collect();
                Matrix::from_columns(p, dims[e.source], &cols)
            })
            .collect();
        RightBModule { dims, acts }
    }

    /// First syzygy of a minimal projective cover, with the vertices of the
    /// cover's indecomposable summands.
    pub fn syzygy(&self, alg: &BasicAlgebra) -> (RightBModule, Vec<usize>) {
        let p = alg.prime();
        let n = self.dims.len();
        let rad = self.radical(alg);
        let mut gens = Vec::new();
        for t in 0..n {
            for i in rad.spans[t].complement_indices() {
                gens.push((t, unit(self.dims[t], i)));
            }
        }
        let tops: Vec<usize> = gens.iter().map(|(t, _)| *t).collect();
        if gens.is_empty() {
            return (RightBModule::zero(alg), tops);
        }
        let projectives: Vec<RightBModule> = tops.iter().map(|&t| RightBModule::projective(alg, t)).collect();
        let cover = RightBModule::direct_sum(alg, &projectives);
        // cover map at vertex s: generator g and element c ∈ e_{t_g} B e_s
        let mut kernel = cover.empty_sub(p);
        for s in 0..n {
            let mut cols = Vec::new();
            for (t, g) in &gens {
                for &c in alg.pair(s, *t) {
                    cols.push(self.acts[c].mul_vec(g));
                }
            }
            let pi = Matrix::from_columns(p, self.dims[s], &cols);
            for x in pi.kernel_basis() {
                kernel.spans[s].insert(&x);
            }
        }
        (cover.sub_module(alg, &kernel), tops)
    }

    pub fn direct_sum(alg: &BasicAlgebra, parts: &[RightBModule]) -> RightBModule {
        let n = alg.num_vertices();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
        let acts = (0..alg.dim())
            .map(|b| {
                let e = alg.element(b);
                let mut m = Matrix::zeros(alg.prime(), dims[e.source], dims[e.target]);
                let (mut r0, mut c0) = (0, 0);
                for part in parts {
                    let a = &part.acts[b];
                    for r in 0..a.rows() {
                        for c in 0..a.cols() {
                            m.set(r0 + r, c0 + c, a.get(r, c));
                        }
                    }
                    r0 += a.rows();
                    c0 += a.cols();
                }
                m
            })
            .collect();
        RightBModule { dims, acts }
    }

    /// Terms of the minimal projective resolution, as multisets of vertices.
    pub fn minimal_resolution(&self, alg: &BasicAlgebra, cap: usize) -> Result<Vec<Vec<usize>>, BasicError> {
        let mut terms = Vec::new();
        let mut current = self.clone();
        while !current.is_zero() {
            if terms.len() > cap {
                return Err(BasicError::CapExceeded { cap });
            }
            let (next, tops) = current.syzygy(alg);
            terms.push(tops);
            current = next;
        }
        Ok(terms)
    }

    /// Projective dimension (`0` for projective and zero modules).
    pub fn projective_dimension(&self, alg: &BasicAlgebra, cap: usize) -> Result<usize, BasicError> {
        Ok(self.minimal_resolution(alg, cap)?.len().saturating_sub(1))
    }

    pub fn is_projective(&self, alg: &BasicAlgebra) -> bool {
        self.syzygy(alg).0.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adr::AdrModule;
    use crate::presentation::{parse_presentation, DEFAULT_CAP};

    fn adr_of(src: &str) -> AdrModule {
        let a = Arc::new(parse_presentation(src, Prime::DEFAULT, DEFAULT_CAP).unwrap());
        AdrModule::of_algebra(&a).unwrap()
    }

    fn dual_numbers() -> BasicAlgebra {
        let adr = adr_of("quiver\nvertices: 1\narrow x: 1 -> 1\nrelations\nrel: x*x\n");
        BasicAlgebra::from_modules(adr.catalog()).unwrap()
    }

    #[test]
    fn dual_numbers_auslander_algebra() {
        let b = dual_numbers();
        assert_eq!(b.dim(), 5);
        b.check_associative().unwrap();
        let a = b.labels().iter().position(|l| l == "P(1)").unwrap();
        let s = 1 - a;
        assert_eq!(b.projective(a).dim(), 3);
        assert_eq!(b.projective(s).dim(), 2);
        assert_eq!(b.global_dimension(10).unwrap(), 2);
        assert_eq!(b.opposite().global_dimension(10).unwrap(), 2);
        for x in 0..2 {
            assert!(b.projective(x).check_action(&b));
            assert_eq!(b.projective(x).projective_dimension(&b, 5).unwrap(), 0);
            assert_eq!(b.simple(x).dim(), 1);
        }
    }

    #[test]
    fn semisimple_algebra() {
        let adr = adr_of("quiver\nvertices: 1 2\n");
        let b = BasicAlgebra::from_modules(adr.catalog()).unwrap();
        assert_eq!(b.dim(), 2);
        assert_eq!(b.radical_nilpotency(), 0);
        assert_eq!(b.global_dimension(2).unwrap(), 0);
        assert!(b.ext_quiver().iter().flatten().all(|&c| c == 0));
    }

    #[test]
    fn opposite_is_involutive() {
        let b = dual_numbers();
        let bb = b.opposite().opposite();
        assert_eq!(bb.table(), b.table());
        assert_eq!(bb.elements(), b.elements());
        let e = b.ext_quiver();
        let eo = b.opposite().ext_quiver();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(e[i][j], eo[j][i]);
            }
        }
    }

    #[test]
    fn duality_and_injectives() {
        let adr = adr_of("quiver\nvertices: 1 2\narrow alpha: 1 -> 1\narrow beta: 1 -> 2\nrelations\nrel: alpha*beta\nrel: alpha*alpha*alpha\n");
        let b = BasicAlgebra::from_modules(adr.catalog()).unwrap();
        b.check_associative().unwrap();
        let op = b.opposite();
        for x in 0..b.num_vertices() {
            let e = b.injective(x);
            assert!(e.check_action(&b));
            let soc = e.socle(&b).dims();
            let mut expected = vec![0; b.num_vertices()];
            expected[x] = 1;
            assert_eq!(soc, expected);
            assert_eq!(e.dual().dual(), e);
            assert_eq!(b.simple(x).dual().dims(), op.simple(x).dims());
        }
    }

    #[test]
    fn syzygies_of_simples() {
        let b = dual_numbers();
        let a = b.labels().iter().position(|l| l == "P(1)").unwrap();
        let s = 1 - a;
        // rad P_A ≅ P_S and rad P_S ≅ S_A
        assert_eq!(b.simple(a).minimal_resolution(&b, 5).unwrap(), vec![vec![a], vec![s]]);
        assert_eq!(b.simple(s).minimal_resolution(&b, 5).unwrap(), vec![vec![s], vec![a], vec![s]]);
        assert!(matches!(b.simple(s).projective_dimension(&b, 1), Err(BasicError::CapExceeded { cap: 1 })));
    }

    #[test]
    fn rejects_malformed_tables() {
        let p = Prime::DEFAULT;
        let e = vec![BasisElement { source: 0, target: 0, identity: false }];
        assert!(matches!(
            BasicAlgebra::from_table(p, vec!["x".into()], e, vec![vec![]]),
            Err(BasicError::Malformed(_))
        ));
    }
}
