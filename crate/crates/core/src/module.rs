//! Finite-dimensional right modules as quiver representations.
//!
//! A module assigns a vector space to each vertex and to each arrow
//! `a: i -> j` a matrix of shape `dims[j] x dims[i]` (column convention).
//! Elements of a module are per-vertex coordinate vectors.

use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::linalg::{Matrix, Prime, Span};
use crate::presentation::{Element, Path, Presentation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("wrong number of arrow matrices: expected {expected}, found {found}")]
    ArrowCount { expected: usize, found: usize },
    #[error("matrix for arrow `{arrow}` is {found:?}, expected {expected:?}")]
    ShapeMismatch { arrow: String, expected: (usize, usize), found: (usize, usize) },
    #[error("module `{module}` violates relation {index}")]
    RelationViolated { module: String, index: usize },
    #[error("subspace is not closed under arrow `{0}`")]
    NotASubmodule(String),
    #[error("module `{0}` is not local (its top is not simple)")]
    NotLocal(String),
    #[error("module is not in the additive closure of the catalog; remainder has dimension vector {remainder:?}")]
    NotInAdd { remainder: Vec<usize> },
    #[error("generator `{0}` is not an element of e_v A for the chosen vertex")]
    BadGenerator(String),
}

/// Per-vertex coordinate vectors.
pub type ModVec = Vec<Vec<u32>>;

#[derive(Clone, Debug)]
struct Cover {
    /// Top generators: vertex and vector in the space at that vertex.
    gens: Vec<(usize, Vec<u32>)>,
    /// Columns of the cover at each vertex: (generator, basis path index).
    cols: Vec<Vec<(usize, usize)>>,
    kernel: Vec<Vec<Vec<u32>>>,
    /// Right inverse of the cover map at each vertex.
    section: Vec<Matrix>,
}

#[derive(Clone)]
pub struct Module {
    pres: Arc<Presentation>,
    name: String,
    dims: Vec<usize>,
    actions: Vec<Matrix>,
    path_actions: OnceLock<Arc<Vec<Matrix>>>,
    cover: OnceLock<Arc<Cover>>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Module").field("name", &self.name).field("dims", &self.dims).finish()
    }
}

/// An A-linear map given by one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub maps: Vec<Matrix>,
}

impl Morphism {
    pub fn zero(p: Prime, source: &[usize], target: &[usize]) -> Self {
        Morphism { maps: source.iter().zip(target).map(|(&s, &t)| Matrix::zeros(p, t, s)).collect() }
    }

    pub fn identity(p: Prime, dims: &[usize]) -> Self {
        Morphism { maps: dims.iter().map(|&d| Matrix::identity(p, d)).collect() }
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &Morphism) -> Morphism {
        Morphism { maps: self.maps.iter().zip(&f.maps).map(|(g, f)| g.mul(f)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.maps.iter().all(|m| m.rows() == m.cols() && (m.rows() == 0 || m.is_invertible()))
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn flatten(&self) -> Vec<u32> {
        self.maps.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    pub fn add_scaled(&mut self, other: &Morphism, c: u32) {
        for (a, b) in self.maps.iter_mut().zip(&other.maps) {
            a.add_scaled(b, c);
        }
    }

    pub fn apply(&self, v: &ModVec) -> ModVec {
        self.maps.iter().zip(v).map(|(m, x)| m.mul_vec(x)).collect()
    }
}

/// A basis of `Hom_A(X, Y)`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Vec<Morphism>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Span of the flattened basis, for membership and coordinate queries.
    pub fn span(&self, p: Prime, ambient: usize) -> Span {
        Span::from_vectors(p, ambient, &self.basis.iter().map(Morphism::flatten).collect::<Vec<_>>())
    }
}

/// A submodule, stored as an echelon basis at each vertex.
#[derive(Clone, Debug)]
pub struct Submodule {
    spans: Vec<Span>,
}

impl Submodule {
    pub fn dims(&self) -> Vec<usize> {
        self.spans.iter().map(Span::dim).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.spans.iter().all(|s| s.dim() == 0)
    }

    pub fn basis(&self, v: usize) -> &[Vec<u32>] {
        self.spans[v].basis()
    }

    pub fn contains(&self, v: usize, x: &[u32]) -> bool {
        self.spans[v].contains(x)
    }

    pub fn span(&self, v: usize) -> &Span {
        &self.spans[v]
    }

    /// `self + other`; the sum of submodules is again a submodule.
    pub fn sum(&self, other: &Submodule) -> Submodule {
        let mut out = self.clone();
        for (s, t) in out.spans.iter_mut().zip(&other.spans) {
            for v in t.basis() {
                s.insert(v);
            }
        }
        out
    }
}

/// Position of each basis path among basis paths with the same endpoints.
fn local_positions(pres: &Presentation) -> Vec<usize> {
    let n = pres.quiver().num_vertices();
    let mut count = vec![vec![0usize; n]; n];
    pres.basis()
        .iter()
        .map(|q| {
            let e = pres.quiver().end(q);
            let c = &mut count[q.start][e];
            *c += 1;
            *c - 1
        })
        .collect()
}

impl Module {
    /// Builds a module from arrow matrices, checking shapes and relations.
    pub fn new(pres: Arc<Presentation>, name: impl Into<String>, dims: Vec<usize>, actions: Vec<Matrix>) -> Result<Self, ModuleError> {
        let name = name.into();
        let q = pres.quiver();
        if actions.len() != q.arrows().len() {
            return Err(ModuleError::ArrowCount { expected: q.arrows().len(), found: actions.len() });
        }
        for (a, m) in q.arrows().iter().zip(&actions) {
            let expected = (dims[a.target], dims[a.source]);
            if (m.rows(), m.cols()) != expected {
                return Err(ModuleError::ShapeMismatch { arrow: a.label.clone(), expected, found: (m.rows(), m.cols()) });
            }
        }
        let module = Module::unchecked(pres, name, dims, actions);
        for (index, rel) in module.pres.relations().iter().enumerate() {
            if !module.element_action(rel).is_zero() {
                return Err(ModuleError::RelationViolated { module: module.name.clone(), index });
            }
        }
        Ok(module)
    }

    fn unchecked(pres: Arc<Presentation>, name: String, dims: Vec<usize>, actions: Vec<Matrix>) -> Self {
        Module { pres, name, dims, actions, path_actions: OnceLock::new(), cover: OnceLock::new() }
    }

    /// The indecomposable projective `P(v) = e_v A`.
    pub fn projective(pres: &Arc<Presentation>, v: usize) -> Module {
        let p = pres.prime();
        let q = pres.quiver();
        let n = q.num_vertices();
        let pos = local_positions(pres);
        let mut dims = vec![0; n];
        for path in pres.paths_from(v) {
            dims[q.end(path)] += 1;
        }
        let mut actions: Vec<Matrix> =
            q.arrows().iter().map(|a| Matrix::zeros(p, dims[a.target], dims[a.source])).collect();
        for (bi, path) in pres.basis().iter().enumerate() {
            if path.start != v {
                continue;
            }
            let end = q.end(path);
            for (ai, a) in q.arrows().iter().enumerate() {
                if a.source != end {
                    continue;
                }
                for (t, c) in pres.right_multiply_arrow(path, ai).terms() {
                    let ti = pres.basis_position(t).expect("normal form uses basis paths");
                    actions[ai].set(pos[ti], pos[bi], c);
                }
            }
        }
        let name = format!("P({})", q.vertices()[v]);
        Module::unchecked(pres.clone(), name, dims, actions)
    }

    pub fn simple(pres: &Arc<Presentation>, v: usize) -> Module {
        let p = pres.prime();
        let q = pres.quiver();
        let mut dims = vec![0; q.num_vertices()];
        dims[v] = 1;
        let actions = q.arrows().iter().map(|a| Matrix::zeros(p, dims[a.target], dims[a.source])).collect();
        Module::unchecked(pres.clone(), format!("S({})", q.vertices()[v]), dims, actions)
    }

    pub fn zero(pres: &Arc<Presentation>) -> Module {
        let p = pres.prime();
        let q = pres.quiver();
        let actions = q.arrows().iter().map(|_| Matrix::zeros(p, 0, 0)).collect();
        Module::unchecked(pres.clone(), "0".into(), vec![0; q.num_vertices()], actions)
    }

    /// Coordinates in `P(v)` of an element of `e_v A`.
    pub fn projective_vector(pres: &Presentation, v: usize, e: &Element) -> Result<ModVec, ModuleError> {
        let q = pres.quiver();
        let pos = local_positions(pres);
        let mut dims = vec![0; q.num_vertices()];
        for path in pres.paths_from(v) {
            dims[q.end(path)] += 1;
        }
        let mut out: ModVec = dims.iter().map(|&d| vec![0; d]).collect();
        for (path, c) in pres.normal_form(e).terms() {
            if path.start != v {
                return Err(ModuleError::BadGenerator(pres.display_element(e)));
            }
            let bi = pres.basis_position(path).unwrap();
            out[q.end(path)][pos[bi]] = c;
        }
        Ok(out)
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn prime(&self) -> Prime {
        self.pres.prime()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
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

    pub fn action(&self, arrow: usize) -> &Matrix {
        &self.actions[arrow]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    fn raw_path_action(&self, path: &Path) -> Matrix {
        let mut m = Matrix::identity(self.prime(), self.dims[path.start]);
        for &a in &path.arrows {
            m = self.actions[a].mul(&m);
        }
        m
    }

    /// Action of each basis path of `A`, indexed like `Presentation::basis`.
    pub fn path_actions(&self) -> &[Matrix] {
        self.path_actions.get_or_init(|| {
            let basis = self.pres.basis();
            let mut out: Vec<Matrix> = Vec::with_capacity(basis.len());
            for path in basis {
                let m = match path.arrows.split_last() {
                    None => Matrix::identity(self.prime(), self.dims[path.start]),
                    Some((&last, rest)) => {
                        let prefix = Path { start: path.start, arrows: rest.to_vec() };
                        let pi = self.pres.basis_position(&prefix).expect("prefixes of irreducible paths are irreducible");
                        self.actions[last].mul(&out[pi])
                    }
                };
                out.push(m);
            }
            Arc::new(out)
        })
    }

    /// Linear map induced by an element of `A` whose terms share endpoints.
    /// Returns the zero 0x0 matrix for the zero element.
    pub fn element_action(&self, e: &Element) -> Matrix {
        let p = self.prime();
        let mut acc: Option<Matrix> = None;
        for (path, c) in e.terms() {
            let m = self.raw_path_action(path).scale(c);
            match &mut acc {
                Some(a) => a.add_scaled(&m, 1),
                None => acc = Some(m),
            }
        }
        acc.unwrap_or_else(|| Matrix::zeros(p, 0, 0))
    }

    /// Applies arrow `a` to a vector at its source.
    pub fn act(&self, arrow: usize, v: &[u32]) -> Vec<u32> {
        self.actions[arrow].mul_vec(v)
    }

    fn empty_sub(&self) -> Submodule {
        Submodule { spans: self.dims.iter().map(|&d| Span::new(self.prime(), d)).collect() }
    }

    pub fn whole(&self) -> Submodule {
        let mut s = self.empty_sub();
        for (v, &d) in self.dims.iter().enumerate() {
            for i in 0..d {
                let mut e = vec![0; d];
                e[i] = 1;
                s.spans[v].insert(&e);
            }
        }
        s
    }

    /// Closes a set of vectors (vertex, vector) under all arrow actions.
    pub fn generate(&self, gens: &[(usize, Vec<u32>)]) -> Submodule {
        let mut sub = self.empty_sub();
        let mut queue: Vec<(usize, Vec<u32>)> = Vec::new();
        for (v, x) in gens {
            if sub.spans[*v].insert(x) {
                queue.push((*v, x.clone()));
            }
        }
        let arrows = self.pres.quiver().arrows();
        while let Some((v, x)) = queue.pop() {
            for (ai, a) in arrows.iter().enumerate() {
                if a.source != v {
                    continue;
                }
                let y = self.act(ai, &x);
                if sub.spans[a.target].insert(&y) {
                    queue.push((a.target, y));
                }
            }
        }
        sub
    }

    /// Submodule generated by an element given at every vertex.
    pub fn generate_from(&self, x: &ModVec) -> Submodule {
        let gens: Vec<(usize, Vec<u32>)> = x.iter().cloned().enumerate().filter(|(_, v)| v.iter().any(|&c| c != 0)).collect();
        self.generate(&gens)
    }

    /// Checks that the given per-vertex spaces form a submodule.
    pub fn submodule(&self, spaces: &[Vec<Vec<u32>>]) -> Result<Submodule, ModuleError> {
        let mut sub = self.empty_sub();
        for (v, vs) in spaces.iter().enumerate() {
            for x in vs {
                sub.spans[v].insert(x);
            }
        }
        for (ai, a) in self.pres.quiver().arrows().iter().enumerate() {
            for x in sub.spans[a.source].basis() {
                if !sub.spans[a.target].contains(&self.act(ai, x)) {
                    return Err(ModuleError::NotASubmodule(a.label.clone()));
                }
            }
        }
        Ok(sub)
    }

    /// `U J`, the image of all arrow actions on a submodule `U`.
    pub fn times_radical(&self, u: &Submodule) -> Submodule {
        let mut gens = Vec::new();
        for (ai, a) in self.pres.quiver().arrows().iter().enumerate() {
            for x in u.spans[a.source].basis() {
                gens.push((a.target, self.act(ai, x)));
            }
        }
        let mut sub = self.empty_sub();
        for (v, x) in gens {
            sub.spans[v].insert(&x);
        }
        sub
    }

    pub fn radical(&self) -> Submodule {
        self.times_radical(&self.whole())
    }

    /// `M J^k`.
    pub fn radical_power(&self, k: usize) -> Submodule {
        let mut s = self.whole();
        for _ in 0..k {
            if s.is_zero() {
                break;
            }
            s = self.times_radical(&s);
        }
        s
    }

    pub fn loewy_length(&self) -> usize {
        let mut s = self.whole();
        let mut k = 0;
        while !s.is_zero() {
            s = self.times_radical(&s);
            k += 1;
        }
        k
    }

    /// Vectors annihilated by every arrow.
    pub fn socle(&self) -> Submodule {
        let p = self.prime();
        let arrows = self.pres.quiver().arrows();
        let mut sub = self.empty_sub();
        for (v, &d) in self.dims.iter().enumerate() {
            let mut stacked = Matrix::zeros(p, 0, d);
            for (ai, a) in arrows.iter().enumerate() {
                if a.source == v {
                    stacked = stacked.vstack(&self.actions[ai]);
                }
            }
            for x in stacked.kernel_basis() {
                sub.spans[v].insert(&x);
            }
        }
        sub
    }

    /// Quotient `M/U` together with the projection.
    pub fn quotient(&self, u: &Submodule, name: impl Into<String>) -> (Module, Morphism) {
        let p = self.prime();
        let comps: Vec<Vec<usize>> = u.spans.iter().map(Span::complement_indices).collect();
        let dims: Vec<usize> = comps.iter().map(Vec::len).collect();
        let project = |v: usize, x: &[u32]| -> Vec<u32> {
            let r = u.spans[v].reduce(x);
            comps[v].iter().map(|&i| r[i]).collect()
        };
        let mut actions = Vec::new();
        for (ai, a) in self.pres.quiver().arrows().iter().enumerate() {
            let cols: Vec<Vec<u32>> = comps[a.source]
                .iter()
                .map(|&i| project(a.target, &self.actions[ai].column(i)))
                .collect();
            actions.push(Matrix::from_columns(p, dims[a.target], &cols));
        }
        let proj = Morphism {
            maps: (0..self.dims.len())
                .map(|v| {
                    let cols: Vec<Vec<u32>> = (0..self.dims[v])
                        .map(|i| {
                            let mut e = vec![0; self.dims[v]];
                            e[i] = 1;
                            project(v, &e)
                        })
                        .collect();
                    Matrix::from_columns(p, dims[v], &cols)
                })
                .collect(),
        };
        (Module::unchecked(self.pres.clone(), name.into(), dims, actions), proj)
    }

    /// `U` as a module in its own right, with its inclusion into `M`.
    pub fn sub_module(&self, u: &Submodule, name: impl Into<String>) -> (Module, Morphism) {
        let p = self.prime();
        let dims = u.dims();
        // coordinates are taken against the echelon basis itself
        let bases: Vec<Span> =
            u.spans.iter().map(|s| Span::from_vectors(p, s.ambient(), s.basis())).collect();
        let mut actions = Vec::new();
        for (ai, a) in self.pres.quiver().arrows().iter().enumerate() {
            let cols: Vec<Vec<u32>> = u.spans[a.source]
                .basis()
                .iter()
                .map(|x| bases[a.target].coords(&self.act(ai, x)).expect("submodule is closed"))
                .collect();
            actions.push(Matrix::from_columns(p, dims[a.target], &cols));
        }
        let incl = Morphism {
            maps: (0..self.dims.len())
                .map(|v| Matrix::from_columns(p, self.dims[v], u.spans[v].basis()))
                .collect(),
        };
        (Module::unchecked(self.pres.clone(), name.into(), dims, actions), incl)
    }

    pub fn top(&self) -> Module {
        self.quotient(&self.radical(), format!("top {}", self.name)).0
    }

    pub fn top_dims(&self) -> Vec<usize> {
        self.radical().dims().iter().zip(&self.dims).map(|(r, d)| d - r).collect()
    }

    /// The vertex of the simple top, if the module is local.
    pub fn local_vertex(&self) -> Option<usize> {
        let t = self.top_dims();
        if t.iter().sum::<usize>() == 1 {
            t.iter().position(|&d| d == 1)
        } else {
            None
        }
    }

    pub fn is_local(&self) -> bool {
        self.local_vertex().is_some()
    }

    pub fn kernel(&self, f: &Morphism) -> Submodule {
        let mut sub = self.empty_sub();
        for (v, m) in f.maps.iter().enumerate() {
            for x in m.kernel_basis() {
                sub.spans[v].insert(&x);
            }
        }
        sub
    }

    /// Image of `f: X -> self` as a submodule of `self`.
    pub fn image(&self, f: &Morphism) -> Submodule {
        let mut sub = self.empty_sub();
        for (v, m) in f.maps.iter().enumerate() {
            for x in m.columns() {
                sub.spans[v].insert(&x);
            }
        }
        sub
    }

    pub fn direct_sum(name: impl Into<String>, parts: &[&Module]) -> Module {
        let first = parts.first().expect("direct sum of at least one module");
        let pres = first.pres.clone();
        let p = pres.prime();
        let n = pres.quiver().num_vertices();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
        let mut actions = Vec::new();
        for (ai, a) in pres.quiver().arrows().iter().enumerate() {
            let mut m = Matrix::zeros(p, dims[a.target], dims[a.source]);
            let (mut r0, mut c0) = (0, 0);
            for part in parts {
                let b = &part.actions[ai];
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        m.set(r0 + r, c0 + c, b.get(r, c));
                    }
                }
                r0 += b.rows();
                c0 += b.cols();
            }
            actions.push(m);
        }
        Module::unchecked(pres, name.into(), dims, actions)
    }

    fn cover(&self) -> Arc<Cover> {
        self.cover
            .get_or_init(|| {
                let p = self.prime();
                let pres = &self.pres;
                let q = pres.quiver();
                let n = q.num_vertices();
                let rad = self.radical();
                let mut gens = Vec::new();
                for v in 0..n {
                    for i in rad.spans[v].complement_indices() {
                        let mut e = vec![0; self.dims[v]];
                        e[i] = 1;
                        gens.push((v, e));
                    }
                }
                let acts = self.path_actions();
                let mut cols = vec![Vec::new(); n];
                let mut vecs: Vec<Vec<Vec<u32>>> = vec![Vec::new(); n];
                for (g, (v, x)) in gens.iter().enumerate() {
                    for (bi, path) in pres.basis().iter().enumerate() {
                        if path.start != *v {
                            continue;
                        }
                        let w = q.end(path);
                        cols[w].push((g, bi));
                        vecs[w].push(acts[bi].mul_vec(x));
                    }
                }
                let mut kernel = Vec::with_capacity(n);
                let mut section = Vec::with_capacity(n);
                for w in 0..n {
                    let pi = Matrix::from_columns(p, self.dims[w], &vecs[w]);
                    kernel.push(pi.kernel_basis());
                    let sec_cols: Vec<Vec<u32>> = (0..self.dims[w])
                        .map(|i| {
                            let mut e = vec![0; self.dims[w]];
                            e[i] = 1;
                            pi.solve(&e).expect("shapes agree").expect("top generators generate")
                        })
                        .collect();
                    section.push(Matrix::from_columns(p, cols[w].len(), &sec_cols));
                }
                Arc::new(Cover { gens, cols, kernel, section })
            })
            .clone()
    }

    /// Number of top generators of each vertex (the multiplicities of the
    /// projective cover).
    pub fn top_generators(&self) -> Vec<(usize, Vec<u32>)> {
        self.cover().gens.clone()
    }
}

/// A basis of `Hom_A(x, y)`, computed from a projective presentation of `x`.
pub fn hom_space(x: &Module, y: &Module) -> HomSpace {
    let p = x.prime();
    let cover = x.cover();
    let n = x.dims.len();
    let yacts = y.path_actions();
    let mut offsets = Vec::with_capacity(cover.gens.len());
    let mut unknowns = 0;
    for (v, _) in &cover.gens {
        offsets.push(unknowns);
        unknowns += y.dims[*v];
    }
    if unknowns == 0 {
        return HomSpace { basis: Vec::new() };
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for w in 0..n {
        let dw = y.dims[w];
        if dw == 0 {
            continue;
        }
        for k in &cover.kernel[w] {
            let mut block = vec![vec![0u32; unknowns]; dw];
            for (idx, &(g, bi)) in cover.cols[w].iter().enumerate() {
                let c = k[idx];
                if c == 0 {
                    continue;
                }
                let ya = &yacts[bi];
                let off = offsets[g];
                for (r, row) in block.iter_mut().enumerate() {
                    for col in 0..ya.cols() {
                        let e = ya.get(r, col);
                        if e != 0 {
                            row[off + col] = p.add(row[off + col], p.mul(c, e));
                        }
                    }
                }
            }
            rows.extend(block);
        }
    }
    let solutions = if rows.is_empty() {
        (0..unknowns)
            .map(|i| {
                let mut e = vec![0; unknowns];
                e[i] = 1;
                e
            })
            .collect()
    } else {
        let mut m = Matrix::zeros(p, rows.len(), unknowns);
        for (r, row) in rows.iter().enumerate() {
            for (c, &e) in row.iter().enumerate() {
                m.set(r, c, e);
            }
        }
        m.kernel_basis()
    };
    let basis = solutions
        .iter()
        .map(|sol| {
            let maps = (0..n)
                .map(|w| {
                    let cols: Vec<Vec<u32>> = cover.cols[w]
                        .iter()
                        .map(|&(g, bi)| {
                            let v = cover.gens[g].0;
                            let yg = &sol[offsets[g]..offsets[g] + y.dims[v]];
                            yacts[bi].mul_vec(yg)
                        })
                        .collect();
                    Matrix::from_columns(p, y.dims[w], &cols).mul(&cover.section[w])
                })
                .collect();
            Morphism { maps }
        })
        .collect();
    HomSpace { basis }
}

/// An isomorphism `x -> y`, assuming `x` has a local endomorphism ring.
pub fn find_isomorphism(x: &Module, y: &Module) -> Option<Morphism> {
    if x.dims != y.dims {
        return None;
    }
    if x.is_zero() {
        return Some(Morphism::identity(x.prime(), &x.dims));
    }
    hom_space(x, y).basis.into_iter().find(Morphism::is_isomorphism)
}

pub fn is_isomorphic(x: &Module, y: &Module) -> bool {
    find_isomorphism(x, y).is_some()
}

/// Non-isomorphisms between two local modules: all of `Hom(x, y)` when
/// `x ≇ y`, and the endomorphisms with image in `xJ` otherwise.
pub fn radical_hom_space(x: &Module, y: &Module) -> Result<HomSpace, ModuleError> {
    for m in [x, y] {
        if !m.is_local() {
            return Err(ModuleError::NotLocal(m.name.clone()));
        }
    }
    let Some(iso) = find_isomorphism(x, y) else {
        return Ok(hom_space(x, y));
    };
    let (rad, incl) = x.sub_module(&x.radical(), "rad");
    let basis = hom_space(x, &rad).basis.iter().map(|f| iso.compose(&incl.compose(f))).collect();
    Ok(HomSpace { basis })
}

/// Splits a copy of the local module `x` off `m`, returning a complement.
pub fn split_local_summand(m: &Module, x: &Module) -> Result<Option<Module>, ModuleError> {
    if !x.is_local() {
        return Err(ModuleError::NotLocal(x.name.clone()));
    }
    if x.dims.iter().zip(&m.dims).any(|(a, b)| a > b) {
        return Ok(None);
    }
    let into = hom_space(x, m);
    if into.dim() == 0 {
        return Ok(None);
    }
    let back = hom_space(m, x);
    for g in &back.basis {
        for f in &into.basis {
            if g.compose(f).is_isomorphism() {
                let (c, _) = m.sub_module(&m.kernel(g), format!("{} - {}", m.name, x.name));
                return Ok(Some(c));
            }
        }
    }
    Ok(None)
}

/// Decomposes `m` into members of a catalog of pairwise non-isomorphic local
/// modules, returning catalog indices with multiplicity.
pub fn decompose_into(m: &Module, catalog: &[Module]) -> Result<Vec<usize>, ModuleError> {
    let mut rest = m.clone();
    let mut out = Vec::new();
    for (ci, x) in catalog.iter().enumerate() {
        while !rest.is_zero() {
            match split_local_summand(&rest, x)? {
                Some(c) => {
                    out.push(ci);
                    rest = c;
                }
                None => break,
            }
        }
    }
    if rest.is_zero() {
        Ok(out)
    } else {
        Err(ModuleError::NotInAdd { remainder: rest.dims.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_presentation, DEFAULT_CAP};

    const EX22: &str = "quiver\nvertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 2 -> 4\n";
    const LOOP: &str = "quiver\nvertices: 1 2\narrow alpha: 1 -> 1\narrow beta: 1 -> 2\nrelations\nrel: alpha*beta\nrel: alpha*alpha*alpha\n";

    fn pres(s: &str, p: u64) -> Arc<Presentation> {
        Arc::new(parse_presentation(s, Prime::new(p).unwrap(), DEFAULT_CAP).unwrap())
    }

    fn quotient_by(m: &Module, v: usize, gen: &str) -> Module {
        let e = m.presentation().parse_element(gen).unwrap();
        let x = Module::projective_vector(m.presentation(), v, &e).unwrap();
        m.quotient(&m.generate_from(&x), "q").0
    }

    /// Counts intertwiners by enumeration over a tiny field and returns the
    /// dimension of the solution space.
    fn brute_hom_dim(x: &Module, y: &Module) -> usize {
        let p = x.prime();
        let shapes: Vec<(usize, usize)> = x.dims().iter().zip(y.dims()).map(|(&s, &t)| (t, s)).collect();
        let unknowns: usize = shapes.iter().map(|(r, c)| r * c).sum();
        assert!(unknowns <= 10, "oracle too large");
        let q = p.get() as usize;
        let total = q.pow(unknowns as u32);
        let mut count = 0usize;
        for code in 0..total {
            let mut c = code;
            let maps: Vec<Matrix> = shapes
                .iter()
                .map(|&(r, k)| {
                    let mut m = Matrix::zeros(p, r, k);
                    for i in 0..r {
                        for j in 0..k {
                            m.set(i, j, (c % q) as u32);
                            c /= q;
                        }
                    }
                    m
                })
                .collect();
            let ok = x.presentation().quiver().arrows().iter().enumerate().all(|(ai, a)| {
                maps[a.target].mul(x.action(ai)) == y.action(ai).mul(&maps[a.source])
            });
            if ok {
                count += 1;
            }
        }
        let mut d = 0;
        let mut c = count;
        while c > 1 {
            c /= q;
            d += 1;
        }
        d
    }

    #[test]
    fn projectives_of_tree_quiver() {
        let a = pres(EX22, 101);
        assert_eq!(Module::projective(&a, 0).dims(), &[1, 1, 1, 1]);
        assert_eq!(Module::projective(&a, 1).dims(), &[0, 1, 1, 1]);
        assert_eq!(Module::simple(&a, 2).dims(), &[0, 0, 1, 0]);
        let total: usize = (0..4).map(|v| Module::projective(&a, v).dim()).sum();
        assert_eq!(total, a.dim());
    }

    #[test]
    fn radical_and_loewy_length() {
        let a = pres(EX22, 101);
        let p1 = Module::projective(&a, 0);
        assert_eq!(p1.radical().dims(), vec![0, 1, 1, 1]);
        assert_eq!(p1.loewy_length(), 3);
        assert_eq!(Module::simple(&a, 0).loewy_length(), 1);
        assert!(Module::simple(&a, 0).radical().is_zero());
        for j in 1..5 {
            let q = p1.quotient(&p1.radical_power(j), "q").0;
            assert_eq!(q.loewy_length(), j.min(3));
        }
        let l = pres(LOOP, 101);
        let lp1 = Module::projective(&l, 0);
        assert_eq!(lp1.dims(), &[3, 1]);
        assert_eq!(lp1.radical().dims(), vec![2, 1]);
        assert_eq!(lp1.loewy_length(), 3);
    }

    #[test]
    fn socle_and_quotient_in_loop_example() {
        let l = pres(LOOP, 101);
        let p1 = Module::projective(&l, 0);
        let soc = p1.socle();
        assert_eq!(soc.dims(), vec![1, 1]);
        let (q, proj) = p1.quotient(&soc, "P(1)/soc P(1)");
        assert_eq!(q.dims(), &[2, 0]);
        assert!(proj.is_surjective());
        let top = p1.top();
        assert_eq!(top.dims(), &[1, 0]);
        assert!(is_isomorphic(&top, &Module::simple(&l, 0)));
        assert_eq!(p1.local_vertex(), Some(0));
        assert!(!Module::direct_sum("s", &[&Module::simple(&l, 0), &Module::simple(&l, 1)]).is_local());
    }

    #[test]
    fn yoneda_dimensions() {
        for src in [EX22, LOOP] {
            let a = pres(src, 101);
            let n = a.quiver().num_vertices();
            let mods: Vec<Module> = (0..n).flat_map(|v| [Module::projective(&a, v), Module::simple(&a, v)]).collect();
            for m in &mods {
                for v in 0..n {
                    assert_eq!(hom_space(&Module::projective(&a, v), m).dim(), m.dims()[v]);
                }
            }
        }
    }

    #[test]
    fn hom_dimensions_match_enumeration() {
        let a = pres(EX22, 3);
        let p1 = Module::projective(&a, 0);
        let p1s3 = quotient_by(&p1, 0, "a*b");
        let p1s4 = quotient_by(&p1, 0, "a*c");
        assert_eq!(p1s3.dims(), &[1, 1, 0, 1]);
        assert_eq!(p1s4.dims(), &[1, 1, 1, 0]);
        let cases = [(&p1s3, &p1s4), (&p1s4, &p1s3), (&p1, &p1s3), (&p1s3, &p1), (&p1s3, &p1s3)];
        for (x, y) in cases {
            assert_eq!(hom_space(x, y).dim(), brute_hom_dim(x, y), "{:?} -> {:?}", x.dims(), y.dims());
        }
        assert_eq!(hom_space(&p1s3, &p1s4).dim(), 0);
        assert!(!is_isomorphic(&p1s3, &p1s4));

        let l = pres(LOOP, 3);
        let lp1 = Module::projective(&l, 0);
        assert_eq!(brute_hom_dim(&lp1, &lp1), 3);
        assert_eq!(hom_space(&lp1, &lp1).dim(), 3);
    }

    #[test]
    fn hom_basis_elements_intertwine() {
        let l = pres(LOOP, 101);
        let p1 = Module::projective(&l, 0);
        let q = p1.quotient(&p1.socle(), "q").0;
        for (x, y) in [(&p1, &q), (&q, &p1), (&q, &q)] {
            for f in hom_space(x, y).basis {
                for (ai, a) in l.quiver().arrows().iter().enumerate() {
                    assert_eq!(f.maps[a.target].mul(x.action(ai)), y.action(ai).mul(&f.maps[a.source]));
                }
            }
        }
    }

    #[test]
    fn radical_homs() {
        let a = pres(EX22, 101);
        let s1 = Module::simple(&a, 0);
        assert_eq!(radical_hom_space(&s1, &s1).unwrap().dim(), 0);
        let p1 = Module::projective(&a, 0);
        let p1s3 = quotient_by(&p1, 0, "a*b");
        assert_eq!(radical_hom_space(&p1, &p1s3).unwrap().dim(), hom_space(&p1, &p1s3).dim());
        let l = pres(LOOP, 101);
        let lp1 = Module::projective(&l, 0);
        assert_eq!(hom_space(&lp1, &lp1).dim(), 3);
        assert_eq!(radical_hom_space(&lp1, &lp1).unwrap().dim(), 2);
        let two = Module::direct_sum("S1+S2", &[&s1, &Module::simple(&a, 1)]);
        assert!(matches!(radical_hom_space(&two, &s1), Err(ModuleError::NotLocal(_))));
    }

    #[test]
    fn splitting_summands() {
        let a = pres(EX22, 101);
        let s: Vec<Module> = (0..4).map(|v| Module::simple(&a, v)).collect();
        let s12 = Module::direct_sum("S1+S2", &[&s[0], &s[1]]);
        let c = split_local_summand(&s12, &s[0]).unwrap().unwrap();
        assert!(is_isomorphic(&c, &s[1]));
        let p1 = Module::projective(&a, 0);
        let p2 = Module::projective(&a, 1);
        let (j1, _) = p1.sub_module(&p1.radical(), "rad P(1)");
        assert!(is_isomorphic(&j1, &p2));
        let j = Module::direct_sum(
            "J",
            &[&j1, &p2.sub_module(&p2.radical(), "r").0],
        );
        let c = split_local_summand(&j, &p2).unwrap().unwrap();
        assert_eq!(c.dims(), &[0, 0, 1, 1]);
        assert!(split_local_summand(&s[1], &p1).unwrap().is_none());
        let again = Module::direct_sum("x+c", &[&p2, &c]);
        assert!(split_local_summand(&again, &p2).unwrap().is_some());
    }

    #[test]
    fn decomposing_radical_of_algebra() {
        let a = pres(EX22, 101);
        let mut parts = Vec::new();
        for v in 0..4 {
            let p = Module::projective(&a, v);
            parts.push(p.sub_module(&p.radical(), "r").0);
        }
        let j = Module::direct_sum("J", &parts.iter().collect::<Vec<_>>());
        let mut catalog: Vec<Module> = (0..2).map(|v| Module::projective(&a, v)).collect();
        catalog.extend((0..4).map(|v| Module::simple(&a, v)));
        let mut d = decompose_into(&j, &catalog).unwrap();
        d.sort();
        // P(2), S(3), S(4)
        assert_eq!(d, vec![1, 4, 5]);
        assert_eq!(decompose_into(&Module::zero(&a), &catalog).unwrap(), Vec::<usize>::new());

        let k = pres("quiver\nvertices: 1\narrow x: 1 -> 1\nrelations\nrel: x*x*x\n", 101);
        let p = Module::projective(&k, 0);
        let cat: Vec<Module> = (1..=3).rev().map(|j| p.quotient(&p.radical_power(j), "q").0).collect();
        let (rad, _) = p.sub_module(&p.radical(), "J");
        assert_eq!(decompose_into(&rad, &cat).unwrap(), vec![1]);
        let s = Module::simple(&k, 0);
        assert!(matches!(
            decompose_into(&Module::direct_sum("x", &[&s, &s, &s]), &cat[..1]),
            Err(ModuleError::NotInAdd { .. })
        ));
    }

    #[test]
    fn relations_are_checked() {
        let l = pres(LOOP, 101);
        let p = l.prime();
        let one = Matrix::identity(p, 1);
        let err = Module::new(l.clone(), "bad", vec![1, 1], vec![Matrix::zeros(p, 1, 1), one.clone()]);
        assert!(err.is_ok());
        let err = Module::new(l.clone(), "bad", vec![1, 1], vec![one.clone(), one.clone()]);
        assert!(matches!(err, Err(ModuleError::RelationViolated { index: 0, .. })));
        let err = Module::new(l, "bad", vec![1, 1], vec![one]);
        assert!(matches!(err, Err(ModuleError::ArrowCount { .. })));
    }

    #[test]
    fn submodule_closure_check() {
        let a = pres(EX22, 101);
        let p1 = Module::projective(&a, 0);
        assert!(matches!(
            p1.submodule(&[vec![], vec![vec![1]], vec![], vec![]]),
            Err(ModuleError::NotASubmodule(_))
        ));
        assert!(p1.submodule(&[vec![], vec![], vec![vec![1]], vec![]]).is_ok());
    }
}
