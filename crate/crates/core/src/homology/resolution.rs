use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::exactmath::{Matrix, Subspace};
use crate::quivalg::AlgebraTable;

use super::module::same_algebra;
use super::{HomologyError, Representation};

/// The indecomposable projectives of one algebra with their embeddings
/// `P_v ⊆ A`.
#[derive(Clone, Debug)]
pub(crate) struct ProjectiveSet {
    pub bases: Vec<Matrix>,
    pub modules: Vec<Representation>,
}

impl ProjectiveSet {
    pub fn new(algebra: &Arc<AlgebraTable>) -> Result<Self, HomologyError> {
        let mut bases = Vec::new();
        let mut modules = Vec::new();
        for v in 0..algebra.vertex_count() {
            bases.push(Representation::projective_subspace(algebra, v).basis());
            modules.push(Representation::projective(algebra, v)?);
        }
        Ok(ProjectiveSet { bases, modules })
    }

    pub fn dim(&self, v: usize) -> usize {
        self.modules[v].dim()
    }

    pub fn sum(&self, vertices: &[usize]) -> Representation {
        let parts: Vec<&Representation> = vertices.iter().map(|&v| &self.modules[v]).collect();
        if parts.is_empty() {
            let a = self.modules[0].algebra().clone();
            let field = a.field();
            let acts = vec![Matrix::zeros(field, 0, 0); a.dim()];
            return Representation::from_parts(a, 0, acts);
        }
        Representation::direct_sum(&parts).expect("one algebra")
    }
}

/// A projective cover `P -> M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    /// Vertex of each indecomposable summand of `P`.
    pub vertices: Vec<usize>,
    /// Image of the top of each summand, in coordinates of `M`.
    pub generators: Vec<Matrix>,
    /// The surjection, `dim M x dim P`.
    pub map: Matrix,
    pub cover: Representation,
}

/// Top generators of `M`: vectors in the spaces `M e_v` whose classes form a
/// basis of `M / M J`.
fn top_generators(m: &Representation) -> Vec<(usize, Matrix)> {
    let mut covered = m.radical_subspace();
    let mut out = Vec::new();
    for v in 0..m.algebra().vertex_count() {
        let candidates = m.vertex_projection(v);
        for c in covered.extending_columns(&candidates) {
            let g = candidates.column(c);
            covered = covered.sum(&Subspace::column_span(&g));
            out.push((v, g));
        }
    }
    out
}

/// Matrix of `P_v -> M, x ↦ m x`.
fn evaluation_map(m: &Representation, gen: &Matrix, basis: &Matrix) -> Matrix {
    let images: Vec<Matrix> = m.actions().iter().map(|a| a.mul(gen)).collect();
    let refs: Vec<&Matrix> = images.iter().collect();
    let full = if refs.is_empty() {
        Matrix::zeros(m.field(), m.dim(), 0)
    } else {
        Matrix::hstack(&refs)
    };
    full.mul(basis)
}

fn cover_with(m: &Representation, set: &ProjectiveSet) -> ProjectiveCover {
    let gens = top_generators(m);
    let vertices: Vec<usize> = gens.iter().map(|(v, _)| *v).collect();
    let maps: Vec<Matrix> = gens
        .iter()
        .map(|(v, g)| evaluation_map(m, g, &set.bases[*v]))
        .collect();
    let refs: Vec<&Matrix> = maps.iter().collect();
    let map = if refs.is_empty() {
        Matrix::zeros(m.field(), m.dim(), 0)
    } else {
        Matrix::hstack(&refs)
    };
    ProjectiveCover {
        cover: set.sum(&vertices),
        vertices,
        generators: gens.into_iter().map(|(_, g)| g).collect(),
        map,
    }
}

pub fn projective_cover(m: &Representation) -> Result<ProjectiveCover, HomologyError> {
    if m.is_zero() {
        return Err(HomologyError::ZeroModule);
    }
    Ok(cover_with(m, &ProjectiveSet::new(m.algebra())?))
}

/// A minimal projective resolution, extended on demand.
#[derive(Clone, Debug)]
pub struct Resolution {
    module: Representation,
    set: Arc<ProjectiveSet>,
    /// Vertices of the summands of `P_t`.
    terms: Vec<Vec<usize>>,
    /// `differentials[t][h][g] = a_{g,h} ∈ e_{v(g)} A e_{v(h)}`: the
    /// component in summand `g` of `P_t` of the image of the top of summand
    /// `h` of `P_{t+1}`.
    differentials: Vec<Vec<Vec<Matrix>>>,
    syzygy_dims: Vec<usize>,
    current: Representation,
    /// Embedding of `current` into the last term.
    current_inclusion: Option<Matrix>,
    minimal: bool,
}

impl Resolution {
    pub fn new(m: &Representation) -> Result<Self, HomologyError> {
        let set = Arc::new(ProjectiveSet::new(m.algebra())?);
        Ok(Resolution {
            module: m.clone(),
            set,
            terms: Vec::new(),
            differentials: Vec::new(),
            syzygy_dims: vec![m.dim()],
            current: m.clone(),
            current_inclusion: None,
            minimal: true,
        })
    }

    /// Resolution computed through `P_length` (or until it terminates).
    pub fn with_length(m: &Representation, length: usize) -> Result<Self, HomologyError> {
        let mut r = Resolution::new(m)?;
        r.extend_to(length);
        Ok(r)
    }

    pub fn module(&self) -> &Representation {
        &self.module
    }

    pub fn terms(&self) -> &[Vec<usize>] {
        &self.terms
    }

    /// `dim Ω^t M` for every computed `t`, starting with `dim M`.
    pub fn syzygy_dims(&self) -> &[usize] {
        &self.syzygy_dims
    }

    /// Whether every differential was checked to land in the radical.
    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// True once a zero syzygy has been reached.
    pub fn is_complete(&self) -> bool {
        self.current.is_zero()
    }

    /// Index of the last computed term.
    pub fn computed(&self) -> usize {
        self.terms.len()
    }

    /// Whether `P_t` is known (possibly zero).
    pub fn knows(&self, t: usize) -> bool {
        t < self.terms.len() || self.is_complete()
    }

    pub fn term(&self, t: usize) -> &[usize] {
        self.terms.get(t).map_or(&[], Vec::as_slice)
    }

    pub fn term_dim(&self, t: usize) -> usize {
        self.term(t).iter().map(|&v| self.set.dim(v)).sum()
    }

    /// The last computed syzygy.
    pub fn last_syzygy(&self) -> &Representation {
        &self.current
    }

    pub fn extend_to(&mut self, length: usize) {
        while self.terms.len() <= length && !self.is_complete() {
            self.step();
        }
    }

    fn step(&mut self) {
        let t = self.terms.len();
        let cover = cover_with(&self.current, &self.set);
        if let Some(inclusion) = &self.current_inclusion {
            let prev = &self.terms[t - 1];
            let mut offsets = Vec::with_capacity(prev.len());
            let mut off = 0;
            for &v in prev {
                offsets.push(off);
                off += self.set.dim(v);
            }
            let column: Vec<Vec<Matrix>> = cover
                .generators
                .iter()
                .map(|g| {
                    let image = inclusion.mul(g);
                    prev.iter()
                        .zip(&offsets)
                        .map(|(&v, &o)| {
                            let local = image.block(o, 0, self.set.dim(v), 1);
                            self.set.bases[v].mul(&local)
                        })
                        .collect()
                })
                .collect();
            self.differentials.push(column);
        }
        let kernel = Subspace::column_span(&cover.map.kernel_basis());
        let radical = cover.cover.radical_subspace();
        if !radical.contains_subspace(&kernel) {
            self.minimal = false;
        }
        self.current = cover.cover.submodule_unchecked(&kernel);
        self.current_inclusion = Some(kernel.basis());
        self.syzygy_dims.push(kernel.dim());
        self.terms.push(cover.vertices);
    }

    /// `dim Hom(P_t, N) = Σ_g dim N e_{v(g)}`.
    fn cochain(&self, t: usize, spaces: &[Matrix]) -> usize {
        self.term(t).iter().map(|&v| spaces[v].cols()).sum()
    }

    /// Rank of `Hom(P_t, N) -> Hom(P_{t+1}, N)`.
    fn coboundary_rank(&self, n: &Representation, t: usize, spaces: &[Matrix]) -> usize {
        let Some(column) = self.differentials.get(t) else {
            return 0;
        };
        let source = self.term(t);
        let cols: usize = source.iter().map(|&v| spaces[v].cols()).sum();
        if cols == 0 || column.is_empty() {
            return 0;
        }
        let mut delta = Matrix::zeros(n.field(), column.len() * n.dim(), cols);
        for (h, parts) in column.iter().enumerate() {
            let mut co = 0;
            for (g, &v) in source.iter().enumerate() {
                let w = &spaces[v];
                if w.cols() > 0 && !parts[g].is_zero() {
                    delta.set_block(h * n.dim(), co, &n.act(&parts[g]).mul(w));
                }
                co += w.cols();
            }
        }
        delta.rank()
    }

    /// `dim Ext^s(M, N)` for `s = 0..=t`, the entry at 0 being `dim Hom`.
    /// Requires `P_{t+1}` to be computed.
    pub fn ext_dims(&self, n: &Representation, t: usize) -> Result<ExtTable, HomologyError> {
        if !same_algebra(self.module.algebra(), n.algebra()) {
            return Err(HomologyError::AlgebraMismatch);
        }
        if !self.knows(t + 1) {
            return Err(HomologyError::Precondition(format!(
                "resolution known through P_{} but degree {t} needs P_{}",
                self.terms.len().saturating_sub(1),
                t + 1
            )));
        }
        let spaces: Vec<Matrix> = (0..n.algebra().vertex_count())
            .map(|v| n.vertex_space(v).basis())
            .collect();
        let ranks: Vec<usize> = (0..=t)
            .map(|s| self.coboundary_rank(n, s, &spaces))
            .collect();
        let dims = (0..=t)
            .map(|s| {
                let before = if s == 0 { 0 } else { ranks[s - 1] };
                self.cochain(s, &spaces) - ranks[s] - before
            })
            .collect();
        Ok(ExtTable { dims })
    }

    /// `dim Ext^t(M, N)` for a single `t ≥ 0`.
    pub fn ext(&self, n: &Representation, t: usize) -> Result<usize, HomologyError> {
        if !same_algebra(self.module.algebra(), n.algebra()) {
            return Err(HomologyError::AlgebraMismatch);
        }
        if !self.knows(t + 1) {
            return Err(HomologyError::Precondition(format!(
                "degree {t} needs P_{}",
                t + 1
            )));
        }
        let spaces: Vec<Matrix> = (0..n.algebra().vertex_count())
            .map(|v| n.vertex_space(v).basis())
            .collect();
        let before = if t == 0 {
            0
        } else {
            self.coboundary_rank(n, t - 1, &spaces)
        };
        Ok(self.cochain(t, &spaces) - self.coboundary_rank(n, t, &spaces) - before)
    }

    pub fn report(&self) -> ResolutionReport {
        let labels = self.module.algebra().vertex_labels();
        ResolutionReport {
            terms: self
                .terms
                .iter()
                .map(|t| t.iter().map(|&v| labels[v].clone()).collect())
                .collect(),
            term_dims: (0..self.terms.len()).map(|t| self.term_dim(t)).collect(),
            syzygy_dims: self.syzygy_dims[1..].to_vec(),
            minimal: self.minimal,
            complete: self.is_complete(),
        }
    }
}

/// Serializable summary of a resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionReport {
    /// Vertex multiset of each projective term.
    pub terms: Vec<Vec<String>>,
    pub term_dims: Vec<usize>,
    /// `dim Ω^t M` for `t = 1, 2, ...`.
    pub syzygy_dims: Vec<usize>,
    pub minimal: bool,
    pub complete: bool,
}

/// `dims[s] = dim Ext^s(M, N)`; `dims[0] = dim Hom(M, N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtTable {
    pub dims: Vec<usize>,
}

impl ExtTable {
    pub fn hom(&self) -> usize {
        self.dims[0]
    }

    pub fn degree(&self, t: usize) -> usize {
        self.dims[t]
    }
}

pub fn ext_dims(
    m: &Representation,
    n: &Representation,
    t: usize,
) -> Result<ExtTable, HomologyError> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(HomologyError::AlgebraMismatch);
    }
    Resolution::with_length(m, t + 1)?.ext_dims(n, t)
}

/// `Ω M` as a module.
pub fn syzygy(m: &Representation) -> Result<Representation, HomologyError> {
    let mut r = Resolution::new(m)?;
    r.extend_to(0);
    Ok(r.current)
}

/// `[dim Ω^1 M, ..., dim Ω^t M]`.
pub fn syzygy_dims(m: &Representation, t: usize) -> Result<Vec<usize>, HomologyError> {
    let mut r = Resolution::new(m)?;
    r.extend_to(t.saturating_sub(1));
    let mut dims = r.syzygy_dims[1..].to_vec();
    dims.resize(t, 0);
    Ok(dims)
}

/// Resolutions of modules over one algebra, keyed by their action matrices.
/// Concurrent lookups and inserts are safe; entries are only ever extended.
pub struct ResolutionCache {
    algebra: Arc<AlgebraTable>,
    entries: Mutex<HashMap<Vec<Matrix>, Arc<Resolution>>>,
}

impl ResolutionCache {
    pub fn new(algebra: Arc<AlgebraTable>) -> Self {
        ResolutionCache {
            algebra,
            entries: Mutex::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &Arc<AlgebraTable> {
        &self.algebra
    }

    /// A resolution of `m` known through `P_length`.
    pub fn resolution(
        &self,
        m: &Representation,
        length: usize,
    ) -> Result<Arc<Resolution>, HomologyError> {
        if !same_algebra(&self.algebra, m.algebra()) {
            return Err(HomologyError::AlgebraMismatch);
        }
        let key = m.actions().to_vec();
        let cached = self.entries.lock().expect("cache lock").get(&key).cloned();
        let mut res = match cached {
            Some(r) if r.knows(length) => return Ok(r),
            Some(r) => (*r).clone(),
            None => Resolution::new(m)?,
        };
        res.extend_to(length);
        let res = Arc::new(res);
        let mut entries = self.entries.lock().expect("cache lock");
        let slot = entries.entry(key).or_insert_with(|| res.clone());
        if slot.computed() < res.computed() {
            *slot = res.clone();
        }
        Ok(res)
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
