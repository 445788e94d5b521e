//! Integer-only module theory of connected Nakayama algebras.
//!
//! Vertices are numbered `0..n` with arrows `i -> i+1` (indices mod `n` on a
//! cycle). Paths compose left to right, so the right projective `e_i A` has
//! the basis `w(i,0), ..., w(i,c_i - 1)` where `w(i,t)` starts at `i` and has
//! length `t`. The indecomposable `M(i,k) = e_i A / e_i J^k` has top `S_i`,
//! composition factors `S_i, S_{i+1}, ..., S_{i+k-1}` and socle `S_{i+k-1}`.
//!
//! Every `Hom` and `Ext` space computed here is spanned by path monomials, so
//! dimensions are obtained by counting surviving paths. No field is involved.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NakayamaError {
    #[error("empty Kupisch series")]
    Empty,
    #[error("Kupisch condition c[{next}] >= c[{index}] - 1 fails ({found} < {bound})")]
    Decrease {
        index: usize,
        next: usize,
        found: usize,
        bound: usize,
    },
    #[error("on a cycle every entry must be at least 2 (c[{0}] = {1})")]
    CycleEntry(usize, usize),
    #[error("on a line the last entry must be 1 (found {0})")]
    LineEnd(usize),
    #[error("on a line c[{index}] = {found} exceeds n - i = {bound}")]
    LineBound {
        index: usize,
        found: usize,
        bound: usize,
    },
    #[error("on a line c[{0}] = 1 disconnects the quiver")]
    Disconnected(usize),
    #[error("semisimple algebra (every entry is 1)")]
    Semisimple,
    #[error("module M({vertex},{length}) does not exist")]
    InvalidModule { vertex: usize, length: usize },
    #[error("phi is undefined on projective modules")]
    ProjectiveModule,
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Cycle,
    Line,
}

/// Result of a cutoff-limited search for a possibly infinite invariant.
///
/// `AtLeast(b)` means no witness was found below the cutoff `b`; the true
/// value is `>= b` (possibly infinite).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundedValue {
    Finite(usize),
    AtLeast(usize),
}

impl BoundedValue {
    pub fn finite(&self) -> Option<usize> {
        match *self {
            BoundedValue::Finite(v) => Some(v),
            BoundedValue::AtLeast(_) => None,
        }
    }

    /// Lower bound that is certainly valid.
    pub fn lower_bound(&self) -> usize {
        match *self {
            BoundedValue::Finite(v) | BoundedValue::AtLeast(v) => v,
        }
    }

    /// Minimum of two search results run with the same cutoff.
    pub fn min(self, other: BoundedValue) -> BoundedValue {
        match (self, other) {
            (BoundedValue::Finite(a), BoundedValue::Finite(b)) => BoundedValue::Finite(a.min(b)),
            (BoundedValue::Finite(a), BoundedValue::AtLeast(_))
            | (BoundedValue::AtLeast(_), BoundedValue::Finite(a)) => BoundedValue::Finite(a),
            (BoundedValue::AtLeast(a), BoundedValue::AtLeast(b)) => BoundedValue::AtLeast(a.min(b)),
        }
    }

    /// Maximum; inconclusive searches dominate.
    pub fn max(self, other: BoundedValue) -> BoundedValue {
        match (self, other) {
            (BoundedValue::Finite(a), BoundedValue::Finite(b)) => BoundedValue::Finite(a.max(b)),
            (BoundedValue::AtLeast(a), BoundedValue::Finite(b))
            | (BoundedValue::Finite(b), BoundedValue::AtLeast(a)) => {
                BoundedValue::AtLeast(a.max(b))
            }
            (BoundedValue::AtLeast(a), BoundedValue::AtLeast(b)) => BoundedValue::AtLeast(a.max(b)),
        }
    }
}

impl fmt::Display for BoundedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundedValue::Finite(v) => write!(f, "{v}"),
            BoundedValue::AtLeast(v) => write!(f, ">= {v}"),
        }
    }
}

/// The indecomposable `M(vertex, length) = e_vertex A / e_vertex J^length`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NakModule {
    pub vertex: usize,
    pub length: usize,
}

impl NakModule {
    pub fn new(vertex: usize, length: usize) -> Self {
        NakModule { vertex, length }
    }

    pub fn dim(&self) -> usize {
        self.length
    }
}

impl fmt::Display for NakModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{})", self.vertex, self.length)
    }
}

/// A connected, non-semisimple Nakayama algebra given by its Kupisch series.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NakAlgebra {
    orientation: Orientation,
    kupisch: Vec<usize>,
}

impl<'de> Deserialize<'de> for NakAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            orientation: Orientation,
            kupisch: Vec<usize>,
        }
        let raw = Raw::deserialize(d)?;
        NakAlgebra::validate(raw.orientation, &raw.kupisch).map_err(serde::de::Error::custom)
    }
}

impl NakAlgebra {
    pub fn validate(orientation: Orientation, kupisch: &[usize]) -> Result<Self, NakayamaError> {
        let n = kupisch.len();
        if n == 0 {
            return Err(NakayamaError::Empty);
        }
        match orientation {
            Orientation::Cycle => {
                for (i, &c) in kupisch.iter().enumerate() {
                    if c < 2 {
                        return Err(NakayamaError::CycleEntry(i, c));
                    }
                }
                for i in 0..n {
                    let next = (i + 1) % n;
                    let bound = kupisch[i] - 1;
                    if kupisch[next] < bound {
                        return Err(NakayamaError::Decrease {
                            index: i,
                            next,
                            found: kupisch[next],
                            bound,
                        });
                    }
                }
            }
            Orientation::Line => {
                if kupisch[n - 1] != 1 {
                    return Err(NakayamaError::LineEnd(kupisch[n - 1]));
                }
                for (i, &c) in kupisch.iter().enumerate() {
                    if c == 0 || c > n - i {
                        return Err(NakayamaError::LineBound {
                            index: i,
                            found: c,
                            bound: n - i,
                        });
                    }
                    if i + 1 < n && c == 1 {
                        return Err(NakayamaError::Disconnected(i));
                    }
                }
                for i in 0..n - 1 {
                    if kupisch[i + 1] + 1 < kupisch[i] {
                        return Err(NakayamaError::Decrease {
                            index: i,
                            next: i + 1,
                            found: kupisch[i + 1],
                            bound: kupisch[i] - 1,
                        });
                    }
                }
                if n == 1 {
                    return Err(NakayamaError::Semisimple);
                }
            }
        }
        Ok(NakAlgebra {
            orientation,
            kupisch: kupisch.to_vec(),
        })
    }

    pub fn cycle(kupisch: &[usize]) -> Result<Self, NakayamaError> {
        Self::validate(Orientation::Cycle, kupisch)
    }

    pub fn line(kupisch: &[usize]) -> Result<Self, NakayamaError> {
        Self::validate(Orientation::Line, kupisch)
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn kupisch(&self) -> &[usize] {
        &self.kupisch
    }

    /// Number of simple modules.
    pub fn n(&self) -> usize {
        self.kupisch.len()
    }

    pub fn dim(&self) -> usize {
        self.kupisch.iter().sum()
    }

    pub fn c(&self, i: usize) -> usize {
        self.kupisch[self.norm(i)]
    }

    fn norm(&self, i: usize) -> usize {
        match self.orientation {
            Orientation::Cycle => i % self.n(),
            Orientation::Line => i,
        }
    }

    /// Whether vertex `a` equals vertex `b` after reduction.
    fn same_vertex(&self, a: usize, b: usize) -> bool {
        self.norm(a) == self.norm(b)
    }

    pub fn module(&self, vertex: usize, length: usize) -> Result<NakModule, NakayamaError> {
        if vertex >= self.n() || length == 0 || length > self.kupisch[vertex] {
            return Err(NakayamaError::InvalidModule { vertex, length });
        }
        Ok(NakModule::new(vertex, length))
    }

    /// All indecomposables, ordered by vertex and then length.
    pub fn indecomposables(&self) -> Vec<NakModule> {
        (0..self.n())
            .flat_map(|i| (1..=self.kupisch[i]).map(move |k| NakModule::new(i, k)))
            .collect()
    }

    pub fn simple(&self, vertex: usize) -> NakModule {
        NakModule::new(vertex, 1)
    }

    pub fn projective(&self, vertex: usize) -> NakModule {
        NakModule::new(vertex, self.kupisch[vertex])
    }

    pub fn projectives(&self) -> Vec<NakModule> {
        (0..self.n()).map(|i| self.projective(i)).collect()
    }

    pub fn top(&self, m: NakModule) -> usize {
        m.vertex
    }

    pub fn socle(&self, m: NakModule) -> usize {
        self.norm(m.vertex + m.length - 1)
    }

    pub fn is_projective(&self, m: NakModule) -> bool {
        m.length == self.kupisch[m.vertex]
    }

    /// `Ω(M(i,k)) = M(i+k, c_i - k)`, or `None` when `M` is projective.
    pub fn syzygy(&self, m: NakModule) -> Option<NakModule> {
        let c = self.kupisch[m.vertex];
        (m.length < c).then(|| NakModule::new(self.norm(m.vertex + m.length), c - m.length))
    }

    pub fn syzygy_power(&self, m: NakModule, t: usize) -> Option<NakModule> {
        (0..t).try_fold(m, |x, _| self.syzygy(x))
    }

    /// Dimension of the indecomposable injective with socle `S_a`: the number
    /// of paths ending at `a`.
    pub fn injective_dim(&self, a: usize) -> usize {
        let n = self.n();
        (0..n)
            .map(|i| {
                (0..self.kupisch[i])
                    .filter(|&t| match self.orientation {
                        Orientation::Cycle => (i + t) % n == a,
                        Orientation::Line => i + t == a,
                    })
                    .count()
            })
            .sum()
    }

    /// The injective envelope of `S_a`, `M(a - d(a) + 1, d(a))`.
    pub fn injective_of_socle(&self, a: usize) -> NakModule {
        let d = self.injective_dim(a);
        let n = self.n();
        let start = match self.orientation {
            Orientation::Cycle => (a + n * d - d + 1) % n,
            Orientation::Line => a + 1 - d,
        };
        NakModule::new(start, d)
    }

    pub fn is_injective(&self, m: NakModule) -> bool {
        m.length == self.injective_dim(self.socle(m))
    }

    /// Cokernel of the injective envelope, `None` when `M` is injective.
    pub fn cosyzygy(&self, m: NakModule) -> Option<NakModule> {
        let envelope = self.injective_of_socle(self.socle(m));
        (envelope.length > m.length)
            .then(|| NakModule::new(envelope.vertex, envelope.length - m.length))
    }

    /// The indecomposable summands of `D(A)`, one per socle vertex.
    pub fn dual_regular(&self) -> Vec<NakModule> {
        (0..self.n()).map(|a| self.injective_of_socle(a)).collect()
    }

    /// `dim Hom(M(i,k), M(j,l))`: basis paths `w(j,t)` of `M(j,l) e_i`
    /// annihilated by `e_i J^k`.
    pub fn dim_hom(&self, m: NakModule, n: NakModule) -> usize {
        let (i, k) = (m.vertex, m.length);
        let (j, l) = (n.vertex, n.length);
        (l.saturating_sub(k)..l)
            .filter(|&t| self.same_vertex(j + t, i))
            .count()
    }

    /// `dim Ext^1(X, N)` for `X` non-projective, read off the Hom complex of
    /// the minimal presentation `e_{i+c_i}A -> e_{i+k}A -> e_iA -> X`.
    fn dim_ext1(&self, x: NakModule, n: NakModule) -> usize {
        let (i, k) = (x.vertex, x.length);
        let c = self.kupisch[i];
        let (j, l) = (n.vertex, n.length);
        // Right multiplication by w(i,k) on N e_i: survivors give the rank.
        let rank_in = (0..l)
            .filter(|&t| self.same_vertex(j + t, i) && t + k < l)
            .count();
        // Right multiplication by w(i+k, c-k) on N e_{i+k}: killed paths span the kernel.
        let kernel_out = (0..l)
            .filter(|&t| self.same_vertex(j + t, i + k) && t + (c - k) >= l)
            .count();
        kernel_out - rank_in
    }

    /// `dim Ext^t(M, N)` for `t >= 1`, via `Ext^t(M,N) = Ext^1(Ω^{t-1} M, N)`.
    pub fn dim_ext(&self, t: usize, m: NakModule, n: NakModule) -> usize {
        assert!(t >= 1, "Ext degree must be positive");
        match self.syzygy_power(m, t - 1) {
            Some(x) if !self.is_projective(x) => self.dim_ext1(x, n),
            _ => 0,
        }
    }

    /// Indecomposables `M` with `Ext^1(M,M) = 0`, from the closed criterion
    /// `1 <= k <= n-1` or `k > c_i - n`.
    pub fn one_rigid_indecomposables(&self) -> Result<Vec<NakModule>, NakayamaError> {
        if self.orientation != Orientation::Cycle || self.n() < 2 {
            return Err(NakayamaError::Unsupported(
                "the rigidity criterion needs a cyclic quiver with at least two vertices".into(),
            ));
        }
        let n = self.n();
        Ok(self
            .indecomposables()
            .into_iter()
            .filter(|m| m.length < n || m.length + n > self.kupisch[m.vertex])
            .collect())
    }

    /// Dominant dimension of one module from its minimal injective
    /// coresolution; terms at indices `< cutoff` are inspected.
    pub fn domdim_module(&self, m: NakModule, cutoff: usize) -> BoundedValue {
        let mut current = m;
        for index in 0..cutoff {
            let envelope = self.injective_of_socle(self.socle(current));
            if !self.is_projective(envelope) {
                return BoundedValue::Finite(index);
            }
            match self.cosyzygy(current) {
                Some(next) => current = next,
                None => break,
            }
        }
        BoundedValue::AtLeast(cutoff)
    }

    pub fn domdim(&self, cutoff: usize) -> BoundedValue {
        self.projectives()
            .into_iter()
            .map(|p| self.domdim_module(p, cutoff))
            .reduce(BoundedValue::min)
            .expect("at least one vertex")
    }

    pub fn is_selfinjective(&self) -> bool {
        self.orientation == Orientation::Cycle && self.kupisch.iter().all(|&c| c == self.kupisch[0])
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_selfinjective() && self.kupisch[0] % self.n() == 1 % self.n()
    }

    /// The opposite algebra, renumbered so that arrows again run `i -> i+1`.
    pub fn opposite(&self) -> NakAlgebra {
        let n = self.n();
        let mut kupisch = vec![0; n];
        for a in 0..n {
            let slot = match self.orientation {
                Orientation::Cycle => (n - a) % n,
                Orientation::Line => n - 1 - a,
            };
            kupisch[slot] = self.injective_dim(a);
        }
        NakAlgebra::validate(self.orientation, &kupisch).expect("opposite of a valid algebra")
    }

    /// Total `dim Ext^t(M, M)` for a multiset of indecomposables.
    fn ext_total(&self, t: usize, modules: &[NakModule]) -> usize {
        modules
            .iter()
            .map(|&x| {
                modules
                    .iter()
                    .map(|&y| self.dim_ext(t, x, y))
                    .sum::<usize>()
            })
            .sum()
    }

    /// `φ_M = inf { r >= 1 : Ext^r(M,M) != 0 }` searched over `r < cutoff`.
    pub fn phi(&self, modules: &[NakModule], cutoff: usize) -> Result<BoundedValue, NakayamaError> {
        if modules.iter().all(|&m| self.is_projective(m)) {
            return Err(NakayamaError::ProjectiveModule);
        }
        Ok((1..cutoff)
            .find(|&r| self.ext_total(r, modules) > 0)
            .map_or(BoundedValue::AtLeast(cutoff), BoundedValue::Finite))
    }

    /// `Δ_A`. For non-selfinjective algebras this is the least `r` with
    /// `Ext^r(D(A), A) != 0`; for selfinjective ones the maximum of `φ` over
    /// non-projective indecomposables.
    pub fn delta(&self, cutoff: usize) -> BoundedValue {
        if self.is_selfinjective() {
            return self
                .indecomposables()
                .into_iter()
                .filter(|&m| !self.is_projective(m))
                .map(|m| self.phi(&[m], cutoff).expect("non-projective"))
                .reduce(BoundedValue::max)
                .expect("non-semisimple algebra has a non-projective module");
        }
        let injectives = self.dual_regular();
        let projectives = self.projectives();
        (1..cutoff)
            .find(|&r| {
                injectives
                    .iter()
                    .any(|&i| projectives.iter().any(|&p| self.dim_ext(r, i, p) > 0))
            })
            .map_or(BoundedValue::AtLeast(cutoff), BoundedValue::Finite)
    }

    /// Compact label such as `cycle[5,6,6,6,6]`.
    pub fn label(&self) -> String {
        let kind = match self.orientation {
            Orientation::Cycle => "cycle",
            Orientation::Line => "line",
        };
        let entries: Vec<String> = self.kupisch.iter().map(|c| c.to_string()).collect();
        format!("{kind}[{}]", entries.join(","))
    }
}

impl PartialOrd for NakAlgebra {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NakAlgebra {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.orientation as u8, &self.kupisch).cmp(&(other.orientation as u8, &other.kupisch))
    }
}

/// Every valid cyclic Kupisch series with `n` entries in `2..=max_entry`.
pub fn cyclic_series(n: usize, max_entry: usize) -> Vec<NakAlgebra> {
    let mut out = Vec::new();
    let mut current = vec![2; n];
    loop {
        if let Ok(a) = NakAlgebra::cycle(&current) {
            out.push(a);
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return out;
            }
            if current[pos] < max_entry {
                current[pos] += 1;
                break;
            }
            current[pos] = 2;
            pos += 1;
        }
    }
}

/// The gendo-symmetric family `(n, n+1, ..., n+1)` on a cycle with `n` vertices.
pub fn gendo_family(n: usize) -> NakAlgebra {
    let mut kupisch = vec![n + 1; n];
    kupisch[0] = n;
    NakAlgebra::cycle(&kupisch).expect("family member is a valid Kupisch series")
}
