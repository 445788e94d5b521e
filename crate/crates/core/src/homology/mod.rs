//! Homological algebra over structure-constant tables.
//!
//! Modules are right modules given by one action matrix per basis element of
//! the algebra, acting on column vectors: `v · b_j = actions[j] v`, hence
//! `act(xy) = act(y) act(x)`. Every algebra reached from here has a certified
//! split basic radical, so each simple module is one-dimensional and
//! `Hom(P_v, N) = N e_v`.

mod dominant;
mod endo;
mod hom;
mod ideal;
mod module;
mod resolution;
mod uniserial;

use thiserror::Error;

use crate::exactmath::MathError;
use crate::quivalg::QuivalgError;

pub use dominant::{
    delta, domdim, domdim_module, injective_coresolution, is_gendo_symmetric, phi,
    projective_injective_vertices, Coresolution, DeltaReport,
};
pub use endo::{endomorphism_algebra, is_indecomposable};
pub use hom::{hom_dim, hom_space, is_isomorphic, OperatorModule};
pub use ideal::{
    check_ideal_rigidity, ideal_module, ideal_subspace, radical_power, regular_bimodule,
    IdealReport,
};
pub use module::Representation;
pub use resolution::{
    ext_dims, projective_cover, syzygy, syzygy_dims, ExtTable, ProjectiveCover, Resolution,
    ResolutionCache, ResolutionReport,
};
pub use uniserial::{nakayama_indecomposables, uniserial_module};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error(transparent)]
    Algebra(#[from] QuivalgError),
    #[error(transparent)]
    Math(#[from] MathError),
    #[error("vertex {0} out of range")]
    Vertex(usize),
    #[error("top of the projective at vertex {0} is not one-dimensional")]
    NonSplitTop(usize),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("zero module")]
    ZeroModule,
    #[error("module is projective")]
    ProjectiveModule,
    #[error("trivial ideal: {0}")]
    TrivialIdeal(String),
    #[error("summand {0} is decomposable")]
    Decomposable(usize),
    #[error("indecomposability of summand {0} is undetermined")]
    IndecomposabilityUndetermined(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("algebra is not of Nakayama type: {0}")]
    NotNakayama(String),
}
