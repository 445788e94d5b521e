//! Finite-dimensional algebras as explicit structure-constant tables.
//!
//! Tables come from compiling a quiver with relations, from the preset
//! corpus, from the Nakayama bridge, or from constructions (opposite,
//! enveloping, endomorphism algebras). Every table is validated on
//! construction: associativity on all basis triples, the unit, and a complete
//! set of orthogonal idempotents.

mod bridge;
mod compile;
pub mod json;
mod predicates;
mod presets;
mod relation;
mod table;

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use crate::exactmath::MathError;

pub use bridge::{nakayama_to_table, NAKAYAMA_BRIDGE_LIMIT};
pub use compile::{compile, ArrowSpec, QuiverSpec};
pub use predicates::{
    find_invertible_combination, is_local, is_selfinjective, is_symmetric, symmetric_form,
    SearchBudget, SymmetricForm,
};
pub use presets::{preset, preset_names, preset_quiver};
pub use relation::{RelationExpr, Term};
pub use table::{AlgebraTable, Generator, Idempotent, RadicalData, ENVELOPING_LIMIT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuivalgError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("non-composable path `{0}`")]
    NonComposable(String),
    #[error("relation `{0}` reduces to zero over the field")]
    DegenerateRelation(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("Loewy bound {bound} violated: path `{path}` of length {bound} is not in the ideal")]
    LoewyBound { bound: usize, path: String },
    #[error("quotient algebra is zero")]
    EmptyQuotient,
    #[error("structure axiom fails: {0}")]
    Axiom(String),
    #[error("algebra is not split basic: {0}")]
    NotSplitBasic(String),
    #[error("algebra is semisimple")]
    Semisimple,
    #[error("size limit exceeded: {what} needs {needed}, limit {limit}")]
    SizeLimit {
        what: String,
        needed: usize,
        limit: usize,
    },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("malformed algebra description: {0}")]
    Format(String),
    #[error(transparent)]
    Math(#[from] MathError),
}

/// Outcome of a predicate whose evaluation may rely on a bounded search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    True,
    False,
    Undetermined,
}

impl Decision {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Decision::True
        } else {
            Decision::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Decision::True
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::True => "true",
            Decision::False => "false",
            Decision::Undetermined => "undetermined",
        })
    }
}
