//! JSON algebra and module description files.
//!
//! An algebra file carries a `kind` tag:
//!
//! ```json
//! {"kind": "quiver", "vertices": ["e"], "arrows": [{"name": "x", "source": "e", "target": "e"}],
//!  "relations": ["x*x*x"], "loewy_bound": 3, "field": "F3"}
//! {"kind": "nakayama", "orientation": "cycle", "kupisch": [3, 3], "field": "F2"}
//! {"kind": "table", "field": "Q", "basis": ["1", "x"], "unit": ["1", "0"],
//!  "structure_constants": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]],
//!  "idempotents": [{"label": "e", "element": ["1", "0"]}]}
//! ```
//!
//! Structure constants are sparse triples `[i, j, k, c]` meaning
//! `b_i b_j` has coefficient `c` at `b_k`. Scalars are strings so that
//! rationals survive round trips. A module file lists the action matrix of
//! every basis element by name as a grid of scalar strings.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exactmath::{FieldSpec, Matrix, Scalar};
use crate::homology::{HomologyError, Representation};
use crate::nakayama::{NakAlgebra, Orientation};

use super::{compile, nakayama_to_table, AlgebraTable, Idempotent, QuivalgError, QuiverSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AlgebraFile {
    Quiver(QuiverSpec),
    Table(TableFile),
    Nakayama(NakayamaFile),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NakayamaFile {
    pub orientation: Orientation,
    pub kupisch: Vec<usize>,
    /// Field used when the algebra is compiled to a table; defaults to `Q`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementFile {
    #[serde(alias = "name")]
    pub label: String,
    pub element: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub field: FieldSpec,
    pub basis: Vec<String>,
    pub structure_constants: Vec<(usize, usize, usize, String)>,
    pub unit: Vec<String>,
    pub idempotents: Vec<ElementFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub named: Vec<ElementFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

fn format_err(e: impl std::fmt::Display) -> QuivalgError {
    QuivalgError::Format(e.to_string())
}

fn parse_vector(field: FieldSpec, d: usize, entries: &[String]) -> Result<Matrix, QuivalgError> {
    if entries.len() != d {
        return Err(QuivalgError::Format(format!(
            "vector has {} entries, expected {d}",
            entries.len()
        )));
    }
    let values = entries
        .iter()
        .map(|s| field.parse(s))
        .collect::<Result<Vec<Scalar>, _>>()?;
    Ok(Matrix::from_column(field, &values))
}

fn format_vector(field: FieldSpec, m: &Matrix) -> Vec<String> {
    m.column_entries(0)
        .iter()
        .map(|s| field.format(s))
        .collect()
}

impl TableFile {
    pub fn from_table(table: &AlgebraTable) -> Self {
        let field = table.field();
        TableFile {
            field,
            basis: table.basis_names().to_vec(),
            structure_constants: table
                .structure_triples()
                .into_iter()
                .map(|(i, j, k, c)| (i, j, k, field.format(&c)))
                .collect(),
            unit: format_vector(field, table.unit()),
            idempotents: table
                .idempotents()
                .iter()
                .map(|e| ElementFile {
                    label: e.label.clone(),
                    element: format_vector(field, &e.element),
                })
                .collect(),
            named: table
                .named_elements()
                .iter()
                .map(|(n, m)| ElementFile {
                    label: n.clone(),
                    element: format_vector(field, m),
                })
                .collect(),
            provenance: Some(table.provenance().to_string()),
        }
    }

    pub fn to_table(&self) -> Result<AlgebraTable, QuivalgError> {
        let field = self.field;
        let d = self.basis.len();
        let mut products = vec![Vec::new(); d * d];
        for (i, j, k, c) in &self.structure_constants {
            if *i >= d || *j >= d || *k >= d {
                return Err(QuivalgError::Format(format!(
                    "triple [{i}, {j}, {k}] out of range"
                )));
            }
            products[i * d + j].push((*k, field.parse(c)?));
        }
        let idempotents = self
            .idempotents
            .iter()
            .map(|e| {
                Ok(Idempotent {
                    label: e.label.clone(),
                    element: parse_vector(field, d, &e.element)?,
                })
            })
            .collect::<Result<Vec<_>, QuivalgError>>()?;
        let named = self
            .named
            .iter()
            .map(|e| Ok((e.label.clone(), parse_vector(field, d, &e.element)?)))
            .collect::<Result<Vec<_>, QuivalgError>>()?;
        let table = AlgebraTable::new(
            field,
            self.basis.clone(),
            products,
            parse_vector(field, d, &self.unit)?,
            idempotents,
            self.provenance
                .clone()
                .unwrap_or_else(|| "table file".into()),
        )?;
        Ok(table.with_named(named))
    }
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self, QuivalgError> {
        serde_json::from_str(text).map_err(format_err)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_table(&self) -> Result<AlgebraTable, QuivalgError> {
        match self {
            AlgebraFile::Quiver(spec) => compile(spec),
            AlgebraFile::Table(t) => t.to_table(),
            AlgebraFile::Nakayama(n) => {
                let a = NakAlgebra::validate(n.orientation, &n.kupisch).map_err(format_err)?;
                nakayama_to_table(&a, n.field.unwrap_or(FieldSpec::Rational))
            }
        }
    }

    /// The combinatorial description, when the file has one.
    pub fn nakayama(&self) -> Result<Option<NakAlgebra>, QuivalgError> {
        match self {
            AlgebraFile::Nakayama(n) => NakAlgebra::validate(n.orientation, &n.kupisch)
                .map(Some)
                .map_err(format_err),
            _ => Ok(None),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedMatrix {
    pub element: String,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub dimension: usize,
    pub actions: Vec<NamedMatrix>,
}

impl ModuleFile {
    pub fn from_representation(m: &Representation) -> Self {
        let names = m.algebra().basis_names();
        ModuleFile {
            dimension: m.dim(),
            actions: names
                .iter()
                .zip(m.actions())
                .map(|(n, a)| NamedMatrix {
                    element: n.clone(),
                    matrix: a.to_string_grid(),
                })
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, QuivalgError> {
        serde_json::from_str(text).map_err(format_err)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Builds the module with the checked constructor; every basis element
    /// of the algebra must appear exactly once.
    pub fn to_representation(
        &self,
        algebra: &Arc<AlgebraTable>,
    ) -> Result<Representation, HomologyError> {
        let field = algebra.field();
        let names = algebra.basis_names();
        let mut actions: Vec<Option<Matrix>> = vec![None; names.len()];
        for a in &self.actions {
            let idx = names
                .iter()
                .position(|n| *n == a.element)
                .ok_or_else(|| QuivalgError::UnknownName(a.element.clone()))?;
            if actions[idx].is_some() {
                return Err(HomologyError::InvalidModule(format!(
                    "`{}` listed twice",
                    a.element
                )));
            }
            let n = self.dimension;
            let m = Matrix::from_string_grid(field, n, n, &a.matrix).map_err(|_| {
                HomologyError::InvalidModule(format!(
                    "action of `{}` is not a {n}x{n} grid",
                    a.element
                ))
            })?;
            actions[idx] = Some(m);
        }
        let actions = actions
            .into_iter()
            .zip(names)
            .map(|(m, n)| {
                m.ok_or_else(|| HomologyError::InvalidModule(format!("missing action of `{n}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Representation::new(algebra.clone(), actions, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quivalg::preset;

    #[test]
    fn table_round_trip() {
        let t = preset("preproj-a2").unwrap();
        let file = AlgebraFile::Table(TableFile::from_table(&t));
        let back = AlgebraFile::parse(&file.to_json())
            .unwrap()
            .to_table()
            .unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn quiver_and_nakayama_files() {
        let q = r#"{"kind": "quiver", "vertices": ["e"],
            "arrows": [{"name": "x", "source": "e", "target": "e"}],
            "relations": ["x*x*x*x"], "loewy_bound": 4, "field": "Q"}"#;
        assert_eq!(AlgebraFile::parse(q).unwrap().to_table().unwrap().dim(), 4);
        let n = r#"{"kind": "nakayama", "orientation": "cycle", "kupisch": [3, 3], "field": "F2"}"#;
        let file = AlgebraFile::parse(n).unwrap();
        assert_eq!(file.to_table().unwrap().dim(), 6);
        assert_eq!(file.nakayama().unwrap().unwrap().kupisch(), &[3, 3]);
        assert!(AlgebraFile::parse(
            r#"{"kind": "nakayama", "orientation": "cycle", "kupisch": [2, 4]}"#
        )
        .unwrap()
        .to_table()
        .is_err());
        assert!(AlgebraFile::parse(r#"{"kind": "other"}"#).is_err());
    }

    #[test]
    fn module_round_trip() {
        let a = Arc::new(preset("truncated-poly(3,F3)").unwrap());
        let m = Representation::regular(&a).unwrap().radical();
        let file = ModuleFile::from_representation(&m);
        let back = ModuleFile::parse(&file.to_json())
            .unwrap()
            .to_representation(&a)
            .unwrap();
        assert_eq!(back, m);
    }
}
