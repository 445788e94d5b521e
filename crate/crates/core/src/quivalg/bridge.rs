use crate::exactmath::FieldSpec;
use crate::nakayama::{NakAlgebra, Orientation};

use super::{compile, AlgebraTable, ArrowSpec, QuivalgError, QuiverSpec};

/// Largest `Σ c_i` the bridge will compile.
pub const NAKAYAMA_BRIDGE_LIMIT: usize = 400;

/// The quiver with relations of a Nakayama algebra: vertices `v0, v1, ...`,
/// arrows `a_i : v_i -> v_{i+1}`, and for every vertex the path of length
/// `c_i` starting there as a monomial relation.
pub fn nakayama_quiver(a: &NakAlgebra, field: FieldSpec) -> QuiverSpec {
    let n = a.n();
    let cyclic = a.orientation() == Orientation::Cycle;
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let arrow_count = if cyclic { n } else { n - 1 };
    let arrows = (0..arrow_count)
        .map(|i| ArrowSpec {
            name: format!("a{i}"),
            source: vertices[i].clone(),
            target: vertices[(i + 1) % n].clone(),
        })
        .collect();
    let relations = (0..n)
        .filter(|&i| cyclic || i + a.c(i) < n)
        .map(|i| {
            let c = a.c(i);
            let names: Vec<String> = (0..c).map(|t| format!("a{}", (i + t) % n)).collect();
            names.join("*")
        })
        .collect();
    let loewy_bound = a.kupisch().iter().copied().max().unwrap_or(2).max(2);
    QuiverSpec {
        vertices,
        arrows,
        relations,
        loewy_bound,
        field,
    }
}

/// Compiles a Nakayama algebra into a structure-constant table of
/// dimension `Σ c_i`.
pub fn nakayama_to_table(a: &NakAlgebra, field: FieldSpec) -> Result<AlgebraTable, QuivalgError> {
    if a.dim() > NAKAYAMA_BRIDGE_LIMIT {
        return Err(QuivalgError::SizeLimit {
            what: "Nakayama bridge".into(),
            needed: a.dim(),
            limit: NAKAYAMA_BRIDGE_LIMIT,
        });
    }
    let mut table = compile(&nakayama_quiver(a, field))?;
    table.set_provenance(format!("nakayama {}", a.label()));
    Ok(table)
}
