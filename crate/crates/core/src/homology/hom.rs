use crate::exactmath::{Matrix, Subspace};
use crate::quivalg::{find_invertible_combination, Decision, SearchBudget};

use super::module::same_algebra;
use super::{HomologyError, Representation};

/// A vector space with a complete family of orthogonal projections and a
/// list of operators. Morphisms preserve each projection block and commute
/// with the operators position by position.
///
/// Modules over an algebra use the vertex idempotents as projections and
/// the radical generators as operators; bimodules append the operators of
/// the second algebra.
#[derive(Clone, Debug)]
pub struct OperatorModule {
    pub dim: usize,
    pub projections: Vec<Matrix>,
    pub operators: Vec<Matrix>,
}

impl OperatorModule {
    pub fn from_representation(m: &Representation) -> Self {
        let a = m.algebra();
        let radical = a.radical().expect("certified at construction");
        OperatorModule {
            dim: m.dim(),
            projections: (0..a.vertex_count())
                .map(|v| m.vertex_projection(v))
                .collect(),
            operators: radical
                .generators
                .iter()
                .map(|g| m.act(&g.element))
                .collect(),
        }
    }
}

/// One block of unknowns: `F = w r^T` with `w` a basis vector of the target
/// block and `r` a coordinate functional of the source block.
struct BlockBasis {
    columns: Vec<Matrix>,
    rows: Vec<Matrix>,
}

fn block_basis(projection: &Matrix) -> BlockBasis {
    let span = Subspace::column_span(projection);
    let basis = span.basis();
    BlockBasis {
        columns: basis.columns(),
        rows: span
            .pivots()
            .iter()
            .map(|&p| projection.select_rows(&[p]))
            .collect(),
    }
}

/// Basis of the space of linear maps `F : X -> Y` with `F p_X = p_Y F` for
/// every projection and `F o_X = o_Y F` for every operator.
pub fn hom_space(x: &OperatorModule, y: &OperatorModule) -> Vec<Matrix> {
    assert_eq!(
        x.projections.len(),
        y.projections.len(),
        "projection families differ"
    );
    assert_eq!(
        x.operators.len(),
        y.operators.len(),
        "operator families differ"
    );
    let field = match x.projections.first().or(y.projections.first()) {
        Some(p) => p.field(),
        None => return Vec::new(),
    };
    let mut units: Vec<(Matrix, Matrix)> = Vec::new();
    for (px, py) in x.projections.iter().zip(&y.projections) {
        let src = block_basis(px);
        let dst = block_basis(py);
        for w in &dst.columns {
            for r in &src.rows {
                units.push((w.clone(), r.clone()));
            }
        }
    }
    if units.is_empty() {
        return Vec::new();
    }
    let count = units.len();
    let mut kernel = Matrix::identity(field, count);
    for (ox, oy) in x.operators.iter().zip(&y.operators) {
        if kernel.cols() == 0 {
            return Vec::new();
        }
        // Column u holds vec(w (r o_X) - (o_Y w) r).
        let mut constraint = Matrix::zeros(field, y.dim * x.dim, count);
        for (u, (w, r)) in units.iter().enumerate() {
            let f = w.mul(&r.mul(ox)).sub(&oy.mul(w).mul(r));
            let v = f.vectorize();
            for i in 0..v.rows() {
                if !v.is_entry_zero(i, 0) {
                    constraint.set(i, u, v.get(i, 0));
                }
            }
        }
        let restricted = constraint.mul(&kernel);
        kernel = kernel.mul(&restricted.kernel_basis());
    }
    (0..kernel.cols())
        .map(|c| {
            let mut f = Matrix::zeros(field, y.dim, x.dim);
            for (u, (w, r)) in units.iter().enumerate() {
                let coeff = kernel.get(u, c);
                if !field.is_zero(&coeff) {
                    f.add_scaled(&coeff, &w.mul(r));
                }
            }
            f
        })
        .collect()
}

fn check_same(x: &Representation, y: &Representation) -> Result<(), HomologyError> {
    if !same_algebra(x.algebra(), y.algebra()) {
        return Err(HomologyError::AlgebraMismatch);
    }
    Ok(())
}

/// `dim Hom_A(X, Y)` by solving the intertwiner equations directly.
pub fn hom_dim(x: &Representation, y: &Representation) -> Result<usize, HomologyError> {
    check_same(x, y)?;
    Ok(hom_space(
        &OperatorModule::from_representation(x),
        &OperatorModule::from_representation(y),
    )
    .len())
}

/// Module isomorphism by searching the homomorphism space for an invertible
/// element.
pub fn is_isomorphic(
    x: &Representation,
    y: &Representation,
    budget: &SearchBudget,
) -> Result<Decision, HomologyError> {
    check_same(x, y)?;
    if x.dim() != y.dim() || x.dimension_vector() != y.dimension_vector() {
        return Ok(Decision::False);
    }
    if x.dim() == 0 {
        return Ok(Decision::True);
    }
    let homs = hom_space(
        &OperatorModule::from_representation(x),
        &OperatorModule::from_representation(y),
    );
    Ok(find_invertible_combination(&homs, budget).0)
}
