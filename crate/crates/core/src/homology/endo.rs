use crate::exactmath::{FieldSpec, Matrix, Scalar, Subspace};
use crate::quivalg::{AlgebraTable, Decision, Idempotent};

use super::hom::{hom_space, OperatorModule};
use super::module::same_algebra;
use super::{HomologyError, Representation};

/// Endomorphism ring of `M` as matrices.
fn endomorphisms(m: &Representation) -> Vec<Matrix> {
    let op = OperatorModule::from_representation(m);
    hom_space(&op, &op)
}

/// Span of the products `x y`, vectorized.
fn product_span(
    left: &[Matrix],
    right: &[Matrix],
    rows: usize,
    cols: usize,
    field: FieldSpec,
) -> Subspace {
    let products: Vec<Matrix> = left
        .iter()
        .flat_map(|x| right.iter().map(move |y| x.mul(y).vectorize()))
        .collect();
    if products.is_empty() {
        return Subspace::zero(field, rows * cols);
    }
    let refs: Vec<&Matrix> = products.iter().collect();
    Subspace::column_span(&Matrix::hstack(&refs))
}

fn small_scalars(field: FieldSpec) -> Vec<Scalar> {
    match field.order() {
        Some(q) if q <= 7 => (0..q as i64).map(|v| field.from_i64(v)).collect(),
        _ => [0i64, 1, -1, 2, -2, 3]
            .iter()
            .map(|&v| field.from_i64(v))
            .collect(),
    }
}

/// Whether `M` is indecomposable.
///
/// True when `End(M) = K·1 ⊕ N` with `N` a nilpotent ideal, which makes the
/// endomorphism ring local. False when some endomorphism is neither
/// invertible nor nilpotent, since its Fitting decomposition then splits `M`.
pub fn is_indecomposable(m: &Representation) -> Decision {
    if m.is_zero() {
        return Decision::False;
    }
    let field = m.field();
    let n = m.dim();
    let ends = endomorphisms(m);
    let identity = Matrix::identity(field, n);
    let mut radical = Vec::with_capacity(ends.len());
    let mut split = true;
    for f in &ends {
        match f.single_eigenvalue() {
            Some(lambda) => radical.push(f.sub(&identity.scale(&lambda))),
            None => {
                split = false;
                break;
            }
        }
    }
    if split {
        let span = {
            let vecs: Vec<Matrix> = radical.iter().map(Matrix::vectorize).collect();
            if vecs.is_empty() {
                Subspace::zero(field, n * n)
            } else {
                let refs: Vec<&Matrix> = vecs.iter().collect();
                Subspace::column_span(&Matrix::hstack(&refs))
            }
        };
        if span.dim() + 1 == ends.len() {
            let mut power = span.clone();
            let mut guard = 0;
            let closed = product_span(&radical, &radical, n, n, field);
            if span.contains_subspace(&closed) {
                while power.dim() > 0 && guard <= n {
                    let current: Vec<Matrix> = (0..power.dim())
                        .map(|c| power.basis_vector(c).reshape(n, n))
                        .collect();
                    power = product_span(&current, &radical, n, n, field);
                    guard += 1;
                }
                if power.dim() == 0 {
                    return Decision::True;
                }
            }
        }
    }
    let mut candidates: Vec<Matrix> = ends.clone();
    for i in 0..ends.len() {
        for j in i + 1..ends.len() {
            candidates.push(ends[i].add(&ends[j]));
        }
    }
    let scalars = small_scalars(field);
    for f in &candidates {
        for s in &scalars {
            let g = f.sub(&identity.scale(s));
            if !g.is_invertible() && !g.is_nilpotent() {
                return Decision::False;
            }
        }
    }
    Decision::Undetermined
}

/// `End_A(⊕ X_i)` as a structure-constant table. Basis: echelon bases of the
/// blocks `Hom(X_j, X_i)`; product: composition `f g = f ∘ g`; idempotents:
/// the summand projections, labelled `X0, X1, ...` or by module name.
pub fn endomorphism_algebra(summands: &[Representation]) -> Result<AlgebraTable, HomologyError> {
    let first = summands
        .first()
        .ok_or_else(|| HomologyError::Precondition("no summands".into()))?;
    if summands
        .iter()
        .any(|s| !same_algebra(s.algebra(), first.algebra()))
    {
        return Err(HomologyError::AlgebraMismatch);
    }
    for (i, s) in summands.iter().enumerate() {
        match is_indecomposable(s) {
            Decision::True => {}
            Decision::False => return Err(HomologyError::Decomposable(i)),
            Decision::Undetermined => return Err(HomologyError::IndecomposabilityUndetermined(i)),
        }
    }
    let field = first.field();
    let r = summands.len();
    let ops: Vec<OperatorModule> = summands
        .iter()
        .map(OperatorModule::from_representation)
        .collect();
    let dims: Vec<usize> = summands.iter().map(Representation::dim).collect();

    // blocks[i][j]: echelon basis of Hom(X_j, X_i), vectorized.
    let mut blocks: Vec<Vec<Subspace>> = Vec::with_capacity(r);
    let mut start: Vec<Vec<usize>> = Vec::with_capacity(r);
    let mut basis_names = Vec::new();
    let mut elements: Vec<(usize, usize, Matrix)> = Vec::new();
    for i in 0..r {
        let mut row = Vec::with_capacity(r);
        let mut row_start = Vec::with_capacity(r);
        for j in 0..r {
            let homs = hom_space(&ops[j], &ops[i]);
            let space = if homs.is_empty() {
                Subspace::zero(field, dims[i] * dims[j])
            } else {
                let vecs: Vec<Matrix> = homs.iter().map(Matrix::vectorize).collect();
                let refs: Vec<&Matrix> = vecs.iter().collect();
                Subspace::column_span(&Matrix::hstack(&refs))
            };
            row_start.push(elements.len());
            for t in 0..space.dim() {
                basis_names.push(format!("f{i}_{j}_{t}"));
                elements.push((i, j, space.basis_vector(t).reshape(dims[i], dims[j])));
            }
            row.push(space);
        }
        blocks.push(row);
        start.push(row_start);
    }
    let d = elements.len();
    let mut products = Vec::with_capacity(d * d);
    for (ia, ja, fa) in &elements {
        for (ib, jb, fb) in &elements {
            if ja != ib {
                products.push(Vec::new());
                continue;
            }
            let composite = fa.mul(fb).vectorize();
            let coords = blocks[*ia][*jb].coords(&composite);
            let base = start[*ia][*jb];
            let entry: Vec<(usize, Scalar)> = (0..coords.rows())
                .filter(|&k| !coords.is_entry_zero(k, 0))
                .map(|k| (base + k, coords.get(k, 0)))
                .collect();
            products.push(entry);
        }
    }
    let mut idempotents = Vec::with_capacity(r);
    let mut unit = vec![field.zero(); d];
    for i in 0..r {
        let id = Matrix::identity(field, dims[i]).vectorize();
        let coords = blocks[i][i].coords(&id);
        let mut element = vec![field.zero(); d];
        for k in 0..coords.rows() {
            element[start[i][i] + k] = coords.get(k, 0);
            unit[start[i][i] + k] = coords.get(k, 0);
        }
        let label = summands[i]
            .name()
            .map(str::to_string)
            .unwrap_or_else(|| format!("X{i}"));
        idempotents.push(Idempotent {
            label,
            element: Matrix::from_column(field, &element),
        });
    }
    Ok(AlgebraTable::new(
        field,
        basis_names,
        products,
        Matrix::from_column(field, &unit),
        idempotents,
        format!("endomorphism algebra over {}", first.algebra().provenance()),
    )?)
}
