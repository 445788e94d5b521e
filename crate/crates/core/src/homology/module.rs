use std::fmt;
use std::sync::Arc;

use crate::exactmath::{FieldSpec, Matrix, Subspace};
use crate::quivalg::AlgebraTable;

use super::HomologyError;

/// A finite-dimensional right module over an [`AlgebraTable`].
#[derive(Clone)]
pub struct Representation {
    algebra: Arc<AlgebraTable>,
    dim: usize,
    actions: Vec<Matrix>,
    name: Option<String>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("algebra", &self.algebra.provenance())
            .finish()
    }
}

impl PartialEq for Representation {
    /// Equality of action matrices, not isomorphism.
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.actions == other.actions
    }
}

pub(crate) fn same_algebra(a: &Arc<AlgebraTable>, b: &Arc<AlgebraTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Representation {
    /// Checked constructor: sizes, the unit, and `act(b_i b_j) = act(b_j) act(b_i)`.
    pub fn new(
        algebra: Arc<AlgebraTable>,
        actions: Vec<Matrix>,
        name: Option<String>,
    ) -> Result<Self, HomologyError> {
        algebra.radical()?;
        let d = algebra.dim();
        if actions.len() != d {
            return Err(HomologyError::InvalidModule(format!(
                "{} action matrices for an algebra of dimension {d}",
                actions.len()
            )));
        }
        let field = algebra.field();
        let m = actions.first().map_or(0, Matrix::rows);
        for a in &actions {
            if a.rows() != m || a.cols() != m || a.field() != field {
                return Err(HomologyError::InvalidModule(
                    "action matrices must be square of one size over the algebra's field".into(),
                ));
            }
        }
        let rep = Representation {
            algebra,
            dim: m,
            actions,
            name,
        };
        if rep.act(rep.algebra.unit()) != Matrix::identity(field, m) {
            return Err(HomologyError::InvalidModule(
                "unit does not act as identity".into(),
            ));
        }
        for i in 0..d {
            for j in 0..d {
                let mut lhs = Matrix::zeros(field, m, m);
                for (k, c) in rep.algebra.basis_product(i, j) {
                    lhs.add_scaled(c, &rep.actions[*k]);
                }
                if lhs != rep.actions[j].mul(&rep.actions[i]) {
                    return Err(HomologyError::InvalidModule(format!(
                        "action violates the product of basis elements {i} and {j}"
                    )));
                }
            }
        }
        Ok(rep)
    }

    pub(crate) fn from_parts(algebra: Arc<AlgebraTable>, dim: usize, actions: Vec<Matrix>) -> Self {
        debug_assert_eq!(actions.len(), algebra.dim());
        Representation {
            algebra,
            dim,
            actions,
            name: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn algebra(&self) -> &Arc<AlgebraTable> {
        &self.algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Matrix of `v ↦ v x` for an algebra element `x` given as a column.
    pub fn act(&self, x: &Matrix) -> Matrix {
        let field = self.field();
        let mut out = Matrix::zeros(field, self.dim, self.dim);
        for (j, c) in x.column_entries(0).iter().enumerate() {
            if !field.is_zero(c) {
                out.add_scaled(c, &self.actions[j]);
            }
        }
        out
    }

    pub fn vertex_projection(&self, v: usize) -> Matrix {
        self.act(self.algebra.idempotent(v))
    }

    /// `M e_v`.
    pub fn vertex_space(&self, v: usize) -> Subspace {
        Subspace::column_span(&self.vertex_projection(v))
    }

    pub fn dimension_vector(&self) -> Vec<usize> {
        (0..self.algebra.vertex_count())
            .map(|v| self.vertex_projection(v).rank())
            .collect()
    }

    fn generator_actions(&self) -> Vec<Matrix> {
        let radical = self.algebra.radical().expect("certified at construction");
        radical
            .generators
            .iter()
            .map(|g| self.act(&g.element))
            .collect()
    }

    /// `U J` for a submodule `U`, as the span of its images under the
    /// radical generators.
    pub fn radical_of(&self, u: &Subspace) -> Subspace {
        self.radical_of_with(u, &self.generator_actions())
    }

    fn radical_of_with(&self, u: &Subspace, gens: &[Matrix]) -> Subspace {
        if u.dim() == 0 || gens.is_empty() {
            return Subspace::zero(self.field(), self.dim);
        }
        let basis = u.basis();
        let images: Vec<Matrix> = gens.iter().map(|g| g.mul(&basis)).collect();
        let refs: Vec<&Matrix> = images.iter().collect();
        Subspace::column_span(&Matrix::hstack(&refs))
    }

    /// `M J`.
    pub fn radical_subspace(&self) -> Subspace {
        self.radical_of(&Subspace::full(self.field(), self.dim))
    }

    /// The radical series `M ⊋ M J ⊋ ... ⊋ 0`, starting with `M` and ending
    /// with the zero subspace.
    pub fn radical_series(&self) -> Vec<Subspace> {
        let gens = self.generator_actions();
        let mut out = vec![Subspace::full(self.field(), self.dim)];
        while out.last().unwrap().dim() > 0 {
            let next = self.radical_of_with(out.last().unwrap(), &gens);
            out.push(next);
        }
        out
    }

    /// Loewy length of the module: number of nonzero radical layers.
    pub fn loewy_length(&self) -> usize {
        self.radical_series().len() - 1
    }

    pub fn is_submodule(&self, u: &Subspace) -> bool {
        let basis = u.basis();
        self.actions.iter().all(|a| u.contains(&a.mul(&basis)))
    }

    /// The submodule carried by an invariant subspace, in the echelon basis
    /// of that subspace.
    pub fn submodule(&self, u: &Subspace) -> Result<Representation, HomologyError> {
        if !self.is_submodule(u) {
            return Err(HomologyError::InvalidModule(
                "subspace is not invariant".into(),
            ));
        }
        Ok(self.submodule_unchecked(u))
    }

    pub(crate) fn submodule_unchecked(&self, u: &Subspace) -> Representation {
        let basis = u.basis();
        let actions = self
            .actions
            .iter()
            .map(|a| u.coords(&a.mul(&basis)))
            .collect();
        Representation::from_parts(self.algebra.clone(), u.dim(), actions)
    }

    /// `M / U`, with basis the standard vectors outside the pivots of `U`.
    pub fn quotient(&self, u: &Subspace) -> Result<Representation, HomologyError> {
        if !self.is_submodule(u) {
            return Err(HomologyError::InvalidModule(
                "subspace is not invariant".into(),
            ));
        }
        Ok(self.quotient_unchecked(u))
    }

    pub(crate) fn quotient_unchecked(&self, u: &Subspace) -> Representation {
        let keep = u.complement_indices();
        let lift = Matrix::identity(self.field(), self.dim).select_cols(&keep);
        let actions = self
            .actions
            .iter()
            .map(|a| u.reduce(&a.mul(&lift)).select_rows(&keep))
            .collect();
        Representation::from_parts(self.algebra.clone(), keep.len(), actions)
    }

    /// `M / M J`.
    pub fn top(&self) -> Representation {
        self.quotient_unchecked(&self.radical_subspace())
    }

    /// `M J` as a module.
    pub fn radical(&self) -> Representation {
        self.submodule_unchecked(&self.radical_subspace())
    }

    pub fn direct_sum(parts: &[&Representation]) -> Result<Representation, HomologyError> {
        let first = parts.first().ok_or(HomologyError::ZeroModule)?;
        if parts
            .iter()
            .any(|p| !same_algebra(&p.algebra, &first.algebra))
        {
            return Err(HomologyError::AlgebraMismatch);
        }
        let field = first.field();
        let d = first.algebra.dim();
        let actions = (0..d)
            .map(|j| {
                let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.actions[j]).collect();
                Matrix::block_diagonal(field, &blocks)
            })
            .collect();
        let dim = parts.iter().map(|p| p.dim).sum();
        Ok(Representation::from_parts(
            first.algebra.clone(),
            dim,
            actions,
        ))
    }

    /// `D M = Hom_K(M, K)` as a right module over the opposite algebra.
    pub fn dual(&self) -> Representation {
        self.dual_unchecked(self.algebra.opposite())
    }

    /// `D M` over a given table that must equal the opposite of this module's
    /// algebra.
    pub fn dual_over(&self, target: Arc<AlgebraTable>) -> Result<Representation, HomologyError> {
        if *target != self.algebra.opposite_table() {
            return Err(HomologyError::AlgebraMismatch);
        }
        Ok(self.dual_unchecked(target))
    }

    pub(crate) fn dual_unchecked(&self, target: Arc<AlgebraTable>) -> Representation {
        let actions = self.actions.iter().map(Matrix::transpose).collect();
        Representation::from_parts(target, self.dim, actions)
    }

    /// Transports the module along a change of basis `T` (columns are the
    /// new basis vectors).
    pub fn change_basis(&self, t: &Matrix) -> Result<Representation, HomologyError> {
        let inv = t
            .inverse()
            .ok_or_else(|| HomologyError::InvalidModule("change of basis is singular".into()))?;
        let actions = self.actions.iter().map(|a| inv.mul(&a.mul(t))).collect();
        Ok(Representation::from_parts(
            self.algebra.clone(),
            self.dim,
            actions,
        ))
    }

    pub fn regular(algebra: &Arc<AlgebraTable>) -> Result<Representation, HomologyError> {
        algebra.radical()?;
        Ok(Representation::from_parts(
            algebra.clone(),
            algebra.dim(),
            algebra.right_mult().to_vec(),
        )
        .with_name("A"))
    }

    /// `e_v A` as a subspace of `A`.
    pub fn projective_subspace(algebra: &AlgebraTable, v: usize) -> Subspace {
        Subspace::column_span(&algebra.left_mult_by(algebra.idempotent(v)))
    }

    /// `P_v = e_v A` in the echelon basis of [`Self::projective_subspace`].
    pub fn projective(
        algebra: &Arc<AlgebraTable>,
        v: usize,
    ) -> Result<Representation, HomologyError> {
        check_vertex(algebra, v)?;
        let regular = Representation::regular(algebra)?;
        let label = algebra.vertex_labels()[v].clone();
        Ok(regular
            .submodule_unchecked(&Self::projective_subspace(algebra, v))
            .with_name(format!("P({label})")))
    }

    /// `S_v = top P_v`, one-dimensional for split algebras.
    pub fn simple(algebra: &Arc<AlgebraTable>, v: usize) -> Result<Representation, HomologyError> {
        let top = Representation::projective(algebra, v)?.top();
        if top.dim != 1 {
            return Err(HomologyError::NonSplitTop(v));
        }
        let label = algebra.vertex_labels()[v].clone();
        Ok(top.with_name(format!("S({label})")))
    }

    /// `I_v = D(A e_v)`, the injective envelope of `S_v`, computed as the
    /// dual of a projective over the opposite algebra.
    pub fn injective(
        algebra: &Arc<AlgebraTable>,
        v: usize,
    ) -> Result<Representation, HomologyError> {
        check_vertex(algebra, v)?;
        let op = algebra.opposite();
        let p = Representation::projective(&op, v)?;
        let label = algebra.vertex_labels()[v].clone();
        Ok(p.dual_unchecked(algebra.clone())
            .with_name(format!("I({label})")))
    }

    /// Vertices of the top, with multiplicity.
    pub fn top_vertices(&self) -> Vec<usize> {
        let top = self.top();
        top.dimension_vector()
            .into_iter()
            .enumerate()
            .flat_map(|(v, m)| std::iter::repeat_n(v, m))
            .collect()
    }
}

pub(crate) fn check_vertex(algebra: &AlgebraTable, v: usize) -> Result<(), HomologyError> {
    if v >= algebra.vertex_count() {
        return Err(HomologyError::Vertex(v));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nakayama::NakAlgebra;
    use crate::quivalg::{nakayama_to_table, preset};

    fn arc(t: AlgebraTable) -> Arc<AlgebraTable> {
        Arc::new(t)
    }

    #[test]
    fn hopf_simple_and_projective() {
        let a = arc(preset("hopf-a5-f2").unwrap());
        assert_eq!(Representation::simple(&a, 0).unwrap().dim(), 1);
        assert_eq!(Representation::projective(&a, 0).unwrap().dim(), 8);
        assert_eq!(Representation::regular(&a).unwrap().radical().dim(), 7);
    }

    #[test]
    fn constructed_modules_pass_the_checked_constructor() {
        let n = NakAlgebra::cycle(&[3, 4, 4]).unwrap();
        let a = arc(nakayama_to_table(&n, FieldSpec::Prime(3)).unwrap());
        for v in 0..3 {
            for m in [
                Representation::projective(&a, v).unwrap(),
                Representation::simple(&a, v).unwrap(),
                Representation::injective(&a, v).unwrap(),
                Representation::projective(&a, v).unwrap().radical(),
            ] {
                let rebuilt = Representation::new(a.clone(), m.actions().to_vec(), None).unwrap();
                assert_eq!(rebuilt, m);
            }
        }
    }

    #[test]
    fn projective_dims_match_kupisch() {
        let n = NakAlgebra::cycle(&[2, 3]).unwrap();
        let a = arc(nakayama_to_table(&n, FieldSpec::Prime(2)).unwrap());
        assert_eq!(Representation::projective(&a, 0).unwrap().dim(), 2);
        assert_eq!(Representation::projective(&a, 1).unwrap().dim(), 3);
        assert_eq!(
            Representation::injective(&a, 0).unwrap().dim(),
            n.injective_dim(0)
        );
        assert_eq!(
            Representation::injective(&a, 1).unwrap().dim(),
            n.injective_dim(1)
        );
    }

    #[test]
    fn broken_action_is_rejected() {
        let a = arc(preset("truncated-poly(3,F3)").unwrap());
        let mut acts = Representation::regular(&a).unwrap().actions().to_vec();
        acts[1] = Matrix::identity(FieldSpec::Prime(3), 3);
        assert!(Representation::new(a, acts, None).is_err());
    }

    #[test]
    fn dual_is_an_involution_up_to_table_identity() {
        let n = NakAlgebra::line(&[2, 1]).unwrap();
        let a = arc(nakayama_to_table(&n, FieldSpec::Rational).unwrap());
        let p = Representation::projective(&a, 0).unwrap();
        let back = p.dual().dual_over(a.clone()).unwrap();
        assert_eq!(back, p);
    }
}
