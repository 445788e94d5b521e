use std::sync::Arc;

use serde::Serialize;

use crate::exactmath::{Matrix, Subspace};
use crate::quivalg::{is_symmetric, AlgebraTable, Decision, SearchBudget};

use super::resolution::Resolution;
use super::{HomologyError, Representation};

/// Smallest two-sided ideal containing the generators, as a subspace of `A`.
pub fn ideal_subspace(algebra: &AlgebraTable, generators: &[Matrix]) -> Subspace {
    let field = algebra.field();
    let d = algebra.dim();
    if generators.is_empty() {
        return Subspace::zero(field, d);
    }
    let refs: Vec<&Matrix> = generators.iter().collect();
    let mut current = Subspace::column_span(&Matrix::hstack(&refs));
    let multipliers: Vec<Matrix> = (0..d)
        .flat_map(|j| {
            let b = algebra.basis_element(j);
            [algebra.right_mult_by(&b), algebra.left_mult_by(&b)]
        })
        .collect();
    loop {
        let basis = current.basis();
        let mut images = vec![basis.clone()];
        images.extend(multipliers.iter().map(|m| m.mul(&basis)));
        let refs: Vec<&Matrix> = images.iter().collect();
        let next = Subspace::column_span(&Matrix::hstack(&refs));
        if next.dim() == current.dim() {
            return current;
        }
        current = next;
    }
}

/// The two-sided ideal generated by `generators` as a right module. Errors
/// when the ideal is zero or all of `A`.
pub fn ideal_module(
    algebra: &Arc<AlgebraTable>,
    generators: &[Matrix],
) -> Result<Representation, HomologyError> {
    let x = ideal_subspace(algebra, generators);
    if x.dim() == 0 {
        return Err(HomologyError::TrivialIdeal("the ideal is zero".into()));
    }
    if x.dim() == algebra.dim() {
        return Err(HomologyError::TrivialIdeal(
            "the ideal is the whole algebra".into(),
        ));
    }
    Ok(Representation::regular(algebra)?.submodule_unchecked(&x))
}

/// `J^k` as a right module; `J^0 = A`.
pub fn radical_power(
    algebra: &Arc<AlgebraTable>,
    k: usize,
) -> Result<Representation, HomologyError> {
    let regular = Representation::regular(algebra)?;
    if k == 0 {
        return Ok(regular);
    }
    let radical = algebra.radical()?;
    let space = radical
        .powers
        .get(k - 1)
        .cloned()
        .unwrap_or_else(|| Subspace::zero(algebra.field(), algebra.dim()));
    Ok(regular
        .submodule_unchecked(&space)
        .with_name(format!("J^{k}")))
}

/// Outcome of the ideal rigidity check for a two-sided ideal `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealReport {
    pub ideal_dim: usize,
    pub hom_to_quotient: usize,
    pub ext1: usize,
    pub local: bool,
    /// `Hom(X, A/X) ≠ 0` forces `Ext^1(X, X) ≠ 0`, and a local algebra forces
    /// `Hom(X, A/X) ≠ 0`; false means a counterexample was found.
    pub holds: bool,
}

/// Computes `dim Hom(X, A/X)` and `dim Ext^1(X, X)` for a nontrivial proper
/// two-sided ideal `X` of a symmetric algebra.
pub fn check_ideal_rigidity(
    algebra: &Arc<AlgebraTable>,
    ideal: &Subspace,
    budget: &SearchBudget,
) -> Result<IdealReport, HomologyError> {
    if ideal.dim() == 0 || ideal.dim() == algebra.dim() {
        return Err(HomologyError::TrivialIdeal(format!(
            "dimension {} in an algebra of dimension {}",
            ideal.dim(),
            algebra.dim()
        )));
    }
    if !ideal_subspace(algebra, &[ideal.basis()]).equals(ideal) {
        return Err(HomologyError::Precondition(
            "subspace is not a two-sided ideal".into(),
        ));
    }
    match is_symmetric(algebra, budget)? {
        Decision::True => {}
        other => {
            return Err(HomologyError::Precondition(format!(
                "the algebra must be symmetric (predicate gave {other})"
            )))
        }
    }
    let regular = Representation::regular(algebra)?;
    let x = regular.submodule_unchecked(ideal);
    let quotient = regular.quotient_unchecked(ideal);
    let res = Resolution::with_length(&x, 2)?;
    let hom_to_quotient = res.ext(&quotient, 0)?;
    let ext1 = res.ext(&x, 1)?;
    let local = algebra.vertex_count() == 1;
    let holds = (hom_to_quotient == 0 || ext1 > 0) && (!local || hom_to_quotient > 0);
    Ok(IdealReport {
        ideal_dim: ideal.dim(),
        hom_to_quotient,
        ext1,
        local,
        holds,
    })
}

/// `A` as a right module over `A ⊗ A^op`.
pub fn regular_bimodule(
    algebra: &AlgebraTable,
) -> Result<(Arc<AlgebraTable>, Representation), HomologyError> {
    let env = Arc::new(algebra.enveloping()?);
    let rep = Representation::from_parts(
        env.clone(),
        algebra.dim(),
        algebra.regular_bimodule_actions(),
    );
    env.radical()?;
    Ok((env, rep.with_name("A")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quivalg::preset;

    #[test]
    fn principal_ideal_in_truncated_polynomials() {
        let a = Arc::new(preset("truncated-poly(4)").unwrap());
        let x2 = a.basis_element(2);
        assert_eq!(ideal_module(&a, &[x2]).unwrap().dim(), 2);
        assert!(ideal_module(&a, &[a.unit().clone()]).is_err());
        assert!(ideal_module(&a, &[a.zero_element()]).is_err());
    }

    #[test]
    fn radical_powers_of_hopf() {
        let a = Arc::new(preset("hopf-a5-f2").unwrap());
        let dims: Vec<usize> = (0..=5)
            .map(|k| radical_power(&a, k).unwrap().dim())
            .collect();
        assert_eq!(dims, vec![8, 7, 5, 3, 1, 0]);
    }

    #[test]
    fn rigidity_in_truncated_polynomials() {
        let a = Arc::new(preset("truncated-poly(4,F5)").unwrap());
        let budget = SearchBudget::default();
        for k in 1..4 {
            let x = a.radical().unwrap().powers[k - 1].clone();
            let r = check_ideal_rigidity(&a, &x, &budget).unwrap();
            assert!(
                r.holds && r.ext1 > 0 && r.hom_to_quotient > 0,
                "k = {k}: {r:?}"
            );
        }
    }

    #[test]
    fn enveloping_self_extension() {
        let a = preset("truncated-poly(3,F3)").unwrap();
        let (env, bimodule) = regular_bimodule(&a).unwrap();
        assert_eq!(env.dim(), 9);
        let rebuilt = Representation::new(env, bimodule.actions().to_vec(), None).unwrap();
        let ext = super::super::ext_dims(&rebuilt, &rebuilt, 1).unwrap();
        assert!(ext.degree(1) > 0);
    }
}
