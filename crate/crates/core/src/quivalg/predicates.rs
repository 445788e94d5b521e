//! Structural predicates: local, selfinjective, symmetric.

use std::sync::Arc;

use num_bigint::BigInt;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactmath::{FieldSpec, Matrix, Scalar, Subspace};
use crate::homology::{projective_injective_vertices, HomologyError};

use super::{AlgebraTable, Decision};

/// Limits of the search for an invertible linear combination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Pseudo-random combinations tried before any exhaustive pass.
    pub random_trials: usize,
    /// Largest number of coefficient vectors an exhaustive pass may visit.
    pub max_combinations: u64,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            random_trials: 32,
            max_combinations: 1 << 14,
            seed: 0x5eed,
        }
    }
}

fn combine(field: FieldSpec, matrices: &[Matrix], coefficients: &[Scalar]) -> Matrix {
    let mut out = Matrix::zeros(field, matrices[0].rows(), matrices[0].cols());
    for (m, c) in matrices.iter().zip(coefficients) {
        if !field.is_zero(c) {
            out.add_scaled(c, m);
        }
    }
    out
}

/// Visits every vector in `{0..base-1}^len` (as integers) until `f` returns true.
fn for_each_grid(len: usize, base: u64, mut f: impl FnMut(&[u64]) -> bool) -> bool {
    let mut digits = vec![0u64; len];
    loop {
        if f(&digits) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == len {
                return false;
            }
            digits[i] += 1;
            if digits[i] < base {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn grid_size(base: u64, len: usize) -> Option<u64> {
    let mut total: u64 = 1;
    for _ in 0..len {
        total = total.checked_mul(base)?;
    }
    Some(total)
}

/// Decides whether some linear combination of the square matrices is
/// invertible, returning its coefficients when one is found.
///
/// `False` is returned only with a proof: a common kernel vector, a
/// deficient joint image, or an exhaustive pass. Over `F_p` the pass covers
/// all of `F_p^h`; over `Q` it covers the grid `{0..n}^h`, on which a nonzero
/// polynomial of degree at most `n` in each variable cannot vanish
/// identically.
pub fn find_invertible_combination(
    matrices: &[Matrix],
    budget: &SearchBudget,
) -> (Decision, Option<Vec<Scalar>>) {
    let Some(first) = matrices.first() else {
        return (Decision::False, None);
    };
    let field = first.field();
    let n = first.rows();
    if matrices.iter().any(|m| m.rows() != n || m.cols() != n) {
        return (Decision::False, None);
    }
    let h = matrices.len();
    let unit = |k: usize| -> Vec<Scalar> {
        (0..h)
            .map(|i| if i == k { field.one() } else { field.zero() })
            .collect()
    };
    if n == 0 {
        return (Decision::True, Some(unit(0)));
    }
    let stacked: Vec<&Matrix> = matrices.iter().collect();
    if Matrix::vstack(&stacked).rank() < n || Matrix::hstack(&stacked).rank() < n {
        return (Decision::False, None);
    }
    for (k, m) in matrices.iter().enumerate() {
        if m.is_invertible() {
            return (Decision::True, Some(unit(k)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.random_trials {
        let coeffs: Vec<Scalar> = (0..h)
            .map(|_| match field {
                FieldSpec::Prime(p) => field.from_i64((rng.next_u64() % p) as i64),
                FieldSpec::Rational => {
                    field.from_i64((rng.next_u64() % (1 << 21)) as i64 - (1 << 20))
                }
            })
            .collect();
        if combine(field, matrices, &coeffs).is_invertible() {
            return (Decision::True, Some(coeffs));
        }
    }
    let base = match field {
        FieldSpec::Prime(p) => p,
        FieldSpec::Rational => n as u64 + 1,
    };
    match grid_size(base, h) {
        Some(total) if total <= budget.max_combinations => {
            let mut found = None;
            for_each_grid(h, base, |digits| {
                let coeffs: Vec<Scalar> = digits
                    .iter()
                    .map(|&d| field.from_bigint(&BigInt::from(d)))
                    .collect();
                if combine(field, matrices, &coeffs).is_invertible() {
                    found = Some(coeffs);
                    return true;
                }
                false
            });
            match found {
                Some(c) => (Decision::True, Some(c)),
                None => (Decision::False, None),
            }
        }
        _ => (Decision::Undetermined, None),
    }
}

/// Exactly one primitive idempotent; with a certified split radical this
/// makes `A / J` the ground field.
pub fn is_local(algebra: &AlgebraTable) -> Result<bool, HomologyError> {
    algebra.radical()?;
    Ok(algebra.vertex_count() == 1)
}

/// Every indecomposable injective `I_v = D(A e_v)` is isomorphic to a
/// projective `e_w A`.
pub fn is_selfinjective(algebra: &Arc<AlgebraTable>) -> Result<bool, HomologyError> {
    Ok(projective_injective_vertices(algebra)?
        .iter()
        .all(Option::is_some))
}

/// Outcome of the search for a symmetrizing form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetricForm {
    pub decision: Decision,
    /// `λ(b_k)` for the witness functional, as scalar strings.
    pub functional: Option<Vec<String>>,
    /// Dimension of the space of functionals vanishing on commutators.
    pub trace_functionals: usize,
}

/// Searches for `λ` with `λ(uv) = λ(vu)` whose form `(x, y) ↦ λ(xy)` is
/// nondegenerate.
pub fn symmetric_form(
    algebra: &Arc<AlgebraTable>,
    budget: &SearchBudget,
) -> Result<SymmetricForm, HomologyError> {
    let refuted = |h| SymmetricForm {
        decision: Decision::False,
        functional: None,
        trace_functionals: h,
    };
    let pi = projective_injective_vertices(algebra)?;
    // Symmetric forces I_v ≅ P_v at every vertex.
    if pi.iter().enumerate().any(|(v, w)| *w != Some(v)) {
        return Ok(refuted(0));
    }
    let d = algebra.dim();
    let field = algebra.field();
    let mut commutators = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let bi = algebra.basis_element(i);
            let bj = algebra.basis_element(j);
            let c = algebra.mul(&bi, &bj).sub(&algebra.mul(&bj, &bi));
            if !c.is_zero() {
                commutators.push(c);
            }
        }
    }
    let span = if commutators.is_empty() {
        Subspace::zero(field, d)
    } else {
        let refs: Vec<&Matrix> = commutators.iter().collect();
        Subspace::column_span(&Matrix::hstack(&refs))
    };
    let functionals = span.basis().transpose().kernel_basis();
    let h = functionals.cols();
    let grams: Vec<Matrix> = (0..h)
        .map(|k| {
            let lambda = functionals.column(k);
            let mut g = Matrix::zeros(field, d, d);
            for i in 0..d {
                for j in 0..d {
                    let mut acc = field.zero();
                    for (t, c) in algebra.basis_product(i, j) {
                        acc = field.add(&acc, &field.mul(c, &lambda.get(*t, 0)));
                    }
                    g.set(i, j, acc);
                }
            }
            g
        })
        .collect();
    let (decision, coeffs) = find_invertible_combination(&grams, budget);
    let functional = coeffs.map(|c| {
        let lambda = functionals.mul(&Matrix::from_column(field, &c));
        (0..d).map(|t| field.format(&lambda.get(t, 0))).collect()
    });
    Ok(SymmetricForm {
        decision,
        functional,
        trace_functionals: h,
    })
}

pub fn is_symmetric(
    algebra: &Arc<AlgebraTable>,
    budget: &SearchBudget,
) -> Result<Decision, HomologyError> {
    Ok(symmetric_form(algebra, budget)?.decision)
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
    fn combination_search() {
        let f = FieldSpec::Prime(2);
        let a = Matrix::from_i64(f, 2, 2, &[1, 0, 0, 0]);
        let b = Matrix::from_i64(f, 2, 2, &[0, 0, 0, 1]);
        let budget = SearchBudget::default();
        let (d, c) = find_invertible_combination(&[a.clone(), b.clone()], &budget);
        assert_eq!(d, Decision::True);
        assert!(combine(f, &[a.clone(), b], &c.unwrap()).is_invertible());
        assert_eq!(
            find_invertible_combination(&[a], &budget).0,
            Decision::False
        );
        assert_eq!(find_invertible_combination(&[], &budget).0, Decision::False);
    }

    #[test]
    fn singular_pencil_over_f2_is_refuted_exhaustively() {
        // [[x, y], [y, x]] over F2 has determinant (x + y)^2; its line x = y
        // contains no invertible matrix.
        let f = FieldSpec::Prime(2);
        let a = Matrix::from_i64(f, 2, 2, &[1, 0, 0, 1]);
        let b = Matrix::from_i64(f, 2, 2, &[0, 1, 1, 0]);
        let budget = SearchBudget::default();
        assert_eq!(
            find_invertible_combination(&[a.clone(), b.clone()], &budget).0,
            Decision::True
        );
        let c = a.add(&b);
        assert_eq!(
            find_invertible_combination(&[c], &budget).0,
            Decision::False
        );
    }

    #[test]
    fn predicates_on_presets() {
        let budget = SearchBudget::default();
        assert!(is_local(&preset("hopf-a5-f2").unwrap()).unwrap());
        let pre = arc(preset("preproj-a2").unwrap());
        assert!(!is_local(&pre).unwrap());
        assert!(is_selfinjective(&pre).unwrap());
        let t = arc(preset("truncated-poly(3,F3)").unwrap());
        assert_eq!(is_symmetric(&t, &budget).unwrap(), Decision::True);
        let line = arc(
            nakayama_to_table(&NakAlgebra::line(&[2, 1]).unwrap(), FieldSpec::Rational).unwrap(),
        );
        assert!(!is_selfinjective(&line).unwrap());
        assert_eq!(is_symmetric(&line, &budget).unwrap(), Decision::False);
    }

    #[test]
    fn symmetric_nakayama_rule() {
        let budget = SearchBudget::default();
        for (kupisch, field, expect) in [
            (vec![3, 3], FieldSpec::Prime(3), Decision::True),
            (vec![4, 4], FieldSpec::Prime(2), Decision::False),
            (vec![2, 2], FieldSpec::Rational, Decision::False),
            (vec![4, 4, 4], FieldSpec::Prime(2), Decision::True),
            (vec![3], FieldSpec::Prime(2), Decision::True),
        ] {
            let a = arc(nakayama_to_table(&NakAlgebra::cycle(&kupisch).unwrap(), field).unwrap());
            assert_eq!(is_symmetric(&a, &budget).unwrap(), expect, "{kupisch:?}");
        }
    }

    #[test]
    fn group_algebras_are_symmetric() {
        let budget = SearchBudget::default();
        for name in ["dihedral8-f2", "quaternion8-f2"] {
            let a = arc(preset(name).unwrap());
            assert_eq!(is_symmetric(&a, &budget).unwrap(), Decision::True, "{name}");
        }
    }
}
