use std::sync::Arc;

use serde::Serialize;

use crate::exactmath::{Matrix, Subspace};
use crate::nakayama::BoundedValue;
use crate::quivalg::{find_invertible_combination, AlgebraTable, Decision, SearchBudget};

use super::hom::{hom_space, OperatorModule};
use super::resolution::Resolution;
use super::{HomologyError, Representation};

/// For each vertex `v`, the vertex `w` with `I_v ≅ P_w` when `I_v` is
/// projective.
///
/// `I_v` is indecomposable, so it is isomorphic to `P_w` exactly when its top
/// is `S_w` and `dim I_v = dim P_w`: the cover `P_w -> I_v` is then a
/// surjection between spaces of equal dimension.
pub fn projective_injective_vertices(
    algebra: &Arc<AlgebraTable>,
) -> Result<Vec<Option<usize>>, HomologyError> {
    let s = algebra.vertex_count();
    let proj_dims: Vec<usize> = (0..s)
        .map(|w| Representation::projective(algebra, w).map(|p| p.dim()))
        .collect::<Result<_, _>>()?;
    (0..s)
        .map(|v| {
            let inj = Representation::injective(algebra, v)?;
            let top = inj.top_vertices();
            Ok(match top.as_slice() {
                [w] if proj_dims[*w] == inj.dim() => Some(*w),
                _ => None,
            })
        })
        .collect()
}

/// Minimal injective coresolution `0 -> M -> I^0 -> I^1 -> ...`, obtained by
/// dualizing a minimal projective resolution of `D M` over the opposite
/// algebra.
#[derive(Clone, Debug)]
pub struct Coresolution {
    dual: Resolution,
}

impl Coresolution {
    /// Vertices `v` of the summands `I_v` of `I^t`.
    pub fn term(&self, t: usize) -> &[usize] {
        self.dual.term(t)
    }

    pub fn computed(&self) -> usize {
        self.dual.computed()
    }

    pub fn is_complete(&self) -> bool {
        self.dual.is_complete()
    }

    /// `dim Ω^{-t} M` starting with `dim M`.
    pub fn cosyzygy_dims(&self) -> &[usize] {
        self.dual.syzygy_dims()
    }

    pub fn extend_to(&mut self, length: usize) {
        self.dual.extend_to(length);
    }
}

pub fn injective_coresolution(m: &Representation, t: usize) -> Result<Coresolution, HomologyError> {
    let mut dual = Resolution::new(&m.dual())?;
    dual.extend_to(t);
    Ok(Coresolution { dual })
}

fn domdim_with(
    m: &Representation,
    cutoff: usize,
    projective_injective: &[Option<usize>],
) -> Result<BoundedValue, HomologyError> {
    let mut co = injective_coresolution(m, 0)?;
    for t in 0..cutoff {
        co.extend_to(t);
        if t >= co.computed() {
            break;
        }
        if co
            .term(t)
            .iter()
            .any(|&v| projective_injective[v].is_none())
        {
            return Ok(BoundedValue::Finite(t));
        }
    }
    Ok(BoundedValue::AtLeast(cutoff))
}

/// Number of initial projective terms in the minimal injective coresolution
/// of `M`; `AtLeast(cutoff)` when none of the first `cutoff` terms is
/// non-projective.
pub fn domdim_module(m: &Representation, cutoff: usize) -> Result<BoundedValue, HomologyError> {
    let pi = projective_injective_vertices(m.algebra())?;
    domdim_with(m, cutoff, &pi)
}

/// Dominant dimension of the algebra: the minimum over its indecomposable
/// projectives.
pub fn domdim(algebra: &Arc<AlgebraTable>, cutoff: usize) -> Result<BoundedValue, HomologyError> {
    algebra.require_nonsemisimple()?;
    let pi = projective_injective_vertices(algebra)?;
    let mut best: Option<BoundedValue> = None;
    for v in 0..algebra.vertex_count() {
        let p = Representation::projective(algebra, v)?;
        let d = domdim_with(&p, cutoff, &pi)?;
        best = Some(best.map_or(d, |b| b.min(d)));
    }
    Ok(best.expect("at least one vertex"))
}

fn first_nonvanishing(
    resolutions: &mut [Resolution],
    targets: &[Representation],
    cutoff: usize,
) -> Result<BoundedValue, HomologyError> {
    for r in 1..cutoff {
        let mut all_complete = true;
        for res in resolutions.iter_mut() {
            res.extend_to(r + 1);
            all_complete &= res.is_complete() && res.computed() <= r;
            for n in targets {
                if res.ext(n, r)? > 0 {
                    return Ok(BoundedValue::Finite(r));
                }
            }
        }
        if all_complete {
            break;
        }
    }
    Ok(BoundedValue::AtLeast(cutoff))
}

/// `φ_M`: the least `r ≥ 1` with `Ext^r(M, M) ≠ 0`.
pub fn phi(m: &Representation, cutoff: usize) -> Result<BoundedValue, HomologyError> {
    let mut res = Resolution::with_length(m, 0)?;
    if res.syzygy_dims()[1] == 0 {
        return Err(HomologyError::ProjectiveModule);
    }
    first_nonvanishing(
        std::slice::from_mut(&mut res),
        std::slice::from_ref(m),
        cutoff,
    )
}

/// Value of `Δ_A` with the status of its witness family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    pub value: BoundedValue,
    /// True when the value is `Δ_A` itself, false when it is only a lower
    /// bound coming from an uncertified witness family.
    pub certified: bool,
    pub selfinjective: bool,
}

/// `Δ_A`. For non-selfinjective algebras this is the least `r ≥ 1` with
/// `Ext^r(D A, A) ≠ 0`. For selfinjective algebras it is the maximum of `φ`
/// over the non-projective `witnesses`; `complete` states that the witnesses
/// contain every non-projective indecomposable.
pub fn delta(
    algebra: &Arc<AlgebraTable>,
    cutoff: usize,
    witnesses: &[Representation],
    complete: bool,
) -> Result<DeltaReport, HomologyError> {
    algebra.require_nonsemisimple()?;
    let pi = projective_injective_vertices(algebra)?;
    if pi.iter().any(Option::is_none) {
        let mut resolutions = (0..algebra.vertex_count())
            .map(|v| Resolution::new(&Representation::injective(algebra, v)?))
            .collect::<Result<Vec<_>, _>>()?;
        let regular = [Representation::regular(algebra)?];
        let value = first_nonvanishing(&mut resolutions, &regular, cutoff)?;
        return Ok(DeltaReport {
            value,
            certified: true,
            selfinjective: false,
        });
    }
    let mut best: Option<BoundedValue> = None;
    for w in witnesses {
        match phi(w, cutoff) {
            Ok(v) => best = Some(best.map_or(v, |b| b.max(v))),
            Err(HomologyError::ProjectiveModule) => continue,
            Err(e) => return Err(e),
        }
    }
    let value = best.ok_or_else(|| {
        HomologyError::Precondition("selfinjective algebra needs a non-projective witness".into())
    })?;
    Ok(DeltaReport {
        value,
        certified: complete,
        selfinjective: true,
    })
}

fn restrict(op: &Matrix, basis: &Matrix, space: &Subspace) -> Matrix {
    space.coords(&op.mul(basis))
}

/// Tests whether `A` is gendo-symmetric: `domdim A ≥ 2` and `D(Ae) ≅ eA` as
/// `(eAe, A)`-bimodules, where `eA` is the sum of the projective-injective
/// indecomposables.
pub fn is_gendo_symmetric(
    algebra: &Arc<AlgebraTable>,
    cutoff: usize,
    budget: &SearchBudget,
) -> Result<Decision, HomologyError> {
    let radical = algebra.require_nonsemisimple()?;
    match domdim(algebra, cutoff.max(2))? {
        BoundedValue::Finite(d) if d < 2 => return Ok(Decision::False),
        _ => {}
    }
    let pi = projective_injective_vertices(algebra)?;
    let s = algebra.vertex_count();
    let mut e = algebra.zero_element();
    let mut pi_vertices: Vec<usize> = pi.iter().flatten().copied().collect();
    pi_vertices.sort_unstable();
    pi_vertices.dedup();
    for &w in &pi_vertices {
        e = e.add(algebra.idempotent(w));
    }
    let left_e = algebra.left_mult_by(&e);
    let right_e = algebra.right_mult_by(&e);
    let ea = Subspace::column_span(&left_e);
    let ae = Subspace::column_span(&right_e);
    if ea.dim() != ae.dim() {
        return Ok(Decision::False);
    }
    let ea_basis = ea.basis();
    let ae_basis = ae.basis();
    let corner = Subspace::column_span(&left_e.mul(&right_e));
    let corner_basis = corner.basis();

    let mut x_proj = Vec::with_capacity(s);
    let mut y_proj = Vec::with_capacity(s);
    for v in 0..s {
        let ev = algebra.idempotent(v);
        x_proj.push(restrict(&algebra.right_mult_by(ev), &ea_basis, &ea));
        y_proj.push(restrict(&algebra.left_mult_by(ev), &ae_basis, &ae).transpose());
    }
    let mut x_ops = Vec::new();
    let mut y_ops = Vec::new();
    for g in &radical.generators {
        x_ops.push(restrict(&algebra.right_mult_by(&g.element), &ea_basis, &ea));
        y_ops.push(restrict(&algebra.left_mult_by(&g.element), &ae_basis, &ae).transpose());
    }
    for k in 0..corner_basis.cols() {
        let beta = corner_basis.column(k);
        x_ops.push(restrict(&algebra.left_mult_by(&beta), &ea_basis, &ea));
        y_ops.push(restrict(&algebra.right_mult_by(&beta), &ae_basis, &ae).transpose());
    }
    let x = OperatorModule {
        dim: ea.dim(),
        projections: x_proj,
        operators: x_ops,
    };
    let y = OperatorModule {
        dim: ae.dim(),
        projections: y_proj,
        operators: y_ops,
    };
    let homs = hom_space(&x, &y);
    Ok(find_invertible_combination(&homs, budget).0)
}
