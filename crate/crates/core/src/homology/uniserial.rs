use std::sync::Arc;

use crate::quivalg::AlgebraTable;

use super::{HomologyError, Representation};

/// `P_v / P_v J^k`.
pub fn uniserial_module(
    algebra: &Arc<AlgebraTable>,
    v: usize,
    k: usize,
) -> Result<Representation, HomologyError> {
    let p = Representation::projective(algebra, v)?;
    let series = p.radical_series();
    if k == 0 || k >= series.len() {
        return Err(HomologyError::InvalidModule(format!(
            "length {k} outside 1..={} at vertex {v}",
            series.len() - 1
        )));
    }
    let label = &algebra.vertex_labels()[v];
    Ok(p.quotient_unchecked(&series[k])
        .with_name(format!("M({label},{k})")))
}

fn uniserial_lengths(algebra: &Arc<AlgebraTable>) -> Result<Vec<usize>, HomologyError> {
    (0..algebra.vertex_count())
        .map(|v| {
            let series = Representation::projective(algebra, v)?.radical_series();
            if series.windows(2).any(|w| w[0].dim() != w[1].dim() + 1) {
                return Err(HomologyError::NotNakayama(format!(
                    "projective at `{}` is not uniserial",
                    algebra.vertex_labels()[v]
                )));
            }
            Ok(series.len() - 1)
        })
        .collect()
}

/// Every indecomposable module, certified complete: when all indecomposable
/// projectives on both sides are uniserial the algebra is a Nakayama algebra,
/// and its indecomposables are exactly the quotients `P_v / P_v J^k`.
/// Ordered by vertex, then by length.
pub fn nakayama_indecomposables(
    algebra: &Arc<AlgebraTable>,
) -> Result<Vec<Representation>, HomologyError> {
    algebra.require_nonsemisimple()?;
    let lengths = uniserial_lengths(algebra)?;
    uniserial_lengths(&algebra.opposite())?;
    let mut out = Vec::new();
    for (v, &len) in lengths.iter().enumerate() {
        for k in 1..=len {
            out.push(uniserial_module(algebra, v, k)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quivalg::preset;

    #[test]
    fn preprojective_has_four_indecomposables() {
        let a = Arc::new(preset("preproj-a2").unwrap());
        let list = nakayama_indecomposables(&a).unwrap();
        let dims: Vec<usize> = list.iter().map(Representation::dim).collect();
        assert_eq!(dims, vec![1, 2, 1, 2]);
    }

    #[test]
    fn wild_local_algebra_is_rejected() {
        let a = Arc::new(preset("hopf-a5-f2").unwrap());
        assert!(matches!(
            nakayama_indecomposables(&a),
            Err(HomologyError::NotNakayama(_))
        ));
    }
}
