//! Ext^1 of the radical powers of k[x]/(x^n), and Ext^1 of A over its
//! enveloping algebra.
//!
//! cargo run --example ideal_rigidity

use std::sync::Arc;

use domdimlab::homology::{check_ideal_rigidity, regular_bimodule, Resolution};
use domdimlab::quivalg::{preset, SearchBudget};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = SearchBudget::default();
    for n in 3..=6 {
        let a = Arc::new(preset(&format!("truncated-poly({n},Q)"))?);
        let powers = a.radical()?.powers.clone();
        let ext: Vec<usize> = (1..n)
            .map(|k| check_ideal_rigidity(&a, &powers[k - 1], &budget).map(|r| r.ext1))
            .collect::<Result<_, _>>()?;
        println!(
            "k[x]/(x^{n}): dim Ext^1(J^k, J^k) for k = 1..{} is {ext:?}",
            n - 1
        );
    }
    for field in ["F2", "F3", "Q"] {
        let a = preset(&format!("truncated-poly(3,{field})"))?;
        let (_, bimodule) = regular_bimodule(&a)?;
        let ext1 = Resolution::with_length(&bimodule, 2)?.ext(&bimodule, 1)?;
        println!("{field}[x]/(x^3): dim Ext^1 over the enveloping algebra = {ext1}");
    }
    Ok(())
}
