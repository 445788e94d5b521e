//! Compare dim Hom and dim Ext^t computed by the Kupisch formulas with the
//! same numbers from explicit projective resolutions.
//!
//! cargo run --example dual_oracle -- 3,4,4

use std::sync::Arc;

use domdimlab::exactmath::FieldSpec;
use domdimlab::homology::{nakayama_indecomposables, Resolution};
use domdimlab::nakayama::NakAlgebra;
use domdimlab::quivalg::nakayama_to_table;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kupisch: Vec<usize> = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "3,4,4".into())
        .split(',')
        .map(str::parse)
        .collect::<Result<_, _>>()?;
    let a = NakAlgebra::cycle(&kupisch)?;
    let t = Arc::new(nakayama_to_table(&a, FieldSpec::Prime(3))?);
    let reps = nakayama_indecomposables(&t)?;
    let mods = a.indecomposables();
    let mut agree = 0;
    for (x, &mx) in reps.iter().zip(&mods) {
        let res = Resolution::with_length(x, 4)?;
        for (y, &my) in reps.iter().zip(&mods) {
            let linear = res.ext_dims(y, 3)?.dims;
            let closed: Vec<usize> = std::iter::once(a.dim_hom(mx, my))
                .chain((1..=3).map(|s| a.dim_ext(s, mx, my)))
                .collect();
            if linear == closed {
                agree += 1;
            } else {
                println!("{mx} -> {my}: tables {linear:?}, formulas {closed:?}");
            }
        }
    }
    println!(
        "{}: {agree} of {} pairs agree",
        a.label(),
        mods.len() * mods.len()
    );
    Ok(())
}
