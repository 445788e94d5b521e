//! For B = (3,3) and M = B + S_0, the dominant dimension of End_B(M) is one
//! more than the number of vanishing Ext^i(M, M).
//!
//! cargo run --example mueller

use std::sync::Arc;

use domdimlab::exactmath::FieldSpec;
use domdimlab::homology::{domdim, endomorphism_algebra, phi, Representation};
use domdimlab::nakayama::NakAlgebra;
use domdimlab::quivalg::nakayama_to_table;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b = NakAlgebra::cycle(&[3, 3])?;
    let t = Arc::new(nakayama_to_table(&b, FieldSpec::Prime(2))?);
    let summands = vec![
        Representation::projective(&t, 0)?,
        Representation::projective(&t, 1)?,
        Representation::simple(&t, 0)?,
    ];
    let end = Arc::new(endomorphism_algebra(&summands)?);
    let refs: Vec<&Representation> = summands.iter().collect();
    let m = Representation::direct_sum(&refs)?;
    let closed = b.phi(&[b.projective(0), b.projective(1), b.simple(0)], 64)?;
    println!(
        "End_B(M): dim {}, {} simples",
        end.dim(),
        end.vertex_count()
    );
    println!("domdim End_B(M) = {}", domdim(&end, 64)?);
    println!(
        "phi_M = {} (tables), {closed} (Kupisch formulas)",
        phi(&m, 64)?
    );
    Ok(())
}
