//! k-rigid modules over a cyclic Nakayama algebra: the largest number of
//! pairwise Ext-orthogonal indecomposables, and the module built from the
//! dual regular module and its syzygies.
//!
//! cargo run --example rigid_modules -- 5,6,6,6,6

use domdimlab::nakayama::NakAlgebra;
use domdimlab::rigidity::{o_k, rigid_sequence_module, NakayamaOracle};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kupisch: Vec<usize> = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "5,6,6,6,6".into())
        .split(',')
        .map(str::parse)
        .collect::<Result<_, _>>()?;
    let a = NakAlgebra::cycle(&kupisch)?;
    let oracle = NakayamaOracle::new(a.clone());
    println!("{}: domdim {}", a.label(), a.domdim(64));
    for k in 1..=3 {
        let r = o_k(&oracle, k)?;
        println!(
            "o_{k} = {:>2}  witness {}",
            r.o_k,
            r.witness_names.join(" + ")
        );
    }
    if !a.is_selfinjective() {
        let s = rigid_sequence_module(&a, 2, 64)?;
        println!(
            "D(A) with its syzygies (q = {}): {} summands, 2-rigid {}",
            s.q,
            s.summands.len(),
            s.rigid
        );
    }
    Ok(())
}
