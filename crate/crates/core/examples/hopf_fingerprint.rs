//! Syzygies of the trivial module over three local algebras of dimension 8.
//!
//! cargo run --example hopf_fingerprint

use std::sync::Arc;

use domdimlab::homology::{is_isomorphic, syzygy, syzygy_dims, Representation};
use domdimlab::quivalg::{preset, SearchBudget};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["hopf-a5-f2", "dihedral8-f2", "quaternion8-f2"] {
        let a = Arc::new(preset(name)?);
        let s = Representation::simple(&a, 0)?;
        println!(
            "{name:<16} dim {}  syzygies {:?}",
            a.dim(),
            syzygy_dims(&s, 4)?
        );
    }
    let q = Arc::new(preset("quaternion8-f2")?);
    let s = Representation::simple(&q, 0)?;
    let mut omega = s.clone();
    for _ in 0..4 {
        omega = syzygy(&omega)?;
    }
    let periodic = is_isomorphic(&omega, &s, &SearchBudget::default())?;
    println!("quaternion8-f2: fourth syzygy of the simple is the simple: {periodic}");
    Ok(())
}
