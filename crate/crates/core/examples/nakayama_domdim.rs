//! Dominant dimension of the family (n, n+1, ..., n+1) from the closed
//! Kupisch formulas, checked against the linear-algebra engine.
//!
//! cargo run --example nakayama_domdim

use std::sync::Arc;

use domdimlab::exactmath::FieldSpec;
use domdimlab::homology::domdim;
use domdimlab::nakayama::gendo_family;
use domdimlab::quivalg::nakayama_to_table;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 2..=8 {
        let a = gendo_family(n);
        let closed = a.domdim(64);
        let linear = if n <= 5 {
            let t = Arc::new(nakayama_to_table(&a, FieldSpec::Prime(2))?);
            domdim(&t, 64)?.to_string()
        } else {
            "-".into()
        };
        println!(
            "{:<28} dim {:>3}  domdim {closed}  (tables: {linear})",
            a.label(),
            a.dim()
        );
    }
    Ok(())
}
