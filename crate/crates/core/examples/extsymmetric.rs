//! The preprojective algebra of A2: Ext^1-symmetry, Δ, o_1 and the bound
//! Δ <= o_1 + s - 2.
//!
//! cargo run --example extsymmetric

use std::sync::Arc;

use domdimlab::quivalg::preset;
use domdimlab::rigidity::{verify_extsym_bound, TableOracle};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = Arc::new(preset("preproj-a2")?);
    let oracle = TableOracle::new(&a)?;
    let r = verify_extsym_bound(&oracle, 12)?;
    println!("{}", serde_json::to_string_pretty(&r)?);
    Ok(())
}
