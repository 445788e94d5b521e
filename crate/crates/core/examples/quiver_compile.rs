//! Compile a bounded quiver algebra to a structure-constant table and print
//! it as a table file.
//!
//! cargo run --example quiver_compile

use domdimlab::exactmath::FieldSpec;
use domdimlab::quivalg::json::{AlgebraFile, TableFile};
use domdimlab::quivalg::{compile, ArrowSpec, QuiverSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let arrow = |name: &str, source: &str, target: &str| ArrowSpec {
        name: name.into(),
        source: source.into(),
        target: target.into(),
    };
    // The 2-cycle with both paths of length two killed.
    let spec = QuiverSpec {
        vertices: vec!["e1".into(), "e2".into()],
        arrows: vec![arrow("a", "e1", "e2"), arrow("b", "e2", "e1")],
        relations: vec!["a*b".into(), "b*a".into()],
        loewy_bound: 2,
        field: FieldSpec::Rational,
    };
    let table = compile(&spec)?;
    eprintln!("basis: {:?}", table.basis_names());
    println!(
        "{}",
        AlgebraFile::Table(TableFile::from_table(&table)).to_json()
    );
    Ok(())
}
