//! The preset corpus.
//!
//! | name | algebra |
//! |------|---------|
//! | `hopf-a5-f2` | `F2<a,b>/(a^2, b^2 - aba)`, local of dimension 8 |
//! | `dihedral8-f2` | group algebra of the dihedral group of order 8 over `F2` |
//! | `quaternion8-f2` | group algebra of the quaternion group of order 8 over `F2` |
//! | `preproj-a2` / `preproj-a2(F)` | preprojective algebra of type `A2`, default over `Q` |
//! | `truncated-poly(n,F)` | `F[x]/(x^n)` |
//!
//! The group algebras use the radical generators `x = 1 + g`, `y = 1 + h`
//! for a pair of generators `g, h` of the group.

use crate::exactmath::FieldSpec;

use super::{compile, AlgebraTable, ArrowSpec, QuivalgError, QuiverSpec};

pub fn preset_names() -> Vec<&'static str> {
    vec![
        "hopf-a5-f2",
        "dihedral8-f2",
        "quaternion8-f2",
        "preproj-a2",
        "truncated-poly(n,F)",
    ]
}

fn loops(names: &[&str], relations: &[&str], bound: usize, field: FieldSpec) -> QuiverSpec {
    QuiverSpec {
        vertices: vec!["e".into()],
        arrows: names
            .iter()
            .map(|n| ArrowSpec {
                name: n.to_string(),
                source: "e".into(),
                target: "e".into(),
            })
            .collect(),
        relations: relations.iter().map(|r| r.to_string()).collect(),
        loewy_bound: bound,
        field,
    }
}

fn split_args(name: &str) -> Result<(&str, Vec<&str>), QuivalgError> {
    let name = name.trim();
    match name.find('(') {
        None => Ok((name, Vec::new())),
        Some(open) => {
            let inner = name[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| QuivalgError::UnknownPreset(name.to_string()))?;
            Ok((&name[..open], inner.split(',').map(str::trim).collect()))
        }
    }
}

fn parse_field(text: &str, whole: &str) -> Result<FieldSpec, QuivalgError> {
    text.parse::<FieldSpec>()
        .map_err(|_| QuivalgError::UnknownPreset(whole.to_string()))
}

/// The quiver description behind a preset.
pub fn preset_quiver(name: &str) -> Result<QuiverSpec, QuivalgError> {
    let (base, args) = split_args(name)?;
    let unknown = || QuivalgError::UnknownPreset(name.to_string());
    let f2 = FieldSpec::Prime(2);
    match (base, args.len()) {
        ("hopf-a5-f2", 0) => Ok(loops(&["a", "b"], &["a*a", "b*b - a*b*a"], 5, f2)),
        ("dihedral8-f2", 0) => Ok(loops(
            &["x", "y"],
            &["x*x", "y*y", "x*y*x*y - y*x*y*x"],
            5,
            f2,
        )),
        // x = 1 + i, y = 1 + j for the quaternion units i, j.
        ("quaternion8-f2", 0) => Ok(loops(
            &["x", "y"],
            &[
                "x*x + x*y + y*x + x*y*x",
                "y*y + x*y + y*x + y*x*y",
                "x*y*x*y + y*x*y*x",
            ],
            5,
            f2,
        )),
        ("preproj-a2", 0 | 1) => {
            let field = match args.first() {
                Some(f) => parse_field(f, name)?,
                None => FieldSpec::Rational,
            };
            Ok(QuiverSpec {
                vertices: vec!["e1".into(), "e2".into()],
                arrows: vec![
                    ArrowSpec {
                        name: "alpha".into(),
                        source: "e1".into(),
                        target: "e2".into(),
                    },
                    ArrowSpec {
                        name: "alpha_star".into(),
                        source: "e2".into(),
                        target: "e1".into(),
                    },
                ],
                relations: vec!["alpha*alpha_star".into(), "alpha_star*alpha".into()],
                loewy_bound: 2,
                field,
            })
        }
        ("truncated-poly", 1 | 2) => {
            let n: usize = args[0].parse().map_err(|_| unknown())?;
            if n < 2 {
                return Err(unknown());
            }
            let field = match args.get(1) {
                Some(f) => parse_field(f, name)?,
                None => FieldSpec::Rational,
            };
            let rel = vec!["x"; n].join("*");
            Ok(loops(&["x"], &[&rel], n, field))
        }
        _ => Err(unknown()),
    }
}

pub fn preset(name: &str) -> Result<AlgebraTable, QuivalgError> {
    let mut table = compile(&preset_quiver(name)?)?;
    table.set_provenance(format!("preset {}", name.trim()));
    Ok(table)
}
