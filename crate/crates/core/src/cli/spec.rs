//! `--module` specifications.
//!
//! ```text
//! simple[:v]        simple module at vertex v (default 0)
//! projective:v      indecomposable projective e_v A
//! injective:v       indecomposable injective with socle at v
//! dual-regular      D(A), the sum of all indecomposable injectives
//! regular           A itself
//! omega:T:SPEC      T-th syzygy of SPEC
//! pair i,k          the uniserial e_i A / e_i J^k (also pair:i,k)
//! file:PATH         module description file (tables only)
//! ```
//!
//! Vertices are indices; over tables a vertex label is accepted too.

use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use crate::homology::{syzygy, uniserial_module, Representation};
use crate::nakayama::{NakAlgebra, NakModule};
use crate::quivalg::json::ModuleFile;
use crate::quivalg::AlgebraTable;

use super::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    Simple(Option<String>),
    Projective(String),
    Injective(String),
    DualRegular,
    Regular,
    Omega(usize, Box<ModuleSpec>),
    Pair(String, usize),
    File(PathBuf),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl FromStr for ModuleSpec {
    type Err = CliError;

    fn from_str(text: &str) -> Result<Self, CliError> {
        let text = text.trim();
        let (head, rest) = match text.find([':', ' ']) {
            Some(p) => (&text[..p], Some(text[p + 1..].trim())),
            None => (text, None),
        };
        let need = |what: &str| {
            rest.filter(|r| !r.is_empty())
                .ok_or_else(|| usage(format!("`{head}` needs {what}")))
        };
        match head {
            "simple" => Ok(ModuleSpec::Simple(rest.map(str::to_string))),
            "projective" => Ok(ModuleSpec::Projective(need("a vertex")?.to_string())),
            "injective" => Ok(ModuleSpec::Injective(need("a vertex")?.to_string())),
            "dual-regular" if rest.is_none() => Ok(ModuleSpec::DualRegular),
            "regular" if rest.is_none() => Ok(ModuleSpec::Regular),
            "omega" => {
                let body = need("`T:SPEC`")?;
                let (t, inner) = body
                    .split_once(':')
                    .ok_or_else(|| usage("expected omega:T:SPEC"))?;
                let t = t
                    .trim()
                    .parse()
                    .map_err(|_| usage(format!("bad syzygy degree `{t}`")))?;
                Ok(ModuleSpec::Omega(t, Box::new(inner.parse()?)))
            }
            "pair" => {
                let body = need("`i,k`")?;
                let (i, k) = body
                    .split_once(',')
                    .ok_or_else(|| usage("expected pair i,k"))?;
                let k = k
                    .trim()
                    .parse()
                    .map_err(|_| usage(format!("bad length `{k}`")))?;
                Ok(ModuleSpec::Pair(i.trim().to_string(), k))
            }
            "file" => Ok(ModuleSpec::File(PathBuf::from(need("a path")?))),
            _ => Err(usage(format!("unknown module spec `{text}`"))),
        }
    }
}

fn nak_vertex(a: &NakAlgebra, v: &str) -> Result<usize, CliError> {
    match v.parse::<usize>() {
        Ok(i) if i < a.n() => Ok(i),
        _ => Err(usage(format!("vertex `{v}` out of range 0..{}", a.n()))),
    }
}

fn table_vertex(a: &AlgebraTable, v: &str) -> Result<usize, CliError> {
    if let Some(i) = a.vertex_index(v) {
        return Ok(i);
    }
    match v.parse::<usize>() {
        Ok(i) if i < a.vertex_count() => Ok(i),
        _ => Err(usage(format!("unknown vertex `{v}`"))),
    }
}

impl ModuleSpec {
    /// Indecomposable summands over a Nakayama algebra; zero summands are
    /// dropped, and an entirely zero module is an error.
    pub fn nakayama(&self, a: &NakAlgebra) -> Result<Vec<NakModule>, CliError> {
        let out = match self {
            ModuleSpec::Simple(v) => vec![a.simple(nak_vertex(a, v.as_deref().unwrap_or("0"))?)],
            ModuleSpec::Projective(v) => vec![a.projective(nak_vertex(a, v)?)],
            ModuleSpec::Injective(v) => vec![a.injective_of_socle(nak_vertex(a, v)?)],
            ModuleSpec::DualRegular => a.dual_regular(),
            ModuleSpec::Regular => a.projectives(),
            ModuleSpec::Omega(t, inner) => inner
                .nakayama(a)?
                .into_iter()
                .filter_map(|m| a.syzygy_power(m, *t))
                .collect(),
            ModuleSpec::Pair(i, k) => vec![a
                .module(nak_vertex(a, i)?, *k)
                .map_err(|e| usage(e.to_string()))?],
            ModuleSpec::File(_) => return Err(usage("file modules need a table algebra")),
        };
        if out.is_empty() {
            return Err(usage("module spec describes the zero module"));
        }
        Ok(out)
    }

    pub fn table(&self, a: &Arc<AlgebraTable>) -> Result<Representation, CliError> {
        let m = match self {
            ModuleSpec::Simple(v) => {
                Representation::simple(a, table_vertex(a, v.as_deref().unwrap_or("0"))?)?
            }
            ModuleSpec::Projective(v) => Representation::projective(a, table_vertex(a, v)?)?,
            ModuleSpec::Injective(v) => Representation::injective(a, table_vertex(a, v)?)?,
            ModuleSpec::DualRegular => {
                let parts = (0..a.vertex_count())
                    .map(|v| Representation::injective(a, v))
                    .collect::<Result<Vec<_>, _>>()?;
                let refs: Vec<&Representation> = parts.iter().collect();
                Representation::direct_sum(&refs)?.with_name("D(A)")
            }
            ModuleSpec::Regular => Representation::regular(a)?,
            ModuleSpec::Omega(t, inner) => {
                let mut m = inner.table(a)?;
                for _ in 0..*t {
                    m = syzygy(&m)?;
                    if m.is_zero() {
                        return Err(usage("module spec describes the zero module"));
                    }
                }
                m
            }
            ModuleSpec::Pair(i, k) => uniserial_module(a, table_vertex(a, i)?, *k)?,
            ModuleSpec::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| usage(format!("{}: {e}", path.display())))?;
                ModuleFile::parse(&text)
                    .map_err(|e| usage(e.to_string()))?
                    .to_representation(a)?
            }
        };
        if m.is_zero() {
            return Err(usage("module spec describes the zero module"));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(
            "simple".parse::<ModuleSpec>().unwrap(),
            ModuleSpec::Simple(None)
        );
        assert_eq!(
            "simple:2".parse::<ModuleSpec>().unwrap(),
            ModuleSpec::Simple(Some("2".into()))
        );
        assert_eq!(
            "omega:4:dual-regular".parse::<ModuleSpec>().unwrap(),
            ModuleSpec::Omega(4, Box::new(ModuleSpec::DualRegular))
        );
        assert_eq!(
            "pair 1,3".parse::<ModuleSpec>().unwrap(),
            ModuleSpec::Pair("1".into(), 3)
        );
        assert_eq!(
            "pair:1,3".parse::<ModuleSpec>().unwrap(),
            ModuleSpec::Pair("1".into(), 3)
        );
        assert!("projective".parse::<ModuleSpec>().is_err());
        assert!("omega:x:simple".parse::<ModuleSpec>().is_err());
        assert!("bogus".parse::<ModuleSpec>().is_err());
    }

    #[test]
    fn nakayama_evaluation() {
        let a = NakAlgebra::cycle(&[5, 6, 6, 6, 6]).unwrap();
        let d = ModuleSpec::DualRegular.nakayama(&a).unwrap();
        assert_eq!(d.len(), 5);
        let o: ModuleSpec = "omega:4:dual-regular".parse().unwrap();
        assert!(!o.nakayama(&a).unwrap().is_empty());
        let p: ModuleSpec = "omega:1:projective:0".parse().unwrap();
        assert!(p.nakayama(&a).is_err());
    }
}
