//! Compilation of a bounded quiver with relations into an [`AlgebraTable`].
//!
//! Paths compose left to right. The path space up to the Loewy bound `L` is
//! enumerated in degree-lexicographic order (arrow order = declaration
//! order), the span of all `p·r·q` truncated at length `L` is row reduced with
//! the largest monomials first, and the non-pivot monomials form the basis.
//! Every path of length `L` must reduce to zero; this certifies `J^L = 0`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::exactmath::{FieldSpec, Matrix, Scalar};

use super::{AlgebraTable, Idempotent, QuivalgError, RelationExpr};

/// Largest number of paths of length at most `L` a compilation may enumerate.
pub const PATH_LIMIT: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    pub relations: Vec<String>,
    pub loewy_bound: usize,
    pub field: FieldSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Path {
    source: usize,
    arrows: Vec<usize>,
}

/// A linear combination of paths.
type LinearPaths = Vec<(Path, Scalar)>;

#[derive(Clone, Copy)]
enum Item {
    Vertex(usize),
    Arrow(usize),
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl QuiverSpec {
    pub fn validate(&self) -> Result<(), QuivalgError> {
        if self.vertices.is_empty() {
            return Err(QuivalgError::InvalidQuiver("no vertices".into()));
        }
        if self.loewy_bound < 2 {
            return Err(QuivalgError::InvalidQuiver(
                "Loewy bound must be at least 2".into(),
            ));
        }
        if !self.field.is_valid() {
            return Err(QuivalgError::InvalidQuiver(format!(
                "invalid field {:?}",
                self.field
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for name in self
            .vertices
            .iter()
            .chain(self.arrows.iter().map(|a| &a.name))
        {
            if !is_identifier(name) {
                return Err(QuivalgError::InvalidQuiver(format!(
                    "`{name}` is not an identifier"
                )));
            }
            if !seen.insert(name.as_str()) {
                return Err(QuivalgError::InvalidQuiver(format!(
                    "duplicate name `{name}`"
                )));
            }
        }
        for a in &self.arrows {
            for end in [&a.source, &a.target] {
                if !self.vertices.contains(end) {
                    return Err(QuivalgError::InvalidQuiver(format!(
                        "arrow `{}` uses unknown vertex `{end}`",
                        a.name
                    )));
                }
            }
        }
        Ok(())
    }

    fn vertex(&self, name: &str) -> usize {
        self.vertices
            .iter()
            .position(|v| v == name)
            .expect("validated")
    }

    fn source(&self, arrow: usize) -> usize {
        self.vertex(&self.arrows[arrow].source)
    }

    fn target(&self, arrow: usize) -> usize {
        self.vertex(&self.arrows[arrow].target)
    }

    fn path_target(&self, p: &Path) -> usize {
        p.arrows.last().map_or(p.source, |&a| self.target(a))
    }

    fn item(&self, name: &str) -> Result<Item, QuivalgError> {
        if let Some(v) = self.vertices.iter().position(|v| v == name) {
            return Ok(Item::Vertex(v));
        }
        if let Some(a) = self.arrows.iter().position(|a| a.name == name) {
            return Ok(Item::Arrow(a));
        }
        Err(QuivalgError::UnknownName(name.to_string()))
    }

    fn path_name(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            self.vertices[p.source].clone()
        } else {
            let names: Vec<&str> = p
                .arrows
                .iter()
                .map(|&a| self.arrows[a].name.as_str())
                .collect();
            names.join("*")
        }
    }

    /// Binds names and reduces coefficients into the field.
    fn resolve(&self, expr: &RelationExpr) -> Result<Vec<(Path, Scalar)>, QuivalgError> {
        let field = self.field;
        let mut out: Vec<(Path, Scalar)> = Vec::new();
        for term in &expr.terms {
            let mut path: Option<Path> = None;
            for name in &term.path {
                let item = self.item(name)?;
                path = Some(match (path, item) {
                    (None, Item::Vertex(v)) => Path {
                        source: v,
                        arrows: vec![],
                    },
                    (None, Item::Arrow(a)) => Path {
                        source: self.source(a),
                        arrows: vec![a],
                    },
                    (Some(p), Item::Vertex(v)) => {
                        if self.path_target(&p) != v {
                            return Err(QuivalgError::NonComposable(term.path.join("*")));
                        }
                        p
                    }
                    (Some(mut p), Item::Arrow(a)) => {
                        if self.path_target(&p) != self.source(a) {
                            return Err(QuivalgError::NonComposable(term.path.join("*")));
                        }
                        p.arrows.push(a);
                        p
                    }
                });
            }
            let path = path.expect("terms are nonempty");
            let c = field.from_bigint(&term.coefficient);
            match out.iter_mut().find(|(q, _)| *q == path) {
                Some((_, acc)) => *acc = field.add(acc, &c),
                None => out.push((path, c)),
            }
        }
        out.retain(|(_, c)| !field.is_zero(c));
        Ok(out)
    }
}

/// Compiles `spec` into a validated table.
pub fn compile(spec: &QuiverSpec) -> Result<AlgebraTable, QuivalgError> {
    spec.validate()?;
    let field = spec.field;
    let bound = spec.loewy_bound;
    let nv = spec.vertices.len();

    let mut components: Vec<LinearPaths> = Vec::new();
    for text in &spec.relations {
        let expr = RelationExpr::parse(text)?;
        let resolved = spec.resolve(&expr)?;
        if resolved.is_empty() {
            return Err(QuivalgError::DegenerateRelation(text.clone()));
        }
        // e_s r e_t lies in the ideal, so uniform components suffice.
        let mut by_ends: Vec<((usize, usize), LinearPaths)> = Vec::new();
        for (p, c) in resolved {
            let key = (p.source, spec.path_target(&p));
            match by_ends.iter_mut().find(|(k, _)| *k == key) {
                Some((_, v)) => v.push((p, c)),
                None => by_ends.push((key, vec![(p, c)])),
            }
        }
        components.extend(by_ends.into_iter().map(|(_, v)| v));
    }

    let mut paths: Vec<Path> = (0..nv)
        .map(|v| Path {
            source: v,
            arrows: vec![],
        })
        .collect();
    let mut level_start = 0;
    for _ in 0..bound {
        let level_end = paths.len();
        for idx in level_start..level_end {
            let t = spec.path_target(&paths[idx]);
            for a in 0..spec.arrows.len() {
                if spec.source(a) == t {
                    let mut p = paths[idx].clone();
                    p.arrows.push(a);
                    paths.push(p);
                }
            }
            if paths.len() > PATH_LIMIT {
                return Err(QuivalgError::SizeLimit {
                    what: "path enumeration".into(),
                    needed: paths.len(),
                    limit: PATH_LIMIT,
                });
            }
        }
        level_start = level_end;
    }
    let n = paths.len();
    let index: HashMap<Path, usize> = paths.iter().cloned().zip(0..).collect();
    // Largest monomials first so that pivots are leading terms.
    let col = |idx: usize| n - 1 - idx;

    let concat = |p: &Path, q: &Path| -> Path {
        let mut arrows = p.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        Path {
            source: p.source,
            arrows,
        }
    };

    let mut ending_at: Vec<Vec<usize>> = vec![Vec::new(); nv];
    let mut starting_at: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (idx, p) in paths.iter().enumerate() {
        ending_at[spec.path_target(p)].push(idx);
        starting_at[p.source].push(idx);
    }

    let mut echelon = Matrix::zeros(field, 0, n);
    let mut batch: Vec<Vec<Scalar>> = Vec::new();
    let flush = |echelon: &mut Matrix, batch: &mut Vec<Vec<Scalar>>| -> Result<(), QuivalgError> {
        if batch.is_empty() {
            return Ok(());
        }
        let fresh = Matrix::from_rows(field, batch)?;
        let r = Matrix::vstack(&[echelon, &fresh]).rref();
        *echelon = r.matrix.block(0, 0, r.rank, n);
        batch.clear();
        Ok(())
    };
    for comp in &components {
        let s = comp[0].0.source;
        let t = spec.path_target(&comp[0].0);
        let min_len = comp.iter().map(|(p, _)| p.arrows.len()).min().unwrap_or(0);
        if min_len > bound {
            continue;
        }
        for &pi in &ending_at[s] {
            let p = &paths[pi];
            if p.arrows.len() + min_len > bound {
                continue;
            }
            for &qi in &starting_at[t] {
                let q = &paths[qi];
                if p.arrows.len() + q.arrows.len() + min_len > bound {
                    continue;
                }
                let mut row = vec![field.zero(); n];
                let mut nonzero = false;
                for (m, c) in comp {
                    let len = p.arrows.len() + m.arrows.len() + q.arrows.len();
                    if len > bound {
                        continue;
                    }
                    let full = concat(&concat(p, m), q);
                    let k = col(index[&full]);
                    row[k] = field.add(&row[k], c);
                    nonzero = true;
                }
                if nonzero {
                    batch.push(row);
                    if batch.len() >= 256 {
                        flush(&mut echelon, &mut batch)?;
                    }
                }
            }
        }
    }
    flush(&mut echelon, &mut batch)?;

    let mut pivot_row: HashMap<usize, usize> = HashMap::new();
    for r in 0..echelon.rows() {
        let c = (0..n)
            .find(|&c| !echelon.is_entry_zero(r, c))
            .expect("rref rows are nonzero");
        pivot_row.insert(c, r);
    }

    for (idx, p) in paths.iter().enumerate() {
        if p.arrows.len() != bound {
            continue;
        }
        let ok = pivot_row
            .get(&col(idx))
            .is_some_and(|&r| (0..n).filter(|&c| !echelon.is_entry_zero(r, c)).count() == 1);
        if !ok {
            return Err(QuivalgError::LoewyBound {
                bound,
                path: spec.path_name(p),
            });
        }
    }

    let basis_paths: Vec<usize> = (0..n)
        .filter(|&idx| paths[idx].arrows.len() < bound && !pivot_row.contains_key(&col(idx)))
        .collect();
    if basis_paths.is_empty() {
        return Err(QuivalgError::EmptyQuotient);
    }
    let d = basis_paths.len();
    let position: HashMap<usize, usize> = basis_paths
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i))
        .collect();

    let normal_form = |idx: usize| -> Vec<(usize, Scalar)> {
        if paths[idx].arrows.len() >= bound {
            return Vec::new();
        }
        if let Some(&pos) = position.get(&idx) {
            return vec![(pos, field.one())];
        }
        let r = pivot_row[&col(idx)];
        let mut out = Vec::new();
        for c in 0..n {
            if c == col(idx) || echelon.is_entry_zero(r, c) {
                continue;
            }
            let other = n - 1 - c;
            let pos = position[&other];
            out.push((pos, field.neg(&echelon.get(r, c))));
        }
        out
    };
    let as_column = |entries: &[(usize, Scalar)]| -> Matrix {
        let mut m = Matrix::zeros(field, d, 1);
        for (k, c) in entries {
            m.set(*k, 0, c.clone());
        }
        m
    };

    let mut products = Vec::with_capacity(d * d);
    for &u in &basis_paths {
        for &w in &basis_paths {
            let (pu, pw) = (&paths[u], &paths[w]);
            if spec.path_target(pu) != pw.source || pu.arrows.len() + pw.arrows.len() >= bound {
                products.push(Vec::new());
                continue;
            }
            products.push(normal_form(index[&concat(pu, pw)]));
        }
    }

    let mut idempotents = Vec::with_capacity(nv);
    let mut unit = Matrix::zeros(field, d, 1);
    let mut named = Vec::new();
    for v in 0..nv {
        let e = as_column(&normal_form(v));
        if e.is_zero() {
            return Err(QuivalgError::InvalidQuiver(format!(
                "vertex `{}` lies in the ideal",
                spec.vertices[v]
            )));
        }
        unit = unit.add(&e);
        named.push((spec.vertices[v].clone(), e.clone()));
        idempotents.push(Idempotent {
            label: spec.vertices[v].clone(),
            element: e,
        });
    }
    for (a, arrow) in spec.arrows.iter().enumerate() {
        let p = Path {
            source: spec.source(a),
            arrows: vec![a],
        };
        named.push((arrow.name.clone(), as_column(&normal_form(index[&p]))));
    }

    let basis = basis_paths
        .iter()
        .map(|&i| spec.path_name(&paths[i]))
        .collect();
    let table = AlgebraTable::new(field, basis, products, unit, idempotents, "compiled quiver")?;
    Ok(table.with_named(named))
}
