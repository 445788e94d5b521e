use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::exactmath::{FieldSpec, Matrix, Scalar, Subspace};

use super::{QuivalgError, RelationExpr};

/// Largest admissible dimension of an enveloping algebra `A ⊗ A^op`.
pub const ENVELOPING_LIMIT: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Idempotent {
    pub label: String,
    /// Coordinates as a `d x 1` column.
    pub element: Matrix,
}

/// A degree-one generator `g ∈ e_source J e_target` of the radical modulo
/// its square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub source: usize,
    pub target: usize,
    pub element: Matrix,
}

/// Certified Jacobson radical data.
#[derive(Clone, Debug)]
pub struct RadicalData {
    /// `J`, then `J^2`, ..., up to the last nonzero power.
    pub powers: Vec<Subspace>,
    pub loewy_length: usize,
    pub generators: Vec<Generator>,
}

impl RadicalData {
    pub fn radical(&self) -> Option<&Subspace> {
        self.powers.first()
    }

    pub fn dim(&self) -> usize {
        self.powers.first().map_or(0, Subspace::dim)
    }
}

/// A finite-dimensional associative unital algebra given by a basis and
/// sparse structure constants, with an ordered complete set of orthogonal
/// idempotents (one per vertex).
pub struct AlgebraTable {
    field: FieldSpec,
    basis: Vec<String>,
    /// `products[i * d + j]` lists `(k, c)` with `b_i b_j = Σ c b_k`, sorted by `k`.
    products: Vec<Vec<(usize, Scalar)>>,
    unit: Matrix,
    idempotents: Vec<Idempotent>,
    named: Vec<(String, Matrix)>,
    provenance: String,
    right: OnceLock<Vec<Matrix>>,
    radical: OnceLock<Result<RadicalData, QuivalgError>>,
    opposite: OnceLock<Arc<AlgebraTable>>,
}

impl Clone for AlgebraTable {
    fn clone(&self) -> Self {
        AlgebraTable {
            field: self.field,
            basis: self.basis.clone(),
            products: self.products.clone(),
            unit: self.unit.clone(),
            idempotents: self.idempotents.clone(),
            named: self.named.clone(),
            provenance: self.provenance.clone(),
            right: self.right.clone(),
            radical: self.radical.clone(),
            opposite: OnceLock::new(),
        }
    }
}

impl PartialEq for AlgebraTable {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.basis == other.basis
            && self.products == other.products
            && self.unit == other.unit
            && self.idempotents == other.idempotents
    }
}

impl Eq for AlgebraTable {}

impl fmt::Debug for AlgebraTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraTable")
            .field("field", &self.field)
            .field("dim", &self.dim())
            .field("vertices", &self.vertex_labels())
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl AlgebraTable {
    /// Builds and validates a table. Structure constants are normalized
    /// (merged, zero entries dropped, sorted).
    pub fn new(
        field: FieldSpec,
        basis: Vec<String>,
        products: Vec<Vec<(usize, Scalar)>>,
        unit: Matrix,
        idempotents: Vec<Idempotent>,
        provenance: impl Into<String>,
    ) -> Result<Self, QuivalgError> {
        let d = basis.len();
        if d == 0 {
            return Err(QuivalgError::EmptyQuotient);
        }
        if products.len() != d * d {
            return Err(QuivalgError::Axiom(format!(
                "expected {} basis products, found {}",
                d * d,
                products.len()
            )));
        }
        let products = products
            .into_iter()
            .map(|entries| normalize_sparse(field, d, entries))
            .collect::<Result<Vec<_>, _>>()?;
        for m in std::iter::once(&unit).chain(idempotents.iter().map(|e| &e.element)) {
            if m.rows() != d || m.cols() != 1 || m.field() != field {
                return Err(QuivalgError::Axiom(
                    "element has the wrong shape or field".into(),
                ));
            }
        }
        let table = AlgebraTable {
            field,
            basis,
            products,
            unit,
            idempotents,
            named: Vec::new(),
            provenance: provenance.into(),
            right: OnceLock::new(),
            radical: OnceLock::new(),
            opposite: OnceLock::new(),
        };
        table.check_axioms()?;
        Ok(table)
    }

    /// Attaches named elements (vertices and arrows for compiled tables).
    pub fn with_named(mut self, named: Vec<(String, Matrix)>) -> Self {
        self.named = named;
        self
    }

    fn check_axioms(&self) -> Result<(), QuivalgError> {
        let d = self.dim();
        let field = self.field;
        for i in 0..d {
            let e = self.basis_element(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(QuivalgError::Axiom(format!(
                    "unit does not act trivially on `{}`",
                    self.basis[i]
                )));
            }
        }
        // (b_i b_j) b_l = b_i (b_j b_l), accumulated densely per pair (i, j).
        for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    let mut lhs = vec![field.zero(); d];
                    for (k, c) in &self.products[i * d + j] {
                        for (m, c2) in &self.products[k * d + l] {
                            lhs[*m] = field.add(&lhs[*m], &field.mul(c, c2));
                        }
                    }
                    let mut rhs = vec![field.zero(); d];
                    for (k, c) in &self.products[j * d + l] {
                        for (m, c2) in &self.products[i * d + k] {
                            rhs[*m] = field.add(&rhs[*m], &field.mul(c, c2));
                        }
                    }
                    if lhs != rhs {
                        return Err(QuivalgError::Axiom(format!(
                            "associativity fails on ({}, {}, {})",
                            self.basis[i], self.basis[j], self.basis[l]
                        )));
                    }
                }
            }
        }
        if self.idempotents.is_empty() {
            return Err(QuivalgError::Axiom("no idempotents".into()));
        }
        let mut sum = Matrix::zeros(field, d, 1);
        for (a, ea) in self.idempotents.iter().enumerate() {
            if ea.element.is_zero() {
                return Err(QuivalgError::Axiom(format!(
                    "idempotent `{}` is zero",
                    ea.label
                )));
            }
            for (b, eb) in self.idempotents.iter().enumerate() {
                let p = self.mul(&ea.element, &eb.element);
                let expected = if a == b {
                    ea.element.clone()
                } else {
                    Matrix::zeros(field, d, 1)
                };
                if p != expected {
                    return Err(QuivalgError::Axiom(format!(
                        "idempotents `{}` and `{}` are not orthogonal idempotents",
                        ea.label, eb.label
                    )));
                }
            }
            sum = sum.add(&ea.element);
        }
        if sum != self.unit {
            return Err(QuivalgError::Axiom(
                "idempotents do not sum to the unit".into(),
            ));
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn set_provenance(&mut self, p: impl Into<String>) {
        self.provenance = p.into();
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dim() + j]
    }

    pub fn unit(&self) -> &Matrix {
        &self.unit
    }

    pub fn idempotents(&self) -> &[Idempotent] {
        &self.idempotents
    }

    pub fn vertex_count(&self) -> usize {
        self.idempotents.len()
    }

    pub fn vertex_labels(&self) -> Vec<String> {
        self.idempotents.iter().map(|e| e.label.clone()).collect()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.idempotents.iter().position(|e| e.label == label)
    }

    pub fn idempotent(&self, v: usize) -> &Matrix {
        &self.idempotents[v].element
    }

    pub fn named_elements(&self) -> &[(String, Matrix)] {
        &self.named
    }

    pub fn named(&self, name: &str) -> Option<&Matrix> {
        self.named.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn basis_element(&self, i: usize) -> Matrix {
        Matrix::unit_vector(self.field, self.dim(), i)
    }

    pub fn zero_element(&self) -> Matrix {
        Matrix::zeros(self.field, self.dim(), 1)
    }

    pub fn mul(&self, x: &Matrix, y: &Matrix) -> Matrix {
        let d = self.dim();
        let field = self.field;
        let xs = x.column_entries(0);
        let ys = y.column_entries(0);
        let mut out = vec![field.zero(); d];
        for (i, xi) in xs.iter().enumerate() {
            if field.is_zero(xi) {
                continue;
            }
            for (j, yj) in ys.iter().enumerate() {
                if field.is_zero(yj) {
                    continue;
                }
                let c = field.mul(xi, yj);
                for (k, s) in &self.products[i * d + j] {
                    out[*k] = field.add(&out[*k], &field.mul(&c, s));
                }
            }
        }
        Matrix::from_column(field, &out)
    }

    /// Right multiplication by basis elements: column `k` of `R_j` holds `b_k b_j`.
    pub fn right_mult(&self) -> &[Matrix] {
        self.right.get_or_init(|| {
            let d = self.dim();
            (0..d)
                .map(|j| {
                    let mut m = Matrix::zeros(self.field, d, d);
                    for k in 0..d {
                        for (t, c) in &self.products[k * d + j] {
                            m.set(*t, k, c.clone());
                        }
                    }
                    m
                })
                .collect()
        })
    }

    /// Matrix of `v ↦ v x`.
    pub fn right_mult_by(&self, x: &Matrix) -> Matrix {
        self.mult_matrix(x, false)
    }

    /// Matrix of `v ↦ x v`.
    pub fn left_mult_by(&self, x: &Matrix) -> Matrix {
        self.mult_matrix(x, true)
    }

    fn mult_matrix(&self, x: &Matrix, left: bool) -> Matrix {
        let d = self.dim();
        let field = self.field;
        let xs = x.column_entries(0);
        let mut out = Matrix::zeros(field, d, d);
        for k in 0..d {
            for (j, xj) in xs.iter().enumerate() {
                if field.is_zero(xj) {
                    continue;
                }
                let entries = if left {
                    &self.products[j * d + k]
                } else {
                    &self.products[k * d + j]
                };
                for (t, c) in entries {
                    out.add_to(*t, k, &field.mul(xj, c));
                }
            }
        }
        out
    }

    /// Evaluates an expression whose names are named elements of the table.
    pub fn evaluate(&self, expr: &RelationExpr) -> Result<Matrix, QuivalgError> {
        let mut total = self.zero_element();
        for term in &expr.terms {
            let mut value = self.unit.clone();
            for name in &term.path {
                let factor = self
                    .named(name)
                    .ok_or_else(|| QuivalgError::UnknownName(name.clone()))?;
                value = self.mul(&value, factor);
            }
            let c = self.field.from_bigint(&term.coefficient);
            total.add_scaled(&c, &value);
        }
        Ok(total)
    }

    /// Two-sided Peirce space `e_a A e_b` as a subspace of `A`.
    pub fn peirce(&self, a: usize, b: usize) -> Subspace {
        let p = self
            .left_mult_by(&self.idempotents[a].element)
            .mul(&self.right_mult_by(&self.idempotents[b].element));
        Subspace::column_span(&p)
    }

    /// The Jacobson radical, certified: a two-sided nilpotent ideal of
    /// codimension equal to the number of idempotents.
    pub fn radical(&self) -> Result<&RadicalData, QuivalgError> {
        self.radical
            .get_or_init(|| self.compute_radical())
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn is_semisimple(&self) -> Result<bool, QuivalgError> {
        Ok(self.radical()?.dim() == 0)
    }

    /// Errors unless the radical is nonzero.
    pub fn require_nonsemisimple(&self) -> Result<&RadicalData, QuivalgError> {
        let r = self.radical()?;
        if r.dim() == 0 {
            return Err(QuivalgError::Semisimple);
        }
        Ok(r)
    }

    fn compute_radical(&self) -> Result<RadicalData, QuivalgError> {
        let d = self.dim();
        let field = self.field;
        let s = self.vertex_count();
        let mut pieces = Vec::new();
        let mut peirce = vec![Vec::new(); s];
        for a in 0..s {
            for b in 0..s {
                peirce[a].push(self.peirce(a, b));
            }
        }
        let mut local_radicals = Vec::new();
        for a in 0..s {
            let corner = &peirce[a][a];
            let basis = corner.basis();
            let m = corner.dim();
            let mut lambda = Matrix::zeros(field, 1, m);
            for k in 0..m {
                let u = basis.column(k);
                let action = corner.coords(&self.left_mult_by(&u).mul(&basis));
                let value = action.single_eigenvalue().ok_or_else(|| {
                    QuivalgError::NotSplitBasic(format!(
                        "corner algebra at `{}` is not split local",
                        self.idempotents[a].label
                    ))
                })?;
                lambda.set(0, k, value);
            }
            local_radicals.push(basis.mul(&lambda.kernel_basis()));
        }
        for a in 0..s {
            for b in 0..s {
                if a == b {
                    pieces.push(local_radicals[a].clone());
                } else {
                    pieces.push(peirce[a][b].basis());
                }
            }
        }
        let refs: Vec<&Matrix> = pieces.iter().collect();
        let stacked = if refs.is_empty() {
            Matrix::zeros(field, d, 0)
        } else {
            Matrix::hstack(&refs)
        };
        let j = Subspace::column_span(&stacked);
        if j.dim() + s != d {
            return Err(QuivalgError::NotSplitBasic(format!(
                "radical candidate has codimension {} but there are {s} idempotents",
                d - j.dim()
            )));
        }
        let jb = j.basis();
        if j.dim() > 0 {
            for k in 0..d {
                let e = self.basis_element(k);
                if !j.contains(&self.right_mult_by(&e).mul(&jb))
                    || !j.contains(&self.left_mult_by(&e).mul(&jb))
                {
                    return Err(QuivalgError::NotSplitBasic(
                        "radical candidate is not a two-sided ideal".into(),
                    ));
                }
            }
        }
        let right_by_j: Vec<Matrix> = (0..j.dim())
            .map(|k| self.right_mult_by(&jb.column(k)))
            .collect();
        let mut powers = Vec::new();
        let mut current = j.clone();
        while current.dim() > 0 {
            let cb = current.basis();
            let images: Vec<Matrix> = right_by_j.iter().map(|r| r.mul(&cb)).collect();
            let refs: Vec<&Matrix> = images.iter().collect();
            let next = Subspace::column_span(&Matrix::hstack(&refs));
            if next.dim() >= current.dim() {
                return Err(QuivalgError::NotSplitBasic(
                    "radical candidate is not nilpotent".into(),
                ));
            }
            powers.push(current);
            current = next;
        }
        let loewy_length = powers.len() + 1;
        let square = powers
            .get(1)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(field, d));
        let mut covered = square;
        let mut generators = Vec::new();
        for a in 0..s {
            for b in 0..s {
                let candidates = if a == b {
                    local_radicals[a].clone()
                } else {
                    peirce[a][b].basis()
                };
                if candidates.cols() == 0 {
                    continue;
                }
                let chosen = covered.extending_columns(&candidates);
                for &c in &chosen {
                    let element = candidates.column(c);
                    let label = self
                        .named
                        .iter()
                        .find(|(_, m)| *m == element)
                        .map(|(n, _)| n.clone())
                        .unwrap_or_else(|| format!("g{}", generators.len()));
                    covered = covered.sum(&Subspace::column_span(&element));
                    generators.push(Generator {
                        label,
                        source: a,
                        target: b,
                        element,
                    });
                }
            }
        }
        Ok(RadicalData {
            powers,
            loewy_length,
            generators,
        })
    }

    /// Same basis with reversed multiplication.
    pub fn opposite_table(&self) -> AlgebraTable {
        let d = self.dim();
        let mut products = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                products.push(self.products[j * d + i].clone());
            }
        }
        let provenance = match self.provenance.strip_prefix("opposite of ") {
            Some(inner) => inner.to_string(),
            None => format!("opposite of {}", self.provenance),
        };
        AlgebraTable {
            field: self.field,
            basis: self.basis.clone(),
            products,
            unit: self.unit.clone(),
            idempotents: self.idempotents.clone(),
            named: self.named.clone(),
            provenance,
            right: OnceLock::new(),
            radical: OnceLock::new(),
            opposite: OnceLock::new(),
        }
    }

    /// Cached opposite algebra.
    pub fn opposite(&self) -> Arc<AlgebraTable> {
        self.opposite
            .get_or_init(|| Arc::new(self.opposite_table()))
            .clone()
    }

    /// `A ⊗ A^op` with basis `b_i ⊗ b_j` at index `i * d + j` and product
    /// `(a ⊗ b)(c ⊗ e) = ac ⊗ eb`.
    pub fn enveloping(&self) -> Result<AlgebraTable, QuivalgError> {
        let d = self.dim();
        let n = d * d;
        if n > ENVELOPING_LIMIT {
            return Err(QuivalgError::SizeLimit {
                what: "enveloping algebra".into(),
                needed: n,
                limit: ENVELOPING_LIMIT,
            });
        }
        let field = self.field;
        let mut products = Vec::with_capacity(n * n);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let left = &self.products[i * d + k];
                        let right = &self.products[l * d + j];
                        let mut entry = Vec::with_capacity(left.len() * right.len());
                        for (p, c) in left {
                            for (q, c2) in right {
                                entry.push((p * d + q, field.mul(c, c2)));
                            }
                        }
                        products.push(entry);
                    }
                }
            }
        }
        let basis = (0..n)
            .map(|t| format!("{}|{}", self.basis[t / d], self.basis[t % d]))
            .collect();
        let unit = self.tensor(&self.unit, &self.unit);
        let mut idempotents = Vec::new();
        for ea in &self.idempotents {
            for eb in &self.idempotents {
                idempotents.push(Idempotent {
                    label: format!("{}|{}", ea.label, eb.label),
                    element: self.tensor(&ea.element, &eb.element),
                });
            }
        }
        let mut named = Vec::new();
        for (name, x) in &self.named {
            named.push((format!("{name}_l"), self.tensor(x, &self.unit)));
            named.push((format!("{name}_r"), self.tensor(&self.unit, x)));
        }
        Ok(AlgebraTable::new(
            field,
            basis,
            products,
            unit,
            idempotents,
            format!("enveloping algebra of {}", self.provenance),
        )?
        .with_named(named))
    }

    /// Coordinates of `x ⊗ y` in the enveloping algebra basis.
    pub fn tensor(&self, x: &Matrix, y: &Matrix) -> Matrix {
        let d = self.dim();
        let field = self.field;
        let xs = x.column_entries(0);
        let ys = y.column_entries(0);
        let mut out = vec![field.zero(); d * d];
        for (p, xp) in xs.iter().enumerate() {
            for (q, yq) in ys.iter().enumerate() {
                out[p * d + q] = field.mul(xp, yq);
            }
        }
        Matrix::from_column(field, &out)
    }

    /// Actions of the basis `b_i ⊗ b_j` of `A ⊗ A^op` on `A`, where
    /// `x · (a ⊗ b) = b x a`.
    pub fn regular_bimodule_actions(&self) -> Vec<Matrix> {
        let d = self.dim();
        let right = self.right_mult();
        let mut out = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let left = self.left_mult_by(&self.basis_element(j));
                out.push(right[i].mul(&left));
            }
        }
        out
    }

    /// Sparse structure constants `(i, j, k, c)`.
    pub fn structure_triples(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in &self.products[i * d + j] {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.products[i * d + j] == self.products[j * d + i]))
    }
}

fn normalize_sparse(
    field: FieldSpec,
    d: usize,
    mut entries: Vec<(usize, Scalar)>,
) -> Result<Vec<(usize, Scalar)>, QuivalgError> {
    entries.sort_by_key(|(k, _)| *k);
    let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(entries.len());
    for (k, c) in entries {
        if k >= d {
            return Err(QuivalgError::Axiom(format!("basis index {k} out of range")));
        }
        let compatible = matches!(
            (field, &c),
            (FieldSpec::Prime(_), Scalar::Mod(_)) | (FieldSpec::Rational, Scalar::Rat(_))
        );
        if !compatible {
            return Err(QuivalgError::Axiom("scalar from a different field".into()));
        }
        match out.last_mut() {
            Some((last, acc)) if *last == k => *acc = field.add(acc, &c),
            _ => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| !field.is_zero(c));
    Ok(out)
}
