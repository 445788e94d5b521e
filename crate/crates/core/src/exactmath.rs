//! Exact scalars and dense matrices over prime fields and the rationals.
//!
//! Matrices act on column vectors. All elimination routines pivot on the first
//! nonzero entry in column order, so reduced forms are canonical and
//! reproducible across runs.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MathError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// The ground field: a prime field `F_p` or the rationals.
/// Serialized as its display form, `"F2"` or `"Q"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

/// A field element in canonical form: residues in `[0, p)`, rationals in
/// lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod(u64),
    Rat(BigRational),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, MathError> {
        if p < (1 << 31) && is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(MathError::NotPrime(p))
        }
    }

    pub fn is_valid(&self) -> bool {
        match *self {
            FieldSpec::Prime(p) => p < (1 << 31) && is_prime(p),
            FieldSpec::Rational => true,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Prime(p) => p,
            FieldSpec::Rational => 0,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match *self {
            FieldSpec::Prime(p) => Some(p),
            FieldSpec::Rational => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Prime(_) => Scalar::Mod(0),
            FieldSpec::Rational => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Prime(_) => Scalar::Mod(1),
            FieldSpec::Rational => Scalar::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            FieldSpec::Prime(p) => Scalar::Mod(v.rem_euclid(p as i64) as u64),
            FieldSpec::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            FieldSpec::Prime(p) => {
                let pb = BigInt::from(p);
                let r = ((v % &pb) + &pb) % &pb;
                Scalar::Mod(r.to_u64().expect("residue fits"))
            }
            FieldSpec::Rational => Scalar::Rat(BigRational::from_integer(v.clone())),
        }
    }

    /// Parses `"3"`, `"-2"`, or `"5/7"` into this field.
    pub fn parse(&self, text: &str) -> Result<Scalar, MathError> {
        let t = text.trim();
        let err = || MathError::Parse(text.to_string());
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (
                BigInt::from_str(a.trim()).map_err(|_| err())?,
                BigInt::from_str(b.trim()).map_err(|_| err())?,
            ),
            None => (BigInt::from_str(t).map_err(|_| err())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        let n = self.from_bigint(&num);
        let d = self.from_bigint(&den);
        if self.is_zero(&d) {
            return Err(MathError::DivisionByZero);
        }
        Ok(self.mul(&n, &self.inv(&d)))
    }

    pub fn format(&self, s: &Scalar) -> String {
        s.to_string()
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + y) % p),
            (FieldSpec::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Mod(x)) => Scalar::Mod((p - x) % p),
            (FieldSpec::Rational, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod(x * y % p),
            (FieldSpec::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("scalar from a different field"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!self.is_zero(a), "inverse of zero");
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Mod(x)) => Scalar::Mod(mod_pow(*x, p - 2, *p)),
            (FieldSpec::Rational, Scalar::Rat(x)) => Scalar::Rat(x.recip()),
            _ => panic!("scalar from a different field"),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F{p}"),
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = MathError;

    fn try_from(s: String) -> Result<Self, MathError> {
        s.parse()
    }
}

impl FromStr for FieldSpec {
    type Err = MathError;

    /// Accepts `Q`, `QQ`, `rational`, `F2`, `F_3`, `GF(5)`.
    fn from_str(s: &str) -> Result<Self, MathError> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "q" | "qq" | "rational" | "rationals" => return Ok(FieldSpec::Rational),
            _ => {}
        }
        let digits = t
            .trim_start_matches(['F', 'f'])
            .trim_start_matches('_')
            .trim_start_matches("GF(")
            .trim_start_matches("gf(")
            .trim_end_matches(')');
        let p: u64 = digits
            .parse()
            .map_err(|_| MathError::Parse(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(v) => write!(f, "{v}"),
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

// Elimination kernels are written once, generic over this small trait, and
// dispatched from the enum-backed `Matrix`.
trait Arith {
    type E: Clone + PartialEq;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
}

struct ModArith(u64);
struct RatArith;

impl Arith for ModArith {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        mod_pow(*a, self.0 - 2, self.0)
    }
}

impl Arith for RatArith {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

/// In-place reduced row echelon form of a row-major `rows x cols` block.
/// Returns pivot columns.
fn rref_in_place<A: Arith>(ar: &A, data: &mut [A::E], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !ar.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = ar.inv(&data[r * cols + c]);
        for j in c..cols {
            let v = ar.mul(&data[r * cols + j], &inv);
            data[r * cols + j] = v;
        }
        for i in 0..rows {
            if i == r || ar.is_zero(&data[i * cols + c]) {
                continue;
            }
            let factor = data[i * cols + c].clone();
            for j in c..cols {
                if ar.is_zero(&data[r * cols + j]) {
                    continue;
                }
                let t = ar.mul(&factor, &data[r * cols + j]);
                data[i * cols + j] = ar.sub(&data[i * cols + j], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn matmul<A: Arith>(ar: &A, a: &[A::E], b: &[A::E], n: usize, k: usize, m: usize) -> Vec<A::E> {
    let mut out = vec![ar.zero(); n * m];
    for i in 0..n {
        for l in 0..k {
            let x = &a[i * k + l];
            if ar.is_zero(x) {
                continue;
            }
            for j in 0..m {
                let y = &b[l * m + j];
                if ar.is_zero(y) {
                    continue;
                }
                let t = ar.mul(x, y);
                out[i * m + j] = ar.add(&out[i * m + j], &t);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Entries {
    Mod(Vec<u64>),
    Rat(Vec<BigRational>),
}

/// Dense row-major matrix over a [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Entries,
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

macro_rules! with_arith_mut {
    ($m:expr, |$ar:ident, $v:ident| $body:expr) => {
        match (&$m.field, &mut $m.data) {
            (FieldSpec::Prime(p), Entries::Mod($v)) => {
                let $ar = ModArith(*p);
                $body
            }
            (FieldSpec::Rational, Entries::Rat($v)) => {
                let $ar = RatArith;
                $body
            }
            _ => unreachable!("entries disagree with field"),
        }
    };
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        let data = match field {
            FieldSpec::Prime(_) => Entries::Mod(vec![0; rows * cols]),
            FieldSpec::Rational => Entries::Rat(vec![BigRational::zero(); rows * cols]),
        };
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from integer entries given row by row.
    pub fn from_i64(field: FieldSpec, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        assert_eq!(entries.len(), rows * cols);
        let mut m = Matrix::zeros(field, rows, cols);
        for (idx, v) in entries.iter().enumerate() {
            m.set(idx / cols, idx % cols, field.from_i64(*v));
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vec<Scalar>]) -> Result<Matrix, MathError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Matrix::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(MathError::Dimension("ragged rows".into()));
            }
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    /// Column vector with a single one at `index`.
    pub fn unit_vector(field: FieldSpec, len: usize, index: usize) -> Matrix {
        let mut m = Matrix::zeros(field, len, 1);
        m.set(index, 0, field.one());
        m
    }

    /// A single column with the given entries.
    pub fn from_column(field: FieldSpec, entries: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(field, entries.len(), 1);
        for (i, e) in entries.iter().enumerate() {
            if !field.is_zero(e) {
                m.set(i, 0, e.clone());
            }
        }
        m
    }

    pub fn column_entries(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        match &self.data {
            Entries::Mod(v) => Scalar::Mod(v[i * self.cols + j]),
            Entries::Rat(v) => Scalar::Rat(v[i * self.cols + j].clone()),
        }
    }

    pub fn is_entry_zero(&self, i: usize, j: usize) -> bool {
        match &self.data {
            Entries::Mod(v) => v[i * self.cols + j] == 0,
            Entries::Rat(v) => v[i * self.cols + j].is_zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let cols = self.cols;
        match (&mut self.data, value) {
            (Entries::Mod(v), Scalar::Mod(x)) => v[i * cols + j] = x,
            (Entries::Rat(v), Scalar::Rat(x)) => v[i * cols + j] = x,
            _ => panic!("scalar from a different field"),
        }
    }

    /// Adds `value` to entry `(i, j)`.
    pub fn add_to(&mut self, i: usize, j: usize, value: &Scalar) {
        let cur = self.get(i, j);
        self.set(i, j, self.field.add(&cur, value));
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Entries::Mod(v) => v.iter().all(|x| *x == 0),
            Entries::Rat(v) => v.iter().all(|x| x.is_zero()),
        }
    }

    pub fn nonzero_count(&self) -> usize {
        match &self.data {
            Entries::Mod(v) => v.iter().filter(|x| **x != 0).count(),
            Entries::Rat(v) => v.iter().filter(|x| !x.is_zero()).count(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.is_entry_zero(i, j) {
                    out.set(j, i, self.get(i, j));
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.cols, other.rows, "product dimension mismatch");
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let data = match (&self.field, &self.data, &other.data) {
            (FieldSpec::Prime(p), Entries::Mod(a), Entries::Mod(b)) => {
                Entries::Mod(matmul(&ModArith(*p), a, b, n, k, m))
            }
            (FieldSpec::Rational, Entries::Rat(a), Entries::Rat(b)) => {
                Entries::Rat(matmul(&RatArith, a, b, n, k, m))
            }
            _ => unreachable!(),
        };
        Matrix {
            field: self.field,
            rows: n,
            cols: m,
            data,
        }
    }

    fn zip_with(&self, other: &Matrix, negate: bool) -> Matrix {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        let data = match (&self.field, &self.data, &other.data) {
            (FieldSpec::Prime(p), Entries::Mod(a), Entries::Mod(b)) => {
                let ar = ModArith(*p);
                Entries::Mod(
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| if negate { ar.sub(x, y) } else { ar.add(x, y) })
                        .collect(),
                )
            }
            (FieldSpec::Rational, Entries::Rat(a), Entries::Rat(b)) => Entries::Rat(
                a.iter()
                    .zip(b)
                    .map(|(x, y)| if negate { x - y } else { x + y })
                    .collect(),
            ),
            _ => unreachable!(),
        };
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, false)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, true)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let mut out = self.clone();
        match (&self.field, &mut out.data, s) {
            (FieldSpec::Prime(p), Entries::Mod(v), Scalar::Mod(x)) => {
                v.iter_mut().for_each(|e| *e = *e * x % p)
            }
            (FieldSpec::Rational, Entries::Rat(v), Scalar::Rat(x)) => {
                v.iter_mut().for_each(|e| *e = &*e * x)
            }
            _ => panic!("scalar from a different field"),
        }
        out
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, s: &Scalar, other: &Matrix) {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        if self.field.is_zero(s) {
            return;
        }
        match (&self.field, &mut self.data, &other.data, s) {
            (FieldSpec::Prime(p), Entries::Mod(a), Entries::Mod(b), Scalar::Mod(x)) => {
                for (e, y) in a.iter_mut().zip(b) {
                    if *y != 0 {
                        *e = (*e + y * x) % p;
                    }
                }
            }
            (FieldSpec::Rational, Entries::Rat(a), Entries::Rat(b), Scalar::Rat(x)) => {
                for (e, y) in a.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *e += y * x;
                    }
                }
            }
            _ => panic!("scalar from a different field"),
        }
    }

    /// `Σ coeffs[i] * mats[i]`; all matrices must share a shape.
    pub fn linear_combination(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        coeffs: &[Scalar],
        mats: &[&Matrix],
    ) -> Matrix {
        let mut out = Matrix::zeros(field, rows, cols);
        for (c, m) in coeffs.iter().zip(mats) {
            out.add_scaled(c, m);
        }
        out
    }

    pub fn hstack(parts: &[&Matrix]) -> Matrix {
        assert!(!parts.is_empty());
        let field = parts[0].field;
        let rows = parts[0].rows;
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..p.cols {
                    if !p.is_entry_zero(i, j) {
                        out.set(i, off + j, p.get(i, j));
                    }
                }
            }
            off += p.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        assert!(!parts.is_empty());
        let field = parts[0].field;
        let cols = parts[0].cols;
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            for i in 0..p.rows {
                for j in 0..cols {
                    if !p.is_entry_zero(i, j) {
                        out.set(off + i, j, p.get(i, j));
                    }
                }
            }
            off += p.rows;
        }
        out
    }

    /// Block-diagonal matrix.
    pub fn block_diagonal(field: FieldSpec, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            out.set_block(ro, co, b);
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, row: usize, col: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                if !block.is_entry_zero(i, j) || !self.is_entry_zero(row + i, col + j) {
                    self.set(row + i, col + j, block.get(i, j));
                }
            }
        }
    }

    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if !self.is_entry_zero(row + i, col + j) {
                    out.set(i, j, self.get(row + i, col + j));
                }
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, idx.len(), self.cols);
        for (r, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                if !self.is_entry_zero(i, j) {
                    out.set(r, j, self.get(i, j));
                }
            }
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (c, &j) in idx.iter().enumerate() {
                if !self.is_entry_zero(i, j) {
                    out.set(i, c, self.get(i, j));
                }
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Matrix {
        self.select_cols(&[j])
    }

    pub fn columns(&self) -> Vec<Matrix> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Flattens row-major into a single column.
    pub fn vectorize(&self) -> Matrix {
        let mut out = self.clone();
        out.rows = self.rows * self.cols;
        out.cols = 1;
        out
    }

    /// Inverse of [`Matrix::vectorize`].
    pub fn reshape(&self, rows: usize, cols: usize) -> Matrix {
        assert_eq!(rows * cols, self.rows * self.cols);
        let mut out = self.clone();
        out.rows = rows;
        out.cols = cols;
        out
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut acc = self.field.zero();
        for i in 0..self.rows {
            acc = self.field.add(&acc, &self.get(i, i));
        }
        acc
    }

    pub fn is_scalar_multiple_of_identity(&self) -> Option<Scalar> {
        if self.rows != self.cols {
            return None;
        }
        if self.rows == 0 {
            return Some(self.field.zero());
        }
        let d = self.get(0, 0);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want_zero = i != j;
                if want_zero && !self.is_entry_zero(i, j) {
                    return None;
                }
                if !want_zero && self.get(i, j) != d {
                    return None;
                }
            }
        }
        Some(d)
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let pivots = with_arith_mut!(m, |ar, v| rref_in_place(&ar, v, rows, cols));
        Rref {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        // Eliminate along the shorter side.
        if self.rows > self.cols {
            self.transpose().rref().rank
        } else {
            self.rref().rank
        }
    }

    /// Columns form a basis of the null space `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { matrix, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.field, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, self.field.one());
            for (r, &pc) in pivots.iter().enumerate() {
                if !matrix.is_entry_zero(r, f) {
                    out.set(pc, k, self.field.neg(&matrix.get(r, f)));
                }
            }
        }
        out
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>, MathError> {
        if b.rows != self.rows {
            return Err(MathError::Dimension(format!(
                "system has {} rows, right-hand side {}",
                self.rows, b.rows
            )));
        }
        if b.field != self.field {
            return Err(MathError::Dimension("field mismatch".into()));
        }
        let aug = Matrix::hstack(&[self, b]);
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                if !matrix.is_entry_zero(r, self.cols + j) {
                    x.set(pc, j, matrix.get(r, self.cols + j));
                }
            }
        }
        Ok(Some(x))
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let field = self.field;
        let mut det = field.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.is_entry_zero(i, c)) else {
                return field.zero();
            };
            if pr != c {
                for j in 0..n {
                    let a = m.get(pr, j);
                    let b = m.get(c, j);
                    m.set(pr, j, b);
                    m.set(c, j, a);
                }
                det = field.neg(&det);
            }
            let piv = m.get(c, c);
            det = field.mul(&det, &piv);
            let inv = field.inv(&piv);
            for i in (c + 1)..n {
                if m.is_entry_zero(i, c) {
                    continue;
                }
                let f = field.mul(&m.get(i, c), &inv);
                for j in c..n {
                    let v = field.sub(&m.get(i, j), &field.mul(&f, &m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        self.solve(&Matrix::identity(self.field, self.rows))
            .ok()
            .flatten()
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows.max(1) as u64).is_zero()
    }

    /// For a matrix of the form `λ·I + N` with `N` nilpotent, returns `λ`.
    /// `None` if the matrix has more than one eigenvalue or an eigenvalue
    /// outside the ground field.
    pub fn single_eigenvalue(&self) -> Option<Scalar> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return None;
        }
        let lambda = match self.field {
            FieldSpec::Rational => {
                let tr = self.trace();
                self.field
                    .mul(&tr, &self.field.inv(&self.field.from_i64(n as i64)))
            }
            FieldSpec::Prime(p) => {
                // (λ + N)^(p^a) = λ + N^(p^a) = λ once p^a ≥ n.
                let mut q = 1u64;
                while (q as usize) < n {
                    q *= p;
                }
                let mut m = self.clone();
                let mut done = 1u64;
                while done < q {
                    m = m.pow(p);
                    done *= p;
                }
                m.is_scalar_multiple_of_identity()?
            }
        };
        let shifted = self.sub(&Matrix::identity(self.field, n).scale(&lambda));
        shifted.is_nilpotent().then_some(lambda)
    }

    /// Entries as strings, row by row.
    pub fn to_string_grid(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }

    pub fn from_string_grid(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        grid: &[Vec<String>],
    ) -> Result<Matrix, MathError> {
        if grid.len() != rows || grid.iter().any(|r| r.len() != cols) {
            return Err(MathError::Dimension(format!(
                "expected a {rows}x{cols} grid"
            )));
        }
        let mut m = Matrix::zeros(field, rows, cols);
        for (i, row) in grid.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                m.set(i, j, field.parse(s)?);
            }
        }
        Ok(m)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A subspace of `K^n` held in reduced echelon form.
///
/// Basis vector `j` has a one at `pivots[j]` and zeros at every other pivot,
/// so coordinates of a member vector are read off its pivot entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    /// Row-major, one basis vector per row.
    rows: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            rows: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            rows: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &Matrix) -> Subspace {
        let Rref {
            matrix,
            rank,
            pivots,
        } = m.transpose().rref();
        Subspace {
            field: m.field(),
            ambient: m.rows(),
            rows: matrix.block(0, 0, rank, m.rows()),
            pivots,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis as the columns of an `ambient x dim` matrix.
    pub fn basis(&self) -> Matrix {
        self.rows.transpose()
    }

    pub fn basis_vector(&self, j: usize) -> Matrix {
        self.rows.block(j, 0, 1, self.ambient).transpose()
    }

    /// Coordinates of the columns of `v`, assumed to lie in the subspace.
    pub fn coords(&self, v: &Matrix) -> Matrix {
        v.select_rows(&self.pivots)
    }

    /// Reduces the columns of `v` modulo the subspace.
    pub fn reduce(&self, v: &Matrix) -> Matrix {
        let c = self.coords(v);
        v.sub(&self.basis().mul(&c))
    }

    pub fn contains(&self, v: &Matrix) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.dim() == 0 || self.contains(&other.basis())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::column_span(&Matrix::hstack(&[&self.basis(), &other.basis()]))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x = B a = C b  <=>  [B | -C] (a; b) = 0
        let b = self.basis();
        let c = other.basis();
        let k = Matrix::hstack(&[&b, &c.scale(&self.field.neg(&self.field.one()))]).kernel_basis();
        let a = k.block(0, 0, self.dim(), k.cols());
        Subspace::column_span(&b.mul(&a))
    }

    /// Indices of standard basis vectors completing this subspace to `K^n`.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|i| !self.pivots.contains(i))
            .collect()
    }

    /// Columns of `candidates` (in order) that extend this subspace, chosen
    /// greedily.
    pub fn extending_columns(&self, candidates: &Matrix) -> Vec<usize> {
        let mut current = self.clone();
        let mut chosen = Vec::new();
        for j in 0..candidates.cols() {
            let v = candidates.column(j);
            if !current.contains(&v) {
                current = current.sum(&Subspace::column_span(&v));
                chosen.push(j);
            }
        }
        chosen
    }

    pub fn equals(&self, other: &Subspace) -> bool {
        self.rows == other.rows && self.pivots == other.pivots
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn f2() -> FieldSpec {
        FieldSpec::Prime(2)
    }

    #[test]
    fn identity_rref_over_f2() {
        let r = Matrix::identity(f2(), 3).rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let r = Matrix::zeros(q(), 2, 4).rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn proportional_rows() {
        let m = Matrix::from_i64(q(), 2, 2, &[1, 2, 2, 4]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(q(), 4).kernel_basis().cols(), 0);
        assert_eq!(Matrix::zeros(q(), 2, 3).kernel_basis().cols(), 3);
        let k = Matrix::from_i64(f2(), 1, 2, &[1, 1]).kernel_basis();
        assert_eq!(k, Matrix::from_i64(f2(), 2, 1, &[1, 1]));
    }

    #[test]
    fn solve_examples() {
        let b = Matrix::from_i64(q(), 3, 1, &[4, -1, 7]);
        assert_eq!(Matrix::identity(q(), 3).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(Matrix::zeros(q(), 3, 3).solve(&b).unwrap(), None);
        let x = Matrix::from_i64(q(), 1, 1, &[2])
            .solve(&Matrix::from_i64(q(), 1, 1, &[1]))
            .unwrap()
            .unwrap();
        assert_eq!(x.get(0, 0).to_string(), "1/2");
        assert!(matches!(
            Matrix::identity(q(), 2).solve(&Matrix::zeros(q(), 3, 1)),
            Err(MathError::Dimension(_))
        ));
    }

    #[test]
    fn scalar_parsing_and_canonical_forms() {
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.parse("-1").unwrap(), Scalar::Mod(6));
        assert_eq!(f7.parse("1/2").unwrap(), Scalar::Mod(4));
        assert_eq!(q().parse("6/4").unwrap().to_string(), "3/2");
        assert!(FieldSpec::prime(9).is_err());
        assert_eq!("F3".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(3));
        assert_eq!("GF(5)".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(5));
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_i64(q(), 2, 2, &[2, 1, 1, 1]);
        assert_eq!(m.determinant(), q().from_i64(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(q(), 2));
        let s = Matrix::from_i64(f2(), 2, 2, &[1, 1, 1, 1]);
        assert_eq!(s.determinant(), Scalar::Mod(0));
        assert!(s.inverse().is_none());
    }

    #[test]
    fn single_eigenvalue_detection() {
        let f3 = FieldSpec::Prime(3);
        let m = Matrix::from_i64(f3, 2, 2, &[2, 1, 0, 2]);
        assert_eq!(m.single_eigenvalue(), Some(Scalar::Mod(2)));
        let d = Matrix::from_i64(f3, 2, 2, &[1, 0, 0, 2]);
        assert_eq!(d.single_eigenvalue(), None);
        let rq = Matrix::from_i64(q(), 3, 3, &[5, 1, 0, 0, 5, 1, 0, 0, 5]);
        assert_eq!(rq.single_eigenvalue(), Some(q().from_i64(5)));
        // x^2 + x + 1 is irreducible over F2: no eigenvalue in the field.
        let c = Matrix::from_i64(f2(), 2, 2, &[0, 1, 1, 1]);
        assert_eq!(c.single_eigenvalue(), None);
    }

    #[test]
    fn subspace_coordinates_and_intersection() {
        let m = Matrix::from_i64(q(), 3, 2, &[1, 0, 1, 1, 0, 1]);
        let s = Subspace::column_span(&m);
        assert_eq!(s.dim(), 2);
        let v = Matrix::from_i64(q(), 3, 1, &[2, 5, 3]);
        assert!(s.contains(&v));
        assert_eq!(s.basis().mul(&s.coords(&v)), v);
        let t = Subspace::column_span(&Matrix::from_i64(q(), 3, 2, &[1, 0, 0, 1, 0, 0]));
        let i = s.intersection(&t);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&Matrix::from_i64(q(), 3, 1, &[1, 1, 0])));
    }
}
