//! Exact sparse linear algebra over ℚ.
//!
//! Matrices are stored row by row as sorted `(column, value)` lists with no
//! explicit zeros. Vectors are dense `Vec<Rational>`. Every reduction uses
//! the same pivot rule (leftmost nonzero column, first available row), so
//! bases and witnesses are reproducible from run to run.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// Dense column vector.
pub type Vector = Vec<Rational>;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The zero vector of length `n`.
pub fn zero_vector(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

/// The `i`-th standard basis vector of length `n`.
pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `v += f * w`.
pub fn add_scaled(v: &mut [Rational], f: &Rational, w: &[Rational]) {
    debug_assert_eq!(v.len(), w.len());
    if f.is_zero() {
        return;
    }
    for (a, b) in v.iter_mut().zip(w) {
        if !b.is_zero() {
            *a += f * b;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("entry ({row}, {col}) is outside a {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("duplicate entry at ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },
    #[error("span of the B generators is not contained in the span of the Z generators")]
    NotNested,
}

type Row = Vec<(usize, Rational)>;

/// A sparse matrix with exact rational entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Row>,
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix({}x{}", self.rows, self.cols)?;
        for (r, c, v) in self.triplets() {
            write!(f, ", ({r},{c})={v}")?;
        }
        write!(f, ")")
    }
}

/// Accumulates entries, summing repeated positions, then freezes into a
/// [`SparseMatrix`].
#[derive(Debug, Clone)]
pub struct MatrixBuilder {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, Rational>>,
}

impl MatrixBuilder {
    pub fn new(rows: usize, cols: usize) -> Self {
        MatrixBuilder {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    /// Adds `value` to position `(row, col)`. Panics when out of range.
    pub fn add(&mut self, row: usize, col: usize, value: &Rational) {
        assert!(row < self.rows && col < self.cols, "entry out of range");
        if value.is_zero() {
            return;
        }
        let slot = self.data[row].entry(col).or_insert_with(Rational::zero);
        *slot += value;
    }

    /// Adds `value * block` with the block's origin at `(row0, col0)`.
    pub fn add_block(&mut self, row0: usize, col0: usize, block: &SparseMatrix, value: &Rational) {
        for (r, c, v) in block.triplets() {
            self.add(row0 + r, col0 + c, &(v * value));
        }
    }

    pub fn build(self) -> SparseMatrix {
        let data = self
            .data
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }
}

/// Result of a row reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: SparseMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, Rational::one())]).collect(),
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Zero values are
    /// dropped; repeated positions are an error.
    pub fn from_triplets<I>(rows: usize, cols: usize, entries: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut data: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); rows];
        for (row, col, value) in entries {
            if row >= rows || col >= cols {
                return Err(LinalgError::IndexOutOfRange { row, col, rows, cols });
            }
            if data[row].insert(col, value).is_some() {
                return Err(LinalgError::DuplicateEntry { row, col });
            }
        }
        let data = data
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(SparseMatrix { rows, cols, data })
    }

    /// Builds a matrix from dense rows. All rows must have length `cols`.
    pub fn from_dense(rows: &[Vec<Rational>], cols: usize) -> Self {
        let data = rows
            .iter()
            .map(|row| {
                assert_eq!(row.len(), cols, "ragged dense matrix");
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Small-integer convenience constructor, mostly for tests and docs.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let dense: Vec<Vector> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        Self::from_dense(&dense, cols)
    }

    /// Builds a `rows x columns.len()` matrix whose columns are `columns`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut data: Vec<Row> = vec![Vec::new(); rows];
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column has wrong length");
            for (r, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    data[r].push((c, v.clone()));
                }
            }
        }
        SparseMatrix {
            rows,
            cols: columns.len(),
            data,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        let r = &self.data[row];
        match r.binary_search_by_key(&col, |e| e.0) {
            Ok(i) => r[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Nonzero entries of one row, sorted by column.
    pub fn row(&self, row: usize) -> &[(usize, Rational)] {
        &self.data[row]
    }

    /// All nonzero entries in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn column(&self, col: usize) -> Vector {
        self.data.iter().map(|row| lookup(row, col)).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        let mut out = vec![zero_vector(self.rows); self.cols];
        for (r, c, v) in self.triplets() {
            out[c][r] = v.clone();
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vector> {
        let mut out = vec![zero_vector(self.cols); self.rows];
        for (r, c, v) in self.triplets() {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<Row> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.triplets() {
            data[c].push((r, v.clone()));
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn scale(&self, f: &Rational) -> Self {
        if f.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let data = self.data.iter().map(|row| row.iter().map(|(c, v)| (*c, v * f)).collect()).collect();
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(c, _)| !v[*c].is_zero())
                    .fold(Rational::zero(), |acc, (c, x)| acc + x * &v[*c])
            })
            .collect())
    }

    /// Matrix product `self * other`.
    pub fn checked_mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, a) in row {
                    for (c, b) in &other.data[*k] {
                        *acc.entry(*c).or_insert_with(Rational::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    fn combine(&self, other: &SparseMatrix, sign: &Rational) -> Result<SparseMatrix, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| axpy(a, sign, b)).collect();
        Ok(SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn checked_add(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        self.combine(other, &Rational::one())
    }

    pub fn checked_sub(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        self.combine(other, &-Rational::one())
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> SparseMatrix {
        let mut position = vec![None; self.cols];
        for (new, &old) in cols.iter().enumerate() {
            position[old] = Some(new);
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut out: Row = row.iter().filter_map(|(c, v)| position[*c].map(|n| (n, v.clone()))).collect();
                out.sort_by_key(|e| e.0);
                out
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    /// Keeps the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> SparseMatrix {
        SparseMatrix {
            rows: rows.len(),
            cols: self.cols,
            data: rows.iter().map(|&r| self.data[r].clone()).collect(),
        }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.cols, "vstack needs equal column counts");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        SparseMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.rows, other.rows, "hstack needs equal row counts");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut row = a.clone();
                row.extend(b.iter().map(|(c, v)| (c + self.cols, v.clone())));
                row
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        }
    }

    /// Reduced row-echelon form with deterministic pivoting.
    pub fn rref(&self) -> Rref {
        let (data, pivots) = rref_rows(self.data.clone(), self.cols);
        Rref {
            matrix: SparseMatrix {
                rows: self.rows,
                cols: self.cols,
                data,
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of the null space, one vector per non-pivot column.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let r = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &r.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = unit_vector(self.cols, f);
                for (i, &p) in r.pivots.iter().enumerate() {
                    let x = lookup(&r.matrix.data[i], f);
                    if !x.is_zero() {
                        v[p] = -x;
                    }
                }
                v
            })
            .collect()
    }

    /// Basis of the column space: the original columns at pivot positions.
    pub fn image_basis(&self) -> Vec<Vector> {
        let pivots = self.rref().pivots;
        self.select_columns(&pivots).columns()
    }
}

impl Mul for &SparseMatrix {
    type Output = SparseMatrix;

    fn mul(self, rhs: &SparseMatrix) -> SparseMatrix {
        self.checked_mul(rhs).expect("matrix product dimension mismatch")
    }
}

impl Add for &SparseMatrix {
    type Output = SparseMatrix;

    fn add(self, rhs: &SparseMatrix) -> SparseMatrix {
        self.checked_add(rhs).expect("matrix sum dimension mismatch")
    }
}

impl Sub for &SparseMatrix {
    type Output = SparseMatrix;

    fn sub(self, rhs: &SparseMatrix) -> SparseMatrix {
        self.checked_sub(rhs).expect("matrix difference dimension mismatch")
    }
}

impl Neg for &SparseMatrix {
    type Output = SparseMatrix;

    fn neg(self) -> SparseMatrix {
        self.scale(&-Rational::one())
    }
}

fn lookup(row: &[(usize, Rational)], col: usize) -> Rational {
    match row.binary_search_by_key(&col, |e| e.0) {
        Ok(i) => row[i].1.clone(),
        Err(_) => Rational::zero(),
    }
}

/// `a + f * b` on sorted sparse rows.
fn axpy(a: &[(usize, Rational)], f: &Rational, b: &[(usize, Rational)]) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, f * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + f * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Gauss-Jordan elimination restricted to pivot columns `< limit`.
///
/// Invariant: before column `col` is processed, every row at or below
/// `pivot_row` vanishes in columns `< col`, so a row has a nonzero at `col`
/// exactly when its first entry sits there.
fn rref_rows(mut rows: Vec<Row>, limit: usize) -> (Vec<Row>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..limit {
        if pivot_row == rows.len() {
            break;
        }
        let found = (pivot_row..rows.len()).find(|&r| rows[r].first().is_some_and(|e| e.0 == col));
        let Some(r) = found else { continue };
        rows.swap(pivot_row, r);
        let lead = rows[pivot_row][0].1.clone();
        if !lead.is_one() {
            let inv = lead.recip();
            for e in rows[pivot_row].iter_mut() {
                e.1 *= &inv;
            }
        }
        let pivot = std::mem::take(&mut rows[pivot_row]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i == pivot_row {
                continue;
            }
            if let Ok(pos) = row.binary_search_by_key(&col, |e| e.0) {
                let f = -row[pos].1.clone();
                *row = axpy(row, &f, &pivot);
            }
        }
        rows[pivot_row] = pivot;
        pivots.push(col);
        pivot_row += 1;
    }
    (rows, pivots)
}

/// Solves `M x = b`. Returns `None` when `b` is not in the column space.
///
/// The returned solution sets every free variable to zero.
pub fn solve(m: &SparseMatrix, b: &[Rational]) -> Result<Option<Vector>, LinalgError> {
    if b.len() != m.rows {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows,
            found: b.len(),
        });
    }
    let rows: Vec<Row> = m
        .data
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            if !bi.is_zero() {
                r.push((m.cols, bi.clone()));
            }
            r
        })
        .collect();
    let (reduced, pivots) = rref_rows(rows, m.cols);
    // Consistent iff no row reduces to [0 ... 0 | c] with c != 0.
    if reduced[pivots.len()..].iter().any(|r| !r.is_empty()) {
        return Ok(None);
    }
    let mut x = zero_vector(m.cols);
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = lookup(&reduced[i], m.cols);
    }
    Ok(Some(x))
}

/// A factored matrix for repeated solves against the same left-hand side.
#[derive(Debug, Clone)]
pub struct LinearSolver {
    rows: usize,
    cols: usize,
    pivots: Vec<usize>,
    /// Row operations `E` with `E * M = rref(M)`.
    transform: SparseMatrix,
}

impl LinearSolver {
    pub fn new(m: &SparseMatrix) -> Self {
        let rows: Vec<Row> = m
            .data
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.push((m.cols + i, Rational::one()));
                r
            })
            .collect();
        let (reduced, pivots) = rref_rows(rows, m.cols);
        let transform = SparseMatrix {
            rows: m.rows,
            cols: m.rows,
            data: reduced
                .into_iter()
                .map(|row| row.into_iter().filter(|(c, _)| *c >= m.cols).map(|(c, v)| (c - m.cols, v)).collect())
                .collect(),
        };
        LinearSolver {
            rows: m.rows,
            cols: m.cols,
            pivots,
            transform,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vector>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let w = self.transform.mul_vec(b)?;
        if !is_zero_vector(&w[self.pivots.len()..]) {
            return Ok(None);
        }
        let mut x = zero_vector(self.cols);
        for (i, &p) in self.pivots.iter().enumerate() {
            x[p] = w[i].clone();
        }
        Ok(Some(x))
    }
}

/// Rank of the span of a list of vectors of length `dim`.
pub fn span_rank(vectors: &[Vector], dim: usize) -> usize {
    SparseMatrix::from_columns(dim, vectors).rank()
}

/// Indices of a maximal independent subfamily, scanning left to right.
pub fn independent_subset(vectors: &[Vector], dim: usize) -> Vec<usize> {
    SparseMatrix::from_columns(dim, vectors).rref().pivots
}

/// Whether every vector of `sub` lies in the span of `sup`.
pub fn span_contains(sup: &[Vector], sub: &[Vector], dim: usize) -> bool {
    let base = span_rank(sup, dim);
    let mut all = sup.to_vec();
    all.extend(sub.iter().cloned());
    span_rank(&all, dim) == base
}

/// Outcome of [`Subquotient::membership`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    NotInZ,
    InB,
    Class(Vector),
}

/// The quotient `span(Z) / span(B)` presented by spanning sets.
#[derive(Debug, Clone)]
pub struct Subquotient {
    ambient_dim: usize,
    z_gens: SparseMatrix,
    b_gens: SparseMatrix,
    b_rank: usize,
    complement: Vec<usize>,
    solver: LinearSolver,
}

impl Subquotient {
    /// Checks `span(B) ⊆ span(Z)` and fixes a complement basis of `B` in
    /// `Z` made of `Z` generators, chosen left to right.
    pub fn new(ambient_dim: usize, z_gens: &[Vector], b_gens: &[Vector]) -> Result<Self, LinalgError> {
        for v in z_gens.iter().chain(b_gens) {
            if v.len() != ambient_dim {
                return Err(LinalgError::DimensionMismatch {
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
        }
        let z = SparseMatrix::from_columns(ambient_dim, z_gens);
        let b = SparseMatrix::from_columns(ambient_dim, b_gens);
        Self::from_matrices(z, b)
    }

    pub fn from_matrices(z_gens: SparseMatrix, b_gens: SparseMatrix) -> Result<Self, LinalgError> {
        let ambient_dim = z_gens.nrows();
        if b_gens.nrows() != ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: ambient_dim,
                found: b_gens.nrows(),
            });
        }
        let b_basis = b_gens.select_columns(&b_gens.rref().pivots);
        let b_rank = b_basis.ncols();
        let joint = b_basis.hstack(&z_gens).rref();
        let complement: Vec<usize> = joint.pivots.iter().filter(|&&p| p >= b_rank).map(|&p| p - b_rank).collect();
        if z_gens.rank() != b_rank + complement.len() {
            return Err(LinalgError::NotNested);
        }
        let solver = LinearSolver::new(&z_gens.select_columns(&complement).hstack(&b_basis));
        Ok(Subquotient {
            ambient_dim,
            z_gens,
            b_gens,
            b_rank,
            complement,
            solver,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn z_rank(&self) -> usize {
        self.b_rank + self.complement.len()
    }

    pub fn b_rank(&self) -> usize {
        self.b_rank
    }

    pub fn z_gens(&self) -> &SparseMatrix {
        &self.z_gens
    }

    pub fn b_gens(&self) -> &SparseMatrix {
        &self.b_gens
    }

    /// Positions (among the Z generators) of the complement basis.
    pub fn complement_indices(&self) -> &[usize] {
        &self.complement
    }

    /// The complement basis vectors themselves.
    pub fn complement_basis(&self) -> Vec<Vector> {
        self.complement.iter().map(|&i| self.z_gens.column(i)).collect()
    }

    pub fn membership(&self, v: &[Rational]) -> Result<Membership, LinalgError> {
        Ok(match self.coordinates(v)? {
            None => Membership::NotInZ,
            Some(c) if is_zero_vector(&c) => Membership::InB,
            Some(c) => Membership::Class(c),
        })
    }

    /// Class coordinates of `v`, or `None` when `v ∉ Z`. Elements of `B`
    /// get the zero vector.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vector>, LinalgError> {
        Ok(self.solver.solve(v)?.map(|mut x| {
            x.truncate(self.complement.len());
            x
        }))
    }
}

/// `p/q` in lowest terms, or `p` for integers.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Serializes witness chains as nested lists of `p/q` strings.
pub fn serialize_chains<S: serde::Serializer>(chains: &Option<Vec<Vector>>, s: S) -> Result<S::Ok, S::Error> {
    use serde::Serialize;
    chains
        .as_ref()
        .map(|cs| cs.iter().map(|v| v.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>())
        .serialize(s)
}
