//! Exact linear algebra over a [`Field`].
//!
//! [`Matrix`] is a dense row-major matrix with the usual reductions. [`SparseEchelon`] is an
//! incrementally built semi-echelon basis over sparse vectors; the resolution and homology code
//! leans on it because the matrices there are large and mostly zero.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};

#[derive(Clone)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> Eq for Matrix<F> {}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.spec())?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix {
            field: field.clone(),
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from integer entries mapped into the field.
    pub fn from_i64_rows(field: &F, rows: &[&[i64]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, rows)
    }

    /// A matrix whose columns are the given vectors.
    pub fn from_columns(field: &F, len: usize, columns: &[Vec<F::Elem>]) -> Result<Self> {
        let mut m = Self::zeros(field, len, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != len {
                return Err(Error::DimensionMismatch("column length".into()));
            }
            for (r, x) in col.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !f.is_zero(b) {
                        f.add_mul_assign(&mut out.data[r * other.cols + c], a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.rows];
        for (r, o) in out.iter_mut().enumerate() {
            for (a, b) in self.row(r).iter().zip(v) {
                if !f.is_zero(a) && !f.is_zero(b) {
                    f.add_mul_assign(o, a, b);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = self.field.add(a, b);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = self.field.mul(a, c);
        }
        out
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead_row = 0;
        for col in 0..m.cols {
            if lead_row == m.rows {
                break;
            }
            let Some(p) = (lead_row..m.rows).find(|&r| !f.is_zero(&m[(r, col)])) else {
                continue;
            };
            m.swap_rows(lead_row, p);
            let inv = f.inv(&m[(lead_row, col)]).expect("pivot is nonzero");
            for c in col..m.cols {
                let idx = lead_row * m.cols + c;
                m.data[idx] = f.mul(&m.data[idx], &inv);
            }
            let pivot_row: Vec<F::Elem> = m.row(lead_row)[col..].to_vec();
            for r in 0..m.rows {
                if r == lead_row {
                    continue;
                }
                let factor = m[(r, col)].clone();
                if f.is_zero(&factor) {
                    continue;
                }
                let neg = f.neg(&factor);
                for (k, pv) in pivot_row.iter().enumerate() {
                    if !f.is_zero(pv) {
                        let idx = r * m.cols + col + k;
                        f.add_mul_assign(&mut m.data[idx], &neg, pv);
                    }
                }
            }
            pivots.push(col);
            lead_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(i);
        }
        (0..self.cols)
            .filter(|&c| is_pivot[c].is_none())
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(&r[(i, free)]);
                }
                v
            })
            .collect()
    }

    /// One solution of `self * x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red[(i, self.cols)].clone();
        }
        Ok(Some(x))
    }
}

impl<F: Field> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F::Elem;
    fn index(&self, (r, c): (usize, usize)) -> &F::Elem {
        &self.data[r * self.cols + c]
    }
}

impl<F: Field> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F::Elem {
        &mut self.data[r * self.cols + c]
    }
}

/// A subspace of `F^n` held as a reduced row echelon basis, so coordinates can be read off
/// the pivot positions.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    field: F,
}

impl<F: Field> Subspace<F> {
    pub fn spanned_by(field: &F, ambient: usize, vectors: &[Vec<F::Elem>]) -> Result<Self> {
        let m = if vectors.is_empty() {
            Matrix::zeros(field, 0, ambient)
        } else {
            Matrix::from_rows(field, vectors.to_vec())?
        };
        if m.cols() != ambient {
            return Err(Error::DimensionMismatch("spanning vectors".into()));
        }
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Subspace {
            ambient,
            basis,
            pivots,
            field: field.clone(),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates with respect to [`Self::basis`], or `None` when `v` is outside the subspace.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let coords: Vec<F::Elem> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            if f.is_zero(c) {
                continue;
            }
            let neg = f.neg(c);
            for (x, y) in rest.iter_mut().zip(b) {
                f.add_mul_assign(x, &neg, y);
            }
        }
        rest.iter().all(|x| f.is_zero(x)).then_some(coords)
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Reduces `v` modulo the subspace and returns the entries at the non-pivot columns,
    /// i.e. coordinates in the quotient `F^n / self`.
    pub fn quotient_coordinates(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut rest = v.to_vec();
        for (p, b) in self.pivots.iter().zip(&self.basis) {
            let c = rest[*p].clone();
            if f.is_zero(&c) {
                continue;
            }
            let neg = f.neg(&c);
            for (x, y) in rest.iter_mut().zip(b) {
                f.add_mul_assign(x, &neg, y);
            }
        }
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        rest.into_iter()
            .enumerate()
            .filter(|(i, _)| !is_pivot[*i])
            .map(|(_, x)| x)
            .collect()
    }

    /// Column indices that are not pivots; unit vectors at these span a complement.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }
}

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

pub fn to_sparse<F: Field>(field: &F, v: &[F::Elem]) -> SparseVec<F::Elem> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !field.is_zero(x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense<F: Field>(field: &F, v: &SparseVec<F::Elem>, len: usize) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a + c * b` on sparse vectors.
pub fn sparse_axpy<F: Field>(
    field: &F,
    a: &SparseVec<F::Elem>,
    c: &F::Elem,
    b: &SparseVec<F::Elem>,
) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ai = a.get(i).map(|e| e.0);
        let bj = b.get(j).map(|e| e.0);
        match (ai, bj) {
            (Some(x), Some(y)) if x == y => {
                let v = field.add(&a[i].1, &field.mul(c, &b[j].1));
                if !field.is_zero(&v) {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(a[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(a[i].clone());
                i += 1;
            }
            (_, Some(y)) => {
                let v = field.mul(c, &b[j].1);
                if !field.is_zero(&v) {
                    out.push((y, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

struct EchelonRow<E> {
    vector: SparseVec<E>,
    tag: SparseVec<E>,
}

/// Incrementally built semi-echelon basis of sparse vectors.
///
/// Each stored row has leading coefficient one and its leading index differs from every other
/// row's. When rows are inserted with a tag (typically a unit vector naming the source column),
/// the tag records the combination of inserted vectors that produced the row; a vector that
/// reduces to zero then yields a linear relation among the inserted vectors.
pub struct SparseEchelon<F: Field> {
    field: F,
    rows: Vec<EchelonRow<F::Elem>>,
    pivot_row: HashMap<usize, usize>,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new(field: &F) -> Self {
        SparseEchelon {
            field: field.clone(),
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_tagged(
        &self,
        mut v: SparseVec<F::Elem>,
        mut tag: SparseVec<F::Elem>,
    ) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        let f = &self.field;
        let mut pos = 0;
        while pos < v.len() {
            let col = v[pos].0;
            match self.pivot_row.get(&col) {
                Some(&r) => {
                    let neg = f.neg(&v[pos].1);
                    let row = &self.rows[r];
                    v = sparse_axpy(f, &v, &neg, &row.vector);
                    if !row.tag.is_empty() || !tag.is_empty() {
                        tag = sparse_axpy(f, &tag, &neg, &row.tag);
                    }
                }
                None => pos += 1,
            }
        }
        (v, tag)
    }

    /// The stored rows as dense vectors of length `len`.
    pub fn rows_dense(&self, len: usize) -> Vec<Vec<F::Elem>> {
        self.rows.iter().map(|r| to_dense(&self.field, &r.vector, len)).collect()
    }

    /// Reduces `v` against the stored rows; the result is zero iff `v` is in their span.
    pub fn reduce(&self, v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.reduce_tagged(v, Vec::new()).0
    }

    pub fn contains(&self, v: SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`; returns `true` if it was independent of the stored rows.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> bool {
        self.insert_tagged(v, Vec::new()).is_none()
    }

    /// Inserts `v` with a tag. If `v` is dependent, returns the reduced tag: a combination of
    /// inserted tags whose vectors sum to zero.
    pub fn insert_tagged(
        &mut self,
        v: SparseVec<F::Elem>,
        tag: SparseVec<F::Elem>,
    ) -> Option<SparseVec<F::Elem>> {
        let (v, tag) = self.reduce_tagged(v, tag);
        if v.is_empty() {
            return Some(tag);
        }
        let f = &self.field;
        let inv = f.inv(&v[0].1).expect("leading entry is nonzero");
        let scale = |w: SparseVec<F::Elem>| -> SparseVec<F::Elem> {
            w.into_iter().map(|(i, x)| (i, f.mul(&x, &inv))).collect()
        };
        let lead = v[0].0;
        let row = EchelonRow {
            vector: scale(v),
            tag: scale(tag),
        };
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(row);
        None
    }
}

/// Basis of the kernel of the linear map whose `j`-th column is `columns[j]`.
pub fn sparse_kernel<F: Field>(field: &F, columns: &[SparseVec<F::Elem>]) -> Vec<SparseVec<F::Elem>> {
    let mut ech = SparseEchelon::new(field);
    let mut kernel = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        if let Some(rel) = ech.insert_tagged(col.clone(), vec![(j, field.one())]) {
            kernel.push(rel);
        }
    }
    kernel
}

/// Rank of the span of sparse vectors.
pub fn sparse_rank<F: Field>(field: &F, vectors: &[SparseVec<F::Elem>]) -> usize {
    let mut ech = SparseEchelon::new(field);
    for v in vectors {
        ech.insert(v.clone());
    }
    ech.rank()
}

/// Rank over the field named by `spec` of the integer vectors given in sparse form.
///
/// Over a prime field the entries are reduced mod p. Over the rationals the elimination runs
/// fraction-free in `i64` with content removal, falling back to arbitrary precision on overflow.
pub fn integer_rank(spec: FieldSpec, vectors: &[SparseVec<i64>]) -> usize {
    match spec {
        FieldSpec::Prime(p) => {
            let f = PrimeField::new(p).expect("FieldSpec holds a prime");
            let reduced: Vec<SparseVec<u64>> = vectors
                .iter()
                .map(|v| {
                    v.iter()
                        .map(|(i, x)| (*i, f.from_i64(*x)))
                        .filter(|(_, x)| *x != 0)
                        .collect()
                })
                .collect();
            sparse_rank(&f, &reduced)
        }
        FieldSpec::Rational => integer_rank_rational(vectors).unwrap_or_else(|| {
            let q = Rationals;
            let lifted: Vec<SparseVec<BigRational>> = vectors
                .iter()
                .map(|v| {
                    v.iter()
                        .filter(|(_, x)| *x != 0)
                        .map(|(i, x)| (*i, BigRational::from_integer(BigInt::from(*x))))
                        .collect()
                })
                .collect();
            sparse_rank(&q, &lifted)
        }),
    }
}

fn integer_rank_rational(vectors: &[SparseVec<i64>]) -> Option<usize> {
    // Rows keyed by leading index; row operations are `lead * v - v[col] * row`, which keep
    // integrality and never change the rational span.
    let mut rows: Vec<SparseVec<i64>> = Vec::new();
    let mut pivot_row: HashMap<usize, usize> = HashMap::new();
    for v in vectors {
        let mut v: SparseVec<i64> = v.iter().filter(|(_, x)| *x != 0).cloned().collect();
        let mut pos = 0;
        while pos < v.len() {
            let (col, a) = v[pos];
            let Some(&r) = pivot_row.get(&col) else {
                pos += 1;
                continue;
            };
            let row = &rows[r];
            let lead = row[0].1;
            let g = a.gcd(&lead);
            let (sv, sr) = (lead / g, a / g);
            v = int_combine(&v, sv, &row, sr)?;
        }
        if !v.is_empty() {
            let content = v.iter().fold(0i64, |g, (_, x)| g.gcd(x));
            if content > 1 {
                for e in v.iter_mut() {
                    e.1 /= content;
                }
            }
            pivot_row.insert(v[0].0, rows.len());
            rows.push(v);
        }
    }
    Some(rows.len())
}

/// `sa * a - sb * b`, or `None` on overflow.
fn int_combine(a: &SparseVec<i64>, sa: i64, b: &SparseVec<i64>, sb: i64) -> Option<SparseVec<i64>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ai = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let bj = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let (idx, val) = if ai == bj {
            let v = a[i].1.checked_mul(sa)?.checked_sub(b[j].1.checked_mul(sb)?)?;
            i += 1;
            j += 1;
            (ai, v)
        } else if ai < bj {
            let v = a[i].1.checked_mul(sa)?;
            i += 1;
            (ai, v)
        } else {
            let v = b[j].1.checked_mul(sb)?.checked_neg()?;
            j += 1;
            (bj, v)
        };
        if val != 0 {
            out.push((idx, val));
        }
    }
    let content = out.iter().fold(0i64, |g, (_, x)| g.gcd(x));
    if content > 1 {
        for e in out.iter_mut() {
            e.1 /= content;
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(rows: &[&[i64]]) -> Matrix<Rationals> {
        Matrix::from_i64_rows(&Rationals, rows).unwrap()
    }

    #[test]
    fn rref_identity() {
        let m = q(&[&[1, 0], &[0, 1]]);
        let (r, piv) = m.rref();
        assert_eq!(r, m);
        assert_eq!(piv, vec![0, 1]);
    }

    #[test]
    fn rref_rank_one_over_q() {
        let (r, piv) = q(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r, q(&[&[1, 2], &[0, 0]]));
        assert_eq!(piv, vec![0]);
    }

    #[test]
    fn rref_over_gf2() {
        let f = PrimeField::new(2).unwrap();
        let m = Matrix::from_i64_rows(&f, &[&[1, 1], &[1, 1]]).unwrap();
        let (r, piv) = m.rref();
        assert_eq!(r, Matrix::from_i64_rows(&f, &[&[1, 1], &[0, 0]]).unwrap());
        assert_eq!(piv, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert!(q(&[&[1, 0], &[0, 1]]).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(&Rationals, 2, 3).kernel_basis().len(), 3);
        let f = PrimeField::new(2).unwrap();
        let m = Matrix::from_i64_rows(&f, &[&[1, 1, 0], &[0, 1, 1]]).unwrap();
        assert_eq!(m.kernel_basis(), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn solve_examples() {
        let id = q(&[&[1, 0], &[0, 1]]);
        let b = vec![Rationals.from_i64(3), Rationals.from_i64(-2)];
        assert_eq!(id.solve(&b).unwrap(), Some(b.clone()));
        let zero = Matrix::zeros(&Rationals, 2, 2);
        assert_eq!(zero.solve(&b).unwrap(), None);
        let f = PrimeField::new(5).unwrap();
        let m = Matrix::from_i64_rows(&f, &[&[2]]).unwrap();
        assert_eq!(m.solve(&[1]).unwrap(), Some(vec![3]));
        assert!(m.solve(&[1, 2]).is_err());
    }

    #[test]
    fn subspace_coordinates() {
        let f = Rationals;
        let v = |xs: &[i64]| xs.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>();
        let s = Subspace::spanned_by(&f, 3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        assert_eq!(s.dim(), 2);
        let c = s.coordinates(&v(&[2, 3, 1])).unwrap();
        assert_eq!(c, v(&[2, 3]));
        assert!(s.coordinates(&v(&[1, 0, 0])).is_none());
        assert_eq!(s.free_columns(), vec![2]);
    }

    #[test]
    fn sparse_kernel_matches_dense() {
        let f = PrimeField::new(3).unwrap();
        let m = Matrix::from_i64_rows(&f, &[&[1, 2, 0, 1], &[0, 1, 1, 1], &[1, 0, 1, 2]]).unwrap();
        let cols: Vec<_> = (0..4).map(|c| to_sparse(&f, &m.column(c))).collect();
        let ker = sparse_kernel(&f, &cols);
        assert_eq!(ker.len(), 4 - m.rank());
        for k in ker {
            let dense = to_dense(&f, &k, 4);
            assert!(m.mul_vec(&dense).unwrap().iter().all(|x| *x == 0));
        }
    }

    #[test]
    fn integer_rank_depends_on_characteristic() {
        // [[1,1],[1,-1]] has determinant -2.
        let vs = vec![vec![(0, 1), (1, 1)], vec![(0, 1), (1, -1)]];
        assert_eq!(integer_rank(FieldSpec::Rational, &vs), 2);
        assert_eq!(integer_rank(FieldSpec::Prime(2), &vs), 1);
        assert_eq!(integer_rank(FieldSpec::Prime(3), &vs), 2);
    }

    #[test]
    fn integer_rank_falls_back_on_overflow() {
        let big = i64::MAX / 2;
        let vs = vec![vec![(0, big), (1, 3)], vec![(0, big - 1), (1, 7)], vec![(0, 5), (1, big)]];
        assert_eq!(integer_rank(FieldSpec::Rational, &vs), 2);
    }
}
