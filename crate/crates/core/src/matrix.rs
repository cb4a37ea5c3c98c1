//! Dense exact matrices: row reduction, ranks of column subsets, kernels,
//! and the column surgery used by matroid minors.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldScalar, FieldSpec, PrimeField, Rationals};

/// Row-major dense matrix over a concrete field.
#[derive(Clone, PartialEq, Eq)]
pub struct Dense<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Dense<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} {}x{}", self.field, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl<F: Field> Dense<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "dense matrix data has wrong length");
        Dense {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Dense::new(field, rows, cols, data)
    }

    pub fn from_fn(field: F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Dense::new(field, rows, cols, data)
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
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }
    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero_column(&self, c: usize) -> bool {
        (0..self.rows).all(|r| self.field.is_zero(self.get(r, c)))
    }

    pub fn transpose(&self) -> Self {
        Dense::from_fn(self.field.clone(), self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Dense::from_fn(self.field.clone(), self.rows, cols.len(), |r, c| self.get(r, cols[c]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Dense::from_fn(self.field.clone(), rows.len(), self.cols, |r, c| self.get(rows[r], c).clone())
    }

    /// Swaps rows `a` and `b` in place.
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let cols = self.cols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * cols);
        head[lo * cols..(lo + 1) * cols].swap_with_slice(&mut tail[..cols]);
    }

    /// `row[target] -= factor * row[source]`
    fn eliminate(&mut self, target: usize, source: usize, factor: &F::Elem) {
        let cols = self.cols;
        if target < source {
            let (head, tail) = self.data.split_at_mut(source * cols);
            self.field
                .sub_scaled(&mut head[target * cols..(target + 1) * cols], factor, &tail[..cols]);
        } else {
            let (head, tail) = self.data.split_at_mut(target * cols);
            self.field
                .sub_scaled(&mut tail[..cols], factor, &head[source * cols..(source + 1) * cols]);
        }
    }

    /// Reduces in place to reduced row echelon form and returns the pivot
    /// columns. Pivots are the first nonzero entry in column order.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for c in 0..self.cols {
            if next_row == self.rows {
                break;
            }
            let Some(p) = (next_row..self.rows).find(|&r| !self.field.is_zero(self.get(r, c))) else {
                continue;
            };
            self.swap_rows(next_row, p);
            let inv = self.field.inv(self.get(next_row, c));
            let cols = self.cols;
            self.field
                .scale(&mut self.data[next_row * cols..(next_row + 1) * cols], &inv);
            for r in 0..self.rows {
                if r != next_row && !self.field.is_zero(self.get(r, c)) {
                    let factor = self.get(r, c).clone();
                    self.eliminate(r, next_row, &factor);
                }
            }
            pivots.push(c);
            next_row += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    /// Rank by forward elimination only.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| !m.field.is_zero(m.get(r, c))) else {
                continue;
            };
            m.swap_rows(rank, p);
            let inv = m.field.inv(m.get(rank, c));
            for r in rank + 1..m.rows {
                if !m.field.is_zero(m.get(r, c)) {
                    let factor = m.field.mul(m.get(r, c), &inv);
                    m.eliminate(r, rank, &factor);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Rank of the submatrix on the given columns.
    pub fn column_rank(&self, cols: &[usize]) -> usize {
        if cols.is_empty() || self.rows == 0 {
            return 0;
        }
        // Transposed copy: each selected column becomes a row, so the work
        // is bounded by |cols| x rows regardless of the full width.
        let t = Dense::from_fn(self.field.clone(), cols.len(), self.rows, |r, c| self.get(c, cols[r]).clone());
        t.rank()
    }

    /// Basis of the right kernel `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F::Elem>> {
        let (reduced, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = self.field.neg(reduced.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of `{v in K^rows : v . A[:, cols] = 0}`.
    pub fn left_kernel(&self, cols: &[usize]) -> Vec<Vec<F::Elem>> {
        let t = Dense::from_fn(self.field.clone(), cols.len(), self.rows, |r, c| self.get(c, cols[r]).clone());
        t.nullspace()
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![self.field.zero(); self.cols];
        for (r, coeff) in v.iter().enumerate() {
            if self.field.is_zero(coeff) {
                continue;
            }
            let neg = self.field.neg(coeff);
            self.field.sub_scaled(&mut out, &neg, self.row(r));
        }
        out
    }

    pub fn delete_column(&self, c: usize) -> Self {
        let keep: Vec<usize> = (0..self.cols).filter(|&j| j != c).collect();
        self.select_columns(&keep)
    }

    /// Contraction of column `c`: a change of row basis turns column `c`
    /// into a standard basis vector, then that row and column are removed.
    /// A zero column is a loop; contracting it is the same as deleting it.
    pub fn contract_column(&self, c: usize) -> Self {
        let Some(p) = (0..self.rows).find(|&r| !self.field.is_zero(self.get(r, c))) else {
            return self.delete_column(c);
        };
        let mut m = self.clone();
        let inv = m.field.inv(m.get(p, c));
        for r in 0..m.rows {
            if r != p && !m.field.is_zero(m.get(r, c)) {
                let factor = m.field.mul(m.get(r, c), &inv);
                m.eliminate(r, p, &factor);
            }
        }
        let rows: Vec<usize> = (0..m.rows).filter(|&r| r != p).collect();
        let cols: Vec<usize> = (0..m.cols).filter(|&j| j != c).collect();
        Dense::from_fn(m.field.clone(), rows.len(), cols.len(), |r, j| m.get(rows[r], cols[j]).clone())
    }

    /// Drops zero rows.
    pub fn without_zero_rows(&self) -> Self {
        let keep: Vec<usize> = (0..self.rows)
            .filter(|&r| self.row(r).iter().any(|x| !self.field.is_zero(x)))
            .collect();
        self.select_rows(&keep)
    }
}

/// Output of [`ExactMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: ExactMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    Prime(Dense<PrimeField>),
    Rational(Dense<Rationals>),
}

/// A matrix over a field chosen at run time.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix(Repr);

macro_rules! with_dense {
    ($self:expr, $m:ident => $body:expr) => {
        match &$self.0 {
            Repr::Prime($m) => $body,
            Repr::Rational($m) => $body,
        }
    };
}

impl From<Dense<PrimeField>> for ExactMatrix {
    fn from(m: Dense<PrimeField>) -> Self {
        ExactMatrix(Repr::Prime(m))
    }
}

impl From<Dense<Rationals>> for ExactMatrix {
    fn from(m: Dense<Rationals>) -> Self {
        ExactMatrix(Repr::Rational(m))
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        with_dense!(self, m => fmt::Debug::fmt(m, f))
    }
}

/// Visitor over the concrete field of an [`ExactMatrix`].
pub trait DenseVisitor {
    type Output;
    fn visit<F: Field>(self, m: &Dense<F>) -> Self::Output;
}

impl ExactMatrix {
    pub fn from_rows(spec: FieldSpec, rows: &[Vec<FieldScalar>]) -> Result<Self> {
        let k = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Shape {
                rows: k,
                cols: n,
                found: bad.len(),
            });
        }
        fn build<F: Field>(field: F, rows: &[Vec<FieldScalar>], k: usize, n: usize) -> Result<Dense<F>> {
            let mut data = Vec::with_capacity(k * n);
            for row in rows {
                for s in row {
                    data.push(field.from_scalar(s)?);
                }
            }
            Ok(Dense::new(field, k, n, data))
        }
        Ok(match spec {
            FieldSpec::PrimeField { modulus } => build(PrimeField::new(modulus)?, rows, k, n)?.into(),
            FieldSpec::Rationals => build(Rationals, rows, k, n)?.into(),
        })
    }

    /// Integer entries, reduced into the field.
    pub fn from_i64_rows(spec: FieldSpec, rows: &[Vec<i64>]) -> Result<Self> {
        let scalars: Vec<Vec<FieldScalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| spec.scalar_from_i64(v)).collect())
            .collect();
        Self::from_rows(spec, &scalars)
    }

    pub fn spec(&self) -> FieldSpec {
        with_dense!(self, m => m.field().spec())
    }
    pub fn rows(&self) -> usize {
        with_dense!(self, m => m.rows())
    }
    pub fn cols(&self) -> usize {
        with_dense!(self, m => m.cols())
    }

    pub fn get(&self, r: usize, c: usize) -> FieldScalar {
        with_dense!(self, m => m.field().to_scalar(m.get(r, c)))
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldScalar>> {
        (0..self.rows())
            .map(|r| (0..self.cols()).map(|c| self.get(r, c)).collect())
            .collect()
    }

    /// Runs `v` on the concrete dense matrix.
    pub fn visit<V: DenseVisitor>(&self, v: V) -> V::Output {
        with_dense!(self, m => v.visit(m))
    }

    fn check_cols(&self, cols: &[usize]) -> Result<()> {
        let n = self.cols();
        match cols.iter().find(|&&c| c >= n) {
            Some(&c) => Err(Error::IndexOutOfRange { index: c, n }),
            None => Ok(()),
        }
    }

    pub fn rref(&self) -> Rref {
        with_dense!(self, m => {
            let (reduced, pivot_cols) = m.rref();
            Rref { reduced: reduced.into(), rank: pivot_cols.len(), pivot_cols }
        })
    }

    pub fn rank(&self) -> usize {
        with_dense!(self, m => m.rank())
    }

    /// Rank of the columns `cols` (0-based).
    pub fn column_rank(&self, cols: &[usize]) -> Result<usize> {
        self.check_cols(cols)?;
        Ok(with_dense!(self, m => m.column_rank(cols)))
    }

    /// Basis of `{v : v . G[:, cols] = 0}`; has `rows - column_rank(cols)` vectors.
    pub fn left_kernel_basis(&self, cols: &[usize]) -> Result<Vec<Vec<FieldScalar>>> {
        self.check_cols(cols)?;
        Ok(with_dense!(self, m => m
            .left_kernel(cols)
            .into_iter()
            .map(|v| v.iter().map(|x| m.field().to_scalar(x)).collect())
            .collect()))
    }

    /// `v . G` for a row vector `v` of length `rows`.
    pub fn left_mul(&self, v: &[FieldScalar]) -> Result<Vec<FieldScalar>> {
        if v.len() != self.rows() {
            return Err(Error::Shape {
                rows: 1,
                cols: self.rows(),
                found: v.len(),
            });
        }
        with_dense!(self, m => {
            let coeffs = v.iter().map(|s| m.field().from_scalar(s)).collect::<Result<Vec<_>>>()?;
            Ok(m.left_mul(&coeffs).iter().map(|x| m.field().to_scalar(x)).collect())
        })
    }

    pub fn is_zero_column(&self, c: usize) -> bool {
        with_dense!(self, m => m.is_zero_column(c))
    }

    pub fn select_columns(&self, cols: &[usize]) -> Result<Self> {
        self.check_cols(cols)?;
        Ok(with_dense!(self, m => m.select_columns(cols).into()))
    }

    pub fn delete_column(&self, c: usize) -> Self {
        with_dense!(self, m => m.delete_column(c).into())
    }

    pub fn contract_column(&self, c: usize) -> Self {
        with_dense!(self, m => m.contract_column(c).into())
    }

    pub fn transpose(&self) -> Self {
        with_dense!(self, m => m.transpose().into())
    }

    pub fn nullspace(&self) -> Vec<Vec<FieldScalar>> {
        with_dense!(self, m => m
            .nullspace()
            .into_iter()
            .map(|v| v.iter().map(|x| m.field().to_scalar(x)).collect())
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn rref_of_echelon_matrix() {
        let m = ExactMatrix::from_i64_rows(gf(2), &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_cols, vec![0, 1]);
        assert_eq!(r.reduced, m);
    }

    #[test]
    fn rref_of_zero_matrix() {
        let m = ExactMatrix::from_i64_rows(gf(3), &[vec![0, 0, 0], vec![0, 0, 0]]).unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivot_cols.is_empty());
    }

    #[test]
    fn rational_rref_is_exact() {
        let q = FieldSpec::Rationals;
        let rows = vec![
            vec![q.parse_scalar("1/3").unwrap(), q.parse_scalar("2").unwrap(), q.parse_scalar("0").unwrap()],
            vec![q.parse_scalar("2/3").unwrap(), q.parse_scalar("4").unwrap(), q.parse_scalar("1/7").unwrap()],
        ];
        let m = ExactMatrix::from_rows(q, &rows).unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_cols, vec![0, 2]);
        assert_eq!(r.reduced.get(0, 1).to_string(), "6");
        assert_eq!(r.reduced.rref(), r);
    }

    #[test]
    fn column_rank_and_kernel() {
        let m = ExactMatrix::from_i64_rows(gf(2), &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        assert_eq!(m.column_rank(&[]).unwrap(), 0);
        assert_eq!(m.column_rank(&[0, 1, 2]).unwrap(), 2);
        assert_eq!(m.column_rank(&[2]).unwrap(), 1);
        assert!(m.column_rank(&[3]).is_err());
        assert!(m.left_kernel_basis(&[0, 1]).unwrap().is_empty());
        let k = m.left_kernel_basis(&[2]).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].iter().map(|s| s.to_string()).collect::<Vec<_>>(), vec!["1", "1"]);
        let all = m.left_kernel_basis(&[]).unwrap();
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn contraction_sends_column_to_unit_vector() {
        let m = ExactMatrix::from_i64_rows(gf(2), &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let c = m.contract_column(2);
        assert_eq!((c.rows(), c.cols()), (1, 2));
        assert_eq!(c.column_rank(&[0, 1]).unwrap(), 1);
        assert!(!c.is_zero_column(0) && !c.is_zero_column(1));
        let d = m.delete_column(2);
        assert_eq!(d, ExactMatrix::from_i64_rows(gf(2), &[vec![1, 0], vec![0, 1]]).unwrap());
    }

    #[test]
    fn left_mul_row_combination() {
        let m = ExactMatrix::from_i64_rows(gf(5), &[vec![1, 2, 3], vec![4, 0, 1]]).unwrap();
        let v = vec![gf(5).scalar_from_i64(2), gf(5).scalar_from_i64(1)];
        let w: Vec<String> = m.left_mul(&v).unwrap().iter().map(|s| s.to_string()).collect();
        assert_eq!(w, vec!["1", "4", "2"]);
    }
}
