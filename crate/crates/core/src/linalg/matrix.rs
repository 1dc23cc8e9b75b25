use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};

/// Dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        let p = self.field.modulus();
        for r in 0..self.rows {
            let row: Vec<i128> = self
                .row(r)
                .iter()
                // print p-1 as -1 and so on, which keeps small examples readable
                .map(|&a| if a > p / 2 { a as i128 - p as i128 } else { a as i128 })
                .collect();
            writeln!(f, "  {:?}", row)?;
        }
        Ok(())
    }
}

/// Result of reducing a matrix to reduced row-echelon form.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of signed integers, reducing mod p.
    pub fn from_i64_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &a) in row.iter().enumerate() {
                m.set(r, c, field.from_i64(a));
            }
        }
        m
    }

    /// Stacks already-reduced vectors as rows.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<FieldElement>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "row length mismatch");
            data.extend_from_slice(row);
        }
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Uses the given vectors as columns.
    pub fn from_cols(field: PrimeField, rows: usize, cols: &[Vec<FieldElement>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, &a) in col.iter().enumerate() {
                m.set(r, c, a);
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, a: FieldElement) {
        debug_assert!(a < self.field.modulus());
        self.data[r * self.cols + c] = a;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let p = f.modulus() as u128;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                // accumulate in u128 and reduce every few terms; each product < 2^126
                let mut acc: u128 = 0;
                for k in 0..self.cols {
                    acc += self.get(r, k) as u128 * other.get(k, c) as u128;
                    if k & 1 == 1 {
                        acc %= p;
                    }
                }
                out.set(r, c, (acc % p) as u64);
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on shape or field mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).expect("matrix product")
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let f = self.field;
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(0, |acc, (&a, &b)| f.mul_add(acc, a, b)))
            .collect()
    }

    fn zip_with(&self, other: &Matrix, op: impl Fn(u64, u64) -> u64) -> Matrix {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    pub fn scale(&self, s: FieldElement) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, s)).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Outer product `a b^T`.
    pub fn outer(field: PrimeField, a: &[FieldElement], b: &[FieldElement]) -> Matrix {
        let mut m = Matrix::zeros(field, a.len(), b.len());
        for (r, &x) in a.iter().enumerate() {
            for (c, &y) in b.iter().enumerate() {
                m.set(r, c, field.mul(x, y));
            }
        }
        m
    }

    /// Leading `k x k` block.
    pub fn leading_block(&self, k: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field, k, k);
        for r in 0..k {
            for c in 0..k {
                m.set(r, c, self.get(r, c));
            }
        }
        m
    }

    /// Columns side by side.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c));
            }
        }
        m
    }

    /// Rows one above the other.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Gauss-Jordan elimination to reduced row-echelon form.
    pub fn echelon(&self) -> Echelon {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(sel) = (pr..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            if sel != pr {
                for k in 0..m.cols {
                    m.data.swap(sel * m.cols + k, pr * m.cols + k);
                }
            }
            let inv = f.inv(m.get(pr, c));
            for k in c..m.cols {
                let a = m.get(pr, k);
                m.set(pr, k, f.mul(a, inv));
            }
            for r in 0..m.rows {
                if r == pr {
                    continue;
                }
                let factor = m.get(r, c);
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for k in c..m.cols {
                    let v = f.mul_add(m.get(r, k), neg, m.get(pr, k));
                    m.set(r, k, v);
                }
            }
            pivots.push(c);
            pr += 1;
        }
        m.rows = pr;
        m.data.truncate(pr * m.cols);
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis of `{x : self * x = 0}`, one vector per entry.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let f = self.field;
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &c in &ech.pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &pc) in ech.pivots.iter().enumerate() {
                v[pc] = f.neg(ech.reduced.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let ech = aug.echelon();
        if ech.rank() < n || ech.pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, ech.reduced.get(r, n + c));
            }
        }
        Ok(inv)
    }
}

/// Standard bilinear pairing `a^T b`.
pub fn dot(field: PrimeField, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(0, |acc, (&x, &y)| field.mul_add(acc, x, y))
}

pub fn vec_add(field: PrimeField, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

pub fn vec_scale(field: PrimeField, a: &[FieldElement], s: FieldElement) -> Vec<FieldElement> {
    a.iter().map(|&x| field.mul(x, s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = PrimeField::default();
        assert_eq!(Matrix::identity(f, 3).rank(), 3);
        assert_eq!(Matrix::zeros(f, 3, 4).rank(), 0);
        let m = Matrix::from_i64_rows(f7(), &[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(Matrix::zeros(f, 0, 3).rank(), 0);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // det = 7
        let rows = [vec![1, 2], vec![3, 13]];
        assert_eq!(Matrix::from_i64_rows(f7(), &rows).rank(), 1);
        assert_eq!(Matrix::from_i64_rows(PrimeField::default(), &rows).rank(), 2);
    }

    #[test]
    fn kernel_is_annihilated() {
        let f = f7();
        let m = Matrix::from_i64_rows(f, &[vec![1, 2, 3, 4], vec![2, 4, 6, 1], vec![0, 0, 0, 0]]);
        let ker = m.kernel();
        assert_eq!(ker.len(), 4 - m.rank());
        for v in &ker {
            assert!(m.mul_vec(v).iter().all(|&a| a == 0));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = PrimeField::default();
        let m = Matrix::from_i64_rows(f, &[vec![2, 1, 0], vec![0, 1, -3], vec![5, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(f, 3));
        let singular = Matrix::from_i64_rows(f, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.inverse(), Err(Error::Singular));
    }

    #[test]
    fn mismatched_shapes_are_rejected() {
        let f = PrimeField::default();
        let a = Matrix::zeros(f, 2, 3);
        assert!(matches!(a.try_mul(&a), Err(Error::DimensionMismatch(_))));
        let b = Matrix::zeros(f7(), 3, 2);
        assert_eq!(a.try_mul(&b), Err(Error::FieldMismatch));
    }
}
