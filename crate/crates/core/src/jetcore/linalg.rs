//! Dense matrices and Gauss-Jordan elimination.
//!
//! Over the rationals everything is exact. Over floats a pivot is treated as
//! zero when `|pivot| < 1e-10 * max|entry|`.

use std::fmt;

use crate::error::{Error, Result};
use crate::jetcore::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    /// Scalar matrix `lambda * I`.
    pub fn scalar(n: usize, lambda: F) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = lambda.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::dim("matrix row length", c, row.len()));
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data,
        })
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<F>]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::dim("column length", rows, col.len()));
            }
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
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

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != other.rows {
            return Err(Error::dim("matrix product inner dimension", self.cols, other.rows));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += &a.mul(b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::dim("vector length", self.cols, v.len()));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &a.mul(b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &F) -> Matrix<F> {
        let mut out = self.clone();
        for a in &mut out.data {
            *a *= s;
        }
        out
    }

    fn check_same_shape(&self, other: &Matrix<F>) -> Result<()> {
        if self.rows != other.rows {
            return Err(Error::dim("matrix rows", self.rows, other.rows));
        }
        if self.cols != other.cols {
            return Err(Error::dim("matrix cols", self.cols, other.cols));
        }
        Ok(())
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != other.cols {
            return Err(Error::dim("matrix cols", self.cols, other.cols));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    fn max_magnitude(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let scale = self.max_magnitude();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let candidate = if F::FIELD == crate::jetcore::scalar::FieldKind::Float {
                (r..m.rows)
                    .filter(|&i| !m.get(i, c).negligible(scale))
                    .max_by(|&a, &b| {
                        m.get(a, c)
                            .magnitude()
                            .partial_cmp(&m.get(b, c).magnitude())
                            .unwrap_or(std::cmp::Ordering::Equal)
                    })
            } else {
                (r..m.rows).find(|&i| !m.get(i, c).is_zero())
            };
            let Some(p) = candidate else {
                // Flush float residue in this column below the pivot row.
                for i in r..m.rows {
                    m.set(i, c, F::zero());
                }
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            m.set(r, c, F::one());
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pv = m.get(r, j);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).sub(&factor.mul(pv));
                    m.set(i, j, v);
                }
                m.set(i, c, F::zero());
            }
            pivots.push(c);
            r += 1;
        }
        if F::FIELD == crate::jetcore::scalar::FieldKind::Float {
            for i in r..m.rows {
                for j in 0..m.cols {
                    m.set(i, j, F::zero());
                }
            }
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace, one vector per free column; the free
    /// coordinate is 1 and the other free coordinates are 0.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (row, &p) in pivots.iter().enumerate() {
                let e = r.get(row, free);
                if !e.is_zero() {
                    v[p] = -e.clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `M x = b`. Returns `None` when `b` is not in the column space,
    /// else a particular solution (free variables zero) and a kernel basis.
    pub fn solve_affine(&self, b: &[F]) -> Result<Option<AffineSolution<F>>> {
        if b.len() != self.rows {
            return Err(Error::dim("right-hand side length", self.rows, b.len()));
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, bi.clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Ok(Some(AffineSolution {
            particular: x,
            kernel: self.kernel_basis(),
        }))
    }

    /// A row vector `y` with `y M = 0` and `y . b != 0`, proving that
    /// `M x = b` has no solution. `None` when the system is solvable.
    pub fn infeasibility_certificate(&self, b: &[F]) -> Result<Option<Vec<F>>> {
        if b.len() != self.rows {
            return Err(Error::dim("right-hand side length", self.rows, b.len()));
        }
        let scale = b.iter().map(Scalar::magnitude).fold(self.max_magnitude(), f64::max);
        for y in self.transpose().kernel_basis() {
            let dot = dot(&y, b);
            if !dot.negligible(scale) {
                return Ok(Some(y));
            }
        }
        Ok(None)
    }

    pub fn inverse(&self) -> Result<Matrix<F>> {
        if !self.is_square() {
            return Err(Error::dim("square matrix", self.rows, self.cols));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

/// Solution set `particular + span(kernel)` of a linear system.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution<F> {
    pub particular: Vec<F>,
    pub kernel: Vec<Vec<F>>,
}

pub fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    let mut acc = F::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &x.mul(y);
        }
    }
    acc
}

pub fn add_vec<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn sub_vec<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn scale_vec<F: Scalar>(s: &F, a: &[F]) -> Vec<F> {
    a.iter().map(|x| s.mul(x)).collect()
}

pub fn is_zero_vec<F: Scalar>(a: &[F]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// True when `v` lies in the column span of the given vectors.
pub fn in_span<F: Scalar>(v: &[F], spanning: &[Vec<F>]) -> Result<bool> {
    if spanning.is_empty() {
        return Ok(is_zero_vec(v));
    }
    let m = Matrix::from_columns(v.len(), spanning)?;
    Ok(m.solve_affine(v)?.is_some())
}

/// True when the two families span the same subspace.
pub fn same_span<F: Scalar>(dim: usize, a: &[Vec<F>], b: &[Vec<F>]) -> Result<bool> {
    let rank = |vs: &[Vec<F>]| -> Result<usize> {
        if vs.is_empty() {
            Ok(0)
        } else {
            Ok(Matrix::from_columns(dim, vs)?.rank())
        }
    };
    let ra = rank(a)?;
    let rb = rank(b)?;
    let mut both = a.to_vec();
    both.extend(b.iter().cloned());
    Ok(ra == rb && rank(&both)? == ra)
}

impl<F: Scalar> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(Scalar::to_canonical).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetcore::scalar::{q, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect())
            .unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn kernel_of_single_row() {
        assert_eq!(m(&[&[1, -1]]).kernel_basis(), vec![v(&[1, 1])]);
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert!(Matrix::<Rational>::identity(2).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_rank_one() {
        assert_eq!(m(&[&[1, 2], &[2, 4]]).kernel_basis(), vec![v(&[-2, 1])]);
    }

    #[test]
    fn empty_matrix_has_full_kernel() {
        let e = Matrix::<Rational>::zeros(0, 3);
        assert_eq!(e.kernel_basis().len(), 3);
    }

    #[test]
    fn solve_inconsistent() {
        assert!(m(&[&[0]]).solve_affine(&v(&[1])).unwrap().is_none());
        let cert = m(&[&[0]]).infeasibility_certificate(&v(&[1])).unwrap().unwrap();
        assert_eq!(cert, v(&[1]));
    }

    #[test]
    fn solve_identity() {
        let s = Matrix::<Rational>::identity(3).solve_affine(&v(&[4, -1, 2])).unwrap().unwrap();
        assert_eq!(s.particular, v(&[4, -1, 2]));
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn solve_underdetermined() {
        let s = m(&[&[1, 1]]).solve_affine(&v(&[2])).unwrap().unwrap();
        assert_eq!(s.particular, v(&[2, 0]));
        assert!(same_span(2, &s.kernel, &[v(&[1, -1])]).unwrap());
    }

    #[test]
    fn solve_shape_mismatch() {
        assert!(m(&[&[1, 1]]).solve_affine(&v(&[1, 2])).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn float_pivot_threshold() {
        let a = Matrix::from_rows(vec![vec![1.0, 1.0], vec![1.0, 1.0 + 1e-13]]).unwrap();
        assert_eq!(a.rank(), 1);
        let b = Matrix::from_rows(vec![vec![1.0, 1.0], vec![1.0, 1.0 + 1e-6]]).unwrap();
        assert_eq!(b.rank(), 2);
    }
}
