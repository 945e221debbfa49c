//! Dense row-major matrices over a [`Ring`].
//!
//! Characteristic polynomials use Berkowitz's division-free algorithm, so
//! they are exact over `BigInt` and also work over polynomial rings (which
//! is how resultants are evaluated).

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cancel::{CancelToken, Cancelled};
use crate::poly::Poly;
use crate::scalar::{Field, FromInteger, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.data.chunks(self.cols.max(1)).take(self.rows).collect();
        f.debug_struct("Matrix")
            .field("shape", &(self.rows, self.cols))
            .field("rows", &rows)
            .finish()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Ring> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        Matrix { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Permutation matrix sending basis vector `i` to basis vector `images[i]`.
    pub fn permutation(images: &[usize]) -> Self {
        let n = images.len();
        let mut m = Self::zeros(n, n);
        for (i, &j) in images.iter().enumerate() {
            m[(j, i)] = T::one();
        }
        m
    }

    /// Companion matrix of a monic polynomial (its char poly is `p`).
    pub fn companion(p: &Poly<T>) -> Self {
        let n = p.degree().expect("companion of the zero polynomial");
        assert!(p.is_monic(), "companion matrix needs a monic polynomial");
        let mut m = Self::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = T::one();
        }
        for i in 0..n {
            m[(i, n - 1)] = -p.coeff(i);
        }
        m
    }

    pub fn block_diagonal(blocks: &[Matrix<T>]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
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

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|a| a.clone() * k.clone())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
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

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Submatrix on the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m[(i, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    /// `det(xI - A)` by Berkowitz's algorithm, monic of degree `n`.
    pub fn char_poly(&self) -> Poly<T> {
        self.char_poly_with(&CancelToken::never()).expect("never-cancelled token")
    }

    pub fn char_poly_with(&self, cancel: &CancelToken) -> Result<Poly<T>, Cancelled> {
        assert!(self.is_square(), "char_poly of a non-square matrix");
        let n = self.rows;
        // Descending coefficients of the char poly of the leading r×r block.
        let mut p: Vec<T> = vec![T::one()];
        for r in 0..n {
            cancel.check()?;
            let mut c = vec![T::zero(); r + 2];
            c[0] = T::one();
            c[1] = -self[(r, r)].clone();
            let mut v: Vec<T> = (0..r).map(|i| self[(i, r)].clone()).collect();
            for ck in c.iter_mut().skip(2) {
                let s = (0..r).fold(T::zero(), |acc, j| acc + self[(r, j)].clone() * v[j].clone());
                *ck = -s;
                v = (0..r)
                    .map(|i| (0..r).fold(T::zero(), |acc, j| acc + self[(i, j)].clone() * v[j].clone()))
                    .collect();
            }
            let mut next = vec![T::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, pj) in p.iter().enumerate().take(i + 1) {
                    *slot = slot.clone() + c[i - j].clone() * pj.clone();
                }
            }
            p = next;
        }
        p.reverse();
        Ok(Poly::new(p))
    }

    pub fn determinant(&self) -> T {
        let cp = self.char_poly();
        let c0 = cp.coeff(0);
        if self.rows.is_multiple_of(2) {
            c0
        } else {
            -c0
        }
    }

    /// Second exterior power (compound) in the basis `e_i ∧ e_j`, `i < j`,
    /// ordered lexicographically.
    pub fn exterior_square(&self) -> Self {
        assert!(self.is_square());
        let pairs = exterior_pairs(self.rows);
        let mut m = Self::zeros(pairs.len(), pairs.len());
        for (ci, &(a, b)) in pairs.iter().enumerate() {
            for (ri, &(c, d)) in pairs.iter().enumerate() {
                m[(ri, ci)] = self[(c, a)].clone() * self[(d, b)].clone()
                    - self[(d, a)].clone() * self[(c, b)].clone();
            }
        }
        m
    }
}

/// Lexicographic index pairs `(i, j)` with `i < j < n`.
pub fn exterior_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

impl<T: FromInteger> Matrix<T> {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| T::from_i64(x)).collect()).collect())
    }
}

impl<T: Field> Matrix<T> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, row * m.cols + j);
            }
            let inv = T::one() / m[(row, col)].clone();
            for j in 0..m.cols {
                m[(row, j)] = m[(row, j)].clone() * inv.clone();
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let f = m[(r, col)].clone();
                    for j in 0..m.cols {
                        m[(r, j)] = m[(r, j)].clone() - f.clone() * m[(row, j)].clone();
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the right null space.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = T::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(r.submatrix(&rows, &cols))
    }
}

impl Matrix<BigInt> {
    pub fn to_rational(&self) -> Matrix<BigRational> {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        use crate::scalar::ToF64;
        self.map(|x| x.to_f64_lossy())
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        self.to_rows()
            .into_iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).ok()).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{IntMatrix, IntPolynomial};
    use num_traits::{One, Zero};

    /// Laplace expansion of det(xI - A) over Z[x]; exponential, small n only.
    fn char_poly_laplace(a: &IntMatrix) -> IntPolynomial {
        let n = a.rows();
        let m: Matrix<IntPolynomial> = Matrix::from_rows(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let mut e = Poly::constant(-a[(i, j)].clone());
                            if i == j {
                                e = e + Poly::x();
                            }
                            e
                        })
                        .collect()
                })
                .collect(),
        );
        laplace(&m)
    }

    fn laplace(m: &Matrix<IntPolynomial>) -> IntPolynomial {
        let n = m.rows();
        if n == 0 {
            return Poly::one();
        }
        let mut acc = Poly::zero();
        for j in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let term = m[(0, j)].clone() * laplace(&m.submatrix(&rows, &cols));
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    #[test]
    fn berkowitz_matches_laplace_oracle() {
        let cases: Vec<IntMatrix> = vec![
            IntMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]),
            IntMatrix::from_i64_rows(&[&[0, 0, -1], &[1, 0, 2], &[0, 1, 1]]),
            IntMatrix::from_i64_rows(&[&[1, 2, 3, 4], &[0, -1, 2, 5], &[3, 3, 0, 1], &[-2, 1, 1, 1]]),
            IntMatrix::from_i64_rows(&[
                &[4, -1, 0, 2, 1],
                &[1, 1, 1, 1, 1],
                &[0, 2, -3, 1, 0],
                &[2, 0, 1, 0, -1],
                &[1, -1, 2, 3, 2],
            ]),
        ];
        for a in cases {
            assert_eq!(a.char_poly(), char_poly_laplace(&a), "{a:?}");
        }
    }

    #[test]
    fn berkowitz_is_generic() {
        let a: Matrix<i64> = Matrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.char_poly(), Poly::from_i64s(&[1, -3, 1]));
        let f: Matrix<f64> = Matrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        assert_eq!(f.determinant(), 1.0);
    }

    #[test]
    fn companion_and_determinant() {
        let p: IntPolynomial = "x^3 - x^2 - 2x + 1".parse().unwrap();
        let c = IntMatrix::companion(&p);
        assert_eq!(c.char_poly(), p);
        assert_eq!(c.determinant(), BigInt::from(-1));
        assert_eq!(IntMatrix::identity(0).char_poly(), Poly::one());
    }

    #[test]
    fn exterior_square_of_two_by_two_is_determinant() {
        let a = IntMatrix::from_i64_rows(&[&[3, 5], &[1, 4]]);
        let e = a.exterior_square();
        assert_eq!((e.rows(), e.cols()), (1, 1));
        assert_eq!(e[(0, 0)], a.determinant());
    }

    #[test]
    fn exterior_square_is_multiplicative() {
        let a = IntMatrix::from_i64_rows(&[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]);
        let b = IntMatrix::from_i64_rows(&[&[2, -1, 1], &[1, 1, 0], &[0, 2, 1]]);
        assert_eq!(a.mul(&b).exterior_square(), a.exterior_square().mul(&b.exterior_square()));
    }

    #[test]
    fn rational_inverse_and_kernel() {
        let a = IntMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]).to_rational();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        let s = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]).to_rational();
        assert!(s.inverse().is_none());
        let k = s.kernel();
        assert_eq!(k.len(), 1);
        assert!(s.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn permutation_matrix_sends_basis_vectors() {
        let p: IntMatrix = Matrix::permutation(&[1, 2, 0]);
        let e0 = vec![BigInt::one(), BigInt::zero(), BigInt::zero()];
        assert_eq!(p.mul_vec(&e0), vec![BigInt::zero(), BigInt::one(), BigInt::zero()]);
        assert_eq!(p.pow(3), Matrix::identity(3));
    }
}
