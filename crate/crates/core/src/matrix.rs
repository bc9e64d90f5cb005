//! Small dense matrices over exact rings.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, size, |r, c| if r == c { T::one() } else { T::zero() })
    }
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone + Zero + Add<Output = T>> Matrix<T> {
    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
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

impl<'a, T> Mul for &'a Matrix<T>
where
    T: Clone + Zero,
    for<'b> &'b T: Mul<&'b T, Output = T>,
{
    type Output = Matrix<T>;

    fn mul(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let prod = a * &rhs[(k, c)];
                    let slot = &mut out[(r, c)];
                    *slot = std::mem::replace(slot, T::zero()) + prod;
                }
            }
        }
        out
    }
}

impl<'a, T> Add for &'a Matrix<T>
where
    T: Clone,
    for<'b> &'b T: Add<&'b T, Output = T>,
{
    type Output = Matrix<T>;

    fn add(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a, T> Sub for &'a Matrix<T>
where
    T: Clone,
    for<'b> &'b T: Sub<&'b T, Output = T>,
{
    type Output = Matrix<T>;

    fn sub(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn product_and_identity() {
        let a = Matrix::from_fn(2, 3, |r, c| BigInt::from((r * 3 + c) as i64));
        let b = Matrix::from_fn(3, 2, |r, c| BigInt::from((r + c) as i64));
        let ab = &a * &b;
        assert_eq!(ab[(0, 0)], BigInt::from(5));
        assert_eq!(ab[(1, 1)], BigInt::from(26));
        let i = Matrix::<BigInt>::identity(2);
        assert_eq!(&i * &ab, ab);
        assert_eq!(i.trace(), BigInt::from(2));
        assert!((&ab - &ab).is_zero());
    }
}
