use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Serialize, Serializer};

use crate::scalars::ScalarValue;

/// A dense square-or-rectangular matrix over the coefficient field, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<ScalarValue>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![ScalarValue::zero(); rows * cols],
        }
    }

    pub fn identity(d: usize) -> Self {
        Self::scalar(d, &ScalarValue::one())
    }

    pub fn scalar(d: usize, c: &ScalarValue) -> Self {
        let mut out = Self::zero(d, d);
        for i in 0..d {
            out.set(i, i, c.clone());
        }
        out
    }

    pub fn from_rows(rows: Vec<Vec<ScalarValue>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &ScalarValue {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: ScalarValue) {
        self.data[r * self.cols + c] = x;
    }

    pub fn add_at(&mut self, r: usize, c: usize, x: &ScalarValue) {
        let slot = &mut self.data[r * self.cols + c];
        *slot = &*slot + x;
    }

    pub fn to_rows(&self) -> Vec<Vec<ScalarValue>> {
        self.data
            .chunks(self.cols.max(1))
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, c: &ScalarValue) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn trace(&self) -> ScalarValue {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    /// Determinant by Gaussian elimination over the fraction field.
    pub fn det(&self) -> ScalarValue {
        assert_eq!(self.rows, self.cols, "square matrix");
        let d = self.rows;
        let mut a = self.clone();
        let mut det = ScalarValue::one();
        for col in 0..d {
            let Some(piv) = (col..d).find(|&r| !a.get(r, col).is_zero()) else {
                return ScalarValue::zero();
            };
            if piv != col {
                for c in 0..d {
                    a.data.swap(piv * d + c, col * d + c);
                }
                det = -det;
            }
            let p = a.get(col, col).clone();
            det = &det * &p;
            let inv = p.inv();
            for r in col + 1..d {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col) * &inv;
                for c in col..d {
                    let x = a.get(r, c) - &(&f * a.get(col, c));
                    a.set(r, c, x);
                }
            }
        }
        det
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zero(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    /// `P⁻¹ M P` for the permutation sending basis vector `i` to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Matrix {
        let mut out = Matrix::zero(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(perm[r], perm[c], self.get(r, c).clone());
            }
        }
        out
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&ScalarValue, &ScalarValue) -> ScalarValue) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &'a Matrix) -> Matrix {
        self.zip(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &'a Matrix) -> Matrix {
        self.zip(rhs, |a, b| a - b)
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = Matrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        out.add_at(r, c, &(a * b));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for row in self.to_rows() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Row-major nested arrays of `{num, den}` entries.
impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}
