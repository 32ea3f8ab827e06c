use std::fmt;
use std::ops::Index;

use num_traits::{FromPrimitive, Signed, ToPrimitive};

use num_integer::Integer;

use crate::error::{Error, Result};

/// Exact integer scalar usable by the integer linear algebra routines.
pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + Ord + Integer + Signed + FromPrimitive + ToPrimitive
{
}

impl<T> Scalar for T where
    T: Clone + fmt::Debug + fmt::Display + Ord + Integer + Signed + FromPrimitive + ToPrimitive
{
}

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::MalformedSpec("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicate positions are rejected.
    pub fn from_triplets(rows: usize, cols: usize, entries: &[(usize, usize, T)]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols);
        let mut seen = vec![false; rows * cols];
        for (r, c, v) in entries {
            if *r >= rows || *c >= cols {
                return Err(Error::MalformedSpec(format!("triplet ({r},{c}) out of range")));
            }
            if std::mem::replace(&mut seen[r * cols + c], true) {
                return Err(Error::MalformedSpec(format!("duplicate triplet ({r},{c})")));
            }
            m.data[r * cols + c] = v.clone();
        }
        Ok(m)
    }

    /// Parses the debug text format: one `row col value` triplet per line.
    pub fn parse_triplets(rows: usize, cols: usize, text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(Error::MalformedSpec(format!("bad triplet line `{line}`")));
            }
            let parse_idx = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::MalformedSpec(format!("bad index `{s}`")))
            };
            let v = parts[2]
                .parse::<i64>()
                .ok()
                .and_then(T::from_i64)
                .ok_or_else(|| Error::MalformedSpec(format!("bad value `{}`", parts[2])))?;
            entries.push((parse_idx(parts[0])?, parse_idx(parts[1])?, v));
        }
        Self::from_triplets(rows, cols, &entries)
    }

    /// Dumps nonzero entries in the `row col value` text format.
    pub fn to_triplets(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = &self[(r, c)];
                if !v.is_zero() {
                    out.push_str(&format!("{r} {c} {v}\n"));
                }
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[dst] += k * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &T) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = self.data[src * self.cols + c].clone();
            if !s.is_zero() {
                let d = &mut self.data[dst * self.cols + c];
                *d = d.clone() + k.clone() * s;
            }
        }
    }

    /// `col[dst] += k * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &T) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let s = self.data[r * self.cols + src].clone();
            if !s.is_zero() {
                let d = &mut self.data[r * self.cols + dst];
                *d = d.clone() + k.clone() * s;
            }
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let d = &mut self.data[r * self.cols + c];
            *d = -d.clone();
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a[(i, j)].clone() * a[(k, k)].clone()
                        - a[(i, k)].clone() * a[(k, j)].clone())
                        / prev.clone();
                    a.set(i, j, v);
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn triplet_round_trip() {
        let m = Matrix::<i64>::from_rows(&[vec![0, 3], vec![-2, 0]]).unwrap();
        let text = m.to_triplets();
        assert_eq!(text, "0 1 3\n1 0 -2\n");
        assert_eq!(Matrix::<i64>::parse_triplets(2, 2, &text).unwrap(), m);
    }

    #[test]
    fn duplicate_triplets_rejected() {
        let err = Matrix::<i64>::from_triplets(2, 2, &[(0, 0, 1), (0, 0, 2)]);
        assert!(err.is_err());
        assert!(Matrix::<i64>::from_triplets(1, 1, &[(1, 0, 1)]).is_err());
    }

    #[test]
    fn bareiss_determinant() {
        let m = Matrix::<BigInt>::from_rows(&[
            vec![2.into(), 4.into(), 1.into()],
            vec![6.into(), 8.into(), 0.into()],
            vec![1.into(), 1.into(), 1.into()],
        ])
        .unwrap();
        // 2(8) - 4(6) + 1(6 - 8) = -10
        assert_eq!(m.determinant(), BigInt::from(-10));
    }
}
