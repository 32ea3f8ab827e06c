//! Smith normal form over the integers.

use super::matrix::{Matrix, Scalar};

/// `U * A * V = D` with `D` diagonal, `d_1 | d_2 | ... | d_r`, all positive.
#[derive(Clone, Debug)]
pub struct SmithForm<T> {
    pub invariants: Vec<T>,
    pub diagonal: Matrix<T>,
    pub u: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: Scalar> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// Invariant factors greater than one, i.e. the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<T> {
        self.invariants
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }

    /// Checks `U A V = D` by multiplication.
    pub fn verify(&self, a: &Matrix<T>) -> bool {
        self.u.mul(a).mul(&self.v) == self.diagonal
    }
}

/// Nonzero entry of least absolute value in the trailing block, ties broken by
/// lowest `(row, col)`.
fn min_pivot<T: Scalar>(d: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in t..d.rows() {
        for c in t..d.cols() {
            let x = &d[(r, c)];
            if x.is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((br, bc)) => x.abs() < d[(br, bc)].abs(),
            };
            if better {
                best = Some((r, c));
            }
        }
    }
    best
}

/// Computes the Smith normal form of `a` together with unimodular transforms.
pub fn smith_normal_form<T: Scalar>(a: &Matrix<T>) -> SmithForm<T> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = Matrix::identity(rows);
    let mut v = Matrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = min_pivot(&d, t) else {
            break;
        };
        d.swap_rows(t, pr);
        u.swap_rows(t, pr);
        d.swap_cols(t, pc);
        v.swap_cols(t, pc);
        loop {
            let p = d[(t, t)].clone();
            let mut remainder = false;
            for r in t + 1..rows {
                let x = d[(r, t)].clone();
                if x.is_zero() {
                    continue;
                }
                let q = -(x.clone() / p.clone());
                d.add_row_multiple(r, t, &q);
                u.add_row_multiple(r, t, &q);
                remainder |= !d[(r, t)].is_zero();
            }
            for c in t + 1..cols {
                let x = d[(t, c)].clone();
                if x.is_zero() {
                    continue;
                }
                let q = -(x.clone() / p.clone());
                d.add_col_multiple(c, t, &q);
                v.add_col_multiple(c, t, &q);
                remainder |= !d[(t, c)].is_zero();
            }
            if remainder {
                // Move the smallest remainder in row/column t into the pivot.
                let mut best = (t, t);
                for r in t + 1..rows {
                    if !d[(r, t)].is_zero() && d[(r, t)].abs() < d[best].abs() {
                        best = (r, t);
                    }
                }
                for c in t + 1..cols {
                    if !d[(t, c)].is_zero() && d[(t, c)].abs() < d[best].abs() {
                        best = (t, c);
                    }
                }
                d.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                d.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            // Enforce divisibility of the trailing block by the pivot.
            let bad = (t + 1..rows).find(|&r| {
                (t + 1..cols).any(|c| !(d[(r, c)].clone() % p.clone()).is_zero())
            });
            match bad {
                Some(r) => {
                    let one = T::one();
                    d.add_row_multiple(t, r, &one);
                    u.add_row_multiple(t, r, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let invariants = (0..t).map(|i| d[(i, i)].clone()).collect();
    SmithForm {
        invariants,
        diagonal: d,
        u,
        v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(rows: &[&[i64]]) -> Matrix<i64> {
        Matrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn diag_two_three() {
        let a = m(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.invariants, vec![1, 6]);
        assert!(s.verify(&a));
    }

    #[test]
    fn zero_matrix_has_empty_chain() {
        let a = m(&[&[0]]);
        let s = smith_normal_form(&a);
        assert!(s.invariants.is_empty());
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn two_four_six_eight() {
        let a = m(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.invariants, vec![2, 4]);
        assert!(s.verify(&a));
        assert_eq!(s.u.determinant().abs(), 1);
        assert_eq!(s.v.determinant().abs(), 1);
    }

    #[test]
    fn bigint_instantiation() {
        let a = Matrix::<BigInt>::from_rows(&[
            vec![12.into(), 18.into(), 6.into()],
            vec![4.into(), 8.into(), 2.into()],
        ])
        .unwrap();
        let s = smith_normal_form(&a);
        assert_eq!(s.invariants, vec![BigInt::from(2), BigInt::from(6)]);
        assert!(s.verify(&a));
    }
}
