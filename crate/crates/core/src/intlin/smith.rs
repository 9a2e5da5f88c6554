use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// `left * input * right = diagonal` with `left`, `right` unimodular and the
/// diagonal entries forming a divisibility chain with zeros trailing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
    /// The nonzero diagonal entries, in order.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Diagonal entry `i`, or zero past the end of the diagonal.
    pub fn diag(&self, i: usize) -> BigInt {
        if i < self.invariant_factors.len() {
            self.invariant_factors[i].clone()
        } else {
            BigInt::zero()
        }
    }
}

/// Position of the nonzero entry of least absolute value in the trailing
/// submatrix starting at `(t, t)`; ties go to the smallest row, then column.
fn min_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| abs < *b) {
                best = Some((i, j, abs));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Deterministic Smith normal form with transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let mut factors = Vec::new();

    for t in 0..rows.min(cols) {
        while let Some((pi, pj)) = min_pivot(&a, t) {
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let pivot = a[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&pivot);
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&pivot);
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // Row and column t are clear; enforce divisibility of the rest.
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_zero() {
            break;
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
        factors.push(a[(t, t)].clone());
    }

    SmithDecomposition {
        diagonal: a,
        left,
        right,
        invariant_factors: factors,
    }
}

/// Inverse of a unimodular matrix, or `None` when `|det| != 1`.
pub fn inverse_unimodular(m: &IntMatrix) -> Option<IntMatrix> {
    if !m.is_square() {
        return None;
    }
    let snf = smith_normal_form(m);
    if snf.rank() != m.rows() || snf.invariant_factors.iter().any(|d| *d != BigInt::from(1)) {
        return None;
    }
    // L M R = I  =>  M^{-1} = R L
    snf.right.mul(&snf.left).ok()
}

/// Columns spanning the kernel of `m` (a basis of the saturated lattice).
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let idx: Vec<usize> = (snf.rank()..m.cols()).collect();
    snf.right.select_columns(&idx)
}

/// An integer solution of `m x = b`, or `None` if there is none.
pub fn solve(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {} for a matrix with {} rows",
            b.len(),
            m.rows()
        )));
    }
    Ok(solve_with(&smith_normal_form(m), b))
}

/// Solves against a precomputed decomposition of the coefficient matrix.
pub fn solve_with(snf: &SmithDecomposition, b: &[BigInt]) -> Option<Vec<BigInt>> {
    // D (R^{-1} x) = L b
    let lb = snf.left.mul_vec(b).expect("shape checked by caller");
    let mut y = vec![BigInt::zero(); snf.right.rows()];
    for (i, v) in lb.iter().enumerate() {
        if i < snf.rank() {
            let (q, r) = v.div_rem(&snf.invariant_factors[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !v.is_zero() {
            return None;
        }
    }
    Some(snf.right.mul_vec(&y).expect("square transform"))
}

/// Solves `m W = b` column by column.
pub fn solve_matrix(m: &IntMatrix, b: &IntMatrix) -> Result<Option<IntMatrix>> {
    if b.rows() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has {} rows for a matrix with {} rows",
            b.rows(),
            m.rows()
        )));
    }
    let snf = smith_normal_form(m);
    let mut cols = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        match solve_with(&snf, &b.column(j)) {
            Some(x) => cols.push(x),
            None => return Ok(None),
        }
    }
    Ok(Some(IntMatrix::from_columns(m.cols(), &cols)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(m: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(m);
        let lmr = s.left.mul(m).unwrap().mul(&s.right).unwrap();
        assert_eq!(lmr, s.diagonal);
        assert!(s.left.is_unimodular());
        assert!(s.right.is_unimodular());
        s
    }

    #[test]
    fn diag_two_three() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = check(&m);
        assert_eq!(s.invariant_factors, ints(&[1, 6]));
        assert_eq!(s.diagonal, IntMatrix::from_rows(&[vec![1, 0], vec![0, 6]]));
    }

    #[test]
    fn identity_is_fixed() {
        let m = IntMatrix::identity(3);
        let s = check(&m);
        assert_eq!(s.diagonal, m);
        assert_eq!(s.left, m);
        assert_eq!(s.right, m);
    }

    #[test]
    fn ray_matrix_of_p124() {
        let m = IntMatrix::from_rows(&[vec![-2, -4], vec![1, 0], vec![0, 1]]);
        let s = check(&m);
        assert_eq!(s.invariant_factors, ints(&[1, 1]));
    }

    #[test]
    fn empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (2, 0)] {
            let s = check(&IntMatrix::zeros(r, c));
            assert!(s.invariant_factors.is_empty());
        }
    }

    #[test]
    fn solve_examples() {
        let two = IntMatrix::from_rows(&[vec![2]]);
        assert_eq!(solve(&two, &ints(&[4])).unwrap(), Some(ints(&[2])));
        assert_eq!(solve(&two, &ints(&[3])).unwrap(), None);
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![0, 2]]);
        assert_eq!(solve(&m, &ints(&[3, 2])).unwrap(), Some(ints(&[1, 1])));
        assert!(solve(&m, &ints(&[1])).is_err());
    }

    #[test]
    fn inverse_of_completion() {
        let u = IntMatrix::from_rows(&[vec![2, 3], vec![1, 2]]);
        let inv = inverse_unimodular(&u).unwrap();
        assert_eq!(u.mul(&inv).unwrap(), IntMatrix::identity(2));
        assert!(inverse_unimodular(&IntMatrix::from_rows(&[vec![2]])).is_none());
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 4]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).unwrap().is_zero());
    }
}
