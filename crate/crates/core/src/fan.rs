//! The toric fan of `P(rho)`.
//!
//! Complete `rho` to a unimodular matrix `U` with first row `rho`; the rows
//! of `U^{-1}` with its leftmost column removed are the rays
//! `v_0, ..., v_n` in `Z^n`. Every `n` of them span a maximal cone, and
//! `sum rho_i v_i = 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::intlin::{inverse_unimodular, IntMatrix};
use crate::json;
use crate::weights::WeightVector;

/// Unimodular matrix whose first row is `w`.
///
/// Runs the Euclidean algorithm as column operations on `w`, always reducing
/// by the entry of least absolute value (lowest index on ties), until only
/// `(1, 0, ..., 0)` is left. The accumulated operations form `C` with
/// `w C = e_0`, and the completion is `U = C^{-1}`.
pub fn unimodular_completion(w: &WeightVector) -> Result<IntMatrix> {
    Ok(euclid_columns(w)?.1)
}

/// Returns `(C, U)` with `w C = e_0` and `U = C^{-1}`.
fn euclid_columns(w: &WeightVector) -> Result<(IntMatrix, IntMatrix)> {
    if w.gcd() != 1 {
        return Err(Error::invalid(format!("{w} has gcd {}; divide it out first", w.gcd())));
    }
    let n1 = w.len();
    let mut v: Vec<BigInt> = w.as_slice().iter().map(|&r| BigInt::from(r)).collect();
    let mut c = IntMatrix::identity(n1);
    // u tracks C^{-1}: a column op on C is the inverse row op on U.
    let mut u = IntMatrix::identity(n1);
    loop {
        let pivot = (0..n1)
            .filter(|&i| !v[i].is_zero())
            .min_by(|&a, &b| v[a].abs().cmp(&v[b].abs()).then(a.cmp(&b)))
            .expect("gcd 1 vector is nonzero");
        let mut done = true;
        for j in 0..n1 {
            if j == pivot || v[j].is_zero() {
                continue;
            }
            let q = v[j].div_floor(&v[pivot]);
            // col_j -= q col_pivot
            let neg_q = -&q;
            let vp = v[pivot].clone();
            v[j] -= &q * vp;
            c.add_col_multiple(j, pivot, &neg_q);
            u.add_row_multiple(pivot, j, &q);
            done &= v[j].is_zero();
        }
        if done {
            if v[pivot].is_negative() {
                v[pivot] = -v[pivot].clone();
                c.negate_col(pivot);
                u.negate_row(pivot);
            }
            if pivot != 0 {
                v.swap(0, pivot);
                c.swap_cols(0, pivot);
                u.swap_rows(0, pivot);
            }
            break;
        }
    }
    debug_assert!(v[0] == BigInt::from(1));
    Ok((c, u))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    weights: WeightVector,
    completion: IntMatrix,
    ray_matrix: IntMatrix,
    maximal_cones: Vec<Vec<usize>>,
    multiplicities: Vec<BigInt>,
}

impl Fan {
    /// The fan from the default completion.
    pub fn new(w: &WeightVector) -> Result<Fan> {
        let (c, u) = euclid_columns(w)?;
        Self::assemble(w, u, drop_first_column(&c))
    }

    /// The fan from a caller-supplied completion `u`, which must be
    /// unimodular with first row `w`.
    pub fn from_completion(w: &WeightVector, u: &IntMatrix) -> Result<Fan> {
        let n1 = w.len();
        if u.rows() != n1 || u.cols() != n1 {
            return Err(Error::invalid(format!("completion must be {n1}x{n1}")));
        }
        if u.row(0).iter().zip(w.as_slice()).any(|(a, &b)| *a != BigInt::from(b)) {
            return Err(Error::invalid("first row of the completion must equal the weights"));
        }
        let inv = inverse_unimodular(u).ok_or_else(|| Error::invalid("completion is not unimodular"))?;
        Self::assemble(w, u.clone(), drop_first_column(&inv))
    }

    fn assemble(w: &WeightVector, completion: IntMatrix, ray_matrix: IntMatrix) -> Result<Fan> {
        let n = w.dim();
        let maximal_cones: Vec<Vec<usize>> =
            (0..=n).map(|j| (0..=n).filter(|&i| i != j).collect()).collect();
        let mut multiplicities = Vec::with_capacity(n + 1);
        for cone in &maximal_cones {
            multiplicities.push(ray_matrix.select_rows(cone).determinant()?.abs());
        }
        Ok(Fan {
            weights: w.clone(),
            completion,
            ray_matrix,
            maximal_cones,
            multiplicities,
        })
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.dim()
    }

    /// The unimodular completion `U`.
    pub fn completion(&self) -> &IntMatrix {
        &self.completion
    }

    /// `Y`: row `i` is the ray `v_i`.
    pub fn ray_matrix(&self) -> &IntMatrix {
        &self.ray_matrix
    }

    pub fn ray(&self, i: usize) -> &[BigInt] {
        self.ray_matrix.row(i)
    }

    /// Cone `j` is spanned by all rays except `v_j`.
    pub fn maximal_cones(&self) -> &[Vec<usize>] {
        &self.maximal_cones
    }

    /// `m_j = |det(v_i : i != j)|`.
    pub fn multiplicities(&self) -> &[BigInt] {
        &self.multiplicities
    }

    pub fn is_smooth(&self) -> bool {
        self.multiplicities.iter().all(|m| *m == BigInt::from(1))
    }

    pub fn singular_cone_count(&self) -> usize {
        self.multiplicities.iter().filter(|m| **m > BigInt::from(1)).count()
    }

    /// Checks the structural invariants: `U` unimodular with first row
    /// `rho`, `sum rho_i v_i = 0`, rays spanning `Z^n`, and every maximal
    /// cone full-dimensional.
    pub fn validate(&self) -> Result<()> {
        if !self.completion.is_unimodular() {
            return Err(Error::internal("completion is not unimodular"));
        }
        let rho: Vec<BigInt> = self.weights.as_slice().iter().map(|&r| BigInt::from(r)).collect();
        let sum = self.ray_matrix.transpose().mul_vec(&rho)?;
        if sum.iter().any(|x| !x.is_zero()) {
            return Err(Error::internal("weighted sum of rays is nonzero"));
        }
        let span = crate::intlin::cokernel(&self.ray_matrix.transpose());
        if !span.is_trivial() {
            return Err(Error::internal("rays do not span the lattice"));
        }
        if self.multiplicities.iter().any(Zero::is_zero) {
            return Err(Error::internal("a maximal cone is degenerate"));
        }
        Ok(())
    }

    /// `{"weights":[...],"U":[[...]],"rays":[[...]],"multiplicities":[...]}`
    pub fn to_json(&self) -> Value {
        json!({
            "weights": self.weights.to_json(),
            "U": self.completion.to_json(),
            "rays": self.ray_matrix.to_json(),
            "multiplicities": json::bigint_seq(&self.multiplicities),
        })
    }
}

fn drop_first_column(m: &IntMatrix) -> IntMatrix {
    m.select_columns(&(1..m.cols()).collect::<Vec<_>>())
}

pub fn build_fan(w: &WeightVector) -> Result<Fan> {
    Fan::new(w)
}

pub fn multiplicities(f: &Fan) -> &[BigInt] {
    f.multiplicities()
}

pub fn is_smooth(f: &Fan) -> bool {
    f.is_smooth()
}
