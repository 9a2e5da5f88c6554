//! Cohomology of the twisting sheaves `O(l)` on `P(rho)` and on the
//! weighted projective stack.
//!
//! Both carry the same monomial bases: `H^0(O(l))` for `l >= 0` has basis
//! the monomials of degree `l` with nonnegative exponents, `H^n(O(l))` for
//! `l < 0` the monomials of degree `l` with all exponents negative, and
//! every other group vanishes.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::weights::WeightVector;

/// Upper bound on the number of exponent vectors materialized at once.
pub const BASIS_LIMIT: u128 = 1_000_000;

/// Largest degree the counting table is built for.
pub const DEGREE_LIMIT: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// The coarse space `P(rho)`.
    Space,
    /// The stack `[(A^{n+1} - 0) / G_m]`.
    Stack,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Space => "space",
            Variant::Stack => "stack",
        }
    }
}

fn check_degree(w: &WeightVector, i: usize) -> Result<()> {
    if i > w.dim() {
        return Err(Error::invalid(format!(
            "cohomological degree {i} out of range 0..={}",
            w.dim()
        )));
    }
    Ok(())
}

/// Coefficients of `prod_i 1/(1 - x^{rho_i})` up to `x^deg`.
fn partition_counts(w: &WeightVector, deg: u64) -> Result<Vec<u128>> {
    if deg > DEGREE_LIMIT {
        return Err(Error::Overflow(format!("degree {deg} is above the limit of {DEGREE_LIMIT}")));
    }
    let deg = deg as usize;
    let mut c = vec![0u128; deg + 1];
    c[0] = 1;
    for &r in w.as_slice() {
        let r = r as usize;
        for k in r..=deg {
            c[k] = c[k]
                .checked_add(c[k - r])
                .ok_or_else(|| Error::Overflow(format!("dimension in degree {k} exceeds u128")))?;
        }
    }
    Ok(c)
}

/// `#{e >= 0 : sum rho_i e_i = l}`.
fn count_nonnegative(w: &WeightVector, ell: i64) -> Result<u128> {
    if ell < 0 {
        return Ok(0);
    }
    Ok(*partition_counts(w, ell as u64)?.last().expect("nonempty"))
}

/// Degree `-l - sum rho_i` of the nonnegative problem matching `H^n(O(l))`
/// under `e_i -> -1 - e_i`.
fn dual_degree(w: &WeightVector, ell: i64) -> Result<i64> {
    let total: i64 = w
        .as_slice()
        .iter()
        .try_fold(0i64, |a, &r| a.checked_add(i64::try_from(r).ok()?))
        .ok_or_else(|| Error::Overflow("weight sum".into()))?;
    ell.checked_neg()
        .and_then(|x| x.checked_sub(total))
        .ok_or_else(|| Error::Overflow("dual degree".into()))
}

pub fn h_dim(w: &WeightVector, i: usize, ell: i64) -> Result<u128> {
    check_degree(w, i)?;
    let n = w.dim();
    if i == 0 && ell >= 0 {
        count_nonnegative(w, ell)
    } else if i == n && ell < 0 {
        count_nonnegative(w, dual_degree(w, ell)?)
    } else {
        Ok(0)
    }
}

/// Same numbers as [`h_dim`]; the stack and the coarse space share them.
pub fn h_dim_variant(w: &WeightVector, _variant: Variant, i: usize, ell: i64) -> Result<u128> {
    h_dim(w, i, ell)
}

/// All `e >= 0` with `sum rho_i e_i = ell`, in decreasing lexicographic
/// order (so `t_0^ell` comes first when `rho_0 = 1`).
fn enumerate_nonnegative(w: &[u64], ell: u64) -> Vec<Vec<i64>> {
    fn rec(w: &[u64], k: usize, left: u64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k + 1 == w.len() {
            if left.is_multiple_of(w[k]) {
                cur.push((left / w[k]) as i64);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for e in (0..=left / w[k]).rev() {
            cur.push(e as i64);
            rec(w, k + 1, left - e * w[k], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(w, 0, ell, &mut Vec::with_capacity(w.len()), &mut out);
    out
}

pub fn monomial_basis(w: &WeightVector, i: usize, ell: i64) -> Result<Vec<Vec<i64>>> {
    let dim = h_dim(w, i, ell)?;
    if dim > BASIS_LIMIT {
        return Err(Error::invalid(format!(
            "basis has {dim} elements, above the limit of {BASIS_LIMIT}"
        )));
    }
    if dim == 0 {
        return Ok(Vec::new());
    }
    if i == 0 {
        Ok(enumerate_nonnegative(w.as_slice(), ell as u64))
    } else {
        // e_i = -1 - f_i reverses the order, so reverse back.
        let dual = dual_degree(w, ell)? as u64;
        let mut out: Vec<Vec<i64>> = enumerate_nonnegative(w.as_slice(), dual)
            .into_iter()
            .map(|f| f.into_iter().map(|x| -1 - x).collect())
            .collect();
        out.reverse();
        Ok(out)
    }
}

/// Keyed by `(i, ell)`.
pub type Bases = BTreeMap<(usize, i64), Vec<Vec<i64>>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub weights: WeightVector,
    pub variant: Variant,
    pub dims: BTreeMap<(usize, i64), u128>,
    pub bases: Option<Bases>,
}

impl CohomologyTable {
    /// Every `H^i(O(l))` for `0 <= i <= n` and `l` in `ells`.
    pub fn compute(
        w: &WeightVector,
        variant: Variant,
        ells: impl IntoIterator<Item = i64>,
        with_bases: bool,
    ) -> Result<Self> {
        let mut dims = BTreeMap::new();
        let mut bases = with_bases.then(BTreeMap::new);
        for ell in ells {
            for i in 0..=w.dim() {
                dims.insert((i, ell), h_dim_variant(w, variant, i, ell)?);
                if let Some(b) = bases.as_mut() {
                    b.insert((i, ell), monomial_basis(w, i, ell)?);
                }
            }
        }
        Ok(CohomologyTable {
            weights: w.clone(),
            variant,
            dims,
            bases,
        })
    }

    /// One `{"i":..,"ell":..,"dim":..,"basis":[..]}` object per entry.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .dims
            .iter()
            .map(|(&(i, ell), &dim)| entry_json(i, ell, dim, self.bases.as_ref().and_then(|b| b.get(&(i, ell)))))
            .collect();
        json!({
            "weights": self.weights.to_json(),
            "variant": self.variant.name(),
            "entries": entries,
        })
    }
}

pub fn entry_json(i: usize, ell: i64, dim: u128, basis: Option<&Vec<Vec<i64>>>) -> Value {
    let dim_v = match u64::try_from(dim) {
        Ok(d) => json!(d),
        Err(_) => json!(dim.to_string()),
    };
    let mut v = json!({"i": i, "ell": ell, "dim": dim_v});
    if let Some(b) = basis {
        v["basis"] = json!(b);
    }
    v
}
