#![allow(dead_code)]

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use wproj_core::intlin::IntMatrix;
use wproj_core::WeightVector;

pub fn w(v: &[u64]) -> WeightVector {
    WeightVector::new(v.to_vec()).unwrap()
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn to_i128(m: &IntMatrix) -> Vec<Vec<i128>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| i128::try_from(x).unwrap()).collect())
        .collect()
}

/// Cofactor expansion along the first row.
pub fn laplace_det(m: &[Vec<i128>]) -> i128 {
    let k = m.len();
    if k == 0 {
        return 1;
    }
    if k == 1 {
        return m[0][0];
    }
    let mut total = 0;
    for j in 0..k {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
            .collect();
        let s = if j % 2 == 0 { 1 } else { -1 };
        total += s * m[0][j] * laplace_det(&minor);
    }
    total
}

/// `D_k` = gcd of all `k x k` minors, for `k = 1 ..= min(rows, cols)`.
pub fn determinantal_divisors(m: &[Vec<i128>], cols: usize) -> Vec<i128> {
    let rows = m.len();
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in (0..rows).combinations(k) {
            for cs in (0..cols).combinations(k) {
                let sub: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                g = g.gcd(&laplace_det(&sub));
            }
        }
        out.push(g);
    }
    out
}

/// Invariant factors (nonzero ones) from the determinantal divisors.
pub fn invariant_factors_oracle(m: &[Vec<i128>], cols: usize) -> Vec<i128> {
    let d = determinantal_divisors(m, cols);
    let mut out = Vec::new();
    let mut prev = 1i128;
    for &dk in &d {
        if dk == 0 {
            break;
        }
        out.push(dk / prev);
        prev = dk;
    }
    out
}

/// Every `e >= 0` with `sum w_i e_i = ell`, by nested search.
pub fn brute_nonnegative(w: &[u64], ell: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if ell < 0 {
        return out;
    }
    let ranges: Vec<_> = w.iter().map(|&r| 0..=(ell / r as i64)).collect();
    for e in ranges.into_iter().multi_cartesian_product() {
        let s: i64 = e.iter().zip(w).map(|(x, &r)| x * r as i64).sum();
        if s == ell {
            out.push(e);
        }
    }
    out
}

/// Every `e < 0` with `sum w_i e_i = ell`.
pub fn brute_negative(w: &[u64], ell: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if ell >= 0 {
        return out;
    }
    let ranges: Vec<_> = w.iter().map(|&r| (ell / r as i64)..=-1).collect();
    for e in ranges.into_iter().multi_cartesian_product() {
        let s: i64 = e.iter().zip(w).map(|(x, &r)| x * r as i64).sum();
        if s == ell {
            out.push(e);
        }
    }
    out
}
