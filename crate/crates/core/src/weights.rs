//! Weight vectors and the reductions relating isomorphic weighted
//! projective spaces.
//!
//! A weight vector `rho = (rho_0, ..., rho_n)` grades `Z[t_0, ..., t_n]` by
//! `deg t_i = rho_i`. Two normalizations preserve `P(rho)`:
//!
//! * dividing every weight by `gcd(rho)`;
//! * Delorme reduction: with `d_i` the gcd of all weights but the `i`-th,
//!   `s_i = lcm(d_j : j != i)` and `s = lcm(s_i)`, replace `rho_i` by
//!   `rho_i / s_i`. Repeating this reaches a well-formed vector, one where
//!   every leave-one-out gcd is 1 (condition (N)).

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::intlin::is_prime;
use crate::json;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(Vec<u64>);

impl WeightVector {
    pub fn new(rho: Vec<u64>) -> Result<Self> {
        if rho.len() < 2 {
            return Err(Error::invalid(format!(
                "a weight vector needs at least 2 entries, got {}",
                rho.len()
            )));
        }
        if rho.contains(&0) {
            return Err(Error::invalid("weights must be positive"));
        }
        Ok(WeightVector(rho))
    }

    /// Accepts signed input, as parsed from a command line.
    pub fn from_signed(rho: &[i64]) -> Result<Self> {
        let mut out = Vec::with_capacity(rho.len());
        for &r in rho {
            if r <= 0 {
                return Err(Error::invalid(format!("weights must be positive, got {r}")));
            }
            out.push(r as u64);
        }
        Self::new(out)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The dimension `n`; there are `n + 1` weights.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn gcd(&self) -> u64 {
        self.0.iter().fold(0, |g, &r| g.gcd(&r))
    }

    pub fn lcm(&self) -> BigUint {
        self.0.iter().fold(BigUint::one(), |l, &r| l.lcm(&BigUint::from(r)))
    }

    pub fn sum(&self) -> BigInt {
        self.0.iter().map(|&r| BigInt::from(r)).sum()
    }

    pub fn sorted(&self) -> WeightVector {
        let mut v = self.0.clone();
        v.sort_unstable();
        WeightVector(v)
    }

    /// `rho / gcd(rho)`.
    pub fn divide_by_gcd(&self) -> WeightVector {
        let g = self.gcd();
        WeightVector(self.0.iter().map(|r| r / g).collect())
    }

    /// `gcd(rho_j : j != i)` for every `i`.
    pub fn leave_one_out_gcds(&self) -> Vec<u64> {
        (0..self.0.len())
            .map(|i| {
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(0, |g, (_, &r)| g.gcd(&r))
            })
            .collect()
    }

    /// Condition (N): every leave-one-out gcd is 1.
    pub fn satisfies_n(&self) -> bool {
        self.leave_one_out_gcds().iter().all(|&d| d == 1)
    }

    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(|&r| r == 1)
    }

    pub fn to_json(&self) -> Value {
        json!(self.0)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// One round of Delorme reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelormeStep {
    pub d: Vec<u64>,
    pub s_each: Vec<u64>,
    pub s: BigUint,
    pub output: WeightVector,
}

impl DelormeStep {
    /// The step data for `w`, which must have gcd 1.
    pub fn of(w: &WeightVector) -> DelormeStep {
        let d = w.leave_one_out_gcds();
        let s_each: Vec<u64> = (0..d.len())
            .map(|i| {
                d.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(1u64, |l, (_, &dj)| l.lcm(&dj))
            })
            .collect();
        let s = s_each.iter().fold(BigUint::one(), |l, &si| l.lcm(&BigUint::from(si)));
        // d_j divides rho_i for every j != i, hence so does s_i.
        let output = WeightVector(w.0.iter().zip(&s_each).map(|(r, si)| r / si).collect());
        DelormeStep { d, s_each, s, output }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationReport {
    pub input: WeightVector,
    pub gcd_divided: WeightVector,
    pub steps: Vec<DelormeStep>,
    pub normal_form: WeightVector,
    pub total_s: BigUint,
}

impl NormalizationReport {
    pub fn to_json(&self) -> Value {
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|st| {
                json!({
                    "d": st.d,
                    "s_each": st.s_each,
                    "s": json::biguint(&st.s),
                    "output": st.output.to_json(),
                })
            })
            .collect();
        json!({
            "input": self.input.to_json(),
            "gcd": self.input.gcd(),
            "gcd_divided": self.gcd_divided.to_json(),
            "steps": steps,
            "normal_form": self.normal_form.to_json(),
            "total_s": json::biguint(&self.total_s),
            "satisfies_N": self.normal_form.satisfies_n(),
        })
    }
}

/// Divides by the gcd, then applies Delorme steps until (N) holds.
pub fn normalize(w: &WeightVector) -> NormalizationReport {
    let gcd_divided = w.divide_by_gcd();
    let mut current = gcd_divided.clone();
    let mut steps = Vec::new();
    let mut total_s = BigUint::one();
    // Each step with s > 1 strictly lowers lcm(rho); s == 1 means (N).
    while !current.satisfies_n() {
        let step = DelormeStep::of(&current);
        debug_assert!(step.s > BigUint::one());
        total_s *= &step.s;
        current = step.output.clone();
        steps.push(step);
    }
    NormalizationReport {
        input: w.clone(),
        gcd_divided,
        steps,
        normal_form: current,
        total_s,
    }
}

/// `P(w1) ~ P(w2)` iff the normal forms agree up to permutation.
pub fn is_isomorphic(w1: &WeightVector, w2: &WeightVector) -> bool {
    normalize(w1).normal_form.sorted() == normalize(w2).normal_form.sorted()
}

/// How a twist `O(l)` on `P(rho)` is carried to `P(rho')` by one Delorme
/// step: `l = b_i rho_i + c_i d_i` with `0 <= b_i < d_i`, and
/// `l' = l - sum b_i rho_i` is divisible by `s`. Multiplication by
/// `t^b` identifies `O(l')` with `O(l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistTransport {
    pub ell: BigInt,
    pub d: Vec<u64>,
    pub b: Vec<u64>,
    pub c: Vec<BigInt>,
    pub ell_prime: BigInt,
    pub s: BigUint,
    pub reduced_weights: WeightVector,
    /// Exponent vector of the multiplying monomial, equal to `b`.
    pub monomial: Vec<u64>,
    pub reduced_twist: BigInt,
}

impl TwistTransport {
    pub fn to_json(&self) -> Value {
        json!({
            "ell": json::bigint(&self.ell),
            "d": self.d,
            "b": self.b,
            "c": json::bigint_seq(&self.c),
            "ell_prime": json::bigint(&self.ell_prime),
            "s": json::biguint(&self.s),
            "reduced_weights": self.reduced_weights.to_json(),
            "monomial": self.monomial,
            "reduced_twist": json::bigint(&self.reduced_twist),
        })
    }
}

pub fn twist_transport(w: &WeightVector, ell: &BigInt) -> Result<TwistTransport> {
    if w.gcd() != 1 {
        return Err(Error::invalid(format!(
            "twist transport needs gcd 1, {w} has gcd {}",
            w.gcd()
        )));
    }
    let step = DelormeStep::of(w);
    let mut b = Vec::with_capacity(w.len());
    let mut c = Vec::with_capacity(w.len());
    let mut ell_prime = ell.clone();
    for (&rho_i, &d_i) in w.as_slice().iter().zip(&step.d) {
        let d_big = BigInt::from(d_i);
        let rho_big = BigInt::from(rho_i);
        // gcd(rho_i, d_i) = 1 because gcd(rho) = 1
        let inv = mod_inverse(rho_i % d_i, d_i)
            .ok_or_else(|| Error::internal(format!("{rho_i} is not invertible mod {d_i}")))?;
        let b_i = (ell * BigInt::from(inv)).mod_floor(&d_big);
        let rest = ell - &b_i * &rho_big;
        let (c_i, r) = rest.div_rem(&d_big);
        if !r.is_zero() {
            return Err(Error::internal("twist residue does not reconstruct l"));
        }
        ell_prime -= &b_i * &rho_big;
        b.push(b_i.to_u64().expect("b_i < d_i fits"));
        c.push(c_i);
    }
    let s_big = BigInt::from(step.s.clone());
    let (reduced_twist, r) = ell_prime.div_rem(&s_big);
    if !r.is_zero() {
        return Err(Error::internal(format!("s = {} does not divide l' = {ell_prime}", step.s)));
    }
    Ok(TwistTransport {
        ell: ell.clone(),
        d: step.d,
        monomial: b.clone(),
        b,
        c,
        ell_prime,
        s: step.s,
        reduced_weights: step.output,
        reduced_twist,
    })
}

/// Inverse of `a` modulo `m`, with the convention that everything is
/// invertible modulo 1.
fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

/// `p_i = p^{v_p(rho_i)}`: keep only the p-power part of each weight.
pub fn p_reduce(w: &WeightVector, p: u64) -> Result<WeightVector> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let out = w
        .as_slice()
        .iter()
        .map(|&r| {
            let mut rest = r;
            let mut part = 1;
            while rest % p == 0 {
                rest /= p;
                part *= p;
            }
            part
        })
        .collect();
    Ok(WeightVector(out))
}

/// For well-formed `w`, `O(r)` is invertible iff `lcm(w) | r`.
pub fn is_invertible_twist(w: &WeightVector, r: &BigInt) -> Result<bool> {
    if !w.satisfies_n() {
        return Err(Error::invalid(format!("{w} does not satisfy condition (N)")));
    }
    Ok(r.is_multiple_of(&BigInt::from(w.lcm())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn construction_errors() {
        assert!(WeightVector::new(vec![1]).is_err());
        assert!(WeightVector::new(vec![1, 0]).is_err());
        assert!(WeightVector::from_signed(&[1, -2]).is_err());
        assert!(WeightVector::new(vec![]).is_err());
    }

    #[test]
    fn condition_n() {
        assert!(!w(&[1, 2, 4]).satisfies_n());
        assert!(w(&[1, 2, 3]).satisfies_n());
        assert!(w(&[1, 1]).satisfies_n());
        assert!(!w(&[2, 3]).satisfies_n());
    }

    #[test]
    fn normalize_gcd_only() {
        let r = normalize(&w(&[2, 4, 6]));
        assert_eq!(r.gcd_divided, w(&[1, 2, 3]));
        assert!(r.steps.is_empty());
        assert_eq!(r.normal_form, w(&[1, 2, 3]));
        assert_eq!(r.total_s, BigUint::one());
    }

    #[test]
    fn normalize_one_two_four() {
        let r = normalize(&w(&[1, 2, 4]));
        assert_eq!(r.steps.len(), 1);
        let st = &r.steps[0];
        assert_eq!(st.d, vec![2, 1, 1]);
        assert_eq!(st.s_each, vec![1, 2, 2]);
        assert_eq!(st.s, BigUint::from(2u32));
        assert_eq!(r.normal_form, w(&[1, 1, 2]));
        assert_eq!(w(&[1, 2, 4]).lcm(), &st.s * r.normal_form.lcm());
    }

    #[test]
    fn lines_collapse() {
        let r = normalize(&w(&[2, 3]));
        assert_eq!(r.steps[0].d, vec![3, 2]);
        assert_eq!(r.steps[0].s_each, vec![2, 3]);
        assert_eq!(r.total_s, BigUint::from(6u32));
        assert_eq!(r.normal_form, w(&[1, 1]));
    }

    #[test]
    fn isomorphism_examples() {
        assert!(is_isomorphic(&w(&[2, 3, 5]), &w(&[5, 3, 2])));
        assert!(is_isomorphic(&w(&[2, 4, 6]), &w(&[1, 2, 3])));
        assert!(!is_isomorphic(&w(&[1, 2, 3]), &w(&[1, 2, 4])));
    }

    #[test]
    fn twist_examples() {
        let t = twist_transport(&w(&[1, 2]), &big(1)).unwrap();
        assert_eq!(t.b, vec![1, 0]);
        assert_eq!(t.ell_prime, big(0));
        assert_eq!(t.monomial, vec![1, 0]);
        assert_eq!(t.reduced_twist, big(0));

        let t = twist_transport(&w(&[1, 2]), &big(2)).unwrap();
        assert_eq!(t.b, vec![0, 0]);
        assert_eq!(t.ell_prime, big(2));
        assert_eq!(t.reduced_twist, big(1));

        let t = twist_transport(&w(&[1, 2, 4]), &big(4)).unwrap();
        assert_eq!(t.b, vec![0, 0, 0]);
        assert_eq!(t.ell_prime, big(4));
        assert_eq!(t.reduced_twist, big(2));

        assert!(twist_transport(&w(&[2, 4]), &big(1)).is_err());
    }

    #[test]
    fn twist_negative_ell() {
        let t = twist_transport(&w(&[2, 3]), &big(-7)).unwrap();
        for i in 0..2 {
            let rho = big(w(&[2, 3]).as_slice()[i] as i64);
            assert_eq!(big(t.b[i] as i64) * rho + &t.c[i] * big(t.d[i] as i64), big(-7));
        }
        assert!((&t.ell_prime % big(6)).is_zero());
    }

    #[test]
    fn p_reduction() {
        assert_eq!(p_reduce(&w(&[12, 10, 15]), 2).unwrap(), w(&[4, 2, 1]));
        assert_eq!(p_reduce(&w(&[2, 3, 5]), 5).unwrap(), w(&[1, 1, 5]));
        assert_eq!(p_reduce(&w(&[1, 2, 4]), 2).unwrap(), w(&[1, 2, 4]));
        assert_eq!(p_reduce(&w(&[1, 2, 4]), 6), Err(Error::NotPrime(6)));
    }

    #[test]
    fn invertible_twists() {
        assert!(is_invertible_twist(&w(&[1, 2, 3]), &big(6)).unwrap());
        assert!(!is_invertible_twist(&w(&[1, 2, 3]), &big(3)).unwrap());
        assert!(is_invertible_twist(&w(&[1, 1]), &big(1)).unwrap());
        assert!(is_invertible_twist(&w(&[1, 2, 3]), &big(-12)).unwrap());
        assert!(is_invertible_twist(&w(&[1, 2, 4]), &big(4)).is_err());
    }
}
