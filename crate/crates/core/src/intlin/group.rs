use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::smith::smith_normal_form;
use super::IntMatrix;
use crate::error::{Error, Result};
use crate::json;

/// A finitely generated abelian group `Z^r + Z/t_1 + ... + Z/t_k` in
/// invariant-factor form: `2 <= t_1 | t_2 | ... | t_k`.
///
/// The representation is canonical, so `==` tests isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        FgAbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/n`; `n = 0` gives `Z` and `n = 1` the trivial group.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_diagonal([n.into()])
    }

    /// The group `Z^k / diag(d_1, ..., d_k)` for arbitrary entries, which
    /// need not form a divisibility chain. Signs are ignored.
    pub fn from_diagonal<I: IntoIterator<Item = BigInt>>(diag: I) -> Self {
        let diag: Vec<BigInt> = diag.into_iter().map(|d| d.abs()).collect();
        let chain = diag
            .iter()
            .filter(|d| !d.is_zero())
            .collect::<Vec<_>>()
            .windows(2)
            .all(|w| w[1].is_multiple_of(w[0]));
        if chain {
            let free_rank = diag.iter().filter(|d| d.is_zero()).count();
            let torsion = diag.into_iter().filter(|d| *d > BigInt::one()).collect();
            return FgAbelianGroup { free_rank, torsion };
        }
        let k = diag.len();
        Self::from_smith_diagonal(k, &smith_normal_form(&IntMatrix::diagonal(k, k, diag)).invariant_factors)
    }

    /// Cokernel shape from Smith data: `rows` generators and the nonzero
    /// invariant factors of the relation matrix.
    pub(crate) fn from_smith_diagonal(rows: usize, factors: &[BigInt]) -> Self {
        FgAbelianGroup {
            free_rank: rows - factors.len(),
            torsion: factors.iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group when finite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let diag = self
            .torsion
            .iter()
            .chain(&other.torsion)
            .cloned()
            .chain(std::iter::repeat_n(BigInt::zero(), self.free_rank + other.free_rank));
        Self::from_diagonal(diag)
    }

    /// `G (x) Z_(p)`: the free part together with the p-primary torsion.
    pub fn localize_at_prime(&self, p: u64) -> Result<FgAbelianGroup> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let p = BigInt::from(p);
        let torsion = self
            .torsion
            .iter()
            .map(|t| {
                let mut part = BigInt::one();
                let mut rest = t.clone();
                while rest.is_multiple_of(&p) {
                    rest /= &p;
                    part *= &p;
                }
                part
            })
            .filter(|t| !t.is_one())
            .collect();
        Ok(FgAbelianGroup {
            free_rank: self.free_rank,
            torsion,
        })
    }

    /// `{"rank": r, "torsion": [...]}`
    pub fn to_json(&self) -> Value {
        json!({
            "rank": self.free_rank,
            "torsion": json::bigint_seq(&self.torsion),
        })
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(rank: usize, torsion: &[i64]) -> FgAbelianGroup {
        FgAbelianGroup::from_diagonal(
            torsion
                .iter()
                .map(|&t| BigInt::from(t))
                .chain(std::iter::repeat_n(BigInt::zero(), rank)),
        )
    }

    #[test]
    fn canonical_form_merges_coprime_factors() {
        assert_eq!(g(0, &[2, 3]), g(0, &[6]));
        assert_eq!(g(0, &[4, 6]).torsion(), &[BigInt::from(2), BigInt::from(12)]);
        assert_eq!(g(1, &[1, 1]), FgAbelianGroup::free(1));
    }

    #[test]
    fn localization_examples() {
        assert_eq!(g(1, &[6]).localize_at_prime(2).unwrap(), g(1, &[2]));
        assert_eq!(g(0, &[4, 2]).localize_at_prime(3).unwrap(), FgAbelianGroup::trivial());
        assert_eq!(g(0, &[12]).localize_at_prime(2).unwrap(), g(0, &[4]));
        assert_eq!(g(0, &[12]).localize_at_prime(4), Err(Error::NotPrime(4)));
        assert_eq!(g(0, &[12]).localize_at_prime(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn display() {
        assert_eq!(g(0, &[]).to_string(), "0");
        assert_eq!(g(2, &[2, 4]).to_string(), "Z^2 + Z/2 + Z/4");
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
