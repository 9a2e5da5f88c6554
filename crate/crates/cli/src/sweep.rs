//! Exhaustive checks over all weight vectors with bounded entries.

use std::fmt::Write;

use itertools::Itertools;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};
use wproj_core::cech::{DoubleComplex, SpectralPages};
use wproj_core::divisors::{class_group, picard_index};
use wproj_core::fan::Fan;
use wproj_core::{Error, Result, WeightVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepFailure {
    pub weights: WeightVector,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub dim: usize,
    pub max_weight: u64,
    pub checked: usize,
    pub all_brauer_trivial: bool,
    pub all_d2_iso: bool,
    pub all_rows_exact: bool,
    pub all_class_group_rank_one: bool,
    pub all_picard_lcm: bool,
    pub failures: Vec<SweepFailure>,
}

impl SweepReport {
    pub fn to_json(&self) -> Value {
        let failures: Vec<Value> = self
            .failures
            .iter()
            .map(|f| json!({ "weights": f.weights.to_json(), "check": f.check, "detail": f.detail }))
            .collect();
        json!({
            "dim": self.dim,
            "max_weight": self.max_weight,
            "checked": self.checked,
            "all_brauer_trivial": self.all_brauer_trivial,
            "all_d2_iso": self.all_d2_iso,
            "all_rows_exact": self.all_rows_exact,
            "all_class_group_rank_one": self.all_class_group_rank_one,
            "all_picard_lcm": self.all_picard_lcm,
            "failures": failures,
        })
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        writeln!(out, "dim {} max weight {}: {} vectors", self.dim, self.max_weight, self.checked).unwrap();
        writeln!(out, "  brauer trivial     {}", self.all_brauer_trivial).unwrap();
        writeln!(out, "  d2 isomorphisms    {}", self.all_d2_iso).unwrap();
        writeln!(out, "  rows exact         {}", self.all_rows_exact).unwrap();
        writeln!(out, "  Cl rank one        {}", self.all_class_group_rank_one).unwrap();
        writeln!(out, "  Pic index = lcm    {}", self.all_picard_lcm).unwrap();
        for f in &self.failures {
            writeln!(out, "  FAIL {} {}: {}", f.weights, f.check, f.detail).unwrap();
        }
        out
    }
}

/// Sorted vectors with `n + 1` entries in `[1, m]`, one per permutation class.
pub fn sweep_vectors(n: usize, m: u64) -> Vec<WeightVector> {
    (1..=m)
        .combinations_with_replacement(n + 1)
        .map(|v| WeightVector::new(v).expect("entries are positive"))
        .collect()
}

const CHECKS: [&str; 5] = ["brauer", "d2", "rows", "class_group", "picard"];

/// Failed checks for one vector, as `(check, detail)`.
fn check_vector(w: &WeightVector) -> Vec<(&'static str, String)> {
    let mut failed = Vec::new();
    let reduced = w.divide_by_gcd();
    let fan = match Fan::new(&reduced) {
        Ok(f) => f,
        Err(e) => return CHECKS.iter().map(|c| (*c, e.to_string())).collect(),
    };
    let complex = DoubleComplex::new(&fan);
    let pages = complex.as_ref().map_err(Clone::clone).and_then(SpectralPages::new);
    match &pages {
        Ok(p) => {
            let br = p.brauer();
            if !br.is_trivial() {
                failed.push(("brauer", format!("E2^{{0,1}} = {br}")));
            }
            match p.d2_maps() {
                Ok(maps) => {
                    if let Some(m) = maps.iter().find(|m| !m.is_isomorphism) {
                        failed.push(("d2", format!("d2 at p={} is {} -> {}, not an isomorphism", m.p, m.source, m.target)));
                    }
                }
                Err(e) => failed.push(("d2", e.to_string())),
            }
        }
        Err(e) => {
            failed.push(("brauer", e.to_string()));
            failed.push(("d2", e.to_string()));
        }
    }
    match complex.as_ref().map_err(Clone::clone).and_then(|c| c.rows_exact()) {
        Ok(true) => {}
        Ok(false) => failed.push(("rows", "a row of the double complex has homology".to_string())),
        Err(e) => failed.push(("rows", e.to_string())),
    }
    match class_group(&fan) {
        Ok(cl) if cl.group.free_rank() == 1 && cl.group.torsion().is_empty() => {}
        Ok(cl) => failed.push(("class_group", format!("Cl = {}", cl.group))),
        Err(e) => failed.push(("class_group", e.to_string())),
    }
    if reduced.satisfies_n() {
        let lcm = BigInt::from(reduced.lcm());
        match picard_index(&fan) {
            Ok(p) if p.index_in_class_group == lcm => {}
            Ok(p) => failed.push(("picard", format!("index {} but lcm {lcm}", p.index_in_class_group))),
            Err(e) => failed.push(("picard", e.to_string())),
        }
    }
    failed
}

pub fn sweep(n: usize, m: u64, jobs: usize) -> Result<SweepReport> {
    if n < 2 {
        return Err(Error::invalid(format!("sweep needs dim >= 2, got {n}")));
    }
    if m < 1 {
        return Err(Error::invalid("sweep needs max-weight >= 1"));
    }
    if jobs < 1 {
        return Err(Error::invalid("sweep needs jobs >= 1"));
    }
    let vectors = sweep_vectors(n, m);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::internal(format!("thread pool: {e}")))?;
    // par_iter().collect() keeps input order, so output is independent of scheduling.
    let results: Vec<Vec<(&'static str, String)>> = pool.install(|| vectors.par_iter().map(check_vector).collect());

    let mut failures = Vec::new();
    for (w, fails) in vectors.iter().zip(results) {
        for (check, detail) in fails {
            failures.push(SweepFailure {
                weights: w.clone(),
                check: check.to_string(),
                detail,
            });
        }
    }
    let clean = |c: &str| !failures.iter().any(|f| f.check == c);
    Ok(SweepReport {
        dim: n,
        max_weight: m,
        checked: vectors.len(),
        all_brauer_trivial: clean("brauer"),
        all_d2_iso: clean("d2"),
        all_rows_exact: clean("rows"),
        all_class_group_rank_one: clean("class_group"),
        all_picard_lcm: clean("picard"),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_count() {
        assert_eq!(sweep_vectors(2, 6).len(), 56);
        assert_eq!(sweep_vectors(2, 1).len(), 1);
        assert_eq!(sweep_vectors(3, 5).len(), 70);
    }

    #[test]
    fn small_sweeps_are_clean() {
        for (n, m) in [(2, 1), (2, 4), (3, 3)] {
            let r = sweep(n, m, 2).unwrap();
            assert!(r.failures.is_empty(), "{:?}", r.failures);
            assert!(r.all_brauer_trivial && r.all_d2_iso && r.all_rows_exact);
        }
    }

    #[test]
    fn sweep_rejects_bad_ranges() {
        assert!(sweep(1, 4, 1).is_err());
        assert!(sweep(2, 0, 1).is_err());
        assert!(sweep(2, 3, 0).is_err());
    }
}
