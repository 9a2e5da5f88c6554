//! Class group, Cartier subgroup and the stack comparison.
//!
//! `Cl = Z^{n+1} / im(Y)`, where the `i`-th basis vector is the class of the
//! torus-invariant divisor of ray `v_i`. A divisor `sum a_i D_i` is Cartier
//! when on every maximal cone `J` some `m_J` in the character lattice has
//! `<m_J, v_i> = a_i` for all `i in J`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::intlin::{kernel_basis, smith_normal_form, solve_with, FgAbelianGroup, IntMatrix, PresentedGroup};
use crate::json;
use crate::weights::WeightVector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroupData {
    pub group: FgAbelianGroup,
    /// Degree of each ray divisor under `Cl ~ Z`, oriented to be positive.
    pub ray_degrees: Vec<BigInt>,
}

impl ClassGroupData {
    pub fn to_json(&self) -> Value {
        json!({
            "rank": self.group.free_rank(),
            "degrees": json::bigint_seq(&self.ray_degrees),
        })
    }
}

pub fn class_group(fan: &Fan) -> Result<ClassGroupData> {
    let y = fan.ray_matrix();
    let cl = PresentedGroup::quotient_of_free(y)?;
    if cl.group() != &FgAbelianGroup::free(1) {
        return Err(Error::internal(format!("class group is {}, expected Z", cl.group())));
    }
    let n1 = y.rows();
    let mut degrees = Vec::with_capacity(n1);
    for i in 0..n1 {
        let mut e = vec![BigInt::zero(); n1];
        e[i] = BigInt::one();
        let c = cl.coordinates(&e).expect("every vector lies in Z^{n+1}");
        degrees.push(c[0].clone());
    }
    let flip = degrees.iter().find(|d| !d.is_zero()).is_some_and(|d| d.is_negative());
    if flip {
        for d in &mut degrees {
            *d = -std::mem::take(d);
        }
    }
    Ok(ClassGroupData {
        group: cl.group().clone(),
        ray_degrees: degrees,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardData {
    /// Degree of a generator of the image of Cartier divisors in `Cl ~ Z`.
    pub cartier_subgroup_generator_degree: BigInt,
    pub index_in_class_group: BigInt,
}

/// Coefficient matrix of the Cartier gluing conditions: unknowns are the
/// `n`-vectors `m_0, ..., m_n` (one per maximal cone), constraints say
/// `<m_J - m_K, v_i> = 0` for every pair of cones and shared ray `i`.
fn cartier_constraints(fan: &Fan) -> IntMatrix {
    let n = fan.dim();
    let cones = fan.maximal_cones();
    let mut rows = Vec::new();
    for a in 0..cones.len() {
        for b in a + 1..cones.len() {
            for &i in cones[a].iter().filter(|i| cones[b].contains(i)) {
                let mut row = vec![BigInt::zero(); n * cones.len()];
                for (c, v) in fan.ray(i).iter().enumerate() {
                    row[a * n + c] = v.clone();
                    row[b * n + c] = -v.clone();
                }
                rows.push(row);
            }
        }
    }
    IntMatrix::from_big_rows(rows, n * cones.len())
}

/// Cone containing ray `i` whose local datum is read off for `a_i`.
fn owning_cone(fan: &Fan, i: usize) -> usize {
    (i + 1) % fan.maximal_cones().len()
}

/// Index of the Cartier subgroup in `Cl`, computed from the lattice of
/// compatible tuples `(m_J)`.
pub fn picard_index(fan: &Fan) -> Result<PicardData> {
    let cl = class_group(fan)?;
    let n = fan.dim();
    let kernel = kernel_basis(&cartier_constraints(fan));
    let mut g = BigInt::zero();
    for k in 0..kernel.cols() {
        let tuple = kernel.column(k);
        let mut degree = BigInt::zero();
        for i in 0..=n {
            let j = owning_cone(fan, i);
            let m = &tuple[j * n..(j + 1) * n];
            let a_i: BigInt = fan.ray(i).iter().zip(m).map(|(v, x)| v * x).sum();
            degree += a_i * &cl.ray_degrees[i];
        }
        g = g.gcd(&degree);
    }
    if g.is_zero() {
        return Err(Error::internal("no Cartier divisor of nonzero degree"));
    }
    Ok(PicardData {
        cartier_subgroup_generator_degree: g.clone(),
        index_in_class_group: g,
    })
}

/// The same index by search: the least `l >= 1` such that a divisor of
/// degree `l` is locally principal on every maximal cone.
pub fn picard_index_by_search(fan: &Fan) -> Result<BigInt> {
    let cl = class_group(fan)?;
    // a divisor of degree 1
    let deg_row = IntMatrix::from_big_rows(vec![cl.ray_degrees.clone()], cl.ray_degrees.len());
    let unit = crate::intlin::solve(&deg_row, &[BigInt::one()])?
        .ok_or_else(|| Error::internal("ray degrees do not generate Z"))?;
    let locals: Vec<_> = fan
        .maximal_cones()
        .iter()
        .map(|cone| (cone.clone(), smith_normal_form(&fan.ray_matrix().select_rows(cone))))
        .collect();
    // lcm of the local class group orders bounds the answer
    let bound: BigInt = fan.multiplicities().iter().fold(BigInt::one(), |l, m| l.lcm(m));
    let mut ell = BigInt::one();
    while ell <= bound {
        let ok = locals.iter().all(|(cone, snf)| {
            let rhs: Vec<BigInt> = cone.iter().map(|&i| &unit[i] * &ell).collect();
            solve_with(snf, &rhs).is_some()
        });
        if ok {
            return Ok(ell);
        }
        ell += 1;
    }
    Err(Error::internal("no Cartier multiple found below the multiplicity bound"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackComparison {
    /// `Pic` of the stack is generated by `O(1)`.
    pub stack_picard_generator_twist: u64,
    /// `pi^*: Pic(P(rho)) -> Pic(stack)` is multiplication by this.
    pub pullback_multiplier: BigUint,
    pub picard_index: BigInt,
}

impl StackComparison {
    /// Whether `pi^* O(l) -> O(l)` is asserted to be an isomorphism.
    pub fn comparison_is_isomorphism(&self, ell: &BigInt) -> bool {
        ell.is_multiple_of(&BigInt::from(self.pullback_multiplier.clone()))
    }
}

pub fn stack_comparison(w: &WeightVector) -> Result<StackComparison> {
    if w.gcd() != 1 {
        return Err(Error::invalid(format!("{w} has gcd {}; divide it out first", w.gcd())));
    }
    let fan = Fan::new(w)?;
    let index = picard_index(&fan)?.index_in_class_group;
    let lcm = w.lcm();
    if BigInt::from(lcm.clone()) != index {
        return Err(Error::internal(format!(
            "Cartier index {index} differs from lcm {lcm} for {w}"
        )));
    }
    Ok(StackComparison {
        stack_picard_generator_twist: 1,
        pullback_multiplier: lcm,
        picard_index: index,
    })
}

/// `{"class_group":{...},"picard_index":k,"stack_pullback_multiplier":k}`
pub fn divisor_report(w: &WeightVector) -> Result<Value> {
    let fan = Fan::new(w)?;
    let cl = class_group(&fan)?;
    let pic = picard_index(&fan)?;
    let stack = stack_comparison(w)?;
    Ok(json!({
        "class_group": cl.to_json(),
        "picard_index": json::bigint(&pic.index_in_class_group),
        "stack_pullback_multiplier": json::biguint(&stack.pullback_multiplier),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::build_fan;

    fn w(v: &[u64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn class_group_examples() {
        for v in [&[1u64, 1, 2][..], &[1, 1], &[2, 3, 5]] {
            let cl = class_group(&build_fan(&w(v)).unwrap()).unwrap();
            assert_eq!(cl.group, FgAbelianGroup::free(1));
            let want: Vec<i64> = v.iter().map(|&x| x as i64).collect();
            assert_eq!(cl.ray_degrees, ints(&want));
        }
    }

    #[test]
    fn picard_examples() {
        for (v, k) in [(&[1u64, 2, 3][..], 6), (&[1, 1, 1], 1), (&[1, 6, 10, 15], 30)] {
            let fan = build_fan(&w(v)).unwrap();
            let pic = picard_index(&fan).unwrap();
            assert_eq!(pic.index_in_class_group, BigInt::from(k));
            assert_eq!(pic.cartier_subgroup_generator_degree, BigInt::from(k));
            assert_eq!(picard_index_by_search(&fan).unwrap(), BigInt::from(k));
        }
    }

    #[test]
    fn stack_examples() {
        let s = stack_comparison(&w(&[1, 2])).unwrap();
        assert_eq!(s.pullback_multiplier, BigUint::from(2u32));
        assert_eq!(s.stack_picard_generator_twist, 1);
        assert!(s.comparison_is_isomorphism(&BigInt::from(4)));
        assert!(!s.comparison_is_isomorphism(&BigInt::from(1)));
        let s = stack_comparison(&w(&[1, 1, 1, 1])).unwrap();
        assert_eq!(s.pullback_multiplier, BigUint::one());
        assert!(stack_comparison(&w(&[4, 6])).is_err());
        let s = stack_comparison(&w(&[2, 3])).unwrap();
        assert_eq!(s.pullback_multiplier, BigUint::from(6u32));
    }

    #[test]
    fn report_json() {
        let v = divisor_report(&w(&[1, 2, 3])).unwrap();
        assert_eq!(
            v,
            json!({
                "class_group": {"rank": 1, "degrees": [1, 2, 3]},
                "picard_index": 6,
                "stack_pullback_multiplier": 6,
            })
        );
    }
}
