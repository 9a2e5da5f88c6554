mod common;

use common::*;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use wproj_core::cech::{e_pages, DoubleComplex};
use wproj_core::divisors::{class_group, picard_index, picard_index_by_search, stack_comparison};
use wproj_core::fan::{unimodular_completion, Fan};
use wproj_core::intlin::{solve_matrix, IntMatrix};
use wproj_core::weights::normalize;
use wproj_core::WeightVector;

fn gcd_one(len: std::ops::RangeInclusive<usize>, max: u64) -> impl Strategy<Value = WeightVector> {
    prop::collection::vec(1..=max, len).prop_map(|v| WeightVector::new(v).unwrap().divide_by_gcd())
}

/// `W U` for a unimodular `W` fixing the first row.
fn sheared(u: &IntMatrix, seed: &[i64]) -> IntMatrix {
    let n1 = u.rows();
    let mut wm = IntMatrix::identity(n1);
    let mut k = 0;
    let mut next = || {
        k += 1;
        BigInt::from(seed[k % seed.len()])
    };
    for i in 1..n1 {
        wm.add_row_multiple(i, 0, &next());
    }
    for i in 1..n1 {
        for j in 1..n1 {
            if i != j {
                let c = next();
                wm.add_row_multiple(i, j, &c);
            }
        }
    }
    wm.mul(u).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fan_invariants(v in gcd_one(2..=5, 30)) {
        let u = unimodular_completion(&v).unwrap();
        prop_assert!(u.is_unimodular());
        let row0: Vec<BigInt> = v.as_slice().iter().map(|&r| BigInt::from(r)).collect();
        prop_assert_eq!(u.row(0), row0.as_slice());
        let fan = Fan::new(&v).unwrap();
        fan.validate().unwrap();
        let y = to_i128(fan.ray_matrix());
        for j in 0..=v.dim() {
            let sub: Vec<Vec<i128>> = (0..=v.dim()).filter(|&i| i != j).map(|i| y[i].clone()).collect();
            prop_assert_eq!(laplace_det(&sub).abs(), v.as_slice()[j] as i128);
            prop_assert_eq!(fan.multiplicities()[j].clone(), BigInt::from(v.as_slice()[j]));
        }
    }

    #[test]
    fn divisor_invariants(v in gcd_one(2..=4, 12)) {
        let fan = Fan::new(&v).unwrap();
        let cl = class_group(&fan).unwrap();
        prop_assert_eq!(cl.group.free_rank(), 1);
        prop_assert!(cl.group.torsion().is_empty());
        let rho: Vec<BigInt> = v.as_slice().iter().map(|&r| BigInt::from(r)).collect();
        prop_assert_eq!(&cl.ray_degrees, &rho);
        let pic = picard_index(&fan).unwrap().index_in_class_group;
        prop_assert_eq!(&pic, &BigInt::from(v.lcm()));
        prop_assert_eq!(picard_index_by_search(&fan).unwrap(), pic.clone());
        prop_assert_eq!(pic.is_one(), fan.is_smooth());
        prop_assert_eq!(stack_comparison(&v).unwrap().picard_index, pic);
    }

    #[test]
    fn completion_invariance(v in gcd_one(3..=4, 12), seed in prop::collection::vec(-2i64..=2, 7)) {
        let u = unimodular_completion(&v).unwrap();
        let u2 = sheared(&u, &seed);
        prop_assume!(u2 != u);
        let f1 = Fan::new(&v).unwrap();
        let f2 = Fan::from_completion(&v, &u2).unwrap();
        f2.validate().unwrap();
        // Y2 = Y1 G with G unimodular
        let g = solve_matrix(f1.ray_matrix(), f2.ray_matrix()).unwrap().expect("rays related by GL_n");
        prop_assert!(g.is_unimodular());
        prop_assert_eq!(f1.multiplicities(), f2.multiplicities());
        prop_assert_eq!(class_group(&f1).unwrap(), class_group(&f2).unwrap());
        prop_assert_eq!(picard_index(&f1).unwrap(), picard_index(&f2).unwrap());
        let p1 = e_pages(&DoubleComplex::new(&f1).unwrap()).unwrap();
        let p2 = e_pages(&DoubleComplex::new(&f2).unwrap()).unwrap();
        for p in -1..=v.dim() as i32 {
            for q in 0..2 {
                prop_assert_eq!(p1.e1_group(p, q), p2.e1_group(p, q));
                prop_assert_eq!(p1.e2_group(p, q), p2.e2_group(p, q));
            }
        }
    }
}

#[test]
fn smooth_iff_trivial_normal_form() {
    for a in 1..=8u64 {
        for b in 1..=8 {
            for c in 1..=8 {
                let v = w(&[a, b, c]);
                if !v.satisfies_n() {
                    continue;
                }
                let fan = Fan::new(&v).unwrap();
                assert_eq!(fan.is_smooth(), normalize(&v).normal_form.is_all_ones(), "{v}");
            }
        }
    }
}

#[test]
fn picard_index_from_pages() {
    // E2^{-1,1} sits in E1^{-1,1} = Cl with index lcm(rho).
    for v in [&[1u64, 2, 3][..], &[2, 3, 5], &[1, 1, 1], &[1, 6, 10, 15], &[3, 4]] {
        let v = w(v);
        let fan = Fan::new(&v).unwrap();
        let pages = e_pages(&DoubleComplex::new(&fan).unwrap()).unwrap();
        let pic = pages.e2(-1, 1).unwrap();
        let cl = pages.e1(-1, 1).unwrap();
        assert_eq!(pic.generator_count(), 1);
        let c = cl.coordinates(&pic.generator(0)).unwrap();
        assert_eq!(c.len(), 1);
        assert!(!c[0].is_zero());
        assert_eq!(c[0].abs(), BigInt::from(v.lcm()), "{v}");
    }
}
