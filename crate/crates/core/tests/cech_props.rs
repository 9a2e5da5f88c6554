mod common;

use common::*;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use wproj_core::cech::{dilation_action, e_pages, pages_for_weights, DoubleComplex};
use wproj_core::fan::Fan;
use wproj_core::intlin::FgAbelianGroup;
use wproj_core::weights::p_reduce;
use wproj_core::WeightVector;

fn complex(v: &WeightVector) -> DoubleComplex {
    DoubleComplex::new(&Fan::new(v).unwrap()).unwrap()
}

fn prime_power(p: u64, e: &[u32]) -> WeightVector {
    let mut v = vec![1u64];
    v.extend(e.iter().map(|&k| p.pow(k)));
    WeightVector::new(v).unwrap()
}

/// `sum_{i in [n]} Z/p^{e_i}` and `sum_{i1 < i2} Z/p^{min}`.
fn expected_e1(p: u64, e: &[u32]) -> (FgAbelianGroup, FgAbelianGroup) {
    let first = FgAbelianGroup::from_diagonal(e.iter().map(|&k| BigInt::from(p.pow(k))));
    let mut pairs = Vec::new();
    for a in 0..e.len() {
        for b in a + 1..e.len() {
            pairs.push(BigInt::from(p.pow(e[a].min(e[b]))));
        }
    }
    (first, FgAbelianGroup::from_diagonal(pairs))
}

#[test]
fn prime_power_e1_pages() {
    for p in [2u64, 3] {
        for e in [&[1u32, 2][..], &[2, 1], &[0, 3], &[1, 1, 1], &[1, 2, 3], &[3, 0, 2, 1]] {
            let v = prime_power(p, e);
            let pages = e_pages(&complex(&v)).unwrap();
            let (e01, e11) = expected_e1(p, e);
            assert_eq!(pages.e1_group(0, 1), e01, "{v}");
            assert_eq!(pages.e1_group(1, 1), e11, "{v}");
            assert!(pages.brauer().is_trivial());
        }
    }
}

/// The `I = [n] - {i}` summand of `E1^{0,1}` is `Z/p^{e_i}`, generated by
/// the `v_0` coordinate, and `d1` sends it to the `v_0` coordinate of each
/// `[n] - {i1, i2}` block with sign `(-1)^{i2-1}` on `x_{i1}` and
/// `(-1)^{i1}` on `x_{i2}`.
#[test]
fn d1_coordinate_formula() {
    let e = [1u32, 2, 1];
    let v = prime_power(2, &e);
    let dc = complex(&v);
    let n = v.dim();
    let e1 = e_pages(&dc).unwrap();
    let dh = dc.d_h(0, 1);
    for i in 1..=n {
        let subset: Vec<usize> = (0..=n).filter(|&j| j != i).collect();
        let k = dc.subset_position(0, &subset).unwrap();
        let block = FgAbelianGroup::cyclic(2u64.pow(e[i - 1]));
        let local = wproj_core::intlin::cokernel(&dc.vertical_block(&subset));
        assert_eq!(local, block);

        let mut x = vec![BigInt::zero(); dc.rank(0, 1)];
        x[dc.block_offset(0, 1, k)] = BigInt::from(1);
        let y = dh.mul_vec(&x).unwrap();
        for other in 1..=n {
            if other == i {
                continue;
            }
            let (i1, i2) = (i.min(other), i.max(other));
            let target: Vec<usize> = (0..=n).filter(|&j| j != i1 && j != i2).collect();
            let t = dc.subset_position(1, &target).unwrap();
            let off = dc.block_offset(1, 1, t);
            let sign = if i == i1 { (-1i64).pow((i2 - 1) as u32) } else { (-1i64).pow(i1 as u32) };
            assert_eq!(y[off], BigInt::from(sign));
            assert!(y[off + 1..off + dc.block_size(1, 1)].iter().all(Zero::is_zero));
        }
        // nothing else is hit
        let hit: usize = y.iter().filter(|c| !c.is_zero()).count();
        assert_eq!(hit, n - 1);
        assert!(e1.e1(0, 1).unwrap().contains(&x));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn spectral_invariants(v in prop::collection::vec(1u64..=9, 3..=4)) {
        let v = WeightVector::new(v).unwrap().divide_by_gcd();
        let dc = complex(&v);
        dc.validate().unwrap();
        prop_assert!(dc.rows_exact().unwrap());
        let pages = e_pages(&dc).unwrap();
        prop_assert!(pages.d1_squares_to_zero().unwrap());
        prop_assert!(pages.brauer().is_trivial());
        for m in pages.d2_maps().unwrap() {
            prop_assert!(m.is_isomorphism);
            prop_assert_eq!(&m.source, &m.target);
        }
        prop_assert!(pages.e1_group(0, 1).is_finite());
    }

    #[test]
    fn dilation_is_multiplication(v in prop::collection::vec(1u64..=8, 3), d in 1u64..=6) {
        let v = WeightVector::new(v).unwrap().divide_by_gcd();
        let dc = complex(&v);
        let pages = e_pages(&dc).unwrap();
        let act = dilation_action(&dc, d).unwrap();
        let two = dilation_action(&dc, 2).unwrap();
        let both = dilation_action(&dc, 2 * d).unwrap();
        for p in -1..=v.dim() as i32 {
            for q in 0..2 {
                prop_assert!(act.on_e1(&pages, p, q).unwrap().is_scalar(&BigInt::from(d)));
                prop_assert!(act.on_e2(&pages, p, q).unwrap().is_scalar(&BigInt::from(d)));
                let comp = act.on_e2(&pages, p, q).unwrap().compose(&two.on_e2(&pages, p, q).unwrap()).unwrap();
                prop_assert_eq!(comp, both.on_e2(&pages, p, q).unwrap());
            }
        }
    }

    #[test]
    fn localization_consistency(v in prop::collection::vec(1u64..=40, 3..=4), pi in 0usize..4) {
        let p = [2u64, 3, 5, 7][pi];
        let v = WeightVector::new(v).unwrap().divide_by_gcd();
        let r = p_reduce(&v, p).unwrap();
        let a = pages_for_weights(&v).unwrap().brauer().localize_at_prime(p).unwrap();
        let b = pages_for_weights(&r).unwrap().brauer().localize_at_prime(p).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.is_trivial());
    }
}

#[test]
fn projective_line_degenerates() {
    let pages = pages_for_weights(&w(&[1, 1])).unwrap();
    assert!(pages.brauer().is_trivial());
    let maps = pages.d2_maps().unwrap();
    assert_eq!(maps.len(), 1);
    assert!(maps[0].is_isomorphism);
}
