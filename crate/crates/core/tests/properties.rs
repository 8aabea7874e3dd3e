mod common;

use nilcohopf::exactlin::{self, det, det_inv, kernel_basis, rank, rref, smith_normal_form, Mat, Rat};
use nilcohopf::format::{emit, parse_algebra};
use nilcohopf::liealg::{self, subspace_bracket, StructureConstants, Subspace};
use nilcohopf::malcev::{self, classify_endomorphism, image_index, GroupLaw};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn int_mat(max_n: usize, bound: i64) -> impl Strategy<Value = Mat> {
    (1..=max_n, 1..=max_n).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(-bound..=bound, r * c)
            .prop_map(move |v| Mat::from_vec(r, c, v.into_iter().map(exactlin::rat).collect()).unwrap())
    })
}

fn square_int_mat(max_n: usize, bound: i64) -> impl Strategy<Value = Mat> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(-bound..=bound, n * n)
            .prop_map(move |v| Mat::from_vec(n, n, v.into_iter().map(exactlin::rat).collect()).unwrap())
    })
}

fn rat_mat(max_n: usize) -> impl Strategy<Value = Mat> {
    (1..=max_n, 1..=max_n).prop_flat_map(|(r, c)| {
        proptest::collection::vec((-4i64..=4, 1i64..=3), r * c)
            .prop_map(move |v| Mat::from_vec(r, c, v.into_iter().map(|(p, q)| exactlin::frac(p, q)).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_plus_nullity(m in rat_mat(6)) {
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.len(), m.cols());
        for v in &k {
            prop_assert!(exactlin::is_zero_vec(&m.apply(v)));
        }
    }

    #[test]
    fn rref_is_idempotent_and_deterministic(m in rat_mat(5)) {
        let r = rref(&m);
        prop_assert_eq!(&rref(&r.reduced).reduced, &r.reduced);
        prop_assert_eq!(rref(&m), r);
    }

    #[test]
    fn det_matches_smith_product(m in square_int_mat(6, 5)) {
        let d = det(&m).unwrap();
        let s = smith_normal_form(&m).unwrap();
        if !d.is_zero() {
            prop_assert_eq!(Rat::from_integer(s.product()), d.abs());
        } else {
            prop_assert!(s.divisors.iter().any(Zero::is_zero) || s.divisors.len() < m.rows());
        }
    }

    #[test]
    fn smith_factors_are_unimodular(m in int_mat(5, 5)) {
        let s = smith_normal_form(&m).unwrap();
        prop_assert_eq!(det(&s.left).unwrap().abs(), Rat::one());
        prop_assert_eq!(det(&s.right).unwrap().abs(), Rat::one());
        let d = &(&s.left * &m) * &s.right;
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j {
                    prop_assert!(d[(i, j)].is_zero());
                }
            }
        }
        for w in s.divisors.windows(2) {
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            } else {
                prop_assert!(w[1].is_zero());
            }
        }
    }

    #[test]
    fn inverse_is_inverse(m in square_int_mat(5, 4)) {
        let (d, inv) = det_inv(&m).unwrap();
        prop_assert_eq!(d.is_zero(), inv.is_none());
        if let Some(inv) = inv {
            prop_assert_eq!(&m * &inv, Mat::identity(m.rows()));
        }
    }

    #[test]
    fn subspace_bracket_is_monotone(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let c = common::catalog();
        let sc = c.get("filiform", Some(6)).unwrap();
        let n = sc.dim();
        let a = Subspace::span(n, (0..2).map(|_| common::int_vector(&mut rng, n, 2)));
        let a2 = a.sum(&Subspace::span(n, [common::int_vector(&mut rng, n, 2)]));
        let b = Subspace::span(n, (0..2).map(|_| common::int_vector(&mut rng, n, 2)));
        let ab = subspace_bracket(&a, &b, &sc).unwrap();
        let a2b = subspace_bracket(&a2, &b, &sc).unwrap();
        prop_assert!(ab.is_subspace_of(&a2b));
    }

    #[test]
    fn parse_emit_identity(entries in proptest::collection::btree_map((1usize..=5, 1usize..=5), proptest::collection::vec((-9i64..=9, 1i64..=4), 5), 0..6)) {
        let table: Vec<((usize, usize), Vec<Rat>)> = entries
            .into_iter()
            .filter(|((i, j), _)| i < j)
            .map(|((i, j), v)| ((i - 1, j - 1), v.into_iter().map(|(p, q)| exactlin::frac(p, q)).collect()))
            .collect();
        let sc = StructureConstants::new(5, table).unwrap();
        prop_assert_eq!(parse_algebra(&emit(&sc)).unwrap(), sc);
    }

    #[test]
    fn bch_is_associative_on_rationals(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let sc = common::catalog().get("filiform", Some(5)).unwrap();
        let law = GroupLaw::new(&sc);
        let [a, b, c] = [0, 1, 2].map(|_| common::rat_vector(&mut rng, 5));
        prop_assert_eq!(law.mul(&law.mul(&a, &b), &c), law.mul(&a, &law.mul(&b, &c)));
        prop_assert_eq!(law.mul(&a, &law.inverse(&a)), law.identity());
    }

    #[test]
    fn exp_ad_is_unipotent(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let sc = common::catalog().get("filiform", Some(6)).unwrap();
        let x = common::rat_vector(&mut rng, 6);
        let f = malcev::exp_ad_automorphism(&x, &sc).unwrap();
        prop_assert!(malcev::induces_identity_on_abelianization(&f.matrix, &sc));
        prop_assert!((&f.matrix - &Mat::identity(6)).pow(6).is_zero());
        prop_assert_eq!(f.det, Rat::one());
    }

    #[test]
    fn index_is_multiplicative_on_abelian(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let sc = liealg::abelian(3);
        let f = common::abelian_automorphism(&mut rng, 3);
        let g = common::abelian_automorphism(&mut rng, 3);
        let index = |m: &Mat| image_index(&classify_endomorphism(m, &sc).unwrap()).unwrap();
        prop_assert_eq!(index(&(&f * &g)), index(&f) * index(&g));
    }
}

#[test]
fn operations_are_deterministic() {
    let c = common::catalog();
    let sc = c.get("cn8", None).unwrap();
    let a = nilcohopf::derivations::derivation_space(&sc);
    let b = nilcohopf::derivations::derivation_space(&sc);
    assert_eq!(a.basis(), b.basis());
    let m = Mat::from_i64(&[&[4, 6, 2], &[2, 8, 10], &[6, 0, 14]]);
    assert_eq!(smith_normal_form(&m).unwrap(), smith_normal_form(&m).unwrap());
}

#[test]
fn exhaustive_small_snf_agreement() {
    // every 2x2 integer matrix with entries in [-3, 3]
    let vals: Vec<i64> = (-3..=3).collect();
    for &a in &vals {
        for &b in &vals {
            for &c in &vals {
                for &d in &vals {
                    let m = Mat::from_i64(&[&[a, b], &[c, d]]);
                    let s = smith_normal_form(&m).unwrap();
                    let dt = (a * d - b * c).abs();
                    if dt != 0 {
                        assert_eq!(s.product(), nilcohopf::Int::from(dt), "{m}");
                    }
                }
            }
        }
    }
}
