use std::sync::Arc;

use lgroup::algebra::Element;
use lgroup::catalog::catalog;
use lgroup::linalg::{kernel_basis, quotient_basis, rank, solve, Solution};
use lgroup::{ExactMatrix, FiniteGroup, Prime, Scalar, Valuation};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-500i64..500, 1i64..500).prop_map(|(n, d)| Scalar::new(n, d).unwrap())
}

fn prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11]).prop_map(|p| Prime::new(p).unwrap())
}

fn small_groups() -> Vec<Arc<FiniteGroup>> {
    catalog(8)
        .iter()
        .map(|s| Arc::new(s.build().unwrap()))
        .collect()
}

fn elements(k: usize) -> impl Strategy<Value = Vec<Element>> {
    prop::sample::select(small_groups()).prop_flat_map(move |g| {
        let g2 = g.clone();
        proptest::collection::vec(proptest::collection::vec(rational(), g.order()), k).prop_map(
            move |cs| {
                cs.into_iter()
                    .map(|c| Element::from_coeffs(&g2, c).unwrap())
                    .collect()
            },
        )
    })
}

fn small_entry() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        3 => Just(Scalar::zero()),
        2 => (-4i64..5).prop_map(Scalar::from_integer),
        1 => (-4i64..5, 1i64..4).prop_map(|(n, d)| Scalar::new(n, d).unwrap()),
    ]
}

fn matrix() -> impl Strategy<Value = ExactMatrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(small_entry(), c), r)
            .prop_map(move |rows| ExactMatrix::from_rows(rows, c).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ultrametric_inequality(x in rational(), y in rational(), p in prime()) {
        prop_assert!((&x + &y).abs_value(p) <= x.abs_value(p).max(y.abs_value(p)));
    }

    #[test]
    fn valuation_is_multiplicative(x in rational(), y in rational(), p in prime()) {
        let v = match (x.valuation(p), y.valuation(p)) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        };
        prop_assert_eq!((&x * &y).valuation(p), v);
    }

    #[test]
    fn convolution_norm_is_submultiplicative(fs in elements(2), p in prime()) {
        let prod = fs[0].convolve(&fs[1]).unwrap();
        prop_assert!(prod.norm(p) <= fs[0].norm(p).mul(fs[1].norm(p)));
    }

    #[test]
    fn augmentation_is_multiplicative(fs in elements(2)) {
        let prod = fs[0].convolve(&fs[1]).unwrap();
        prop_assert_eq!(prod.augmentation(), fs[0].augmentation() * fs[1].augmentation());
    }

    #[test]
    fn augmentation_ideal_is_two_sided(fs in elements(2)) {
        // f - ε(f)δ_e/1 lies in I_0; multiplying by anything stays there.
        let g = fs[0].group().clone();
        let i = fs[0].sub(&Element::unit(&g).scale(&fs[0].augmentation())).unwrap();
        prop_assert!(i.in_augmentation_ideal());
        prop_assert!(i.convolve(&fs[1]).unwrap().in_augmentation_ideal());
        prop_assert!(fs[1].convolve(&i).unwrap().in_augmentation_ideal());
    }

    #[test]
    fn convolution_is_associative(fs in elements(3)) {
        let left = fs[0].convolve(&fs[1]).unwrap().convolve(&fs[2]).unwrap();
        let right = fs[0].convolve(&fs[1].convolve(&fs[2]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rank_plus_nullity(m in matrix()) {
        let kernel = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn solve_round_trip(m in matrix(), seed in proptest::collection::vec(small_entry(), 6)) {
        let x: Vec<Scalar> = seed[..m.cols()].to_vec();
        let b = m.mul_vec(&x).unwrap();
        match solve(&m, &b).unwrap() {
            Solution::Consistent { solution, nullity } => {
                prop_assert_eq!(m.mul_vec(&solution).unwrap(), b);
                prop_assert_eq!(nullity, m.cols() - rank(&m));
            }
            Solution::Inconsistent { .. } => prop_assert!(false, "consistent system reported inconsistent"),
        }
    }

    #[test]
    fn inconsistency_certificate(m in matrix(), b in proptest::collection::vec(small_entry(), 6)) {
        let b = &b[..m.rows()];
        if let Solution::Inconsistent { certificate } = solve(&m, b).unwrap() {
            let combo = m.transpose().mul_vec(&certificate).unwrap();
            prop_assert!(combo.iter().all(Scalar::is_zero));
            let rhs: Scalar = certificate.iter().zip(b).map(|(c, x)| c * x).sum();
            prop_assert!(!rhs.is_zero());
        }
    }

    #[test]
    fn projection_kills_relations(m in matrix()) {
        let relations: Vec<Vec<Scalar>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        let q = quotient_basis(m.cols(), &relations).unwrap();
        prop_assert_eq!(q.dim(), m.cols() - rank(&m));
        for r in &relations {
            prop_assert!(q.project(r).unwrap().iter().all(Scalar::is_zero));
        }
        for (j, rep) in q.representatives().iter().enumerate() {
            let coords = q.project(rep).unwrap();
            prop_assert!(coords.iter().enumerate().all(|(k, c)| c.is_one() == (k == j) && (c.is_zero() || k == j)));
        }
    }
}
