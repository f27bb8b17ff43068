//! Property-based invariants for the exact arithmetic core.

use fibarr::cyclo::CycloNum;
use fibarr::matrix::ExactMatrix;
use fibarr::rational::Rational;
use num_bigint::BigInt;
use proptest::prelude::*;

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12)
        .prop_map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
}

/// Cyclotomic numbers of small mixed orders.
fn arb_cyclo() -> impl Strategy<Value = CycloNum> {
    (
        prop::sample::select(vec![1u64, 3, 4, 6, 8]),
        arb_rational(),
        0i64..12,
    )
        .prop_map(|(order, r, e)| {
            CycloNum::root_of_unity(order, e).scale(&r)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn field_axioms(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
        // commutativity and associativity
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        // distributivity
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        // inverses
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn float_embedding_is_a_homomorphism(a in arb_cyclo(), b in arb_cyclo()) {
        let (xr, xi) = a.to_complex();
        let (yr, yi) = b.to_complex();
        let (pr, pi) = a.mul(&b).to_complex();
        let scale = (xr.hypot(xi) * yr.hypot(yi)).max(1.0);
        prop_assert!((pr - (xr * yr - xi * yi)).abs() < 1e-7 * scale);
        prop_assert!((pi - (xr * yi + xi * yr)).abs() < 1e-7 * scale);
    }

    #[test]
    fn rank_nullity(entries in prop::collection::vec(arb_cyclo(), 12)) {
        let m = ExactMatrix::from_fn(3, 4, |i, j| entries[4 * i + j].clone());
        let rank = m.rank();
        let kernel = m.right_kernel();
        prop_assert_eq!(rank + kernel.len(), 4);
        // exact rank agrees with the floating-point cross-check
        prop_assert_eq!(rank, m.float_rank(1e-8));
        // kernel vectors actually annihilate
        for v in &kernel {
            for i in 0..3 {
                let mut acc = CycloNum::zero();
                for j in 0..4 {
                    acc = acc.add(&m.get(i, j).mul(&v[j]));
                }
                prop_assert!(acc.is_zero());
            }
        }
    }
}
