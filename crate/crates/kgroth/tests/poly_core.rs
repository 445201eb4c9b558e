use kgroth::poly::{
    beta_divided_difference, divided_difference, from_json, ominus, oplus, oplus_vars, rat,
    to_json, BetaPoly, BetaScalar, Monomial,
};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = BetaPoly> {
    prop::collection::vec(
        (-3i64..=3, 0i32..=2, prop::collection::vec(0u32..=2, 3)),
        0..6,
    )
    .prop_map(|terms| {
        let mut p = BetaPoly::zero(3);
        for (c, k, exps) in terms {
            p.add_term(Monomial::new(exps), &BetaScalar::monomial(rat(c), k));
        }
        p
    })
}

fn x(i: usize) -> BetaPoly {
    BetaPoly::var(i)
}

#[test]
fn oplus_of_variables() {
    let want = x(1).add(&x(2)).add(&BetaPoly::beta().mul(&x(1)).mul(&x(2)));
    assert_eq!(oplus_vars(1, 2), want);
    assert_eq!(oplus(&x(1), &x(2)), want);
}

#[test]
fn divided_difference_of_powers() {
    // ∂_1 x_1^3 = x_1^2 + x_1 x_2 + x_2^2
    let want = BetaPoly::from_int_terms(&[(1, 0, &[2]), (1, 0, &[1, 1]), (1, 0, &[0, 2])]);
    assert_eq!(divided_difference(&x(1).pow(3), 1).unwrap(), want);
    assert!(divided_difference(&x(3), 1).unwrap().is_zero());
}

#[test]
fn beta_divided_difference_of_x1() {
    // (1 + βx_2)x_1 = x_1 + βx_1x_2, and the second term is symmetric.
    assert_eq!(beta_divided_difference(&x(1), 1).unwrap(), BetaPoly::one(2));
    // (1 + βx_2)x_2 = x_2 + βx_2^2, so ∂_1 gives −1 − β(x_1 + x_2).
    let want = BetaPoly::from_int_terms(&[(-1, 0, &[]), (-1, 1, &[1]), (-1, 1, &[0, 1])]);
    assert_eq!(beta_divided_difference(&x(2), 1).unwrap(), want);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn ring_axioms(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.add(&g).mul(&h), f.mul(&h).add(&g.mul(&h)));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert!(f.sub(&f).is_zero());
        prop_assert!(f.is_canonical());
    }

    #[test]
    fn divided_difference_inverts_multiplication(f in poly(), i in 1usize..3) {
        let d = divided_difference(&f, i).unwrap();
        let lhs = d.mul(&x(i).sub(&x(i + 1)));
        prop_assert_eq!(lhs, f.sub(&f.swap_vars(i)));
    }

    #[test]
    fn beta_divided_difference_definition(f in poly(), i in 1usize..3) {
        let twisted = f.mul(&BetaPoly::one(3).add(&BetaPoly::beta().mul(&x(i + 1))));
        prop_assert_eq!(beta_divided_difference(&f, i).unwrap(), divided_difference(&twisted, i).unwrap());
    }

    #[test]
    fn divided_difference_leibniz(f in poly(), g in poly()) {
        // ∂(fg) = ∂(f) g + s(f) ∂(g)
        let lhs = divided_difference(&f.mul(&g), 1).unwrap();
        let rhs = divided_difference(&f, 1).unwrap().mul(&g).add(&f.swap_vars(1).mul(&divided_difference(&g, 1).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_round_trip(f in poly()) {
        let v = to_json(&f);
        prop_assert_eq!(from_json(&v).unwrap(), f);
    }

    #[test]
    fn ominus_undoes_oplus(f in poly(), g in poly()) {
        let d = 6;
        let g = g.sub(&g.component(0));
        let s = oplus(&f, &g).truncate(d);
        prop_assert_eq!(ominus(&s, &g, d).truncate(d), f.truncate(d));
    }

    #[test]
    fn beta_zero_specialization_is_a_homomorphism(f in poly(), g in poly()) {
        let zero = rat(0);
        prop_assert_eq!(f.mul(&g).specialize_beta(&zero), f.specialize_beta(&zero).mul(&g.specialize_beta(&zero)));
    }
}
