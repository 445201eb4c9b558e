use kgroth::ortho::{
    o_dominant, o_groth, o_hilbert_monomial, o_stability_check, o_vex_divided_difference_check,
    o_vexillary, OEngine, ORoute,
};
use kgroth::perm::{classify, diagrams, Involution};
use kgroth::poly::{oplus_vars, BetaPoly};
use kgroth::Error;

fn z(s: &str) -> Involution {
    Involution::parse(s).unwrap()
}

fn poly(terms: &[(i64, i32, &[u32])]) -> BetaPoly {
    BetaPoly::from_int_terms(terms)
}

fn vexillary(n: usize) -> Vec<Involution> {
    Involution::all(n)
        .into_iter()
        .filter(|y| classify(y).unwrap().vexillary)
        .collect()
}

#[test]
fn three_letter_table() {
    let two_x1 = poly(&[(2, 0, &[1]), (1, 1, &[2])]);
    let table = [
        ("123", BetaPoly::one(0)),
        ("213", two_x1.clone()),
        (
            "132",
            poly(&[
                (2, 0, &[1]),
                (2, 0, &[0, 1]),
                (1, 1, &[2]),
                (4, 1, &[1, 1]),
                (1, 1, &[0, 2]),
                (2, 2, &[2, 1]),
                (2, 2, &[1, 2]),
                (1, 3, &[2, 2]),
            ]),
        ),
        ("321", two_x1.mul(&oplus_vars(1, 2))),
    ];
    for (w, want) in table {
        for engine in [OEngine::E1, OEngine::E2] {
            assert_eq!(
                o_vexillary(&z(w), engine, None).unwrap(),
                want,
                "{w} {engine:?}"
            );
        }
    }
}

#[test]
fn dominant_3412() {
    let want = oplus_vars(1, 1)
        .mul(&oplus_vars(1, 2))
        .mul(&oplus_vars(2, 2));
    assert_eq!(o_dominant(&z("3412")).unwrap(), want);
    assert_eq!(o_vexillary(&z("3412"), OEngine::E1, None).unwrap(), want);
    assert_eq!(o_vexillary(&z("3412"), OEngine::E2, None).unwrap(), want);
}

#[test]
fn dominant_is_product_over_diagram() {
    for n in 1..=5 {
        for y in Involution::all(n) {
            if !classify(&y).unwrap().o_dominant {
                continue;
            }
            let want = diagrams(&y)
                .1
                .pairs()
                .iter()
                .fold(BetaPoly::one(0), |acc, &(i, j)| acc.mul(&oplus_vars(i, j)));
            assert_eq!(o_dominant(&y).unwrap(), want, "{y}");
        }
    }
}

#[test]
fn engines_agree_on_four_and_five_letters() {
    for n in [4, 5] {
        for y in vexillary(n) {
            let e1 = o_vexillary(&y, OEngine::E1, None).unwrap();
            assert_eq!(o_vexillary(&y, OEngine::E2, None).unwrap(), e1, "{y}");
            assert!(e1.has_nonnegative_coefficients(), "{y}");
        }
    }
}

#[test]
fn routes_agree_where_they_overlap() {
    for n in 1..=5 {
        for y in Involution::all(n) {
            let c = classify(&y).unwrap();
            if c.o_dominant && c.vexillary {
                assert_eq!(
                    o_dominant(&y).unwrap(),
                    o_vexillary(&y, OEngine::E1, None).unwrap(),
                    "{y}"
                );
            }
            if let Ok(h) = o_hilbert_monomial(&y) {
                if let Ok(g) = o_groth(&y, ORoute::Auto, OEngine::E1, None) {
                    assert_eq!(h.poly, g, "{y}");
                }
            }
        }
    }
}

#[test]
fn truncation_is_consistent() {
    let y = z("4321");
    let full = o_vexillary(&y, OEngine::E1, None).unwrap();
    for d in 3..=6 {
        assert_eq!(
            o_vexillary(&y, OEngine::E1, Some(d)).unwrap(),
            full.truncate(d),
            "d={d}"
        );
    }
}

#[test]
fn uncomputable_outside_scope() {
    match o_groth(&z("2143"), ORoute::Auto, OEngine::E1, None) {
        Err(Error::Uncomputable(_)) => {}
        other => panic!("expected uncomputable, got {other:?}"),
    }
}

#[test]
fn adding_fixed_points_is_stable() {
    for n in 1..=4 {
        for y in Involution::all(n) {
            if o_groth(&y, ORoute::Auto, OEngine::E1, None).is_ok() {
                assert!(o_stability_check(&y, 1).unwrap(), "{y}");
            }
        }
    }
}

#[test]
fn divided_differences_on_admissible_pairs() {
    let mut checked = 0;
    for y in Involution::all(4) {
        for i in 1..4 {
            if let Some(ok) = o_vex_divided_difference_check(&y, i).unwrap() {
                assert!(ok, "{y} {i}");
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}
