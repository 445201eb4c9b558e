use kgroth::perm::{classify, o_code_and_shape, Involution, Permutation};
use kgroth::poly::{rat, BetaPoly};
use kgroth::stable::{
    gp, gp_sp_stable, gq, gq_o_stable_vexillary, gq_pfaffian, gq_two_row, positivity_report,
    shifted_set_valued_tableaux, BasisKind, SpStableRoute, StrictPartition, SymSeries,
};
use kgroth::typea::stable_g;
use std::collections::HashMap;

fn sp(parts: &[usize]) -> StrictPartition {
    StrictPartition::new(parts.to_vec()).unwrap()
}

fn inv(s: &str) -> Involution {
    Involution::parse(s).unwrap()
}

/// Every filling of the shifted diagram by nonempty subsets of `1..=2k` with at most `cap`
/// entries, kept when the row, column and diagonal rules hold.
fn brute_force_tableaux(
    parts: &[usize],
    k: usize,
    cap: usize,
    p_mode: bool,
) -> HashMap<Vec<u32>, i64> {
    let cells: Vec<(usize, usize)> = parts
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (r..r + len).map(move |c| (r, c)))
        .collect();
    let letters = 2 * k as u32;
    let all_sets: Vec<Vec<u32>> = (1u32..1 << letters)
        .map(|mask| (1..=letters).filter(|v| mask >> (v - 1) & 1 == 1).collect())
        .collect();
    let mut out = HashMap::new();
    let mut choice = vec![0usize; cells.len()];
    loop {
        let fill: Vec<&Vec<u32>> = choice.iter().map(|&i| &all_sets[i]).collect();
        let size: usize = fill.iter().map(|s| s.len()).sum();
        let at = |r: usize, c: usize| cells.iter().position(|&x| x == (r, c)).map(|i| fill[i]);
        let ok = size <= cap
            && cells.iter().enumerate().all(|(i, &(r, c))| {
                let t = fill[i];
                let diag = !p_mode || r != c || t.iter().all(|v| v % 2 == 0);
                let row = at(r, c + 1).is_none_or(|u| {
                    let (a, b) = (*t.last().unwrap(), u[0]);
                    a < b || (a == b && a % 2 == 0)
                });
                let col = at(r + 1, c).is_none_or(|u| {
                    let (a, b) = (*t.last().unwrap(), u[0]);
                    a < b || (a == b && a % 2 == 1)
                });
                diag && row && col
            });
        if ok {
            let mut exps = vec![0u32; k];
            for s in &fill {
                for &v in *s {
                    exps[(v as usize).div_ceil(2) - 1] += 1;
                }
            }
            *out.entry(exps).or_insert(0) += 1;
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < all_sets.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn tableau_enumeration_matches_brute_force() {
    for parts in [vec![1], vec![2], vec![2, 1], vec![3, 1]] {
        for p_mode in [false, true] {
            let fast = shifted_set_valued_tableaux(&parts, 2, 5, p_mode);
            let slow = brute_force_tableaux(&parts, 2, 5, p_mode);
            assert_eq!(fast, slow, "{parts:?} p_mode={p_mode}");
        }
    }
}

/// `q_n` from `∏_i (1 + x_i t)/(1 − x_i t)` in `k` variables.
fn q_n(n: usize, k: usize) -> BetaPoly {
    let mut coeffs = vec![BetaPoly::one(k)];
    coeffs.resize(n + 1, BetaPoly::zero(k));
    for i in 1..=k {
        // (1 + x t)/(1 − x t) = 1 + Σ_{d≥1} 2 x^d t^d
        let x = BetaPoly::var(i);
        let mut next = coeffs.clone();
        for (d, slot) in next.iter_mut().enumerate() {
            for e in 1..=d {
                let term = coeffs[d - e].mul(&x.pow(e as u32)).scale_rat(&rat(2));
                slot.add_assign(&term);
            }
        }
        coeffs = next;
    }
    coeffs[n].clone()
}

/// `Q_(a)`, `Q_(a,b) = q_a q_b + 2 Σ_{i≥1} (−1)^i q_{a+i} q_{b−i}`.
fn schur_q(parts: &[usize], k: usize) -> BetaPoly {
    match parts {
        [] => BetaPoly::one(k),
        [a] => q_n(*a, k),
        [a, b] => {
            let mut out = q_n(*a, k).mul(&q_n(*b, k));
            for i in 1..=*b {
                let sign = if i % 2 == 0 { 2 } else { -2 };
                out.add_assign(&q_n(a + i, k).mul(&q_n(b - i, k)).scale_rat(&rat(sign)));
            }
            out
        }
        _ => unreachable!(),
    }
}

#[test]
fn beta_zero_gives_schur_p_and_q() {
    for parts in [vec![1], vec![2], vec![2, 1]] {
        let d = parts.iter().sum::<usize>() as u32;
        let q = gq(&sp(&parts), 3, d).poly().specialize_beta(&rat(0));
        let p = gp(&sp(&parts), 3, d).poly().specialize_beta(&rat(0));
        let expected = schur_q(&parts, 3);
        assert_eq!(q, expected, "Q {parts:?}");
        assert_eq!(p.scale_rat(&rat(1 << parts.len())), expected, "P {parts:?}");
    }
}

#[test]
fn lowest_component_is_schur_p_and_q() {
    for parts in [vec![1], vec![2], vec![2, 1], vec![3, 1]] {
        let d = parts.iter().sum::<usize>() as u32;
        let q = gq(&sp(&parts), 3, 6)
            .poly()
            .component(d)
            .specialize_beta(&rat(0));
        let p = gp(&sp(&parts), 3, 6)
            .poly()
            .component(d)
            .specialize_beta(&rat(0));
        if parts.len() <= 2 && parts[0] <= 3 {
            assert_eq!(q, schur_q(&parts, 3), "{parts:?}");
        }
        assert_eq!(p.scale_rat(&rat(1 << parts.len())), q);
    }
}

#[test]
fn one_box_one_variable() {
    assert_eq!(
        *gq(&sp(&[1]), 1, 4).poly(),
        BetaPoly::from_int_terms(&[(2, 0, &[1]), (1, 1, &[2])])
    );
}

#[test]
fn two_row_formula_matches_tableaux() {
    for a in 0..=3u32 {
        for b in 0..a {
            let lambda = sp(&[a as usize, b as usize]);
            assert_eq!(
                gq_two_row(a, b, 2, 5).unwrap(),
                gq(&lambda, 2, 5),
                "({a},{b})"
            );
        }
    }
    assert_eq!(*gq_two_row(0, 0, 2, 5).unwrap().poly(), BetaPoly::one(2));
}

#[test]
fn pfaffian_matches_tableaux() {
    let shapes = [
        vec![1],
        vec![2],
        vec![3],
        vec![2, 1],
        vec![3, 1],
        vec![3, 2],
    ];
    for parts in shapes {
        let lambda = sp(&parts);
        assert_eq!(
            gq_pfaffian(&lambda, 3, 6).unwrap(),
            gq(&lambda, 3, 6),
            "{parts:?}"
        );
    }
}

#[test]
fn every_tableau_series_is_symmetric() {
    for parts in [
        vec![1],
        vec![2],
        vec![3],
        vec![2, 1],
        vec![3, 1],
        vec![3, 2],
        vec![3, 2, 1],
    ] {
        assert!(gp(&sp(&parts), 3, 7).is_symmetric(), "GP {parts:?}");
        assert!(gq(&sp(&parts), 3, 7).is_symmetric(), "GQ {parts:?}");
    }
}

#[test]
fn symplectic_routes_agree_on_four_letters() {
    for z in Involution::all_fpf(4) {
        for k in 1..=2 {
            for d in [3, 5] {
                let a = gp_sp_stable(&z, k, d, SpStableRoute::Atoms).unwrap();
                let b = gp_sp_stable(&z, k, d, SpStableRoute::Limit).unwrap();
                assert_eq!(a, b, "{z} k={k} d={d}");
            }
        }
    }
    assert_eq!(
        *gp_sp_stable(&inv("21"), 2, 4, SpStableRoute::Atoms)
            .unwrap()
            .poly(),
        BetaPoly::one(2)
    );
}

#[test]
fn symplectic_longest_elements() {
    for n in [4, 6] {
        let z = Involution::new(Permutation::longest(n)).unwrap();
        let got = gp_sp_stable(&z, 3, 7, SpStableRoute::Atoms).unwrap();
        assert_eq!(
            got,
            gp(&StrictPartition::staircase_by_two(n - 2), 3, 7),
            "n={n}"
        );
    }
}

#[test]
fn orthogonal_stable_limits_on_four_letters() {
    for z in Involution::all(4) {
        if !classify(&z).unwrap().vexillary {
            continue;
        }
        let o = gq_o_stable_vexillary(&z, 3, 6).unwrap();
        assert!(o.symmetric && o.matches_gq, "{z}: shape {}", o.shape);
    }
}

#[test]
fn orthogonal_longest_elements() {
    for n in 2..=5 {
        let z = Involution::new(Permutation::longest(n)).unwrap();
        let o = gq_o_stable_vexillary(&z, 3, 7).unwrap();
        assert_eq!(o.shape, StrictPartition::staircase_by_two(n - 1));
        assert_eq!(
            o.series,
            gq(&StrictPartition::staircase_by_two(n - 1), 3, 7),
            "n={n}"
        );
    }
}

#[test]
fn orthogonal_i_grassmannian() {
    // (φ_1, n+1)(φ_2, n+2)⋯ ↦ (n+1−φ_1, n+1−φ_2, …)
    let cases: [(&str, &[usize]); 4] = [
        ("321", &[2]),
        ("1432", &[2]),
        ("42513", &[3, 1]),
        ("14523", &[2, 1]),
    ];
    for (word, shape) in cases {
        let z = inv(word);
        let c = classify(&z).unwrap();
        let g = c.i_grassmannian.expect("I-Grassmannian");
        assert_eq!(g.shape(), shape, "{word}");
        let o = gq_o_stable_vexillary(&z, 3, 6).unwrap();
        assert_eq!(o.series, gq(&sp(shape), 3, 6), "{word}");
        assert_eq!(o_code_and_shape(&z).1, shape);
    }
}

#[test]
fn type_a_stable_functions_are_g_positive() {
    for w in Permutation::all(4) {
        let g = stable_g(&w, 5, Some(5)).unwrap();
        let r = positivity_report(&g, BasisKind::G, 5).unwrap();
        assert!(r.is_complete() && r.is_positive(), "{w}: {:?}", r.terms);
    }
}

#[test]
fn symplectic_stable_functions_are_gp_positive() {
    for z in Involution::all_fpf(6) {
        let g = gp_sp_stable(&z, 5, 5, SpStableRoute::Atoms).unwrap();
        let r = positivity_report(&g, BasisKind::GP, 5).unwrap();
        assert!(r.is_complete() && r.is_positive(), "{z}: {:?}", r.terms);
    }
}

#[test]
fn product_of_one_box_functions_is_reported() {
    let q1 = gq(&sp(&[1]), 6, 6);
    let prod: SymSeries = q1.mul(&q1);
    let r = positivity_report(&prod, BasisKind::GQ, 6).unwrap();
    assert!(r.is_complete());
    let lead = r
        .terms
        .iter()
        .find(|(i, _)| *i == vec![2])
        .map(|(_, c)| c.clone());
    assert_eq!(lead.and_then(|c| c.as_constant()), Some(rat(2)));
    assert!(r.terms.iter().all(|(i, _)| !i.is_empty()));
}
