use crate::report::Report;
use kgroth::hecke::{hecke_atoms, sp_divided_difference_check, sp_groth, SpGrothCache, SpRoute};
use kgroth::ortho::{
    o_dominant, o_groth, o_stability_check, o_vex_divided_difference_check, o_vexillary, OEngine,
    ORoute,
};
use kgroth::perm::{classify, sp_dominant_shape, Involution, Permutation};
use kgroth::poly::{oplus_vars, rat, BetaPoly, BetaScalar, Monomial, Rat};
use kgroth::raising::{det_leibniz, pfaffian, SkewMatrix};
use kgroth::ring::Ring;
use kgroth::stable::{
    gp, gp_sp_stable, gq, gq_o_stable_vexillary, gq_pfaffian, gq_two_row, positivity_report,
    BasisKind, SpStableRoute, StrictPartition,
};
use kgroth::typea::{groth_via_pipedreams, grothendieck, stable_g, GrothCache};
use kgroth::{Error, Result};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::time::Instant;

pub const SUITES: [&str; 15] = [
    "typeA-s3",
    "sp-table-i4",
    "sp-routes-n6",
    "o-table-i3",
    "o-3412",
    "o-4571263",
    "stability",
    "fpf-dd-prop",
    "vex-dd-prop",
    "atoms-4321",
    "gq-final-thm",
    "gp-positivity",
    "g-positivity",
    "nn-pfaffian",
    "pf-det",
];

type Outcome = Result<(bool, String)>;
type Case = (String, Box<dyn Fn() -> Outcome + Send + Sync>);

type Terms = &'static [(i64, i32, &'static [u32])];

fn case(name: impl Into<String>, f: impl Fn() -> Outcome + Send + Sync + 'static) -> Case {
    (name.into(), Box::new(f))
}

fn equal(got: &BetaPoly, want: &BetaPoly) -> Outcome {
    if got == want {
        Ok((true, String::new()))
    } else {
        Ok((false, format!("got {got}, expected {want}")))
    }
}

fn pass(ok: bool) -> Outcome {
    Ok((ok, String::new()))
}

fn p(s: &str) -> Permutation {
    Permutation::parse(s).expect("valid permutation literal")
}

fn z(s: &str) -> Involution {
    Involution::parse(s).expect("valid involution literal")
}

fn poly(terms: &[(i64, i32, &[u32])]) -> BetaPoly {
    BetaPoly::from_int_terms(terms)
}

fn oplus_product(pairs: &[(usize, usize)]) -> BetaPoly {
    pairs
        .iter()
        .fold(BetaPoly::one(0), |acc, &(i, j)| acc.mul(&oplus_vars(i, j)))
}

fn sp(parts: &[usize]) -> StrictPartition {
    StrictPartition::new(parts.to_vec()).expect("valid strict partition literal")
}

fn longest_involution(n: usize) -> Involution {
    Involution::new(Permutation::longest(n)).expect("w_0 is an involution")
}

/// Runs `name` and reports one case per check. Timings go to stderr so stdout stays
/// byte-identical between runs.
pub fn run(name: &str, vars: Option<usize>, maxdeg: Option<u32>) -> Result<Report> {
    if name == "list" {
        let mut report = Report::new("verify");
        for s in SUITES {
            report.line("suite", s);
        }
        return Ok(report);
    }
    let cases = match name {
        "typeA-s3" => type_a_s3(),
        "sp-table-i4" => sp_table_i4(),
        "sp-routes-n6" => sp_routes_n6(),
        "o-table-i3" => o_table_i3(),
        "o-3412" => o_3412(),
        "o-4571263" => o_4571263(),
        "stability" => stability(),
        "fpf-dd-prop" => fpf_dd_prop(),
        "vex-dd-prop" => vex_dd_prop(),
        "atoms-4321" => atoms_4321(),
        "gq-final-thm" => gq_final_thm(vars.unwrap_or(3), maxdeg.unwrap_or(6)),
        "gp-positivity" => gp_positivity(vars.unwrap_or(6), maxdeg.unwrap_or(6)),
        "g-positivity" => g_positivity(vars.unwrap_or(6), maxdeg.unwrap_or(6)),
        "nn-pfaffian" => nn_pfaffian(vars.unwrap_or(3), maxdeg.unwrap_or(6)),
        "pf-det" => pf_det(),
        _ => {
            return Err(Error::Invalid(format!(
                "unknown suite {name:?}; `verify --suite list` prints the names"
            )))
        }
    };
    let start = Instant::now();
    let outcomes: Vec<(String, Outcome)> = cases
        .into_par_iter()
        .map(|(name, f)| {
            let t = Instant::now();
            let out = f();
            eprintln!("{name}: {:.3}s", t.elapsed().as_secs_f64());
            (name, out)
        })
        .collect();
    eprintln!("suite {name}: {:.3}s", start.elapsed().as_secs_f64());
    let mut report = Report::new("verify");
    report.line("suite", name);
    for (case_name, out) in outcomes {
        match out {
            Ok((ok, detail)) => report.case(case_name, ok, detail),
            Err(e) => report.case(case_name, false, e.to_string()),
        }
    }
    Ok(report)
}

fn type_a_s3() -> Vec<Case> {
    let table: [(&str, Terms); 6] = [
        ("123", &[(1, 0, &[])]),
        ("213", &[(1, 0, &[1])]),
        ("132", &[(1, 0, &[1]), (1, 0, &[0, 1]), (1, 1, &[1, 1])]),
        ("231", &[(1, 0, &[1, 1])]),
        ("312", &[(1, 0, &[2])]),
        ("321", &[(1, 0, &[2, 1])]),
    ];
    let mut cases: Vec<Case> = table
        .into_iter()
        .map(|(w, terms)| {
            let want = poly(terms);
            case(format!("G_{w}"), move || {
                equal(&grothendieck(&p(w))?, &want)
            })
        })
        .collect();
    for w in Permutation::all(4) {
        cases.push(case(format!("routes agree on {w}"), move || {
            let dd = grothendieck(&w)?;
            let pd = groth_via_pipedreams(&w, dd.degree().map(|d| d as usize));
            pass(!pd.truncated && pd.poly == dd)
        }));
    }
    cases
}

fn sp_4321() -> BetaPoly {
    poly(&[
        (1, 0, &[2]),
        (1, 0, &[1, 1]),
        (1, 0, &[1, 0, 1]),
        (1, 0, &[0, 1, 1]),
        (2, 1, &[1, 1, 1]),
        (1, 1, &[2, 1]),
        (1, 1, &[2, 0, 1]),
        (1, 2, &[2, 1, 1]),
    ])
}

fn sp_table_i4() -> Vec<Case> {
    let table = [
        ("2143", BetaPoly::one(0)),
        (
            "3412",
            poly(&[(1, 0, &[1]), (1, 0, &[0, 1]), (1, 1, &[1, 1])]),
        ),
        ("4321", sp_4321()),
    ];
    let mut cases: Vec<Case> = Vec::new();
    for (w, want) in table {
        for route in [
            SpRoute::Dd,
            SpRoute::Atoms,
            SpRoute::PipeDream,
            SpRoute::Dominant,
        ] {
            let want = want.clone();
            cases.push(case(format!("GSp_{w} {route:?}"), move || {
                equal(&sp_groth(&z(w), route)?, &want)
            }));
        }
    }
    cases.push(case("GSp_215634", || {
        // Every nonempty S ⊆ [4] contributes β^{|S|−1} x^S.
        let mut want = BetaPoly::zero(6);
        for mask in 1u32..16 {
            let exps: Vec<u32> = (0..4).map(|b| (mask >> b) & 1).collect();
            want.add_term(
                Monomial::new(exps),
                &BetaScalar::beta_pow(mask.count_ones() as i32 - 1),
            );
        }
        equal(&sp_groth(&z("215634"), SpRoute::Dd)?, &want)
    }));
    cases
}

fn sp_routes_n6() -> Vec<Case> {
    Involution::all_fpf(6)
        .into_iter()
        .map(|y| {
            case(format!("routes agree on {y}"), move || {
                let dd = sp_groth(&y, SpRoute::Dd)?;
                let mut ok =
                    sp_groth(&y, SpRoute::Atoms)? == dd && sp_groth(&y, SpRoute::PipeDream)? == dd;
                if sp_dominant_shape(&y).is_some() {
                    ok &= sp_groth(&y, SpRoute::Dominant)? == dd;
                }
                pass(ok && dd.has_nonnegative_coefficients())
            })
        })
        .collect()
}

fn o_321() -> BetaPoly {
    poly(&[(2, 0, &[1]), (1, 1, &[2])]).mul(&poly(&[
        (1, 0, &[1]),
        (1, 0, &[0, 1]),
        (1, 1, &[1, 1]),
    ]))
}

fn o_table_i3() -> Vec<Case> {
    let table = [
        ("123", BetaPoly::one(0)),
        ("213", poly(&[(2, 0, &[1]), (1, 1, &[2])])),
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
        (
            "321",
            poly(&[
                (2, 0, &[2]),
                (2, 0, &[1, 1]),
                (1, 1, &[3]),
                (3, 1, &[2, 1]),
                (1, 2, &[3, 1]),
            ]),
        ),
    ];
    let mut cases = Vec::new();
    for (w, want) in table {
        for engine in [OEngine::E1, OEngine::E2] {
            let want = want.clone();
            cases.push(case(format!("GO_{w} Pfaffian {engine:?}"), move || {
                equal(&o_vexillary(&z(w), engine, None)?, &want)
            }));
        }
    }
    cases
}

fn o_3412() -> Vec<Case> {
    let want = oplus_product(&[(1, 1), (1, 2), (2, 2)]);
    let mut cases = Vec::new();
    for engine in [OEngine::E1, OEngine::E2] {
        let want = want.clone();
        cases.push(case(format!("GO_3412 Pfaffian {engine:?}"), move || {
            equal(&o_vexillary(&z("3412"), engine, None)?, &want)
        }));
    }
    cases.push(case("GO_3412 dominant", move || {
        equal(&o_dominant(&z("3412"))?, &want)
    }));
    cases.push(case("GO_321 factored", || {
        equal(
            &o_groth(&z("321"), ORoute::Vexillary, OEngine::E1, None)?,
            &o_321(),
        )
    }));
    cases.push(case("GO_321 monomial ideal", || {
        equal(
            &o_groth(&z("321"), ORoute::Hilbert, OEngine::E1, None)?,
            &o_321(),
        )
    }));
    cases
}

pub const COEFFICIENTS_4571263: [i64; 35] = [
    1, 2, 4, 5, 7, 8, 9, 10, 12, 16, 24, 28, 30, 32, 34, 41, 43, 64, 65, 72, 80, 109, 110, 116,
    121, 128, 142, 159, 173, 177, 180, 246, 261, 292, 344,
];

fn o_4571263() -> Vec<Case> {
    vec![case("GO_4571263 E1", || {
        let g = o_vexillary(&z("4571263"), OEngine::E1, None)?;
        let coeffs: BTreeSet<Rat> = g.coefficient_set();
        let want: BTreeSet<Rat> = COEFFICIENTS_4571263.iter().map(|&c| rat(c)).collect();
        let top = g
            .terms()
            .filter(|(_, c)| c.max_beta().is_some_and(|k| k >= 10))
            .count();
        let lead = poly(&[
            (1, 11, &[5, 5, 5, 1, 1, 1]),
            (1, 10, &[5, 5, 5, 1, 1]),
            (1, 10, &[5, 5, 5, 1, 0, 1]),
            (1, 10, &[5, 5, 5, 0, 1, 1]),
            (5, 10, &[5, 5, 4, 1, 1, 1]),
            (5, 10, &[5, 4, 5, 1, 1, 1]),
            (5, 10, &[4, 5, 5, 1, 1, 1]),
        ]);
        let mut high = BetaPoly::zero(6);
        for (m, c) in g.terms() {
            for (k, r) in c.terms() {
                if k >= 10 {
                    high.add_rat_term(m.clone(), k, r);
                }
            }
        }
        let ok = g.term_count() == 865 && coeffs == want && high == lead;
        Ok((
            ok,
            format!(
                "{} terms, {} distinct coefficients, {top} monomials with β^10 or β^11",
                g.term_count(),
                coeffs.len()
            ),
        ))
    })]
}

fn stability() -> Vec<Case> {
    let mut cases = Vec::new();
    for y in Involution::all(4) {
        if o_groth(&y, ORoute::Auto, OEngine::E1, None).is_err() {
            continue;
        }
        cases.push(case(format!("GO_{y}×1"), move || {
            pass(o_stability_check(&y, 1)?)
        }));
    }
    for y in Involution::all_fpf(4) {
        cases.push(case(format!("GSp_{y}×21"), move || {
            let g = sp_groth(&y, SpRoute::Dd)?;
            let h = sp_groth(&y.fpf_append()?, SpRoute::Dd)?;
            pass(g == h)
        }));
    }
    cases
}

fn fpf_dd_prop() -> Vec<Case> {
    Involution::all_fpf(6)
        .into_iter()
        .map(|y| {
            case(format!("∂ on GSp_{y}"), move || {
                let mut cache = SpGrothCache::new();
                let mut ok = true;
                for i in 1..6 {
                    ok &= sp_divided_difference_check(&mut cache, &y, i)?;
                }
                pass(ok)
            })
        })
        .collect()
}

fn vex_dd_prop() -> Vec<Case> {
    let mut cases = Vec::new();
    for y in Involution::all(4) {
        for i in 1..4 {
            if o_vex_divided_difference_check(&y, i)
                .ok()
                .flatten()
                .is_some()
            {
                let y = y.clone();
                cases.push(case(format!("∂_{i} on GO_{y}"), move || {
                    pass(o_vex_divided_difference_check(&y, i)? == Some(true))
                }));
            }
        }
    }
    cases
}

fn atoms_4321() -> Vec<Case> {
    let mut cases = vec![case("atoms of 4321", || {
        let sets = hecke_atoms(&z("4321"))?;
        let names = |s: &BTreeSet<Permutation>| s.iter().map(|w| w.to_string()).collect::<Vec<_>>();
        let ok = names(&sets.hecke_atoms) == ["1342", "3124", "3142"]
            && names(&sets.atoms) == ["1342", "3124"];
        Ok((
            ok,
            format!(
                "hecke atoms {:?}, atoms {:?}",
                names(&sets.hecke_atoms),
                names(&sets.atoms)
            ),
        ))
    })];
    cases.push(case("GSp_4321 = G_1342 + G_3124 + βG_3142", || {
        let mut cache = GrothCache::new();
        let sum = cache
            .get(&p("1342"))?
            .add(&cache.get(&p("3124"))?)
            .add(&cache.get(&p("3142"))?.shift_beta(1));
        equal(&sum, &sp_4321())
    }));
    for n in [2, 4, 6] {
        for y in Involution::all_fpf(n) {
            // hecke_atoms compares the table and closure routes and fails on disagreement.
            cases.push(case(format!("table and closure agree on {y}"), move || {
                pass(hecke_atoms(&y).is_ok())
            }));
        }
    }
    cases
}

fn gq_final_thm(k: usize, d: u32) -> Vec<Case> {
    let mut inputs: Vec<Involution> = Involution::all(4)
        .into_iter()
        .filter(|y| classify(y).is_ok_and(|c| c.vexillary))
        .collect();
    inputs.extend((2..=5).map(longest_involution));
    inputs.push(z("42513"));
    inputs
        .into_iter()
        .map(|y| {
            case(format!("GQO_{y}"), move || {
                let o = gq_o_stable_vexillary(&y, k, d)?;
                Ok((o.symmetric && o.matches_gq, format!("shape {}", o.shape)))
            })
        })
        .collect()
}

fn gp_positivity(k: usize, d: u32) -> Vec<Case> {
    let mut cases: Vec<Case> = Involution::all_fpf(6)
        .into_iter()
        .map(|y| {
            case(format!("GPSp_{y} in GP"), move || {
                let g = gp_sp_stable(&y, k, d, SpStableRoute::Atoms)?;
                let r = positivity_report(&g, BasisKind::GP, d)?;
                pass(r.is_complete() && r.is_positive())
            })
        })
        .collect();
    for n in [4, 6] {
        cases.push(case(format!("GPSp of w_0 in S_{n}"), move || {
            let g = gp_sp_stable(&longest_involution(n), 3, 6, SpStableRoute::Atoms)?;
            pass(g == gp(&StrictPartition::staircase_by_two(n - 2), 3, 6))
        }));
    }
    cases
}

fn g_positivity(k: usize, d: u32) -> Vec<Case> {
    Permutation::all(4)
        .into_iter()
        .map(|w| {
            case(format!("G_{w} in G"), move || {
                let g = stable_g(&w, k, Some(d))?;
                let r = positivity_report(&g, BasisKind::G, d)?;
                pass(r.is_complete() && r.is_positive())
            })
        })
        .collect()
}

fn nn_pfaffian(k: usize, d: u32) -> Vec<Case> {
    let mut cases = Vec::new();
    for parts in [
        vec![1],
        vec![2],
        vec![3],
        vec![2, 1],
        vec![3, 1],
        vec![3, 2],
    ] {
        cases.push(case(format!("Pfaffian GQ_{}", sp(&parts)), move || {
            let l = sp(&parts);
            pass(gq_pfaffian(&l, k, d)? == gq(&l, k, d))
        }));
    }
    for a in 0..=3u32 {
        for b in 0..a {
            cases.push(case(format!("two-row GQ_({a},{b})"), move || {
                pass(gq_two_row(a, b, 2, 5)? == gq(&sp(&[a as usize, b as usize]), 2, 5))
            }));
        }
    }
    cases
}

fn random_int_matrix(rng: &mut StdRng, n: usize) -> SkewMatrix<BigInt> {
    SkewMatrix::from_fn(n, |_, _| BigInt::from(rng.gen_range(-9i64..=9)))
}

fn random_poly_matrix(rng: &mut StdRng, n: usize) -> SkewMatrix<BetaPoly> {
    SkewMatrix::from_fn(n, |_, _| {
        let mut f = BetaPoly::zero(2);
        for _ in 0..3 {
            let m = Monomial::new(vec![rng.gen_range(0..=2), rng.gen_range(0..=2)]);
            f.add_term(
                m,
                &BetaScalar::monomial(rat(rng.gen_range(-3i64..=3)), rng.gen_range(0..=1)),
            );
        }
        f
    })
}

fn pf_squared_is_det<R: Ring + PartialEq>(m: &SkewMatrix<R>) -> Result<bool> {
    let pf = pfaffian(m)?;
    Ok(pf.mul(&pf) == det_leibniz(m))
}

fn pf_det() -> Vec<Case> {
    let mut cases = Vec::new();
    for n in [4, 6] {
        cases.push(case(format!("integer matrices of size {n}"), move || {
            let mut rng = StdRng::seed_from_u64(n as u64);
            let mut ok = true;
            for _ in 0..20 {
                ok &= pf_squared_is_det(&random_int_matrix(&mut rng, n))?;
            }
            pass(ok)
        }));
        cases.push(case(
            format!("polynomial matrices of size {n}"),
            move || {
                let mut rng = StdRng::seed_from_u64(100 + n as u64);
                let mut ok = true;
                for _ in 0..20 {
                    ok &= pf_squared_is_det(&random_poly_matrix(&mut rng, n))?;
                }
                pass(ok)
            },
        ));
    }
    cases
}
