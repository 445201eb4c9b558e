use crate::report::{Report, Status};
use crate::{ComputeArgs, ExpandArgs, Family};
use kgroth::hecke::{hecke_atoms, sp_groth, SpRoute};
use kgroth::ortho::{o_groth, OEngine, ORoute, PfaffianPlan};
use kgroth::perm::{
    classify, diagrams, essential_set, o_code_and_shape, o_dominant_shape, rothe, s_set,
    sp_dominant_shape, Involution, Permutation,
};
use kgroth::poly::{
    expand_in_graded_basis, from_json, latex_oplus_product, to_json, BetaPoly, ExpansionCap,
    ExpansionStatus,
};
use kgroth::raising::phi::phi_inverse_frac;
use kgroth::raising::{CSeries, Frac};
use kgroth::stable::{
    gp, gp_sp_stable, gq, gq_o_stable_vexillary, gq_pfaffian, positivity_report, BasisKind,
    SpStableRoute, StrictPartition, SymSeries,
};
use kgroth::typea::{g_lambda, groth_via_pipedreams, grothendieck, stable_g, GrothBasis};
use kgroth::{Error, Result};
use std::path::PathBuf;

fn bad(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn require<'a>(value: &'a Option<String>, flag: &str, family: &str) -> Result<&'a str> {
    value
        .as_deref()
        .ok_or_else(|| bad(format!("{family} needs --{flag}")))
}

fn forbid(value: &Option<String>, flag: &str, family: &str) -> Result<()> {
    match value {
        Some(_) => Err(bad(format!("--{flag} does not apply to {family}"))),
        None => Ok(()),
    }
}

fn parse_partition(s: &str) -> Result<Vec<usize>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let parts = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| bad(format!("bad part {p:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(bad(format!("{parts:?} is not a partition")));
    }
    Ok(parts.into_iter().filter(|&p| p > 0).collect())
}

fn parse_fpf(s: &str) -> Result<Involution> {
    let z = Involution::parse(s)?;
    if !z.is_fpf() {
        return Err(bad(format!("{z} has fixed points")));
    }
    Ok(z)
}

/// Polynomial results keyed by request, stored under `$KGROTH_CACHE_DIR` when it is set.
fn cached(key: &str, compute: impl FnOnce() -> Result<BetaPoly>) -> Result<BetaPoly> {
    let Some(dir) = std::env::var_os("KGROTH_CACHE_DIR") else {
        return compute();
    };
    let name: String = key
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect();
    let path = PathBuf::from(dir).join(format!("{name}.json"));
    if let Ok(s) = std::fs::read_to_string(&path) {
        if let Ok(v) = serde_json::from_str(&s) {
            if let Ok(p) = from_json(&v) {
                return Ok(p);
            }
        }
    }
    let p = compute()?;
    if std::fs::create_dir_all(path.parent().expect("file has a parent")).is_ok() {
        // A failed write only loses the cache entry.
        let _ = std::fs::write(&path, to_json(&p).to_string());
    }
    Ok(p)
}

fn series_report(report: &mut Report, label: &str, s: &SymSeries) {
    report.status = Status::Truncated;
    report.line("vars", s.nvars());
    if let Some(d) = s.maxdeg() {
        report.line("maxdeg", d);
    }
    report.line("symmetric", s.is_symmetric());
    report.poly(label, s.poly().clone(), None);
}

pub fn compute(args: &ComputeArgs) -> Result<Report> {
    let mut report = Report::new("compute");
    let fam = format!("{:?}", args.family);
    let need_maxdeg = || {
        args.maxdeg
            .ok_or_else(|| bad(format!("{fam} is a series; --maxdeg is required")))
    };
    match args.family {
        Family::TypeA => {
            forbid(&args.inv, "inv", &fam)?;
            forbid(&args.lambda, "lambda", &fam)?;
            let w = Permutation::parse(require(&args.perm, "perm", &fam)?)?;
            let route = args.route.as_deref().unwrap_or("dd");
            let p = match route {
                "dd" => cached(&format!("typeA-{w}"), || grothendieck(&w))?,
                "pipedream" => {
                    let cap = grothendieck(&w)?.degree().map(|d| d as usize);
                    groth_via_pipedreams(&w, cap).poly.with_nvars(w.size())
                }
                _ => return Err(bad(format!("unknown route {route:?} (dd, pipedream)"))),
            };
            report.line("perm", &w);
            report.poly("G", p, None);
        }
        Family::Sp => {
            forbid(&args.perm, "perm", &fam)?;
            forbid(&args.lambda, "lambda", &fam)?;
            let z = parse_fpf(require(&args.inv, "inv", &fam)?)?;
            let route: SpRoute = args.route.as_deref().unwrap_or("dd").parse()?;
            let p = cached(&format!("sp-{z}-{route:?}"), || sp_groth(&z, route))?;
            let factored =
                sp_dominant_shape(&z).map(|_| latex_oplus_product(&diagrams(&z).2.pairs()));
            report.line("inv", &z);
            report.poly("GSp", p, factored);
        }
        Family::O => {
            forbid(&args.perm, "perm", &fam)?;
            forbid(&args.lambda, "lambda", &fam)?;
            let z = Involution::parse(require(&args.inv, "inv", &fam)?)?;
            let route: ORoute = args.route.as_deref().unwrap_or("auto").parse()?;
            let engine: OEngine = args.engine.as_deref().unwrap_or("e1").parse()?;
            let key = format!("o-{z}-{route:?}-{engine:?}-{:?}", args.maxdeg);
            let p = cached(&key, || o_groth(&z, route, engine, args.maxdeg))?;
            let factored =
                o_dominant_shape(&z).map(|_| latex_oplus_product(&diagrams(&z).1.pairs()));
            report.line("inv", &z);
            if let Some(d) = args.maxdeg {
                report.status = Status::Truncated;
                report.line("maxdeg", d);
            }
            report.poly("GO", p, factored);
        }
        Family::G => {
            forbid(&args.inv, "inv", &fam)?;
            let d = need_maxdeg()?;
            let k = args.vars.unwrap_or(d as usize);
            let s = match (&args.lambda, &args.perm) {
                (Some(l), None) => g_lambda(&parse_partition(l)?, k, Some(d)),
                (None, Some(w)) => stable_g(&Permutation::parse(w)?, k, Some(d))?,
                _ => return Err(bad("G needs exactly one of --lambda and --perm")),
            };
            series_report(&mut report, "G", &s);
        }
        Family::GP | Family::GQ => {
            forbid(&args.inv, "inv", &fam)?;
            forbid(&args.perm, "perm", &fam)?;
            let d = need_maxdeg()?;
            let k = args.vars.unwrap_or(d as usize);
            let lambda: StrictPartition = require(&args.lambda, "lambda", &fam)?.parse()?;
            let route = args.route.as_deref().unwrap_or("tableau");
            let s = match (args.family, route) {
                (Family::GP, "tableau") => gp(&lambda, k, d),
                (Family::GQ, "tableau") => gq(&lambda, k, d),
                (Family::GQ, "pfaffian") => gq_pfaffian(&lambda, k, d)?,
                _ => return Err(bad(format!("unknown route {route:?} for {fam}"))),
            };
            report.line("lambda", &lambda);
            series_report(&mut report, &fam, &s);
        }
        Family::GQO => {
            forbid(&args.perm, "perm", &fam)?;
            forbid(&args.lambda, "lambda", &fam)?;
            let z = Involution::parse(require(&args.inv, "inv", &fam)?)?;
            let d = need_maxdeg()?;
            let k = args.vars.unwrap_or(d as usize);
            if !classify(&z)?.vexillary {
                return Err(Error::Uncomputable(format!(
                    "{z} is not vexillary; no stable formula in scope"
                )));
            }
            let o = gq_o_stable_vexillary(&z, k, d)?;
            report.line("inv", &z);
            report.line("shape", &o.shape);
            report.line("equals GQ of shape", o.matches_gq);
            series_report(&mut report, "GQO", &o.series);
            if !o.symmetric || !o.matches_gq {
                report.status = Status::Finding;
            }
        }
        Family::GPSp => {
            forbid(&args.perm, "perm", &fam)?;
            forbid(&args.lambda, "lambda", &fam)?;
            let z = parse_fpf(require(&args.inv, "inv", &fam)?)?;
            let d = need_maxdeg()?;
            let k = args.vars.unwrap_or(d as usize);
            let route: SpStableRoute = args.route.as_deref().unwrap_or("atoms").parse()?;
            let s = gp_sp_stable(&z, k, d, route)?;
            report.line("inv", &z);
            series_report(&mut report, "GPSp", &s);
        }
    }
    Ok(report)
}

enum Target {
    Series(SymSeries),
    Poly(BetaPoly),
}

fn target_factor(spec: &str, k: usize, d: Option<u32>) -> Result<Target> {
    let (fam, index) = spec
        .split_once(':')
        .ok_or_else(|| bad(format!("target factor {spec:?} is not FAMILY:INDEX")))?;
    let need = || d.ok_or_else(|| bad(format!("{fam} is a series; --maxdeg is required")));
    Ok(match fam {
        "G" => Target::Series(g_lambda(&parse_partition(index)?, k, Some(need()?))),
        "Gw" => Target::Series(stable_g(&Permutation::parse(index)?, k, Some(need()?))?),
        "GP" => Target::Series(gp(&index.parse()?, k, need()?)),
        "GQ" => Target::Series(gq(&index.parse()?, k, need()?)),
        "GPSp" => Target::Series(gp_sp_stable(
            &parse_fpf(index)?,
            k,
            need()?,
            SpStableRoute::Atoms,
        )?),
        "GQO" => {
            let z = Involution::parse(index)?;
            Target::Series(gq_o_stable_vexillary(&z, k, need()?)?.series)
        }
        "typeA" => Target::Poly(grothendieck(&Permutation::parse(index)?)?),
        "sp" => Target::Poly(sp_groth(&parse_fpf(index)?, SpRoute::Dd)?),
        "o" => Target::Poly(o_groth(
            &Involution::parse(index)?,
            ORoute::Auto,
            OEngine::E1,
            None,
        )?),
        _ => {
            return Err(bad(format!(
                "unknown target family {fam:?} (G, Gw, GP, GQ, GPSp, GQO, typeA, sp, o)"
            )))
        }
    })
}

pub fn expand(args: &ExpandArgs) -> Result<Report> {
    let mut report = Report::new("expand");
    let k = args.vars.or(args.maxdeg.map(|d| d as usize)).unwrap_or(0);
    let factors = args
        .target
        .split('*')
        .map(|f| target_factor(f.trim(), k, args.maxdeg))
        .collect::<Result<Vec<_>>>()?;
    report.line("target", &args.target);
    report.line("basis", &args.basis);
    if args.basis == "groth" {
        let mut poly = BetaPoly::one(0);
        for f in factors {
            match f {
                Target::Poly(p) => poly = poly.mul(&p),
                Target::Series(_) => {
                    return Err(bad("the groth basis expands polynomials (typeA, sp, o)"))
                }
            }
        }
        let exp = expand_in_graded_basis(
            &poly,
            &mut GrothBasis::new(),
            ExpansionCap::steps(args.steps),
        )?;
        for (w, c) in &exp.terms {
            report.line(format!("G_{w}"), c);
        }
        report.line("expansion", status_name(&exp.status));
        let flagged = !exp.is_positive() || exp.status != ExpansionStatus::Complete;
        report.line("coefficients in N[β]", exp.is_positive());
        if args.report_positivity && flagged {
            report.status = Status::Finding;
        }
        return Ok(report);
    }
    let basis: BasisKind = args.basis.parse()?;
    let d = args
        .maxdeg
        .ok_or_else(|| bad("series expansions need --maxdeg"))?;
    let mut target = SymSeries::one(k, Some(d));
    for f in factors {
        match f {
            Target::Series(s) => target = target.mul(&s),
            Target::Poly(_) => {
                return Err(bad("polynomial targets expand only in the groth basis"))
            }
        }
    }
    let r = positivity_report(&target, basis, d)?;
    for (lambda, c) in &r.terms {
        let name: Vec<String> = lambda.iter().map(|p| p.to_string()).collect();
        report.line(format!("{basis}_({})", name.join(",")), c);
    }
    report.line("expansion", status_name(&r.status));
    report.line("coefficients in N[β]", r.is_positive());
    report.line("terms at the degree cap", r.reaches_cap);
    report.status = Status::Truncated;
    if args.report_positivity && (!r.is_positive() || !r.is_complete() || r.reaches_cap) {
        report.status = Status::Finding;
    }
    Ok(report)
}

fn status_name(s: &ExpansionStatus) -> String {
    match s {
        ExpansionStatus::Complete => "complete".into(),
        ExpansionStatus::StepCapReached => "step cap reached".into(),
        ExpansionStatus::NotInSpan(m) => format!("not in span at {m:?}"),
    }
}

pub fn atoms(inv: &str) -> Result<Report> {
    let z = parse_fpf(inv)?;
    let sets = hecke_atoms(&z)?;
    let join = |s: &std::collections::BTreeSet<Permutation>| {
        s.iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut report = Report::new("atoms");
    report.line("inv", &z);
    report.line("fpf length", z.fpf_length()?);
    report.line("hecke atoms", join(&sets.hecke_atoms));
    report.line("atoms", join(&sets.atoms));
    Ok(report)
}

pub fn diagram(inv: Option<&str>, perm: Option<&str>) -> Result<Report> {
    let mut report = Report::new("diagram");
    match (inv, perm) {
        (Some(s), None) => {
            let z = Involution::parse(s)?;
            let (d, o, sp) = diagrams(&z);
            let c = classify(&z)?;
            let (code, shape) = o_code_and_shape(&z);
            report.line("inv", &z);
            report.block("D", d.render(z.perm()));
            report.block("DO", o.render(z.perm()));
            report.line("essential set of DO", essential_set(&o));
            report.line("orthogonal code", format!("{code:?}"));
            report.line("orthogonal shape", format!("{shape:?}"));
            report.line("S", format!("{:?}", s_set(&z)));
            if z.is_fpf() {
                report.block("DSp", sp.render(z.perm()));
                report.line("fpf length", z.fpf_length()?);
            }
            report.line("vexillary", c.vexillary);
            report.line("O-dominant", c.o_dominant);
            report.line("Sp-dominant", c.sp_dominant);
            if let Some(g) = c.i_grassmannian {
                report.line("I-Grassmannian shape", format!("{:?}", g.shape()));
            }
        }
        (None, Some(s)) => {
            let w = Permutation::parse(s)?;
            let d = rothe(&w);
            report.line("perm", &w);
            report.block("D", d.render(&w));
            report.line("essential set", essential_set(&d));
            report.line("code", format!("{:?}", w.code()));
            report.line("length", w.length());
        }
        _ => return Err(bad("diagram needs exactly one of --inv and --perm")),
    }
    Ok(report)
}

fn describe_series(s: &CSeries) -> String {
    if s.is_trivial() {
        return "1".into();
    }
    let num: Vec<String> = s
        .numerator_vars()
        .iter()
        .map(|v| format!("(1+x{v}t)"))
        .collect();
    let den: Vec<String> = s
        .denominator_vars()
        .iter()
        .map(|v| format!("(1+x̄{v}t)"))
        .collect();
    format!("{} / {}", num.join(""), den.join(""))
}

fn describe_frac(f: &Frac) -> String {
    if let Ok(p) = f.to_poly() {
        return p.to_string();
    }
    let den: Vec<String> = f
        .denominator()
        .iter()
        .map(|(&(v, g), &e)| {
            let lin = match g {
                1 => format!("(1+βx{v})"),
                -1 => format!("(1-βx{v})"),
                g => format!("(1{g:+}βx{v})"),
            };
            if e == 1 {
                lin
            } else {
                format!("{lin}^{e}")
            }
        })
        .collect();
    format!("[{}] / {}", f.numerator(), den.join(""))
}

pub fn pfaffian_trace(inv: &str, cap: Option<u32>) -> Result<Report> {
    let z = Involution::parse(inv)?;
    if !classify(&z)?.vexillary {
        return Err(Error::Uncomputable(format!(
            "{z} is not vexillary; there is no Pfaffian formula in scope"
        )));
    }
    let plan = PfaffianPlan::new(&z)?;
    let cap = cap.unwrap_or(plan.shape.first().copied().unwrap_or(0) as u32 + 2);
    let mut report = Report::new("pfaffian-trace");
    report.line("inv", &z);
    report.line("shape", format!("{:?}", plan.shape));
    report.line("r", plan.r);
    report.line("S", format!("{:?}", plan.s_set));
    report.line("cells", format!("{:?}", plan.cells));
    for (i, s) in plan.series.iter().enumerate() {
        report.line(format!("c^({})", i + 1), describe_series(s));
    }
    for i in 1..=plan.r {
        for j in i + 1..=plan.r {
            report.line(
                format!("M{i}{j} operator (subscripts ≤ {cap})"),
                plan.entry_operator(i, j, cap)?,
            );
            let g = plan.entry_dexpr(i, j);
            report.line(format!("M{i}{j} Φ-image"), &g);
            let f = phi_inverse_frac(
                &g,
                &[plan.series[i - 1].clone(), plan.series[j - 1].clone()],
            )?;
            report.line(format!("M{i}{j} value"), describe_frac(&f));
        }
    }
    report.poly("pf", plan.evaluate_e2()?, None);
    Ok(report)
}
