//! Closed forms `Σ coeff · ∏ D_i^{m_i} e^{f_i β D_i}` and the map `Φ: c_d^{(i)} ↦ D_i^d/d!`.

use super::frac::Frac;
use super::series::CSeries;
use super::{CMonomial, RaisingExpr};
use crate::error::{internal, invalid, Result};
use crate::poly::{rat, BetaPoly, BetaScalar, Rat};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_traits::One;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

type Key = (Vec<u32>, Vec<i32>);

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * BigInt::from(k))
}

fn fact_rat(n: u32) -> Rat {
    Rat::from_integer(factorial(n))
}

#[derive(Clone, PartialEq, Eq)]
pub struct DExpr {
    nvars: usize,
    terms: BTreeMap<Key, BetaScalar>,
}

impl DExpr {
    pub fn zero(nvars: usize) -> Self {
        DExpr {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        DExpr::term(nvars, vec![0; nvars], vec![0; nvars], BetaScalar::one())
    }

    /// `coeff · ∏ D_i^{exps_i} e^{flags_i β D_i}`.
    pub fn term(nvars: usize, exps: Vec<u32>, flags: Vec<i32>, coeff: BetaScalar) -> Self {
        assert!(
            exps.len() == nvars && flags.len() == nvars,
            "DExpr term has the wrong arity"
        );
        let mut e = DExpr::zero(nvars);
        e.add_term((exps, flags), &coeff);
        e
    }

    /// `D_i` (1-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i - 1] = 1;
        DExpr::term(nvars, exps, vec![0; nvars], BetaScalar::one())
    }

    /// `e^{f β D_i}` (1-based).
    pub fn exp(nvars: usize, i: usize, f: i32) -> Self {
        let mut flags = vec![0; nvars];
        flags[i - 1] = f;
        DExpr::term(nvars, vec![0; nvars], flags, BetaScalar::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Vec<i32>, &BetaScalar)> {
        self.terms.iter().map(|((e, f), c)| (e, f, c))
    }

    pub fn coeff(&self, exps: &[u32], flags: &[i32]) -> BetaScalar {
        self.terms
            .get(&(exps.to_vec(), flags.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    fn add_term(&mut self, key: Key, c: &BetaScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_default();
        entry.add_assign(c);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &DExpr) -> DExpr {
        assert_eq!(
            self.nvars, other.nvars,
            "adding DExprs in different variables"
        );
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &DExpr) -> DExpr {
        self.add(&other.scale(&BetaScalar::int(-1)))
    }

    pub fn scale(&self, c: &BetaScalar) -> DExpr {
        let mut out = DExpr::zero(self.nvars);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &v.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &DExpr) -> DExpr {
        assert_eq!(
            self.nvars, other.nvars,
            "multiplying DExprs in different variables"
        );
        let mut out = DExpr::zero(self.nvars);
        for ((ea, fa), ca) in &self.terms {
            for ((eb, fb), cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let f = fa.iter().zip(fb).map(|(x, y)| x + y).collect();
                out.add_term((e, f), &ca.mul(cb));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> DExpr {
        (0..k).fold(DExpr::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// `∂/∂D_i` (1-based).
    pub fn diff(&self, i: usize) -> DExpr {
        let v = i - 1;
        let mut out = DExpr::zero(self.nvars);
        for ((e, f), c) in &self.terms {
            if e[v] > 0 {
                let mut e2 = e.clone();
                e2[v] -= 1;
                out.add_term((e2, f.clone()), &c.scale(&rat(e[v] as i64)));
            }
            if f[v] != 0 {
                out.add_term(
                    (e.clone(), f.clone()),
                    &c.mul(&BetaScalar::monomial(rat(f[v] as i64), 1)),
                );
            }
        }
        out
    }

    /// `∫_0^{D_target} (·) dD_u` (1-based), with the result written in `D_target`;
    /// `D_u` no longer occurs when `u ≠ target`.
    pub fn integrate(&self, u: usize, target: usize) -> DExpr {
        let (u, t) = (u - 1, target - 1);
        let mut out = DExpr::zero(self.nvars);
        for ((e, f), c) in &self.terms {
            let (m, g) = (e[u], f[u]);
            let mut rest = (e.clone(), f.clone());
            rest.0[u] = 0;
            rest.1[u] = 0;
            let place = |extra_exp: u32, extra_flag: i32| {
                let mut k = rest.clone();
                k.0[t] += extra_exp;
                k.1[t] += extra_flag;
                k
            };
            if g == 0 {
                out.add_term(
                    place(m + 1, 0),
                    &c.scale(&Rat::new(BigInt::from(1), BigInt::from(m + 1))),
                );
                continue;
            }
            // ∫_0^D u^m e^{gβu} du = e^{gβD} Σ_j (−1)^j m!/(m−j)! D^{m−j}/(gβ)^{j+1} − (−1)^m m!/(gβ)^{m+1}.
            let gr = rat(g as i64);
            let mut gpow = gr.clone();
            for j in 0..=m {
                let falling = fact_rat(m) / fact_rat(m - j);
                let sign = if j % 2 == 0 { rat(1) } else { rat(-1) };
                let k = BetaScalar::monomial(sign * falling / gpow.clone(), -(j as i32) - 1);
                out.add_term(place(m - j, g), &c.mul(&k));
                gpow *= &gr;
            }
            let sign = if m % 2 == 0 { rat(-1) } else { rat(1) };
            let k =
                BetaScalar::monomial(sign * fact_rat(m) / gr.pow(m as i32 + 1), -(m as i32) - 1);
            out.add_term(place(0, 0), &c.mul(&k));
        }
        out
    }

    /// Substitutes a one-variable expression at `D = Σ_k coeffs[k] D_{k+1}`.
    pub fn compose(&self, nvars: usize, coeffs: &[i32]) -> DExpr {
        assert_eq!(self.nvars, 1, "compose takes a one-variable expression");
        let mut linear = DExpr::zero(nvars);
        for (k, &a) in coeffs.iter().enumerate() {
            linear = linear.add(&DExpr::var(nvars, k + 1).scale(&BetaScalar::int(a as i64)));
        }
        let mut powers = vec![DExpr::one(nvars)];
        let mut out = DExpr::zero(nvars);
        for ((e, f), c) in &self.terms {
            while powers.len() <= e[0] as usize {
                let next = powers.last().expect("nonempty").mul(&linear);
                powers.push(next);
            }
            let flags: Vec<i32> = coeffs.iter().map(|&a| a * f[0]).collect();
            let ex = DExpr::term(nvars, vec![0; nvars], flags, c.clone());
            out = out.add(&powers[e[0] as usize].mul(&ex));
        }
        out
    }

    /// Renames `D_k ↦ D_{map[k]}` (1-based targets) in an expression with `nvars` variables.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> DExpr {
        let mut out = DExpr::zero(nvars);
        for ((e, f), c) in &self.terms {
            let mut e2 = vec![0; nvars];
            let mut f2 = vec![0; nvars];
            for (k, &to) in map.iter().enumerate() {
                e2[to - 1] += e[k];
                f2[to - 1] += f[k];
            }
            out.add_term((e2, f2), c);
        }
        out
    }

    /// Drops trailing variables that do not occur.
    pub fn restrict(&self, nvars: usize) -> Result<DExpr> {
        let mut out = DExpr::zero(nvars);
        for ((e, f), c) in &self.terms {
            if e[nvars..].iter().any(|&x| x > 0) || f[nvars..].iter().any(|&x| x != 0) {
                return internal("dropped a D-variable that still occurs");
            }
            out.add_term((e[..nvars].to_vec(), f[..nvars].to_vec()), c);
        }
        Ok(out)
    }

    /// Sets `D_i = 0` (1-based).
    pub fn at_zero(&self, i: usize) -> DExpr {
        let v = i - 1;
        let mut out = DExpr::zero(self.nvars);
        for ((e, f), c) in &self.terms {
            if e[v] == 0 {
                let mut f2 = f.clone();
                f2[v] = 0;
                out.add_term((e.clone(), f2), c);
            }
        }
        out
    }

    /// Power series expansion with total `D`-degree at most `cap`.
    pub fn taylor(&self, cap: u32) -> DExpr {
        let mut out = DExpr::zero(self.nvars);
        for ((e, f), c) in &self.terms {
            let base: u32 = e.iter().sum();
            if base > cap {
                continue;
            }
            // Each e^{fβD} contributes Σ_n (fβ)^n D^n / n!.
            let mut partial: Vec<(Vec<u32>, BetaScalar)> = vec![(e.clone(), c.clone())];
            for v in 0..self.nvars {
                if f[v] == 0 {
                    continue;
                }
                let mut next = Vec::new();
                for (ex, cx) in &partial {
                    let used: u32 = ex.iter().sum();
                    for n in 0..=(cap - used) {
                        let k = BetaScalar::monomial(
                            rat(f[v] as i64).pow(n as i32) / fact_rat(n),
                            n as i32,
                        );
                        let mut e2 = ex.clone();
                        e2[v] += n;
                        next.push((e2, cx.mul(&k)));
                    }
                }
                partial = next;
            }
            for (ex, cx) in partial {
                out.add_term((ex, vec![0; self.nvars]), &cx);
            }
        }
        out
    }

    /// Largest `|flag|` among all terms.
    pub fn max_flag(&self) -> i32 {
        self.terms
            .keys()
            .flat_map(|(_, f)| f.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for DExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((e, fl), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (v, &m) in e.iter().enumerate() {
                match m {
                    0 => {}
                    1 => write!(f, " D{}", v + 1)?,
                    _ => write!(f, " D{}^{m}", v + 1)?,
                }
            }
            for (v, &g) in fl.iter().enumerate() {
                if g != 0 {
                    write!(f, " e^({g}βD{})", v + 1)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `F_{r,a}(D)`: `(∂/∂D)^{r−a−1}(D^{r−1} e^{βD})/(r−1)!` for `r ≥ 1` (negative powers integrate
/// from 0), and `D^a/a!` for `r = 0`.
pub fn phi_f(r: u32, a: i64) -> DExpr {
    if r == 0 {
        if a < 0 {
            return DExpr::zero(1);
        }
        return DExpr::term(
            1,
            vec![a as u32],
            vec![0],
            BetaScalar::constant(Rat::new(BigInt::from(1), factorial(a as u32))),
        );
    }
    let mut f = DExpr::term(
        1,
        vec![r - 1],
        vec![1],
        BetaScalar::constant(Rat::new(BigInt::from(1), factorial(r - 1))),
    );
    let n = r as i64 - a - 1;
    for _ in 0..n.max(0) {
        f = f.diff(1);
    }
    for _ in 0..(-n).max(0) {
        f = f.integrate(1, 1);
    }
    f
}

/// `Φ(R^{(1,2)} (1−βT^{(1)})^{−r} (1−βT^{(2)})^{−s} c_a^{(1)} c_b^{(2)})` for `r, s ≥ 0`:
/// `e^{βD_1} ∫_0^{D_1} e^{−βu} Θ(u, u + D_2 − D_1) du` with
/// `Θ = F_{r,a−1}(D_1) F_{s,b}(D_2) − F_{r,a}(D_1) F_{s,b−1}(D_2)`.
pub fn phi_entry(r: u32, s: u32, a: i64, b: i64) -> DExpr {
    // Variables: D_1, D_2, u.
    let at_u = [0, 0, 1];
    let shifted = [-1, 1, 1];
    let theta = phi_f(r, a - 1)
        .compose(3, &at_u)
        .mul(&phi_f(s, b).compose(3, &shifted))
        .sub(
            &phi_f(r, a)
                .compose(3, &at_u)
                .mul(&phi_f(s, b - 1).compose(3, &shifted)),
        );
    let integrand = theta.mul(&DExpr::exp(3, 3, -1));
    let g = integrand.integrate(3, 1).mul(&DExpr::exp(3, 1, 1));
    g.restrict(2).expect("u is integrated out")
}

/// `Φ(c_{d_1}^{(s_1)} ⋯) = ∏ D_{s_i}^{d_i}/d_i!` in `nvars` variables.
pub fn phi(e: &RaisingExpr, nvars: usize) -> Result<DExpr> {
    let mut out = DExpr::zero(nvars);
    for (m, c) in e.terms() {
        let mut exps = vec![0u32; nvars];
        let mut scale = Rat::one();
        for (&s, &d) in m {
            if s == 0 || s > nvars {
                return invalid(format!("superscript {s} outside 1..={nvars}"));
            }
            exps[s - 1] = d;
            scale /= fact_rat(d);
        }
        out.add_term((exps, vec![0; nvars]), &c.scale(&scale));
    }
    Ok(out)
}

/// Formal inverse of `Φ` on the truncation to total subscript `cap`:
/// `D^m e^{fβD} ↦ Σ_n (fβ)^n/n! · (m+n)! c_{m+n}`, with an explicit factor for every variable.
pub fn phi_inverse_formal(g: &DExpr, cap: u32) -> RaisingExpr {
    let mut out = RaisingExpr::zero();
    for (e, f, c) in g.terms() {
        let mut partial: Vec<(CMonomial, BetaScalar, u32)> = vec![(CMonomial::new(), c.clone(), 0)];
        for v in 0..g.nvars() {
            let mut next = Vec::new();
            for (m, cx, used) in &partial {
                let n_max = if f[v] == 0 {
                    0
                } else {
                    cap.saturating_sub(used + e[v])
                };
                for n in 0..=n_max {
                    let d = e[v] + n;
                    if used + d > cap {
                        break;
                    }
                    let k = BetaScalar::monomial(
                        rat(f[v] as i64).pow(n as i32) / fact_rat(n) * fact_rat(d),
                        n as i32,
                    );
                    let mut m2 = m.clone();
                    m2.insert(v + 1, d);
                    next.push((m2, cx.mul(&k), used + d));
                }
            }
            partial = next;
        }
        for (m, cx, _) in partial {
            out.add_term(m, &cx);
        }
    }
    out
}

/// `∂^m c(t)/∂t^m` at `t = fβ`, as `m!` times a Taylor coefficient in `s = t − fβ`.
pub fn series_derivative(series: &CSeries, m: u32, f: i32) -> Frac {
    let m = m as usize;
    let mut taylor: Vec<Frac> = vec![Frac::zero(); m + 1];
    taylor[0] = Frac::one();
    let fr = rat(f as i64);
    for &v in series.numerator_vars() {
        // (1 + fβx) + x s.
        let a0 = BetaPoly::one(0).add(&BetaPoly::var(v).shift_beta(1).scale_rat(&fr));
        let a1 = BetaPoly::var(v);
        for k in (0..=m).rev() {
            let mut t = taylor[k].mul_poly(&a0);
            if k > 0 {
                t = t.add(&taylor[k - 1].mul_poly(&a1));
            }
            taylor[k] = t;
        }
    }
    let gamma = 1 - f;
    for &v in series.denominator_vars() {
        // [s^k] (1+βx)/((1+γβx) − x s) = (1+βx) x^k / (1+γβx)^{k+1}.
        let top = BetaPoly::one(0).add(&BetaPoly::var(v).shift_beta(1));
        let h: Vec<Frac> = (0..=m)
            .map(|k| {
                Frac::new(
                    top.mul(&BetaPoly::var(v).pow(k as u32)),
                    &[(v, gamma, k as u32 + 1)],
                )
            })
            .collect();
        let mut next = vec![Frac::zero(); m + 1];
        for (k, slot) in next.iter_mut().enumerate() {
            for j in 0..=k {
                *slot = slot.add(&taylor[k - j].mul(&h[j]));
            }
        }
        taylor = next;
    }
    taylor[m].scale(&BetaScalar::constant(fact_rat(m as u32)))
}

/// `Φ^{-1}(g)` as an element of the localized ring, one series per `D`-variable.
pub fn phi_inverse_frac(g: &DExpr, series: &[CSeries]) -> Result<Frac> {
    if series.len() < g.nvars() {
        return invalid(format!(
            "{} series for {} D-variables",
            series.len(),
            g.nvars()
        ));
    }
    let mut memo: HashMap<(usize, u32, i32), Frac> = HashMap::new();
    let mut out = Frac::zero();
    for (e, f, c) in g.terms() {
        let mut term = Frac::one().scale(c);
        for v in 0..g.nvars() {
            let piece = memo
                .entry((v, e[v], f[v]))
                .or_insert_with(|| series_derivative(&series[v], e[v], f[v]));
            term = term.mul(piece);
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// `Φ^{-1}(g)` as a polynomial; negative powers of `β` must cancel.
pub fn phi_inverse(g: &DExpr, series: &[CSeries]) -> Result<BetaPoly> {
    let p = phi_inverse_frac(g, series)?.to_poly()?;
    check_beta_nonnegative(&p)?;
    Ok(p)
}

pub(crate) fn check_beta_nonnegative(p: &BetaPoly) -> Result<()> {
    for (m, c) in p.terms() {
        if c.min_beta().is_some_and(|k| k < 0) {
            return internal(format!("negative power of β survives at {m:?}: {c}"));
        }
    }
    Ok(())
}
