use super::dense::{Dense, Layout};
use super::{binom, RaisingExpr};
use crate::error::{invalid, Error, Result};
use crate::poly::{BetaPoly, Rat};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// `c(t) = ∏_{m ∈ num} (1 + x_m t) / ∏_{m ∈ den} (1 + x̄_m t)` with `x̄ = −x/(1+βx)`.
/// Variable indices are 1-based; repeats are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CSeries {
    num: Vec<usize>,
    den: Vec<usize>,
}

impl CSeries {
    pub fn new(mut num: Vec<usize>, mut den: Vec<usize>) -> Result<CSeries> {
        if num.contains(&0) || den.contains(&0) {
            return invalid("series variables are 1-based");
        }
        num.sort_unstable();
        den.sort_unstable();
        Ok(CSeries { num, den })
    }

    /// `c(t) = 1`.
    pub fn trivial() -> CSeries {
        CSeries::default()
    }

    /// `∏_{m ≤ p} (1 + x_m t) / ∏_{m ≤ q} (1 + x̄_m t)`.
    pub fn flagged(p: usize, q: usize) -> CSeries {
        CSeries {
            num: (1..=p).collect(),
            den: (1..=q).collect(),
        }
    }

    pub fn stable(k: usize) -> CSeries {
        CSeries::flagged(k, k)
    }

    pub fn is_trivial(&self) -> bool {
        self.num.is_empty() && self.den.is_empty()
    }

    pub fn numerator_vars(&self) -> &[usize] {
        &self.num
    }

    pub fn denominator_vars(&self) -> &[usize] {
        &self.den
    }

    pub fn max_var(&self) -> usize {
        self.num.iter().chain(&self.den).copied().max().unwrap_or(0)
    }

    /// `c_0, …, c_upto` at `β = 1`, truncated to `layout`.
    pub fn dense_coefficients(&self, layout: &Arc<Layout>, upto: u32) -> Result<Vec<Dense>> {
        if self.max_var() > layout.nvars() {
            return invalid(format!(
                "series uses x_{} but the layout has {} variables",
                self.max_var(),
                layout.nvars()
            ));
        }
        let upto = upto as usize;
        let mut cs = vec![Dense::zero_in(layout); upto + 1];
        cs[0] = Dense::one_in(layout);
        for &v in &self.num {
            for d in (1..=upto).rev() {
                cs[d] = cs[d].add(&cs[d - 1].mul_univariate(v - 1, &[0, 1]));
            }
        }
        for &v in &self.den {
            // [t^k] 1/(1 + x̄ t) = x^k/(1+x)^k = Σ_j (−1)^j C(k+j−1, j) x^{k+j} at β = 1.
            let cap = layout.caps()[v - 1] as usize;
            let mut g: Vec<Vec<i128>> = vec![vec![1]];
            for k in 1..=cap.min(upto) {
                let mut poly = vec![0i128; cap + 1];
                for (j, slot) in poly.iter_mut().enumerate().skip(k) {
                    let jj = (j - k) as i64;
                    let c = binom(k as i64 + jj - 1, jj)
                        .to_i128()
                        .ok_or(Error::Overflow("series coefficient"))?;
                    *slot = if jj % 2 == 0 { c } else { -c };
                }
                g.push(poly);
            }
            let mut next = vec![Dense::zero_in(layout); upto + 1];
            for (d, slot) in next.iter_mut().enumerate() {
                for (k, gk) in g.iter().enumerate().take(d + 1) {
                    *slot = slot.add(&cs[d - k].mul_univariate(v - 1, gk));
                }
            }
            cs = next;
        }
        Ok(cs)
    }

    /// `c_d` truncated to total degree `maxdeg`.
    pub fn coefficient(&self, d: u32, maxdeg: u32) -> Result<BetaPoly> {
        if d > maxdeg {
            return Ok(BetaPoly::zero(self.max_var()));
        }
        let layout = layout_for(&[self], maxdeg, Some(maxdeg));
        let cs = self.dense_coefficients(&layout, d)?;
        cs[d as usize].to_poly(d as i64)
    }
}

/// Per-variable caps for a product with one factor from each series: variables that occur in
/// some denominator get `den_cap`, the rest their exact maximal degree.
pub fn layout_for(series: &[&CSeries], den_cap: u32, total: Option<u32>) -> Arc<Layout> {
    let k = series.iter().map(|s| s.max_var()).max().unwrap_or(0);
    let mut caps = vec![0u32; k];
    let mut in_den = vec![false; k];
    for s in series {
        for &v in &s.num {
            caps[v - 1] += 1;
        }
        for &v in &s.den {
            in_den[v - 1] = true;
        }
    }
    for v in 0..k {
        if in_den[v] {
            caps[v] = den_cap;
        }
        if let Some(t) = total {
            caps[v] = caps[v].min(t);
        }
    }
    Layout::new(caps, total)
}

type Factor = (usize, u32);

/// Sums `Σ K · ∏ c^{(s)}_d` over integer-coefficient terms. In each term the factor whose
/// superscript takes the most distinct subscripts is summed first; the remaining factors form a
/// group key, so each group costs one product per key factor.
pub(crate) fn evaluate_dense(
    terms: &[(Vec<Factor>, BigInt)],
    coeffs: &dyn Fn(usize, u32) -> Option<Dense>,
    layout: &Arc<Layout>,
) -> Result<Dense> {
    let mut spread: BTreeMap<usize, BTreeSet<u32>> = BTreeMap::new();
    for (factors, _) in terms {
        for &(s, d) in factors {
            spread.entry(s).or_default().insert(d);
        }
    }
    let mut groups: BTreeMap<Vec<Factor>, Vec<(Factor, i128)>> = BTreeMap::new();
    let mut constant = Dense::zero_in(layout);
    for (factors, k) in terms {
        let k = k.to_i128().ok_or(Error::Overflow("raising coefficient"))?;
        let Some(pos) = (0..factors.len()).max_by_key(|&p| spread[&factors[p].0].len()) else {
            constant = constant.add(&Dense::one_in(layout).scale(k));
            continue;
        };
        let mut key = factors.clone();
        let inner = key.remove(pos);
        groups.entry(key).or_default().push((inner, k));
    }
    let mut acc = constant;
    for (prefix, inner) in groups {
        let mut sum = Dense::zero_in(layout);
        for ((s, d), k) in inner {
            if let Some(c) = coeffs(s, d) {
                sum = sum.add(&c.scale(k));
            }
        }
        if sum.is_zero() && !sum.overflowed() {
            continue;
        }
        for &(s, d) in &prefix {
            match coeffs(s, d) {
                Some(c) => sum = sum.mul(&c),
                None => {
                    sum = Dense::zero_in(layout);
                    break;
                }
            }
        }
        acc = acc.add(&sum);
    }
    Ok(acc)
}

type IntTerms = Vec<(Vec<Factor>, BigInt)>;

/// Splits `e` into homogeneous pieces `(weight, lcm of denominators, integer terms)`.
pub(crate) fn homogeneous_parts(e: &RaisingExpr) -> Vec<(i64, BigInt, IntTerms)> {
    let mut by_weight: BTreeMap<i64, Vec<(Vec<Factor>, Rat)>> = BTreeMap::new();
    for (m, c) in e.terms() {
        let factors: Vec<Factor> = m.iter().map(|(&s, &d)| (s, d)).collect();
        let sum: i64 = m.values().map(|&d| d as i64).sum();
        for (k, r) in c.terms() {
            by_weight
                .entry(sum - k as i64)
                .or_default()
                .push((factors.clone(), r.clone()));
        }
    }
    by_weight
        .into_iter()
        .map(|(w, ts)| {
            let lcm = ts
                .iter()
                .fold(BigInt::from(1), |l, (_, r)| l.lcm(r.denom()));
            let ints = ts
                .into_iter()
                .map(|(f, r)| (f, (r * Rat::from_integer(lcm.clone())).to_integer()))
                .collect();
            (w, lcm, ints)
        })
        .collect()
}

/// Substitutes `c_d^{(s)}` by the `s`-th series and returns the exact truncation to total degree `maxdeg`.
pub fn evaluate(e: &RaisingExpr, series: &[CSeries], maxdeg: u32) -> Result<BetaPoly> {
    let used = e.superscripts();
    if let Some(&s) = used.iter().find(|&&s| s == 0 || s > series.len()) {
        return invalid(format!("no series for superscript {s}"));
    }
    let refs: Vec<&CSeries> = used.iter().map(|&s| &series[s - 1]).collect();
    let layout = layout_for(&refs, maxdeg, Some(maxdeg));
    let mut tables: BTreeMap<usize, Vec<Dense>> = BTreeMap::new();
    for &s in &used {
        tables.insert(s, series[s - 1].dense_coefficients(&layout, maxdeg)?);
    }
    let lookup = |s: usize, d: u32| tables.get(&s).and_then(|t| t.get(d as usize)).cloned();
    let nvars = layout.nvars();
    let mut out = BetaPoly::zero(nvars);
    for (w, lcm, terms) in homogeneous_parts(e) {
        let value = evaluate_dense(&terms, &lookup, &layout)?;
        out.add_assign(&value.to_poly(w)?.scale_rat(&Rat::new(BigInt::from(1), lcm)));
    }
    Ok(out)
}
