//! Raising operators on formal products of `c_d^{(i)}`, Pfaffians, and two ways of
//! turning Pfaffian entries into polynomials: truncated expansion (`dense`) and the
//! exact `Φ` calculus (`phi`, `frac`).

pub mod dense;
pub mod frac;
pub mod pfaffian;
pub mod phi;
pub(crate) mod series;

pub use dense::{Dense, Layout};
pub use frac::Frac;
pub use pfaffian::{det_leibniz, pfaffian, pfaffian_combinatorial, SkewMatrix};
pub use phi::{phi, phi_entry, phi_f, phi_inverse, phi_inverse_formal, DExpr};
pub use series::{evaluate, layout_for, CSeries};

use crate::error::{invalid, Result};
use crate::poly::{rat, BetaScalar, Rat};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Generalized binomial `n(n−1)⋯(n−k+1)/k!`, zero for `k < 0`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

fn binom_rat(n: i64, k: i64) -> Rat {
    Rat::from_integer(binom(n, k))
}

/// `c_{d_1}^{(s_1)} ⋯ c_{d_m}^{(s_m)}` as a map superscript → subscript.
pub type CMonomial = BTreeMap<usize, u32>;

/// A finite combination `Σ coeff · c_{d_1}^{(s_1)} ⋯`, at most one factor per superscript.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RaisingExpr {
    terms: BTreeMap<CMonomial, BetaScalar>,
}

impl RaisingExpr {
    pub fn zero() -> Self {
        RaisingExpr::default()
    }

    /// A single product; `factors` lists `(superscript, subscript)` pairs.
    pub fn monomial(factors: &[(usize, u32)]) -> Result<Self> {
        let mut m = CMonomial::new();
        for &(s, d) in factors {
            if m.insert(s, d).is_some() {
                return invalid(format!("superscript {s} appears twice"));
            }
        }
        let mut e = RaisingExpr::zero();
        e.add_term(m, &BetaScalar::one());
        Ok(e)
    }

    pub fn add_term(&mut self, m: CMonomial, c: &BetaScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_default();
        entry.add_assign(c);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CMonomial, &BetaScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, factors: &[(usize, u32)]) -> BetaScalar {
        let m: CMonomial = factors.iter().copied().collect();
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &RaisingExpr) -> RaisingExpr {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &BetaScalar) -> RaisingExpr {
        let mut out = RaisingExpr::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &v.mul(c));
        }
        out
    }

    /// Superscripts occurring in some term.
    pub fn superscripts(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.terms.keys().flat_map(|m| m.keys().copied()).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// `Σ d_s − (β-exponent)` of every term, when all terms agree.
    pub fn weight(&self) -> Option<i64> {
        let mut w = None;
        for (m, c) in &self.terms {
            let sum: i64 = m.values().map(|&d| d as i64).sum();
            for (k, _) in c.terms() {
                let here = sum - k as i64;
                match w {
                    None => w = Some(here),
                    Some(v) if v != here => return None,
                    _ => {}
                }
            }
        }
        w
    }
}

fn total(m: &CMonomial) -> u32 {
    m.values().sum()
}

/// Applies `(T^{(i)})^power`: subscripts of superscript `i` move by `power`, terms without
/// an `i`-factor (or pushed below 0) vanish.
pub fn apply_t(e: &RaisingExpr, i: usize, power: i32) -> RaisingExpr {
    if power == 0 {
        return e.clone();
    }
    let mut out = RaisingExpr::zero();
    for (m, c) in &e.terms {
        let Some(&d) = m.get(&i) else { continue };
        let nd = d as i64 + power as i64;
        if nd < 0 {
            continue;
        }
        let mut m2 = m.clone();
        m2.insert(i, nd as u32);
        out.add_term(m2, c);
    }
    out
}

/// Applies `(1 − βT^{(i)})^{exponent}`. Negative exponents expand as a series; the subscript
/// cap bounds the total subscript `Σ d_s` of kept terms, which is never lowered by later steps.
pub fn apply_one_minus_beta_t(
    e: &RaisingExpr,
    i: usize,
    exponent: i32,
    cap: Option<u32>,
) -> Result<RaisingExpr> {
    let mut out = RaisingExpr::zero();
    if exponent >= 0 {
        for k in 0..=exponent as i64 {
            let c = BetaScalar::monomial(
                binom_rat(exponent as i64, k) * rat(if k % 2 == 0 { 1 } else { -1 }),
                k as i32,
            );
            out = out.add(&apply_t(e, i, k as i32).scale(&c));
        }
        if let Some(cap) = cap {
            out.terms.retain(|m, _| total(m) <= cap);
        }
        return Ok(out);
    }
    let Some(cap) = cap else {
        return invalid("(1 − βT)^{-r} needs a subscript cap");
    };
    let r = -(exponent as i64);
    for (m, c) in &e.terms {
        let base = total(m);
        if base > cap {
            continue;
        }
        let Some(&d) = m.get(&i) else {
            out.add_term(m.clone(), c);
            continue;
        };
        for k in 0..=(cap - base) {
            let coef = BetaScalar::monomial(binom_rat(r + k as i64 - 1, r - 1), k as i32);
            let mut m2 = m.clone();
            m2.insert(i, d + k);
            out.add_term(m2, &c.mul(&coef));
        }
    }
    Ok(out)
}

/// Coefficient of `(βT^{(i)})^k (T^{(i)}/T^{(j)})^l` in `R^{(i,j)}`, without the `β^k`.
pub fn r_coefficient(k: u32, l: u32) -> BigInt {
    if l == 0 {
        return BigInt::one();
    }
    let (k, l) = (k as i64, l as i64);
    let c = binom(k + l - 1, k) + binom(k + l, k);
    if l % 2 == 1 {
        -c
    } else {
        c
    }
}

/// Applies `R^{(i,j)} = Σ_k (βT^{(i)})^k + Σ_{k, l≥1} (−1)^l (C(k+l−1,k) + C(k+l,k)) (βT^{(i)})^k (T^{(i)}/T^{(j)})^l`.
/// The `l`-sum stops once `(T^{(j)})^{-l}` annihilates; the `k`-sum at the subscript cap.
pub fn apply_r(e: &RaisingExpr, i: usize, j: usize, cap: u32) -> RaisingExpr {
    let mut out = RaisingExpr::zero();
    for (m, c) in &e.terms {
        let base = total(m);
        if base > cap {
            continue;
        }
        let Some(&a) = m.get(&i) else {
            out.add_term(m.clone(), c);
            continue;
        };
        let b = m.get(&j).copied();
        let lmax = b.unwrap_or(0);
        for l in 0..=lmax {
            for k in 0..=(cap - base) {
                let coef = BetaScalar::monomial(Rat::from_integer(r_coefficient(k, l)), k as i32);
                let mut m2 = m.clone();
                m2.insert(i, a + k + l);
                if let Some(b) = b {
                    m2.insert(j, b - l);
                }
                out.add_term(m2, &c.mul(&coef));
            }
        }
    }
    out
}

impl fmt::Display for RaisingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (s, d) in m {
                write!(f, " c_{d}^({s})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RaisingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(factors: &[(usize, u32)]) -> RaisingExpr {
        RaisingExpr::monomial(factors).unwrap()
    }

    fn b(n: i64, k: i32) -> BetaScalar {
        BetaScalar::monomial(rat(n), k)
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(-1, 3), BigInt::from(-1));
        assert_eq!(binom(-2, 2), BigInt::from(3));
        assert_eq!(binom(3, 5), BigInt::from(0));
        assert_eq!(binom(-1, 0), BigInt::from(1));
    }

    #[test]
    fn t_operator() {
        assert_eq!(apply_t(&c(&[(1, 2)]), 1, 1), c(&[(1, 3)]));
        assert!(apply_t(&c(&[(1, 0)]), 1, -1).is_empty());
        assert!(apply_t(&c(&[(2, 3)]), 1, 1).is_empty());
        let e = c(&[(1, 2), (2, 1)])
            .add(&c(&[(1, 0), (2, 3)]))
            .add(&c(&[(2, 1), (3, 2)]));
        assert_eq!(apply_t(&e, 1, -1), c(&[(1, 1), (2, 1)]));
    }

    #[test]
    fn one_minus_beta_t() {
        assert_eq!(
            apply_one_minus_beta_t(&c(&[(1, 1)]), 1, 0, None).unwrap(),
            c(&[(1, 1)])
        );
        let want = c(&[(1, 1)])
            .add(&c(&[(1, 2)]).scale(&b(1, 1)))
            .add(&c(&[(1, 3)]).scale(&b(1, 2)));
        assert_eq!(
            apply_one_minus_beta_t(&c(&[(1, 1)]), 1, -1, Some(3)).unwrap(),
            want
        );
        let want = c(&[(1, 1)]).add(&c(&[(1, 2)]).scale(&b(-1, 1)));
        assert_eq!(
            apply_one_minus_beta_t(&c(&[(1, 1)]), 1, 1, None).unwrap(),
            want
        );
        assert!(apply_one_minus_beta_t(&c(&[(1, 1)]), 1, -2, None).is_err());
        let sq = apply_one_minus_beta_t(&c(&[(1, 0)]), 1, -2, Some(3)).unwrap();
        assert_eq!(sq.coeff(&[(1, 3)]), b(4, 3));
    }

    #[test]
    fn r_operator() {
        let e = apply_r(&c(&[(1, 1), (2, 0)]), 1, 2, 2);
        let want = c(&[(1, 1), (2, 0)]).add(&c(&[(1, 2), (2, 0)]).scale(&b(1, 1)));
        assert_eq!(e, want);
        let e = apply_r(&c(&[(1, 0), (2, 0)]), 1, 2, 3);
        assert_eq!(e.len(), 4);
        assert_eq!(r_coefficient(0, 1), BigInt::from(-2));
        let e = apply_r(&c(&[(1, 0), (2, 1)]), 1, 2, 1);
        assert_eq!(e.coeff(&[(1, 1), (2, 0)]), b(-2, 0));
    }

    #[test]
    fn r_series_times_denominator() {
        // R = (1 − y)/(1 + y − u) with u = βT_i, y = T_i/T_j; (1 + y − u)·R must be 1 − y.
        let n = 8u32;
        let mut series: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for k in 0..=n {
            for l in 0..=n {
                series.insert((k, l), r_coefficient(k, l));
            }
        }
        for k in 0..n {
            for l in 0..n {
                let mut v = series[&(k, l)].clone();
                if l > 0 {
                    v += &series[&(k, l - 1)];
                }
                if k > 0 {
                    v -= &series[&(k - 1, l)];
                }
                let want = match (k, l) {
                    (0, 0) => BigInt::one(),
                    (0, 1) => -BigInt::one(),
                    _ => BigInt::zero(),
                };
                assert_eq!(v, want, "({k},{l})");
            }
        }
    }

    #[test]
    fn weights() {
        let e = apply_one_minus_beta_t(&c(&[(1, 2)]), 1, -1, Some(5)).unwrap();
        assert_eq!(e.weight(), Some(2));
        let mixed = c(&[(1, 1)]).add(&c(&[(1, 2)]));
        assert_eq!(mixed.weight(), None);
    }
}
