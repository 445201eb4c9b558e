//! Sparse polynomials in `x_1, …, x_n` with coefficients in `Q[β, β^{-1}]`.

mod divdiff;
mod expand;
mod format;
mod json;
mod scalar;

pub use divdiff::{beta_divided_difference, divided_difference};
pub use expand::{expand_in_graded_basis, Expansion, ExpansionCap, ExpansionStatus, GradedBasis};
pub use format::{latex, latex_oplus_product, text};
pub use json::{from_json, to_json, POLY_SCHEMA};
pub use scalar::{rat, rat_frac, BetaScalar, Rat};

use crate::error::{internal, Result};
use crate::ring::Ring;
use num_traits::Zero;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

/// Exponent vector with trailing zeros trimmed; index 0 is `x_1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial { exps }
    }

    /// `x_i^e` with 1-based `i`.
    pub fn var(i: usize, e: u32) -> Self {
        let mut exps = vec![0; i];
        exps[i - 1] = e;
        Monomial::new(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent of 1-based variable `i`.
    pub fn exp(&self, i: usize) -> u32 {
        self.exps.get(i - 1).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn max_var(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().max(other.exps.len());
        let exps = (0..n)
            .map(|k| {
                self.exps.get(k).copied().unwrap_or(0) + other.exps.get(k).copied().unwrap_or(0)
            })
            .collect();
        Monomial { exps }
    }

    pub fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut exps = self.exps.clone();
        if exps.len() < i {
            exps.resize(i, 0);
        }
        exps[i - 1] = e;
        Monomial::new(exps)
    }

    pub fn swap(&self, i: usize) -> Monomial {
        let (a, b) = (self.exp(i), self.exp(i + 1));
        self.with_exp(i, b).with_exp(i + 1, a)
    }

    /// Entries as `(variable, exponent)` pairs with positive exponents.
    pub fn support(&self) -> Vec<(usize, u32)> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i + 1, e))
            .collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x{:?}", self.exps)
    }
}

#[derive(Clone, Default)]
pub struct BetaPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BetaScalar>,
}

impl PartialEq for BetaPoly {
    /// Equality ignores the declared ambient variable count.
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for BetaPoly {}

impl BetaPoly {
    pub fn zero(nvars: usize) -> Self {
        BetaPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        BetaPoly::constant(nvars, BetaScalar::one())
    }

    pub fn constant(nvars: usize, c: BetaScalar) -> Self {
        let mut p = BetaPoly::zero(nvars);
        p.add_term(Monomial::one(), &c);
        p
    }

    pub fn beta() -> Self {
        BetaPoly::constant(0, BetaScalar::beta_pow(1))
    }

    /// The variable `x_i` (1-based).
    pub fn var(i: usize) -> Self {
        BetaPoly::term(Monomial::var(i, 1), BetaScalar::one())
    }

    pub fn term(m: Monomial, c: BetaScalar) -> Self {
        let mut p = BetaPoly::zero(m.max_var());
        p.add_term(m, &c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn with_nvars(mut self, nvars: usize) -> Self {
        self.nvars = self.nvars.max(nvars);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BetaScalar)> {
        self.terms.iter()
    }

    pub fn monomial_count(&self) -> usize {
        self.terms.len()
    }

    /// Number of `(monomial, β-power)` terms.
    pub fn term_count(&self) -> usize {
        self.terms.values().map(|c| c.terms().count()).sum()
    }

    pub fn coeff(&self, m: &Monomial) -> BetaScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: &BetaScalar) {
        if c.is_zero() {
            return;
        }
        self.nvars = self.nvars.max(m.max_var());
        match self.terms.get_mut(&m) {
            Some(existing) => {
                existing.add_assign(c);
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    /// Adds `c · β^k · m`.
    pub fn add_rat_term(&mut self, m: Monomial, k: i32, c: &Rat) {
        self.add_term(m, &BetaScalar::monomial(c.clone(), k));
    }

    pub fn add_assign(&mut self, other: &BetaPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
        self.nvars = self.nvars.max(other.nvars);
    }

    pub fn add(&self, other: &BetaPoly) -> BetaPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &BetaPoly) -> BetaPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BetaPoly {
        BetaPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &BetaPoly) -> BetaPoly {
        let mut out = BetaPoly::zero(self.nvars.max(other.nvars));
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &c1.mul(c2));
            }
        }
        out
    }

    /// Product keeping only monomials of total degree `≤ maxdeg`.
    pub fn mul_truncated(&self, other: &BetaPoly, maxdeg: u32) -> BetaPoly {
        let mut out = BetaPoly::zero(self.nvars.max(other.nvars));
        for (m1, c1) in &self.terms {
            let d1 = m1.degree();
            if d1 > maxdeg {
                continue;
            }
            for (m2, c2) in &other.terms {
                if d1 + m2.degree() <= maxdeg {
                    out.add_term(m1.mul(m2), &c1.mul(c2));
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> BetaPoly {
        let mut out = BetaPoly::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn scale(&self, c: &BetaScalar) -> BetaPoly {
        let mut out = BetaPoly::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (m, x) in &self.terms {
            out.add_term(m.clone(), &x.mul(c));
        }
        out
    }

    pub fn scale_rat(&self, c: &Rat) -> BetaPoly {
        self.scale(&BetaScalar::constant(c.clone()))
    }

    /// Multiplies by `β^k`.
    pub fn shift_beta(&self, k: i32) -> BetaPoly {
        BetaPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.shift(k)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> BetaPoly {
        BetaPoly {
            nvars: self.nvars.max(m.max_var()),
            terms: self
                .terms
                .iter()
                .map(|(x, c)| (x.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Replaces `x_var` by `g`.
    pub fn substitute(&self, var: usize, g: &BetaPoly) -> BetaPoly {
        let mut powers: Vec<BetaPoly> = vec![BetaPoly::one(g.nvars)];
        let mut out = BetaPoly::zero(self.nvars.max(g.nvars));
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(g);
                powers.push(next);
            }
            let rest = m.with_exp(var, 0);
            out.add_assign(&powers[e].mul_monomial(&rest).scale(c));
        }
        out
    }

    /// Sets `β` to a rational value.
    pub fn specialize_beta(&self, beta: &Rat) -> BetaPoly {
        let mut out = BetaPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &BetaScalar::constant(c.evaluate(beta)));
        }
        out
    }

    /// Applies the transposition `s_i` to the variables.
    pub fn swap_vars(&self, i: usize) -> BetaPoly {
        let mut out = BetaPoly::zero(self.nvars.max(i + 1));
        for (m, c) in &self.terms {
            out.add_term(m.swap(i), c);
        }
        out
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// Smallest monomial in the term order.
    pub fn leading_min(&self) -> Option<(&Monomial, &BetaScalar)> {
        self.terms.iter().next()
    }

    pub fn truncate(&self, maxdeg: u32) -> BetaPoly {
        BetaPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= maxdeg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Degree-`d` homogeneous part in `x`.
    pub fn component(&self, d: u32) -> BetaPoly {
        BetaPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sets `x_j = 0` for `j > k`.
    pub fn restrict_vars(&self, k: usize) -> BetaPoly {
        BetaPoly {
            nvars: k,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.max_var() <= k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_var(&self) -> usize {
        self.terms.keys().map(Monomial::max_var).max().unwrap_or(0)
    }

    pub fn is_symmetric(&self, k: usize) -> bool {
        (1..k).all(|i| self.swap_vars(i) == *self)
    }

    pub fn is_canonical(&self) -> bool {
        self.terms.values().all(BetaScalar::is_canonical)
    }

    /// Asserts integral coefficients and nonnegative `β`-powers.
    pub fn finalize(self) -> Result<BetaPoly> {
        for (m, c) in &self.terms {
            if !c.is_canonical() {
                return internal(format!("non-canonical coefficient {c} at {m:?}"));
            }
        }
        Ok(self)
    }

    /// True when every rational coefficient is nonnegative.
    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(BetaScalar::is_nonnegative)
    }

    /// Degree in `x` minus `β`-degree is the same for every term.
    pub fn homogeneous_weight(&self) -> Option<i64> {
        let mut weights = BTreeSet::new();
        for (m, c) in &self.terms {
            for (k, _) in c.terms() {
                weights.insert(m.degree() as i64 - k as i64);
            }
        }
        if weights.len() == 1 {
            weights.into_iter().next()
        } else {
            None
        }
    }

    /// Distinct nonzero rational coefficients.
    pub fn coefficient_set(&self) -> BTreeSet<Rat> {
        self.terms
            .values()
            .flat_map(|c| c.terms().map(|(_, r)| r.clone()).collect::<Vec<_>>())
            .collect()
    }

    /// Terms as `(β-power, coefficient, monomial)` in canonical order.
    pub fn flat_terms(&self) -> Vec<(i32, Rat, Monomial)> {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            for (k, r) in c.terms() {
                out.push((k, r.clone(), m.clone()));
            }
        }
        out
    }

    /// Integer counts of monomials in a family homogeneous of `weight` (with `deg β = -1`):
    /// each monomial gets `β^{deg - weight}`.
    pub fn from_weighted_counts<I>(nvars: usize, weight: i64, counts: I) -> BetaPoly
    where
        I: IntoIterator<Item = (Vec<u32>, i64)>,
    {
        let mut p = BetaPoly::zero(nvars);
        for (exps, c) in counts {
            if c == 0 {
                continue;
            }
            let m = Monomial::new(exps);
            let k = (m.degree() as i64 - weight) as i32;
            p.add_rat_term(m, k, &rat(c));
        }
        p
    }

    pub fn from_int_terms(terms: &[(i64, i32, &[u32])]) -> BetaPoly {
        let mut p = BetaPoly::zero(0);
        for &(c, k, exps) in terms {
            p.add_rat_term(Monomial::new(exps.to_vec()), k, &rat(c));
        }
        p
    }
}

impl std::fmt::Display for BetaPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", text(self))
    }
}

impl std::fmt::Debug for BetaPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", text(self))
    }
}

impl Ring for BetaPoly {
    fn zero() -> Self {
        BetaPoly::zero(0)
    }
    fn one() -> Self {
        BetaPoly::one(0)
    }
    fn add(&self, other: &Self) -> Self {
        BetaPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        BetaPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        BetaPoly::mul(self, other)
    }
    fn is_zero(&self) -> bool {
        BetaPoly::is_zero(self)
    }
}

/// `f ⊕ g = f + g + βfg`.
pub fn oplus(f: &BetaPoly, g: &BetaPoly) -> BetaPoly {
    f.add(g).add(&f.mul(g).shift_beta(1))
}

/// `x_i ⊕ x_j`.
pub fn oplus_vars(i: usize, j: usize) -> BetaPoly {
    oplus(&BetaPoly::var(i), &BetaPoly::var(j))
}

/// `(f − g)/(1 + βg)` expanded geometrically and truncated at total degree `maxdeg`.
/// `g` must have no constant term, or the series does not converge.
pub fn ominus(f: &BetaPoly, g: &BetaPoly, maxdeg: u32) -> BetaPoly {
    assert!(
        g.min_degree().is_none_or(|d| d > 0),
        "ominus needs g without a constant term"
    );
    let diff = f.sub(g).truncate(maxdeg);
    let step = g.shift_beta(1).neg();
    let mut power = BetaPoly::one(g.nvars());
    let mut out = BetaPoly::zero(f.nvars().max(g.nvars()));
    loop {
        let piece = diff.mul_truncated(&power, maxdeg);
        if piece.is_zero() {
            break;
        }
        out.add_assign(&piece);
        power = power.mul_truncated(&step, maxdeg);
        if power.is_zero() {
            break;
        }
    }
    out
}

/// `x̄_i = −x_i/(1+βx_i)` truncated at degree `maxdeg`.
pub fn bar(i: usize, maxdeg: u32) -> BetaPoly {
    let mut out = BetaPoly::zero(i);
    for d in 1..=maxdeg {
        let sign = if d % 2 == 1 { -1 } else { 1 };
        out.add_rat_term(Monomial::var(i, d), d as i32 - 1, &rat(sign));
    }
    out
}

/// Sum over all monomials, used by tests comparing coefficient multisets.
pub fn coefficient_total(p: &BetaPoly) -> Rat {
    let mut total = Rat::zero();
    for (_, c) in p.terms() {
        for (_, r) in c.terms() {
            total += r;
        }
    }
    total
}
