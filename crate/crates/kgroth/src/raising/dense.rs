//! Dense truncated power series in `x_1..x_k` with `i128` coefficients.
//!
//! A [`Layout`] fixes a per-variable exponent cap and a total-degree cap; both cut out
//! monomial ideals, so products computed inside the box are exact modulo them. Series are
//! stored at `β = 1`; callers restore `β` from homogeneity.

use crate::error::{internal, Error, Result};
use crate::poly::{BetaPoly, Monomial};
use crate::ring::Ring;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    caps: Vec<u32>,
    total: u32,
    strides: Vec<usize>,
    degrees: Vec<u32>,
}

impl Layout {
    pub fn new(caps: Vec<u32>, total: Option<u32>) -> Arc<Layout> {
        let k = caps.len();
        let mut strides = vec![1usize; k];
        for v in (0..k.saturating_sub(1)).rev() {
            strides[v] = strides[v + 1] * (caps[v + 1] as usize + 1);
        }
        let len = if k == 0 {
            1
        } else {
            strides[0] * (caps[0] as usize + 1)
        };
        let box_total: u32 = caps.iter().sum();
        let total = total.map_or(box_total, |t| t.min(box_total));
        let mut degrees = vec![0u32; len];
        for (idx, d) in degrees.iter_mut().enumerate() {
            let mut rest = idx;
            for &stride in &strides[..k] {
                *d += (rest / stride) as u32;
                rest %= stride;
            }
        }
        Arc::new(Layout {
            caps,
            total,
            strides,
            degrees,
        })
    }

    pub fn nvars(&self) -> usize {
        self.caps.len()
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    /// Largest total degree of a monomial that survives truncation.
    pub fn total(&self) -> u32 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    fn exps(&self, idx: usize) -> Vec<u32> {
        let mut rest = idx;
        self.strides
            .iter()
            .map(|&s| {
                let e = rest / s;
                rest %= s;
                e as u32
            })
            .collect()
    }

    fn index(&self, exps: &[u32]) -> Option<usize> {
        let mut idx = 0;
        let mut deg = 0;
        for (v, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if v >= self.caps.len() || e > self.caps[v] {
                return None;
            }
            idx += e as usize * self.strides[v];
            deg += e;
        }
        (deg <= self.total).then_some(idx)
    }
}

/// An element of `Z[x]/I` for the layout's ideal `I`, or a bare integer when no layout is attached.
#[derive(Clone, Debug)]
pub struct Dense {
    layout: Option<Arc<Layout>>,
    coeffs: Vec<i128>,
    overflow: bool,
}

impl PartialEq for Dense {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = unify(self, other);
        a.overflow == b.overflow && a.coeffs == b.coeffs
    }
}

fn unify(a: &Dense, b: &Dense) -> (Dense, Dense) {
    match (&a.layout, &b.layout) {
        (Some(l), None) => (a.clone(), b.promote(l)),
        (None, Some(l)) => (a.promote(l), b.clone()),
        (Some(la), Some(lb)) => {
            assert!(
                Arc::ptr_eq(la, lb) || la == lb,
                "mixing dense series over different layouts"
            );
            (a.clone(), b.clone())
        }
        (None, None) => (a.clone(), b.clone()),
    }
}

impl Dense {
    pub fn scalar(c: i128) -> Dense {
        Dense {
            layout: None,
            coeffs: vec![c],
            overflow: false,
        }
    }

    pub fn zero_in(layout: &Arc<Layout>) -> Dense {
        Dense {
            layout: Some(layout.clone()),
            coeffs: vec![0; layout.len()],
            overflow: false,
        }
    }

    pub fn one_in(layout: &Arc<Layout>) -> Dense {
        let mut d = Dense::zero_in(layout);
        d.coeffs[0] = 1;
        d
    }

    fn poisoned(layout: Option<Arc<Layout>>) -> Dense {
        let len = layout.as_ref().map_or(1, |l| l.len());
        Dense {
            layout,
            coeffs: vec![0; len],
            overflow: true,
        }
    }

    fn promote(&self, layout: &Arc<Layout>) -> Dense {
        if self.layout.is_some() {
            return self.clone();
        }
        let mut d = Dense::zero_in(layout);
        d.coeffs[0] = self.coeffs[0];
        d.overflow = self.overflow;
        d
    }

    pub fn layout(&self) -> Option<&Arc<Layout>> {
        self.layout.as_ref()
    }

    pub fn overflowed(&self) -> bool {
        self.overflow
    }

    /// Coefficient of `x^exps`; zero outside the truncation.
    pub fn get(&self, exps: &[u32]) -> i128 {
        match &self.layout {
            None => {
                if exps.iter().all(|&e| e == 0) {
                    self.coeffs[0]
                } else {
                    0
                }
            }
            Some(l) => l.index(exps).map_or(0, |i| self.coeffs[i]),
        }
    }

    /// Adds `c · x^exps` when the monomial survives truncation.
    pub fn add_monomial(&mut self, exps: &[u32], c: i128) {
        let l = self
            .layout
            .as_ref()
            .expect("add_monomial needs a layout")
            .clone();
        if let Some(i) = l.index(exps) {
            match self.coeffs[i].checked_add(c) {
                Some(v) => self.coeffs[i] = v,
                None => *self = Dense::poisoned(Some(l)),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        !self.overflow && self.coeffs.iter().all(|&c| c == 0)
    }

    fn max_abs(&self) -> u128 {
        self.coeffs
            .iter()
            .map(|c| c.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    fn nnz(&self) -> u128 {
        self.coeffs.iter().filter(|&&c| c != 0).count() as u128
    }

    fn zip(&self, other: &Dense, f: impl Fn(i128, i128) -> Option<i128>) -> Dense {
        let (a, b) = unify(self, other);
        if a.overflow || b.overflow {
            return Dense::poisoned(a.layout);
        }
        let mut coeffs = Vec::with_capacity(a.coeffs.len());
        for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
            match f(*x, *y) {
                Some(v) => coeffs.push(v),
                None => return Dense::poisoned(a.layout),
            }
        }
        Dense {
            layout: a.layout,
            coeffs,
            overflow: false,
        }
    }

    pub fn scale(&self, c: i128) -> Dense {
        self.zip(&Dense::scalar(0), |x, _| x.checked_mul(c))
    }

    /// Multiplication by `Σ_e poly[e] x_v^e` (0-based `v`).
    pub fn mul_univariate(&self, v: usize, poly: &[i128]) -> Dense {
        let Some(l) = self.layout.clone() else {
            panic!("mul_univariate needs a layout");
        };
        if self.overflow {
            return Dense::poisoned(Some(l));
        }
        let bound = self
            .max_abs()
            .checked_mul(poly.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0));
        let safe = bound
            .and_then(|b| b.checked_mul(poly.len() as u128))
            .is_some_and(|b| b < i128::MAX as u128);
        if !safe {
            return Dense::poisoned(Some(l));
        }
        let cap = l.caps[v] as usize;
        let s = l.strides[v];
        let mut out = vec![0i128; self.coeffs.len()];
        for (idx, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let here = (idx / s) % (cap + 1);
            let deg = l.degrees[idx];
            for (e, &p) in poly.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                if here + e > cap || deg + e as u32 > l.total {
                    break;
                }
                out[idx + e * s] += x * p;
            }
        }
        Dense {
            layout: Some(l),
            coeffs: out,
            overflow: false,
        }
    }

    /// `Σ c · x^{exps}` with `β` restored as `β^{deg − weight}`.
    pub fn to_poly(&self, weight: i64) -> Result<BetaPoly> {
        if self.overflow {
            return Err(Error::Overflow("dense series arithmetic"));
        }
        let Some(l) = &self.layout else {
            let mut p = BetaPoly::zero(0);
            if self.coeffs[0] != 0 {
                p.add_rat_term(Monomial::one(), -(weight as i32), &rat_i128(self.coeffs[0]));
            }
            return Ok(p);
        };
        let mut p = BetaPoly::zero(l.nvars());
        for (idx, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let deg = l.degrees[idx] as i64;
            if deg < weight {
                return internal(format!("term of degree {deg} below weight {weight}"));
            }
            p.add_rat_term(
                Monomial::new(l.exps(idx)),
                (deg - weight) as i32,
                &rat_i128(c),
            );
        }
        Ok(p)
    }

    /// Loads a polynomial evaluated at `β = 1`; coefficients must be integers.
    pub fn from_poly(p: &BetaPoly, layout: &Arc<Layout>) -> Result<Dense> {
        let mut d = Dense::zero_in(layout);
        for (m, c) in p.terms() {
            for (_, r) in c.terms() {
                if !r.is_integer() {
                    return internal("non-integer coefficient in a dense series");
                }
                let v: i128 = r
                    .to_integer()
                    .try_into()
                    .map_err(|_| Error::Overflow("dense series load"))?;
                let mut exps = m.exps().to_vec();
                exps.resize(layout.nvars().max(exps.len()), 0);
                d.add_monomial(&exps, v);
            }
        }
        Ok(d)
    }
}

fn rat_i128(c: i128) -> crate::poly::Rat {
    crate::poly::Rat::from_integer(num_bigint::BigInt::from(c))
}

fn conv(
    l: &Layout,
    a: &[i128],
    b: &[i128],
    out: &mut [i128],
    dim: usize,
    o: (usize, usize, usize),
    budget: u32,
) {
    let (oa, ob, oo) = o;
    let cap = l.caps[dim].min(budget) as usize;
    let s = l.strides[dim];
    if dim + 1 == l.caps.len() {
        for ea in 0..=cap {
            let x = a[oa + ea];
            if x == 0 {
                continue;
            }
            let row = &b[ob..=ob + cap - ea];
            let dst = &mut out[oo + ea..=oo + cap];
            for (d, &y) in dst.iter_mut().zip(row) {
                *d += x * y;
            }
        }
        return;
    }
    for ea in 0..=cap {
        for eb in 0..=cap - ea {
            let e = ea + eb;
            conv(
                l,
                a,
                b,
                out,
                dim + 1,
                (oa + ea * s, ob + eb * s, oo + e * s),
                budget - e as u32,
            );
        }
    }
}

impl Ring for Dense {
    fn zero() -> Self {
        Dense::scalar(0)
    }
    fn one() -> Self {
        Dense::scalar(1)
    }
    fn add(&self, other: &Self) -> Self {
        self.zip(other, i128::checked_add)
    }
    fn sub(&self, other: &Self) -> Self {
        self.zip(other, i128::checked_sub)
    }
    fn mul(&self, other: &Self) -> Self {
        let (a, b) = unify(self, other);
        if a.overflow || b.overflow {
            return Dense::poisoned(a.layout);
        }
        let Some(l) = a.layout.clone() else {
            return match a.coeffs[0].checked_mul(b.coeffs[0]) {
                Some(v) => Dense::scalar(v),
                None => Dense::poisoned(None),
            };
        };
        // Every output coefficient is a sum of at most min(nnz) products.
        let safe = a
            .max_abs()
            .checked_mul(b.max_abs())
            .and_then(|m| m.checked_mul(a.nnz().min(b.nnz()).max(1)))
            .is_some_and(|m| m < i128::MAX as u128);
        if !safe {
            return Dense::poisoned(Some(l));
        }
        let mut out = vec![0i128; a.coeffs.len()];
        if l.nvars() == 0 {
            out[0] = a.coeffs[0] * b.coeffs[0];
        } else {
            conv(&l, &a.coeffs, &b.coeffs, &mut out, 0, (0, 0, 0), l.total);
        }
        Dense {
            layout: Some(l),
            coeffs: out,
            overflow: false,
        }
    }
    fn is_zero(&self) -> bool {
        Dense::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use proptest::prelude::*;

    fn poly_strategy(nvars: usize) -> impl Strategy<Value = BetaPoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, nvars), -5i64..6), 0..6).prop_map(
            move |terms| {
                let mut p = BetaPoly::zero(nvars);
                for (e, c) in terms {
                    let deg = e.iter().sum::<u32>() as i32;
                    p.add_rat_term(Monomial::new(e), deg, &rat(c));
                }
                p
            },
        )
    }

    #[test]
    fn layout_indexing() {
        let l = Layout::new(vec![2, 1, 3], Some(4));
        assert_eq!(l.len(), 3 * 2 * 4);
        assert_eq!(l.total(), 4);
        let idx = l.index(&[1, 1, 2]).unwrap();
        assert_eq!(l.exps(idx), vec![1, 1, 2]);
        assert_eq!(l.index(&[2, 1, 2]), None);
        assert_eq!(l.index(&[0, 2]), None);
    }

    #[test]
    fn univariate_shift() {
        let l = Layout::new(vec![3, 3], None);
        let one = Dense::one_in(&l);
        let x1 = one.mul_univariate(0, &[0, 1]);
        let x2 = one.mul_univariate(1, &[0, 1]);
        let p = x1.add(&x2).mul(&x1.add(&x2));
        assert_eq!(p.get(&[1, 1]), 2);
        assert_eq!(p.get(&[2]), 1);
        assert_eq!(p.get(&[0, 2]), 1);
    }

    #[test]
    fn overflow_is_reported() {
        let l = Layout::new(vec![1], None);
        let big = Dense::one_in(&l).scale(i128::MAX / 2);
        let prod = big.mul(&big);
        assert!(prod.overflowed());
        assert_eq!(
            prod.to_poly(0),
            Err(Error::Overflow("dense series arithmetic"))
        );
    }

    proptest! {
        #[test]
        fn product_matches_sparse(a in poly_strategy(3), b in poly_strategy(3)) {
            let l = Layout::new(vec![4, 3, 4], Some(7));
            let da = Dense::from_poly(&a, &l).unwrap();
            let db = Dense::from_poly(&b, &l).unwrap();
            let want = a.mul(&b);
            let got = da.mul(&db).to_poly(0).unwrap();
            let kept = BetaPoly::from_int_terms(&[]);
            let mut expected = kept;
            for (m, c) in want.terms() {
                let e = m.exps();
                let inside = e.first().copied().unwrap_or(0) <= 4
                    && e.get(1).copied().unwrap_or(0) <= 3
                    && e.get(2).copied().unwrap_or(0) <= 4
                    && m.degree() <= 7;
                if inside {
                    expected.add_term(m.clone(), c);
                }
            }
            prop_assert_eq!(got, expected);
        }
    }
}
