use crate::error::{internal, Result};
use crate::poly::{rat, BetaPoly, BetaScalar, Monomial};
use crate::ring::Ring;
use std::collections::BTreeMap;

/// `num / ∏ (1 + γβx_v)^e`, keyed by `(v, γ)` with `γ ≠ 0`.
#[derive(Clone, Debug)]
pub struct Frac {
    num: BetaPoly,
    den: BTreeMap<(usize, i32), u32>,
}

fn factor(v: usize, gamma: i32) -> BetaPoly {
    BetaPoly::one(0).add(&BetaPoly::var(v).shift_beta(1).scale_rat(&rat(gamma as i64)))
}

impl Frac {
    /// `num / ∏ (1 + γβx_v)^e` for the listed `(v, γ, e)`.
    pub fn new(num: BetaPoly, den: &[(usize, i32, u32)]) -> Frac {
        let mut f = Frac {
            num,
            den: BTreeMap::new(),
        };
        for &(v, g, e) in den {
            if g != 0 && e > 0 {
                *f.den.entry((v, g)).or_insert(0) += e;
            }
        }
        f
    }

    pub fn from_poly(num: BetaPoly) -> Frac {
        Frac {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn numerator(&self) -> &BetaPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BTreeMap<(usize, i32), u32> {
        &self.den
    }

    pub fn scale(&self, c: &BetaScalar) -> Frac {
        Frac {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &BetaPoly) -> Frac {
        Frac {
            num: self.num.mul(p),
            den: self.den.clone(),
        }
    }

    fn lift(&self, den: &BTreeMap<(usize, i32), u32>) -> BetaPoly {
        let mut num = self.num.clone();
        for (&(v, g), &e) in den {
            let have = self.den.get(&(v, g)).copied().unwrap_or(0);
            if e > have {
                num = num.mul(&factor(v, g).pow(e - have));
            }
        }
        num
    }

    fn common(&self, other: &Frac) -> BTreeMap<(usize, i32), u32> {
        let mut den = self.den.clone();
        for (&k, &e) in &other.den {
            let slot = den.entry(k).or_insert(0);
            *slot = (*slot).max(e);
        }
        den
    }

    /// Exact division of the numerator by every denominator factor.
    pub fn to_poly(&self) -> Result<BetaPoly> {
        let mut num = self.num.clone();
        for (&(v, g), &e) in &self.den {
            for _ in 0..e {
                num = divide_linear(&num, v, g)?;
            }
        }
        Ok(num)
    }
}

/// `p / (1 + γβx_v)`; fails unless the division is exact.
fn divide_linear(p: &BetaPoly, v: usize, gamma: i32) -> Result<BetaPoly> {
    if p.is_zero() {
        return Ok(p.clone());
    }
    // p = Σ_k N_k x_v^k and Q_k = N_k − γβ Q_{k−1}.
    let mut slices: Vec<BetaPoly> = Vec::new();
    for (m, c) in p.terms() {
        let k = m.exp(v) as usize;
        if slices.len() <= k {
            slices.resize(k + 1, BetaPoly::zero(0));
        }
        slices[k].add_term(m.with_exp(v, 0), c);
    }
    let g = BetaScalar::monomial(rat(gamma as i64), 1);
    let top = slices.len() - 1;
    let mut q: Vec<BetaPoly> = Vec::with_capacity(top);
    for k in 0..top {
        let mut qk = slices[k].clone();
        if k > 0 {
            qk = qk.sub(&q[k - 1].scale(&g));
        }
        q.push(qk);
    }
    let remainder = if top == 0 {
        slices[0].clone()
    } else {
        slices[top].sub(&q[top - 1].scale(&g))
    };
    if !remainder.is_zero() {
        return internal(format!("numerator is not divisible by 1 + {gamma}βx_{v}"));
    }
    let mut out = BetaPoly::zero(p.nvars());
    for (k, qk) in q.iter().enumerate() {
        out.add_assign(&qk.mul_monomial(&Monomial::var(v, k as u32)));
    }
    Ok(out)
}

impl Ring for Frac {
    fn zero() -> Self {
        Frac::from_poly(BetaPoly::zero(0))
    }
    fn one() -> Self {
        Frac::from_poly(BetaPoly::one(0))
    }
    fn add(&self, other: &Self) -> Self {
        if other.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return other.clone();
        }
        let den = self.common(other);
        Frac {
            num: self.lift(&den).add(&other.lift(&den)),
            den,
        }
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&BetaScalar::int(-1)))
    }
    fn mul(&self, other: &Self) -> Self {
        let mut den = self.den.clone();
        for (&k, &e) in &other.den {
            *den.entry(k).or_insert(0) += e;
        }
        Frac {
            num: self.num.mul(&other.num),
            den,
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}
