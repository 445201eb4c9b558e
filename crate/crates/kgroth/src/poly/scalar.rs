use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// A Laurent polynomial in `β` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BetaScalar {
    terms: BTreeMap<i32, Rat>,
}

impl BetaScalar {
    pub fn zero() -> Self {
        BetaScalar::default()
    }

    pub fn one() -> Self {
        BetaScalar::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        BetaScalar::monomial(c, 0)
    }

    pub fn int(n: i64) -> Self {
        BetaScalar::constant(rat(n))
    }

    /// `c · β^k`.
    pub fn monomial(c: Rat, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        BetaScalar { terms }
    }

    pub fn beta_pow(k: i32) -> Self {
        BetaScalar::monomial(Rat::one(), k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rat)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, k: i32) -> Rat {
        self.terms.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, k: i32, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add_assign(&mut self, other: &BetaScalar) {
        for (&k, c) in &other.terms {
            self.add_term(k, c);
        }
    }

    pub fn add(&self, other: &BetaScalar) -> BetaScalar {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &BetaScalar) -> BetaScalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BetaScalar {
        BetaScalar {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &BetaScalar) -> BetaScalar {
        let mut out = BetaScalar::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &other.terms {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> BetaScalar {
        if c.is_zero() {
            return BetaScalar::zero();
        }
        BetaScalar {
            terms: self.terms.iter().map(|(&k, x)| (k, x * c)).collect(),
        }
    }

    pub fn shift(&self, k: i32) -> BetaScalar {
        BetaScalar {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// Pure constants (a single `β^0` term) are the only invertible elements we divide by.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// `Some((c, k))` when the scalar is `c·β^k`.
    pub fn as_monomial(&self) -> Option<(Rat, i32)> {
        if self.terms.len() == 1 {
            let (&k, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), k))
        } else {
            None
        }
    }

    pub fn min_beta(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_beta(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn evaluate(&self, beta: &Rat) -> Rat {
        let mut total = Rat::zero();
        for (&k, c) in &self.terms {
            let p = if k >= 0 {
                num_traits::pow(beta.clone(), k as usize)
            } else {
                num_traits::pow(beta.recip(), (-k) as usize)
            };
            total += c * p;
        }
        total
    }

    /// True when every coefficient is an integer and every `β`-power is nonnegative.
    pub fn is_canonical(&self) -> bool {
        self.terms.iter().all(|(&k, c)| k >= 0 && c.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

impl fmt::Display for BetaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, c) in &self.terms {
            let (neg, abs) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = abs.is_one();
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !unit {
                        write!(f, "{abs}*")?;
                    }
                    if k == 1 {
                        write!(f, "b")?
                    } else {
                        write!(f, "b^{k}")?
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BetaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
