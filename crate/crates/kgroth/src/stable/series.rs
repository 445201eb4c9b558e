use crate::poly::{BetaPoly, BetaScalar};
use crate::ring::Ring;

/// A symmetric polynomial in `x_1..x_k`, known up to total degree `maxdeg` when one is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymSeries {
    poly: BetaPoly,
    nvars: usize,
    maxdeg: Option<u32>,
}

fn min_deg(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl SymSeries {
    /// Restricts `poly` to `x_1..x_k` and drops terms above `maxdeg`.
    pub fn new(poly: BetaPoly, nvars: usize, maxdeg: Option<u32>) -> Self {
        let mut poly = poly.restrict_vars(nvars);
        if let Some(d) = maxdeg {
            poly = poly.truncate(d);
        }
        SymSeries {
            poly: poly.with_nvars(nvars),
            nvars,
            maxdeg,
        }
    }

    pub fn one(nvars: usize, maxdeg: Option<u32>) -> Self {
        SymSeries::new(BetaPoly::one(nvars), nvars, maxdeg)
    }

    pub fn zero(nvars: usize, maxdeg: Option<u32>) -> Self {
        SymSeries::new(BetaPoly::zero(nvars), nvars, maxdeg)
    }

    pub fn poly(&self) -> &BetaPoly {
        &self.poly
    }

    pub fn into_poly(self) -> BetaPoly {
        self.poly
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn maxdeg(&self) -> Option<u32> {
        self.maxdeg
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_symmetric(&self) -> bool {
        self.poly.is_symmetric(self.nvars)
    }

    /// Same series known to a smaller degree.
    pub fn truncate(&self, maxdeg: u32) -> SymSeries {
        SymSeries::new(
            self.poly.clone(),
            self.nvars,
            min_deg(self.maxdeg, Some(maxdeg)),
        )
    }

    pub fn add(&self, other: &SymSeries) -> SymSeries {
        let d = min_deg(self.maxdeg, other.maxdeg);
        SymSeries::new(self.poly.add(&other.poly), self.nvars.max(other.nvars), d)
    }

    pub fn sub(&self, other: &SymSeries) -> SymSeries {
        let d = min_deg(self.maxdeg, other.maxdeg);
        SymSeries::new(self.poly.sub(&other.poly), self.nvars.max(other.nvars), d)
    }

    pub fn mul(&self, other: &SymSeries) -> SymSeries {
        let d = min_deg(self.maxdeg, other.maxdeg);
        let poly = match d {
            Some(d) => self.poly.mul_truncated(&other.poly, d),
            None => self.poly.mul(&other.poly),
        };
        SymSeries::new(poly, self.nvars.max(other.nvars), d)
    }

    pub fn scale(&self, c: &BetaScalar) -> SymSeries {
        SymSeries::new(self.poly.scale(c), self.nvars, self.maxdeg)
    }

    /// Agreement on every degree both sides know.
    pub fn agrees_with(&self, other: &SymSeries) -> bool {
        match min_deg(self.maxdeg, other.maxdeg) {
            Some(d) => self.poly.truncate(d) == other.poly.truncate(d),
            None => self.poly == other.poly,
        }
    }
}

impl Ring for SymSeries {
    fn zero() -> Self {
        SymSeries::zero(0, None)
    }
    fn one() -> Self {
        SymSeries::one(0, None)
    }
    fn add(&self, other: &Self) -> Self {
        SymSeries::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        SymSeries::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        SymSeries::mul(self, other)
    }
    fn is_zero(&self) -> bool {
        SymSeries::is_zero(self)
    }
}
