use super::{BetaPoly, Monomial};
use crate::error::{internal, Result};
use std::collections::BTreeMap;

/// `∂_i f = (f − s_i f)/(x_i − x_{i+1})`, by synthetic division in `x_i`.
pub fn divided_difference(f: &BetaPoly, i: usize) -> Result<BetaPoly> {
    let h = f.sub(&f.swap_vars(i));
    let nvars = f.nvars().max(i + 1);
    if h.is_zero() {
        return Ok(BetaPoly::zero(nvars));
    }
    // Group h by the exponent of x_i: h = Σ_e a_e x_i^e.
    let mut by_exp: BTreeMap<u32, BetaPoly> = BTreeMap::new();
    for (m, c) in h.terms() {
        let e = m.exp(i);
        by_exp
            .entry(e)
            .or_insert_with(|| BetaPoly::zero(nvars))
            .add_term(m.with_exp(i, 0), c);
    }
    let top = *by_exp.keys().next_back().unwrap();
    let shift = Monomial::var(i + 1, 1);
    // Horner: q_{d-1} = a_d, q_{k-1} = a_k + x_{i+1} q_k; remainder a_0 + x_{i+1} q_0.
    let mut quotient = BetaPoly::zero(nvars);
    let mut q = BetaPoly::zero(nvars);
    for e in (0..=top).rev() {
        let a = by_exp.remove(&e).unwrap_or_else(|| BetaPoly::zero(nvars));
        let next = a.add(&q.mul_monomial(&shift));
        if e == 0 {
            if !next.is_zero() {
                return internal(format!("division by x_{} - x_{} is not exact", i, i + 1));
            }
            break;
        }
        quotient.add_assign(&next.mul_monomial(&Monomial::var(i, e - 1)));
        q = next;
    }
    Ok(quotient.with_nvars(nvars))
}

/// `∂_i^{(β)} f = ∂_i((1 + βx_{i+1}) f)`.
pub fn beta_divided_difference(f: &BetaPoly, i: usize) -> Result<BetaPoly> {
    let g = f.add(&f.mul_monomial(&Monomial::var(i + 1, 1)).shift_beta(1));
    divided_difference(&g, i)
}
