use super::{StrictPartition, SymSeries};
use crate::error::Result;
use crate::poly::{BetaScalar, Rat};
use crate::raising::{
    apply_one_minus_beta_t, apply_r, binom, evaluate, pfaffian, CSeries, RaisingExpr, SkewMatrix,
};
use std::collections::HashMap;

/// `R^{(1,2)}(1−βT^{(1)})^{1−a}(1−βT^{(2)})^{−b} c_a^{(1)} c_b^{(2)}`.
pub fn two_row_operator(a: u32, b: u32, cap: u32) -> Result<RaisingExpr> {
    let mut e = RaisingExpr::monomial(&[(1, a), (2, b)])?;
    e = apply_one_minus_beta_t(&e, 2, -(b as i32), Some(cap))?;
    e = apply_one_minus_beta_t(&e, 1, 1 - a as i32, Some(cap))?;
    Ok(apply_r(&e, 1, 2, cap))
}

/// `GQ_{(a,b)}(x_1..x_k)` from the two-row operator formula with `c(u) = ∏_{j≤k}(1+x_j u)/(1+x̄_j u)`.
pub fn gq_two_row(a: u32, b: u32, k: usize, maxdeg: u32) -> Result<SymSeries> {
    let e = two_row_operator(a, b, maxdeg)?;
    let series = [CSeries::stable(k), CSeries::stable(k)];
    Ok(SymSeries::new(
        evaluate(&e, &series, maxdeg)?,
        k,
        Some(maxdeg),
    ))
}

/// `GQ_λ` as the Pfaffian of two-row functions:
/// entry `(i, j)` is `Σ_{p,q} β^{p+q} C(i+1−r, p) C(j−r, q) GQ_{(λ_i+p, λ_j+q)}`, with `λ`
/// padded by a zero to even length `r`.
pub fn gq_pfaffian(lambda: &StrictPartition, k: usize, maxdeg: u32) -> Result<SymSeries> {
    let mut parts: Vec<u32> = lambda.parts().iter().map(|&p| p as u32).collect();
    if parts.len() % 2 == 1 {
        parts.push(0);
    }
    let r = parts.len();
    if r == 0 {
        return Ok(SymSeries::one(k, Some(maxdeg)));
    }
    let mut memo: HashMap<(u32, u32), SymSeries> = HashMap::new();
    let mut entries = Vec::with_capacity(r * (r - 1) / 2);
    for i in 1..=r {
        for j in i + 1..=r {
            let (li, lj) = (parts[i - 1], parts[j - 1]);
            let mut entry = SymSeries::zero(k, Some(maxdeg));
            let spare = maxdeg.saturating_sub(li + lj);
            if li + lj <= maxdeg {
                for p in 0..=spare {
                    for q in 0..=spare - p {
                        let c = binom(i as i64 + 1 - r as i64, p as i64)
                            * binom(j as i64 - r as i64, q as i64);
                        if num_traits::Zero::is_zero(&c) {
                            continue;
                        }
                        let key = (li + p, lj + q);
                        if let std::collections::hash_map::Entry::Vacant(e) = memo.entry(key) {
                            e.insert(gq_two_row(key.0, key.1, k, maxdeg)?);
                        }
                        let scalar = BetaScalar::monomial(Rat::from_integer(c), (p + q) as i32);
                        entry = entry.add(&memo[&key].scale(&scalar));
                    }
                }
            }
            entries.push(entry);
        }
    }
    let mut it = entries.into_iter();
    let m = SkewMatrix::from_fn(r, |_, _| it.next().expect("one entry per pair"));
    let pf = pfaffian(&m)?;
    Ok(SymSeries::new(pf.into_poly(), k, Some(maxdeg)))
}
