use super::{gq, StrictPartition, SymSeries};
use crate::error::{invalid, Error, Result};
use crate::hecke::{hecke_atoms, sp_pipe_dream_sum};
use crate::ortho::{o_groth, OEngine, ORoute, PfaffianPlan};
use crate::perm::{classify, o_code_and_shape, Involution};
use crate::poly::BetaPoly;
use crate::raising::CSeries;
use crate::typea::stable_g;
use std::str::FromStr;

/// Extra pad counts tried past the first before a limit is declared unstable.
const PAD_ATTEMPTS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpStableRoute {
    /// `Σ_{w ∈ ℬ_fpf(z)} β^{ℓ(w)−ℓ_fpf(z)} G_w`.
    Atoms,
    /// `𝔊^Sp_{(21)^m × z}(x_1..x_k)` at two consecutive pad counts.
    Limit,
}

impl FromStr for SpStableRoute {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "atoms" => Ok(SpStableRoute::Atoms),
            "limit" => Ok(SpStableRoute::Limit),
            _ => invalid(format!("unknown route {s:?} (atoms, limit)")),
        }
    }
}

/// `GP^Sp_z(x_1..x_k)` truncated at `maxdeg`.
pub fn gp_sp_stable(
    z: &Involution,
    k: usize,
    maxdeg: u32,
    route: SpStableRoute,
) -> Result<SymSeries> {
    if !z.is_fpf() {
        return invalid(format!("{z} has fixed points"));
    }
    match route {
        SpStableRoute::Atoms => {
            let base = z.fpf_length()? as i32;
            let mut out = BetaPoly::zero(k);
            for w in &hecke_atoms(z)?.hecke_atoms {
                let g = stable_g(w, k, Some(maxdeg))?;
                out.add_assign(&g.poly().shift_beta(w.length() as i32 - base));
            }
            Ok(SymSeries::new(out, k, Some(maxdeg)))
        }
        SpStableRoute::Limit => {
            let at = |m: usize| -> Result<BetaPoly> {
                let y = z.fpf_pad(m)?;
                Ok(sp_pipe_dream_sum(&y, k, Some(maxdeg as usize), false)
                    .poly
                    .truncate(maxdeg))
            };
            let start = k.max(1);
            let mut prev = at(start)?;
            for m in start + 1..=start + PAD_ATTEMPTS {
                let next = at(m)?;
                if next == prev {
                    return Ok(SymSeries::new(next, k, Some(maxdeg)));
                }
                prev = next;
            }
            Err(Error::Uncomputable(format!(
                "𝔊^Sp of (21)^m × {z} did not stabilize by m = {}",
                start + PAD_ATTEMPTS
            )))
        }
    }
}

/// The stable orthogonal Pfaffian of a vexillary `z` and its checks.
#[derive(Clone, Debug)]
pub struct OStable {
    pub series: SymSeries,
    pub shape: StrictPartition,
    pub symmetric: bool,
    /// Equality with the tableau sum `GQ_{λ^O(z)}` at the same truncation.
    pub matches_gq: bool,
}

/// `GQ^O_z(x_1..x_k)` from the Pfaffian formula with every `c^{(i)}` replaced by
/// `∏_{j≤k}(1+x_j u)/(1+x̄_j u)`, the limit of `1^m × z`.
pub fn gq_o_stable_vexillary(z: &Involution, k: usize, maxdeg: u32) -> Result<OStable> {
    if !classify(z)?.vexillary {
        return invalid(format!("{z} is not vexillary"));
    }
    let mut plan = PfaffianPlan::new(z)?;
    let len = plan.shape.len();
    for s in plan.series.iter_mut().take(len) {
        *s = CSeries::stable(k);
    }
    let poly = plan.evaluate_e1(maxdeg, Some(maxdeg))?;
    let series = SymSeries::new(poly, k, Some(maxdeg));
    let (_, shape) = o_code_and_shape(z);
    let shape = StrictPartition::new(shape)?;
    let symmetric = series.is_symmetric();
    let matches_gq = series == gq(&shape, k, maxdeg);
    Ok(OStable {
        series,
        shape,
        symmetric,
        matches_gq,
    })
}

/// `𝔊^O_{1^m × z}(x_1..x_k)` at two consecutive pad counts, through whichever route applies.
#[derive(Clone, Debug)]
pub struct LimitProbe {
    pub pad: usize,
    pub at_pad: BetaPoly,
    pub at_next: BetaPoly,
}

impl LimitProbe {
    pub fn agrees(&self) -> bool {
        self.at_pad == self.at_next
    }
}

pub fn o_limit_probe(z: &Involution, k: usize, maxdeg: u32, pad: usize) -> Result<LimitProbe> {
    let at = |m: usize| -> Result<BetaPoly> {
        let p = o_groth(&z.shift_pad(m), ORoute::Auto, OEngine::E1, Some(maxdeg))?;
        Ok(p.restrict_vars(k).truncate(maxdeg).with_nvars(k))
    };
    Ok(LimitProbe {
        pad,
        at_pad: at(pad)?,
        at_next: at(pad + 1)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(s: &str) -> Involution {
        Involution::parse(s).unwrap()
    }

    #[test]
    fn theta_is_one() {
        for route in [SpStableRoute::Atoms, SpStableRoute::Limit] {
            let g = gp_sp_stable(&inv("21"), 2, 4, route).unwrap();
            assert_eq!(*g.poly(), BetaPoly::one(2));
        }
    }

    #[test]
    fn routes_agree_on_3412() {
        let a = gp_sp_stable(&inv("3412"), 2, 5, SpStableRoute::Atoms).unwrap();
        let b = gp_sp_stable(&inv("3412"), 2, 5, SpStableRoute::Limit).unwrap();
        assert_eq!(a, b);
        assert!(a.is_symmetric());
    }

    #[test]
    fn one_transposition() {
        let o = gq_o_stable_vexillary(&inv("21"), 2, 4).unwrap();
        assert_eq!(o.shape.parts(), &[1]);
        assert!(o.symmetric && o.matches_gq, "{:?}", o.series);
    }

    #[test]
    fn finite_limit_matches_stable_pfaffian() {
        let o = gq_o_stable_vexillary(&inv("21"), 2, 4).unwrap();
        let probe = o_limit_probe(&inv("21"), 2, 4, 3).unwrap();
        assert!(probe.agrees());
        assert_eq!(probe.at_pad, *o.series.poly());
    }
}
