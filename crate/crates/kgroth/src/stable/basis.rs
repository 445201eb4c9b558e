use super::{gp, gq, StrictPartition, SymSeries};
use crate::error::{invalid, Error, Result};
use crate::poly::{
    expand_in_graded_basis, BetaPoly, BetaScalar, ExpansionCap, ExpansionStatus, GradedBasis,
    Monomial,
};
use crate::typea::{partition_from_reversed, StableGBasis};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    G,
    GP,
    GQ,
}

impl FromStr for BasisKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G" | "g" => Ok(BasisKind::G),
            "GP" | "gp" => Ok(BasisKind::GP),
            "GQ" | "gq" => Ok(BasisKind::GQ),
            _ => invalid(format!("unknown basis {s:?} (G, GP, GQ)")),
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BasisKind::G => "G",
            BasisKind::GP => "GP",
            BasisKind::GQ => "GQ",
        };
        f.write_str(s)
    }
}

/// `{GP_λ}` or `{GQ_λ}` in `k` variables; both lead with `x^{rev λ}`.
pub struct ShiftedBasis {
    nvars: usize,
    maxdeg: u32,
    q: bool,
    memo: HashMap<Vec<usize>, BetaPoly>,
}

impl ShiftedBasis {
    pub fn gp(nvars: usize, maxdeg: u32) -> Self {
        ShiftedBasis {
            nvars,
            maxdeg,
            q: false,
            memo: HashMap::new(),
        }
    }

    pub fn gq(nvars: usize, maxdeg: u32) -> Self {
        ShiftedBasis {
            nvars,
            maxdeg,
            q: true,
            memo: HashMap::new(),
        }
    }
}

impl GradedBasis for ShiftedBasis {
    type Index = Vec<usize>;

    fn lookup(&mut self, m: &Monomial) -> Result<Option<(Vec<usize>, BetaPoly)>> {
        let Some(parts) = partition_from_reversed(m.exps(), self.nvars, true) else {
            return Ok(None);
        };
        if !self.memo.contains_key(&parts) {
            let lambda = StrictPartition::new(parts.clone())?;
            let s = if self.q {
                gq(&lambda, self.nvars, self.maxdeg)
            } else {
                gp(&lambda, self.nvars, self.maxdeg)
            };
            self.memo.insert(parts.clone(), s.into_poly());
        }
        Ok(Some((parts.clone(), self.memo[&parts].clone())))
    }
}

/// Outcome of a bounded-degree expansion. Nothing here is asserted; callers decide.
#[derive(Clone, Debug)]
pub struct PositivityReport {
    pub basis: BasisKind,
    pub maxdeg: u32,
    pub terms: Vec<(Vec<usize>, BetaScalar)>,
    pub status: ExpansionStatus,
    /// Indices whose coefficient is not in `N[β]`.
    pub outside_nonnegative: Vec<Vec<usize>>,
    /// Some term sits at the degree cap, so the expansion may continue past it.
    pub reaches_cap: bool,
}

impl PositivityReport {
    pub fn is_complete(&self) -> bool {
        self.status == ExpansionStatus::Complete
    }

    pub fn is_positive(&self) -> bool {
        self.outside_nonnegative.is_empty()
    }
}

/// Expands `target` in `{G_λ}`, `{GP_λ}` or `{GQ_λ}` up to degree `maxdeg`. Needs `k ≥ maxdeg`
/// variables, since that many determine a symmetric function of degree `≤ maxdeg`.
pub fn positivity_report(
    target: &SymSeries,
    basis: BasisKind,
    maxdeg: u32,
) -> Result<PositivityReport> {
    let k = target.nvars();
    if k < maxdeg as usize {
        return invalid(format!(
            "{k} variables cannot separate symmetric functions of degree {maxdeg}"
        ));
    }
    if target.maxdeg().is_some_and(|d| d < maxdeg) {
        return invalid(format!(
            "target is only known to degree {}",
            target.maxdeg().unwrap()
        ));
    }
    if !target.truncate(maxdeg).is_symmetric() {
        return invalid("target is not symmetric");
    }
    let cap = ExpansionCap::degree(maxdeg);
    let exp = match basis {
        BasisKind::G => {
            expand_in_graded_basis(target.poly(), &mut StableGBasis::new(k, maxdeg), cap)?
        }
        BasisKind::GP => {
            expand_in_graded_basis(target.poly(), &mut ShiftedBasis::gp(k, maxdeg), cap)?
        }
        BasisKind::GQ => {
            expand_in_graded_basis(target.poly(), &mut ShiftedBasis::gq(k, maxdeg), cap)?
        }
    };
    let outside_nonnegative = exp
        .terms
        .iter()
        .filter(|(_, c)| !(c.is_canonical() && c.is_nonnegative()))
        .map(|(i, _)| i.clone())
        .collect();
    let reaches_cap = exp
        .terms
        .iter()
        .any(|(i, _)| i.iter().sum::<usize>() as u32 == maxdeg);
    Ok(PositivityReport {
        basis,
        maxdeg,
        terms: exp.terms,
        status: exp.status,
        outside_nonnegative,
        reaches_cap,
    })
}
