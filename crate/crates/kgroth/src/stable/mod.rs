//! Stable symmetric functions: `G_λ`, `GP_λ`, `GQ_λ` and the stable limits of the
//! symplectic and orthogonal families.

mod basis;
mod limits;
mod series;
pub mod shifted;
mod two_row;

pub use basis::{positivity_report, BasisKind, PositivityReport, ShiftedBasis};
pub use limits::{
    gp_sp_stable, gq_o_stable_vexillary, o_limit_probe, LimitProbe, OStable, SpStableRoute,
};
pub use series::SymSeries;
pub use shifted::{gp, gq, shifted_set_valued_tableaux};
pub use two_row::{gq_pfaffian, gq_two_row, two_row_operator};

use crate::error::{invalid, Result};
use std::fmt;
use std::str::FromStr;

/// `λ_1 > λ_2 > ⋯ > λ_k > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StrictPartition {
    parts: Vec<usize>,
}

impl StrictPartition {
    /// Trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] <= w[1]) {
            return invalid(format!("{parts:?} is not a strict partition"));
        }
        Ok(StrictPartition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `(n, n−2, n−4, …)` down to the last positive part.
    pub fn staircase_by_two(n: usize) -> Self {
        StrictPartition {
            parts: (0..)
                .map(|i| n as i64 - 2 * i)
                .take_while(|&p| p > 0)
                .map(|p| p as usize)
                .collect(),
        }
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for StrictPartition {
    type Err = crate::Error;

    /// Comma-separated parts, e.g. `3,1`; the empty string is `∅`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return StrictPartition::new(Vec::new());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| crate::Error::Invalid(format!("bad part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        StrictPartition::new(parts)
    }
}
