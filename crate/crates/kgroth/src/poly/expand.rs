use super::{BetaPoly, BetaScalar, Monomial};
use crate::error::{internal, Result};
use std::fmt::Debug;

/// A family whose elements are identified by their order-minimal monomial.
pub trait GradedBasis {
    type Index: Clone + Debug + PartialEq;

    /// The basis element whose minimal monomial is `m`, if there is one.
    fn lookup(&mut self, m: &Monomial) -> Result<Option<(Self::Index, BetaPoly)>>;
}

#[derive(Clone, Copy, Debug)]
pub struct ExpansionCap {
    pub max_steps: usize,
    /// Terms above this total degree are discarded on both sides.
    pub max_degree: Option<u32>,
}

impl ExpansionCap {
    pub fn degree(d: u32) -> Self {
        ExpansionCap {
            max_steps: 100_000,
            max_degree: Some(d),
        }
    }

    pub fn steps(n: usize) -> Self {
        ExpansionCap {
            max_steps: n,
            max_degree: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExpansionStatus {
    Complete,
    StepCapReached,
    NotInSpan(Monomial),
}

#[derive(Clone, Debug)]
pub struct Expansion<I> {
    pub terms: Vec<(I, BetaScalar)>,
    pub remainder: BetaPoly,
    pub status: ExpansionStatus,
}

impl<I> Expansion<I> {
    pub fn is_complete(&self) -> bool {
        self.status == ExpansionStatus::Complete && self.remainder.is_zero()
    }

    /// Every coefficient lies in `N[β]`.
    pub fn is_positive(&self) -> bool {
        self.terms
            .iter()
            .all(|(_, c)| c.is_canonical() && c.is_nonnegative())
    }
}

/// Greedy triangular elimination against the order-minimal monomial of the remainder.
pub fn expand_in_graded_basis<B: GradedBasis>(
    target: &BetaPoly,
    basis: &mut B,
    cap: ExpansionCap,
) -> Result<Expansion<B::Index>> {
    let clip = |p: &BetaPoly| match cap.max_degree {
        Some(d) => p.truncate(d),
        None => p.clone(),
    };
    let mut remainder = clip(target);
    let mut terms: Vec<(B::Index, BetaScalar)> = Vec::new();
    let mut steps = 0;
    loop {
        let (m, c) = match remainder.leading_min() {
            None => break,
            Some((m, c)) => (m.clone(), c.clone()),
        };
        if steps >= cap.max_steps {
            return Ok(Expansion {
                terms,
                remainder,
                status: ExpansionStatus::StepCapReached,
            });
        }
        steps += 1;
        let (index, element) = match basis.lookup(&m)? {
            Some(found) => found,
            None => {
                return Ok(Expansion {
                    terms,
                    remainder,
                    status: ExpansionStatus::NotInSpan(m),
                })
            }
        };
        let element = clip(&element);
        let lead = match element.coeff(&m).as_constant() {
            Some(l) if !num_traits::Zero::is_zero(&l) => l,
            _ => {
                return internal(format!(
                    "basis element {index:?} does not lead with a constant at {m:?}"
                ))
            }
        };
        let factor = c.scale(&lead.recip());
        remainder = remainder.sub(&element.scale(&factor));
        match terms.iter_mut().find(|(i, _)| *i == index) {
            Some((_, existing)) => existing.add_assign(&factor),
            None => terms.push((index, factor)),
        }
    }
    terms.retain(|(_, c)| !c.is_zero());
    Ok(Expansion {
        terms,
        remainder,
        status: ExpansionStatus::Complete,
    })
}
