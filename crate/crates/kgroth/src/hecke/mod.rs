//! The right 0-Hecke module on fixed-point-free involutions and symplectic
//! Grothendieck polynomials.

mod atoms;

pub use atoms::{atoms_by_closure, hecke_atoms, hecke_atoms_by_closure, AtomSets, AtomTable};

use crate::error::{invalid, Result};
use crate::perm::Involution;
use crate::perm::{diagrams, sp_dominant_shape};
use crate::poly::{beta_divided_difference, oplus_vars, BetaPoly};
use crate::typea::pipedream::{enumerate, reading_cells, BruhatCeiling, HeckeState};
use crate::typea::{GrothCache, PipeDreamSum};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

/// `N_z` for an fpf involution `z`, or the zero element of the module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModuleState {
    Zero,
    Inv(Involution),
}

impl ModuleState {
    pub fn involution(&self) -> Option<&Involution> {
        match self {
            ModuleState::Zero => None,
            ModuleState::Inv(z) => Some(z),
        }
    }
}

impl fmt::Display for ModuleState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleState::Zero => write!(f, "0"),
            ModuleState::Inv(z) => write!(f, "{z}"),
        }
    }
}

/// `N_z U_i`.
pub fn n_action(z: &Involution, i: usize) -> Result<ModuleState> {
    if !z.is_fpf() {
        return invalid(format!("{z} has fixed points"));
    }
    if i == 0 || i >= z.size() {
        return invalid(format!(
            "U_{i} does not act on involutions in S_{}",
            z.size()
        ));
    }
    Ok(step(z, i))
}

/// `n_action` without validation; `z` is fpf and `1 ≤ i < n`.
fn step(z: &Involution, i: usize) -> ModuleState {
    if z.at(i) < z.at(i + 1) {
        ModuleState::Inv(z.conj_s(i))
    } else if z.at(i) == i + 1 {
        ModuleState::Zero
    } else {
        ModuleState::Inv(z.clone())
    }
}

/// `𝔊^Sp_{n⋯21} = ∏_{1 ≤ i < j ≤ n−i} (x_i ⊕ x_j)`.
fn sp_top(n: usize) -> BetaPoly {
    let mut p = BetaPoly::one(n);
    for i in 1..=n {
        for j in i + 1..=n.saturating_sub(i) {
            p = p.mul(&oplus_vars(i, j));
        }
    }
    p.with_nvars(n)
}

/// Memo table for the symplectic divided-difference recursion.
#[derive(Default)]
pub struct SpGrothCache {
    memo: HashMap<Involution, BetaPoly>,
}

impl SpGrothCache {
    pub fn new() -> Self {
        SpGrothCache::default()
    }

    pub fn get(&mut self, z: &Involution) -> Result<BetaPoly> {
        if !z.is_fpf() {
            return invalid(format!("{z} has fixed points"));
        }
        if let Some(p) = self.memo.get(z) {
            return Ok(p.clone());
        }
        let n = z.size();
        let p = match (1..n).find(|&i| z.at(i) < z.at(i + 1)) {
            None => sp_top(n),
            Some(i) => {
                let up = self.get(&z.conj_s(i))?;
                beta_divided_difference(&up, i)?.with_nvars(n)
            }
        };
        self.memo.insert(z.clone(), p.clone());
        Ok(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpRoute {
    Dd,
    Atoms,
    PipeDream,
    Dominant,
}

impl FromStr for SpRoute {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dd" => Ok(SpRoute::Dd),
            "atoms" => Ok(SpRoute::Atoms),
            "pipedream" => Ok(SpRoute::PipeDream),
            "dominant" => Ok(SpRoute::Dominant),
            _ => invalid(format!(
                "unknown route {s:?} (dd, atoms, pipedream, dominant)"
            )),
        }
    }
}

/// `𝔊^Sp_z` by the requested route.
pub fn sp_groth(z: &Involution, route: SpRoute) -> Result<BetaPoly> {
    if !z.is_fpf() {
        return invalid(format!("{z} has fixed points"));
    }
    let n = z.size();
    match route {
        SpRoute::Dd => SpGrothCache::new().get(z),
        SpRoute::Atoms => {
            let sets = hecke_atoms(z)?;
            let base = z.fpf_length()? as i32;
            let mut cache = GrothCache::new();
            let mut out = BetaPoly::zero(n);
            for w in &sets.hecke_atoms {
                out.add_assign(&cache.get(w)?.shift_beta(w.length() as i32 - base));
            }
            Ok(out)
        }
        SpRoute::PipeDream => Ok(sp_pipe_dream_sum(z, n.max(1), None, false)
            .poly
            .with_nvars(n)),
        SpRoute::Dominant => sp_dominant(z),
    }
}

/// `∏_{(i,j) ∈ D^Sp(z)} (x_i ⊕ x_j)` for Sp-dominant `z`.
pub fn sp_dominant(z: &Involution) -> Result<BetaPoly> {
    if sp_dominant_shape(z).is_none() {
        return invalid(format!("{z} is not Sp-dominant"));
    }
    let (_, _, sp) = diagrams(z);
    let mut p = BetaPoly::one(z.size());
    for (i, j) in sp.pairs() {
        p = p.mul(&oplus_vars(i, j));
    }
    Ok(p.with_nvars(z.size()))
}

/// `∂_i^{(β)} 𝔊^Sp_z` equals `𝔊^Sp_{s_i z s_i}` when `i+1 ≠ z(i) > z(i+1) ≠ i`, and `−β𝔊^Sp_z` otherwise.
pub fn sp_divided_difference_check(
    cache: &mut SpGrothCache,
    z: &Involution,
    i: usize,
) -> Result<bool> {
    if i == 0 || i >= z.size() {
        return invalid(format!(
            "∂_{i} does not act on polynomials in {} variables",
            z.size()
        ));
    }
    let g = cache.get(z)?;
    let lhs = beta_divided_difference(&g, i)?;
    let rhs = if z.at(i) > z.at(i + 1) && z.at(i) != i + 1 {
        cache.get(&z.conj_s(i))?
    } else {
        g.shift_beta(1).neg()
    };
    Ok(lhs == rhs)
}

/// Running module element `N_Θ U_{i_1} ⋯ U_{i_r}`. States only move up in Bruhat
/// order, so anything not below the target is dropped.
#[derive(Clone, Debug)]
pub struct ModuleWalk<'a> {
    state: Involution,
    target: &'a Involution,
    ceiling: &'a BruhatCeiling,
}

impl HeckeState for ModuleWalk<'_> {
    fn apply(&self, letter: usize) -> Option<Self> {
        if letter >= self.state.size() {
            return None;
        }
        match step(&self.state, letter) {
            ModuleState::Zero => None,
            ModuleState::Inv(y) if y == self.state => Some(self.clone()),
            ModuleState::Inv(y) => {
                if !self.ceiling.admits(y.perm().word()) {
                    return None;
                }
                Some(ModuleWalk {
                    state: y,
                    target: self.target,
                    ceiling: self.ceiling,
                })
            }
        }
    }

    fn accepts(&self) -> bool {
        self.state == *self.target
    }
}

/// `Σ β^{|S|−ℓ_fpf(z)} x^S` over symplectic pipe dreams in rows `1..=rows`, `|S| ≤ cap`.
pub fn sp_pipe_dream_sum(
    z: &Involution,
    rows: usize,
    cap: Option<usize>,
    lookahead: bool,
) -> PipeDreamSum {
    let n = z.size();
    let ceiling = BruhatCeiling::new(z.perm().word());
    let start = ModuleWalk {
        state: Involution::theta(n),
        target: z,
        ceiling: &ceiling,
    };
    let cells = reading_cells(rows, n.saturating_sub(1));
    let found = enumerate(start, rows, &cells, cap, lookahead);
    let base = z.fpf_length().unwrap_or(0) as i64;
    PipeDreamSum {
        poly: BetaPoly::from_weighted_counts(rows, base, found.counts),
        truncated: found.truncated,
    }
}
