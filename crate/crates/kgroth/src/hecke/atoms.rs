use super::{step, ModuleState};
use crate::error::{internal, invalid, Result};
use crate::perm::alpha_fpf;
use crate::perm::{Involution, Permutation};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

/// Largest `n` for which atom sets are cross-checked against the full table over `S_n`.
pub const TABLE_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomSets {
    /// `{w : N_Θ U_w = N_z}`.
    pub hecke_atoms: BTreeSet<Permutation>,
    /// The elements of `hecke_atoms` of length `ℓ_fpf(z)`.
    pub atoms: BTreeSet<Permutation>,
}

/// `N_Θ U_w` for every `w ∈ S_n`.
pub struct AtomTable {
    n: usize,
    states: HashMap<Permutation, ModuleState>,
}

impl AtomTable {
    /// Fills the table by increasing length, using `U_w = U_{w s_i} U_i` for a descent `i` of `w`.
    pub fn build(n: usize) -> Result<AtomTable> {
        if n % 2 == 1 {
            return invalid(format!("no fixed-point-free involutions in S_{n}"));
        }
        let mut perms = Permutation::all(n);
        perms.sort_by_key(|w| w.length());
        let mut states = HashMap::with_capacity(perms.len());
        for w in perms {
            let state = match w.descents().first() {
                None => ModuleState::Inv(Involution::theta(n)),
                Some(&i) => match &states[&w.times_s(i)] {
                    ModuleState::Zero => ModuleState::Zero,
                    ModuleState::Inv(y) => step(y, i),
                },
            };
            states.insert(w, state);
        }
        Ok(AtomTable { n, states })
    }

    /// Shared table for `S_n`, built on first use.
    pub fn shared(n: usize) -> Result<Arc<AtomTable>> {
        static TABLES: OnceLock<Mutex<HashMap<usize, Arc<AtomTable>>>> = OnceLock::new();
        let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(t) = tables.lock().expect("atom table lock").get(&n) {
            return Ok(t.clone());
        }
        let t = Arc::new(AtomTable::build(n)?);
        tables.lock().expect("atom table lock").insert(n, t.clone());
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn state(&self, w: &Permutation) -> Option<&ModuleState> {
        self.states.get(w)
    }

    pub fn hecke_atoms(&self, z: &Involution) -> BTreeSet<Permutation> {
        let target = ModuleState::Inv(z.clone());
        self.states
            .iter()
            .filter(|(_, s)| **s == target)
            .map(|(w, _)| w.clone())
            .collect()
    }

    /// Groups every `w` with `N_Θ U_w ≠ 0` by its image.
    pub fn classes(&self) -> HashMap<Involution, BTreeSet<Permutation>> {
        let mut out: HashMap<Involution, BTreeSet<Permutation>> = HashMap::new();
        for (w, s) in &self.states {
            if let ModuleState::Inv(z) = s {
                out.entry(z.clone()).or_default().insert(w.clone());
            }
        }
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Window {
    Adbc,
    Bcad,
    Bdac,
}

fn classify_window(v: &[usize]) -> Option<Window> {
    let mut s = v.to_vec();
    s.sort_unstable();
    let (a, b, c, d) = (s[0], s[1], s[2], s[3]);
    if v == [a, d, b, c] {
        Some(Window::Adbc)
    } else if v == [b, c, a, d] {
        Some(Window::Bcad)
    } else if v == [b, d, a, c] {
        Some(Window::Bdac)
    } else {
        None
    }
}

fn rewrite(v: &[usize], to: Window) -> [usize; 4] {
    let mut s = v.to_vec();
    s.sort_unstable();
    let (a, b, c, d) = (s[0], s[1], s[2], s[3]);
    match to {
        Window::Adbc => [a, d, b, c],
        Window::Bcad => [b, c, a, d],
        Window::Bdac => [b, d, a, c],
    }
}

/// Breadth-first closure of `α_fpf(z)^{-1}` under window moves at even offsets.
fn closure(z: &Involution, moves: impl Fn(Window) -> Vec<Window>) -> Result<BTreeSet<Permutation>> {
    let start = alpha_fpf(z)?.inverse().word().to_vec();
    let n = start.len();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for p in (0..n.saturating_sub(3)).step_by(2) {
            let Some(kind) = classify_window(&v[p..p + 4]) else {
                continue;
            };
            for to in moves(kind) {
                let mut u = v.clone();
                u[p..p + 4].copy_from_slice(&rewrite(&v[p..p + 4], to));
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
    }
    seen.into_iter()
        .map(|v| Permutation::new(v).map(|p| p.inverse()))
        .collect()
}

/// `ℬ_fpf(z)` as the `≈_FPF` class of `α_fpf(z)`.
pub fn hecke_atoms_by_closure(z: &Involution) -> Result<BTreeSet<Permutation>> {
    use Window::*;
    closure(z, |k| {
        [Adbc, Bcad, Bdac].into_iter().filter(|&t| t != k).collect()
    })
}

/// `𝒜_fpf(z)` as the upper set of `α_fpf(z)` under `≺_FPF` (only `adbc → bcad`).
pub fn atoms_by_closure(z: &Involution) -> Result<BTreeSet<Permutation>> {
    closure(z, |k| {
        if k == Window::Adbc {
            vec![Window::Bcad]
        } else {
            vec![]
        }
    })
}

/// Hecke atoms and atoms of `z`, cross-checked between the module table (for
/// `n ≤ TABLE_LIMIT`) and the relation closures.
pub fn hecke_atoms(z: &Involution) -> Result<AtomSets> {
    let closed = hecke_atoms_by_closure(z)?;
    if z.size() <= TABLE_LIMIT {
        let table = AtomTable::shared(z.size())?;
        let direct = table.hecke_atoms(z);
        if direct != closed {
            let only_table: Vec<_> = direct.difference(&closed).collect();
            let only_closure: Vec<_> = closed.difference(&direct).collect();
            return internal(format!(
                "Hecke atoms of {z} disagree: table only {only_table:?}, closure only {only_closure:?}"
            ));
        }
    }
    let base = z.fpf_length()?;
    let atoms: BTreeSet<Permutation> = closed
        .iter()
        .filter(|w| w.length() == base)
        .cloned()
        .collect();
    let by_order = atoms_by_closure(z)?;
    if atoms != by_order {
        return internal(format!(
            "atoms of {z} disagree: by length {atoms:?}, by order {by_order:?}"
        ));
    }
    if let Some(w) = closed.iter().find(|w| w.length() < base) {
        return internal(format!("Hecke atom {w} of {z} is shorter than ℓ_fpf"));
    }
    Ok(AtomSets {
        hecke_atoms: closed,
        atoms,
    })
}
