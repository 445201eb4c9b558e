use super::{StrictPartition, SymSeries};
use crate::poly::BetaPoly;
use crate::typea::tableau::{merge_counts, subsets_in_range};
use rayon::prelude::*;
use std::collections::HashMap;

/// Marked letters: `i′ = 2i − 1`, `i = 2i`, so integer order is the alphabet order.
pub fn letter_var(letter: u32) -> usize {
    letter.div_ceil(2) as usize
}

pub fn is_primed(letter: u32) -> bool {
    letter % 2 == 1
}

/// Cells `(r, c)` of the shifted diagram, 0-based with `c ≥ r`, row-major.
pub fn shifted_cells(parts: &[usize]) -> Vec<(usize, usize)> {
    let mut cells = Vec::new();
    for (r, &len) in parts.iter().enumerate() {
        for c in r..r + len {
            cells.push((r, c));
        }
    }
    cells
}

struct ShiftedFiller<'a> {
    cells: &'a [(usize, usize)],
    index: HashMap<(usize, usize), usize>,
    k: u32,
    size_cap: usize,
    /// Diagonal cells take unprimed letters only.
    p_mode: bool,
}

impl ShiftedFiller<'_> {
    fn lower_bound(&self, idx: usize, fill: &[Vec<u32>]) -> u32 {
        let (r, c) = self.cells[idx];
        let mut lo = 1;
        if c > r {
            // A repeated letter along a row must be unprimed.
            let m = *fill[self.index[&(r, c - 1)]].last().unwrap();
            lo = lo.max(if is_primed(m) { m + 1 } else { m });
        }
        if r > 0 {
            // Down a column only primed letters may repeat.
            let m = *fill[self.index[&(r - 1, c)]].last().unwrap();
            lo = lo.max(if is_primed(m) { m } else { m + 1 });
        }
        lo
    }

    fn choices(&self, idx: usize, lo: u32, budget: usize) -> Vec<Vec<u32>> {
        let (r, c) = self.cells[idx];
        let mut sets = subsets_in_range(lo, 2 * self.k, budget);
        if self.p_mode && r == c {
            sets.retain(|s| s.iter().all(|&v| !is_primed(v)));
        }
        sets
    }

    fn run(
        &self,
        idx: usize,
        size: usize,
        fill: &mut Vec<Vec<u32>>,
        exps: &mut [u32],
        acc: &mut HashMap<Vec<u32>, i64>,
    ) {
        if idx == self.cells.len() {
            *acc.entry(exps.to_vec()).or_insert(0) += 1;
            return;
        }
        let budget = self
            .size_cap
            .saturating_sub(size + self.cells.len() - idx - 1);
        for set in self.choices(idx, self.lower_bound(idx, fill), budget) {
            for &v in &set {
                exps[letter_var(v) - 1] += 1;
            }
            let len = set.len();
            fill.push(set);
            self.run(idx + 1, size + len, fill, exps, acc);
            let set = fill.pop().unwrap();
            for &v in &set {
                exps[letter_var(v) - 1] -= 1;
            }
        }
    }
}

/// Exponent-vector counts of shifted set-valued tableaux of shape `λ` with letters up to `k`
/// and at most `size_cap` entries. `p_mode` forbids primes on the diagonal.
pub fn shifted_set_valued_tableaux(
    parts: &[usize],
    k: usize,
    size_cap: usize,
    p_mode: bool,
) -> HashMap<Vec<u32>, i64> {
    let cells = shifted_cells(parts);
    if cells.is_empty() {
        return HashMap::from([(vec![0; k], 1)]);
    }
    let index = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let filler = ShiftedFiller {
        cells: &cells,
        index,
        k: k as u32,
        size_cap,
        p_mode,
    };
    let budget = size_cap.saturating_sub(cells.len() - 1);
    filler
        .choices(0, 1, budget)
        .into_par_iter()
        .map(|first| {
            let mut acc = HashMap::new();
            let mut exps = vec![0u32; k];
            for &v in &first {
                exps[letter_var(v) - 1] += 1;
            }
            let size = first.len();
            let mut fill = vec![first];
            filler.run(1, size, &mut fill, &mut exps, &mut acc);
            acc
        })
        .reduce(HashMap::new, merge_counts)
}

fn tableau_series(
    lambda: &StrictPartition,
    k: usize,
    maxdeg: Option<u32>,
    p_mode: bool,
) -> SymSeries {
    let parts = lambda.parts();
    if parts.len() > k {
        return SymSeries::zero(k, maxdeg);
    }
    let cap = maxdeg.map_or(usize::MAX, |d| d as usize);
    let counts = shifted_set_valued_tableaux(parts, k, cap, p_mode);
    SymSeries::new(
        BetaPoly::from_weighted_counts(k, lambda.size() as i64, counts),
        k,
        maxdeg,
    )
}

/// `GP_λ(x_1..x_k)`, truncated at `maxdeg`. Without a cap the sum is infinite once `λ ≠ ∅`,
/// so `maxdeg` is required.
pub fn gp(lambda: &StrictPartition, k: usize, maxdeg: u32) -> SymSeries {
    tableau_series(lambda, k, Some(maxdeg), true)
}

/// `GQ_λ(x_1..x_k)`, truncated at `maxdeg`.
pub fn gq(lambda: &StrictPartition, k: usize, maxdeg: u32) -> SymSeries {
    tableau_series(lambda, k, Some(maxdeg), false)
}
