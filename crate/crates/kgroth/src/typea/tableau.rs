use crate::poly::BetaPoly;
use crate::stable::SymSeries;
use rayon::prelude::*;
use std::collections::HashMap;

/// Cells of the Young diagram of `λ` in row-major order.
fn young_cells(lambda: &[usize]) -> Vec<(usize, usize)> {
    let mut cells = Vec::new();
    for (r, &len) in lambda.iter().enumerate() {
        for c in 0..len {
            cells.push((r, c));
        }
    }
    cells
}

/// Nonempty subsets of `lo..=hi` with at most `budget` elements, as sorted vectors.
pub(crate) fn subsets_in_range(lo: u32, hi: u32, budget: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(next: u32, hi: u32, budget: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        for v in next..=hi {
            cur.push(v);
            out.push(cur.clone());
            if cur.len() < budget {
                rec(v + 1, hi, budget, cur, out);
            }
            cur.pop();
        }
    }
    if budget > 0 && lo <= hi {
        rec(lo, hi, budget, &mut cur, &mut out);
    }
    out
}

struct Filler<'a> {
    cells: &'a [(usize, usize)],
    index: HashMap<(usize, usize), usize>,
    k: u32,
    /// Upper bound on the total number of entries.
    size_cap: usize,
}

impl Filler<'_> {
    /// Smallest entry allowed in cell `idx` given the filled cells before it.
    fn lower_bound(&self, idx: usize, fill: &[Vec<u32>]) -> u32 {
        let (r, c) = self.cells[idx];
        let mut lo = 1;
        if c > 0 {
            lo = lo.max(*fill[self.index[&(r, c - 1)]].last().unwrap());
        }
        if r > 0 {
            lo = lo.max(fill[self.index[&(r - 1, c)]].last().unwrap() + 1);
        }
        lo
    }

    fn run(
        &self,
        idx: usize,
        size: usize,
        fill: &mut Vec<Vec<u32>>,
        exps: &mut Vec<u32>,
        acc: &mut HashMap<Vec<u32>, i64>,
    ) {
        if idx == self.cells.len() {
            *acc.entry(exps.clone()).or_insert(0) += 1;
            return;
        }
        let remaining_cells = self.cells.len() - idx - 1;
        let budget = self.size_cap.saturating_sub(size + remaining_cells);
        for set in subsets_in_range(self.lower_bound(idx, fill), self.k, budget) {
            for &v in &set {
                exps[v as usize - 1] += 1;
            }
            let len = set.len();
            fill.push(set);
            self.run(idx + 1, size + len, fill, exps, acc);
            let set = fill.pop().unwrap();
            for &v in &set {
                exps[v as usize - 1] -= 1;
            }
        }
    }
}

/// Exponent-vector counts of semistandard set-valued tableaux of shape `λ` with entries
/// in `[k]` and at most `size_cap` entries in total.
pub fn set_valued_tableaux(lambda: &[usize], k: usize, size_cap: usize) -> HashMap<Vec<u32>, i64> {
    let cells = young_cells(lambda);
    if cells.is_empty() {
        return HashMap::from([(vec![0; k], 1)]);
    }
    let index = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let filler = Filler {
        cells: &cells,
        index,
        k: k as u32,
        size_cap,
    };
    let budget = size_cap.saturating_sub(cells.len() - 1);
    subsets_in_range(1, k as u32, budget)
        .into_par_iter()
        .map(|first| {
            let mut acc = HashMap::new();
            let mut exps = vec![0u32; k];
            for &v in &first {
                exps[v as usize - 1] += 1;
            }
            let size = first.len();
            let mut fill = vec![first];
            filler.run(1, size, &mut fill, &mut exps, &mut acc);
            acc
        })
        .reduce(HashMap::new, merge_counts)
}

pub(crate) fn merge_counts(
    mut a: HashMap<Vec<u32>, i64>,
    b: HashMap<Vec<u32>, i64>,
) -> HashMap<Vec<u32>, i64> {
    for (m, c) in b {
        *a.entry(m).or_insert(0) += c;
    }
    a
}

/// `G_λ(x_1..x_k) = Σ_T β^{|T|-|λ|} x^T` over set-valued tableaux, truncated at `maxdeg`.
pub fn g_lambda(lambda: &[usize], k: usize, maxdeg: Option<u32>) -> SymSeries {
    let lambda: Vec<usize> = lambda.iter().copied().filter(|&p| p > 0).collect();
    let size: usize = lambda.iter().sum();
    if lambda.len() > k {
        return SymSeries::zero(k, maxdeg);
    }
    let cap = maxdeg.map_or(usize::MAX, |d| d as usize);
    let counts = set_valued_tableaux(&lambda, k, cap);
    SymSeries::new(
        BetaPoly::from_weighted_counts(k, size as i64, counts),
        k,
        maxdeg,
    )
}
