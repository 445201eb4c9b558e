//! K-theoretic pipe dreams: cell sets `S` whose reading word `δ(S)` is a Hecke word.
//!
//! Cells `(a, b)` are read row by row from the top, right to left inside a row, and
//! carry the letter `a + b - 1`.

use std::collections::HashMap;

/// Running product of a prefix of a Hecke word. `apply` returns `None` once no
/// extension of the prefix can reach the target.
pub trait HeckeState: Clone {
    fn apply(&self, letter: usize) -> Option<Self>;
    fn accepts(&self) -> bool;
}

/// Cells of the staircase `a + b - 1 ≤ max_letter` in rows `1..=rows`, in reading order.
pub fn reading_cells(rows: usize, max_letter: usize) -> Vec<(usize, usize)> {
    let mut cells = Vec::new();
    for a in 1..=rows.min(max_letter) {
        for b in (1..=max_letter + 1 - a).rev() {
            cells.push((a, b));
        }
    }
    cells
}

#[derive(Clone, Debug, Default)]
pub struct PipeDreamCounts {
    /// Monomial exponent vectors (length `rows`) with multiplicities.
    pub counts: HashMap<Vec<u32>, i64>,
    /// With lookahead on: some accepted set has exactly `cap + 1` cells.
    pub truncated: bool,
    pub visited: u64,
}

/// Sums `x^S` over cell sets accepted by the state machine, with `|S| ≤ cap`.
/// `lookahead` searches one level past the cap to report truncation.
pub fn enumerate<S: HeckeState>(
    start: S,
    rows: usize,
    cells: &[(usize, usize)],
    cap: Option<usize>,
    lookahead: bool,
) -> PipeDreamCounts {
    let mut out = PipeDreamCounts::default();
    let mut exps = vec![0u32; rows];
    let limits = Limits {
        cap: cap.unwrap_or(usize::MAX),
        lookahead: lookahead && cap.is_some(),
    };
    dfs(&start, 0, 0, cells, limits, &mut exps, &mut out);
    out
}

#[derive(Clone, Copy)]
struct Limits {
    cap: usize,
    lookahead: bool,
}

fn dfs<S: HeckeState>(
    state: &S,
    from: usize,
    size: usize,
    cells: &[(usize, usize)],
    limits: Limits,
    exps: &mut Vec<u32>,
    out: &mut PipeDreamCounts,
) {
    out.visited += 1;
    if size > limits.cap {
        out.truncated |= state.accepts();
        return;
    }
    if state.accepts() {
        *out.counts.entry(exps.clone()).or_insert(0) += 1;
    }
    if size == limits.cap && !limits.lookahead {
        return;
    }
    for idx in from..cells.len() {
        if out.truncated && size == limits.cap {
            break;
        }
        let (a, b) = cells[idx];
        if let Some(next) = state.apply(a + b - 1) {
            exps[a - 1] += 1;
            dfs(&next, idx + 1, size + 1, cells, limits, exps, out);
            exps[a - 1] -= 1;
        }
    }
}

/// Precomputed rank table of a permutation for fast Bruhat comparisons:
/// `u ≤ w` iff `#{k ≤ i : u(k) ≥ j} ≤ #{k ≤ i : w(k) ≥ j}` for all `i, j`.
#[derive(Clone, Debug)]
pub struct BruhatCeiling {
    n: usize,
    table: Vec<u16>,
}

impl BruhatCeiling {
    pub fn new(word: &[usize]) -> Self {
        let n = word.len();
        let mut table = vec![0u16; n * (n + 2)];
        let mut cnt = vec![0u16; n + 2];
        for (i, &v) in word.iter().enumerate() {
            for c in cnt.iter_mut().take(v + 1).skip(1) {
                *c += 1;
            }
            table[i * (n + 2)..(i + 1) * (n + 2)].copy_from_slice(&cnt);
        }
        BruhatCeiling { n, table }
    }

    /// Whether `word ≤ w` in Bruhat order; `word` must have the same size.
    pub fn admits(&self, word: &[usize]) -> bool {
        let n = self.n;
        let mut cnt = vec![0u16; n + 2];
        for (i, &v) in word.iter().enumerate() {
            for c in cnt.iter_mut().take(v + 1).skip(1) {
                *c += 1;
            }
            let row = &self.table[i * (n + 2)..(i + 1) * (n + 2)];
            if cnt.iter().zip(row).any(|(a, b)| a > b) {
                return false;
            }
        }
        true
    }
}

/// Demazure product state for type A, pruned by Bruhat order below the target.
#[derive(Clone, Debug)]
pub struct DemazureState<'a> {
    pub word: Vec<usize>,
    target: &'a [usize],
    ceiling: &'a BruhatCeiling,
}

impl<'a> DemazureState<'a> {
    pub fn new(target: &'a [usize], ceiling: &'a BruhatCeiling) -> Self {
        DemazureState {
            word: (1..=target.len()).collect(),
            target,
            ceiling,
        }
    }
}

impl HeckeState for DemazureState<'_> {
    fn apply(&self, letter: usize) -> Option<Self> {
        if letter >= self.word.len() {
            return None;
        }
        if self.word[letter - 1] > self.word[letter] {
            return Some(self.clone());
        }
        let mut word = self.word.clone();
        word.swap(letter - 1, letter);
        if !self.ceiling.admits(&word) {
            return None;
        }
        Some(DemazureState {
            word,
            target: self.target,
            ceiling: self.ceiling,
        })
    }

    fn accepts(&self) -> bool {
        self.word == self.target
    }
}
