use super::{Involution, Permutation};
use crate::error::{invalid, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        assert!(row >= 1 && col >= 1, "cells are 1-indexed");
        Cell { row, col }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Diagram {
    pub cells: BTreeSet<Cell>,
}

impl Diagram {
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        Diagram {
            cells: pairs.iter().map(|&(r, c)| Cell::new(r, c)).collect(),
        }
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.cells.contains(&Cell { row, col })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.cells.iter().map(|c| (c.row, c.col)).collect()
    }

    /// Renders the diagram in matrix coordinates: `o` for cells, `x` for `(i, w(i))`.
    pub fn render(&self, w: &Permutation) -> String {
        let n = w.size();
        let mut out = String::new();
        for i in 1..=n {
            let row: Vec<&str> = (1..=n)
                .map(|j| {
                    if self.contains(i, j) {
                        "o"
                    } else if w.at(i) == j {
                        "x"
                    } else {
                        "."
                    }
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .cells
            .iter()
            .map(|c| format!("({},{})", c.row, c.col))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Rothe diagram `D(w) = {(i, w(j)) : i < j, w(i) > w(j)}`.
pub fn rothe(w: &Permutation) -> Diagram {
    let n = w.size();
    let mut cells = BTreeSet::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if w.at(i) > w.at(j) {
                cells.insert(Cell::new(i, w.at(j)));
            }
        }
    }
    Diagram { cells }
}

/// `(D(z), D^O(z), D^Sp(z))`: the Rothe diagram and its parts weakly / strictly below the diagonal.
pub fn diagrams(z: &Involution) -> (Diagram, Diagram, Diagram) {
    let d = rothe(z.perm());
    let o = Diagram {
        cells: d.cells.iter().filter(|c| c.row >= c.col).copied().collect(),
    };
    let sp = Diagram {
        cells: d.cells.iter().filter(|c| c.row > c.col).copied().collect(),
    };
    (d, o, sp)
}

pub fn essential_set(d: &Diagram) -> Diagram {
    let cells = d
        .cells
        .iter()
        .filter(|c| !d.contains(c.row, c.col + 1) && !d.contains(c.row + 1, c.col))
        .copied()
        .collect();
    Diagram { cells }
}

/// Number of `k ≤ i` with `z(k) ≤ j`.
pub fn nw_rank(w: &Permutation, i: usize, j: usize) -> Result<usize> {
    let n = w.size();
    if i == 0 || j == 0 || i > n || j > n {
        return invalid(format!("rank index ({i},{j}) outside 1..={n}"));
    }
    Ok((1..=i).filter(|&k| w.at(k) <= j).count())
}

fn transpose(parts: &[usize]) -> Vec<usize> {
    let first = parts.iter().copied().max().unwrap_or(0);
    (1..=first)
        .map(|k| parts.iter().filter(|&&p| p >= k).count())
        .collect()
}

/// Orthogonal code (row counts of `D^O(z)`) and shape `λ^O(z)`.
pub fn o_code_and_shape(z: &Involution) -> (Vec<usize>, Vec<usize>) {
    let (_, o, _) = diagrams(z);
    let n = z.size();
    let code: Vec<usize> = (1..=n)
        .map(|i| o.cells.iter().filter(|c| c.row == i).count())
        .collect();
    let mut sorted = code.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    sorted.retain(|&c| c > 0);
    (code, transpose(&sorted))
}

/// `S(z) = {q − rank(z_[p][q]) : (p,q) ∈ Ess(D^O(z))}`.
pub fn s_set(z: &Involution) -> BTreeSet<usize> {
    let (_, o, _) = diagrams(z);
    essential_set(&o)
        .cells
        .iter()
        .map(|c| c.col - nw_rank(z.perm(), c.row, c.col).expect("cell inside [n]x[n]"))
        .collect()
}

/// `α_fpf(z) = (a_1 b_1 a_2 b_2 ⋯)^{-1}` with cycles `(a_i, b_i)` ordered by minima.
pub fn alpha_fpf(z: &Involution) -> Result<Permutation> {
    if !z.is_fpf() {
        return invalid(format!("{z} has fixed points"));
    }
    let word: Vec<usize> = z.cycles().into_iter().flat_map(|(a, b)| [a, b]).collect();
    Ok(Permutation::from_word_unchecked(word).inverse())
}

fn column_shape(d: &Diagram, offset: usize) -> Option<Vec<usize>> {
    let mut cols: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in &d.cells {
        cols.entry(c.col).or_default().push(c.row);
    }
    let mut mu = Vec::new();
    for (k, (&j, rows)) in cols.iter().enumerate() {
        if j != k + 1 {
            return None;
        }
        let expected: Vec<usize> = (j + offset..j + offset + rows.len()).collect();
        if *rows != expected {
            return None;
        }
        if let Some(&prev) = mu.last() {
            if rows.len() >= prev {
                return None;
            }
        }
        mu.push(rows.len());
    }
    Some(mu)
}

/// `Some(μ)` when `D^O(z) = {(i+j−1, j) : 1 ≤ i ≤ μ_j}` for a strict partition `μ`.
pub fn o_dominant_shape(z: &Involution) -> Option<Vec<usize>> {
    let (_, o, _) = diagrams(z);
    column_shape(&o, 0)
}

/// `Some(μ)` when `z` is fpf and `D^Sp(z) = {(i+j, j) : 1 ≤ i ≤ μ_j}`.
pub fn sp_dominant_shape(z: &Involution) -> Option<Vec<usize>> {
    if !z.is_fpf() {
        return None;
    }
    let (_, _, sp) = diagrams(z);
    column_shape(&sp, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(s: &str) -> Involution {
        Involution::parse(s).unwrap()
    }

    #[test]
    fn orthogonal_diagrams() {
        let (_, o, _) = diagrams(&z("321"));
        assert_eq!(o, Diagram::from_pairs(&[(1, 1), (2, 1)]));
        let (_, o, _) = diagrams(&z("3412"));
        assert_eq!(o, Diagram::from_pairs(&[(1, 1), (2, 1), (2, 2)]));
        let (d, o, sp) = diagrams(&Involution::identity(4));
        assert!(d.is_empty() && o.is_empty() && sp.is_empty());
    }

    #[test]
    fn essential_sets() {
        let (_, o, _) = diagrams(&z("321"));
        assert_eq!(essential_set(&o), Diagram::from_pairs(&[(2, 1)]));
        assert!(essential_set(&Diagram::default()).is_empty());
        let (_, o, _) = diagrams(&z("4571263"));
        assert_eq!(essential_set(&o), Diagram::from_pairs(&[(6, 3), (3, 3)]));
    }

    #[test]
    fn ranks() {
        assert_eq!(nw_rank(z("321").perm(), 2, 1).unwrap(), 0);
        for k in 1..=5 {
            assert_eq!(nw_rank(&Permutation::identity(5), k, k).unwrap(), k);
        }
        // z(4) = 1 and z(5) = 2 both land in the 6×3 corner.
        assert_eq!(nw_rank(z("4571263").perm(), 6, 3).unwrap(), 2);
        assert!(nw_rank(z("321").perm(), 0, 1).is_err());
    }

    #[test]
    fn shapes() {
        assert_eq!(o_code_and_shape(&z("3412")).1, vec![2, 1]);
        assert_eq!(o_code_and_shape(&z("4571263")).1, vec![4, 2, 1]);
        for n in 1..=7 {
            let expected: Vec<usize> = (0..)
                .map(|k| n as i64 - 1 - 2 * k)
                .take_while(|&v| v > 0)
                .map(|v| v as usize)
                .collect();
            let top = Involution::new(Permutation::longest(n)).unwrap();
            assert_eq!(o_code_and_shape(&top).1, expected);
        }
    }

    #[test]
    fn s_sets() {
        assert_eq!(s_set(&z("4571263")), BTreeSet::from([1, 3]));
        assert_eq!(s_set(&z("321")), BTreeSet::from([1]));
        assert!(s_set(&Involution::identity(3)).is_empty());
    }

    #[test]
    fn alpha() {
        assert!(alpha_fpf(&z("2143")).unwrap().is_identity());
        assert_eq!(
            alpha_fpf(&z("4321")).unwrap(),
            Permutation::parse("1342").unwrap()
        );
        assert!(alpha_fpf(&Involution::theta(6)).unwrap().is_identity());
    }

    #[test]
    fn dominance() {
        assert_eq!(o_dominant_shape(&z("321")), Some(vec![2]));
        assert_eq!(o_dominant_shape(&z("3412")), Some(vec![2, 1]));
        assert_eq!(o_dominant_shape(&z("2143")), None);
        assert_eq!(sp_dominant_shape(&z("4321")), Some(vec![2]));
        assert_eq!(sp_dominant_shape(&z("215634")), None);
    }

    #[test]
    fn sp_diagram_size_is_fpf_length() {
        for n in [2, 4, 6] {
            for zz in Involution::all_fpf(n) {
                let (_, _, sp) = diagrams(&zz);
                assert_eq!(sp.len(), zz.fpf_length().unwrap());
            }
        }
    }
}
