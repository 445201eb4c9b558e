use crate::error::{invalid, Result};
use crate::perm::{Involution, Permutation};
use crate::ring::Ring;

/// A skew-symmetric matrix stored by its strict upper triangle.
#[derive(Clone, Debug)]
pub struct SkewMatrix<R> {
    size: usize,
    upper: Vec<R>,
}

impl<R: Ring> SkewMatrix<R> {
    /// `entry(i, j)` is called for `0 ≤ i < j < size`.
    pub fn from_fn(size: usize, mut entry: impl FnMut(usize, usize) -> R) -> Self {
        let mut upper = Vec::with_capacity(size * size.saturating_sub(1) / 2);
        for i in 0..size {
            for j in i + 1..size {
                upper.push(entry(i, j));
            }
        }
        SkewMatrix { size, upper }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        // Row i of the upper triangle starts after Σ_{r<i} (size − 1 − r) entries.
        i * (2 * self.size - i - 1) / 2 + (j - i - 1)
    }

    /// `A_{ij}` (0-based), with `A_{ji} = −A_{ij}` and zero diagonal.
    pub fn get(&self, i: usize, j: usize) -> R {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[self.slot(i, j)].clone(),
            std::cmp::Ordering::Greater => self.upper[self.slot(j, i)].neg(),
            std::cmp::Ordering::Equal => R::zero(),
        }
    }

    pub fn upper(&self, i: usize, j: usize) -> &R {
        &self.upper[self.slot(i, j)]
    }
}

/// Pfaffian by expansion along the first row.
pub fn pfaffian<R: Ring>(m: &SkewMatrix<R>) -> Result<R> {
    if m.size % 2 == 1 {
        return invalid(format!("Pfaffian of odd size {}", m.size));
    }
    let idx: Vec<usize> = (0..m.size).collect();
    Ok(expand(m, &idx))
}

fn expand<R: Ring>(m: &SkewMatrix<R>, idx: &[usize]) -> R {
    match idx.len() {
        0 => R::one(),
        2 => m.upper(idx[0], idx[1]).clone(),
        _ => {
            let mut acc: Option<R> = None;
            for k in 1..idx.len() {
                let a = m.upper(idx[0], idx[k]);
                if a.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = idx[1..]
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p + 1 != k)
                    .map(|(_, &v)| v)
                    .collect();
                let term = a.mul(&expand(m, &rest));
                acc = Some(match acc {
                    None if k % 2 == 1 => term,
                    None => term.neg(),
                    Some(s) if k % 2 == 1 => s.add(&term),
                    Some(s) => s.sub(&term),
                });
            }
            acc.unwrap_or_else(R::zero)
        }
    }
}

/// `Σ_{z ∈ I^FPF_r} (−1)^{ℓ_fpf(z)} ∏_{z(i) < i} A_{z(i), i}`.
pub fn pfaffian_combinatorial<R: Ring>(m: &SkewMatrix<R>) -> Result<R> {
    if m.size % 2 == 1 {
        return invalid(format!("Pfaffian of odd size {}", m.size));
    }
    let mut acc = R::zero();
    for z in Involution::all_fpf(m.size) {
        let mut term = R::one();
        for (a, b) in z.cycles() {
            term = term.mul(m.upper(a - 1, b - 1));
        }
        acc = if z.fpf_length()? % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    Ok(acc)
}

/// Determinant by the Leibniz sum over `S_r`.
pub fn det_leibniz<R: Ring>(m: &SkewMatrix<R>) -> R {
    let mut acc = R::zero();
    for w in Permutation::all(m.size) {
        let mut term = R::one();
        for i in 0..m.size {
            term = term.mul(&m.get(i, w.at(i + 1) - 1));
            if term.is_zero() {
                break;
            }
        }
        acc = if w.length() % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}
