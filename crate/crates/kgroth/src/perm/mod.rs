//! Permutations and involutions in one-line notation.

mod classify;
mod diagram;

pub use classify::{
    classify, is_vexillary_chain, is_vexillary_pattern, Classification, IGrassmannian,
};
pub use diagram::{
    alpha_fpf, diagrams, essential_set, nw_rank, o_code_and_shape, o_dominant_shape, rothe, s_set,
    sp_dominant_shape, Cell, Diagram,
};

use crate::error::{invalid, Result};
use std::fmt;

/// A permutation of `[n]`, stored as its one-line word with values `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n {
                return invalid(format!("value {v} out of range 1..={n}"));
            }
            if seen[v] {
                return invalid(format!("value {v} repeated; not a bijection"));
            }
            seen[v] = true;
        }
        Ok(Permutation { word })
    }

    pub(crate) fn from_word_unchecked(word: Vec<usize>) -> Self {
        Permutation { word }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n).collect(),
        }
    }

    /// The longest element `n⋯321`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            word: (1..=n).rev().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// `w(i)` for 1-based `i`; points beyond the size are fixed.
    pub fn at(&self, i: usize) -> usize {
        if i >= 1 && i <= self.word.len() {
            self.word[i - 1]
        } else {
            i
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.word.len()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { word: inv }
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        let n = self.size().max(other.size());
        Permutation {
            word: (1..=n).map(|i| self.at(other.at(i))).collect(),
        }
    }

    pub fn length(&self) -> usize {
        let w = &self.word;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// `w s_i`: swaps the entries in positions `i` and `i+1`.
    pub fn times_s(&self, i: usize) -> Self {
        let n = self.size().max(i + 1);
        let mut word: Vec<usize> = (1..=n).map(|k| self.at(k)).collect();
        word.swap(i - 1, i);
        Permutation { word }
    }

    /// `s_i w`: swaps the values `i` and `i+1`.
    pub fn s_times(&self, i: usize) -> Self {
        let n = self.size().max(i + 1);
        let word = (1..=n)
            .map(|k| match self.at(k) {
                v if v == i => i + 1,
                v if v == i + 1 => i,
                v => v,
            })
            .collect();
        Permutation { word }
    }

    pub fn has_ascent(&self, i: usize) -> bool {
        self.at(i) < self.at(i + 1)
    }

    pub fn descents(&self) -> Vec<usize> {
        (1..self.size()).filter(|&i| !self.has_ascent(i)).collect()
    }

    /// Lehmer code: `c_i = #{j > i : w(j) < w(i)}`.
    pub fn code(&self) -> Vec<usize> {
        let w = &self.word;
        (0..w.len())
            .map(|i| (i + 1..w.len()).filter(|&j| w[j] < w[i]).count())
            .collect()
    }

    /// Inverse of [`Permutation::code`]; the result lives in `S_n` with `n` large enough.
    pub fn from_code(code: &[usize]) -> Result<Self> {
        let last = code.iter().rposition(|&c| c > 0).map_or(0, |p| p + 1);
        let mut n = last;
        for (i, &c) in code.iter().take(last).enumerate() {
            n = n.max(i + c + 1);
        }
        let mut avail: Vec<usize> = (1..=n).collect();
        let mut word = Vec::with_capacity(n);
        for i in 0..n {
            let c = code.get(i).copied().unwrap_or(0);
            if c >= avail.len() {
                return invalid("code is not a valid Lehmer code");
            }
            word.push(avail.remove(c));
        }
        Ok(Permutation { word })
    }

    /// Block sum `v × w`.
    pub fn direct_sum(&self, other: &Permutation) -> Self {
        let n = self.size();
        let mut word = self.word.clone();
        word.extend(other.word.iter().map(|&v| v + n));
        Permutation { word }
    }

    /// `w × 1^m`.
    pub fn one_pad(&self, m: usize) -> Self {
        self.direct_sum(&Permutation::identity(m))
    }

    /// `1^m × w`.
    pub fn shift_pad(&self, m: usize) -> Self {
        Permutation::identity(m).direct_sum(self)
    }

    /// Same permutation viewed in `S_n` for `n ≥ size`.
    pub fn widen(&self, n: usize) -> Self {
        if n <= self.size() {
            self.clone()
        } else {
            self.one_pad(n - self.size())
        }
    }

    /// Drops trailing fixed points.
    pub fn trimmed(&self) -> Self {
        let mut word = self.word.clone();
        while let Some(&v) = word.last() {
            if v == word.len() {
                word.pop();
            } else {
                break;
            }
        }
        Permutation { word }
    }

    pub fn is_involution(&self) -> bool {
        (1..=self.size()).all(|i| self.at(self.at(i)) == i)
    }

    /// Bruhat order via the rank-matrix criterion.
    pub fn bruhat_le(&self, other: &Permutation) -> bool {
        let n = self.size().max(other.size());
        for i in 1..=n {
            for j in 1..=n {
                let a = (1..=i).filter(|&k| self.at(k) >= j).count();
                let b = (1..=i).filter(|&k| other.at(k) >= j).count();
                if a > b {
                    return false;
                }
            }
        }
        true
    }

    /// Parses `4,5,7,1,2,6,3`, `4571263` (single digits) or cycles `(1,4)(2,5)(3,7)`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Permutation::identity(0));
        }
        if s.starts_with('(') {
            return parse_cycles(s, None);
        }
        let word: Vec<usize> = if s.contains(',') || s.contains(' ') {
            s.split([',', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad_token(t)))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| bad_token(&c.to_string()))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(word)
    }

    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut word: Vec<usize> = (1..=n).collect();
        permute(&mut word, 0, &mut out);
        out.sort();
        out
    }
}

fn bad_token(t: &str) -> crate::error::Error {
    crate::error::Error::Invalid(format!("cannot parse '{t}' as a permutation entry"))
}

fn permute(word: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k == word.len() {
        out.push(Permutation { word: word.clone() });
        return;
    }
    for i in k..word.len() {
        word.swap(k, i);
        permute(word, k + 1, out);
        word.swap(k, i);
    }
}

/// Parses cycle notation; `n` defaults to the largest entry mentioned.
pub fn parse_cycles(s: &str, n: Option<usize>) -> Result<Permutation> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for chunk in s.split('(').map(str::trim).filter(|c| !c.is_empty()) {
        let body = match chunk.strip_suffix(')') {
            Some(b) => b,
            None => return invalid(format!("unbalanced cycle '{chunk}'")),
        };
        let cyc = body
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad_token(t)))
            .collect::<Result<Vec<_>>>()?;
        cycles.push(cyc);
    }
    let max = cycles.iter().flatten().copied().max().unwrap_or(0);
    let n = n.unwrap_or(max).max(max);
    let mut word: Vec<usize> = (1..=n).collect();
    let mut seen = vec![false; n + 1];
    for cyc in &cycles {
        for (k, &a) in cyc.iter().enumerate() {
            if a == 0 || seen[a] {
                return invalid(format!("entry {a} repeated or zero in cycle notation"));
            }
            seen[a] = true;
            word[a - 1] = cyc[(k + 1) % cyc.len()];
        }
    }
    Permutation::new(word)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.iter().all(|&v| v < 10) {
            for v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An involution `z = z^{-1}`; `fpf` records whether it has no fixed points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Involution {
    perm: Permutation,
    fpf: bool,
}

impl Involution {
    pub fn new(perm: Permutation) -> Result<Self> {
        if !perm.is_involution() {
            return invalid(format!("{perm} is not an involution"));
        }
        let fpf = (1..=perm.size()).all(|i| perm.at(i) != i);
        Ok(Involution { perm, fpf })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Involution::new(Permutation::parse(s)?)
    }

    pub fn new_fpf(perm: Permutation) -> Result<Self> {
        let z = Involution::new(perm)?;
        if !z.fpf {
            return invalid(format!("{} has fixed points", z.perm));
        }
        Ok(z)
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn size(&self) -> usize {
        self.perm.size()
    }

    pub fn at(&self, i: usize) -> usize {
        self.perm.at(i)
    }

    pub fn is_fpf(&self) -> bool {
        self.fpf
    }

    /// `Θ = 2143⋯`, the fpf involution `s_1 s_3 ⋯ s_{n-1}`.
    pub fn theta(n: usize) -> Self {
        let word = (1..=n)
            .map(|i| if i % 2 == 1 { i + 1 } else { i - 1 })
            .collect();
        Involution {
            perm: Permutation { word },
            fpf: true,
        }
    }

    pub fn identity(n: usize) -> Self {
        Involution {
            perm: Permutation::identity(n),
            fpf: n == 0,
        }
    }

    /// `s_i z s_i`.
    pub fn conj_s(&self, i: usize) -> Self {
        let perm = self.perm.s_times(i).times_s(i);
        let fpf = (1..=perm.size()).all(|k| perm.at(k) != k);
        Involution { perm, fpf }
    }

    /// `ℓ_fpf(z) = #{(i,j) : z(i) > z(j) < i < j}`.
    pub fn fpf_length(&self) -> Result<usize> {
        if !self.fpf {
            return invalid(format!("{} has fixed points", self.perm));
        }
        let n = self.size();
        let mut count = 0;
        for i in 1..=n {
            for j in i + 1..=n {
                if self.at(i) > self.at(j) && self.at(j) < i {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// `z × 1^m`.
    pub fn one_pad(&self, m: usize) -> Self {
        Involution {
            perm: self.perm.one_pad(m),
            fpf: self.fpf && m == 0,
        }
    }

    /// `1^m × z`.
    pub fn shift_pad(&self, m: usize) -> Self {
        Involution {
            perm: self.perm.shift_pad(m),
            fpf: self.fpf && m == 0,
        }
    }

    /// `z × 21`.
    pub fn fpf_append(&self) -> Result<Self> {
        let t = Involution::theta(2);
        Involution::new_fpf(self.perm.direct_sum(&t.perm))
    }

    /// `(21)^m × z`.
    pub fn fpf_pad(&self, m: usize) -> Result<Self> {
        if !self.fpf {
            return invalid(format!("{} has fixed points", self.perm));
        }
        let t = Involution::theta(2 * m);
        Ok(Involution {
            perm: t.perm.direct_sum(&self.perm),
            fpf: true,
        })
    }

    /// All involutions in `S_n`, sorted by one-line word.
    pub fn all(n: usize) -> Vec<Involution> {
        let mut out = Vec::new();
        let mut word = vec![0usize; n];
        involutions_rec(&mut word, 1, false, &mut out);
        out.sort();
        out
    }

    /// All fixed-point-free involutions in `S_n`.
    pub fn all_fpf(n: usize) -> Vec<Involution> {
        let mut out = Vec::new();
        if n % 2 == 1 {
            return out;
        }
        let mut word = vec![0usize; n];
        involutions_rec(&mut word, 1, true, &mut out);
        out.sort();
        out
    }

    /// Two-element cycles `(a, b)` with `a < b`, ordered by `a`.
    pub fn cycles(&self) -> Vec<(usize, usize)> {
        (1..=self.size())
            .filter(|&i| self.at(i) > i)
            .map(|i| (i, self.at(i)))
            .collect()
    }
}

fn involutions_rec(word: &mut Vec<usize>, i: usize, fpf: bool, out: &mut Vec<Involution>) {
    let n = word.len();
    if i > n {
        let perm = Permutation { word: word.clone() };
        let is_fpf = (1..=n).all(|k| perm.at(k) != k);
        out.push(Involution { perm, fpf: is_fpf });
        return;
    }
    if word[i - 1] != 0 {
        involutions_rec(word, i + 1, fpf, out);
        return;
    }
    if !fpf {
        word[i - 1] = i;
        involutions_rec(word, i + 1, fpf, out);
        word[i - 1] = 0;
    }
    for j in i + 1..=n {
        if word[j - 1] == 0 {
            word[i - 1] = j;
            word[j - 1] = i;
            involutions_rec(word, i + 1, fpf, out);
            word[i - 1] = 0;
            word[j - 1] = 0;
        }
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.perm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn lengths() {
        assert_eq!(Permutation::identity(4).length(), 0);
        assert_eq!(p("4321").length(), 6);
        assert_eq!(p("3142").length(), 3);
    }

    #[test]
    fn fpf_lengths() {
        assert_eq!(Involution::parse("2143").unwrap().fpf_length().unwrap(), 0);
        assert_eq!(Involution::parse("4321").unwrap().fpf_length().unwrap(), 2);
        for z in Involution::all_fpf(6) {
            let padded = z.fpf_append().unwrap();
            assert_eq!(padded.fpf_length().unwrap(), z.fpf_length().unwrap());
        }
        assert!(Involution::parse("1324").unwrap().fpf_length().is_err());
    }

    #[test]
    fn sums_and_pads() {
        assert_eq!(p("21").direct_sum(&p("21")), p("2143"));
        assert_eq!(p("21").shift_pad(2), p("1243"));
        let z = Involution::parse("4321").unwrap();
        assert_eq!(z.fpf_pad(1).unwrap().perm(), &p("216543"));
    }

    #[test]
    fn parsing() {
        assert_eq!(p("4,5,7,1,2,6,3"), p("4571263"));
        assert_eq!(parse_cycles("(1,4)(2,5)(3,7)", None).unwrap(), p("4571263"));
        assert_eq!(parse_cycles("(1,3)", Some(4)).unwrap(), p("3214"));
        assert!(Permutation::parse("1,1,2").is_err());
        assert!(Permutation::parse("1,4").is_err());
        assert!(Involution::parse("231").is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Involution::all(4).len(), 10);
        assert_eq!(Involution::all(5).len(), 26);
        assert_eq!(Involution::all_fpf(6).len(), 15);
    }

    #[test]
    fn code_round_trip() {
        for w in Permutation::all(5) {
            let back = Permutation::from_code(&w.code()).unwrap();
            assert_eq!(back.widen(5), w.widen(back.size()));
        }
    }

    #[test]
    fn bruhat() {
        assert!(p("1324").bruhat_le(&p("3142")));
        assert!(!p("3124").bruhat_le(&p("1342")));
        assert!(Permutation::identity(4).bruhat_le(&p("2143")));
    }
}
