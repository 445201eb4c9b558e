//! Grothendieck polynomials of permutations, their stable limits and `G_λ`.

pub mod pipedream;
pub(crate) mod tableau;

pub use tableau::{g_lambda, set_valued_tableaux};

use crate::error::{internal, invalid, Result};
use crate::perm::Permutation;
use crate::poly::{beta_divided_difference, BetaPoly, GradedBasis, Monomial};
use crate::stable::SymSeries;
use pipedream::{enumerate, reading_cells, BruhatCeiling, DemazureState};
use std::collections::HashMap;

/// `U_w U_i` in the 0-Hecke monoid: `w s_i` on an ascent, `w` on a descent.
pub fn hecke_product(w: &Permutation, i: usize) -> Permutation {
    if w.has_ascent(i) {
        w.times_s(i)
    } else {
        w.clone()
    }
}

/// Demazure product of a word, starting from the identity of `S_n`.
pub fn demazure(n: usize, letters: &[usize]) -> Permutation {
    letters
        .iter()
        .fold(Permutation::identity(n), |w, &i| hecke_product(&w, i))
}

/// Memo table for the divided-difference recursion, keyed by the full one-line word.
#[derive(Default)]
pub struct GrothCache {
    memo: HashMap<Permutation, BetaPoly>,
}

impl GrothCache {
    pub fn new() -> Self {
        GrothCache::default()
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// `𝔊_w`, descending from `𝔊_{n⋯21} = x_1^{n-1} ⋯ x_{n-1}` through the smallest ascent.
    pub fn get(&mut self, w: &Permutation) -> Result<BetaPoly> {
        if let Some(p) = self.memo.get(w) {
            return Ok(p.clone());
        }
        let n = w.size();
        let p = match (1..n).find(|&i| w.has_ascent(i)) {
            None => {
                let exps = (1..n).rev().map(|e| e as u32).collect();
                BetaPoly::term(Monomial::new(exps), crate::poly::BetaScalar::one()).with_nvars(n)
            }
            Some(i) => {
                let up = self.get(&w.times_s(i))?;
                beta_divided_difference(&up, i)?.with_nvars(n)
            }
        };
        self.memo.insert(w.clone(), p.clone());
        Ok(p)
    }
}

/// `𝔊_w` by divided differences.
pub fn grothendieck(w: &Permutation) -> Result<BetaPoly> {
    GrothCache::new().get(w)
}

#[derive(Clone, Debug)]
pub struct PipeDreamSum {
    pub poly: BetaPoly,
    /// A pipe dream with `cap + 1` cells exists (only checked when asked for).
    pub truncated: bool,
}

/// `Σ β^{|S|-ℓ(w)} x^S` over pipe dreams in rows `1..=rows` with `|S| ≤ cap`.
pub fn pipe_dream_sum(
    w: &Permutation,
    rows: usize,
    cap: Option<usize>,
    lookahead: bool,
) -> PipeDreamSum {
    let n = w.size();
    let ceiling = BruhatCeiling::new(w.word());
    let start = DemazureState::new(w.word(), &ceiling);
    let cells = reading_cells(rows, n.saturating_sub(1));
    let found = enumerate(start, rows, &cells, cap, lookahead);
    let poly = BetaPoly::from_weighted_counts(rows, w.length() as i64, found.counts);
    PipeDreamSum {
        poly,
        truncated: found.truncated,
    }
}

/// `𝔊_w` as a pipe-dream sum over all of `[n] × [n]`.
pub fn groth_via_pipedreams(w: &Permutation, cap: Option<usize>) -> PipeDreamSum {
    let mut out = pipe_dream_sum(w, w.size().max(1), cap, true);
    out.poly = out.poly.with_nvars(w.size());
    out
}

/// `G_w(x_1..x_k) = 𝔊_{1^N × w}(x_1..x_k)`, checked against `N + 1`.
pub fn stable_g(w: &Permutation, k: usize, maxdeg: Option<u32>) -> Result<SymSeries> {
    let n = w.size().max(k).max(1);
    let w = w.widen(n);
    let cap = maxdeg.map(|d| d as usize);
    let at = |m: usize| pipe_dream_sum(&w.shift_pad(m), k, cap, false).poly;
    let first = at(n);
    if at(n + 1) != first {
        return internal(format!("stable limit of {w} did not stabilize at N = {n}"));
    }
    Ok(SymSeries::new(first, k, maxdeg))
}

/// `w_λ ∈ S_n`: `w(i) = i + λ_{k+1-i}` for `i ≤ k = ℓ(λ)`, increasing afterwards.
pub fn w_lambda(lambda: &[usize], n: usize) -> Result<Permutation> {
    let parts: Vec<usize> = lambda.iter().copied().filter(|&p| p > 0).collect();
    let k = parts.len();
    if parts.windows(2).any(|p| p[0] < p[1]) {
        return invalid(format!("{parts:?} is not a partition"));
    }
    if k + parts.first().copied().unwrap_or(0) > n {
        return invalid(format!(
            "w_λ for λ = {parts:?} needs n ≥ {}",
            k + parts.first().copied().unwrap_or(0)
        ));
    }
    let mut word: Vec<usize> = (1..=k).map(|i| i + parts[k - i]).collect();
    let used: std::collections::BTreeSet<usize> = word.iter().copied().collect();
    word.extend((1..=n).filter(|v| !used.contains(v)));
    Permutation::new(word)
}

/// The family `{𝔊_w}` indexed through Lehmer codes: `x^{code(w)}` is the minimal monomial.
#[derive(Default)]
pub struct GrothBasis {
    cache: GrothCache,
}

impl GrothBasis {
    pub fn new() -> Self {
        GrothBasis::default()
    }
}

impl GradedBasis for GrothBasis {
    type Index = Permutation;

    fn lookup(&mut self, m: &Monomial) -> Result<Option<(Permutation, BetaPoly)>> {
        let code: Vec<usize> = m.exps().iter().map(|&e| e as usize).collect();
        let w = Permutation::from_code(&code)?;
        let p = self.cache.get(&w)?;
        Ok(Some((w.trimmed(), p)))
    }
}

/// `{G_λ}` in `k ≥ maxdeg` variables; `G_λ` leads with `x^{rev λ}`.
pub struct StableGBasis {
    nvars: usize,
    maxdeg: u32,
    memo: HashMap<Vec<usize>, BetaPoly>,
}

impl StableGBasis {
    pub fn new(nvars: usize, maxdeg: u32) -> Self {
        StableGBasis {
            nvars,
            maxdeg,
            memo: HashMap::new(),
        }
    }
}

/// Reads `(0,…,0,λ_ℓ,…,λ_1)` back as `λ`; `None` if the vector is not of that shape.
pub fn partition_from_reversed(exps: &[u32], nvars: usize, strict: bool) -> Option<Vec<usize>> {
    if exps.len() > nvars {
        return None;
    }
    let mut v = vec![0u32; nvars];
    v[..exps.len()].copy_from_slice(exps);
    let parts: Vec<u32> = v.iter().copied().filter(|&e| e > 0).collect();
    let first_nonzero = v.iter().position(|&e| e > 0).unwrap_or(nvars);
    if v[first_nonzero..].contains(&0) {
        return None;
    }
    let ok = parts
        .windows(2)
        .all(|p| if strict { p[0] < p[1] } else { p[0] <= p[1] });
    if !ok {
        return None;
    }
    Some(parts.iter().rev().map(|&e| e as usize).collect())
}

impl GradedBasis for StableGBasis {
    type Index = Vec<usize>;

    fn lookup(&mut self, m: &Monomial) -> Result<Option<(Vec<usize>, BetaPoly)>> {
        let lambda = match partition_from_reversed(m.exps(), self.nvars, false) {
            Some(l) => l,
            None => return Ok(None),
        };
        let (nvars, maxdeg) = (self.nvars, self.maxdeg);
        let p = self
            .memo
            .entry(lambda.clone())
            .or_insert_with(|| g_lambda(&lambda, nvars, Some(maxdeg)).into_poly());
        Ok(Some((lambda, p.clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    type Terms = &'static [(i64, i32, &'static [u32])];

    #[test]
    fn s3_table() {
        let table: [(&str, Terms); 6] = [
            ("123", &[(1, 0, &[])]),
            ("213", &[(1, 0, &[1])]),
            ("132", &[(1, 0, &[1]), (1, 0, &[0, 1]), (1, 1, &[1, 1])]),
            ("231", &[(1, 0, &[1, 1])]),
            ("312", &[(1, 0, &[2])]),
            ("321", &[(1, 0, &[2, 1])]),
        ];
        for (w, terms) in table {
            assert_eq!(
                grothendieck(&p(w)).unwrap(),
                BetaPoly::from_int_terms(terms),
                "{w}"
            );
        }
    }

    #[test]
    fn g1342() {
        let want = BetaPoly::from_int_terms(&[
            (1, 0, &[1, 1]),
            (1, 0, &[1, 0, 1]),
            (1, 0, &[0, 1, 1]),
            (2, 1, &[1, 1, 1]),
        ]);
        assert_eq!(grothendieck(&p("1342")).unwrap(), want);
    }

    #[test]
    fn hecke_examples() {
        assert_eq!(hecke_product(&p("123"), 1), p("213"));
        assert_eq!(hecke_product(&p("213"), 1), p("213"));
        assert_eq!(hecke_product(&p("312"), 2), p("321"));
    }

    #[test]
    fn routes_agree_on_s4() {
        let mut cache = GrothCache::new();
        for w in Permutation::all(4) {
            let dd = cache.get(&w).unwrap();
            let pd = groth_via_pipedreams(&w, dd.degree().map(|d| d as usize));
            assert!(!pd.truncated, "{w}");
            assert_eq!(pd.poly, dd, "{w}");
        }
    }

    #[test]
    fn small_cap_is_flagged() {
        let pd = groth_via_pipedreams(&p("132"), Some(1));
        assert!(pd.truncated);
        assert_eq!(
            pd.poly,
            BetaPoly::from_int_terms(&[(1, 0, &[1]), (1, 0, &[0, 1])])
        );
    }

    #[test]
    fn w_lambda_examples() {
        assert_eq!(w_lambda(&[1], 3).unwrap(), p("213"));
        assert_eq!(w_lambda(&[], 4).unwrap(), p("1234"));
        assert_eq!(w_lambda(&[2, 1], 4).unwrap(), p("2413"));
        assert!(w_lambda(&[3], 3).is_err());
    }

    #[test]
    fn stable_g_examples() {
        let g = stable_g(&p("213"), 2, None).unwrap();
        assert_eq!(
            *g.poly(),
            BetaPoly::from_int_terms(&[(1, 0, &[1]), (1, 0, &[0, 1]), (1, 1, &[1, 1])])
        );
        assert_eq!(
            *stable_g(&p("123"), 3, None).unwrap().poly(),
            BetaPoly::one(3)
        );
        let one_var = stable_g(&p("1342"), 1, None).unwrap();
        let direct = grothendieck(&p("1342").shift_pad(4))
            .unwrap()
            .restrict_vars(1);
        assert_eq!(*one_var.poly(), direct);
    }

    #[test]
    fn reversed_partition_reader() {
        assert_eq!(
            partition_from_reversed(&[0, 1, 2], 3, false),
            Some(vec![2, 1])
        );
        assert_eq!(partition_from_reversed(&[0, 0, 1], 3, false), Some(vec![1]));
        assert_eq!(partition_from_reversed(&[1, 0, 1], 3, false), None);
        assert_eq!(partition_from_reversed(&[0, 2, 1], 3, false), None);
        assert_eq!(partition_from_reversed(&[0, 1, 1], 3, true), None);
        assert_eq!(partition_from_reversed(&[], 3, true), Some(vec![]));
    }
}
