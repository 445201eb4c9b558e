//! Orthogonal Grothendieck polynomials: the dominant product, the monomial-ideal class,
//! and the Pfaffian formula for vexillary involutions.

use crate::error::{internal, invalid, Error, Result};
use crate::perm::{
    classify, diagrams, essential_set, nw_rank, o_code_and_shape, o_dominant_shape, s_set,
    Involution,
};
use crate::poly::{beta_divided_difference, oplus_vars, rat, BetaPoly, BetaScalar};
use crate::raising::dense::Dense;
use crate::raising::phi::{check_beta_nonnegative, phi_inverse_frac};
use crate::raising::series::{evaluate_dense, homogeneous_parts, layout_for};
use crate::raising::{
    apply_one_minus_beta_t, apply_r, binom, pfaffian, phi_entry, CSeries, DExpr, Frac, Layout,
    RaisingExpr, SkewMatrix,
};
use crate::ring::Ring;
use rayon::prelude::*;
use std::collections::{BTreeSet, HashMap};
use std::str::FromStr;
use std::sync::Arc;

/// Largest per-variable cap tried before E1 gives up on stabilizing.
pub const MAX_BOX: u32 = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OEngine {
    #[default]
    E1,
    E2,
}

impl FromStr for OEngine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e1" => Ok(OEngine::E1),
            "e2" => Ok(OEngine::E2),
            _ => invalid(format!("unknown engine {s:?} (e1, e2)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ORoute {
    #[default]
    Auto,
    Dominant,
    Vexillary,
    Hilbert,
}

impl FromStr for ORoute {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(ORoute::Auto),
            "dominant" => Ok(ORoute::Dominant),
            "vexillary" => Ok(ORoute::Vexillary),
            "hilbert" => Ok(ORoute::Hilbert),
            _ => invalid(format!(
                "unknown route {s:?} (auto, dominant, vexillary, hilbert)"
            )),
        }
    }
}

/// `∏_{(i,j) ∈ D^O(z)} (x_i ⊕ x_j)` for O-dominant `z`.
pub fn o_dominant(z: &Involution) -> Result<BetaPoly> {
    if o_dominant_shape(z).is_none() {
        return invalid(format!("{z} is not O-dominant"));
    }
    let (_, o, _) = diagrams(z);
    let mut p = BetaPoly::one(z.size());
    for (i, j) in o.pairs() {
        p = p.mul(&oplus_vars(i, j));
    }
    Ok(p.with_nvars(z.size()))
}

/// Equivariant class of the coordinate ideal and its image as a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertClass {
    /// `∏ (1 − a_i a_j)`, with `a_i` stored as the `i`-th variable.
    pub class: BetaPoly,
    pub poly: BetaPoly,
}

/// For O-dominant `z` the ideal is generated by the coordinates on `D^O(z)`; its class is
/// `∏ (1 − a_i a_j)`, sent to a polynomial by `a_i ↦ 1 + βx_i` and division by `(−β)^{|D^O(z)|}`.
pub fn o_hilbert_monomial(z: &Involution) -> Result<HilbertClass> {
    if o_dominant_shape(z).is_none() {
        return Err(Error::Uncomputable(format!(
            "{z} is not O-dominant; its ideal is not a coordinate ideal and a Gröbner basis would be needed"
        )));
    }
    let (_, o, _) = diagrams(z);
    let n = z.size();
    let mut class = BetaPoly::one(n);
    for (i, j) in o.pairs() {
        class = class.mul(&BetaPoly::one(n).sub(&BetaPoly::var(i).mul(&BetaPoly::var(j))));
    }
    let mut p = class.clone();
    for i in 1..=n {
        p = p.substitute(i, &BetaPoly::one(n).add(&BetaPoly::var(i).shift_beta(1)));
    }
    let cells = o.len() as i32;
    let sign = if cells % 2 == 0 { 1 } else { -1 };
    let poly = p.shift_beta(-cells).scale_rat(&rat(sign)).with_nvars(n);
    check_beta_nonnegative(&poly)?;
    Ok(HilbertClass {
        class: class.with_nvars(n),
        poly,
    })
}

/// Data for the Pfaffian formula of a vexillary involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfaffianPlan {
    pub shape: Vec<usize>,
    /// Smallest even integer `≥ ℓ(shape)`.
    pub r: usize,
    pub s_set: BTreeSet<usize>,
    /// Essential cell `(p, q)` assigned to each row `i ≤ ℓ(shape)`.
    pub cells: Vec<(usize, usize)>,
    /// Whether row `r` is the padding row with `c^{(r)} = 1`.
    pub padded: bool,
    /// `c^{(1)}, …, c^{(r)}`.
    pub series: Vec<CSeries>,
}

impl PfaffianPlan {
    pub fn new(z: &Involution) -> Result<PfaffianPlan> {
        if !classify(z)?.vexillary {
            return invalid(format!("{z} is not vexillary"));
        }
        let (_, shape) = o_code_and_shape(z);
        let len = shape.len();
        let r = len + len % 2;
        let s = s_set(z);
        let (_, o, _) = diagrams(z);
        let ess = essential_set(&o).pairs();
        if s.len() != ess.len() {
            return internal(format!(
                "|S({z})| = {} but there are {} essential cells",
                s.len(),
                ess.len()
            ));
        }
        let mut corner = BTreeSet::from([len]);
        corner.extend((1..len).filter(|&i| shape[i - 1] > shape[i] + 1));
        if len > 0 && !corner.is_subset(&s) {
            return internal(format!("S({z}) = {s:?} misses {corner:?}"));
        }
        let mut by_value: HashMap<usize, (usize, usize)> = HashMap::new();
        for &(p, q) in &ess {
            let v = q - nw_rank(z.perm(), p, q)?;
            if by_value.insert(v, (p, q)).is_some() {
                return internal(format!("two essential cells of {z} share q − rank = {v}"));
            }
        }
        let mut cells = Vec::with_capacity(len);
        for i in 1..=len {
            let Some(&v) = s.range(i..).next() else {
                return internal(format!("no s ∈ S({z}) with s ≥ {i}"));
            };
            cells.push(by_value[&v]);
        }
        let mut series: Vec<CSeries> = cells.iter().map(|&(p, q)| CSeries::flagged(p, q)).collect();
        let padded = r > len;
        if padded {
            series.push(CSeries::trivial());
        }
        Ok(PfaffianPlan {
            shape,
            r,
            s_set: s,
            cells,
            padded,
            series,
        })
    }

    pub fn weight(&self) -> i64 {
        self.shape.iter().sum::<usize>() as i64
    }

    /// `λ_i` (1-based), 0 past the end.
    fn part(&self, i: usize) -> usize {
        self.shape.get(i - 1).copied().unwrap_or(0)
    }

    /// Exponent `r − i − λ_i` of `(1 − βT^{(i)})`.
    pub fn exponent(&self, i: usize) -> i32 {
        self.r as i32 - i as i32 - self.part(i) as i32
    }

    /// Entry `(i, j)` with every series truncated at total subscript `cap`.
    pub fn entry_operator(&self, i: usize, j: usize, cap: u32) -> Result<RaisingExpr> {
        let mut e = RaisingExpr::monomial(&[(i, self.part(i) as u32), (j, self.part(j) as u32)])?;
        e = apply_one_minus_beta_t(&e, j, self.exponent(j), Some(cap))?;
        e = apply_one_minus_beta_t(&e, i, self.exponent(i), Some(cap))?;
        Ok(apply_r(&e, i, j, cap))
    }

    /// `Φ` of entry `(i, j)` in variables `D_1 = D_i`, `D_2 = D_j`. Nonnegative exponents are
    /// first expanded into finite sums of shifted subscripts.
    pub fn entry_dexpr(&self, i: usize, j: usize) -> DExpr {
        let expand = |k: usize| -> Vec<(i64, BetaScalar, u32)> {
            let e = self.exponent(k);
            let a = self.part(k) as i64;
            if e < 0 {
                return vec![(a, BetaScalar::one(), (-e) as u32)];
            }
            (0..=e as i64)
                .map(|s| {
                    let sign = if s % 2 == 0 { 1 } else { -1 };
                    let c = crate::poly::Rat::from_integer(binom(e as i64, s) * sign);
                    (a + s, BetaScalar::monomial(c, s as i32), 0)
                })
                .collect()
        };
        let mut out = DExpr::zero(2);
        for (a, ca, r) in expand(i) {
            for (b, cb, s) in expand(j) {
                out = out.add(&phi_entry(r, s, a, b).scale(&ca.mul(&cb)));
            }
        }
        out
    }

    /// E1 with per-variable caps: `den_cap` on variables that occur in a denominator and
    /// an optional total-degree cap. The result is the exact truncation.
    pub fn evaluate_e1(&self, den_cap: u32, total: Option<u32>) -> Result<BetaPoly> {
        let refs: Vec<&CSeries> = self.series.iter().collect();
        let layout = layout_for(&refs, den_cap, total);
        let cap = layout.total();
        let mut tables: HashMap<&CSeries, Arc<Vec<Dense>>> = HashMap::new();
        for s in &self.series {
            if !tables.contains_key(s) {
                tables.insert(s, Arc::new(s.dense_coefficients(&layout, cap)?));
            }
        }
        let lookup = |s: usize, d: u32| tables[&self.series[s - 1]].get(d as usize).cloned();
        let pairs: Vec<(usize, usize)> = (1..=self.r)
            .flat_map(|i| (i + 1..=self.r).map(move |j| (i, j)))
            .collect();
        let entries: Vec<Dense> = pairs
            .par_iter()
            .map(|&(i, j)| self.entry_e1(i, j, cap, &layout, &lookup))
            .collect::<Result<_>>()?;
        let mut it = entries.into_iter();
        let m = SkewMatrix::from_fn(self.r, |_, _| it.next().expect("one entry per pair"));
        let pf = pfaffian(&m)?;
        let pf = if self.r == 0 {
            Dense::one_in(&layout)
        } else {
            pf
        };
        let p = pf.to_poly(self.weight())?;
        Ok(p.with_nvars(layout.nvars()))
    }

    fn entry_e1(
        &self,
        i: usize,
        j: usize,
        cap: u32,
        layout: &Arc<Layout>,
        lookup: &(dyn Fn(usize, u32) -> Option<Dense> + Sync),
    ) -> Result<Dense> {
        let e = self.entry_operator(i, j, cap)?;
        let parts = homogeneous_parts(&e);
        let mut acc = Dense::zero_in(layout);
        for (w, lcm, terms) in parts {
            if w != (self.part(i) + self.part(j)) as i64 || lcm != 1.into() {
                return internal(format!(
                    "entry ({i},{j}) is not integral of weight λ_i + λ_j"
                ));
            }
            acc = acc.add(&evaluate_dense(&terms, lookup, layout)?);
        }
        Ok(acc)
    }

    /// E1 with the doubling protocol on the denominator-variable cap.
    pub fn stabilized_e1(&self) -> Result<BetaPoly> {
        let mut b = self.shape.first().copied().unwrap_or(0) as u32 + 1;
        let capped: Vec<usize> = {
            let mut v: Vec<usize> = self
                .series
                .iter()
                .flat_map(|s| s.denominator_vars().to_vec())
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let mut low = self.evaluate_e1(b, None)?;
        while 2 * b <= MAX_BOX {
            let high = self.evaluate_e1(2 * b, None)?;
            let inside = high
                .terms()
                .all(|(m, _)| capped.iter().all(|&v| m.exp(v) <= b));
            if inside && high == low {
                return Ok(high);
            }
            b *= 2;
            low = high;
        }
        Err(Error::Uncomputable(format!(
            "E1 did not stabilize below a per-variable cap of {MAX_BOX}"
        )))
    }

    /// E2: exact `Φ^{-1}` of each entry in the localized ring, then the Pfaffian there.
    pub fn evaluate_e2(&self) -> Result<BetaPoly> {
        let pairs: Vec<(usize, usize)> = (1..=self.r)
            .flat_map(|i| (i + 1..=self.r).map(move |j| (i, j)))
            .collect();
        let entries: Vec<Frac> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let g = self.entry_dexpr(i, j);
                phi_inverse_frac(
                    &g,
                    &[self.series[i - 1].clone(), self.series[j - 1].clone()],
                )
            })
            .collect::<Result<_>>()?;
        let mut it = entries.into_iter();
        let m = SkewMatrix::from_fn(self.r, |_, _| it.next().expect("one entry per pair"));
        let p = pfaffian(&m)?.to_poly()?;
        check_beta_nonnegative(&p)?;
        Ok(p)
    }
}

/// `𝔊^O_z` by the Pfaffian formula. With `maxdeg` the result is the truncation to that degree.
pub fn o_vexillary(z: &Involution, engine: OEngine, maxdeg: Option<u32>) -> Result<BetaPoly> {
    let c = classify(z)?;
    if !c.vexillary {
        let hint = if c.o_dominant {
            "use the dominant route"
        } else {
            "no formula in scope for this involution"
        };
        return Err(Error::Uncomputable(format!("{z} is not vexillary; {hint}")));
    }
    let plan = PfaffianPlan::new(z)?;
    let p = match (engine, maxdeg) {
        (OEngine::E1, Some(d)) => plan.evaluate_e1(d, Some(d))?,
        (OEngine::E1, None) => plan.stabilized_e1()?,
        (OEngine::E2, d) => {
            let p = plan.evaluate_e2()?;
            d.map_or(p.clone(), |d| p.truncate(d))
        }
    };
    Ok(p.with_nvars(z.size()))
}

/// `𝔊^O_z` by the requested route. `Auto` uses the product formula for dominant `z`, the
/// Pfaffian for vexillary `z`, and reports anything else as uncomputable.
pub fn o_groth(
    z: &Involution,
    route: ORoute,
    engine: OEngine,
    maxdeg: Option<u32>,
) -> Result<BetaPoly> {
    let cut = |p: BetaPoly| maxdeg.map_or(p.clone(), |d| p.truncate(d));
    match route {
        ORoute::Dominant => o_dominant(z).map(cut),
        ORoute::Hilbert => o_hilbert_monomial(z).map(|h| cut(h.poly)),
        ORoute::Vexillary => o_vexillary(z, engine, maxdeg),
        ORoute::Auto => {
            let c = classify(z)?;
            if c.o_dominant {
                o_dominant(z).map(cut)
            } else if c.vexillary {
                o_vexillary(z, engine, maxdeg)
            } else {
                Err(Error::Uncomputable(format!(
                    "{z} is neither O-dominant nor vexillary; computing it would need the Hilbert series of a general ideal"
                )))
            }
        }
    }
}

/// `𝔊^O_{z × 1^m} = 𝔊^O_z`.
pub fn o_stability_check(z: &Involution, m: usize) -> Result<bool> {
    let g = o_groth(z, ORoute::Auto, OEngine::E1, None)?;
    let h = o_groth(&z.one_pad(m), ORoute::Auto, OEngine::E1, None)?;
    Ok(g == h)
}

/// `∂_i^{(β)} 𝔊^O_z = 𝔊^O_{s_i z s_i}` when `z(i) > z(i+1)`, `z ≠ s_i z s_i` and both are vexillary;
/// `None` when the pair is not admissible.
pub fn o_vex_divided_difference_check(z: &Involution, i: usize) -> Result<Option<bool>> {
    if i == 0 || i >= z.size() || z.at(i) < z.at(i + 1) || z.at(i) == i + 1 {
        return Ok(None);
    }
    let y = z.conj_s(i);
    if y == *z || !classify(z)?.vexillary || !classify(&y)?.vexillary {
        return Ok(None);
    }
    let gz = o_vexillary(z, OEngine::E1, None)?;
    let gy = o_vexillary(&y, OEngine::E1, None)?;
    Ok(Some(beta_divided_difference(&gz, i)? == gy))
}
