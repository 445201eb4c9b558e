use super::diagram::{diagrams, essential_set, o_dominant_shape, sp_dominant_shape};
use super::{Involution, Permutation};
use crate::error::{internal, Result};

/// `z = (φ_1, n+1)(φ_2, n+2)⋯(φ_r, n+r)` with `φ_1 < ⋯ < φ_r ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IGrassmannian {
    pub n: usize,
    pub phis: Vec<usize>,
}

impl IGrassmannian {
    /// The strict partition `(n+1−φ_1, n+1−φ_2, …)`.
    pub fn shape(&self) -> Vec<usize> {
        self.phis.iter().map(|&p| self.n + 1 - p).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub vexillary: bool,
    pub o_dominant: bool,
    pub sp_dominant: bool,
    pub i_grassmannian: Option<IGrassmannian>,
}

/// Pattern test: no `i<j<k<l` with `w(j) < w(i) < w(l) < w(k)`.
pub fn is_vexillary_pattern(w: &Permutation) -> bool {
    let n = w.size();
    for i in 1..=n {
        for j in i + 1..=n {
            if w.at(j) >= w.at(i) {
                continue;
            }
            for k in j + 1..=n {
                if w.at(k) <= w.at(i) {
                    continue;
                }
                for l in k + 1..=n {
                    if w.at(i) < w.at(l) && w.at(l) < w.at(k) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `Ess(D^O(z))` is totally ordered by `(a,b) ⪯ (i,j) ⇔ i ≤ a, b ≤ j`.
pub fn is_vexillary_chain(z: &Involution) -> bool {
    let (_, o, _) = diagrams(z);
    let ess: Vec<_> = essential_set(&o).cells.into_iter().collect();
    for (x, a) in ess.iter().enumerate() {
        for b in &ess[x + 1..] {
            let ab = b.row <= a.row && a.col <= b.col;
            let ba = a.row <= b.row && b.col <= a.col;
            if !ab && !ba {
                return false;
            }
        }
    }
    true
}

fn i_grassmannian(z: &Involution) -> Option<IGrassmannian> {
    let mut cycles = z.cycles();
    if cycles.is_empty() {
        return Some(IGrassmannian { n: 0, phis: vec![] });
    }
    cycles.sort_by_key(|&(_, b)| b);
    let n = cycles[0].1 - 1;
    for (t, &(a, b)) in cycles.iter().enumerate() {
        if b != n + 1 + t || a > n {
            return None;
        }
        if t > 0 && cycles[t - 1].0 >= a {
            return None;
        }
    }
    Some(IGrassmannian {
        n,
        phis: cycles.iter().map(|&(a, _)| a).collect(),
    })
}

pub fn classify(z: &Involution) -> Result<Classification> {
    let pattern = is_vexillary_pattern(z.perm());
    let chain = is_vexillary_chain(z);
    if pattern != chain {
        return internal(format!(
            "vexillary tests disagree on {z}: pattern={pattern}, chain={chain}"
        ));
    }
    Ok(Classification {
        vexillary: pattern,
        o_dominant: o_dominant_shape(z).is_some(),
        sp_dominant: sp_dominant_shape(z).is_some(),
        i_grassmannian: i_grassmannian(z),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(s: &str) -> Involution {
        Involution::parse(s).unwrap()
    }

    #[test]
    fn examples() {
        assert!(!classify(&z("2143")).unwrap().vexillary);
        assert!(classify(&z("4571263")).unwrap().vexillary);
        assert!(classify(&z("321")).unwrap().o_dominant);
        assert!(classify(&z("4321")).unwrap().sp_dominant);
    }

    #[test]
    fn vexillary_tests_agree_up_to_seven() {
        for n in 1..=7 {
            for zz in Involution::all(n) {
                classify(&zz).unwrap();
            }
        }
    }

    #[test]
    fn dominant_means_132_avoiding() {
        for n in 1..=6 {
            for zz in Involution::all(n) {
                let w = zz.perm();
                let avoids = !(1..=n).any(|i| {
                    (i + 1..=n).any(|j| (j + 1..=n).any(|k| w.at(i) < w.at(k) && w.at(k) < w.at(j)))
                });
                assert_eq!(classify(&zz).unwrap().o_dominant, avoids, "{zz}");
            }
        }
    }

    #[test]
    fn grassmannian() {
        let g = classify(&z("4571263")).unwrap().i_grassmannian;
        assert_eq!(g, None);
        let g = classify(
            &Involution::new(super::super::parse_cycles("(1,4)(3,5)", None).unwrap()).unwrap(),
        )
        .unwrap()
        .i_grassmannian
        .unwrap();
        assert_eq!(
            g,
            IGrassmannian {
                n: 3,
                phis: vec![1, 3]
            }
        );
        assert_eq!(g.shape(), vec![3, 1]);
    }
}
