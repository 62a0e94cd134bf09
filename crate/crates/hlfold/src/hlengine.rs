//! L_{λ,μ}(q) as a sum over positively folded galleries of products of
//! junction factors, and the character counted by LS-galleries.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use rayon::prelude::*;

use crate::error::Result;
use crate::folding::{check_dominant, enumerate_pf, enumerate_pf_all, is_ls_unchecked};
use crate::gallery::Gallery;
use crate::poly::QPoly;
use crate::apartment::local_root_system;
use crate::residue::{
    closest_chamber_word, enumerate_gamma_plus_op, enumerate_gamma_plus_op_with_word, junction_input, valid_sectors, Step,
};
use crate::rootdata::{RootSystem, RootVec};

/// Multiplicities of coweights; only nonzero entries are stored.
pub type FormalCharacter = BTreeMap<RootVec, u64>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineOptions {
    /// Count crossings toward the sector instead of away from it. Used only
    /// to check that verification notices a wrong statistic.
    pub flip_crossing_sign: bool,
    /// Use the last valid sector and the last reduced word of w_D instead
    /// of the first ones.
    pub alternate_choices: bool,
}

/// Evaluates gallery weights, caching junction factors.
pub struct Engine<'a> {
    rs: &'a RootSystem,
    opts: EngineOptions,
    cache: Mutex<HashMap<(RootVec, RootVec, RootVec), QPoly>>,
}

impl<'a> Engine<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        Self::with_options(rs, EngineOptions::default())
    }

    pub fn with_options(rs: &'a RootSystem, opts: EngineOptions) -> Self {
        Engine { rs, opts, cache: Mutex::new(HashMap::new()) }
    }

    fn junction(&self, g: &Gallery, j: usize) -> Result<QPoly> {
        let mut inp = junction_input(self.rs, g, j)?;
        let key = (inp.vertex.clone(), inp.d_in.clone(), inp.d_out.clone());
        if let Some(f) = self.cache.lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let cgs = if self.opts.alternate_choices {
            let sectors = valid_sectors(self.rs, &inp.vertex, &inp.d_in, &inp.d_out);
            inp.sector = *sectors.last().expect("choose_sector found a sector");
            let (w, _) = closest_chamber_word(self.rs, &inp.vertex, &inp.d_out)?;
            let words = local_root_system(self.rs, &inp.vertex).all_reduced_words(self.rs, w);
            enumerate_gamma_plus_op_with_word(self.rs, &inp, words.last().expect("a reduced word"))
        } else {
            enumerate_gamma_plus_op(self.rs, &inp)?
        };
        let f: QPoly = cgs
            .iter()
            .map(|c| {
                let (mut t, r) = c.stats();
                if self.opts.flip_crossing_sign {
                    t = c.choices.iter().filter(|&&x| x == Step::Cross).count() - t;
                }
                &QPoly::monomial(1, t) * &QPoly::q_minus_one().pow(r)
            })
            .sum();
        self.cache.lock().unwrap().insert(key, f.clone());
        Ok(f)
    }

    /// q^{ℓ(w_{D₀})} Π_j U_j(q) for one positively folded gallery.
    pub fn gallery_weight(&self, g: &Gallery) -> Result<QPoly> {
        if g.num_edges() == 0 {
            return Ok(QPoly::one());
        }
        let (w0, _) = closest_chamber_word(self.rs, &g.vertices[0], &g.direction(0))?;
        let mut acc = QPoly::monomial(1, self.rs.length(w0));
        for j in 1..g.num_edges() {
            acc = &acc * &self.junction(g, j)?;
        }
        Ok(acc)
    }

    pub fn sum_weights(&self, galleries: &[Gallery]) -> Result<QPoly> {
        let parts: Result<Vec<QPoly>> = galleries.par_iter().map(|g| self.gallery_weight(g)).collect();
        Ok(parts?.into_iter().sum())
    }

    pub fn l_polynomial(&self, lambda: &[i64], mu: &[i64]) -> Result<QPoly> {
        let gs = enumerate_pf(self.rs, lambda, mu)?;
        self.sum_weights(&gs)
    }

    /// L_{λ,μ} for every dominant μ with a positively folded gallery.
    pub fn l_all(&self, lambda: &[i64]) -> Result<BTreeMap<Vec<i64>, QPoly>> {
        let gs: Vec<Gallery> = enumerate_pf_all(self.rs, lambda)?
            .into_iter()
            .filter(|g| self.rs.is_dominant(g.target()))
            .collect();
        let weights: Result<Vec<QPoly>> = gs.par_iter().map(|g| self.gallery_weight(g)).collect();
        let mut out: BTreeMap<Vec<i64>, QPoly> = BTreeMap::new();
        for (g, w) in gs.iter().zip(weights?) {
            *out.entry(dominant_coeffs(self.rs, g.target())).or_default() += &w;
        }
        out.retain(|_, p| !p.is_zero());
        Ok(out)
    }
}

/// Coordinates of a dominant coweight in the fundamental basis.
pub fn dominant_coeffs(rs: &RootSystem, v: &RootVec) -> Vec<i64> {
    rs.fundamental_coords(v)
        .iter()
        .map(|c| {
            assert!(c.is_integer(), "coweight outside the coweight lattice");
            c.to_integer()
        })
        .collect()
}

pub fn l_polynomial(rs: &RootSystem, lambda: &[i64], mu: &[i64]) -> Result<QPoly> {
    Engine::new(rs).l_polynomial(lambda, mu)
}

/// Σ e^{target} over LS-galleries of type γ_λ.
pub fn character_ls(rs: &RootSystem, lambda: &[i64]) -> Result<FormalCharacter> {
    check_dominant(rs, lambda)?;
    let mut out = FormalCharacter::new();
    for g in enumerate_pf_all(rs, lambda)? {
        if is_ls_unchecked(rs, &g) {
            *out.entry(g.target().clone()).or_default() += 1;
        }
    }
    Ok(out)
}

pub fn character_to_json(ch: &FormalCharacter) -> serde_json::Value {
    serde_json::Value::Array(
        ch.iter()
            .map(|(w, m)| serde_json::json!({ "weight": w.to_strings(), "mult": m }))
            .collect(),
    )
}

pub fn leading_data(p: &QPoly) -> Result<(usize, i64)> {
    p.leading_data()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn a2_worked_example() {
        let r = rs("A2");
        assert_eq!(l_polynomial(&r, &[2, 1], &[2, 1]).unwrap().to_string(), "q^6");
        assert_eq!(l_polynomial(&r, &[2, 1], &[0, 2]).unwrap().to_string(), "q^5 - q^4");
        let p = l_polynomial(&r, &[2, 1], &[1, 0]).unwrap();
        assert_eq!(p.to_string(), "2q^4 - 2q^3");
        assert_eq!(leading_data(&p).unwrap(), (4, 2));
    }

    #[test]
    fn trivial_weight() {
        let r = rs("B2");
        assert_eq!(l_polynomial(&r, &[0, 0], &[0, 0]).unwrap(), QPoly::one());
        let ch = character_ls(&r, &[0, 0]).unwrap();
        assert_eq!(ch.len(), 1);
        assert_eq!(ch[&RootVec::zero(2)], 1);
    }

    #[test]
    fn non_dominant_rejected() {
        let r = rs("A2");
        assert!(l_polynomial(&r, &[1, -1], &[0, 0]).is_err());
        assert!(l_polynomial(&r, &[1, 0], &[-1, 0]).is_err());
        assert!(l_polynomial(&r, &[1], &[0, 0]).is_err());
    }

    #[test]
    fn wrong_coset_is_zero() {
        let r = rs("A2");
        assert!(l_polynomial(&r, &[1, 0], &[0, 1]).unwrap().is_zero());
    }

    #[test]
    fn character_of_minuscule() {
        let r = rs("A2");
        let ch = character_ls(&r, &[1, 0]).unwrap();
        assert_eq!(ch.len(), 3);
        assert!(ch.values().all(|&m| m == 1));
        let ch = character_ls(&r, &[2, 1]).unwrap();
        assert_eq!(ch.values().sum::<u64>(), 15);
    }

    #[test]
    fn l_all_matches_single() {
        let r = rs("C2");
        let e = Engine::new(&r);
        for (mu, p) in e.l_all(&[1, 1]).unwrap() {
            assert_eq!(p, l_polynomial(&r, &[1, 1], &mu).unwrap());
            assert_eq!(p.eval(1), i64::from(mu == vec![1, 1]));
        }
    }

    #[test]
    fn fault_injection_changes_result() {
        let r = rs("A2");
        let e = Engine::with_options(&r, EngineOptions { flip_crossing_sign: true, ..Default::default() });
        assert_ne!(e.l_polynomial(&[2, 1], &[1, 0]).unwrap().to_string(), "2q^4 - 2q^3");
    }

    #[test]
    fn alternate_choices_agree() {
        for s in ["A2", "B2", "C2"] {
            let r = rs(s);
            let alt = Engine::with_options(&r, EngineOptions { alternate_choices: true, ..Default::default() });
            for l in r.dominant_coeffs_up_to(2) {
                assert_eq!(alt.l_all(&l).unwrap(), Engine::new(&r).l_all(&l).unwrap());
            }
        }
    }
}
