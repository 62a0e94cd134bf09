//! Local chamber galleries at a junction: fold/cross words over a reduced
//! word of W_V, their positivity with respect to a sector, and the
//! statistics t and r feeding the junction factors.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::apartment::{local_root_system, LocalRootSystem};
use crate::error::{Error, Result};
use crate::folding::{junction_dirs, minimal_pair, two_step_pf_dirs};
use crate::gallery::Gallery;
use crate::poly::QPoly;
use crate::rootdata::{RootSystem, RootVec, WId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    Cross,
    Fold,
}

/// A gallery of local chambers C₀ = Δ₀, …, C_r at a vertex, of the type
/// given by `word`, where Δ₀ is the germ of V + C⁻.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberGallery {
    pub vertex: RootVec,
    /// Chamber class of the reference sector at the vertex.
    pub sector_class: WId,
    /// Letters index the local simple roots.
    pub word: Vec<usize>,
    pub choices: Vec<Step>,
    /// C_k = chambers[k](Δ₀), k = 0..=r.
    pub chambers: Vec<WId>,
    /// Root of the wall met at step k, positive away from C_{k−1}.
    pub wall_roots: Vec<RootVec>,
    /// Whether the sector lies beyond the wall met at step k.
    pub sector_beyond: Vec<bool>,
}

impl ChamberGallery {
    /// (t, r): crossings away from the sector, and folds.
    pub fn stats(&self) -> (usize, usize) {
        let mut t = 0;
        let mut r = 0;
        for (c, &beyond) in self.choices.iter().zip(&self.sector_beyond) {
            match c {
                Step::Fold => r += 1,
                Step::Cross if !beyond => t += 1,
                Step::Cross => {}
            }
        }
        (t, r)
    }

    /// Every fold happens at a wall separating the sector from the chamber.
    pub fn is_positively_folded(&self) -> bool {
        self.choices
            .iter()
            .zip(&self.sector_beyond)
            .all(|(c, &b)| *c == Step::Cross || b)
    }

    pub fn weight(&self) -> QPoly {
        let (t, r) = self.stats();
        &QPoly::monomial(1, t) * &QPoly::q_minus_one().pow(r)
    }
}

/// Data at junction V_j of a gallery: incoming germ (pointing back to
/// V_{j−1}), outgoing germ, and the chamber class of the sector 𝔰ʲ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JunctionFactorInput {
    pub vertex: RootVec,
    pub d_in: RootVec,
    pub d_out: RootVec,
    pub sector: WId,
}

/// w_D, the shortest u ∈ W_V with `d` in the closure of u(Δ₀), with its
/// lexicographically least reduced word.
pub fn closest_chamber_word(rs: &RootSystem, v: &RootVec, d: &RootVec) -> Result<(WId, Vec<usize>)> {
    if d.is_zero() {
        return Err(Error::ZeroVector);
    }
    if d.dim() != rs.dim() {
        return Err(Error::Dimension(d.dim(), rs.dim()));
    }
    let local = local_root_system(rs, v);
    let w = local
        .elements
        .iter()
        .copied()
        .filter(|&u| local.closure_contains(rs, u, d))
        .min_by_key(|&u| (local.length(u), u))
        .ok_or_else(|| Error::Invalid(format!("{d} is not a face germ at {v}")))?;
    Ok((w, local.reduced_word(rs, w)))
}

/// The member of W_V·d in the closure of Δ₀.
fn base_face(rs: &RootSystem, local: &LocalRootSystem, d: &RootVec) -> RootVec {
    local
        .orbit(rs, d)
        .into_iter()
        .find(|f| local.closure_contains(rs, rs.identity(), f))
        .expect("every orbit meets the base chamber")
}

/// Γ⁺(i, op) for the lexicographically least reduced word of w_D.
pub fn enumerate_gamma_plus_op(rs: &RootSystem, inp: &JunctionFactorInput) -> Result<Vec<ChamberGallery>> {
    let (_, word) = closest_chamber_word(rs, &inp.vertex, &inp.d_out)?;
    Ok(enumerate_gamma_plus_op_with_word(rs, inp, &word))
}

/// Positively folded chamber galleries of type `word` from Δ₀ whose final
/// face of the outgoing type forms a minimal pair with the incoming germ.
pub fn enumerate_gamma_plus_op_with_word(
    rs: &RootSystem,
    inp: &JunctionFactorInput,
    word: &[usize],
) -> Vec<ChamberGallery> {
    let local = local_root_system(rs, &inp.vertex);
    let d0 = base_face(rs, &local, &inp.d_out);
    let p = rs.act(inp.sector, &rs.generic);
    let mut out = Vec::new();

    let mut choices: Vec<Step> = Vec::new();
    let mut chambers = vec![rs.identity()];
    let mut walls: Vec<RootVec> = Vec::new();
    let mut beyond: Vec<bool> = Vec::new();
    // explicit DFS; each frame tries Cross then Fold
    let mut next_try: Vec<u8> = vec![0];
    while let Some(tried) = next_try.last_mut() {
        let k = choices.len();
        if k == word.len() {
            let face = rs.act(*chambers.last().unwrap(), &d0);
            if minimal_pair(rs, &inp.d_in, &face) {
                out.push(ChamberGallery {
                    vertex: inp.vertex.clone(),
                    sector_class: inp.sector,
                    word: word.to_vec(),
                    choices: choices.clone(),
                    chambers: chambers.clone(),
                    wall_roots: walls.clone(),
                    sector_beyond: beyond.clone(),
                });
            }
            next_try.pop();
            pop_step(&mut choices, &mut chambers, &mut walls, &mut beyond);
            continue;
        }
        let g = *chambers.last().unwrap();
        let simple = local.simple[word[k]];
        let beta = rs.act(g, &rs.roots[simple]);
        let sector_side = beta.dot(&p).is_positive();
        let step = match *tried {
            0 => Step::Cross,
            1 if sector_side => Step::Fold,
            _ => {
                next_try.pop();
                pop_step(&mut choices, &mut chambers, &mut walls, &mut beyond);
                continue;
            }
        };
        *tried += 1;
        let next = match step {
            Step::Cross => rs.mul(g, rs.reflection(simple)),
            Step::Fold => g,
        };
        choices.push(step);
        chambers.push(next);
        walls.push(beta);
        beyond.push(sector_side);
        next_try.push(0);
    }
    out
}

fn pop_step(choices: &mut Vec<Step>, chambers: &mut Vec<WId>, walls: &mut Vec<RootVec>, beyond: &mut Vec<bool>) {
    if choices.pop().is_some() {
        chambers.pop();
        walls.pop();
        beyond.pop();
    }
}

/// Chamber classes w of sectors 𝔰 = V + w(C⁺) containing the incoming
/// edge and whose opposite contains a face of the outgoing type.
pub fn valid_sectors(rs: &RootSystem, v: &RootVec, d_in: &RootVec, d_out: &RootVec) -> Vec<WId> {
    let local = local_root_system(rs, v);
    let mut acc = crate::rootdata::WSet::empty(rs.order());
    for f in local.orbit(rs, d_out) {
        acc.union_with(&rs.class_set(&-&f));
    }
    acc.intersection(&rs.class_set(d_in)).iter().collect()
}

/// The valid sector class of least length, ties by least reduced word.
/// Fails unless the junction is positively folded.
pub fn choose_sector(rs: &RootSystem, v: &RootVec, d_in: &RootVec, d_out: &RootVec) -> Result<WId> {
    if !two_step_pf_dirs(rs, v, d_in, d_out) {
        return Err(Error::Invalid(format!("junction at {v} is not positively folded")));
    }
    valid_sectors(rs, v, d_in, d_out)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Invalid(format!("no valid sector at {v}: junction is not positively folded")))
}

/// Junction data at V_j, 1 ≤ j < number of edges, with the chosen sector.
pub fn junction_input(rs: &RootSystem, g: &Gallery, j: usize) -> Result<JunctionFactorInput> {
    let (d_in, d_out) = junction_dirs(g, j);
    let v = g.vertices[j].clone();
    let sector = choose_sector(rs, &v, &d_in, &d_out)?;
    Ok(JunctionFactorInput { vertex: v, d_in, d_out, sector })
}

/// Σ_c q^t (q−1)^r over Γ⁺(i, op).
pub fn junction_factor(rs: &RootSystem, inp: &JunctionFactorInput) -> Result<QPoly> {
    Ok(enumerate_gamma_plus_op(rs, inp)?.iter().map(ChamberGallery::weight).sum())
}

pub fn junction_factor_with_word(rs: &RootSystem, inp: &JunctionFactorInput, word: &[usize]) -> QPoly {
    enumerate_gamma_plus_op_with_word(rs, inp, word)
        .iter()
        .map(ChamberGallery::weight)
        .sum()
}

/// The junction factor for every (reduced word of w_D, valid sector) pair.
pub fn junction_factor_variants(rs: &RootSystem, inp: &JunctionFactorInput) -> Result<Vec<(Vec<usize>, WId, QPoly)>> {
    let (w, _) = closest_chamber_word(rs, &inp.vertex, &inp.d_out)?;
    let local = local_root_system(rs, &inp.vertex);
    let mut out = Vec::new();
    for s in valid_sectors(rs, &inp.vertex, &inp.d_in, &inp.d_out) {
        let alt = JunctionFactorInput { sector: s, ..inp.clone() };
        for word in local.all_reduced_words(rs, w) {
            let f = junction_factor_with_word(rs, &alt, &word);
            out.push((word, s, f));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folding::{enumerate_pf, enumerate_pf_all};
    use crate::gallery::{enumerate_of_type, GalleryType};

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn closest_chamber_basics() {
        let r = rs("A2");
        let o = RootVec::zero(3);
        let (w, word) = closest_chamber_word(&r, &o, &r.omegas[0]).unwrap();
        assert_eq!(r.length(w), 2);
        assert_eq!(word.len(), 2);
        let anti = r.act(r.w0, &r.omegas[1]);
        let (w, word) = closest_chamber_word(&r, &o, &anti).unwrap();
        assert_eq!(w, r.identity());
        assert!(word.is_empty());
        assert!(closest_chamber_word(&r, &o, &RootVec::zero(3)).is_err());
        // exhaustive minimization over W
        for d in r.orbit(&r.omegas[0]) {
            let (w, _) = closest_chamber_word(&r, &o, &d).unwrap();
            let best = (0..r.order())
                .filter(|&u| r.is_dominant(&r.act(r.inv(u), &-&d)))
                .map(|u| r.length(u))
                .min()
                .unwrap();
            assert_eq!(r.length(w), best);
        }
    }

    #[test]
    fn a2_example_junctions() {
        let r = rs("A2");
        let gs = enumerate_pf(&r, &[2, 1], &[0, 2]).unwrap();
        assert_eq!(gs.len(), 1);
        let g = &gs[0];
        let (w0, _) = closest_chamber_word(&r, &g.vertices[0], &g.direction(0)).unwrap();
        assert_eq!(r.length(w0), 1);
        let inp = junction_input(&r, g, 1).unwrap();
        let cg = enumerate_gamma_plus_op(&r, &inp).unwrap();
        assert_eq!(cg.len(), 1);
        assert_eq!(cg[0].stats(), (1, 1));
        assert_eq!(junction_factor(&r, &inp).unwrap().to_string(), "q^2 - q");
    }

    #[test]
    fn a2_omega1_first_edge() {
        let r = rs("A2");
        let gs = enumerate_pf(&r, &[2, 1], &[1, 0]).unwrap();
        let lens: Vec<usize> = gs
            .iter()
            .map(|g| r.length(closest_chamber_word(&r, &g.vertices[0], &g.direction(0)).unwrap().0))
            .collect();
        assert!(lens.contains(&1));
    }

    #[test]
    fn minimal_junction_contains_unfolded_word() {
        for s in ["A2", "B2", "C2", "A3"] {
            let r = rs(s);
            let c = vec![1; r.rank()];
            let t = GalleryType::of_lambda(&r, &c).unwrap();
            for g in enumerate_of_type(&r, &t) {
                for j in 1..g.num_edges() {
                    let (din, dout) = junction_dirs(&g, j);
                    if !minimal_pair(&r, &din, &dout) {
                        continue;
                    }
                    let inp = junction_input(&r, &g, j).unwrap();
                    let cg = enumerate_gamma_plus_op(&r, &inp).unwrap();
                    let unfolded: Vec<&ChamberGallery> =
                        cg.iter().filter(|c| c.choices.iter().all(|x| *x == Step::Cross)).collect();
                    assert_eq!(unfolded.len(), 1);
                    assert_eq!(unfolded[0].stats().1, 0);
                }
            }
        }
    }

    #[test]
    fn a2_minimal_junction_with_fold() {
        // both the unfolded and the folded word end in a face opposite E
        let r = rs("A2");
        let v = RootVec::from_ints(&[0, 0, 1]);
        let d_in = RootVec::from_ints(&[0, 0, -1]);
        let d_out = RootVec::from_ints(&[1, 0, 1]);
        let sector = choose_sector(&r, &v, &d_in, &d_out).unwrap();
        let inp = JunctionFactorInput { vertex: v, d_in, d_out, sector };
        let cg = enumerate_gamma_plus_op(&r, &inp).unwrap();
        let stats: Vec<(usize, usize)> = cg.iter().map(ChamberGallery::stats).collect();
        assert_eq!(stats, vec![(0, 0), (0, 1)]);
        assert_eq!(junction_factor(&r, &inp).unwrap().to_string(), "q");
    }

    #[test]
    fn bridge_and_bounds() {
        for s in ["A2", "B2", "C2"] {
            let r = rs(s);
            let c = vec![1; r.rank()];
            let t = GalleryType::of_lambda(&r, &c).unwrap();
            for g in enumerate_of_type(&r, &t) {
                for j in 1..g.num_edges() {
                    let (din, dout) = junction_dirs(&g, j);
                    let v = &g.vertices[j];
                    let pf = two_step_pf_dirs(&r, v, &din, &dout);
                    let sectors = valid_sectors(&r, v, &din, &dout);
                    assert!(!sectors.is_empty());
                    assert_eq!(choose_sector(&r, v, &din, &dout).is_ok(), pf);
                    for s in sectors {
                        let inp = JunctionFactorInput { vertex: v.clone(), d_in: din.clone(), d_out: dout.clone(), sector: s };
                        let (w, _) = closest_chamber_word(&r, v, &dout).unwrap();
                        let lw = local_root_system(&r, v).length(w);
                        let cg = enumerate_gamma_plus_op(&r, &inp).unwrap();
                        assert_eq!(!cg.is_empty(), pf);
                        for c in cg {
                            assert!(c.is_positively_folded());
                            let (t, rr) = c.stats();
                            assert!(t + rr <= lw);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn factor_independent_of_choices_rank2() {
        for s in ["A2", "B2", "C2"] {
            let r = rs(s);
            let c = vec![1; r.rank()];
            for g in enumerate_pf_all(&r, &c).unwrap() {
                for j in 1..g.num_edges() {
                    let inp = junction_input(&r, &g, j).unwrap();
                    let base = junction_factor(&r, &inp).unwrap();
                    for (_, _, f) in junction_factor_variants(&r, &inp).unwrap() {
                        assert_eq!(f, base);
                    }
                }
            }
        }
    }

    #[test]
    fn empty_word_stats() {
        let r = rs("A1");
        let v = RootVec::zero(2);
        let anti = r.act(r.w0, &r.omegas[0]);
        let inp = JunctionFactorInput { vertex: v, d_in: r.omegas[0].clone(), d_out: anti, sector: r.identity() };
        let cg = enumerate_gamma_plus_op(&r, &inp).unwrap();
        assert_eq!(cg.len(), 1);
        assert_eq!(cg[0].stats(), (0, 0));
    }
}
