//! Minimality, positive folding, defining chains, and LS-galleries.

use std::collections::{BTreeSet, VecDeque};

use num_traits::Signed;

use crate::apartment::{local_root_system, Edge};
use crate::error::{Error, Result};
use crate::gallery::{crossing_counts, walk, Gallery, GalleryType};
use crate::rootdata::{RootSystem, RootVec, WId, WSet};

/// ∃ w ∈ W with dE ∈ w(C̄⁺) and dF ∈ −w(C̄⁺).
pub fn is_minimal_pair(rs: &RootSystem, d_e: &RootVec, d_f: &RootVec) -> Result<bool> {
    if d_e.is_zero() || d_f.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(minimal_pair(rs, d_e, d_f))
}

pub(crate) fn minimal_pair(rs: &RootSystem, d_e: &RootVec, d_f: &RootVec) -> bool {
    // dF ∈ −w(C̄⁺) ⟺ −dF ∈ w(C̄⁺)
    rs.class_set(d_e).intersects(&rs.class_set(&-d_f))
}

/// Local positive folding at `v` of the two-step gallery whose incoming
/// germ points along `d_in` (from `v` back to the previous vertex) and
/// whose outgoing germ points along `d_out`.
pub fn two_step_pf_dirs(rs: &RootSystem, v: &RootVec, d_in: &RootVec, d_out: &RootVec) -> bool {
    let local = local_root_system(rs, v);
    let orbit = local.orbit(rs, d_out);
    let mut seen: BTreeSet<RootVec> = BTreeSet::new();
    let mut queue: VecDeque<RootVec> = VecDeque::new();
    for f in orbit.into_iter().filter(|f| minimal_pair(rs, d_in, f)) {
        seen.insert(f.clone());
        queue.push_back(f);
    }
    while let Some(d) = queue.pop_front() {
        if &d == d_out {
            return true;
        }
        for &k in &local.positive {
            let beta = &rs.roots[k];
            if beta.dot(&d).is_negative() {
                let n = rs.act(rs.reflection(k), &d);
                if seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
    }
    false
}

/// Two-step gallery (E ⊃ V ⊂ F) is positively folded.
pub fn two_step_positively_folded(rs: &RootSystem, e: &Edge, v: &RootVec, f: &Edge) -> Result<bool> {
    if &e.end != v || &f.start != v {
        return Err(Error::Invalid("edges do not meet at the vertex".into()));
    }
    Ok(two_step_pf_dirs(rs, v, &(&e.start - v), &f.direction()))
}

/// Incoming and outgoing germ directions at junction `j` (1 ≤ j ≤ r).
pub fn junction_dirs(g: &Gallery, j: usize) -> (RootVec, RootVec) {
    (-&g.direction(j - 1), g.direction(j))
}

pub fn is_locally_positively_folded(rs: &RootSystem, g: &Gallery) -> bool {
    (1..g.num_edges()).all(|j| {
        let (din, dout) = junction_dirs(g, j);
        two_step_pf_dirs(rs, &g.vertices[j], &din, &dout)
    })
}

fn pick_maximal(rs: &RootSystem, cands: impl Iterator<Item = WId>) -> Option<WId> {
    // elements are indexed by (length, lex word); longest first, then least word
    cands.min_by_key(|&w| (std::cmp::Reverse(rs.length(w)), w))
}

/// A Bruhat-decreasing chain τ_0 ≥ … ≥ τ_r with direction(E_i) ∈ τ_i(C̄⁺).
pub fn defining_chain(rs: &RootSystem, g: &Gallery) -> Option<Vec<WId>> {
    let dirs = g.directions();
    if dirs.is_empty() {
        return Some(vec![]);
    }
    let mut reach: Vec<WSet> = Vec::with_capacity(dirs.len());
    reach.push((*rs.class_set(&dirs[0])).clone());
    for d in &dirs[1..] {
        let mut down = WSet::empty(rs.order());
        for t in reach.last().unwrap().iter() {
            down.union_with(rs.bruhat_below(t));
        }
        let r = down.intersection(&rs.class_set(d));
        if r.is_empty() {
            return None;
        }
        reach.push(r);
    }
    let mut chain = vec![pick_maximal(rs, reach.last().unwrap().iter())?];
    for r in reach.iter().rev().skip(1) {
        let below = *chain.last().unwrap();
        let t = pick_maximal(rs, r.iter().filter(|&t| rs.bruhat_leq(below, t)))?;
        chain.push(t);
    }
    chain.reverse();
    Some(chain)
}

/// Local positive folding at every junction and a defining chain.
pub fn is_positively_folded(rs: &RootSystem, g: &Gallery) -> bool {
    is_locally_positively_folded(rs, g) && defining_chain(rs, g).is_some()
}

/// All edge directions lie in one closed chamber.
pub fn is_minimal(rs: &RootSystem, g: &Gallery) -> bool {
    let mut acc: Option<WSet> = None;
    for d in g.directions() {
        let c = rs.class_set(&d);
        acc = Some(match acc {
            None => (*c).clone(),
            Some(a) => a.intersection(&c),
        });
    }
    acc.is_none_or(|a| !a.is_empty())
}

/// ♯⁺δ = ⟨λ + μ, ρ⟩ for the target μ.
pub fn is_ls(rs: &RootSystem, g: &Gallery) -> Result<bool> {
    if !is_positively_folded(rs, g) {
        return Err(Error::Invalid("LS test needs a positively folded gallery".into()));
    }
    Ok(is_ls_unchecked(rs, g))
}

pub(crate) fn is_ls_unchecked(rs: &RootSystem, g: &Gallery) -> bool {
    let lam = g.gtype.lambda(rs);
    let bound = (&lam + g.target()).dot(&rs.rho);
    crate::rootdata::q(crossing_counts(rs, g).sharp_plus as i64) == bound
}

/// For a gallery of type γ_ω: whether it arises from a minimal gallery by a
/// sequence of folds, each minimal for the local root system and an
/// LS-fold (global coset length drops by exactly one).
pub fn ls_fold_check(rs: &RootSystem, g: &Gallery) -> Result<bool> {
    if g.gtype.blocks().len() != 1 {
        return Err(Error::Invalid("expected a gallery of a single fundamental type".into()));
    }
    if !is_positively_folded(rs, g) {
        return Err(Error::Invalid("expected a positively folded gallery".into()));
    }
    if g.num_edges() == 1 {
        return Ok(true);
    }
    let v = &g.vertices[1];
    let d0 = g.direction(0);
    let target = g.direction(1);
    let local = local_root_system(rs, v);
    let c0 = rs.class_set(&d0);
    let mut seen: BTreeSet<RootVec> = BTreeSet::new();
    let mut queue: VecDeque<RootVec> = VecDeque::new();
    for f in local.orbit(rs, &target) {
        if c0.intersects(&rs.class_set(&f)) {
            seen.insert(f.clone());
            queue.push_back(f);
        }
    }
    while let Some(d) = queue.pop_front() {
        if d == target {
            return Ok(true);
        }
        let (ll, gl) = (local.coset_length(rs, &d), rs.coset_length(&d));
        for &k in &local.positive {
            if !rs.roots[k].dot(&d).is_negative() {
                continue;
            }
            let n = rs.act(rs.reflection(k), &d);
            if local.coset_length(rs, &n) + 1 == ll
                && rs.coset_length(&n) + 1 == gl
                && seen.insert(n.clone())
            {
                queue.push_back(n);
            }
        }
    }
    Ok(false)
}

/// Checks that `coeffs` are nonnegative (dominant) and of the right length.
pub fn check_dominant(rs: &RootSystem, coeffs: &[i64]) -> Result<()> {
    if coeffs.len() != rs.rank() {
        return Err(Error::Usage(format!(
            "expected {} coefficients for {}, got {}",
            rs.rank(),
            rs.spec,
            coeffs.len()
        )));
    }
    if coeffs.iter().any(|&a| a < 0) {
        return Err(Error::NotDominant(format!("{coeffs:?}")));
    }
    Ok(())
}

/// All positively folded galleries of type γ_λ, any target.
pub fn enumerate_pf_all(rs: &RootSystem, lambda: &[i64]) -> Result<Vec<Gallery>> {
    check_dominant(rs, lambda)?;
    let t = GalleryType::of_lambda(rs, lambda)?;
    Ok(pf_of_type(rs, &t, |_| true))
}

fn pf_of_type(rs: &RootSystem, t: &GalleryType, accept: impl Fn(&Gallery) -> bool) -> Vec<Gallery> {
    let mut out = Vec::new();
    walk(
        rs,
        t,
        |vs, ds| {
            let j = ds.len() - 1;
            j == 0 || two_step_pf_dirs(rs, &vs[j], &-&ds[j - 1], &ds[j])
        },
        |g| {
            if accept(&g) && defining_chain(rs, &g).is_some() {
                out.push(g);
            }
        },
    );
    out
}

/// Γ⁺(γ_λ, μ): positively folded galleries of type γ_λ with target μ.
pub fn enumerate_pf(rs: &RootSystem, lambda: &[i64], mu: &[i64]) -> Result<Vec<Gallery>> {
    check_dominant(rs, lambda)?;
    check_dominant(rs, mu)?;
    let lam = rs.coweight(lambda)?;
    let Some(m) = rs.coweight_in_coset(mu, &lam)? else {
        return Ok(vec![]);
    };
    let t = GalleryType::of_lambda(rs, lambda)?;
    Ok(pf_of_type(rs, &t, |g| g.target() == &m))
}
