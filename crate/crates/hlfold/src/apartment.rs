//! The affine apartment: affine roots, edges and their types, sectors,
//! local root systems at vertices, and wall-crossing predicates.

use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{half, q, RootSystem, RootVec, WId, WSet, Q};

/// The affine function x ↦ ⟨α, x⟩ + n.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineRoot {
    pub root: RootVec,
    pub level: i64,
}

impl AffineRoot {
    pub fn eval(&self, x: &RootVec) -> Q {
        self.root.dot(x) + q(self.level)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Segment {
    Whole,
    FirstHalf,
    SecondHalf,
}

/// Edge type: a fundamental coweight (0-based index) and which part of the
/// segment [0, ω] the edge is a translate of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeType {
    pub index: usize,
    pub segment: Segment,
}

impl EdgeType {
    /// The displacement of the standard edge of this type.
    pub fn standard_direction(&self, rs: &RootSystem) -> RootVec {
        match self.segment {
            Segment::Whole => rs.omegas[self.index].clone(),
            _ => rs.omegas[self.index].scale(half(1)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub start: RootVec,
    pub end: RootVec,
    pub etype: EdgeType,
}

impl Edge {
    pub fn direction(&self) -> RootVec {
        &self.end - &self.start
    }
}

/// The sector `vertex + w(C̄⁺)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sector {
    pub vertex: RootVec,
    pub chamber_class: WId,
}

impl Sector {
    pub fn contains_edge(&self, rs: &RootSystem, e: &Edge) -> bool {
        e.start == self.vertex && rs.class_set(&e.direction()).contains(self.chamber_class)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Crossing {
    Positive,
    Negative,
    None,
}

/// Φ_V and W_V for a vertex V. The data depend only on which roots pair
/// integrally with V, so one instance is shared by all such vertices.
#[derive(Debug)]
pub struct LocalRootSystem {
    /// Indices into `rs.roots` of Φ_V ∩ Φ⁺.
    pub positive: Vec<usize>,
    /// Indices into `rs.roots` of the simple roots of Φ_V ∩ Φ⁺.
    pub simple: Vec<usize>,
    /// W_V, sorted by index in W.
    pub elements: Vec<WId>,
    member: WSet,
    lengths: Vec<u32>,
    n_pos_total: usize,
}

pub fn local_root_system(rs: &RootSystem, v: &RootVec) -> Arc<LocalRootSystem> {
    let key: Vec<bool> = rs
        .positive_roots()
        .iter()
        .map(|r| r.dot(v).is_integer())
        .collect();
    if let Some(l) = rs.local_cache.read().unwrap().get(&key) {
        return l.clone();
    }
    let positive: Vec<usize> = (0..rs.n_pos).filter(|&k| key[k]).collect();
    let xminus = -&rs.generic;

    let mut member = WSet::empty(rs.order());
    let mut elements = vec![rs.identity()];
    member.insert(rs.identity());
    let mut head = 0;
    while head < elements.len() {
        let w = elements[head];
        head += 1;
        for &k in &positive {
            let u = rs.mul(rs.reflection(k), w);
            if !member.contains(u) {
                member.insert(u);
                elements.push(u);
            }
        }
    }
    elements.sort();

    let mut lengths = vec![u32::MAX; rs.order()];
    for &w in &elements {
        let p = rs.act(w, &xminus);
        lengths[w] = positive
            .iter()
            .filter(|&&k| rs.roots[k].dot(&p).is_positive())
            .count() as u32;
    }
    let simple: Vec<usize> = positive
        .iter()
        .copied()
        .filter(|&k| lengths[rs.reflection(k)] == 1)
        .collect();

    let l = Arc::new(LocalRootSystem {
        positive,
        simple,
        elements,
        member,
        lengths,
        n_pos_total: rs.n_pos,
    });
    rs.local_cache.write().unwrap().insert(key, l.clone());
    l
}

impl LocalRootSystem {
    pub fn is_special(&self) -> bool {
        self.positive.len() == self.n_pos_total
    }

    pub fn contains(&self, w: WId) -> bool {
        self.member.contains(w)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Number of walls of Φ_V separating the local chamber `u` from the
    /// base chamber, the germ of V + C⁻.
    pub fn length(&self, u: WId) -> usize {
        assert!(self.contains(u), "element outside the local Weyl group");
        self.lengths[u] as usize
    }

    /// Whether `d` lies in the closure of the local chamber `u(C⁻_V)`.
    pub fn closure_contains(&self, rs: &RootSystem, u: WId, d: &RootVec) -> bool {
        let p = rs.act(u, &-&rs.generic);
        self.positive.iter().all(|&k| {
            let a = rs.roots[k].dot(d);
            a.is_zero() || (a.is_positive() == rs.roots[k].dot(&p).is_positive())
        })
    }

    /// Lexicographically least reduced word of `u` in the local simple
    /// reflections; letters index `self.simple`.
    pub fn reduced_word(&self, rs: &RootSystem, u: WId) -> Vec<usize> {
        let mut cur = u;
        let mut word = Vec::new();
        while self.length(cur) > 0 {
            let (i, next) = self
                .simple
                .iter()
                .enumerate()
                .map(|(i, &k)| (i, rs.mul(rs.reflection(k), cur)))
                .find(|&(_, n)| self.length(n) < self.length(cur))
                .expect("descent exists");
            word.push(i);
            cur = next;
        }
        word
    }

    pub fn all_reduced_words(&self, rs: &RootSystem, u: WId) -> Vec<Vec<usize>> {
        fn rec(
            l: &LocalRootSystem,
            rs: &RootSystem,
            u: WId,
            prefix: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if l.length(u) == 0 {
                out.push(prefix.clone());
                return;
            }
            for (i, &k) in l.simple.iter().enumerate() {
                let n = rs.mul(rs.reflection(k), u);
                if l.length(n) < l.length(u) {
                    prefix.push(i);
                    rec(l, rs, n, prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(self, rs, u, &mut Vec::new(), &mut out);
        out
    }

    pub fn word_element(&self, rs: &RootSystem, word: &[usize]) -> WId {
        word.iter().fold(rs.identity(), |acc, &i| {
            rs.mul(acc, rs.reflection(self.simple[i]))
        })
    }

    /// The W_V-orbit of `d`, sorted.
    pub fn orbit(&self, rs: &RootSystem, d: &RootVec) -> Vec<RootVec> {
        let mut out: Vec<RootVec> = self.elements.iter().map(|&w| rs.act(w, d)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Length of the shortest element of W_V carrying the Φ_V-dominant ray
    /// to `d`, i.e. the number of positive local roots negative on `d`.
    pub fn coset_length(&self, rs: &RootSystem, d: &RootVec) -> usize {
        self.positive
            .iter()
            .filter(|&&k| rs.roots[k].dot(d).is_negative())
            .count()
    }
}

pub fn is_special(rs: &RootSystem, v: &RootVec) -> bool {
    rs.positive_roots().iter().all(|r| r.dot(v).is_integer())
}

/// Sign of the crossing of the wall `h` by the edge `e` leaving `v`.
pub fn crossing_sign(v: &RootVec, e: &Edge, h: &AffineRoot) -> Crossing {
    if !h.eval(v).is_zero() {
        return Crossing::None;
    }
    let a = h.root.dot(&e.direction());
    if a.is_positive() {
        Crossing::Positive
    } else if a.is_negative() {
        Crossing::Negative
    } else {
        Crossing::None
    }
}

/// Walls through `v` with positive root part, as affine roots.
pub fn walls_through(rs: &RootSystem, v: &RootVec) -> Vec<AffineRoot> {
    rs.positive_roots()
        .iter()
        .filter_map(|r| {
            let x = r.dot(v);
            x.is_integer().then(|| AffineRoot {
                root: r.clone(),
                level: -x.to_integer(),
            })
        })
        .collect()
}

/// {(α, n) : α ∈ Φ⁻, V ∈ H_{α,n}, E ⊄ H⁺_{α,n}}.
pub fn phi_a_minus(rs: &RootSystem, v: &RootVec, e: &Edge) -> Vec<AffineRoot> {
    let d = e.direction();
    rs.roots[rs.n_pos..]
        .iter()
        .filter_map(|r| {
            let x = r.dot(v);
            (x.is_integer() && r.dot(&d).is_negative()).then(|| AffineRoot {
                root: r.clone(),
                level: -x.to_integer(),
            })
        })
        .collect()
}

/// Whether `reference` is the direction of some edge of type `t`.
pub fn direction_has_type(rs: &RootSystem, t: EdgeType, d: &RootVec) -> bool {
    let std = t.standard_direction(rs);
    rs.dominant_rep(d) == rs.dominant_rep(&std)
}

/// Directions of all edges of type `t` at `v`: the W_V-orbit of the
/// reference germ.
pub fn faces_at_vertex_of_type(
    rs: &RootSystem,
    v: &RootVec,
    t: EdgeType,
    reference: &RootVec,
) -> Result<Vec<RootVec>> {
    if !direction_has_type(rs, t, reference) {
        return Err(Error::Invalid(format!(
            "direction {reference} is not of type {t:?}"
        )));
    }
    let local = local_root_system(rs, v);
    if t.segment != Segment::SecondHalf && !local.is_special() {
        return Err(Error::Invalid(format!(
            "edge type {t:?} must start at a special vertex, not {v}"
        )));
    }
    Ok(local.orbit(rs, reference))
}

/// The open segment from `v` to `v + d` meets no wall except walls
/// containing the whole segment.
pub fn edge_is_face(rs: &RootSystem, v: &RootVec, d: &RootVec) -> bool {
    rs.positive_roots().iter().all(|r| {
        let a = r.dot(v);
        let b = a + r.dot(d);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        // no integer strictly between lo and hi
        lo == hi || lo.floor() + q(1) >= hi
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn origin_and_coweights_are_special() {
        for s in ["A2", "B3", "C3"] {
            let r = rs(s);
            let l = local_root_system(&r, &RootVec::zero(r.dim()));
            assert!(l.is_special());
            assert_eq!(l.order(), r.order());
            let lam = r.coweight(&vec![1; r.rank()]).unwrap();
            assert!(local_root_system(&r, &lam).is_special());
        }
    }

    #[test]
    fn midpoint_local_system_b2() {
        let r = rs("B2");
        // ω1 = ε1 is the non-minuscule coweight in B2
        let v = r.omegas[0].scale(half(1));
        let l = local_root_system(&r, &v);
        let want: Vec<usize> = (0..r.n_pos)
            .filter(|&k| r.roots[k].dot(&v).is_integer())
            .collect();
        assert_eq!(l.positive, want);
        assert!(!l.is_special());
        // second-half germs: all sign changes of ε1
        let t = EdgeType { index: 0, segment: Segment::SecondHalf };
        let faces = faces_at_vertex_of_type(&r, &v, t, &v).unwrap();
        assert_eq!(faces, vec![
            RootVec(vec![half(-1), q(0)]),
            RootVec(vec![half(1), q(0)]),
        ]);
        assert_eq!(l.order() % faces.len(), 0);
    }

    #[test]
    fn sign_change_description_b3_c3() {
        // B family: any sign change of the support; C family: even ones
        let b = rs("B3");
        let v = b.omegas[1].scale(half(1));
        let t = EdgeType { index: 1, segment: Segment::SecondHalf };
        let faces = faces_at_vertex_of_type(&b, &v, t, &v).unwrap();
        assert_eq!(faces.len(), 4);
        let c = rs("C3");
        let v = c.omegas[2].scale(half(1));
        let t = EdgeType { index: 2, segment: Segment::SecondHalf };
        let faces = faces_at_vertex_of_type(&c, &v, t, &v).unwrap();
        assert_eq!(faces.len(), 4);
        for f in faces {
            let negs = f.0.iter().filter(|x| x.is_negative()).count();
            assert_eq!(negs % 2, 0);
        }
    }

    #[test]
    fn minuscule_orbit_sizes() {
        let r = rs("A3");
        let o = RootVec::zero(4);
        for i in 0..3 {
            let t = EdgeType { index: i, segment: Segment::Whole };
            let f = faces_at_vertex_of_type(&r, &o, t, &r.omegas[i]).unwrap();
            let stab = r.stabilizer(&r.omegas[i]).len();
            assert_eq!(f.len(), r.order() / stab);
        }
        let t = EdgeType { index: 0, segment: Segment::Whole };
        assert!(faces_at_vertex_of_type(&r, &o, t, &r.omegas[1]).is_err());
    }

    #[test]
    fn crossing_examples() {
        let r = rs("A2");
        let o = RootVec::zero(3);
        let up = Edge { start: o.clone(), end: r.generic.clone(), etype: EdgeType { index: 0, segment: Segment::Whole } };
        let down = Edge { start: o.clone(), end: -&r.generic, etype: up.etype };
        for &k in &r.simple {
            let h = AffineRoot { root: r.roots[k].clone(), level: 0 };
            assert_eq!(crossing_sign(&o, &up, &h), Crossing::Positive);
            assert_eq!(crossing_sign(&o, &down, &h), Crossing::Negative);
        }
        let along = Edge { start: o.clone(), end: r.omegas[0].clone(), etype: up.etype };
        let h = AffineRoot { root: r.roots[r.simple[1]].clone(), level: 0 };
        assert_eq!(crossing_sign(&o, &along, &h), Crossing::None);
        let off = AffineRoot { root: r.roots[0].clone(), level: 1 };
        assert_eq!(crossing_sign(&o, &up, &off), Crossing::None);

        assert_eq!(phi_a_minus(&r, &o, &up).len(), 3);
        assert_eq!(phi_a_minus(&r, &o, &down).len(), 0);
    }

    #[test]
    fn local_words_and_closure() {
        let r = rs("A2");
        let l = local_root_system(&r, &RootVec::zero(3));
        for &u in &l.elements {
            assert_eq!(l.length(u), r.length(u));
            let w = l.reduced_word(&r, u);
            assert_eq!(w.len(), l.length(u));
            assert_eq!(l.word_element(&r, &w), u);
            for w in l.all_reduced_words(&r, u) {
                assert_eq!(l.word_element(&r, &w), u);
            }
        }
        assert!(l.closure_contains(&r, r.identity(), &-&r.generic));
        assert!(l.closure_contains(&r, r.w0, &r.generic));
    }

    #[test]
    fn half_edges_are_faces() {
        let r = rs("C3");
        let o = RootVec::zero(3);
        let w = &r.omegas[1];
        assert!(!edge_is_face(&r, &o, w));
        assert!(edge_is_face(&r, &o, &w.scale(half(1))));
        assert!(edge_is_face(&r, &w.scale(half(1)), &w.scale(half(1))));
        assert!(edge_is_face(&r, &o, &r.omegas[0]));
    }
}
