//! Combinatorial one-skeleton galleries of a fixed type: the fundamental
//! galleries, their Bourbaki-order concatenations, enumeration of all
//! galleries of a type, and the crossing statistics.

use serde::{Deserialize, Serialize};

use crate::apartment::{
    direction_has_type, edge_is_face, local_root_system, phi_a_minus, Edge, EdgeType, Segment,
};
use crate::error::{Error, Result};
use crate::rootdata::{q, RootSystem, RootVec};

/// Sequence of edge types; always a concatenation of fundamental blocks
/// `[Whole]` or `[FirstHalf, SecondHalf]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GalleryType(pub Vec<EdgeType>);

impl GalleryType {
    /// Type of the concatenation γ_{ω_{i_1}} * … * γ_{ω_{i_s}}.
    pub fn from_blocks(rs: &RootSystem, blocks: &[usize]) -> Result<Self> {
        let mut t = Vec::new();
        for &i in blocks {
            if i >= rs.rank() {
                return Err(Error::Invalid(format!("no fundamental coweight ω{}", i + 1)));
            }
            if rs.is_minuscule(i) {
                t.push(EdgeType { index: i, segment: Segment::Whole });
            } else {
                t.push(EdgeType { index: i, segment: Segment::FirstHalf });
                t.push(EdgeType { index: i, segment: Segment::SecondHalf });
            }
        }
        Ok(GalleryType(t))
    }

    /// Bourbaki-order type of γ_λ for λ = Σ a_i ω_i.
    pub fn of_lambda(rs: &RootSystem, coeffs: &[i64]) -> Result<Self> {
        if coeffs.len() != rs.rank() {
            return Err(Error::Usage(format!("expected {} coefficients", rs.rank())));
        }
        if let Some(a) = coeffs.iter().find(|&&a| a < 0) {
            return Err(Error::NotDominant(format!("coefficient {a}")));
        }
        let blocks: Vec<usize> = coeffs
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| std::iter::repeat_n(i, a as usize))
            .collect();
        Self::from_blocks(rs, &blocks)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Fundamental indices of the blocks, in order.
    pub fn blocks(&self) -> Vec<usize> {
        self.0
            .iter()
            .filter(|t| t.segment != Segment::SecondHalf)
            .map(|t| t.index)
            .collect()
    }

    /// λ = Σ over blocks of ω_i.
    pub fn lambda(&self, rs: &RootSystem) -> RootVec {
        self.blocks()
            .iter()
            .fold(RootVec::zero(rs.dim()), |acc, &i| &acc + &rs.omegas[i])
    }

    pub fn lambda_coeffs(&self, rs: &RootSystem) -> Vec<i64> {
        let mut c = vec![0; rs.rank()];
        for i in self.blocks() {
            c[i] += 1;
        }
        c
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gallery {
    /// V_0 = 0, …, V_{r+1}.
    pub vertices: Vec<RootVec>,
    pub gtype: GalleryType,
}

impl Gallery {
    pub fn empty(rs: &RootSystem) -> Self {
        Gallery {
            vertices: vec![RootVec::zero(rs.dim())],
            gtype: GalleryType(vec![]),
        }
    }

    /// Build from the edge directions; checks the directions against the type.
    pub fn from_directions(rs: &RootSystem, gtype: GalleryType, dirs: &[RootVec]) -> Result<Self> {
        if dirs.len() != gtype.len() {
            return Err(Error::Invalid("direction count differs from type length".into()));
        }
        let mut vertices = vec![RootVec::zero(rs.dim())];
        for (t, d) in gtype.0.iter().zip(dirs) {
            if !direction_has_type(rs, *t, d) {
                return Err(Error::Invalid(format!("direction {d} is not of type {t:?}")));
            }
            let next = vertices.last().unwrap() + d;
            vertices.push(next);
        }
        let g = Gallery { vertices, gtype };
        g.validate(rs)?;
        Ok(g)
    }

    /// Each edge is a germ at its start vertex of the right type.
    pub fn validate(&self, rs: &RootSystem) -> Result<()> {
        let mut prev: Option<RootVec> = None;
        for (k, t) in self.gtype.0.iter().enumerate() {
            let v = &self.vertices[k];
            let d = self.direction(k);
            let reference = match t.segment {
                Segment::SecondHalf => prev.clone().ok_or_else(|| {
                    Error::Invalid("second half edge without a first half".into())
                })?,
                _ => t.standard_direction(rs),
            };
            let local = local_root_system(rs, v);
            if t.segment != Segment::SecondHalf && !local.is_special() {
                return Err(Error::Invalid(format!("block starts at non-special {v}")));
            }
            if !local.orbit(rs, &reference).contains(&d) {
                return Err(Error::Invalid(format!("edge {k} has no type {t:?} at {v}")));
            }
            prev = Some(d);
        }
        Ok(())
    }

    pub fn num_edges(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn source(&self) -> &RootVec {
        &self.vertices[0]
    }

    pub fn target(&self) -> &RootVec {
        self.vertices.last().unwrap()
    }

    pub fn direction(&self, k: usize) -> RootVec {
        &self.vertices[k + 1] - &self.vertices[k]
    }

    pub fn directions(&self) -> Vec<RootVec> {
        (0..self.num_edges()).map(|k| self.direction(k)).collect()
    }

    pub fn edge(&self, k: usize) -> Edge {
        Edge {
            start: self.vertices[k].clone(),
            end: self.vertices[k + 1].clone(),
            etype: self.gtype.0[k],
        }
    }

    pub fn edges(&self) -> Vec<Edge> {
        (0..self.num_edges()).map(|k| self.edge(k)).collect()
    }

    /// `self` followed by `other` translated to start at the target of `self`.
    pub fn concat(&self, other: &Gallery) -> Gallery {
        let shift = self.target() - other.source();
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices[1..].iter().map(|v| v + &shift));
        let mut t = self.gtype.0.clone();
        t.extend(other.gtype.0.iter().copied());
        Gallery { vertices, gtype: GalleryType(t) }
    }

    /// Image under a linear map of W applied to every vertex.
    pub fn transform(&self, rs: &RootSystem, w: usize) -> Gallery {
        Gallery {
            vertices: self.vertices.iter().map(|v| rs.act(w, v)).collect(),
            gtype: self.gtype.clone(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.gtype.0.iter().map(|t| serde_json::json!({
                "index": t.index + 1,
                "segment": t.segment,
            })).collect::<Vec<_>>(),
            "vertices": self.vertices.iter().map(|v| v.to_strings()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct T {
            index: usize,
            segment: Segment,
        }
        #[derive(Deserialize)]
        struct G {
            #[serde(rename = "type")]
            gtype: Vec<T>,
            vertices: Vec<Vec<String>>,
        }
        let g: G = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if g.vertices.len() != g.gtype.len() + 1 {
            return Err(Error::Parse("vertex count must be edge count + 1".into()));
        }
        let gtype = g
            .gtype
            .into_iter()
            .map(|t| {
                (t.index >= 1)
                    .then(|| EdgeType { index: t.index - 1, segment: t.segment })
                    .ok_or_else(|| Error::Parse("edge index starts at 1".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let vertices = g
            .vertices
            .iter()
            .map(|v| RootVec::from_strings(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Gallery { vertices, gtype: GalleryType(gtype) })
    }
}

/// γ_{ω_i}: the segment [0, ω_i] cut at its walls.
pub fn gamma_omega(rs: &RootSystem, i: usize) -> Result<Gallery> {
    gamma_blocks(rs, &[i])
}

fn gamma_blocks(rs: &RootSystem, blocks: &[usize]) -> Result<Gallery> {
    let t = GalleryType::from_blocks(rs, blocks)?;
    let dirs: Vec<RootVec> = t.0.iter().map(|e| e.standard_direction(rs)).collect();
    Gallery::from_directions(rs, t, &dirs)
}

/// γ_λ in Bourbaki order for λ = Σ a_i ω_i.
pub fn gamma_lambda(rs: &RootSystem, coeffs: &[i64]) -> Result<Gallery> {
    let t = GalleryType::of_lambda(rs, coeffs)?;
    let dirs: Vec<RootVec> = t.0.iter().map(|e| e.standard_direction(rs)).collect();
    Gallery::from_directions(rs, t, &dirs)
}

/// Direction choices for the edge following `prefix` (whose last vertex is
/// the start of edge `k`), sorted.
fn choices(rs: &RootSystem, t: &GalleryType, k: usize, v: &RootVec, prev: Option<&RootVec>) -> Vec<RootVec> {
    let et = t.0[k];
    let reference = match et.segment {
        Segment::SecondHalf => prev.expect("second half follows a first half").clone(),
        _ => et.standard_direction(rs),
    };
    local_root_system(rs, v).orbit(rs, &reference)
}

/// Depth-first walk over all galleries of type `t` from the origin. `keep`
/// sees each partial direction list (with its vertices) and may prune it.
pub fn walk<K, F>(rs: &RootSystem, t: &GalleryType, mut keep: K, mut visit: F)
where
    K: FnMut(&[RootVec], &[RootVec]) -> bool,
    F: FnMut(Gallery),
{
    let mut vertices = vec![RootVec::zero(rs.dim())];
    let mut dirs: Vec<RootVec> = Vec::new();
    let mut stack: Vec<(Vec<RootVec>, usize)> = Vec::new();
    if t.is_empty() {
        visit(Gallery { vertices, gtype: t.clone() });
        return;
    }
    stack.push((choices(rs, t, 0, &vertices[0], None), 0));
    while let Some((opts, pos)) = stack.last_mut() {
        if *pos == opts.len() {
            stack.pop();
            dirs.pop();
            vertices.pop();
            continue;
        }
        let d = opts[*pos].clone();
        *pos += 1;
        let next = vertices.last().unwrap() + &d;
        vertices.push(next);
        dirs.push(d);
        if !keep(&vertices, &dirs) {
            vertices.pop();
            dirs.pop();
            continue;
        }
        let k = dirs.len();
        if k == t.len() {
            visit(Gallery { vertices: vertices.clone(), gtype: t.clone() });
            vertices.pop();
            dirs.pop();
        } else {
            let opts = choices(rs, t, k, vertices.last().unwrap(), dirs.last());
            stack.push((opts, 0));
        }
    }
}

/// Every gallery of type `t` with source 0, each exactly once, in
/// lexicographic order of direction choices.
pub fn enumerate_of_type(rs: &RootSystem, t: &GalleryType) -> Vec<Gallery> {
    let mut out = Vec::new();
    walk(rs, t, |_, _| true, |g| out.push(g));
    out
}

/// Π over edges of the number of same-type germs at the start vertex along
/// the standard gallery.
pub fn count_of_type(rs: &RootSystem, t: &GalleryType) -> usize {
    let dirs: Vec<RootVec> = t.0.iter().map(|e| e.standard_direction(rs)).collect();
    let mut v = RootVec::zero(rs.dim());
    let mut n = 1;
    for (k, et) in t.0.iter().enumerate() {
        let reference = match et.segment {
            Segment::SecondHalf => dirs[k - 1].clone(),
            _ => et.standard_direction(rs),
        };
        n *= local_root_system(rs, &v).orbit(rs, &reference).len();
        v = &v + &dirs[k];
    }
    n
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingCounts {
    pub sharp_plus: usize,
    pub sharp_minus: usize,
    pub sharp_pm: usize,
}

pub fn crossing_counts(rs: &RootSystem, g: &Gallery) -> CrossingCounts {
    let (mut plus, mut minus) = (0, 0);
    for k in 0..g.num_edges() {
        let v = &g.vertices[k];
        let d = g.direction(k);
        for r in rs.positive_roots() {
            if r.dot(v).is_integer() {
                let a = r.dot(&d);
                if a > q(0) {
                    plus += 1;
                } else if a < q(0) {
                    minus += 1;
                }
            }
        }
    }
    CrossingCounts { sharp_plus: plus, sharp_minus: minus, sharp_pm: plus + minus }
}

/// Σ_i |Φᵃ₋(V_i, E_i)|.
pub fn cell_dimension(rs: &RootSystem, g: &Gallery) -> usize {
    g.edges()
        .iter()
        .map(|e| phi_a_minus(rs, &e.start, e).len())
        .sum()
}

/// Every edge satisfies the face property.
pub fn edges_are_faces(rs: &RootSystem, g: &Gallery) -> bool {
    (0..g.num_edges()).all(|k| edge_is_face(rs, &g.vertices[k], &g.direction(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apartment::{crossing_sign, walls_through, Crossing};
    use crate::rootdata::half;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn fundamental_galleries() {
        let a = rs("A3");
        for i in 0..3 {
            let g = gamma_omega(&a, i).unwrap();
            assert_eq!(g.num_edges(), 1);
            assert_eq!(g.target(), &a.omegas[i]);
        }
        let c = rs("C3");
        let g = gamma_omega(&c, 1).unwrap();
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.vertices[1], c.omegas[1].scale(half(1)));
        let b = rs("B2");
        assert_eq!(gamma_omega(&b, 1).unwrap().num_edges(), 1);
        assert_eq!(gamma_omega(&b, 0).unwrap().num_edges(), 2);
        for r in [&a, &b, &c] {
            for i in 0..r.rank() {
                assert!(edges_are_faces(r, &gamma_omega(r, i).unwrap()));
            }
        }
    }

    #[test]
    fn gamma_lambda_shapes() {
        let a = rs("A2");
        let g = gamma_lambda(&a, &[0, 0]).unwrap();
        assert_eq!(g.num_edges(), 0);
        assert!(g.target().is_zero());
        let g = gamma_lambda(&a, &[2, 1]).unwrap();
        assert_eq!(g.num_edges(), 3);
        assert_eq!(g.target(), &a.coweight(&[2, 1]).unwrap());
        let b = rs("B2");
        let g = gamma_lambda(&b, &[1, 0]).unwrap();
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.vertices[1], b.omegas[0].scale(half(1)));
        assert!(gamma_lambda(&a, &[-1, 0]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let a = rs("A2");
        let t = GalleryType::of_lambda(&a, &[1, 0]).unwrap();
        assert_eq!(enumerate_of_type(&a, &t).len(), 3);
        let t = GalleryType::of_lambda(&a, &[2, 1]).unwrap();
        let all = enumerate_of_type(&a, &t);
        assert_eq!(all.len(), 27);
        assert_eq!(count_of_type(&a, &t), 27);
        let mut dedup = all.clone();
        dedup.sort_by(|x, y| x.vertices.cmp(&y.vertices));
        dedup.dedup();
        assert_eq!(dedup.len(), 27);
        assert!(all.contains(&gamma_lambda(&a, &[2, 1]).unwrap()));
        for s in ["B2", "C2", "B3", "C3"] {
            let r = rs(s);
            let t = GalleryType::of_lambda(&r, &vec![1; r.rank()]).unwrap();
            assert_eq!(enumerate_of_type(&r, &t).len(), count_of_type(&r, &t), "{s}");
        }
    }

    #[test]
    fn crossing_statistics() {
        for s in ["A2", "B2", "C2", "C3"] {
            let r = rs(s);
            let coeffs = vec![1; r.rank()];
            let lam = r.coweight(&coeffs).unwrap();
            let two_rho = (lam.dot(&r.rho) * q(2)).to_integer() as usize;
            let g = gamma_lambda(&r, &coeffs).unwrap();
            let c = crossing_counts(&r, &g);
            assert_eq!((c.sharp_plus, c.sharp_minus), (two_rho, 0));
            assert_eq!(cell_dimension(&r, &g), two_rho);
            let anti = g.transform(&r, r.w0);
            assert_eq!(crossing_counts(&r, &anti).sharp_plus, 0);
            assert_eq!(cell_dimension(&r, &anti), 0);
            let t = GalleryType::of_lambda(&r, &coeffs).unwrap();
            for g in enumerate_of_type(&r, &t) {
                let c = crossing_counts(&r, &g);
                assert_eq!(c.sharp_pm, two_rho);
                assert_eq!(cell_dimension(&r, &g), c.sharp_plus);
                assert!(edges_are_faces(&r, &g));
                // the crossing-sign predicate agrees with the counts
                let plus: usize = g
                    .edges()
                    .iter()
                    .map(|e| {
                        walls_through(&r, &e.start)
                            .iter()
                            .filter(|h| crossing_sign(&e.start, e, h) == Crossing::Positive)
                            .count()
                    })
                    .sum();
                assert_eq!(plus, c.sharp_plus);
            }
        }
    }

    #[test]
    fn concat_targets() {
        let a = rs("A2");
        let g1 = gamma_omega(&a, 0).unwrap();
        let g2 = gamma_omega(&a, 1).unwrap();
        let g = g1.concat(&g2);
        assert_eq!(g.target(), &(g1.target() + &(g2.target() - g2.source())));
        let g3 = gamma_omega(&a, 0).unwrap();
        assert_eq!(g.concat(&g3), g1.concat(&g2.concat(&g3)));
    }

    #[test]
    fn json_round_trip() {
        let b = rs("B3");
        let t = GalleryType::of_lambda(&b, &[0, 1, 1]).unwrap();
        for g in enumerate_of_type(&b, &t).iter().step_by(17) {
            let j = g.to_json();
            let text = serde_json::to_string(&j).unwrap();
            let back = Gallery::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(&back, g);
            back.validate(&b).unwrap();
        }
    }

    #[test]
    fn edge_tags_are_affine_weyl_classes() {
        // oriented edges (v, d), (v', d') are conjugate under W ⋉ Q^∨ iff
        // some w has w(d) = d' and w(v) − v' in the coroot lattice; the tag
        // fixes the class once the coset mod Q^∨ of the special endpoint is fixed
        let conj = |r: &RootSystem, a: &Edge, b: &Edge| {
            (0..r.order()).any(|w| {
                r.act(w, &a.direction()) == b.direction() && r.in_coroot_coset(&r.act(w, &a.start), &b.start)
            })
        };
        for (s, max) in [("A2", 2), ("B2", 2), ("C2", 2), ("B3", 1), ("C3", 1)] {
            let r = rs(s);
            let mut edges: Vec<Edge> = Vec::new();
            for l in r.dominant_coeffs_up_to(max) {
                let t = GalleryType::of_lambda(&r, &l).unwrap();
                let gs = enumerate_of_type(&r, &t);
                for g in &gs {
                    for (k, e) in g.edges().into_iter().enumerate() {
                        assert!(conj(&r, &gs[0].edge(k), &e), "{s} {l:?} edge {k}");
                        if !edges.iter().any(|x| x.start == e.start && x.end == e.end) {
                            edges.push(e);
                        }
                    }
                }
            }
            let special = |e: &Edge| if e.etype.segment == Segment::SecondHalf { e.end.clone() } else { e.start.clone() };
            for a in &edges {
                for b in &edges {
                    let same_coset = r.in_coroot_coset(&special(a), &special(b));
                    assert_eq!(conj(&r, a, b), a.etype == b.etype && same_coset, "{s}: {a:?} {b:?}");
                }
            }
        }
    }
}
