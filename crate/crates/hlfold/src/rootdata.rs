//! Root systems of families A, B, C in ε-coordinates: roots, coweights,
//! the Weyl group as signed permutations, reduced words and Bruhat order.
//!
//! The family letter names the coweight lattice, i.e. the group whose
//! representations appear in the character formula. The roots that cut the
//! apartment are therefore those of the dual family: for `B` the walls come
//! from a root system of type C and vice versa. Coroots `2α/(α,α)` are the
//! roots of the named family.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::apartment::LocalRootSystem;
use crate::error::{Error, Result};

pub type Q = Rational64;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn half(n: i64) -> Q {
    Q::new(n, 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
        };
        write!(f, "{c}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootSystemSpec {
    pub family: Family,
    pub rank: usize,
}

pub const MAX_RANK: usize = 4;

impl RootSystemSpec {
    pub fn new(family: Family, rank: usize) -> Self {
        RootSystemSpec { family, rank }
    }

    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank == 0 || self.rank > MAX_RANK {
            return Err(Error::Config(format!(
                "rank {} outside supported range 1..={MAX_RANK}",
                self.rank
            )));
        }
        Ok(())
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for RootSystemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            _ => return Err(Error::Config(format!("unknown family in {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Config(format!("bad rank in {s:?}")))?;
        let spec = RootSystemSpec { family, rank };
        spec.validate()?;
        Ok(spec)
    }
}

/// A vector in ε-coordinates with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVec(pub Vec<Q>);

impl RootVec {
    pub fn zero(dim: usize) -> Self {
        RootVec(vec![Q::zero(); dim])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RootVec(v.iter().map(|&x| q(x)).collect())
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = Q::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, c: Q) -> Self {
        RootVec(self.0.iter().map(|x| x * c).collect())
    }

    pub fn dot(&self, other: &RootVec) -> Q {
        self.0
            .iter()
            .zip(&other.0)
            .fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn sum(&self) -> Q {
        self.0.iter().fold(Q::zero(), |a, b| a + b)
    }

    /// Coordinates as strings `p/q`, the serialized form.
    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(|x| x.to_string()).collect()
    }

    pub fn from_strings(v: &[String]) -> Result<Self> {
        v.iter()
            .map(|s| {
                s.parse::<Q>()
                    .map_err(|_| Error::Parse(format!("bad rational {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(RootVec)
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Add for &RootVec {
    type Output = RootVec;
    fn add(self, o: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RootVec {
    type Output = RootVec;
    fn sub(self, o: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RootVec {
    type Output = RootVec;
    fn neg(self) -> RootVec {
        RootVec(self.0.iter().map(|a| -a).collect())
    }
}

/// Checked pairing ⟨weight, covector⟩ in the ambient inner product.
pub fn pairing(weight: &RootVec, covector: &RootVec) -> Result<Q> {
    if weight.dim() != covector.dim() {
        return Err(Error::Dimension(weight.dim(), covector.dim()));
    }
    Ok(weight.dot(covector))
}

/// Index of an element of W inside its `RootSystem`.
pub type WId = usize;

/// A signed permutation: `w(ε_i) = sign_i ε_{perm_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub images: Vec<(u8, i8)>,
    pub length: usize,
}

impl WeylElement {
    pub fn act(&self, v: &RootVec) -> RootVec {
        let mut out = RootVec::zero(v.dim());
        for (i, &(p, s)) in self.images.iter().enumerate() {
            out.0[p as usize] = if s > 0 { v.0[i] } else { -v.0[i] };
        }
        out
    }

    fn compose(&self, other: &WeylElement) -> Vec<(u8, i8)> {
        other
            .images
            .iter()
            .map(|&(p, s)| {
                let (p2, s2) = self.images[p as usize];
                (p2, s * s2)
            })
            .collect()
    }
}

/// Fixed-size bit set over the elements of W.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WSet {
    bits: Vec<u64>,
}

impl WSet {
    pub fn empty(n: usize) -> Self {
        WSet {
            bits: vec![0; n.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn union_with(&mut self, o: &WSet) {
        for (a, b) in self.bits.iter_mut().zip(&o.bits) {
            *a |= b;
        }
    }

    pub fn intersects(&self, o: &WSet) -> bool {
        self.bits.iter().zip(&o.bits).any(|(a, b)| a & b != 0)
    }

    pub fn intersection(&self, o: &WSet) -> WSet {
        WSet {
            bits: self.bits.iter().zip(&o.bits).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(k, &b)| {
            (0..64).filter(move |j| b >> j & 1 == 1).map(move |j| k * 64 + j)
        })
    }
}

#[derive(Debug)]
pub struct RootSystem {
    pub spec: RootSystemSpec,
    /// Positive roots first (`roots[..n_pos]`), then their negatives in the same order.
    pub roots: Vec<RootVec>,
    pub n_pos: usize,
    /// Indices into `roots` of the simple roots, in Bourbaki order.
    pub simple: Vec<usize>,
    /// `coroots[k] = 2 roots[k] / (roots[k], roots[k])`.
    pub coroots: Vec<RootVec>,
    pub omegas: Vec<RootVec>,
    pub rho: RootVec,
    /// Strictly dominant vector with pairwise distinct coordinates.
    pub generic: RootVec,
    pub elements: Vec<WeylElement>,
    pub reduced_words: Vec<Vec<usize>>,
    index: HashMap<Vec<(u8, i8)>, WId>,
    mult: Vec<u16>,
    inverse: Vec<WId>,
    simple_refl: Vec<WId>,
    root_refl: Vec<WId>,
    below: Vec<WSet>,
    pub w0: WId,
    class_cache: RwLock<HashMap<RootVec, Arc<WSet>>>,
    pub(crate) local_cache: RwLock<HashMap<Vec<bool>, Arc<LocalRootSystem>>>,
}

fn positive_roots(spec: &RootSystemSpec) -> (Vec<RootVec>, Vec<usize>) {
    let n = spec.rank;
    let dim = spec.ambient_dim();
    let e = |i: usize| RootVec::unit(dim, i);
    let mut roots = Vec::new();
    let mut simple = Vec::new();
    // simple roots first, in Bourbaki order
    for i in 0..dim - 1 {
        if spec.family == Family::A || i + 1 < n {
            roots.push(&e(i) - &e(i + 1));
            simple.push(roots.len() - 1);
        }
    }
    match spec.family {
        Family::A => {}
        Family::B => {
            roots.push(e(n - 1).scale(q(2)));
            simple.push(roots.len() - 1);
        }
        Family::C => {
            roots.push(e(n - 1));
            simple.push(roots.len() - 1);
        }
    }
    for i in 0..dim {
        for j in i + 1..dim {
            let r = &e(i) - &e(j);
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
    }
    if spec.family != Family::A {
        for i in 0..n {
            for j in i + 1..n {
                roots.push(&e(i) + &e(j));
            }
        }
        for i in 0..n {
            let r = match spec.family {
                Family::B => e(i).scale(q(2)),
                _ => e(i),
            };
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
    }
    (roots, simple)
}

fn fundamental_coweights(spec: &RootSystemSpec) -> Vec<RootVec> {
    let n = spec.rank;
    let dim = spec.ambient_dim();
    (0..n)
        .map(|i| {
            if spec.family == Family::B && i == n - 1 {
                RootVec(vec![half(1); dim])
            } else {
                let mut v = RootVec::zero(dim);
                for k in 0..=i {
                    v.0[k] = Q::one();
                }
                v
            }
        })
        .collect()
}

impl RootSystem {
    pub fn new(spec: RootSystemSpec) -> Result<Self> {
        spec.validate()?;
        let dim = spec.ambient_dim();
        let (pos, simple) = positive_roots(&spec);
        let n_pos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|r| -r));
        let coroots = roots
            .iter()
            .map(|r| r.scale(q(2) / r.dot(r)))
            .collect::<Vec<_>>();
        let omegas = fundamental_coweights(&spec);
        let rho = pos
            .iter()
            .fold(RootVec::zero(dim), |acc, r| &acc + r)
            .scale(half(1));
        let generic = match spec.family {
            Family::A => RootVec((0..dim).map(|i| q((dim - 1 - i) as i64)).collect()),
            _ => RootVec((0..dim).map(|i| q((dim - i) as i64)).collect()),
        };

        let reflection = |r: &RootVec| -> Vec<(u8, i8)> {
            let c = q(2) / r.dot(r);
            (0..dim)
                .map(|i| {
                    let e = RootVec::unit(dim, i);
                    let img = &e - &r.scale(c * r.0[i]);
                    let p = img.0.iter().position(|x| !x.is_zero()).unwrap();
                    (p as u8, if img.0[p].is_positive() { 1 } else { -1 })
                })
                .collect()
        };
        let gens: Vec<Vec<(u8, i8)>> = simple.iter().map(|&k| reflection(&roots[k])).collect();

        // enumerate W by closure under right multiplication with generators
        let id: Vec<(u8, i8)> = (0..dim).map(|i| (i as u8, 1)).collect();
        let mut seen: HashMap<Vec<(u8, i8)>, ()> = HashMap::new();
        let mut all = vec![id.clone()];
        seen.insert(id, ());
        let mut head = 0;
        while head < all.len() {
            let cur = WeylElement {
                images: all[head].clone(),
                length: 0,
            };
            head += 1;
            for g in &gens {
                let next = cur.compose(&WeylElement {
                    images: g.clone(),
                    length: 0,
                });
                if seen.insert(next.clone(), ()).is_none() {
                    all.push(next);
                }
            }
        }

        let is_neg = |v: &RootVec| v.dot(&generic).is_negative();
        let length_of = |imgs: &Vec<(u8, i8)>| {
            let w = WeylElement {
                images: imgs.clone(),
                length: 0,
            };
            pos.iter().filter(|r| is_neg(&w.act(r))).count()
        };
        let mut elems: Vec<WeylElement> = all
            .into_iter()
            .map(|images| {
                let length = length_of(&images);
                WeylElement { images, length }
            })
            .collect();

        // lexicographically least reduced word by repeatedly peeling the
        // smallest left descent
        let gen_elems: Vec<WeylElement> = gens
            .iter()
            .map(|g| WeylElement {
                images: g.clone(),
                length: 1,
            })
            .collect();
        let word_of = |w: &WeylElement| -> Vec<usize> {
            let mut cur = w.clone();
            let mut word = Vec::new();
            while cur.length > 0 {
                for (i, s) in gen_elems.iter().enumerate() {
                    let imgs = s.compose(&cur);
                    let l = length_of(&imgs);
                    if l < cur.length {
                        word.push(i);
                        cur = WeylElement {
                            images: imgs,
                            length: l,
                        };
                        break;
                    }
                }
            }
            word
        };
        let mut keyed: Vec<(Vec<usize>, WeylElement)> =
            elems.drain(..).map(|w| (word_of(&w), w)).collect();
        keyed.sort_by(|a, b| a.1.length.cmp(&b.1.length).then_with(|| a.0.cmp(&b.0)));
        let (reduced_words, elements): (Vec<_>, Vec<_>) = keyed.into_iter().unzip();

        let index: HashMap<Vec<(u8, i8)>, WId> = elements
            .iter()
            .enumerate()
            .map(|(i, w)| (w.images.clone(), i))
            .collect();
        let nw = elements.len();
        let mut mult = vec![0u16; nw * nw];
        for a in 0..nw {
            for b in 0..nw {
                mult[a * nw + b] = index[&elements[a].compose(&elements[b])] as u16;
            }
        }
        let inverse: Vec<WId> = (0..nw)
            .map(|a| (0..nw).find(|&b| mult[a * nw + b] == 0).unwrap())
            .collect();
        let simple_refl: Vec<WId> = gens.iter().map(|g| index[g]).collect();
        let root_refl: Vec<WId> = pos.iter().map(|r| index[&reflection(r)]).collect();
        let w0 = (0..nw).max_by_key(|&i| elements[i].length).unwrap();

        let mut below: Vec<WSet> = Vec::with_capacity(nw);
        for w in 0..nw {
            let mut set = WSet::empty(nw);
            set.insert(w);
            for &t in &root_refl {
                let u = mult[t * nw + w] as usize;
                if elements[u].length + 1 == elements[w].length {
                    // indices are sorted by length, so u < w is already done
                    let b = below[u].clone();
                    set.union_with(&b);
                }
            }
            below.push(set);
        }

        Ok(RootSystem {
            spec,
            roots,
            n_pos,
            simple,
            coroots,
            omegas,
            rho,
            generic,
            elements,
            reduced_words,
            index,
            mult,
            inverse,
            simple_refl,
            root_refl,
            below,
            w0,
            class_cache: RwLock::new(HashMap::new()),
            local_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn dim(&self) -> usize {
        self.spec.ambient_dim()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn positive_roots(&self) -> &[RootVec] {
        &self.roots[..self.n_pos]
    }

    pub fn simple_roots(&self) -> Vec<RootVec> {
        self.simple.iter().map(|&k| self.roots[k].clone()).collect()
    }

    pub fn identity(&self) -> WId {
        0
    }

    pub fn mul(&self, a: WId, b: WId) -> WId {
        self.mult[a * self.order() + b] as usize
    }

    pub fn inv(&self, a: WId) -> WId {
        self.inverse[a]
    }

    pub fn length(&self, w: WId) -> usize {
        self.elements[w].length
    }

    pub fn act(&self, w: WId, v: &RootVec) -> RootVec {
        self.elements[w].act(v)
    }

    pub fn simple_reflection(&self, i: usize) -> WId {
        self.simple_refl[i]
    }

    /// The reflection along the positive root `roots[k]`.
    pub fn reflection(&self, k: usize) -> WId {
        self.root_refl[k % self.n_pos]
    }

    pub fn lookup(&self, images: &[(u8, i8)]) -> Option<WId> {
        self.index.get(images).copied()
    }

    pub fn from_word(&self, word: &[usize]) -> WId {
        word.iter()
            .fold(0, |acc, &i| self.mul(acc, self.simple_refl[i]))
    }

    pub fn is_positive_root(&self, v: &RootVec) -> bool {
        v.dot(&self.generic).is_positive()
    }

    pub fn root_index(&self, v: &RootVec) -> Option<usize> {
        self.roots.iter().position(|r| r == v)
    }

    pub fn bruhat_leq(&self, u: WId, w: WId) -> bool {
        self.below[w].contains(u)
    }

    pub fn bruhat_below(&self, w: WId) -> &WSet {
        &self.below[w]
    }

    /// All reduced words of `w`, in lexicographic order.
    pub fn all_reduced_words(&self, w: WId) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.reduced_words_rec(w, &mut prefix, &mut out);
        out
    }

    fn reduced_words_rec(&self, w: WId, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if self.length(w) == 0 {
            out.push(prefix.clone());
            return;
        }
        for i in 0..self.rank() {
            let u = self.mul(self.simple_refl[i], w);
            if self.length(u) < self.length(w) {
                prefix.push(i);
                self.reduced_words_rec(u, prefix, out);
                prefix.pop();
            }
        }
    }

    /// Σ a_i ω_i.
    pub fn coweight(&self, coeffs: &[i64]) -> Result<RootVec> {
        if coeffs.len() != self.rank() {
            return Err(Error::Usage(format!(
                "expected {} coefficients for {}, got {}",
                self.rank(),
                self.spec,
                coeffs.len()
            )));
        }
        Ok(coeffs
            .iter()
            .zip(&self.omegas)
            .fold(RootVec::zero(self.dim()), |acc, (&a, w)| {
                &acc + &w.scale(q(a))
            }))
    }

    /// Coordinates ⟨α_i, v⟩ against the simple roots; these are the
    /// fundamental-coweight coefficients of `v`.
    pub fn fundamental_coords(&self, v: &RootVec) -> Vec<Q> {
        self.simple.iter().map(|&k| self.roots[k].dot(v)).collect()
    }

    /// The vector with fundamental coordinates `coeffs` lying in the coset
    /// `reference + Q^∨`. In type A this fixes the free coordinate-sum
    /// direction; otherwise it is just Σ b_i ω_i. `None` if the coset
    /// contains no such vector.
    pub fn coweight_in_coset(&self, coeffs: &[i64], reference: &RootVec) -> Result<Option<RootVec>> {
        let v = self.coweight(coeffs)?;
        let v = if self.spec.family == Family::A {
            let shift = (reference.sum() - v.sum()) / q(self.dim() as i64);
            if !shift.is_integer() {
                return Ok(None);
            }
            &v + &RootVec(vec![shift; self.dim()])
        } else {
            v
        };
        Ok(if self.in_coroot_coset(&v, reference) { Some(v) } else { None })
    }

    /// Whether `a − b` lies in the coroot lattice spanned by the coroots.
    pub fn in_coroot_coset(&self, a: &RootVec, b: &RootVec) -> bool {
        let d = a - b;
        if !d.0.iter().all(|x| x.is_integer()) {
            return false;
        }
        match self.spec.family {
            Family::A => d.sum().is_zero(),
            // coroots ε_i ± ε_j, ε_i span all of Z^n
            Family::B => true,
            // coroots ε_i ± ε_j, 2ε_i span the even-sum sublattice
            Family::C => d.sum().to_integer() % 2 == 0,
        }
    }

    pub fn is_dominant(&self, v: &RootVec) -> bool {
        self.simple
            .iter()
            .all(|&k| !self.roots[k].dot(v).is_negative())
    }

    pub fn is_regular(&self, v: &RootVec) -> bool {
        self.positive_roots().iter().all(|r| !r.dot(v).is_zero())
    }

    pub fn is_minuscule(&self, i: usize) -> bool {
        let w = &self.omegas[i];
        self.positive_roots().iter().all(|r| r.dot(w) <= Q::one())
    }

    /// The dominant element of W·v.
    pub fn dominant_rep(&self, v: &RootVec) -> RootVec {
        let mut x: Vec<Q> = v.0.clone();
        if self.spec.family != Family::A {
            for c in x.iter_mut() {
                *c = c.abs();
            }
        }
        x.sort_by(|a, b| b.cmp(a));
        RootVec(x)
    }

    /// {w ∈ W : d ∈ w(C̄⁺)}.
    pub fn chamber_classes_of_direction(&self, d: &RootVec) -> Result<Vec<WId>> {
        if d.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(self.class_set(d).iter().collect())
    }

    /// Bit-set form of [`Self::chamber_classes_of_direction`], memoized.
    pub fn class_set(&self, d: &RootVec) -> Arc<WSet> {
        if let Some(s) = self.class_cache.read().unwrap().get(d) {
            return s.clone();
        }
        let mut set = WSet::empty(self.order());
        for w in 0..self.order() {
            let x = self.act(self.inv(w), d);
            if self.is_dominant(&x) {
                set.insert(w);
            }
        }
        let set = Arc::new(set);
        self.class_cache
            .write()
            .unwrap()
            .insert(d.clone(), set.clone());
        set
    }

    /// Number of positive roots with negative pairing: the length of the
    /// shortest w with `v ∈ w(C̄⁺)`, i.e. the length on W/W_v.
    pub fn coset_length(&self, v: &RootVec) -> usize {
        self.positive_roots()
            .iter()
            .filter(|r| r.dot(v).is_negative())
            .count()
    }

    /// Orbit W·v, sorted.
    pub fn orbit(&self, v: &RootVec) -> Vec<RootVec> {
        let mut out: Vec<RootVec> = self.elements.iter().map(|w| w.act(v)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Stabilizer {w : w(v) = v}.
    pub fn stabilizer(&self, v: &RootVec) -> Vec<WId> {
        (0..self.order())
            .filter(|&w| &self.act(w, v) == v)
            .collect()
    }

    /// Dominant coweights Σ a_i ω_i with Σ a_i ≤ `max_sum`.
    pub fn dominant_coeffs_up_to(&self, max_sum: i64) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for _ in 0..self.rank() {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    let used: i64 = p.iter().sum();
                    (0..=max_sum - used).map(move |a| {
                        let mut v = p.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
        }
        out.sort_by(|a, b| {
            a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then_with(|| b.cmp(a))
        });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn group_and_root_counts() {
        for (s, w, p) in [
            ("A1", 2, 1),
            ("A2", 6, 3),
            ("A3", 24, 6),
            ("B2", 8, 4),
            ("C2", 8, 4),
            ("B3", 48, 9),
            ("C3", 48, 9),
            ("B4", 384, 16),
        ] {
            let r = rs(s);
            assert_eq!(r.order(), w, "{s}");
            assert_eq!(r.n_pos, p, "{s}");
        }
    }

    #[test]
    fn coweights_dual_to_simple_roots() {
        for s in ["A3", "B3", "C3", "B2", "C2", "A1"] {
            let r = rs(s);
            for (i, a) in r.simple_roots().iter().enumerate() {
                for (j, w) in r.omegas.iter().enumerate() {
                    let expect = if i == j { q(1) } else { q(0) };
                    assert_eq!(a.dot(w), expect, "{s} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn coroots_are_the_named_family() {
        // B: coroots contain ε_i (short), C: coroots contain 2ε_i (long)
        let b = rs("B2");
        assert!(b.coroots.contains(&RootVec::from_ints(&[1, 0])));
        let c = rs("C2");
        assert!(c.coroots.contains(&RootVec::from_ints(&[2, 0])));
    }

    #[test]
    fn minuscule_nodes() {
        assert!((0..3).all(|i| rs("A3").is_minuscule(i)));
        let b = rs("B3");
        assert_eq!((0..3).map(|i| b.is_minuscule(i)).collect::<Vec<_>>(), [false, false, true]);
        let c = rs("C3");
        assert_eq!((0..3).map(|i| c.is_minuscule(i)).collect::<Vec<_>>(), [true, false, false]);
    }

    #[test]
    fn rho_pairing() {
        let r = rs("A2");
        let lam = r.coweight(&[2, 3]).unwrap();
        assert_eq!(pairing(&lam, &r.rho).unwrap(), q(5));
        assert_eq!(pairing(&RootVec::zero(3), &r.rho).unwrap(), q(0));
        assert!(pairing(&lam, &RootVec::zero(2)).is_err());
        // ⟨λ, 2ρ⟩ = Σ_{α>0} ⟨λ, α⟩
        for s in ["B3", "C3", "A3"] {
            let r = rs(s);
            let lam = r.coweight(&vec![1; r.rank()]).unwrap();
            let sum = r.positive_roots().iter().fold(q(0), |a, x| a + x.dot(&lam));
            assert_eq!(lam.dot(&r.rho.scale(q(2))), sum);
        }
    }

    #[test]
    fn lengths_match_reduced_words() {
        for s in ["A3", "B3", "C3"] {
            let r = rs(s);
            for w in 0..r.order() {
                assert_eq!(r.reduced_words[w].len(), r.length(w));
                assert_eq!(r.from_word(&r.reduced_words[w]), w);
                let v = r.act(r.inv(w), &r.act(w, &r.generic));
                assert_eq!(v, r.generic);
            }
        }
    }

    /// Subword criterion on the fixed reduced word of `w`.
    fn subword_leq(r: &RootSystem, u: WId, w: WId) -> bool {
        let word = &r.reduced_words[w];
        let m = word.len();
        (0u32..1 << m).any(|mask| {
            let sub: Vec<usize> = (0..m).filter(|k| mask >> k & 1 == 1).map(|k| word[k]).collect();
            r.from_word(&sub) == u
        })
    }

    #[test]
    fn bruhat_matches_subword_criterion() {
        for s in ["A2", "B2", "A3", "C3"] {
            let r = rs(s);
            for u in 0..r.order() {
                for w in 0..r.order() {
                    assert_eq!(r.bruhat_leq(u, w), subword_leq(&r, u, w), "{s} {u} {w}");
                }
            }
        }
    }

    #[test]
    fn bruhat_examples_a2() {
        let r = rs("A2");
        let s1 = r.from_word(&[0]);
        let s2 = r.from_word(&[1]);
        let s1s2 = r.from_word(&[0, 1]);
        assert!(r.bruhat_leq(s1, s1s2));
        assert!(!r.bruhat_leq(s1, s2));
        for w in 0..r.order() {
            assert!(r.bruhat_leq(r.identity(), w));
            if w != r.w0 {
                assert!(!r.bruhat_leq(r.w0, w));
            }
        }
    }

    #[test]
    fn chamber_classes_examples() {
        let r = rs("A2");
        assert_eq!(r.chamber_classes_of_direction(&r.generic).unwrap(), vec![0]);
        let s2 = r.from_word(&[1]);
        let mut cls = r.chamber_classes_of_direction(&r.omegas[0]).unwrap();
        cls.sort();
        assert_eq!(cls, vec![0, s2]);
        assert_eq!(r.chamber_classes_of_direction(&-&r.generic).unwrap(), vec![r.w0]);
        assert!(r.chamber_classes_of_direction(&RootVec::zero(3)).is_err());
    }

    #[test]
    fn chamber_classes_are_stabilizer_cosets() {
        for s in ["B3", "C3"] {
            let r = rs(s);
            for (i, om) in r.omegas.iter().enumerate() {
                let stab = r.stabilizer(om);
                for w in 0..r.order() {
                    let d = r.act(w, om);
                    let mut got = r.chamber_classes_of_direction(&d).unwrap();
                    let mut want: Vec<WId> = stab.iter().map(|&s| r.mul(w, s)).collect();
                    got.sort();
                    want.sort();
                    assert_eq!(got, want, "{s} ω{i}");
                }
            }
        }
    }

    #[test]
    fn parse_spec() {
        assert_eq!("c3".parse::<RootSystemSpec>().unwrap(), RootSystemSpec::new(Family::C, 3));
        assert!("D4".parse::<RootSystemSpec>().is_err());
        assert!("A0".parse::<RootSystemSpec>().is_err());
        assert!("A9".parse::<RootSystemSpec>().is_err());
    }
}
