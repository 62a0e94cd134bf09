//! Young tableaux of types A, B, C and their bijection with galleries of
//! type γ_λ. Letters are integers: k for k, −k for k̄. Columns are listed
//! in gallery order, so the rightmost column of the diagram comes first.

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::apartment::Segment;
use crate::error::{Error, Result};
use crate::gallery::{Gallery, GalleryType};
use crate::rootdata::{half, q, Family, RootSystem, RootVec};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tableau {
    pub family: Family,
    pub rank: usize,
    pub columns: Vec<Vec<i32>>,
}

/// Position of a letter in 1 < … < n < n̄ < … < 1̄ (type A: 1 < … < n+1).
fn letter_key(rank: usize, k: i32) -> i32 {
    if k > 0 {
        k
    } else {
        2 * rank as i32 + 1 + k
    }
}

fn cmp_letters(rank: usize, a: i32, b: i32) -> Ordering {
    letter_key(rank, a).cmp(&letter_key(rank, b))
}

pub fn letter_to_string(k: i32) -> String {
    if k > 0 {
        k.to_string()
    } else {
        format!("{}\u{305}", -k)
    }
}

/// p_λ: A: p_i = a_i+…+a_n; B: p_i = 2a_i+…+2a_{n−1}+a_n; C: p₁ = a₁+2a₂+…+2a_n,
/// p_i = 2a_i+…+2a_n. Trailing zeros dropped.
pub fn shape_partition(rs: &RootSystem, lambda: &[i64]) -> Result<Vec<usize>> {
    crate::folding::check_dominant(rs, lambda)?;
    let n = rs.rank();
    let mut p: Vec<usize> = (0..n)
        .map(|i| {
            let s: i64 = match rs.spec.family {
                Family::A => lambda[i..].iter().sum(),
                Family::B => lambda[i..n - 1].iter().map(|a| 2 * a).sum::<i64>() + lambda[n - 1],
                Family::C => {
                    let tail: i64 = lambda[i.max(1)..].iter().map(|a| 2 * a).sum();
                    if i == 0 {
                        lambda[0] + tail
                    } else {
                        tail
                    }
                }
            };
            s as usize
        })
        .collect();
    while p.last() == Some(&0) {
        p.pop();
    }
    Ok(p)
}

fn column_of(rs: &RootSystem, v: &RootVec) -> Result<Vec<i32>> {
    let mut col = Vec::new();
    for (j, c) in v.0.iter().enumerate() {
        if c.numer() == &0 {
            continue;
        }
        let k = j as i32 + 1;
        col.push(if c.numer() > &0 { k } else { -k });
    }
    if rs.spec.family == Family::A && col.iter().any(|&k| k < 0) {
        return Err(Error::Invalid(format!("{v} is not a type A column weight")));
    }
    col.sort_by(|&a, &b| cmp_letters(rs.rank(), a, b));
    Ok(col)
}

/// Σ ε_k over the letters, with ε_{k̄} = −ε_k.
fn column_vector(rs: &RootSystem, col: &[i32]) -> RootVec {
    let mut v = RootVec::zero(rs.dim());
    for &k in col {
        let j = k.unsigned_abs() as usize - 1;
        v.0[j] += q(k.signum() as i64);
    }
    v
}

pub fn gallery_to_tableau(rs: &RootSystem, g: &Gallery) -> Result<Tableau> {
    g.validate(rs)?;
    let mut columns = Vec::new();
    for (k, et) in g.gtype.0.iter().enumerate() {
        let d = g.direction(k);
        let d = match (et.segment, rs.spec.family) {
            (Segment::Whole, Family::B) if et.index + 1 == rs.rank() => d.scale(q(2)),
            (Segment::Whole, _) => d,
            _ => d.scale(q(2)),
        };
        columns.push(column_of(rs, &d)?);
    }
    Ok(Tableau { family: rs.spec.family, rank: rs.rank(), columns })
}

impl Tableau {
    pub fn from_columns(rs: &RootSystem, columns: Vec<Vec<i32>>) -> Result<Self> {
        let t = Tableau { family: rs.spec.family, rank: rs.rank(), columns };
        t.validate(rs)?;
        Ok(t)
    }

    fn check_root_system(&self, rs: &RootSystem) -> Result<()> {
        if self.family != rs.spec.family || self.rank != rs.rank() {
            return Err(Error::Invalid(format!("tableau of type {}{} used with {}", self.family, self.rank, rs.spec)));
        }
        Ok(())
    }

    /// Row lengths of the diagram.
    pub fn shape(&self) -> Vec<usize> {
        let rows = self.columns.iter().map(Vec::len).max().unwrap_or(0);
        (0..rows).map(|r| self.columns.iter().filter(|c| c.len() > r).count()).collect()
    }

    /// The fundamental blocks read off the columns, in gallery order:
    /// (node index, number of columns used).
    fn blocks(&self, rs: &RootSystem) -> Result<Vec<(usize, usize)>> {
        let n = rs.rank();
        let mut out = Vec::new();
        let mut k = 0;
        while k < self.columns.len() {
            let len = self.columns[k].len();
            if len == 0 || len > n {
                return Err(Error::Invalid(format!("column {} has length {len}", k + 1)));
            }
            let node = len - 1;
            let paired = !rs.is_minuscule(node);
            let width = if paired { 2 } else { 1 };
            if paired && (k + 1 >= self.columns.len() || self.columns[k + 1].len() != len) {
                return Err(Error::Invalid(format!("column {} lacks its partner", k + 1)));
            }
            out.push((node, width));
            k += width;
        }
        if out.windows(2).any(|w| w[0].0 > w[1].0) {
            return Err(Error::Invalid("column lengths do not form a Young diagram".into()));
        }
        Ok(out)
    }

    pub fn validate(&self, rs: &RootSystem) -> Result<()> {
        self.check_root_system(rs)?;
        let n = rs.rank() as i32;
        for (k, col) in self.columns.iter().enumerate() {
            for &x in col {
                let ok = match self.family {
                    Family::A => (1..=n + 1).contains(&x),
                    _ => x != 0 && x.abs() <= n,
                };
                if !ok {
                    return Err(Error::Invalid(format!("letter {x} out of range in column {}", k + 1)));
                }
            }
            if col.windows(2).any(|w| cmp_letters(rs.rank(), w[0], w[1]) != Ordering::Less) {
                return Err(Error::Invalid(format!("column {} is not strictly increasing", k + 1)));
            }
            if col.iter().any(|&x| col.contains(&-x)) {
                return Err(Error::Invalid(format!("column {} contains both k and k̄", k + 1)));
            }
        }
        let mut k = 0;
        for (_, width) in self.blocks(rs)? {
            if width == 2 {
                let (a, b) = (&self.columns[k], &self.columns[k + 1]);
                let mut ia: Vec<i32> = a.iter().map(|x| x.abs()).collect();
                let mut ib: Vec<i32> = b.iter().map(|x| x.abs()).collect();
                ia.sort_unstable();
                ib.sort_unstable();
                if ia != ib {
                    return Err(Error::Invalid(format!("columns {} and {} use different indices", k + 1, k + 2)));
                }
                let flips = a.iter().filter(|x| !b.contains(x)).count();
                if self.family == Family::C && flips % 2 == 1 {
                    return Err(Error::Invalid(format!("columns {} and {} differ by an odd number of signs", k + 1, k + 2)));
                }
            }
            k += width;
        }
        Ok(())
    }

    /// λ in fundamental coordinates.
    pub fn lambda(&self, rs: &RootSystem) -> Result<Vec<i64>> {
        let mut l = vec![0i64; rs.rank()];
        for (node, _) in self.blocks(rs)? {
            l[node] += 1;
        }
        Ok(l)
    }

    /// Rows weakly increase from left to right.
    pub fn is_semistandard(&self) -> bool {
        self.columns.windows(2).all(|w| {
            let (right, left) = (&w[0], &w[1]);
            right
                .iter()
                .zip(left)
                .all(|(&r, &l)| cmp_letters(self.rank, l, r) != Ordering::Greater)
        })
    }

    /// The target of the corresponding gallery.
    pub fn weight(&self, rs: &RootSystem) -> Result<RootVec> {
        let g = tableau_to_gallery(rs, self)?;
        Ok(g.target().clone())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.columns)
    }

    /// Rows top to bottom, columns left to right as drawn.
    pub fn pretty(&self) -> String {
        let shape = self.shape();
        let drawn: Vec<&Vec<i32>> = self.columns.iter().rev().collect();
        let mut s = String::new();
        for (r, &len) in shape.iter().enumerate() {
            let cells: Vec<String> = drawn.iter().take(len).map(|c| letter_to_string(c[r])).collect();
            let _ = writeln!(s, "{}", cells.join(" "));
        }
        s
    }
}

pub fn tableau_to_gallery(rs: &RootSystem, t: &Tableau) -> Result<Gallery> {
    t.validate(rs)?;
    let lambda = t.lambda(rs)?;
    let gtype = GalleryType::of_lambda(rs, &lambda)?;
    let mut dirs = Vec::with_capacity(t.columns.len());
    for (col, et) in t.columns.iter().zip(&gtype.0) {
        let v = column_vector(rs, col);
        let d = match (et.segment, rs.spec.family) {
            (Segment::Whole, Family::B) if et.index + 1 == rs.rank() => v.scale(half(1)),
            (Segment::Whole, _) => v,
            _ => v.scale(half(1)),
        };
        dirs.push(d);
    }
    Gallery::from_directions(rs, gtype, &dirs)
}

/// Tableaux of shape p_λ for every gallery of type γ_λ, in enumeration order.
pub fn all_tableaux(rs: &RootSystem, lambda: &[i64]) -> Result<Vec<Tableau>> {
    let t = GalleryType::of_lambda(rs, lambda)?;
    crate::gallery::enumerate_of_type(rs, &t)
        .iter()
        .map(|g| gallery_to_tableau(rs, g))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folding::{is_ls, is_positively_folded};
    use crate::gallery::{enumerate_of_type, gamma_lambda};
    use crate::oracles::kostka;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    fn bar(k: i32) -> i32 {
        -k
    }

    #[test]
    fn shapes() {
        assert_eq!(shape_partition(&rs("A3"), &[1, 1, 1]).unwrap(), vec![3, 2, 1]);
        assert_eq!(shape_partition(&rs("B3"), &[1, 1, 1]).unwrap(), vec![5, 3, 1]);
        assert_eq!(shape_partition(&rs("C3"), &[1, 1, 1]).unwrap(), vec![5, 4, 2]);
        assert!(shape_partition(&rs("C3"), &[0, 0, 0]).unwrap().is_empty());
        for s in ["A2", "B2", "C2", "B3", "C3"] {
            let r = rs(s);
            for l in r.dominant_coeffs_up_to(2) {
                let g = gamma_lambda(&r, &l).unwrap();
                let t = gallery_to_tableau(&r, &g).unwrap();
                assert_eq!(t.shape(), shape_partition(&r, &l).unwrap());
            }
        }
    }

    #[test]
    fn highest_weight_filling() {
        for s in ["A3", "B3", "C3"] {
            let r = rs(s);
            let g = gamma_lambda(&r, &[1, 1, 1]).unwrap();
            let t = gallery_to_tableau(&r, &g).unwrap();
            for (row, _) in t.shape().iter().enumerate() {
                for c in &t.columns {
                    if let Some(&x) = c.get(row) {
                        assert_eq!(x, row as i32 + 1);
                    }
                }
            }
            assert!(t.is_semistandard());
        }
    }

    #[test]
    fn example_tableaux_of_rank_three() {
        // columns right to left
        let a = Tableau::from_columns(&rs("A3"), vec![vec![3], vec![1, 3], vec![1, 2, 3]]).unwrap();
        let b = Tableau::from_columns(
            &rs("B3"),
            vec![vec![bar(2)], vec![2], vec![2, bar(1)], vec![1, 2], vec![1, 2, bar(3)]],
        )
        .unwrap();
        let c = Tableau::from_columns(
            &rs("C3"),
            vec![vec![bar(3)], vec![3, bar(2)], vec![2, bar(3)], vec![1, bar(3), bar(2)], vec![1, 2, 3]],
        )
        .unwrap();
        for (t, s) in [(&a, "A3"), (&b, "B3"), (&c, "C3")] {
            let r = rs(s);
            assert!(t.is_semistandard());
            assert_eq!(t.lambda(&r).unwrap(), vec![1, 1, 1]);
            let g = tableau_to_gallery(&r, t).unwrap();
            assert_eq!(&gallery_to_tableau(&r, &g).unwrap(), t);
            assert!(is_positively_folded(&r, &g));
        }
        assert_eq!(a.pretty(), "1 1 3\n2 3\n3\n");
        // semistandard but not LS
        let r = rs("B3");
        let g = tableau_to_gallery(&r, &b).unwrap();
        assert!(!is_ls(&r, &g).unwrap());
    }

    #[test]
    fn malformed_tableaux_rejected() {
        let r = rs("C3");
        // k and k̄ in one column
        assert!(Tableau::from_columns(&r, vec![vec![1, bar(1)]]).is_err());
        // odd number of sign changes in a C pair
        assert!(Tableau::from_columns(&r, vec![vec![1, 2], vec![1, bar(2)]]).is_err());
        // missing partner
        assert!(Tableau::from_columns(&r, vec![vec![1, 2]]).is_err());
        // not increasing
        assert!(Tableau::from_columns(&r, vec![vec![bar(3)], vec![2, 1], vec![1, 2]]).is_err());
        // B allows a single sign change
        assert!(Tableau::from_columns(&rs("B3"), vec![vec![1, 2], vec![1, bar(2)]]).is_ok());
        // a row descent
        let t = Tableau::from_columns(&rs("A2"), vec![vec![1], vec![2]]).unwrap();
        assert!(!t.is_semistandard());
    }

    #[test]
    fn bijection_and_semistandard_iff_pf() {
        for s in ["A2", "A3", "B2", "C2", "B3", "C3"] {
            let r = rs(s);
            for l in r.dominant_coeffs_up_to(2) {
                let t = GalleryType::of_lambda(&r, &l).unwrap();
                let gs = enumerate_of_type(&r, &t);
                let mut seen = std::collections::HashSet::new();
                for g in &gs {
                    let tab = gallery_to_tableau(&r, g).unwrap();
                    assert_eq!(&tableau_to_gallery(&r, &tab).unwrap(), g);
                    assert_eq!(tab.is_semistandard(), is_positively_folded(&r, g), "{s} {l:?} {:?}", tab.columns);
                    assert_eq!(&tab.weight(&r).unwrap(), g.target());
                    assert!(seen.insert(tab));
                }
            }
        }
    }

    #[test]
    fn type_a_ssyt_counts() {
        let r = rs("A2");
        let l = [2, 1];
        let tabs = all_tableaux(&r, &l).unwrap();
        let shape = [3i64, 1, 0];
        for content in [[3, 1, 0], [2, 1, 1], [2, 2, 0], [1, 2, 1]] {
            let n = tabs
                .iter()
                .filter(|t| t.is_semistandard())
                .filter(|t| {
                    let w = t.weight(&r).unwrap();
                    w == RootVec::from_ints(&content)
                })
                .count() as u64;
            assert_eq!(n, kostka(&shape, &content));
        }
    }
}
