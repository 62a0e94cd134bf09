//! Independent ground truth: the Hall–Littlewood polynomial from its
//! defining W-sum, Freudenthal multiplicities, the Weyl dimension formula,
//! and Kostka numbers.

use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::folding::check_dominant;
use crate::hlengine::FormalCharacter;
use crate::poly::QPoly;
use crate::rootdata::{half, q, Family, RootSystem, RootVec, Q};

/// Exponents are stored doubled so that half-integral coweights get integer
/// keys.
type Key = Vec<i64>;
type Laurent = HashMap<Key, QPoly>;

fn key(v: &RootVec) -> Key {
    v.0.iter()
        .map(|c| {
            let d = c * q(2);
            assert!(d.is_integer(), "exponent with denominator above 2");
            d.to_integer()
        })
        .collect()
}

fn unkey(k: &[i64]) -> RootVec {
    RootVec(k.iter().map(|&c| half(c)).collect())
}

fn shifted(k: &[i64], by: &[i64], sign: i64) -> Key {
    k.iter().zip(by).map(|(a, b)| a + sign * b).collect()
}

/// P_λ as a map from exponent to a polynomial in t = q⁻¹.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HlExpansion {
    terms: BTreeMap<Key, QPoly>,
}

impl HlExpansion {
    /// Coefficient of x^μ, a polynomial in t = q⁻¹.
    pub fn coefficient(&self, mu: &RootVec) -> QPoly {
        self.terms.get(&key(mu)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (RootVec, &QPoly)> {
        self.terms.iter().map(|(k, p)| (unkey(k), p))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

fn add_term(map: &mut Laurent, k: Key, c: &QPoly) {
    *map.entry(k).or_default() += c;
}

/// f / (1 − x^{−β}), failing unless the division is exact. The quotient g
/// satisfies g_e = f_e + g_{e+β}, so along each β-chain it is the running
/// sum of f from the top, and the full chain sum must vanish.
fn divide_one_minus(f: Laurent, beta: &[i64]) -> Result<Laurent> {
    let bb: i64 = beta.iter().map(|b| b * b).sum();
    let mut chains: HashMap<Key, BTreeMap<i64, (Key, QPoly)>> = HashMap::new();
    for (e, c) in f {
        if c.is_zero() {
            continue;
        }
        let eb: i64 = e.iter().zip(beta).map(|(a, b)| a * b).sum();
        // the component of e orthogonal to β, scaled by |β|², names the chain
        let id: Key = e.iter().zip(beta).map(|(a, b)| a * bb - eb * b).collect();
        chains.entry(id).or_default().insert(eb, (e, c));
    }
    let mut out = Laurent::new();
    for chain in chains.into_values() {
        let lo = *chain.keys().next().unwrap();
        let (&hi, (top, _)) = chain.iter().next_back().unwrap();
        let mut e = top.clone();
        let mut pos = hi;
        let mut acc = QPoly::zero();
        while pos >= lo {
            if let Some((_, c)) = chain.get(&pos) {
                acc += c;
            }
            if !acc.is_zero() {
                out.insert(e.clone(), acc.clone());
            }
            e = shifted(&e, beta, -1);
            pos -= bb;
        }
        if !acc.is_zero() {
            return Err(Error::Internal("the Weyl denominator does not divide the W-sum".into()));
        }
    }
    Ok(out)
}

/// ρ′, half the sum of the positive coroots.
fn rho_dual(rs: &RootSystem) -> RootVec {
    rs.coroots[..rs.n_pos]
        .iter()
        .fold(RootVec::zero(rs.dim()), |a, b| &a + b)
        .scale(half(1))
}

/// P_λ = W_λ(t)⁻¹ Σ_w w(x^λ Π_{α>0} (1 − t x^{−α^∨}) / (1 − x^{−α^∨})),
/// t = q⁻¹, evaluated as x^{−ρ′} Σ_w ε(w) w(x^{λ+ρ′} Π (1 − t x^{−α^∨}))
/// divided exactly by Π (1 − x^{−α^∨}) and by W_λ(t).
pub fn hall_littlewood_direct(rs: &RootSystem, lambda: &[i64]) -> Result<HlExpansion> {
    check_dominant(rs, lambda)?;
    let lam = rs.coweight(lambda)?;
    let rho = rho_dual(rs);
    let pos_coroots: Vec<Key> = rs.coroots[..rs.n_pos].iter().map(key).collect();
    let minus_t = QPoly::new(vec![0, -1]);

    let mut prod = Laurent::new();
    prod.insert(vec![0; rs.dim()], QPoly::one());
    for b in &pos_coroots {
        let mut next = prod.clone();
        for (e, c) in &prod {
            add_term(&mut next, shifted(e, b, -1), &(c * &minus_t));
        }
        next.retain(|_, c| !c.is_zero());
        prod = next;
    }
    let base = &lam + &rho;
    let terms: Vec<(RootVec, QPoly)> = prod.iter().map(|(e, c)| (&base + &unkey(e), c.clone())).collect();

    let mut num = Laurent::new();
    for w in 0..rs.order() {
        let sign = if rs.length(w).is_multiple_of(2) { QPoly::one() } else { -&QPoly::one() };
        for (e, c) in &terms {
            add_term(&mut num, key(&rs.act(w, e)), &(c * &sign));
        }
    }
    let rho_key = key(&rho);
    let mut f: Laurent = num
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (shifted(&e, &rho_key, -1), c))
        .collect();
    for b in &pos_coroots {
        f = divide_one_minus(f, b)?;
    }

    let stab = rs.stabilizer(&lam);
    let mut wl = vec![0i64; rs.n_pos + 1];
    for w in stab {
        wl[rs.length(w)] += 1;
    }
    let wl = QPoly::new(wl);
    let mut terms = BTreeMap::new();
    for (e, c) in f {
        let d = c
            .div_exact(&wl)
            .ok_or_else(|| Error::Internal("W_λ(t) does not divide a coefficient".into()))?;
        if !d.is_zero() {
            terms.insert(e, d);
        }
    }
    Ok(HlExpansion { terms })
}

/// L_{λ,μ}(q) = q^{⟨ρ,λ+μ⟩} · [x^μ] P_λ, as a polynomial in q.
pub fn l_from_direct(rs: &RootSystem, lambda: &[i64], mu: &[i64]) -> Result<QPoly> {
    let p = hall_littlewood_direct(rs, lambda)?;
    l_from_expansion(rs, &p, lambda, mu)
}

/// As [`l_from_direct`], reusing an expansion of P_λ.
pub fn l_from_expansion(rs: &RootSystem, p: &HlExpansion, lambda: &[i64], mu: &[i64]) -> Result<QPoly> {
    check_dominant(rs, mu)?;
    let lam = rs.coweight(lambda)?;
    let Some(m) = rs.coweight_in_coset(mu, &lam)? else {
        return Ok(QPoly::zero());
    };
    let c = p.coefficient(&m);
    let n = (&lam + &m).dot(&rs.rho);
    if !n.is_integer() {
        return Err(Error::Internal(format!("⟨ρ, λ+μ⟩ = {n} is not an integer")));
    }
    let n = n.to_integer();
    let mut out = vec![0i64; n.max(0) as usize + 1];
    for (k, &a) in c.coeffs.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let d = n - k as i64;
        if d < 0 {
            return Err(Error::Internal(format!("negative power q^{d} in L_{{λ,μ}}")));
        }
        out[d as usize] += a;
    }
    Ok(QPoly::new(out))
}

/// Dominant weights of V(λ) for the algebra whose roots are the coroots,
/// with multiplicities from Freudenthal's recursion.
pub fn freudenthal_dominant(rs: &RootSystem, lambda: &[i64]) -> Result<BTreeMap<RootVec, u64>> {
    check_dominant(rs, lambda)?;
    let lam = rs.coweight(lambda)?;
    let pos = &rs.coroots[..rs.n_pos];

    let mut seen = std::collections::BTreeSet::from([lam.clone()]);
    let mut queue = vec![lam.clone()];
    while let Some(m) = queue.pop() {
        for b in pos {
            let n = &m - b;
            if rs.is_dominant(&n) && seen.insert(n.clone()) {
                queue.push(n);
            }
        }
    }
    let mut order: Vec<RootVec> = seen.into_iter().collect();
    order.sort_by_key(|m| ((&lam - m).dot(&rs.rho), m.clone()));

    let rho = rho_dual(rs);
    let lr = &lam + &rho;
    let top = lr.dot(&lr);
    let bound = lam.dot(&lam);
    let mut mult: BTreeMap<RootVec, u64> = BTreeMap::new();
    for m in order {
        if m == lam {
            mult.insert(m, 1);
            continue;
        }
        let mut s = Q::zero();
        for b in pos {
            let mut v = &m + b;
            while v.dot(&v) <= bound {
                if let Some(&k) = mult.get(&rs.dominant_rep(&v)) {
                    s += q(k as i64) * v.dot(b);
                }
                v = &v + b;
            }
        }
        let mr = &m + &rho;
        let val = q(2) * s / (top - mr.dot(&mr));
        if !val.is_integer() || val.is_negative() {
            return Err(Error::Internal(format!("Freudenthal multiplicity {val} at {m}")));
        }
        let k = val.to_integer() as u64;
        if k > 0 {
            mult.insert(m, k);
        }
    }
    Ok(mult)
}

/// Full weight multiplicities of V(λ).
pub fn freudenthal_character(rs: &RootSystem, lambda: &[i64]) -> Result<FormalCharacter> {
    let mut out = FormalCharacter::new();
    for (m, k) in freudenthal_dominant(rs, lambda)? {
        for v in rs.orbit(&m) {
            out.insert(v, k);
        }
    }
    Ok(out)
}

/// Π_{β>0} (λ+ρ′, β) / (ρ′, β) over positive coroots β.
pub fn weyl_dimension(rs: &RootSystem, lambda: &[i64]) -> Result<u64> {
    check_dominant(rs, lambda)?;
    let lam = rs.coweight(lambda)?;
    let rho = rho_dual(rs);
    let lr = &lam + &rho;
    let d = rs.coroots[..rs.n_pos]
        .iter()
        .fold(Q::from_integer(1), |acc, b| acc * lr.dot(b) / rho.dot(b));
    if !d.is_integer() {
        return Err(Error::Internal(format!("Weyl dimension {d} is not an integer")));
    }
    Ok(d.to_integer() as u64)
}

/// The partition (λ₁ ≥ … ≥ λ_{n+1} = 0) of a type A coweight.
pub fn type_a_partition(rs: &RootSystem, lambda: &[i64]) -> Result<Vec<i64>> {
    if rs.spec.family != Family::A {
        return Err(Error::Usage("Kostka numbers are defined for type A".into()));
    }
    let v = rs.coweight(lambda)?;
    Ok(v.0.iter().map(|c| c.to_integer()).collect())
}

/// Number of semistandard tableaux of shape `shape` and content `content`,
/// adding one horizontal strip per letter.
pub fn kostka(shape: &[i64], content: &[i64]) -> u64 {
    if shape.iter().any(|&x| x < 0)
        || content.iter().any(|&x| x < 0)
        || shape.iter().sum::<i64>() != content.iter().sum::<i64>()
        || shape.windows(2).any(|w| w[0] < w[1])
    {
        return 0;
    }
    fn strips(cur: &[i64], shape: &[i64], i: usize, left: i64, next: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == cur.len() {
            if left == 0 {
                out.push(next.clone());
            }
            return;
        }
        let cap = if i == 0 { shape[0] } else { shape[i].min(cur[i - 1]) };
        for add in 0..=left.min(cap - cur[i]).max(0) {
            next[i] = cur[i] + add;
            strips(cur, shape, i + 1, left - add, next, out);
        }
        next[i] = cur[i];
    }
    let mut states: HashMap<Vec<i64>, u64> = HashMap::from([(vec![0; shape.len()], 1)]);
    for &m in content {
        let mut nxt: HashMap<Vec<i64>, u64> = HashMap::new();
        for (cur, n) in states {
            let mut out = Vec::new();
            strips(&cur, shape, 0, m, &mut cur.clone(), &mut out);
            for s in out {
                *nxt.entry(s).or_default() += n;
            }
        }
        states = nxt;
    }
    states.get(shape).copied().unwrap_or(0)
}

/// K_{λ,μ} for dominant type A coweights, μ placed in the coset of λ.
pub fn kostka_coweights(rs: &RootSystem, lambda: &[i64], mu: &[i64]) -> Result<u64> {
    let shape = type_a_partition(rs, lambda)?;
    check_dominant(rs, mu)?;
    let lam = rs.coweight(lambda)?;
    let Some(m) = rs.coweight_in_coset(mu, &lam)? else {
        return Ok(0);
    };
    let content: Vec<i64> = m.0.iter().map(|c| c.to_integer()).collect();
    Ok(kostka(&shape, &content))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn trivial_lambda() {
        let r = rs("C2");
        let p = hall_littlewood_direct(&r, &[0, 0]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.coefficient(&RootVec::zero(2)), QPoly::one());
        assert_eq!(l_from_direct(&r, &[0, 0], &[0, 0]).unwrap(), QPoly::one());
    }

    #[test]
    fn a1_hand_expansion() {
        // P_(2,0) = m_(2,0) + (1 − t) m_(1,1)
        let r = rs("A1");
        let p = hall_littlewood_direct(&r, &[2]).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.coefficient(&RootVec::from_ints(&[2, 0])), QPoly::one());
        assert_eq!(p.coefficient(&RootVec::from_ints(&[0, 2])), QPoly::one());
        assert_eq!(p.coefficient(&RootVec::from_ints(&[1, 1])), QPoly::new(vec![1, -1]));
        assert_eq!(l_from_direct(&r, &[2], &[0]).unwrap(), QPoly::q_minus_one());
    }

    #[test]
    fn a2_worked_example() {
        let r = rs("A2");
        assert_eq!(l_from_direct(&r, &[2, 1], &[2, 1]).unwrap().to_string(), "q^6");
        assert_eq!(l_from_direct(&r, &[2, 1], &[0, 2]).unwrap().to_string(), "q^5 - q^4");
        assert_eq!(l_from_direct(&r, &[2, 1], &[1, 0]).unwrap().to_string(), "2q^4 - 2q^3");
        assert!(l_from_direct(&r, &[2, 1], &[1, 1]).unwrap().is_zero());
    }

    #[test]
    fn expansion_is_symmetric() {
        for (s, l) in [("B2", vec![1, 1]), ("C3", vec![0, 1, 1]), ("B3", vec![0, 0, 2])] {
            let r = rs(s);
            let p = hall_littlewood_direct(&r, &l).unwrap();
            for (e, c) in p.terms() {
                for w in 0..r.order() {
                    assert_eq!(&p.coefficient(&r.act(w, &e)), c);
                }
            }
        }
    }

    #[test]
    fn euler_characteristic() {
        let r = rs("B2");
        for l in r.dominant_coeffs_up_to(3) {
            let p = hall_littlewood_direct(&r, &l).unwrap();
            for m in r.dominant_coeffs_up_to(6) {
                let v = l_from_expansion(&r, &p, &l, &m).unwrap();
                assert_eq!(v.eval(1), i64::from(l == m), "{l:?} {m:?}");
            }
        }
    }

    #[test]
    fn freudenthal_matches_weyl() {
        for s in ["A1", "A2", "A3", "B2", "C2", "B3", "C3"] {
            let r = rs(s);
            for l in r.dominant_coeffs_up_to(3) {
                let ch = freudenthal_character(&r, &l).unwrap();
                assert_eq!(ch.values().sum::<u64>(), weyl_dimension(&r, &l).unwrap(), "{s} {l:?}");
                let lam = r.coweight(&l).unwrap();
                for v in r.orbit(&lam) {
                    assert_eq!(ch[&v], 1);
                }
            }
        }
        let r = rs("A2");
        assert_eq!(weyl_dimension(&r, &[2, 1]).unwrap(), 15);
        assert_eq!(freudenthal_character(&r, &[0, 0]).unwrap().len(), 1);
    }

    #[test]
    fn known_dimensions() {
        // dual algebras: so(2n+1) for B, sp(2n) for C
        assert_eq!(weyl_dimension(&rs("B2"), &[0, 1]).unwrap(), 4);
        assert_eq!(weyl_dimension(&rs("B3"), &[0, 0, 1]).unwrap(), 8);
        assert_eq!(weyl_dimension(&rs("C3"), &[1, 0, 0]).unwrap(), 6);
        assert_eq!(weyl_dimension(&rs("B3"), &[1, 0, 0]).unwrap(), 7);
    }

    #[test]
    fn kostka_values() {
        assert_eq!(kostka(&[3, 1], &[2, 1, 1]), 2);
        assert_eq!(kostka(&[3, 1], &[2, 2]), 1);
        assert_eq!(kostka(&[2, 1], &[1, 1, 1]), 2);
        assert_eq!(kostka(&[3, 2, 1], &[3, 2, 1]), 1);
        assert_eq!(kostka(&[2, 1], &[3]), 0);
        assert_eq!(kostka(&[2, 2], &[1, 1, 1, 1]), 2);
        let r = rs("A3");
        assert!(kostka_coweights(&rs("B2"), &[1, 0], &[0, 0]).is_err());
        assert_eq!(kostka_coweights(&r, &[1, 1, 0], &[1, 1, 0]).unwrap(), 1);
    }

    #[test]
    fn type_a_leading_coefficient_is_kostka() {
        let r = rs("A3");
        for l in r.dominant_coeffs_up_to(3) {
            let p = hall_littlewood_direct(&r, &l).unwrap();
            for m in r.dominant_coeffs_up_to(6) {
                let v = l_from_expansion(&r, &p, &l, &m).unwrap();
                let k = kostka_coweights(&r, &l, &m).unwrap();
                match v.leading_data() {
                    Ok((_, c)) => assert_eq!(c as u64, k),
                    Err(_) => assert_eq!(k, 0),
                }
            }
        }
    }
}
