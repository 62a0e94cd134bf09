//! Univariate integer polynomials in q.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients in ascending powers of q, without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QPoly {
    pub coeffs: Vec<i64>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i64, deg: usize) -> Self {
        let mut v = vec![0; deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    /// q - 1
    pub fn q_minus_one() -> Self {
        Self::new(vec![-1, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn eval(&self, x: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * x + c)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// (degree, leading coefficient).
    pub fn leading_data(&self) -> Result<(usize, i64)> {
        match self.degree() {
            Some(d) => Ok((d, self.coeffs[d])),
            None => Err(Error::Invalid("zero polynomial has no leading term".into())),
        }
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &QPoly) -> Option<QPoly> {
        let dd = d.degree()?;
        let lead = d.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return self.is_zero().then(QPoly::zero);
        }
        let mut quot = vec![0; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd];
            if c % lead != 0 {
                return None;
            }
            let f = c / lead;
            quot[k] = f;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= f * dc;
            }
        }
        rem.iter().all(|&c| c == 0).then(|| QPoly::new(quot))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "coeffs": self.coeffs })
    }
}

impl fmt::Display for QPoly {
    /// Descending powers, e.g. `2q^4 - 2q^3`, `q - 1`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let a = c.abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            if a != 1 || k == 0 {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, o: &QPoly) {
        *self = &*self + o;
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, o: &QPoly) -> QPoly {
        self + &-o
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![0; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        QPoly::new(v)
    }
}

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> Self {
        iter.fold(QPoly::zero(), |acc, p| &acc + &p)
    }
}
