//! Exact sparse integer polynomials in q and in (q, t).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use crate::error::{Error, Result};

/// Univariate polynomial with integer coefficients, sparse exponent map.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IntPolynomial {
    coeffs: BTreeMap<u32, i64>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: u32, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// Build from (exponent, coefficient) pairs.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Dense coefficient list, constant term first.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(e, &c)| (e as u32, c)))
    }

    pub fn add_term(&mut self, exp: u32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: u32) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn eval(&self, q: i64) -> i64 {
        let mut acc = 0i64;
        for (&e, &c) in self.coeffs.iter().rev() {
            acc += c * q.pow(e);
        }
        acc
    }

    /// Multiply by q^k.
    pub fn shift(&self, k: u32) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e + k, c)))
    }

    /// Exact division by (1 + q); fails if a remainder is left.
    pub fn div_exact_one_plus_q(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let deg = self.degree().unwrap();
        let mut dense = vec![0i64; deg as usize + 1];
        for (e, c) in self.terms() {
            dense[e as usize] = c;
        }
        // synthetic division at q = -1, top coefficient down
        let mut quot = vec![0i64; deg as usize];
        let mut carry = 0i64;
        for e in (0..=deg as usize).rev() {
            let c = dense[e] - carry;
            if e == 0 {
                if c != 0 {
                    return Err(Error::Integrity(format!(
                        "polynomial not divisible by 1+q (remainder {c})"
                    )));
                }
            } else {
                quot[e - 1] = c;
                carry = c;
            }
        }
        Ok(Self::from_coeffs(&quot))
    }

    /// JSON object {"q^0": c0, "q^2": c2, ...} in ascending exponent order.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (e, c) in self.terms() {
            map.insert(format!("q^{e}"), serde_json::Value::from(c));
        }
        serde_json::Value::Object(map)
    }
}

impl AddAssign<&IntPolynomial> for IntPolynomial {
    fn add_assign(&mut self, rhs: &IntPolynomial) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;
    fn add(mut self, rhs: IntPolynomial) -> IntPolynomial {
        self += &rhs;
        self
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match e {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}*")?;
                    }
                    if e == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Bivariate polynomial in q and t with integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BiPolynomial {
    coeffs: BTreeMap<(u32, u32), i64>,
}

impl BiPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, q_exp: u32, t_exp: u32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.coeffs.entry((q_exp, t_exp)).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.remove(&(q_exp, t_exp));
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, i64)>) -> Self {
        let mut p = Self::zero();
        for (qe, te, c) in terms {
            p.add_term(qe, te, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Terms as (q_exp, t_exp, coeff) in ascending (q, t) order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, i64)> + '_ {
        self.coeffs.iter().map(|(&(qe, te), &c)| (qe, te, c))
    }

    /// Substitute a constant for t.
    pub fn eval_t(&self, t: i64) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for (qe, te, c) in self.terms() {
            out.add_term(qe, c * t.pow(te));
        }
        out
    }

    pub fn eval(&self, q: i64, t: i64) -> i64 {
        self.terms().map(|(qe, te, c)| c * q.pow(qe) * t.pow(te)).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (qe, te, c) in self.terms() {
            map.insert(format!("q^{qe} t^{te}"), serde_json::Value::from(c));
        }
        serde_json::Value::Object(map)
    }
}

impl AddAssign<&BiPolynomial> for BiPolynomial {
    fn add_assign(&mut self, rhs: &BiPolynomial) {
        for (qe, te, c) in rhs.terms() {
            self.add_term(qe, te, c);
        }
    }
}

impl fmt::Display for BiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (qe, te, c)) in self.terms().enumerate() {
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            let mut head = a != 1;
            if qe == 0 && te == 0 {
                write!(f, "{a}")?;
                continue;
            }
            if head {
                write!(f, "{a}")?;
            }
            if qe > 0 {
                if head {
                    write!(f, "*")?;
                }
                if qe == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{qe}")?;
                }
                head = true;
            }
            if te > 0 {
                if head {
                    write!(f, "*")?;
                }
                if te == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{te}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn div_one_plus_q() {
        // 2 + 3q + q^2 = (1+q)(2+q)
        let p = IntPolynomial::from_coeffs(&[2, 3, 1]);
        let q = p.div_exact_one_plus_q().unwrap();
        assert_eq!(q, IntPolynomial::from_coeffs(&[2, 1]));
        let bad = IntPolynomial::from_coeffs(&[1, 1, 1]);
        assert!(bad.div_exact_one_plus_q().is_err());
    }

    #[test]
    fn display_ascending() {
        let p = IntPolynomial::from_coeffs(&[1, 0, 3]);
        assert_eq!(p.to_string(), "1 + 3*q^2");
    }

    #[test]
    fn bipoly_specializations() {
        let h3 = BiPolynomial::from_terms([(1, 0, 2), (2, 0, 3), (3, 0, 1), (0, 1, 1)]);
        assert_eq!(h3.eval_t(1), IntPolynomial::from_coeffs(&[1, 2, 3, 1]));
        assert_eq!(h3.eval_t(0), IntPolynomial::from_coeffs(&[0, 2, 3, 1]));
        assert_eq!(h3.eval(1, 1), 7);
    }
}
