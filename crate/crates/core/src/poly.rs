//! Sparse bivariate polynomials with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::binom::binomial;

/// `sum c_{i,j} x^i y^j`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, BigInt::one())
    }

    pub fn monomial(i: u32, j: u32, coeff: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, coeff);
        p
    }

    /// `(x - 1)^a (y - 1)^b`, expanded.
    pub fn shifted_power(a: u32, b: u32) -> Self {
        let mut p = Self::zero();
        for i in 0..=a {
            for j in 0..=b {
                let mut c = binomial(a as u64, i as u64) * binomial(b as u64, j as u64);
                if (a - i + b - j) % 2 == 1 {
                    c = -c;
                }
                p.add_term(i, j, c);
            }
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing `(x-degree, y-degree)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Multiplies by `x^i y^j`.
    pub fn shift(&self, i: u32, j: u32) -> Self {
        BivarPoly {
            terms: self.terms.iter().map(|(&(a, b), c)| ((a + i, b + j), c.clone())).collect(),
        }
    }

    /// `p(x + 1, y)` by binomial expansion of each `x^i`.
    pub fn substitute_x_plus_one(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            for l in 0..=i {
                out.add_term(l, j, c * binomial(i as u64, l as u64));
            }
        }
        out
    }

    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * num_traits::pow(x.clone(), i as usize) * num_traits::pow(y.clone(), j as usize))
            .sum()
    }

    pub fn evaluate_i64(&self, x: i64, y: i64) -> BigInt {
        self.evaluate(&BigInt::from(x), &BigInt::from(y))
    }
}

impl AddAssign<&BivarPoly> for BivarPoly {
    fn add_assign(&mut self, rhs: &BivarPoly) {
        for (&(i, j), c) in &rhs.terms {
            self.add_term(i, j, c.clone());
        }
    }
}

impl Add for BivarPoly {
    type Output = BivarPoly;
    fn add(mut self, rhs: BivarPoly) -> BivarPoly {
        self += &rhs;
        self
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(i, j), d) in &rhs.terms {
                out.add_term(a + i, b + j, c * d);
            }
        }
        out
    }
}

impl fmt::Display for BivarPoly {
    /// Terms by decreasing total degree, then decreasing x-degree:
    /// `x^2 + x + y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        for (n, (i, j)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let negative = c.is_negative();
            let mag = c.abs();
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let var = |v: &str, e: u32| match e {
                0 => String::new(),
                1 => v.to_string(),
                _ => format!("{v}^{e}"),
            };
            let vars = [var("x", i), var("y", j)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join("");
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{vars}")?;
            } else {
                write!(f, "{mag}{vars}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    x: u32,
    y: u32,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

impl Serialize for BivarPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            terms: self
                .terms()
                .map(|(x, y, c)| TermJson {
                    x,
                    y,
                    coeff: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BivarPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let mut p = BivarPoly::zero();
        for t in raw.terms {
            let c: BigInt = t.coeff.parse().map_err(serde::de::Error::custom)?;
            p.add_term(t.x, t.y, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example0_tutte() -> BivarPoly {
        let mut p = BivarPoly::zero();
        p.add_term(2, 0, 1.into());
        p.add_term(1, 0, 1.into());
        p.add_term(0, 1, 1.into());
        p
    }

    #[test]
    fn display_orders_by_total_degree() {
        assert_eq!(example0_tutte().to_string(), "x^2 + x + y");
        assert_eq!(BivarPoly::shifted_power(1, 1).to_string(), "xy - x - y + 1");
        assert_eq!(BivarPoly::zero().to_string(), "0");
    }

    #[test]
    fn shift_x_by_one() {
        let s = example0_tutte().substitute_x_plus_one();
        assert_eq!(s.to_string(), "x^2 + 3x + y + 2");
        assert_eq!(BivarPoly::one().substitute_x_plus_one(), BivarPoly::one());
    }

    #[test]
    fn evaluation() {
        let t = example0_tutte();
        assert_eq!(t.evaluate_i64(1, 1), 3.into());
        assert_eq!(t.evaluate_i64(2, 1), 7.into());
        assert_eq!(t.evaluate_i64(2, 2), 8.into());
    }

    #[test]
    fn multiplication_and_cancellation() {
        let p = BivarPoly::shifted_power(2, 0);
        let q = &BivarPoly::shifted_power(1, 0) * &BivarPoly::shifted_power(1, 0);
        assert_eq!(p, q);
        let mut r = p.clone();
        r += &BivarPoly::monomial(2, 0, (-1).into());
        assert_eq!(r.coeff(2, 0), BigInt::zero());
        assert_eq!(r.num_terms(), 2);
    }

    #[test]
    fn json_keeps_big_coefficients() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = BivarPoly::monomial(3, 1, big.clone()) + example0_tutte();
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.starts_with(r#"{"terms":[{"x":0,"y":1,"coeff":"1"}"#));
        let back: BivarPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.coeff(3, 1), big);
    }
}
