//! Hilbert polynomials fitted to exact Hilbert function values.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::binom::binomial;
use crate::decimal::{big_int, rationals};

/// `HP(R/I, t)` with its stabilization point and derived invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FittedHP {
    /// Coefficients in `t`, constant term first. Empty for the zero polynomial.
    #[serde(with = "rationals")]
    pub poly: Vec<BigRational>,
    /// `e_m` with `HP = sum e_m P_m`, `P_m(t) = C(t + m, m)`.
    #[serde(with = "rationals")]
    pub p_basis: Vec<BigRational>,
    pub stable_from: usize,
    /// Dimension of the projective scheme; `None` when it is empty.
    pub dim_proj: Option<usize>,
    /// Normalized leading coefficient, or the total length when `HP = 0`.
    #[serde(with = "big_int")]
    pub degree: BigInt,
    pub implied_height: usize,
    pub window: (usize, usize),
    /// `HF(t)` for `t = 0..=window.1`.
    pub hf: Vec<u64>,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// `p * (t + c)`
fn times_shift(p: &[BigRational], c: &BigRational) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); p.len() + 1];
    for (i, a) in p.iter().enumerate() {
        out[i + 1] += a;
        out[i] += a * c;
    }
    out
}

fn add_scaled(acc: &mut Vec<BigRational>, p: &[BigRational], s: &BigRational) {
    if acc.len() < p.len() {
        acc.resize(p.len(), BigRational::zero());
    }
    for (a, b) in acc.iter_mut().zip(p) {
        *a += b * s;
    }
    trim(acc);
}

/// `P_m(t) = (t + 1)(t + 2)...(t + m) / m!`
fn p_poly(m: usize) -> Vec<BigRational> {
    let mut p = vec![BigRational::one()];
    for j in 1..=m {
        p = times_shift(&p, &q(j as i64));
    }
    let fact = BigRational::from_integer((1..=m as u64).map(BigInt::from).product());
    p.into_iter().map(|c| c / &fact).collect()
}

/// `C(t - s, i)` as a polynomial in `t`.
fn shifted_binomial(s: usize, i: usize) -> Vec<BigRational> {
    let mut p = vec![BigRational::one()];
    for j in 0..i {
        p = times_shift(&p, &q(-(s as i64) - j as i64));
    }
    let fact = BigRational::from_integer((1..=i as u64).map(BigInt::from).product());
    p.into_iter().map(|c| c / &fact).collect()
}

fn to_p_basis(poly: &[BigRational]) -> Vec<BigRational> {
    let mut rest = poly.to_vec();
    trim(&mut rest);
    let mut e = vec![BigRational::zero(); rest.len()];
    while let Some(lead) = rest.last().cloned() {
        let m = rest.len() - 1;
        let fact = BigRational::from_integer((1..=m as u64).map(BigInt::from).product());
        let coeff = lead * fact;
        add_scaled(&mut rest, &p_poly(m), &-coeff.clone());
        e[m] = coeff;
    }
    e
}

/// `sum_i (-1)^(k-i) C(k, i) hf[t + i]`
fn kth_difference(hf: &[u64], t: usize, k: usize) -> BigInt {
    (0..=k)
        .map(|i| {
            let term = binomial(k as u64, i as u64) * BigInt::from(hf[t + i]);
            if (k - i).is_multiple_of(2) {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Fits the Hilbert polynomial of a quotient of `K[x_1..x_k]`, given
/// `hf[t]` for `t = 0..=hi`. The polynomial has degree below `k`, so `k`-th
/// differences vanish where `HF = HP`. Stabilization is accepted at the
/// smallest `s >= lo` with vanishing differences on all of `[s, hi]` and at
/// least `k + 2` samples there. Returns `None` when the window is too short.
pub fn fit_values(nvars: usize, hf: &[u64], lo: usize) -> Option<FittedHP> {
    let k = nvars;
    let hi = hf.len().checked_sub(1)?;
    if hi < lo + k + 1 {
        return None;
    }
    if !kth_difference(hf, hi - k, k).is_zero() {
        return None;
    }
    let mut s = hi - k;
    while s > lo && kth_difference(hf, s - 1, k).is_zero() {
        s -= 1;
    }
    if hi - s < k + 1 {
        return None;
    }
    // Newton interpolation through t = s .. s + k - 1.
    let mut diffs: Vec<BigInt> = hf[s..s + k].iter().map(|&v| BigInt::from(v)).collect();
    let mut poly = Vec::new();
    for i in 0..k {
        add_scaled(&mut poly, &shifted_binomial(s, i), &BigRational::from_integer(diffs[0].clone()));
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    trim(&mut poly);
    let p_basis = to_p_basis(&poly);
    let (dim_proj, degree, implied_height) = if poly.is_empty() {
        let length: u64 = hf.iter().sum();
        (None, BigInt::from(length), k)
    } else {
        let m = poly.len() - 1;
        let lead = p_basis[m].clone();
        debug_assert!(lead.is_integer() && lead.is_positive());
        (Some(m), lead.to_integer(), k - (m + 1))
    };
    Some(FittedHP {
        poly,
        p_basis,
        stable_from: s,
        dim_proj,
        degree,
        implied_height,
        window: (lo, hi),
        hf: hf.to_vec(),
    })
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(BigRational, String)]) -> fmt::Result {
    let mut first = true;
    for (c, name) in terms.iter().rev() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        match (first, c.is_negative()) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            _ => write!(f, " {sign} ")?,
        }
        let mag = c.abs();
        let mag_text = if mag.is_integer() { mag.to_integer().to_string() } else { format!("({mag})") };
        if name.is_empty() {
            write!(f, "{mag_text}")?;
        } else if mag.is_one() {
            write!(f, "{name}")?;
        } else {
            write!(f, "{mag_text}{name}")?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Renders `HP` in the `P_m` basis: `9P_1 - 36P_0`.
pub struct PBasis<'a>(pub &'a FittedHP);

impl fmt::Display for PBasis<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self.0.p_basis.iter().enumerate().map(|(m, c)| (c.clone(), format!("P_{m}"))).collect();
        write_terms(f, &terms)
    }
}

/// Renders `HP` in powers of `t`: `9t - 27`.
impl fmt::Display for FittedHP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self
            .poly
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let name = match i {
                    0 => String::new(),
                    1 => "t".into(),
                    _ => format!("t^{i}"),
                };
                (c.clone(), name)
            })
            .collect();
        write_terms(f, &terms)
    }
}

impl FittedHP {
    pub fn p_basis_display(&self) -> String {
        PBasis(self).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn maximal_power_hf(k: usize, a: usize, hi: usize) -> Vec<u64> {
        (0..=hi)
            .map(|t| {
                if t < a {
                    u64::try_from(binomial((t + k - 1) as u64, (k - 1) as u64)).unwrap()
                } else {
                    0
                }
            })
            .collect()
    }

    #[test]
    fn finite_length_quotient() {
        // R/m^2 in two variables: 1, 2, 0, 0, ...
        let fit = fit_values(2, &maximal_power_hf(2, 2, 8), 0).unwrap();
        assert!(fit.poly.is_empty());
        assert_eq!(fit.degree, 3.into());
        assert_eq!(fit.implied_height, 2);
        assert_eq!(fit.stable_from, 2);
        assert_eq!(fit.to_string(), "0");
        assert_eq!(fit.p_basis_display(), "0");
    }

    #[test]
    fn line_of_degree_nine() {
        // HF of K[x,y,z]/(f), deg f = 9: C(t+2,2) - C(t-7,2)
        let hf: Vec<u64> = (0..=16u64)
            .map(|t| {
                let all = u64::try_from(binomial(t + 2, 2)).unwrap();
                let cut = if t >= 9 { u64::try_from(binomial(t - 7, 2)).unwrap() } else { 0 };
                all - cut
            })
            .collect();
        let fit = fit_values(3, &hf, 8).unwrap();
        assert_eq!(fit.to_string(), "9t - 27");
        assert_eq!(fit.p_basis_display(), "9P_1 - 36P_0");
        assert_eq!(fit.degree, 9.into());
        assert_eq!(fit.implied_height, 1);
        assert_eq!(fit.dim_proj, Some(1));
        assert_eq!(fit.stable_from, 8);
    }

    #[test]
    fn short_or_unstable_windows_are_rejected() {
        assert!(fit_values(3, &[1, 3, 6, 10], 0).is_none());
        // still growing quadratically at the end of the window
        let hf: Vec<u64> = (0..10u64).map(|t| if t < 7 { 1 } else { t * t }).collect();
        assert!(fit_values(2, &hf, 0).is_none());
    }

    #[test]
    fn json_round_trip() {
        let fit = fit_values(2, &[1, 2, 3, 3, 3, 3, 3, 3], 0).unwrap();
        assert_eq!(fit.degree, 3.into());
        assert_eq!(fit.implied_height, 1);
        let back: FittedHP = serde_json::from_str(&serde_json::to_string(&fit).unwrap()).unwrap();
        assert_eq!(back, fit);
    }
}
