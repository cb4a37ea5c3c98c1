//! Invariants of `I_a(C)` read off the Tutte polynomial and the flats of the
//! matroid: height, degree (two ways), minimal generator count, and the
//! minimal primes of lowest height.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binom::{binomial, binomial_i64};
use crate::code::{hierarchy_from_tutte, LinearCode, WeightHierarchy};
use crate::decimal::big_int;
use crate::error::{Error, Result};
use crate::matroid::Flat;
use crate::subset::GroundSubset;
use crate::tutte::{tutte_deletion_contraction, whitney_shift, ShiftedCoeffs};

/// A minimal prime `p_F = <l_i : i in F>` of height `k - r`, appearing in
/// `I_a(C)` with exponent `a - n + |F|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalPrime {
    pub flat: GroundSubset,
    pub rank: usize,
    pub nu: usize,
    pub exponent: usize,
}

/// What the low-height primes leave out of the decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Residual {
    /// `r = 0`: the ideal is the power `m^a` of the irrelevant ideal.
    #[serde(rename = "m^a")]
    MaximalPower,
    /// Components of larger height, not computed.
    #[serde(rename = "K (unknown)")]
    Unknown,
}

/// Either `I_a(C) = m^a`, or the height-`(k - r)` primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LowHeightPrimes {
    MaximalPower { exponent: usize },
    Primes(Vec<MinimalPrime>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealProfile {
    pub a: usize,
    pub r: usize,
    pub j: usize,
    pub height: usize,
    #[serde(with = "big_int")]
    pub degree: BigInt,
    #[serde(with = "big_int")]
    pub mu: BigInt,
    pub primes: Vec<MinimalPrime>,
    pub residual: Residual,
}

fn check_fold(code: &LinearCode, a: usize) -> Result<()> {
    if a == 0 || a > code.n() {
        Err(Error::FoldOutOfRange { a, n: code.n() })
    } else {
        Ok(())
    }
}

/// `(r, j)` with `a = d_r + j` and `d_r < a <= d_{r+1}`.
pub fn fold_position(code: &LinearCode, hierarchy: &WeightHierarchy, a: usize) -> Result<(usize, usize)> {
    check_fold(code, a)?;
    let r = hierarchy
        .interval_of(a)
        .ok_or_else(|| Error::Invariant(format!("no interval of {:?} contains a = {a}", hierarchy.d)))?;
    Ok((r, a - hierarchy.get(r)))
}

/// `ht I_a(C) = k - r`.
pub fn height_of_ideal(code: &LinearCode, hierarchy: &WeightHierarchy, a: usize) -> Result<usize> {
    let (r, _) = fold_position(code, hierarchy, a)?;
    Ok(code.k() - r)
}

/// `deg I_a(C) = sum_{t=0}^{j-1} c_{r, p_r - t}`.
pub fn degree_from_tutte(
    code: &LinearCode,
    coeffs: &ShiftedCoeffs,
    hierarchy: &WeightHierarchy,
    a: usize,
) -> Result<BigInt> {
    let (r, j) = fold_position(code, hierarchy, a)?;
    let p = coeffs
        .p(r)
        .ok_or_else(|| Error::Invariant(format!("p_{r} is undefined")))? as i64;
    Ok((0..j as i64).map(|t| coeffs.c_signed(r, p - t)).sum())
}

/// `deg m^a = C(k + a - 1, k)`.
pub fn degree_of_maximal_power(k: usize, a: usize) -> BigInt {
    binomial((k + a - 1) as u64, k as u64)
}

fn primes_from_flats(flats: &[Flat], n: usize, a: usize) -> Vec<MinimalPrime> {
    flats
        .iter()
        .filter(|f| f.size() + a > n)
        .map(|f| MinimalPrime {
            flat: f.members,
            rank: f.rank,
            nu: f.size(),
            exponent: a + f.size() - n,
        })
        .collect()
}

/// Flats of rank `k - r` with at least `n - a + 1` elements.
pub fn minimal_primes_low_height(
    code: &LinearCode,
    hierarchy: &WeightHierarchy,
    a: usize,
) -> Result<LowHeightPrimes> {
    let (r, _) = fold_position(code, hierarchy, a)?;
    if r == 0 {
        return Ok(LowHeightPrimes::MaximalPower { exponent: a });
    }
    let flats = code.matroid().flats_of_rank(code.k() - r);
    Ok(LowHeightPrimes::Primes(primes_from_flats(&flats, code.n(), a)))
}

/// `deg I_a(C) = sum_p C(nu(p) - n + a + k - r - 1, k - r)`.
pub fn degree_from_primes(
    code: &LinearCode,
    hierarchy: &WeightHierarchy,
    primes: &[MinimalPrime],
    a: usize,
) -> Result<BigInt> {
    let (r, _) = fold_position(code, hierarchy, a)?;
    if r == 0 {
        return Err(Error::Precondition(
            "the prime sum needs r >= 1; for r = 0 the degree is C(k + a - 1, k)".into(),
        ));
    }
    let (n, k) = (code.n() as i64, code.k() as i64);
    let c = k - r as i64;
    Ok(primes
        .iter()
        .map(|p| binomial_i64(p.nu as i64 - n + a as i64 + c - 1, c))
        .sum())
}

/// `mu(I_a(C)) = sum_{u=0}^{min(k, n-a)} c_{k-u, n-a-u}`.
pub fn mu_of_ideal(code: &LinearCode, coeffs: &ShiftedCoeffs, a: usize) -> Result<BigInt> {
    check_fold(code, a)?;
    let (n, k) = (code.n(), code.k());
    Ok((0..=k.min(n - a)).map(|u| coeffs.c(k - u, n - a - u)).sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub alpha: u64,
    pub beta: u64,
    pub gamma: u64,
    #[serde(with = "big_int")]
    pub lhs: BigInt,
    #[serde(with = "big_int")]
    pub rhs: BigInt,
    pub holds: bool,
}

/// `C(α - β + γ - 1, γ - 1) = sum_{u=β}^{α} (-1)^{u-β} C(α, u) C(u - γ, u - β)`
/// for `α > β >= γ >= 1`.
pub fn binomial_identity_check(alpha: u64, beta: u64, gamma: u64) -> Result<IdentityCheck> {
    if !(alpha > beta && beta >= gamma && gamma >= 1) {
        return Err(Error::Precondition(format!(
            "need alpha > beta >= gamma >= 1, got ({alpha}, {beta}, {gamma})"
        )));
    }
    let lhs = binomial(alpha - beta + gamma - 1, gamma - 1);
    let mut rhs = BigInt::zero();
    for u in beta..=alpha {
        let term = binomial(alpha, u) * binomial(u - gamma, u - beta);
        if (u - beta).is_multiple_of(2) {
            rhs += term;
        } else {
            rhs -= term;
        }
    }
    Ok(IdentityCheck {
        alpha,
        beta,
        gamma,
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Every admissible `(α, β, γ)` with `α <= max_alpha`.
pub fn binomial_identity_sweep(max_alpha: u64) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    for alpha in 2..=max_alpha {
        for beta in 1..alpha {
            for gamma in 1..=beta {
                out.push(binomial_identity_check(alpha, beta, gamma).expect("in range"));
            }
        }
    }
    out
}

/// Profiles for `a = 1..n`, using the deletion-contraction engine.
pub fn full_profile(code: &LinearCode) -> Result<Vec<IdealProfile>> {
    let coeffs = whitney_shift(&tutte_deletion_contraction(code.matroid()));
    let hierarchy = hierarchy_from_tutte(&coeffs, code)?;
    full_profile_with(code, &coeffs, &hierarchy)
}

/// Profiles for `a = 1..n`. The two degree formulas are required to agree
/// (and, for `r = 0`, to match `C(k + a - 1, k)`); any disagreement is an
/// [`Error::Invariant`].
pub fn full_profile_with(
    code: &LinearCode,
    coeffs: &ShiftedCoeffs,
    hierarchy: &WeightHierarchy,
) -> Result<Vec<IdealProfile>> {
    hierarchy.validate(code.n())?;
    let (n, k) = (code.n(), code.k());
    let flats: HashMap<usize, Vec<Flat>> = (1..k)
        .into_par_iter()
        .map(|s| (s, code.matroid().flats_of_rank(s)))
        .collect();
    (1..=n)
        .into_par_iter()
        .map(|a| {
            let (r, j) = fold_position(code, hierarchy, a)?;
            let degree = degree_from_tutte(code, coeffs, hierarchy, a)?;
            let mu = mu_of_ideal(code, coeffs, a)?;
            let (primes, residual) = if r == 0 {
                let closed = degree_of_maximal_power(k, a);
                if closed != degree {
                    return Err(Error::Invariant(format!(
                        "a = {a}: Tutte degree {degree} but C(k + a - 1, k) = {closed}"
                    )));
                }
                (Vec::new(), Residual::MaximalPower)
            } else {
                let primes = primes_from_flats(&flats[&(k - r)], n, a);
                let by_primes = degree_from_primes(code, hierarchy, &primes, a)?;
                if by_primes != degree {
                    return Err(Error::Invariant(format!(
                        "a = {a}: Tutte degree {degree} but prime-sum degree {by_primes}"
                    )));
                }
                (primes, Residual::Unknown)
            };
            if !degree.is_positive() || !mu.is_positive() {
                return Err(Error::Invariant(format!("a = {a}: degree {degree}, mu {mu}")));
            }
            Ok(IdealProfile {
                a,
                r,
                j,
                height: k - r,
                degree,
                mu,
                primes,
                residual,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::field::FieldSpec;
    use crate::matrix::ExactMatrix;

    fn setup(code: &LinearCode) -> (ShiftedCoeffs, WeightHierarchy) {
        let c = whitney_shift(&tutte_deletion_contraction(code.matroid()));
        let h = hierarchy_from_tutte(&c, code).unwrap();
        (c, h)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn example0_values() {
        let code = examples::example0();
        let (c, h) = setup(&code);
        let heights: Vec<_> = (1..=3).map(|a| height_of_ideal(&code, &h, a).unwrap()).collect();
        assert_eq!(heights, [2, 2, 1]);
        assert_eq!(degree_from_tutte(&code, &c, &h, 3).unwrap(), 3.into());
        assert_eq!(mu_of_ideal(&code, &c, 3).unwrap(), 1.into());
        let LowHeightPrimes::Primes(primes) = minimal_primes_low_height(&code, &h, 3).unwrap() else {
            panic!("expected primes");
        };
        let flats: Vec<_> = primes.iter().map(|p| p.flat.elements()).collect();
        assert_eq!(flats, [vec![1], vec![2], vec![3]]);
        assert!(primes.iter().all(|p| p.exponent == 1 && p.nu == 1));
        assert_eq!(degree_from_primes(&code, &h, &primes, 3).unwrap(), 3.into());
        assert_eq!(
            minimal_primes_low_height(&code, &h, 1).unwrap(),
            LowHeightPrimes::MaximalPower { exponent: 1 }
        );
    }

    #[test]
    fn b3_tables() {
        let code = examples::b3();
        let profiles = full_profile(&code).unwrap();
        let col = |f: fn(&IdealProfile) -> BigInt| profiles.iter().map(f).collect::<Vec<_>>();
        assert_eq!(col(|p| p.degree.clone()), ints(&[1, 4, 10, 20, 35, 3, 13, 36, 9]));
        assert_eq!(col(|p| p.mu.clone()), ints(&[3, 6, 10, 15, 21, 25, 23, 9, 1]));
        assert_eq!(
            profiles.iter().map(|p| p.height).collect::<Vec<_>>(),
            [3, 3, 3, 3, 3, 2, 2, 2, 1]
        );
    }

    #[test]
    fn b3_primes() {
        let code = examples::b3();
        let (_, h) = setup(&code);
        let LowHeightPrimes::Primes(six) = minimal_primes_low_height(&code, &h, 6).unwrap() else {
            panic!()
        };
        let flats: Vec<_> = six.iter().map(|p| p.flat.elements()).collect();
        assert_eq!(flats, [vec![1, 2, 4, 5], vec![1, 3, 6, 7], vec![2, 3, 8, 9]]);
        assert!(six.iter().all(|p| p.exponent == 1));
        assert_eq!(degree_from_primes(&code, &h, &six, 6).unwrap(), 3.into());

        let LowHeightPrimes::Primes(seven) = minimal_primes_low_height(&code, &h, 7).unwrap() else {
            panic!()
        };
        assert_eq!(seven.iter().filter(|p| p.nu == 4 && p.exponent == 2).count(), 3);
        assert!(seven.iter().filter(|p| p.nu == 3).all(|p| p.exponent == 1));
        assert_eq!(degree_from_primes(&code, &h, &seven, 7).unwrap(), 13.into());
        let LowHeightPrimes::Primes(eight) = minimal_primes_low_height(&code, &h, 8).unwrap() else {
            panic!()
        };
        assert_eq!(degree_from_primes(&code, &h, &eight, 8).unwrap(), 36.into());
    }

    #[test]
    fn identity_code_profile() {
        let g = ExactMatrix::from_i64_rows(
            FieldSpec::prime(3).unwrap(),
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        )
        .unwrap();
        let code = LinearCode::new(g).unwrap();
        let profiles = full_profile(&code).unwrap();
        // d_r = r, so I_a has height k - a + 1 and is generated by the
        // squarefree monomials of degree a
        for p in &profiles {
            assert_eq!(p.height, 3 - p.a + 1);
            assert_eq!(p.mu, binomial(3, p.a as u64));
        }
        // three coordinate lines, then three coordinate planes
        assert_eq!(profiles[0].degree, 1.into());
        assert_eq!(profiles[1].degree, 3.into());
        assert_eq!(profiles[2].degree, 3.into());
    }

    #[test]
    fn binomial_identity_cases() {
        let c = binomial_identity_check(5, 3, 2).unwrap();
        assert_eq!((c.lhs.clone(), c.rhs.clone(), c.holds), (3.into(), 3.into(), true));
        assert!(binomial_identity_check(3, 3, 1).is_err());
        assert!(binomial_identity_check(4, 1, 2).is_err());
        for alpha in 2..12 {
            for beta in 1..alpha {
                let same = binomial_identity_check(alpha, beta, beta).unwrap();
                assert_eq!(same.lhs, binomial(alpha - 1, beta - 1));
                assert_eq!(binomial_identity_check(alpha, beta, 1).unwrap().rhs, 1.into());
            }
        }
    }

    #[test]
    fn fold_range_is_checked() {
        let code = examples::example0();
        let (c, h) = setup(&code);
        assert_eq!(height_of_ideal(&code, &h, 0), Err(Error::FoldOutOfRange { a: 0, n: 3 }));
        assert!(mu_of_ideal(&code, &c, 4).is_err());
    }

    #[test]
    fn profile_json_shape() {
        let profiles = full_profile(&examples::example0()).unwrap();
        let json = serde_json::to_value(&profiles[2]).unwrap();
        assert_eq!(json["degree"], "3");
        assert_eq!(json["mu"], "1");
        assert_eq!(json["primes"][2]["flat"], serde_json::json!([3]));
        assert_eq!(json["residual"], "K (unknown)");
        assert_eq!(serde_json::to_value(&profiles[0]).unwrap()["residual"], "m^a");
    }
}
