//! Exact scalar fields: prime fields `GF(p)` with a 64-bit modulus and the
//! rationals over arbitrary-precision integers.
//!
//! Matrix kernels are generic over [`Field`]; the type-erased [`FieldSpec`]
//! and [`FieldScalar`] are what crosses module and file boundaries.

use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldSpec {
    PrimeField { modulus: u64 },
    Rationals,
}

impl FieldSpec {
    pub fn prime(modulus: u64) -> Result<Self> {
        if is_prime(modulus) {
            Ok(FieldSpec::PrimeField { modulus })
        } else {
            Err(Error::NotPrime(modulus))
        }
    }

    /// Runs `v` with the concrete field this spec names.
    pub fn visit<V: FieldVisitor>(&self, v: V) -> Result<V::Output> {
        match *self {
            FieldSpec::PrimeField { modulus } => Ok(v.visit(PrimeField::new(modulus)?)),
            FieldSpec::Rationals => Ok(v.visit(Rationals)),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::PrimeField { modulus } => *modulus,
            FieldSpec::Rationals => 0,
        }
    }

    pub fn scalar_from_i64(&self, v: i64) -> FieldScalar {
        match *self {
            FieldSpec::PrimeField { modulus } => FieldScalar::Residue {
                value: reduce_i128(v as i128, modulus),
                modulus,
            },
            FieldSpec::Rationals => FieldScalar::Rational(BigRational::from_integer(v.into())),
        }
    }

    /// Parses an integer token, or an `a/b` token over the rationals.
    /// Fractions are also accepted over `GF(p)` when `b` is invertible.
    pub fn parse_scalar(&self, token: &str) -> Result<FieldScalar> {
        let bad = || Error::FieldMismatch {
            value: token.to_string(),
            field: self.to_string(),
        };
        let (num, den) = match token.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<BigInt>().map_err(|_| bad())?,
                d.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => (token.trim().parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(bad());
        }
        match *self {
            FieldSpec::Rationals => Ok(FieldScalar::Rational(BigRational::new(num, den))),
            FieldSpec::PrimeField { modulus } => {
                let f = PrimeField::new(modulus)?;
                let n = reduce_bigint(&num, modulus);
                let d = reduce_bigint(&den, modulus);
                if d == 0 {
                    return Err(bad());
                }
                Ok(FieldScalar::Residue {
                    value: f.mul(&n, &f.inv(&d)),
                    modulus,
                })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::PrimeField { modulus } => write!(f, "GF({modulus})"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

/// A field element tagged with the field it lives in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    /// Canonical residue in `[0, modulus)`.
    Residue { value: u64, modulus: u64 },
    /// Reduced fraction with positive denominator.
    Rational(BigRational),
}

impl FieldScalar {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldScalar::Residue { modulus, .. } => FieldSpec::PrimeField { modulus: *modulus },
            FieldScalar::Rational(_) => FieldSpec::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Residue { value, .. } => *value == 0,
            FieldScalar::Rational(q) => q.is_zero(),
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Residue { value, .. } => write!(f, "{value}"),
            FieldScalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            FieldScalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

/// Arithmetic of an exact field. Elements are plain values; the field
/// object carries whatever context (the modulus) the operations need.
/// Generic callback over a concrete [`Field`].
pub trait FieldVisitor {
    type Output;
    fn visit<F: Field>(self, field: F) -> Self::Output;
}

pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_scalar(&self, s: &FieldScalar) -> Result<Self::Elem>;
    fn to_scalar(&self, a: &Self::Elem) -> FieldScalar;
    /// Appends an injective byte encoding of `a`.
    fn encode(&self, a: &Self::Elem, out: &mut Vec<u8>);
    /// Erases the field type of a matrix.
    fn wrap(m: crate::matrix::Dense<Self>) -> crate::matrix::ExactMatrix;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `dst[i] -= factor * src[i]`
    fn sub_scaled(&self, dst: &mut [Self::Elem], factor: &Self::Elem, src: &[Self::Elem]) {
        for (d, s) in dst.iter_mut().zip(src) {
            if !self.is_zero(s) {
                *d = self.sub(d, &self.mul(factor, s));
            }
        }
    }

    fn scale(&self, row: &mut [Self::Elem], factor: &Self::Elem) {
        for x in row.iter_mut() {
            if !self.is_zero(x) {
                *x = self.mul(x, factor);
            }
        }
    }
}

/// `GF(p)` for a prime `p < 2^64`.
#[derive(Clone)]
pub struct PrimeField {
    p: u64,
    inverses: Arc<OnceLock<Vec<u64>>>,
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl Eq for PrimeField {}

/// Moduli below this get a lazily built inverse table.
const INVERSE_TABLE_LIMIT: u64 = 1 << 16;

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField {
            p,
            inverses: Arc::new(OnceLock::new()),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn inv_euclid(&self, a: u64) -> u64 {
        let (mut r0, mut r1) = (self.p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        reduce_i128(t0, self.p)
    }
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

impl Field for PrimeField {
    fn wrap(m: crate::matrix::Dense<Self>) -> crate::matrix::ExactMatrix {
        m.into()
    }

    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField { modulus: self.p }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let (s, overflow) = a.overflowing_add(*b);
        if overflow || s >= self.p {
            s.wrapping_sub(self.p)
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        if self.p <= u32::MAX as u64 {
            (a * b) % self.p
        } else {
            ((*a as u128 * *b as u128) % self.p as u128) as u64
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in GF({})", self.p);
        if self.p < INVERSE_TABLE_LIMIT {
            let table = self.inverses.get_or_init(|| {
                let mut t = vec![0u64; self.p as usize];
                for x in 1..self.p {
                    if t[x as usize] == 0 {
                        let y = self.inv_euclid(x);
                        t[x as usize] = y;
                        t[y as usize] = x;
                    }
                }
                t
            });
            table[*a as usize]
        } else {
            self.inv_euclid(*a)
        }
    }
    fn from_i64(&self, v: i64) -> u64 {
        reduce_i128(v as i128, self.p)
    }
    fn from_scalar(&self, s: &FieldScalar) -> Result<u64> {
        match s {
            FieldScalar::Residue { value, modulus } if *modulus == self.p => Ok(*value),
            _ => Err(Error::FieldMismatch {
                value: s.to_string(),
                field: self.spec().to_string(),
            }),
        }
    }
    fn to_scalar(&self, a: &u64) -> FieldScalar {
        FieldScalar::Residue {
            value: *a,
            modulus: self.p,
        }
    }
    fn encode(&self, a: &u64, out: &mut Vec<u8>) {
        out.extend_from_slice(&a.to_le_bytes());
    }

    #[inline]
    fn sub_scaled(&self, dst: &mut [u64], factor: &u64, src: &[u64]) {
        let p = self.p;
        if *factor == 0 {
            return;
        }
        if p <= u32::MAX as u64 {
            let f = p - factor;
            for (d, s) in dst.iter_mut().zip(src) {
                // d + (p - factor) * s, both terms below p^2 + p
                *d = (*d + f * s) % p;
            }
        } else {
            for (d, s) in dst.iter_mut().zip(src) {
                let prod = ((*factor as u128 * *s as u128) % p as u128) as u64;
                *d = self.sub(d, &prod);
            }
        }
    }
}

/// The rationals with eagerly reduced big-integer fractions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    fn wrap(m: crate::matrix::Dense<Self>) -> crate::matrix::ExactMatrix {
        m.into()
    }

    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }
    fn from_scalar(&self, s: &FieldScalar) -> Result<BigRational> {
        match s {
            FieldScalar::Rational(q) => Ok(q.clone()),
            _ => Err(Error::FieldMismatch {
                value: s.to_string(),
                field: "Q".into(),
            }),
        }
    }
    fn to_scalar(&self, a: &BigRational) -> FieldScalar {
        FieldScalar::Rational(a.clone())
    }
    fn encode(&self, a: &BigRational, out: &mut Vec<u8>) {
        out.extend_from_slice(a.numer().to_string().as_bytes());
        out.push(b'/');
        out.extend_from_slice(a.denom().to_string().as_bytes());
        out.push(b';');
    }
}

fn reduce_i128(v: i128, p: u64) -> u64 {
    v.rem_euclid(p as i128) as u64
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let r = v % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime(18446744073709551557)); // largest 64-bit prime
        assert!(!is_prime(3215031751)); // strong pseudoprime to bases 2,3,5,7
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(1).is_err());
    }

    #[test]
    fn prime_field_inverses() {
        for p in [2u64, 3, 5, 7, 101, 65537, 1_000_000_007, 18446744073709551557] {
            let f = PrimeField::new(p).unwrap();
            for a in [1u64, 2, p / 2, p - 1] {
                if a == 0 || a >= p {
                    continue;
                }
                assert_eq!(f.mul(&a, &f.inv(&a)), 1, "p={p} a={a}");
            }
        }
    }

    #[test]
    fn sub_scaled_matches_scalar_ops() {
        for p in [5u64, 18446744073709551557] {
            let f = PrimeField::new(p).unwrap();
            let src = [1, 2, p - 1, 0];
            let mut dst = [3 % p, 0, 4 % p, p - 2];
            let factor = p - 3;
            let expected: Vec<u64> = dst
                .iter()
                .zip(&src)
                .map(|(d, s)| f.sub(d, &f.mul(&factor, s)))
                .collect();
            f.sub_scaled(&mut dst, &factor, &src);
            assert_eq!(dst.to_vec(), expected);
        }
    }

    #[test]
    fn scalar_parsing() {
        let q = FieldSpec::Rationals;
        assert_eq!(q.parse_scalar("-6/4").unwrap().to_string(), "-3/2");
        assert_eq!(q.parse_scalar("7").unwrap().to_string(), "7");
        assert!(q.parse_scalar("1/0").is_err());
        assert!(q.parse_scalar("x").is_err());
        let gf5 = FieldSpec::prime(5).unwrap();
        assert_eq!(gf5.parse_scalar("-1").unwrap().to_string(), "4");
        assert_eq!(gf5.parse_scalar("1/2").unwrap().to_string(), "3");
        assert!(gf5.parse_scalar("1/5").is_err());
    }
}
