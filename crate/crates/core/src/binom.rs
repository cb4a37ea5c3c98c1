use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(n, k)` as an exact big integer via the multiplicative formula;
/// zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` for a possibly negative top argument; zero outside
/// `0 <= k <= n`, which is the convention the degree formulas need.
pub fn binomial_i64(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        BigInt::zero()
    } else {
        binomial(n as u64, k as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pascal_rows() {
        for n in 0..40u64 {
            for k in 1..=n {
                assert_eq!(binomial(n + 1, k), binomial(n, k) + binomial(n, k - 1));
            }
        }
        assert_eq!(binomial(5, 7), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(100, 50).to_string(), "100891344545564193334812497256");
        assert_eq!(binomial_i64(-1, 0), BigInt::zero());
    }
}
