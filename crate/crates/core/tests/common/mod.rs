#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use starconfig::{ExactMatrix, FieldSpec, LinearCode};

pub const PRIMES: [u64; 3] = [2, 3, 5];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random `[n, k]` code over `GF(p)` with `1 <= k <= max_k` and
/// `k <= n <= max_n`; draws are retried until the matrix has full rank and
/// no zero column.
pub fn random_code(rng: &mut ChaCha8Rng, max_k: usize, max_n: usize) -> LinearCode {
    let p = PRIMES[rng.gen_range(0..PRIMES.len())];
    let k = rng.gen_range(1..=max_k);
    let n = rng.gen_range(k..=max_n);
    random_code_with(rng, p, k, n)
}

pub fn random_code_with(rng: &mut ChaCha8Rng, p: u64, k: usize, n: usize) -> LinearCode {
    random_code_over(rng, FieldSpec::prime(p).unwrap(), k, n)
}

/// Entries are drawn from `0..p`, or from `-2..=2` over the rationals.
pub fn random_matrix(rng: &mut ChaCha8Rng, spec: FieldSpec, rows: usize, cols: usize) -> Vec<Vec<i64>> {
    let range = match spec {
        FieldSpec::PrimeField { modulus } => 0..=modulus as i64 - 1,
        FieldSpec::Rationals => -2..=2,
    };
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(range.clone())).collect())
        .collect()
}

pub fn random_code_over(rng: &mut ChaCha8Rng, spec: FieldSpec, k: usize, n: usize) -> LinearCode {
    loop {
        let rows = random_matrix(rng, spec, k, n);
        if let Ok(code) = LinearCode::new(ExactMatrix::from_i64_rows(spec, &rows).unwrap()) {
            return code;
        }
    }
}

pub fn suite(seed: u64, count: usize, max_k: usize, max_n: usize) -> Vec<LinearCode> {
    let mut r = rng(seed);
    (0..count).map(|_| random_code(&mut r, max_k, max_n)).collect()
}
