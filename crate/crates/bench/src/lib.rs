//! Fixed inputs shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use starconfig::{ExactMatrix, FieldSpec, LinearCode};

/// A random `[n, k]` code over `GF(p)`, the same one for every run.
pub fn random_code(seed: u64, p: u64, k: usize, n: usize) -> LinearCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = FieldSpec::prime(p).expect("prime modulus");
    loop {
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..n).map(|_| rng.gen_range(0..p as i64)).collect())
            .collect();
        if let Ok(code) = LinearCode::new(ExactMatrix::from_i64_rows(spec, &rows).expect("entries in range")) {
            return code;
        }
    }
}

/// Codes of growing length with `k = 4` over `GF(5)`.
pub fn ladder() -> Vec<(String, LinearCode)> {
    [8, 10, 12, 14]
        .into_iter()
        .map(|n| (format!("k4_n{n}"), random_code(n as u64, 5, 4, n)))
        .collect()
}
