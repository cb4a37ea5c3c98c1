//! Tutte polynomials of vector matroids.
//!
//! Two engines with no shared code path beyond the rank function:
//! the defining subset sum over all `2^n` subsets, and memoized
//! deletion-contraction on matrices.

use std::sync::atomic::{AtomicU64, Ordering};

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Dense, DenseVisitor};
use crate::matroid::{VectorMatroid, EAGER_RANK_LIMIT};
use crate::poly::BivarPoly;
use crate::subset::GroundSubset;

/// Default bound on `n` for exhaustive subset enumeration.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 24;

const CHUNK: u64 = 1 << 12;

/// `T(x, y) = sum_I (x-1)^{r(M)-r(I)} (y-1)^{|I|-r(I)}` with the default cap.
pub fn tutte_subset_sum(m: &VectorMatroid) -> Result<BivarPoly> {
    tutte_subset_sum_capped(m, DEFAULT_EXHAUSTIVE_CAP)
}

pub fn tutte_subset_sum_capped(m: &VectorMatroid, cap: usize) -> Result<BivarPoly> {
    let n = m.n();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let k = m.full_rank();
    let eager = n <= EAGER_RANK_LIMIT && m.precompute_ranks();
    let rank = |s: GroundSubset| {
        if eager {
            m.rank(s)
        } else {
            m.matrix().column_rank(&s.to_vec()).expect("in range")
        }
    };
    // counts[corank][nullity]
    let width = n + 1;
    let total = 1u64 << n;
    let counts = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|chunk| {
            let mut local = vec![0u64; (k + 1) * width];
            let end = ((chunk + 1) * CHUNK).min(total);
            for mask in chunk * CHUNK..end {
                let s = GroundSubset(mask);
                let r = rank(s);
                local[(k - r) * width + (s.len() - r)] += 1;
            }
            local
        })
        .reduce(
            || vec![0u64; (k + 1) * width],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let mut t = BivarPoly::zero();
    for corank in 0..=k {
        for nullity in 0..width {
            let c = counts[corank * width + nullity];
            if c > 0 {
                let term = BivarPoly::shifted_power(corank as u32, nullity as u32);
                for (i, j, coeff) in term.terms() {
                    t.add_term(i, j, coeff * BigInt::from(c));
                }
            }
        }
    }
    Ok(t)
}

/// Deletion-contraction with a memo keyed on a canonical form of each
/// minor. The memo is a concurrent map; racing writers store identical
/// polynomials.
#[derive(Debug, Default)]
pub struct DeletionContraction {
    memo: DashMap<Vec<u8>, BivarPoly>,
    parallel: bool,
    calls: AtomicU64,
    hits: AtomicU64,
}

/// Minors with at least this many elements fork both branches in parallel.
const PARALLEL_MIN_ELEMENTS: usize = 12;

impl DeletionContraction {
    /// Single-threaded engine.
    pub fn new() -> Self {
        Self::default()
    }

    /// Engine that forks deletion and contraction branches on the rayon pool.
    pub fn parallel() -> Self {
        DeletionContraction {
            parallel: true,
            ..Self::default()
        }
    }

    pub fn compute(&self, m: &VectorMatroid) -> BivarPoly {
        struct Run<'a>(&'a DeletionContraction);
        impl DenseVisitor for Run<'_> {
            type Output = BivarPoly;
            fn visit<F: Field>(self, m: &Dense<F>) -> BivarPoly {
                self.0.recurse(m.clone())
            }
        }
        m.matrix().visit(Run(self))
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    fn recurse<F: Field>(&self, m: Dense<F>) -> BivarPoly {
        self.calls.fetch_add(1, Ordering::Relaxed);
        let core = Reduced::new(m);
        let factor = BivarPoly::monomial(core.coloops as u32, core.loops as u32, 1.into());
        let body = self.core_polynomial(&core.matrix);
        &factor * &body
    }

    /// Tutte polynomial of a matrix in reduced row echelon form without
    /// zero rows, loops or coloops.
    fn core_polynomial<F: Field>(&self, m: &Dense<F>) -> BivarPoly {
        let n = m.cols();
        if n == 0 {
            return BivarPoly::one();
        }
        if m.rows() == 1 {
            // n >= 2 parallel elements: x + y + y^2 + ... + y^{n-1}
            let mut t = BivarPoly::monomial(1, 0, 1.into());
            for j in 1..n {
                t.add_term(0, j as u32, 1.into());
            }
            return t;
        }
        let key = canonical_key(m);
        if let Some(hit) = self.memo.get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return hit.clone();
        }
        // Lowest index first.
        let (del, con) = (m.delete_column(0), m.contract_column(0));
        let t = if self.parallel && n >= PARALLEL_MIN_ELEMENTS {
            let (a, b) = rayon::join(|| self.recurse(del), || self.recurse(con));
            a + b
        } else {
            self.recurse(del) + self.recurse(con)
        };
        self.memo.insert(key, t.clone());
        t
    }
}

/// Deletion-contraction with a fresh single-threaded engine.
pub fn tutte_deletion_contraction(m: &VectorMatroid) -> BivarPoly {
    DeletionContraction::new().compute(m)
}

/// A matrix with its loops and coloops split off.
struct Reduced<F: Field> {
    matrix: Dense<F>,
    loops: usize,
    coloops: usize,
}

impl<F: Field> Reduced<F> {
    fn new(m: Dense<F>) -> Self {
        let nonzero: Vec<usize> = (0..m.cols()).filter(|&c| !m.is_zero_column(c)).collect();
        let loops = m.cols() - nonzero.len();
        let (rref, pivots) = m.select_columns(&nonzero).rref();
        let rank = pivots.len();
        let field = rref.field().clone();
        // A pivot column is a coloop iff its pivot row vanishes elsewhere.
        let mut coloop_rows = Vec::new();
        let mut coloop_cols = Vec::new();
        for (row, &p) in pivots.iter().enumerate() {
            if (0..rref.cols()).all(|c| c == p || field.is_zero(rref.get(row, c))) {
                coloop_rows.push(row);
                coloop_cols.push(p);
            }
        }
        let rows: Vec<usize> = (0..rank).filter(|r| !coloop_rows.contains(r)).collect();
        let cols: Vec<usize> = (0..rref.cols()).filter(|c| !coloop_cols.contains(c)).collect();
        let matrix = rref.select_rows(&rows).select_columns(&cols);
        Reduced {
            matrix,
            loops,
            coloops: coloop_cols.len(),
        }
    }
}

/// Exact byte key of a loopless matrix up to row operations, column scaling
/// and column order: every column is scaled so its first nonzero entry is 1,
/// then columns (with multiplicity) are sorted. Equal keys imply isomorphic
/// matroids; isomorphic matroids may still get different keys.
fn canonical_key<F: Field>(m: &Dense<F>) -> Vec<u8> {
    let field = m.field();
    let mut columns: Vec<Vec<u8>> = (0..m.cols())
        .map(|c| {
            let col = m.column(c);
            let lead = col.iter().find(|x| !field.is_zero(x)).expect("loopless");
            let inv = field.inv(lead);
            let mut bytes = Vec::new();
            for x in &col {
                field.encode(&field.mul(x, &inv), &mut bytes);
            }
            bytes
        })
        .collect();
    columns.sort_unstable();
    let mut key = Vec::with_capacity(8 + columns.iter().map(Vec::len).sum::<usize>());
    key.extend_from_slice(&(m.rows() as u32).to_le_bytes());
    key.extend_from_slice(&(m.cols() as u32).to_le_bytes());
    for c in columns {
        key.extend_from_slice(&c);
    }
    key
}

/// Content key for a whole matroid: field, loop and coloop counts, and
/// the canonical key of the remaining core.
pub fn matroid_cache_key(m: &VectorMatroid) -> Vec<u8> {
    struct Key;
    impl DenseVisitor for Key {
        type Output = Vec<u8>;
        fn visit<F: Field>(self, m: &Dense<F>) -> Vec<u8> {
            let core = Reduced::new(m.clone());
            let mut key = format!("{}|{}|{}|", m.field().spec(), core.loops, core.coloops).into_bytes();
            key.extend(canonical_key(&core.matrix));
            key
        }
    }
    m.matrix().visit(Key)
}

/// Coefficients of `T(x + 1, y) = sum c_{r,j} x^r y^j` and the indices
/// `p_r = max{ j : c_{r,j} != 0 }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftedCoeffs {
    pub shifted: BivarPoly,
    pub p: Vec<Option<u32>>,
}

impl ShiftedCoeffs {
    pub fn c(&self, r: usize, j: usize) -> BigInt {
        self.shifted.coeff(r as u32, j as u32)
    }

    /// `c_{r,j}` for a possibly negative `j` (zero there).
    pub fn c_signed(&self, r: usize, j: i64) -> BigInt {
        if j < 0 {
            BigInt::zero()
        } else {
            self.c(r, j as usize)
        }
    }

    pub fn p(&self, r: usize) -> Option<u32> {
        self.p.get(r).copied().flatten()
    }

    /// Largest `r` with a nonzero `c_{r,j}`; the matroid rank.
    pub fn rank(&self) -> usize {
        self.p.len().saturating_sub(1)
    }
}

/// Substitutes `x -> x + 1` and records every `p_r`.
pub fn whitney_shift(t: &BivarPoly) -> ShiftedCoeffs {
    let shifted = t.substitute_x_plus_one();
    let k = shifted.degree_x().unwrap_or(0) as usize;
    let mut p = vec![None; k + 1];
    for (i, j, _) in shifted.terms() {
        let slot = &mut p[i as usize];
        *slot = Some(slot.map_or(j, |old: u32| old.max(j)));
    }
    ShiftedCoeffs { shifted, p }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::matrix::ExactMatrix;
    use crate::FieldSpec;

    fn matroid(p: u64, rows: &[Vec<i64>]) -> VectorMatroid {
        VectorMatroid::new(ExactMatrix::from_i64_rows(FieldSpec::prime(p).unwrap(), rows).unwrap()).unwrap()
    }

    #[test]
    fn example0_both_engines() {
        let m = examples::example0().matroid().clone();
        assert_eq!(tutte_subset_sum(&m).unwrap().to_string(), "x^2 + x + y");
        assert_eq!(tutte_deletion_contraction(&m).to_string(), "x^2 + x + y");
    }

    #[test]
    fn single_elements() {
        let coloop = matroid(2, &[vec![1]]);
        let lp = matroid(2, &[vec![0]]);
        for m in [&coloop, &lp] {
            assert_eq!(tutte_subset_sum(m).unwrap(), tutte_deletion_contraction(m));
        }
        assert_eq!(tutte_deletion_contraction(&coloop).to_string(), "x");
        assert_eq!(tutte_deletion_contraction(&lp).to_string(), "y");
    }

    #[test]
    fn parallel_pair_and_identity() {
        let u12 = matroid(3, &[vec![1, 2]]);
        assert_eq!(tutte_deletion_contraction(&u12).to_string(), "x + y");
        assert_eq!(tutte_subset_sum(&u12).unwrap().to_string(), "x + y");
        let id = matroid(5, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(tutte_deletion_contraction(&id).to_string(), "x^3");
    }

    #[test]
    fn cap_is_enforced() {
        let m = examples::b3().matroid().clone();
        assert_eq!(
            tutte_subset_sum_capped(&m, 8),
            Err(Error::CapExceeded { n: 9, cap: 8 })
        );
    }

    #[test]
    fn example0_shift() {
        let t = tutte_deletion_contraction(examples::example0().matroid());
        let s = whitney_shift(&t);
        assert_eq!(s.c(2, 0), 1.into());
        assert_eq!(s.c(1, 0), 3.into());
        assert_eq!(s.c(0, 1), 1.into());
        assert_eq!(s.c(0, 0), 2.into());
        assert_eq!(s.p, vec![Some(1), Some(0), Some(0)]);
        let one = whitney_shift(&BivarPoly::one());
        assert_eq!(one.shifted, BivarPoly::one());
        assert_eq!(one.p, vec![Some(0)]);
    }

    #[test]
    fn b3_shift_matches_published_coefficients() {
        let t = tutte_deletion_contraction(examples::b3().matroid());
        let s = whitney_shift(&t);
        let expected = [
            ((0, 6), 1),
            ((0, 5), 3),
            ((0, 4), 6),
            ((0, 3), 10),
            ((0, 2), 15),
            ((0, 1), 18),
            ((0, 0), 15),
            ((1, 2), 3),
            ((1, 1), 10),
            ((1, 0), 23),
            ((2, 0), 9),
            ((3, 0), 1),
        ];
        assert_eq!(s.shifted.num_terms(), expected.len());
        for ((r, j), c) in expected {
            assert_eq!(s.c(r, j), BigInt::from(c), "c_{{{r},{j}}}");
        }
        assert_eq!(s.p, vec![Some(6), Some(2), Some(0), Some(0)]);
    }

    #[test]
    fn evaluations_of_example0() {
        let t = tutte_deletion_contraction(examples::example0().matroid());
        assert_eq!(t.evaluate_i64(1, 1), 3.into());
        assert_eq!(t.evaluate_i64(2, 1), 7.into());
        assert_eq!(t.evaluate_i64(2, 2), 8.into());
    }

    #[test]
    fn memo_is_reused_and_parallel_agrees() {
        let m = examples::b3().matroid().clone();
        let engine = DeletionContraction::new();
        let t = engine.compute(&m);
        assert!(engine.memo_len() > 0);
        assert_eq!(engine.compute(&m), t);
        assert!(engine.hits() > 0);
        assert_eq!(DeletionContraction::parallel().compute(&m), t);
    }

    #[test]
    fn cache_key_ignores_row_operations_and_scaling() {
        let a = matroid(5, &[vec![1, 0, 1, 2], vec![0, 1, 1, 3]]);
        // rows (r0 + r1, 2 r0) of a, then column 3 doubled
        let b = matroid(5, &[vec![1, 1, 2, 0], vec![2, 0, 2, 3]]);
        let c = matroid(5, &[vec![1, 0, 1, 1], vec![0, 1, 1, 3]]);
        let ra = matroid_cache_key(&a);
        assert_eq!(ra, matroid_cache_key(&b));
        assert_ne!(ra, matroid_cache_key(&c));
    }
}
