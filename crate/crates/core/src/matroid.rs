//! The column matroid of a matrix.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::subset::{combinations, GroundSubset, MAX_GROUND_SIZE};

/// Largest ground set for which [`VectorMatroid::precompute_ranks`] builds
/// the full 2^n table.
pub const EAGER_RANK_LIMIT: usize = 20;

/// A closed set together with its rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Flat {
    pub members: GroundSubset,
    pub rank: usize,
}

impl Flat {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Vector matroid of a `k x n` matrix, with a memoized rank function.
///
/// The lazy cache is a concurrent map. Concurrent writers for the same
/// subset always store the same value.
#[derive(Debug, Clone)]
pub struct VectorMatroid {
    matrix: ExactMatrix,
    n: usize,
    full_rank: usize,
    cache: Arc<DashMap<u64, u8>>,
    table: Arc<OnceLock<Vec<u8>>>,
}

impl VectorMatroid {
    pub fn new(matrix: ExactMatrix) -> Result<Self> {
        let n = matrix.cols();
        if n > MAX_GROUND_SIZE {
            return Err(Error::CapExceeded {
                n,
                cap: MAX_GROUND_SIZE,
            });
        }
        let full_rank = matrix.rank();
        Ok(VectorMatroid {
            matrix,
            n,
            full_rank,
            cache: Arc::new(DashMap::new()),
            table: Arc::new(OnceLock::new()),
        })
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn full_rank(&self) -> usize {
        self.full_rank
    }
    pub fn ground(&self) -> GroundSubset {
        GroundSubset::full(self.n)
    }

    fn compute_rank(&self, set: GroundSubset) -> usize {
        self.matrix
            .column_rank(&set.to_vec())
            .expect("subset lies inside the ground set")
    }

    /// Rank of the columns in `set`.
    pub fn rank(&self, set: GroundSubset) -> usize {
        debug_assert!(set.is_subset_of(self.ground()));
        if set.is_empty() {
            return 0;
        }
        if let Some(table) = self.table.get() {
            return table[set.bits() as usize] as usize;
        }
        if let Some(r) = self.cache.get(&set.bits()) {
            return *r as usize;
        }
        let r = self.compute_rank(set);
        self.cache.insert(set.bits(), r as u8);
        r
    }

    /// Fills the 2^n rank table. Only available for `n <= 20`; returns
    /// `false` (and leaves the lazy cache in charge) above that.
    pub fn precompute_ranks(&self) -> bool {
        if self.n > EAGER_RANK_LIMIT {
            return false;
        }
        self.table.get_or_init(|| {
            let size = 1usize << self.n;
            let mut table = vec![0u8; size];
            for mask in 1..size {
                let top = 63 - (mask as u64).leading_zeros() as usize;
                let rest = mask & !(1 << top);
                let base = table[rest] as usize;
                table[mask] = if base == self.full_rank || self.matrix.is_zero_column(top) {
                    base as u8
                } else {
                    self.compute_rank(GroundSubset(mask as u64)) as u8
                };
            }
            table
        });
        true
    }

    /// Closure `cl(I) = { j : r(I + j) = r(I) }`.
    pub fn closure(&self, set: GroundSubset) -> Flat {
        let r = self.rank(set);
        let mut members = set;
        for j in 0..self.n {
            if !set.contains(j) && self.rank(set.with(j)) == r {
                members = members.with(j);
            }
        }
        Flat { members, rank: r }
    }

    pub fn is_flat(&self, set: GroundSubset) -> bool {
        self.closure(set).members == set
    }

    pub fn is_loop(&self, i: usize) -> bool {
        assert!(i < self.n, "element index out of range");
        self.matrix.is_zero_column(i)
    }

    pub fn is_coloop(&self, i: usize) -> bool {
        assert!(i < self.n, "element index out of range");
        self.rank(self.ground().without(i)) + 1 == self.full_rank
    }

    /// `M \ i` on the ground set `[n] \ i` (later elements shift down).
    pub fn delete(&self, i: usize) -> VectorMatroid {
        assert!(i < self.n, "element index out of range");
        VectorMatroid::new(self.matrix.delete_column(i)).expect("minor is smaller")
    }

    /// `M / i`; a loop is contracted as a deletion.
    pub fn contract(&self, i: usize) -> VectorMatroid {
        assert!(i < self.n, "element index out of range");
        VectorMatroid::new(self.matrix.contract_column(i)).expect("minor is smaller")
    }

    /// Rank in the dual matroid: `r*(I) = r([n] \ I) + |I| - r(M)`.
    pub fn dual_rank(&self, set: GroundSubset) -> usize {
        self.rank(set.complement(self.n)) + set.len() - self.full_rank
    }

    /// All flats of rank `s`, sorted by bitmask. Every such flat is the
    /// closure of an independent `s`-subset.
    pub fn flats_of_rank(&self, s: usize) -> Vec<Flat> {
        if s > self.full_rank {
            return Vec::new();
        }
        let mut seen = BTreeSet::new();
        for basis in combinations(self.n, s) {
            if self.rank(basis) == s {
                seen.insert(self.closure(basis).members);
            }
        }
        seen.into_iter().map(|members| Flat { members, rank: s }).collect()
    }
}
