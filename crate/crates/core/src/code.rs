//! Linear codes from generator matrices: generalized Hamming weights by three
//! routes, the dual code, Wei duality, and subcodes attached to flats.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldScalar, FieldSpec};
use crate::matrix::{Dense, DenseVisitor, ExactMatrix};
use crate::matroid::{Flat, VectorMatroid};
use crate::subset::{all_subsets, GroundSubset};
use crate::tutte::{ShiftedCoeffs, DEFAULT_EXHAUSTIVE_CAP};

/// An `[n, k]` code: a full-rank `k x n` generator matrix with no zero
/// columns. Column `i` is dual to the linear form `l_i` in `K[x_1..x_k]`.
#[derive(Debug, Clone)]
pub struct LinearCode {
    matroid: VectorMatroid,
    labels: Vec<String>,
}

impl LinearCode {
    pub fn new(matrix: ExactMatrix) -> Result<Self> {
        Self::with_labels(matrix, None)
    }

    pub fn with_labels(matrix: ExactMatrix, labels: Option<Vec<String>>) -> Result<Self> {
        let (k, n) = (matrix.rows(), matrix.cols());
        if k == 0 || n == 0 {
            return Err(Error::Shape {
                rows: k,
                cols: n,
                found: 0,
            });
        }
        if let Some(c) = (0..n).find(|&c| matrix.is_zero_column(c)) {
            return Err(Error::ZeroColumn { column: c + 1 });
        }
        let matroid = VectorMatroid::new(matrix)?;
        if matroid.full_rank() != k {
            return Err(Error::RankDeficient {
                rank: matroid.full_rank(),
                rows: k,
            });
        }
        let labels = match labels {
            Some(l) if l.len() != n => {
                return Err(Error::Shape {
                    rows: 1,
                    cols: n,
                    found: l.len(),
                })
            }
            Some(l) => l,
            None => (0..n).map(|c| form_label(matroid.matrix(), c)).collect(),
        };
        Ok(LinearCode { matroid, labels })
    }

    pub fn n(&self) -> usize {
        self.matroid.n()
    }
    pub fn k(&self) -> usize {
        self.matroid.full_rank()
    }
    pub fn spec(&self) -> FieldSpec {
        self.matroid.matrix().spec()
    }
    pub fn matrix(&self) -> &ExactMatrix {
        self.matroid.matrix()
    }
    pub fn matroid(&self) -> &VectorMatroid {
        &self.matroid
    }
    /// Display names of the linear forms, one per column.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// `l_i = sum_j G[j][i] x_{j+1}`, printed with symmetric residues.
fn form_label(m: &ExactMatrix, col: usize) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let (negative, magnitude) = match m.get(r, col) {
            FieldScalar::Residue { value: 0, .. } => continue,
            FieldScalar::Residue { value, modulus } if value > modulus / 2 => (true, (modulus - value).to_string()),
            FieldScalar::Residue { value, .. } => (false, value.to_string()),
            FieldScalar::Rational(q) if q == num_rational::BigRational::from_integer(0.into()) => continue,
            FieldScalar::Rational(q) => {
                let neg = q < num_rational::BigRational::from_integer(0.into());
                let a = if neg { -q } else { q };
                (neg, if a.is_integer() { a.numer().to_string() } else { format!("({a})") })
            }
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { "-" } else { "+" });
        }
        if magnitude != "1" {
            out.push_str(&magnitude);
        }
        out.push_str(&format!("x{}", r + 1));
    }
    out
}

/// `d_0 = 0 < d_1 < ... < d_k`, stored with both endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightHierarchy {
    pub d: Vec<usize>,
}

impl WeightHierarchy {
    pub fn k(&self) -> usize {
        self.d.len() - 1
    }

    pub fn get(&self, r: usize) -> usize {
        self.d[r]
    }

    /// The `r` with `d_r < a <= d_{r+1}`.
    pub fn interval_of(&self, a: usize) -> Option<usize> {
        (0..self.k()).find(|&r| self.d[r] < a && a <= self.d[r + 1])
    }

    /// Checks `d_0 = 0`, strict growth, `d_r <= n - k + r` and `d_k = n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        let k = self.k();
        let fail = |what: &str| Err(Error::Invariant(format!("weight hierarchy {:?}: {what}", self.d)));
        if self.d[0] != 0 {
            return fail("d_0 != 0");
        }
        if k >= 1 && self.d[1] < 1 {
            return fail("d_1 < 1");
        }
        if self.d.windows(2).skip(1).any(|w| w[0] >= w[1]) {
            return fail("not strictly increasing");
        }
        if (0..=k).any(|r| self.d[r] + k > n + r) {
            return fail("d_r > n - k + r");
        }
        if self.d[k] != n {
            return fail("d_k != n");
        }
        Ok(())
    }
}

fn check_exhaustive(n: usize) -> Result<()> {
    if n > DEFAULT_EXHAUSTIVE_CAP {
        Err(Error::CapExceeded {
            n,
            cap: DEFAULT_EXHAUSTIVE_CAP,
        })
    } else {
        Ok(())
    }
}

/// `max{|J| : r(J) = s}` for each rank `s`, by scanning every subset.
fn largest_set_of_each_rank(m: &VectorMatroid) -> Vec<usize> {
    m.precompute_ranks();
    let mut best = vec![0usize; m.full_rank() + 1];
    for s in all_subsets(m.n()) {
        let r = m.rank(s);
        best[r] = best[r].max(s.len());
    }
    best
}

/// Generalized Hamming weights of any vector matroid (loops allowed):
/// `d_r = n - max{|J| : r(J) = k - r}`.
pub fn hierarchy_of_matroid(m: &VectorMatroid) -> Result<WeightHierarchy> {
    check_exhaustive(m.n())?;
    let best = largest_set_of_each_rank(m);
    let k = m.full_rank();
    Ok(WeightHierarchy {
        d: (0..=k).map(|r| m.n() - best[k - r]).collect(),
    })
}

/// `d_r` by exhaustive search over subsets.
pub fn ghw_bruteforce(code: &LinearCode, r: usize) -> Result<usize> {
    if r > code.k() {
        return Err(Error::Precondition(format!("r = {r} exceeds k = {}", code.k())));
    }
    Ok(hierarchy_of_matroid(code.matroid())?.d[r])
}

pub fn hierarchy_bruteforce(code: &LinearCode) -> Result<WeightHierarchy> {
    hierarchy_of_matroid(code.matroid())
}

/// `d_r = n - p_r - k + r`.
pub fn ghw_from_tutte(coeffs: &ShiftedCoeffs, code: &LinearCode, r: usize) -> Result<usize> {
    let (n, k) = (code.n() as i64, code.k() as i64);
    if r > code.k() {
        return Err(Error::Precondition(format!("r = {r} exceeds k = {k}")));
    }
    let p = coeffs
        .p(r)
        .ok_or_else(|| Error::Invariant(format!("p_{r} is undefined for this Tutte polynomial")))?;
    let d = n - p as i64 - k + r as i64;
    usize::try_from(d).map_err(|_| Error::Invariant(format!("negative weight d_{r} = {d}")))
}

pub fn hierarchy_from_tutte(coeffs: &ShiftedCoeffs, code: &LinearCode) -> Result<WeightHierarchy> {
    let d = (0..=code.k())
        .map(|r| ghw_from_tutte(coeffs, code, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightHierarchy { d })
}

/// `d_r = min{|I| : |I| - r*(I) = r}`.
pub fn ghw_from_dual_rank(code: &LinearCode, r: usize) -> Result<usize> {
    hierarchy_from_dual_rank(code)?.d.get(r).copied().ok_or_else(|| {
        Error::Precondition(format!("r = {r} exceeds k = {}", code.k()))
    })
}

pub fn hierarchy_from_dual_rank(code: &LinearCode) -> Result<WeightHierarchy> {
    let m = code.matroid();
    check_exhaustive(m.n())?;
    m.precompute_ranks();
    let k = code.k();
    let mut d = vec![usize::MAX; k + 1];
    for s in all_subsets(m.n()) {
        let gap = s.len() - m.dual_rank(s);
        if gap <= k {
            d[gap] = d[gap].min(s.len());
        }
    }
    if let Some(r) = d.iter().position(|&x| x == usize::MAX) {
        return Err(Error::Invariant(format!("no subset realizes |I| - r*(I) = {r}")));
    }
    Ok(WeightHierarchy { d })
}

/// Parity-check matrix `H` with `G H^T = 0`: after row reduction
/// `G = (I_k | A)` up to a column permutation, `H = (-A^T | I_{n-k})`
/// with the permutation undone.
pub fn parity_check_matrix(code: &LinearCode) -> ExactMatrix {
    struct Build;
    impl DenseVisitor for Build {
        type Output = ExactMatrix;
        fn visit<F: Field>(self, g: &Dense<F>) -> ExactMatrix {
            let field = g.field().clone();
            let (reduced, pivots) = g.rref();
            let free: Vec<usize> = (0..g.cols()).filter(|c| !pivots.contains(c)).collect();
            let mut h = Dense::zeros(field.clone(), free.len(), g.cols());
            for (t, &fc) in free.iter().enumerate() {
                h.set(t, fc, field.one());
                for (i, &pc) in pivots.iter().enumerate() {
                    h.set(t, pc, field.neg(reduced.get(i, fc)));
                }
            }
            F::wrap(h)
        }
    }
    code.matrix().visit(Build)
}

/// The dual code `C^perp`. Its matroid may have loops (coloops of `C`), so
/// it is kept as a bare matroid rather than a [`LinearCode`].
pub fn dual_matroid(code: &LinearCode) -> VectorMatroid {
    VectorMatroid::new(parity_check_matrix(code)).expect("same ground set")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeiDuality {
    pub holds: bool,
    pub hierarchy: WeightHierarchy,
    pub dual_hierarchy: WeightHierarchy,
    /// `{ d_r(C) : 1 <= r <= k }`
    pub weights: BTreeSet<usize>,
    /// `{1..n} \ { n + 1 - d_s(C^perp) : 1 <= s <= n - k }`
    pub complement: BTreeSet<usize>,
}

/// Checks `{d_r(C)} = [n] \ {n + 1 - d_s(C^perp)}`.
pub fn wei_duality_check(code: &LinearCode) -> Result<WeiDuality> {
    let n = code.n();
    let hierarchy = hierarchy_bruteforce(code)?;
    let dual = dual_matroid(code);
    if dual.full_rank() != n - code.k() {
        return Err(Error::Invariant(format!(
            "dual code has rank {} instead of {}",
            dual.full_rank(),
            n - code.k()
        )));
    }
    let dual_hierarchy = hierarchy_of_matroid(&dual)?;
    let weights: BTreeSet<usize> = hierarchy.d[1..].iter().copied().collect();
    let removed: BTreeSet<usize> = dual_hierarchy.d[1..].iter().map(|&d| n + 1 - d).collect();
    let complement: BTreeSet<usize> = (1..=n).filter(|x| !removed.contains(x)).collect();
    Ok(WeiDuality {
        holds: weights == complement,
        hierarchy,
        dual_hierarchy,
        weights,
        complement,
    })
}

/// `C_I = span{ v G : v in ker G_I }` for a flat `I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subcode {
    pub basis: Vec<Vec<FieldScalar>>,
    pub support: GroundSubset,
    pub source_flat: Flat,
}

impl Subcode {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

pub fn subcode_from_flat(code: &LinearCode, flat: GroundSubset) -> Result<Subcode> {
    let m = code.matroid();
    if !flat.is_subset_of(m.ground()) {
        return Err(Error::IndexOutOfRange {
            index: 63 - flat.bits().leading_zeros() as usize,
            n: m.n(),
        });
    }
    let closed = m.closure(flat);
    if closed.members != flat {
        return Err(Error::NotAFlat(flat.elements()));
    }
    if closed.rank >= code.k() {
        return Err(Error::Precondition(format!(
            "flat {flat} has rank {} so its subcode is zero-dimensional",
            closed.rank
        )));
    }
    let kernel = code.matrix().left_kernel_basis(&flat.to_vec())?;
    let basis = kernel
        .iter()
        .map(|v| code.matrix().left_mul(v))
        .collect::<Result<Vec<_>>>()?;
    let support = GroundSubset::from_indices(
        (0..code.n()).filter(|&c| basis.iter().any(|w| !w[c].is_zero())),
    );
    Ok(Subcode {
        basis,
        support,
        source_flat: closed,
    })
}

/// Number of `r`-dimensional subcodes of minimal support, `c_{r, p_r}`.
pub fn minimal_support_subcode_count(coeffs: &ShiftedCoeffs, r: usize) -> Result<BigInt> {
    let p = coeffs
        .p(r)
        .ok_or_else(|| Error::Invariant(format!("p_{r} is undefined")))?;
    Ok(coeffs.c(r, p as usize))
}

/// Independent count of the same quantity: flats of rank `k - r` and size
/// `(k - r) + p_r`, i.e. of the largest possible size `n - d_r`.
pub fn count_largest_flats(code: &LinearCode, r: usize) -> Result<usize> {
    let k = code.k();
    if r < 1 || r > k {
        return Err(Error::Precondition(format!("r = {r} outside 1..={k}")));
    }
    let flats = code.matroid().flats_of_rank(k - r);
    let largest = flats.iter().map(Flat::size).max().unwrap_or(0);
    Ok(flats.iter().filter(|f| f.size() == largest).count())
}
