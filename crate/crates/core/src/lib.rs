//! Exact computation of Tutte polynomials of vector matroids and of the
//! invariants of generalized star configuration ideals `I_a(C)`, the ideals
//! generated by all `a`-fold products of the linear forms dual to the columns
//! of a generator matrix.

pub mod binom;
pub mod code;
pub mod decimal;
pub mod error;
pub mod examples;
pub mod field;
pub mod hilbert;
pub mod matrix;
pub mod matroid;
pub mod poly;
pub mod star;
pub mod subset;
pub mod tutte;

pub use code::{LinearCode, Subcode, WeiDuality, WeightHierarchy};
pub use error::{Error, Result};
pub use field::{Field, FieldScalar, FieldSpec, PrimeField, Rationals};
pub use matrix::{Dense, ExactMatrix, Rref};
pub use matroid::{Flat, VectorMatroid};
pub use poly::BivarPoly;
pub use subset::GroundSubset;
pub use tutte::{tutte_deletion_contraction, tutte_subset_sum, whitney_shift, DeletionContraction, ShiftedCoeffs};
pub use star::{IdealProfile, LowHeightPrimes, MinimalPrime, Residual};
pub use hilbert::{DensePoly, FittedHP, GradedDims};
