//! Hilbert-function oracle: expands the `a`-fold products as polynomials,
//! computes graded dimensions by exact linear algebra over the code's field,
//! and fits Hilbert polynomials. Nothing here consults the Tutte polynomial.

pub mod fit;
pub mod monomials;
pub mod report;
pub mod span;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::{Field, FieldScalar, FieldSpec, FieldVisitor};
use crate::matrix::{Dense, DenseVisitor, ExactMatrix};

pub use fit::{fit_values, FittedHP};
use monomials::{Monomials, MAX_VARS};
use span::{times_linear, Echelon, IdealWalk};

/// A homogeneous polynomial: coefficients over the monomials of one degree,
/// in graded lex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePoly {
    pub spec: FieldSpec,
    pub nvars: usize,
    pub degree: usize,
    pub coeffs: Vec<FieldScalar>,
}

impl DensePoly {
    /// The product of linear forms given by integer coefficient vectors.
    pub fn product_of_forms(spec: FieldSpec, nvars: usize, forms: &[Vec<i64>]) -> Result<DensePoly> {
        struct Prod<'a>(usize, &'a [Vec<i64>]);
        impl FieldVisitor for Prod<'_> {
            type Output = Result<DensePoly>;
            fn visit<F: Field>(self, field: F) -> Result<DensePoly> {
                let Prod(nvars, forms) = self;
                check_nvars(nvars)?;
                let mons = Monomials::new(nvars, forms.len());
                let typed: Vec<Vec<F::Elem>> = forms
                    .iter()
                    .map(|f| {
                        if f.len() != nvars {
                            return Err(Error::Shape {
                                rows: 1,
                                cols: nvars,
                                found: f.len(),
                            });
                        }
                        Ok(f.iter().map(|&c| field.from_i64(c)).collect())
                    })
                    .collect::<Result<_>>()?;
                let mut v = vec![field.one()];
                for (d, l) in typed.iter().enumerate() {
                    v = times_linear(&field, &mons, d, l, &v);
                }
                Ok(erase(&field, nvars, forms.len(), &v))
            }
        }
        spec.visit(Prod(nvars, forms))?
    }

    /// Generators of `q^i` for `q` generated by the given linear forms: all
    /// `i`-fold products with repetition.
    pub fn power_of_linear_ideal(spec: FieldSpec, nvars: usize, forms: &[Vec<i64>], i: usize) -> Result<Vec<DensePoly>> {
        let mut out = Vec::new();
        let mut pick = vec![0usize; i];
        loop {
            let chosen: Vec<Vec<i64>> = pick.iter().map(|&j| forms[j].clone()).collect();
            out.push(Self::product_of_forms(spec, nvars, &chosen)?);
            // next non-decreasing index sequence
            let Some(pos) = (0..i).rev().find(|&p| pick[p] + 1 < forms.len()) else {
                break;
            };
            let v = pick[pos] + 1;
            for p in pos..i {
                pick[p] = v;
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldScalar::is_zero)
    }

    /// `x1^2x2 + x1x2^2` style rendering, terms in graded lex order.
    pub fn render(&self) -> String {
        let mons = Monomials::new(self.nvars, self.degree);
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let m = mons.render(self.degree, i);
            match (c.to_string().as_str(), m.as_str()) {
                ("1", _) => out.push_str(&m),
                (cs, "1") => out.push_str(cs),
                (cs, _) => out.push_str(&format!("{cs}{m}")),
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

fn check_nvars(nvars: usize) -> Result<()> {
    if nvars == 0 || nvars > MAX_VARS {
        Err(Error::CapExceeded { n: nvars, cap: MAX_VARS })
    } else {
        Ok(())
    }
}

fn erase<F: Field>(field: &F, nvars: usize, degree: usize, v: &[F::Elem]) -> DensePoly {
    DensePoly {
        spec: field.spec(),
        nvars,
        degree,
        coeffs: v.iter().map(|c| field.to_scalar(c)).collect(),
    }
}

fn typed<F: Field>(field: &F, p: &DensePoly) -> Result<(usize, Vec<F::Elem>)> {
    let coeffs = p.coeffs.iter().map(|c| field.from_scalar(c)).collect::<Result<_>>()?;
    Ok((p.degree, coeffs))
}

/// `t -> dim` for one graded object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDims {
    pub object: String,
    pub entries: BTreeMap<usize, u64>,
}

/// Linear forms of a code over its concrete field: `forms[i]` is column `i`.
pub(crate) struct Oracle<F: Field> {
    pub field: F,
    pub k: usize,
    pub forms: Vec<Vec<F::Elem>>,
}

impl<F: Field> Oracle<F> {
    fn from_dense(g: &Dense<F>) -> Self {
        Oracle {
            field: g.field().clone(),
            k: g.rows(),
            forms: (0..g.cols()).map(|c| g.column(c)).collect(),
        }
    }

    /// All products of `a` distinct forms among `cols`, each of degree `a`.
    pub fn afold(&self, mons: &Monomials, cols: &[usize], a: usize) -> Vec<(usize, Vec<F::Elem>)> {
        fn rec<F: Field>(
            o: &Oracle<F>,
            mons: &Monomials,
            cols: &[usize],
            left: usize,
            acc: &[F::Elem],
            out: &mut Vec<(usize, Vec<F::Elem>)>,
            degree: usize,
        ) {
            if left == 0 {
                out.push((degree, acc.to_vec()));
                return;
            }
            for i in 0..=cols.len() - left {
                let next = times_linear(&o.field, mons, degree, &o.forms[cols[i]], acc);
                rec(o, mons, &cols[i + 1..], left - 1, &next, out, degree + 1);
            }
        }
        let mut out = Vec::new();
        if a <= cols.len() {
            rec(self, mons, cols, a, &[self.field.one()], &mut out, 0);
        }
        out
    }

    pub fn all_columns(&self) -> Vec<usize> {
        (0..self.forms.len()).collect()
    }

    pub fn without(&self, ell: usize) -> Vec<usize> {
        (0..self.forms.len()).filter(|&c| c != ell).collect()
    }

    /// `dim (I : l)_t` from `I_{t+1}`, as the kernel of `f -> l f` into
    /// `R_{t+1} / I_{t+1}`: `N_t + dim I_{t+1} - dim(l R_t + I_{t+1})`.
    pub fn colon_dim(&self, mons: &Monomials, ell: usize, next: &Echelon<F>, t: usize) -> u64 {
        let nt = mons.count(t);
        if next.is_full() {
            return nt as u64;
        }
        let mut sum = next.clone();
        let before = sum.rank();
        let mut unit = vec![self.field.zero(); nt];
        for m in 0..nt {
            if sum.is_full() {
                break;
            }
            unit[m] = self.field.one();
            sum.insert(times_linear(&self.field, mons, t, &self.forms[ell], &unit));
            unit[m] = self.field.zero();
        }
        (nt + before - sum.rank()) as u64
    }
}

pub(crate) trait OracleTask {
    type Output;
    fn run<F: Field>(self, oracle: Oracle<F>) -> Self::Output;
}

pub(crate) fn run_task<T: OracleTask>(matrix: &ExactMatrix, task: T) -> T::Output {
    struct Visit<T>(T);
    impl<T: OracleTask> DenseVisitor for Visit<T> {
        type Output = T::Output;
        fn visit<F: Field>(self, m: &Dense<F>) -> T::Output {
            self.0.run(Oracle::from_dense(m))
        }
    }
    matrix.visit(Visit(task))
}

fn check_fold(code: &LinearCode, a: usize) -> Result<()> {
    if a == 0 || a > code.n() {
        Err(Error::FoldOutOfRange { a, n: code.n() })
    } else {
        Ok(())
    }
}

/// Window policy for an ideal generated in degree `g`: start at `g - 1`,
/// end at `g + k + 3`, and widen by doubling up to `g + 4k + 8`.
pub fn default_window(g: usize, k: usize) -> (usize, usize) {
    (g.saturating_sub(1), g + k + 3)
}

pub fn window_cap(g: usize, k: usize) -> usize {
    g + 4 * k + 8
}

fn check_window(k: usize, lo: usize, hi: usize) -> Result<()> {
    if hi < lo + k + 1 {
        Err(Error::Precondition(format!(
            "window {lo}:{hi} is shorter than k + 1 = {}",
            k + 1
        )))
    } else {
        Ok(())
    }
}

/// Fits from a stream of Hilbert function values `t = 0, 1, 2, ...`,
/// doubling the window until a fit is found or the cap is reached.
pub(crate) fn fit_stream(
    k: usize,
    lo: usize,
    mut hi: usize,
    cap: usize,
    mut value: impl FnMut(usize) -> u64,
) -> Result<FittedHP> {
    let cap = cap.max(hi);
    let mut hf = Vec::new();
    loop {
        while hf.len() <= hi {
            hf.push(value(hf.len()));
        }
        if let Some(fit) = fit_values(k, &hf, lo) {
            return Ok(fit);
        }
        if hi >= cap {
            return Err(Error::WindowTooSmall { lo, hi });
        }
        hi = (lo + 2 * (hi - lo)).clamp(hi + 1, cap);
    }
}

/// The `C(n, a)` products `l_{i_1} ... l_{i_a}`.
pub fn afold_generators(code: &LinearCode, a: usize) -> Result<Vec<DensePoly>> {
    check_fold(code, a)?;
    check_nvars(code.k())?;
    struct Task(usize);
    impl OracleTask for Task {
        type Output = Vec<DensePoly>;
        fn run<F: Field>(self, o: Oracle<F>) -> Vec<DensePoly> {
            let mons = Monomials::new(o.k, self.0);
            o.afold(&mons, &o.all_columns(), self.0)
                .iter()
                .map(|(d, v)| erase(&o.field, o.k, *d, v))
                .collect()
        }
    }
    Ok(run_task(code.matrix(), Task(a)))
}

fn common_ring(gens: &[DensePoly]) -> Result<(FieldSpec, usize)> {
    let first = gens
        .first()
        .ok_or_else(|| Error::Precondition("an ideal needs at least one generator".into()))?;
    if gens.iter().any(|g| g.spec != first.spec || g.nvars != first.nvars) {
        return Err(Error::Precondition("generators live in different rings".into()));
    }
    check_nvars(first.nvars)?;
    Ok((first.spec, first.nvars))
}

/// `dim_K (I_t)` for `t = 0..=hi`, for the ideal generated by `gens`.
pub fn ideal_dims(gens: &[DensePoly], hi: usize) -> Result<Vec<u64>> {
    let (spec, nvars) = common_ring(gens)?;
    struct Dims<'a>(&'a [DensePoly], usize, usize);
    impl FieldVisitor for Dims<'_> {
        type Output = Result<Vec<u64>>;
        fn visit<F: Field>(self, field: F) -> Result<Vec<u64>> {
            let Dims(gens, nvars, hi) = self;
            let mons = Monomials::new(nvars, hi);
            let typed_gens = gens.iter().map(|g| typed(&field, g)).collect::<Result<_>>()?;
            let mut walk = IdealWalk::new(field, &mons, typed_gens);
            let mut out = vec![walk.dim() as u64];
            while walk.degree() < hi {
                walk.advance();
                out.push(walk.dim() as u64);
            }
            Ok(out)
        }
    }
    spec.visit(Dims(gens, nvars, hi))?
}

/// `dim_K (I)_t`; `dim (R/I)_t` is `C(t + k - 1, k - 1)` minus this.
pub fn graded_dim_ideal(gens: &[DensePoly], t: usize) -> Result<u64> {
    Ok(ideal_dims(gens, t)?[t])
}

/// `dim (R/I)_t` for `t = 0..=hi`.
pub fn quotient_dims(gens: &[DensePoly], hi: usize, object: &str) -> Result<GradedDims> {
    let (_, nvars) = common_ring(gens)?;
    let dims = ideal_dims(gens, hi)?;
    Ok(GradedDims {
        object: object.to_string(),
        entries: dims
            .iter()
            .enumerate()
            .map(|(t, &d)| (t, monomials::monomial_count(nvars, t) as u64 - d))
            .collect(),
    })
}

/// `HP(R/I_a(C))` over the code's field, fitted on `window` (default
/// `[a - 1, a + k + 3]`, widened by doubling up to `a + 4k + 8`).
pub fn fit_hilbert_polynomial(code: &LinearCode, a: usize, window: Option<(usize, usize)>) -> Result<FittedHP> {
    check_fold(code, a)?;
    check_nvars(code.k())?;
    let k = code.k();
    let (lo, hi) = window.unwrap_or_else(|| default_window(a, k));
    check_window(k, lo, hi)?;
    struct Task(usize, usize, usize, usize);
    impl OracleTask for Task {
        type Output = Result<FittedHP>;
        fn run<F: Field>(self, o: Oracle<F>) -> Result<FittedHP> {
            let Task(a, lo, hi, cap) = self;
            let mons = Monomials::new(o.k, cap.max(hi) + 1);
            let gens = o.afold(&mons, &o.all_columns(), a);
            let mut walk = IdealWalk::new(o.field.clone(), &mons, gens);
            fit_stream(o.k, lo, hi, cap, |t| {
                walk.advance_to(t);
                walk.codim() as u64
            })
        }
    }
    run_task(code.matrix(), Task(a, lo, hi, window_cap(a, k)))
}

/// `HP(R/I)` for an arbitrary homogeneous ideal, with the window policy
/// keyed to the largest generator degree.
pub fn fit_ideal(gens: &[DensePoly], window: Option<(usize, usize)>) -> Result<FittedHP> {
    fit_intersection(&[gens.to_vec()], window)
}

/// `HP(R / (J_1 ∩ ... ∩ J_s))`, intersecting graded pieces degree by degree.
pub fn fit_intersection(ideals: &[Vec<DensePoly>], window: Option<(usize, usize)>) -> Result<FittedHP> {
    let all: Vec<DensePoly> = ideals.iter().flatten().cloned().collect();
    let (spec, nvars) = common_ring(&all)?;
    if ideals.iter().any(|g| g.is_empty()) {
        return Err(Error::Precondition("an ideal needs at least one generator".into()));
    }
    let g = all.iter().map(|p| p.degree).max().unwrap_or(0);
    let (lo, hi) = window.unwrap_or_else(|| default_window(g, nvars));
    check_window(nvars, lo, hi)?;
    let cap = window_cap(g, nvars);
    struct Task<'a>(&'a [Vec<DensePoly>], usize, usize, usize, usize);
    impl FieldVisitor for Task<'_> {
        type Output = Result<FittedHP>;
        fn visit<F: Field>(self, field: F) -> Result<FittedHP> {
            let Task(ideals, nvars, lo, hi, cap) = self;
            let mons = Monomials::new(nvars, cap.max(hi) + 1);
            let mut walks = ideals
                .iter()
                .map(|gens| {
                    let typed_gens = gens.iter().map(|g| typed(&field, g)).collect::<Result<_>>()?;
                    Ok(IdealWalk::new(field.clone(), &mons, typed_gens))
                })
                .collect::<Result<Vec<_>>>()?;
            fit_stream(nvars, lo, hi, cap, |t| {
                for w in walks.iter_mut() {
                    w.advance_to(t);
                }
                let mut meet = walks[0].piece().clone();
                for w in &walks[1..] {
                    meet = meet.intersect(w.piece());
                }
                (mons.count(t) - meet.rank()) as u64
            })
        }
    }
    spec.visit(Task(ideals, nvars, lo, hi, cap))?
}

/// `mu(I_a(C)) = dim_K (I_a(C))_a`: the rank of the generator span.
pub fn mu_oracle(code: &LinearCode, a: usize) -> Result<u64> {
    check_fold(code, a)?;
    check_nvars(code.k())?;
    struct Task(usize);
    impl OracleTask for Task {
        type Output = u64;
        fn run<F: Field>(self, o: Oracle<F>) -> u64 {
            let mons = Monomials::new(o.k, self.0);
            let mut span = Echelon::new(o.field.clone(), mons.count(self.0));
            for (_, g) in o.afold(&mons, &o.all_columns(), self.0) {
                if span.is_full() {
                    break;
                }
                span.insert(g);
            }
            span.rank() as u64
        }
    }
    Ok(run_task(code.matrix(), Task(a)))
}

/// One degree of the colon comparison `(I_a(C) : l)_t` against
/// `(I_{a-1}(C \ l))_t`; the second is always contained in the first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColonCell {
    pub t: usize,
    pub colon: u64,
    pub restricted: u64,
}

impl ColonCell {
    pub fn equal(&self) -> bool {
        self.colon == self.restricted
    }
}

fn check_colon(code: &LinearCode, ell: usize, a: usize) -> Result<()> {
    if a < 2 || a > code.n() {
        return Err(Error::Precondition(format!("colon checks need 2 <= a <= n, got a = {a}")));
    }
    if ell == 0 || ell > code.n() {
        return Err(Error::IndexOutOfRange { index: ell, n: code.n() });
    }
    check_nvars(code.k())
}

/// Colon cells for `t = 0..=t_max`; `ell` is 1-based.
pub fn colon_graded_dims(code: &LinearCode, ell: usize, a: usize, t_max: usize) -> Result<Vec<ColonCell>> {
    check_colon(code, ell, a)?;
    struct Task(usize, usize, usize);
    impl OracleTask for Task {
        type Output = Vec<ColonCell>;
        fn run<F: Field>(self, o: Oracle<F>) -> Vec<ColonCell> {
            let Task(ell, a, t_max) = self;
            let mons = Monomials::new(o.k, t_max + 1);
            let mut big = IdealWalk::new(o.field.clone(), &mons, o.afold(&mons, &o.all_columns(), a));
            let mut small = IdealWalk::new(o.field.clone(), &mons, o.afold(&mons, &o.without(ell), a - 1));
            (0..=t_max)
                .map(|t| {
                    big.advance_to(t + 1);
                    small.advance_to(t);
                    ColonCell {
                        t,
                        colon: o.colon_dim(&mons, ell, big.piece(), t),
                        restricted: small.dim() as u64,
                    }
                })
                .collect()
        }
    }
    Ok(run_task(code.matrix(), Task(ell - 1, a, t_max)))
}

/// `dim (I_a(C) : l)_t` next to `dim (I_{a-1}(C \ l))_t`.
pub fn colon_graded_dim(code: &LinearCode, ell: usize, a: usize, t: usize) -> Result<ColonCell> {
    Ok(colon_graded_dims(code, ell, a, t)?[t])
}

/// Fitted Hilbert polynomials of `R/(I_a(C) : l)` and `R/I_{a-1}(C \ l)`,
/// both with the window policy for generators of degree `a - 1`.
pub fn fit_colon_pair(code: &LinearCode, ell: usize, a: usize) -> Result<(FittedHP, FittedHP)> {
    check_colon(code, ell, a)?;
    let k = code.k();
    let (lo, hi) = default_window(a - 1, k);
    let cap = window_cap(a - 1, k);
    struct Task(usize, usize, usize, usize, usize);
    impl OracleTask for Task {
        type Output = Result<(FittedHP, FittedHP)>;
        fn run<F: Field>(self, o: Oracle<F>) -> Result<(FittedHP, FittedHP)> {
            let Task(ell, a, lo, hi, cap) = self;
            let mons = Monomials::new(o.k, cap + 2);
            let mut big = IdealWalk::new(o.field.clone(), &mons, o.afold(&mons, &o.all_columns(), a));
            let colon = fit_stream(o.k, lo, hi, cap, |t| {
                big.advance_to(t + 1);
                mons.count(t) as u64 - o.colon_dim(&mons, ell, big.piece(), t)
            })?;
            let mut small = IdealWalk::new(o.field.clone(), &mons, o.afold(&mons, &o.without(ell), a - 1));
            let restricted = fit_stream(o.k, lo, hi, cap, |t| {
                small.advance_to(t);
                small.codim() as u64
            })?;
            Ok((colon, restricted))
        }
    }
    run_task(code.matrix(), Task(ell - 1, a, lo, hi, cap))
}
