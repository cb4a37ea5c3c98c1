//! Monomials of `K[x_1..x_k]` indexed degree by degree in graded lex order.
//!
//! Exponent vectors are packed eight bits per variable. Within a degree,
//! index 0 is `x_1^d` and indices increase as monomials decrease in lex
//! order. Lex is a monomial order, so multiplying by `x_i` maps indices
//! monotonically, which the span code relies on to predict leading terms.

use std::collections::HashMap;

use crate::binom::binomial;

/// Most variables a packed exponent vector can hold.
pub const MAX_VARS: usize = 8;
/// Largest total degree a packed exponent vector can hold.
pub const MAX_DEGREE: usize = 255;

pub fn monomial_count(nvars: usize, degree: usize) -> usize {
    if nvars == 0 {
        return usize::from(degree == 0);
    }
    let c = binomial((degree + nvars - 1) as u64, (nvars - 1) as u64);
    usize::try_from(&c).expect("monomial count fits in usize")
}

struct Degree {
    exps: Vec<u64>,
    /// `up[i][m]` is the index of `x_i * m` one degree higher.
    up: Vec<Vec<u32>>,
}

/// Monomial tables for degrees `0..=max_degree`.
pub struct Monomials {
    nvars: usize,
    degrees: Vec<Degree>,
}

fn generate(nvars: usize, degree: usize) -> Vec<u64> {
    fn rec(var: usize, nvars: usize, left: usize, acc: u64, out: &mut Vec<u64>) {
        if var + 1 == nvars {
            out.push(acc | (left as u64) << (8 * var));
            return;
        }
        for e in (0..=left).rev() {
            rec(var + 1, nvars, left - e, acc | (e as u64) << (8 * var), out);
        }
    }
    let mut out = Vec::with_capacity(monomial_count(nvars, degree));
    rec(0, nvars, degree, 0, &mut out);
    out
}

impl Monomials {
    /// Panics if `nvars` or `max_degree` exceed the packing limits.
    pub fn new(nvars: usize, max_degree: usize) -> Self {
        assert!((1..=MAX_VARS).contains(&nvars), "1..={MAX_VARS} variables supported");
        assert!(max_degree < MAX_DEGREE, "degree {max_degree} too large");
        let mut levels: Vec<Vec<u64>> = (0..=max_degree + 1).map(|d| generate(nvars, d)).collect();
        let mut degrees = Vec::with_capacity(max_degree + 1);
        for d in 0..=max_degree {
            let index: HashMap<u64, u32> = levels[d + 1]
                .iter()
                .enumerate()
                .map(|(i, &m)| (m, i as u32))
                .collect();
            let up = (0..nvars)
                .map(|v| levels[d].iter().map(|&m| index[&(m + (1u64 << (8 * v)))]).collect())
                .collect();
            degrees.push(Degree {
                exps: std::mem::take(&mut levels[d]),
                up,
            });
        }
        Monomials { nvars, degrees }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn count(&self, degree: usize) -> usize {
        monomial_count(self.nvars, degree)
    }

    /// Exponent vector of monomial `index` in degree `degree`.
    pub fn exponents(&self, degree: usize, index: usize) -> Vec<u32> {
        let m = self.degrees[degree].exps[index];
        (0..self.nvars).map(|v| ((m >> (8 * v)) & 0xff) as u32).collect()
    }

    /// Index of `x_var * m` in degree `degree + 1`.
    #[inline]
    pub fn up(&self, degree: usize, var: usize, index: usize) -> usize {
        self.degrees[degree].up[var][index] as usize
    }

    pub fn up_table(&self, degree: usize, var: usize) -> &[u32] {
        &self.degrees[degree].up[var]
    }

    /// Renders monomial `index` of degree `degree` as `x1^2x3`.
    pub fn render(&self, degree: usize, index: usize) -> String {
        let e = self.exponents(degree, index);
        let s: String = e
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0)
            .map(|(v, &p)| if p == 1 { format!("x{}", v + 1) } else { format!("x{}^{p}", v + 1) })
            .collect();
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    }
}
