//! Degree-by-degree comparison of `I_a(C) : l` with `I_{a-1}(C \ l)`.
//!
//! Two slices are theorems and are flagged as such: equality in degree
//! `a - 1`, and equality in every degree when `l` is a coloop. Everything
//! else is reported as observed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::code::{hierarchy_from_tutte, LinearCode};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::ExactMatrix;
use crate::star::fold_position;
use crate::tutte::{tutte_deletion_contraction, whitney_shift};

use super::{colon_graded_dims, fit_colon_pair, fit_hilbert_polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CellStatus {
    #[serde(rename = "=")]
    Equal,
    #[serde(rename = "≠")]
    Different,
    /// Every generator of `I_a(C)` is divisible by `l`, so the colon is
    /// `I_{a-1}(C \ l)` by cancellation.
    #[serde(rename = "auto")]
    Automatic,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl fmt::Display for CellStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellStatus::Equal => "=",
            CellStatus::Different => "≠",
            CellStatus::Automatic => "auto",
            CellStatus::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportCell {
    pub t: usize,
    pub colon: u64,
    pub restricted: u64,
    pub status: CellStatus,
}

/// When the degrees of the two sides are known to agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeHypothesis {
    /// `l` is a coloop; the ideals are equal.
    Coloop,
    /// `a = d_r + j` with `j >= 2`.
    JAtLeastTwo,
    /// `j = 1` and `p_r(C) = p_r(C \ l)`.
    JOneSameP,
    NotMet,
}

impl DegreeHypothesis {
    pub fn holds(self) -> bool {
        self != DegreeHypothesis::NotMet
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeComparison {
    pub colon: Option<String>,
    pub restricted: Option<String>,
    pub status: CellStatus,
    pub hypothesis: DegreeHypothesis,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub a: usize,
    /// 1-based column of `l`.
    pub ell: usize,
    pub coloop: bool,
    /// Other columns proportional to `l`.
    pub parallel: usize,
    pub automatic: bool,
    pub cells: Vec<ReportCell>,
    /// Equality in degree `a - 1`.
    pub degree_a_minus_1: bool,
    pub degree: DegreeComparison,
}

impl ConjectureRow {
    /// Violations of the proved slices: degree `a - 1` always, every degree
    /// for a coloop.
    pub fn proved_violations(&self) -> Vec<usize> {
        self.cells
            .iter()
            .filter(|c| c.colon != c.restricted && (self.coloop || c.t + 1 == self.a))
            .map(|c| c.t)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stabilization {
    pub a: usize,
    pub stable_from: Option<usize>,
    /// `stable_from <= a`, a necessary condition for `reg(R/I_a) = a - 1`.
    /// `None` when the fit was inconclusive.
    pub consistent_with_linear_resolution: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub field: FieldSpec,
    pub note: Option<String>,
    pub t_max: usize,
    pub rows: Vec<ConjectureRow>,
    pub stabilization: Vec<Stabilization>,
}

/// Default last degree of the comparison table.
pub fn default_t_max(code: &LinearCode) -> usize {
    code.n() + code.k() + 1
}

fn parallel_columns(m: &ExactMatrix, ell: usize) -> usize {
    (0..m.cols())
        .filter(|&c| c != ell && (m.column_rank(&[c, ell]) == Ok(1)))
        .count()
}

pub fn conjecture_report(code: &LinearCode, t_max: usize) -> Result<ConjectureReport> {
    let n = code.n();
    let coeffs = whitney_shift(&tutte_deletion_contraction(code.matroid()));
    let hierarchy = hierarchy_from_tutte(&coeffs, code)?;
    let mut rows = Vec::new();
    for a in 2..=n {
        let (r, j) = fold_position(code, &hierarchy, a)?;
        for ell in 1..=n {
            let coloop = code.matroid().is_coloop(ell - 1);
            let parallel = parallel_columns(code.matrix(), ell - 1);
            let automatic = a + parallel >= n;
            let cells: Vec<ReportCell> = colon_graded_dims(code, ell, a, t_max)?
                .into_iter()
                .map(|c| ReportCell {
                    t: c.t,
                    colon: c.colon,
                    restricted: c.restricted,
                    status: if automatic {
                        CellStatus::Automatic
                    } else if c.equal() {
                        CellStatus::Equal
                    } else {
                        CellStatus::Different
                    },
                })
                .collect();
            let degree_a_minus_1 = cells.get(a - 1).is_none_or(|c| c.colon == c.restricted);
            let hypothesis = if coloop {
                DegreeHypothesis::Coloop
            } else if j >= 2 {
                DegreeHypothesis::JAtLeastTwo
            } else {
                let minor = code.matroid().delete(ell - 1);
                let p_minor = whitney_shift(&tutte_deletion_contraction(&minor)).p(r);
                if p_minor.is_some() && p_minor == coeffs.p(r) {
                    DegreeHypothesis::JOneSameP
                } else {
                    DegreeHypothesis::NotMet
                }
            };
            let degree = match fit_colon_pair(code, ell, a) {
                Ok((c, d)) => DegreeComparison {
                    status: if c.degree == d.degree { CellStatus::Equal } else { CellStatus::Different },
                    colon: Some(c.degree.to_string()),
                    restricted: Some(d.degree.to_string()),
                    hypothesis,
                },
                Err(Error::WindowTooSmall { .. }) => DegreeComparison {
                    colon: None,
                    restricted: None,
                    status: CellStatus::Inconclusive,
                    hypothesis,
                },
                Err(e) => return Err(e),
            };
            rows.push(ConjectureRow {
                a,
                ell,
                coloop,
                parallel,
                automatic,
                cells,
                degree_a_minus_1,
                degree,
            });
        }
    }
    let stabilization = (1..=n)
        .map(|a| match fit_hilbert_polynomial(code, a, None) {
            Ok(fit) => Ok(Stabilization {
                a,
                stable_from: Some(fit.stable_from),
                consistent_with_linear_resolution: Some(fit.stable_from <= a),
            }),
            Err(Error::WindowTooSmall { .. }) => Ok(Stabilization {
                a,
                stable_from: None,
                consistent_with_linear_resolution: None,
            }),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>>>()?;
    let field = code.spec();
    let note = match field {
        FieldSpec::PrimeField { modulus } => Some(format!(
            "computed over GF({modulus}); the conjecture is stated in characteristic 0, so this is outside its hypothesis"
        )),
        FieldSpec::Rationals => None,
    };
    Ok(ConjectureReport {
        field,
        note,
        t_max,
        rows,
        stabilization,
    })
}

impl ConjectureReport {
    pub fn proved_violations(&self) -> usize {
        self.rows.iter().map(|r| r.proved_violations().len()).sum()
    }

    /// Plain-text matrix: one row per `(a, l)`, one column per degree.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(note) = &self.note {
            out.push_str(&format!("note: {note}\n"));
        }
        let width = self
            .rows
            .iter()
            .flat_map(|r| r.cells.iter().map(|c| c.status.to_string().chars().count()))
            .max()
            .unwrap_or(1)
            .max(4);
        out.push_str("  a  l ");
        for t in 0..=self.t_max {
            out.push_str(&format!(" {:>width$}", format!("t={t}")));
        }
        out.push_str("  deg(colon) deg(minor) hypothesis\n");
        for row in &self.rows {
            out.push_str(&format!("{:>3} {:>2}{}", row.a, row.ell, if row.coloop { "*" } else { " " }));
            for c in &row.cells {
                out.push_str(&format!(" {:>width$}", c.status.to_string()));
            }
            let deg = &row.degree;
            out.push_str(&format!(
                "  {:>10} {:>10} {}\n",
                deg.colon.as_deref().unwrap_or("?"),
                deg.restricted.as_deref().unwrap_or("?"),
                match deg.hypothesis {
                    DegreeHypothesis::Coloop => "coloop",
                    DegreeHypothesis::JAtLeastTwo => "j>=2",
                    DegreeHypothesis::JOneSameP => "j=1, p_r=p_r'",
                    DegreeHypothesis::NotMet => "-",
                }
            ));
        }
        out.push_str("(* coloop)\n");
        for s in &self.stabilization {
            let verdict = match s.consistent_with_linear_resolution {
                Some(true) => "consistent with reg = a-1",
                Some(false) => "not consistent with reg = a-1",
                None => "inconclusive",
            };
            let from = s.stable_from.map_or("?".to_string(), |v| v.to_string());
            out.push_str(&format!("a={}: HF polynomial from t={from}: {verdict}\n", s.a));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    #[test]
    fn example0_report_is_all_equal() {
        let e0 = examples::example0();
        let report = conjecture_report(&e0, 6).unwrap();
        assert_eq!(report.rows.len(), 2 * 3);
        for row in &report.rows {
            assert!(row.cells.iter().all(|c| c.colon == c.restricted), "{row:?}");
            assert!(row.degree_a_minus_1);
        }
        assert_eq!(report.proved_violations(), 0);
        assert!(report.note.as_deref().unwrap().contains("GF(2)"));
        assert!(report.render().contains("t=6"));
        assert!(report.stabilization.iter().all(|s| s.consistent_with_linear_resolution == Some(true)));
    }

    #[test]
    fn parallel_columns_make_cells_automatic() {
        // l_1 = l_2 = x1, l_3 = x2: for a = 3 every product has the factor x1
        let g = ExactMatrix::from_i64_rows(FieldSpec::prime(3).unwrap(), &[vec![1, 2, 0], vec![0, 0, 1]]).unwrap();
        let code = LinearCode::new(g).unwrap();
        let report = conjecture_report(&code, 4).unwrap();
        let row = report.rows.iter().find(|r| r.a == 2 && r.ell == 1).unwrap();
        assert_eq!(row.parallel, 1);
        assert!(row.automatic);
        assert!(row.cells.iter().all(|c| c.status == CellStatus::Automatic && c.colon == c.restricted));
        let coloop_row = report.rows.iter().find(|r| r.ell == 3).unwrap();
        assert!(coloop_row.coloop);
        assert_eq!(coloop_row.degree.hypothesis, DegreeHypothesis::Coloop);
    }
}
