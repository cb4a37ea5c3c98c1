//! The JSON report and its table rendering. Every table cell is read from
//! the report, so `--json` and the default output carry the same values.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use starconfig::code::WeiDuality;
use starconfig::hilbert::report::ConjectureReport;
use starconfig::star::IdentityCheck;
use starconfig::{BivarPoly, FieldSpec, IdealProfile, LinearCode, Residual, ShiftedCoeffs, WeightHierarchy};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSummary {
    pub field: FieldSpec,
    pub k: usize,
    pub n: usize,
    pub labels: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CodeSummary {
    pub fn of(code: &LinearCode) -> Self {
        CodeSummary {
            field: code.spec(),
            k: code.k(),
            n: code.n(),
            labels: code.labels().to_vec(),
            rows: code
                .matrix()
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|v| v.to_string()).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineCheck {
    pub subset_sum: BivarPoly,
    pub deletion_contraction: BivarPoly,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhwRoutes {
    pub bruteforce: WeightHierarchy,
    pub tutte: WeightHierarchy,
    pub dual_rank: WeightHierarchy,
    pub agree: bool,
    /// Monotonicity and the generalized Singleton bound.
    pub bounds_hold: bool,
    pub wei: WeiDuality,
}

/// Fitted Hilbert polynomial of `R/I_a`, or `None` when the window was too
/// short to see it stabilize.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertRow {
    pub a: usize,
    pub window: (usize, usize),
    pub hp: Option<String>,
    pub hp_p_basis: Option<String>,
    pub stable_from: Option<usize>,
    pub degree: Option<String>,
    pub implied_height: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRow {
    pub a: usize,
    pub hilbert: HilbertRow,
    pub degree_formula: String,
    pub height_formula: usize,
    pub mu_formula: String,
    pub mu_oracle: u64,
    pub degree_agrees: Option<bool>,
    pub height_agrees: Option<bool>,
    pub mu_agrees: bool,
}

impl OracleRow {
    pub fn agrees(&self) -> bool {
        self.degree_agrees == Some(true) && self.height_agrees == Some(true) && self.mu_agrees
    }

    /// An inconclusive fit is not a disagreement.
    pub fn disagrees(&self) -> bool {
        self.degree_agrees == Some(false) || self.height_agrees == Some(false) || !self.mu_agrees
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBlock {
    pub requested_window: Option<(usize, usize)>,
    pub rows: Vec<OracleRow>,
    pub all_agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityBlock {
    pub max_alpha: u64,
    pub checked: usize,
    pub all_hold: bool,
    pub failures: Vec<IdentityCheck>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code: Option<CodeSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tutte: Option<BivarPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub engines: Option<EngineCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shifted: Option<ShiftedCoeffs>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hierarchy: Option<WeightHierarchy>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ghw: Option<GhwRoutes>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profiles: Option<Vec<IdealProfile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<Vec<HilbertRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjecture: Option<ConjectureReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<IdentityBlock>,
    /// Wall-clock seconds per phase; only present when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl RunReport {
    /// Checks that failed. A nonempty list means a bug, not bad input.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(e) = &self.engines {
            if !e.agree {
                out.push("Tutte engines disagree".to_string());
            }
        }
        if let Some(g) = &self.ghw {
            if !g.agree {
                out.push("weight hierarchy routes disagree".into());
            }
            if !g.bounds_hold {
                out.push("weight hierarchy violates monotonicity or d_r <= n - k + r".into());
            }
            if !g.wei.holds {
                out.push("Wei duality fails".into());
            }
        }
        if let Some(o) = &self.oracle {
            for row in o.rows.iter().filter(|r| r.disagrees()) {
                out.push(format!("a = {}: formula and Hilbert function disagree", row.a));
            }
        }
        if let Some(c) = &self.conjecture {
            for row in &c.rows {
                for t in row.proved_violations() {
                    out.push(format!("a = {}, l = {}: proved colon equality fails at t = {t}", row.a, row.ell));
                }
            }
        }
        if let Some(i) = &self.identity {
            for f in &i.failures {
                out.push(format!("binomial identity fails at ({}, {}, {})", f.alpha, f.beta, f.gamma));
            }
        }
        out
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(c) = &self.code {
            let _ = writeln!(out, "[{}, {}] code over {}", c.n, c.k, c.field);
            let _ = writeln!(out, "columns: {}", c.labels.join(", "));
        }
        if let Some(e) = &self.engines {
            let _ = writeln!(out, "T(x, y) subset sum          = {}", e.subset_sum);
            let _ = writeln!(out, "T(x, y) deletion-contraction = {}", e.deletion_contraction);
            let _ = writeln!(out, "engines agree: {}", yes_no(e.agree));
        } else if let Some(t) = &self.tutte {
            let _ = writeln!(out, "T(x, y) = {t}");
        }
        if let Some(s) = &self.shifted {
            let _ = writeln!(out, "T(x + 1, y) = {}", s.shifted);
            let p: Vec<String> = s
                .p
                .iter()
                .enumerate()
                .map(|(r, p)| format!("p_{r} = {}", p.map_or("-".to_string(), |v| v.to_string())))
                .collect();
            let _ = writeln!(out, "{}", p.join(", "));
        }
        if let Some(g) = &self.ghw {
            render_ghw(&mut out, g);
        } else if let Some(h) = &self.hierarchy {
            let _ = writeln!(out, "weight hierarchy: {}", hierarchy_text(h));
        }
        match self.command.as_str() {
            "primes" => self.render_primes(&mut out),
            "mu" => self.render_mu(&mut out),
            _ => self.render_profile(&mut out),
        }
        if let Some(o) = &self.oracle {
            render_oracle(&mut out, o);
        }
        if let Some(c) = &self.conjecture {
            out.push_str(&c.render());
            let _ = writeln!(out, "violations of proved equalities: {}", c.proved_violations());
        }
        if let Some(i) = &self.identity {
            let _ = writeln!(
                out,
                "binomial identity, alpha <= {}: {} triples checked, {}",
                i.max_alpha,
                i.checked,
                if i.all_hold { "all hold".to_string() } else { format!("{} failures", i.failures.len()) }
            );
            for f in &i.failures {
                let _ = writeln!(out, "  ({}, {}, {}): {} vs {}", f.alpha, f.beta, f.gamma, f.lhs, f.rhs);
            }
        }
        if let Some(t) = &self.timings {
            for (phase, secs) in t {
                let _ = writeln!(out, "time {phase}: {secs:.3}s");
            }
        }
        out
    }

    fn render_profile(&self, out: &mut String) {
        let Some(profiles) = &self.profiles else { return };
        let hp = |a: usize| {
            self.hilbert.as_ref().map_or(String::new(), |h| {
                let fit = h.iter().find(|r| r.a == a).and_then(|r| r.hp_p_basis.clone());
                format!("  {}", fit.unwrap_or_else(|| "?".into()))
            })
        };
        let header = if self.hilbert.is_some() { "  HP(R/I_a)" } else { "" };
        let _ = writeln!(out, "{:>3} {:>3} {:>3} {:>6} {:>10} {:>10}{header}", "a", "r", "j", "height", "degree", "mu");
        for p in profiles {
            let _ = writeln!(
                out,
                "{:>3} {:>3} {:>3} {:>6} {:>10} {:>10}{}",
                p.a,
                p.r,
                p.j,
                p.height,
                p.degree,
                p.mu,
                hp(p.a)
            );
        }
    }

    fn render_mu(&self, out: &mut String) {
        let Some(profiles) = &self.profiles else { return };
        let _ = writeln!(out, "{:>3} {:>10}", "a", "mu");
        for p in profiles {
            let _ = writeln!(out, "{:>3} {:>10}", p.a, p.mu);
        }
    }

    fn render_primes(&self, out: &mut String) {
        let (Some(profiles), Some(code)) = (&self.profiles, &self.code) else { return };
        for p in profiles {
            let _ = write!(out, "a = {} (height {}): ", p.a, p.height);
            match p.residual {
                Residual::MaximalPower => {
                    let _ = writeln!(out, "I_a = m^{}", p.a);
                }
                Residual::Unknown => {
                    let listed: Vec<String> = p
                        .primes
                        .iter()
                        .map(|q| {
                            let forms: Vec<&str> = q.flat.indices().map(|i| code.labels[i].as_str()).collect();
                            format!("<{}>^{}", forms.join(", "), q.exponent)
                        })
                        .collect();
                    let _ = writeln!(out, "{} ∩ K", listed.join(" ∩ "));
                }
            }
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn hierarchy_text(h: &WeightHierarchy) -> String {
    let d: Vec<String> = h.d.iter().skip(1).map(|v| v.to_string()).collect();
    format!("({})", d.join(", "))
}

fn render_ghw(out: &mut String, g: &GhwRoutes) {
    let _ = writeln!(out, "weight hierarchy, brute force: {}", hierarchy_text(&g.bruteforce));
    let _ = writeln!(out, "weight hierarchy, Tutte:       {}", hierarchy_text(&g.tutte));
    let _ = writeln!(out, "weight hierarchy, dual rank:   {}", hierarchy_text(&g.dual_rank));
    let _ = writeln!(out, "routes agree: {}", yes_no(g.agree));
    let _ = writeln!(out, "monotone and within bounds: {}", yes_no(g.bounds_hold));
    let _ = writeln!(out, "dual hierarchy: {}", hierarchy_text(&g.wei.dual_hierarchy));
    let _ = writeln!(out, "Wei duality: {}", yes_no(g.wei.holds));
}

fn render_oracle(out: &mut String, o: &OracleBlock) {
    let _ = writeln!(
        out,
        "{:>3} {:>9} {:>14} {:>14} {:>12} {:>10}  HP(R/I_a)",
        "a", "window", "deg formula", "deg HF", "height f/HF", "mu f/span"
    );
    for r in &o.rows {
        let h = &r.hilbert;
        let mark = |ok: Option<bool>| match ok {
            Some(true) => "",
            Some(false) => " !",
            None => " ?",
        };
        let _ = writeln!(
            out,
            "{:>3} {:>9} {:>14} {:>14} {:>12} {:>10}  {}",
            r.a,
            format!("{}:{}", h.window.0, h.window.1),
            r.degree_formula,
            format!("{}{}", h.degree.as_deref().unwrap_or("?"), mark(r.degree_agrees)),
            format!(
                "{}/{}{}",
                r.height_formula,
                h.implied_height.map_or("?".to_string(), |v| v.to_string()),
                mark(r.height_agrees)
            ),
            format!("{}/{}{}", r.mu_formula, r.mu_oracle, mark(Some(r.mu_agrees))),
            h.hp.as_deref().unwrap_or("?")
        );
    }
    let _ = writeln!(out, "all agree: {}", yes_no(o.all_agree));
}
