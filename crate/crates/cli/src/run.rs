use std::collections::BTreeMap;
use std::time::Instant;

use anyhow::Result;
use num_bigint::BigInt;
use starconfig::code::{hierarchy_bruteforce, hierarchy_from_dual_rank, hierarchy_from_tutte, wei_duality_check};
use starconfig::hilbert::monomials::MAX_VARS;
use starconfig::hilbert::report::{conjecture_report, default_t_max};
use starconfig::hilbert::{fit_hilbert_polynomial, mu_oracle};
use starconfig::star::{binomial_identity_sweep, full_profile_with};
use starconfig::tutte::tutte_subset_sum_capped;
use starconfig::{
    whitney_shift, BivarPoly, DeletionContraction, Error, FittedHP, IdealProfile, LinearCode, ShiftedCoeffs,
    WeightHierarchy,
};

use crate::cache::TutteCache;
use crate::report::{CodeSummary, EngineCheck, GhwRoutes, HilbertRow, IdentityBlock, OracleBlock, OracleRow, RunReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Tutte,
    Ghw,
    Profile,
    Primes,
    Mu,
    Verify,
    Conjecture,
    Identity,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Tutte => "tutte",
            Command::Ghw => "ghw",
            Command::Profile => "profile",
            Command::Primes => "primes",
            Command::Mu => "mu",
            Command::Verify => "verify",
            Command::Conjecture => "conjecture",
            Command::Identity => "identity",
        }
    }

    pub fn needs_code(self) -> bool {
        self != Command::Identity
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub window: Option<(usize, usize)>,
    pub cache: Option<TutteCache>,
    /// Largest ground set accepted.
    pub max_n: usize,
    pub t_max: Option<usize>,
    pub max_alpha: u64,
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            window: None,
            cache: None,
            max_n: starconfig::tutte::DEFAULT_EXHAUSTIVE_CAP,
            t_max: None,
            max_alpha: 14,
            timings: false,
        }
    }
}

struct Clock {
    on: bool,
    phases: BTreeMap<String, f64>,
}

impl Clock {
    fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.on {
            *self.phases.entry(phase.to_string()).or_default() += start.elapsed().as_secs_f64();
        }
        out
    }
}

fn tutte(code: &LinearCode, opts: &RunOptions, clock: &mut Clock) -> Result<BivarPoly> {
    let m = code.matroid();
    let compute = || DeletionContraction::parallel().compute(m);
    clock.time("tutte", || match &opts.cache {
        Some(cache) => Ok(cache.get_or_compute(m, compute)?.0),
        None => Ok(compute()),
    })
}

fn hilbert_row(code: &LinearCode, a: usize, window: Option<(usize, usize)>) -> Result<(HilbertRow, Option<FittedHP>)> {
    match fit_hilbert_polynomial(code, a, window) {
        Ok(fit) => Ok((
            HilbertRow {
                a,
                window: fit.window,
                hp: Some(fit.to_string()),
                hp_p_basis: Some(fit.p_basis_display()),
                stable_from: Some(fit.stable_from),
                degree: Some(fit.degree.to_string()),
                implied_height: Some(fit.implied_height),
            },
            Some(fit),
        )),
        Err(Error::WindowTooSmall { lo, hi }) => Ok((
            HilbertRow {
                a,
                window: (lo, hi),
                hp: None,
                hp_p_basis: None,
                stable_from: None,
                degree: None,
                implied_height: None,
            },
            None,
        )),
        Err(e) => Err(e.into()),
    }
}

fn oracle_row(code: &LinearCode, p: &IdealProfile, window: Option<(usize, usize)>) -> Result<OracleRow> {
    let (hilbert, fit) = hilbert_row(code, p.a, window)?;
    let mu = mu_oracle(code, p.a)?;
    Ok(OracleRow {
        a: p.a,
        degree_formula: p.degree.to_string(),
        height_formula: p.height,
        mu_formula: p.mu.to_string(),
        mu_oracle: mu,
        degree_agrees: fit.as_ref().map(|f| f.degree == p.degree),
        height_agrees: fit.as_ref().map(|f| f.implied_height == p.height),
        mu_agrees: BigInt::from(mu) == p.mu,
        hilbert,
    })
}

struct Derived {
    shifted: ShiftedCoeffs,
    hierarchy: WeightHierarchy,
}

fn derive(t: &BivarPoly, code: &LinearCode, clock: &mut Clock) -> Result<Derived> {
    let shifted = whitney_shift(t);
    let hierarchy = clock.time("hierarchy", || hierarchy_from_tutte(&shifted, code))?;
    Ok(Derived { shifted, hierarchy })
}

/// Runs one subcommand. `code` may be `None` only for `identity`.
pub fn run(cmd: Command, code: Option<&LinearCode>, opts: &RunOptions) -> Result<RunReport> {
    let mut clock = Clock {
        on: opts.timings,
        phases: BTreeMap::new(),
    };
    let mut report = RunReport {
        command: cmd.name().to_string(),
        ..RunReport::default()
    };
    if cmd == Command::Identity {
        let checks = clock.time("identity", || binomial_identity_sweep(opts.max_alpha));
        let failures: Vec<_> = checks.iter().filter(|c| !c.holds).cloned().collect();
        report.identity = Some(IdentityBlock {
            max_alpha: opts.max_alpha,
            checked: checks.len(),
            all_hold: failures.is_empty(),
            failures,
        });
    } else {
        let code = code.ok_or_else(|| Error::Precondition(format!("`{}` needs an input file or --example", cmd.name())))?;
        if code.n() > opts.max_n {
            return Err(Error::CapExceeded {
                n: code.n(),
                cap: opts.max_n,
            }
            .into());
        }
        report.code = Some(CodeSummary::of(code));
        let t = tutte(code, opts, &mut clock)?;
        let d = derive(&t, code, &mut clock)?;
        report.tutte = Some(t.clone());
        report.shifted = Some(d.shifted.clone());
        report.hierarchy = Some(d.hierarchy.clone());
        match cmd {
            Command::Tutte => {
                let sum = clock.time("subset sum", || tutte_subset_sum_capped(code.matroid(), opts.max_n))?;
                report.engines = Some(EngineCheck {
                    agree: sum == t,
                    subset_sum: sum,
                    deletion_contraction: t,
                });
            }
            Command::Ghw => {
                let (bruteforce, dual_rank, wei) = clock.time("ghw routes", || -> starconfig::Result<_> {
                    Ok((hierarchy_bruteforce(code)?, hierarchy_from_dual_rank(code)?, wei_duality_check(code)?))
                })?;
                report.ghw = Some(GhwRoutes {
                    agree: bruteforce == d.hierarchy && dual_rank == d.hierarchy,
                    bounds_hold: d.hierarchy.validate(code.n()).is_ok(),
                    bruteforce,
                    tutte: d.hierarchy.clone(),
                    dual_rank,
                    wei,
                });
            }
            Command::Conjecture => {
                let t_max = opts.t_max.unwrap_or_else(|| default_t_max(code));
                report.conjecture = Some(clock.time("conjecture", || conjecture_report(code, t_max))?);
            }
            Command::Profile | Command::Primes | Command::Mu | Command::Verify => {
                let profiles = clock.time("profile", || full_profile_with(code, &d.shifted, &d.hierarchy))?;
                if cmd == Command::Profile && code.k() <= MAX_VARS {
                    report.hilbert = Some(clock.time("hilbert", || {
                        (1..=code.n())
                            .map(|a| hilbert_row(code, a, opts.window).map(|r| r.0))
                            .collect::<Result<Vec<_>>>()
                    })?);
                }
                if cmd == Command::Verify {
                    let rows = clock.time("oracle", || {
                        profiles
                            .iter()
                            .map(|p| oracle_row(code, p, opts.window))
                            .collect::<Result<Vec<_>>>()
                    })?;
                    report.oracle = Some(OracleBlock {
                        requested_window: opts.window,
                        all_agree: rows.iter().all(OracleRow::agrees),
                        rows,
                    });
                }
                report.profiles = Some(profiles);
            }
            Command::Identity => unreachable!(),
        }
    }
    if opts.timings {
        report.timings = Some(clock.phases);
    }
    Ok(report)
}
