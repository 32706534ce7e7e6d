//! Verification suites: each one recomputes a family of claims from scratch
//! and reports one line per check.

use std::time::Instant;

use serde::Serialize;

use crate::ds::{build_mate, ds_check_k_plus, enumerate_non_ds, non_ds_by_quadratic};
use crate::error::Result;
use crate::graph::{
    canonical_form_with_cap, complete_bipartite, graph6_encode, k_minus, k_plus, with_isolated,
};
use crate::oracle::{cospectral_classes, verify_ds, verify_minus_edge_window, EnumerationSpec};
use crate::poly::{char_poly, IntPolynomial};
use crate::spectra::{quartic_to_poly, spectrum_k_minus, spectrum_k_plus};

/// The available suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Smallest cospectral pair: none below 5 vertices, exactly one class at 5.
    SmallestPair,
    /// Exhaustive DS check of `K⁻(p,q)` for small `p + q`.
    MinusEdgeWindow,
    /// Exhaustive mate search for `K⁺(p,q)` against the decision procedure.
    PlusPendantMates,
    /// Closed-form spectra against exact characteristic polynomials.
    ClosedForms,
    /// Parametrized non-DS list against the integer-root sweep.
    Parametrization,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::SmallestPair,
        Suite::MinusEdgeWindow,
        Suite::PlusPendantMates,
        Suite::ClosedForms,
        Suite::Parametrization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SmallestPair => "smallest-pair",
            Suite::MinusEdgeWindow => "minus-edge-window",
            Suite::PlusPendantMates => "plus-pendant-mates",
            Suite::ClosedForms => "closed-forms",
            Suite::Parametrization => "parametrization",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

/// Knobs shared by the suites; each suite reads the ones it needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Largest vertex count for exhaustive windows.
    pub n_max: usize,
    /// Largest `q` for the closed-form and parametrization sweeps.
    pub max_q: u64,
    /// Also run the 10-vertex, 19-edge search for `K⁺(3,6)`.
    pub flagship: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            n_max: 9,
            max_q: 50,
            flagship: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub seconds: f64,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    /// One `PASS`/`FAIL` line per check, then a summary line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{tag} {} [{:.3}s] {}\n",
                c.name, c.seconds, c.detail
            ));
        }
        let tag = if self.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{tag} suite {}: {}/{} checks in {:.3}s\n",
            self.suite.name(),
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len(),
            self.seconds
        ));
        out
    }
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn run(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(bool, String)>) {
        let start = Instant::now();
        let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
            seconds: start.elapsed().as_secs_f64(),
        });
    }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> SuiteReport {
    let start = Instant::now();
    let mut rec = Recorder { checks: Vec::new() };
    match suite {
        Suite::SmallestPair => smallest_pair(&mut rec),
        Suite::MinusEdgeWindow => minus_edge_window(&mut rec, opts),
        Suite::PlusPendantMates => plus_pendant_mates(&mut rec, opts),
        Suite::ClosedForms => closed_forms(&mut rec, opts),
        Suite::Parametrization => parametrization(&mut rec, opts),
    }
    SuiteReport {
        suite,
        passed: rec.checks.iter().all(|c| c.passed),
        seconds: start.elapsed().as_secs_f64(),
        checks: rec.checks,
    }
}

fn smallest_pair(rec: &mut Recorder) {
    for n in 0..=4 {
        rec.run(format!("no cospectral class on {n} vertices"), || {
            let classes = cospectral_classes(&EnumerationSpec::new(n), false)?;
            Ok((
                classes.is_empty(),
                format!("{} multi-member classes", classes.len()),
            ))
        });
    }
    rec.run(
        "single class on 5 vertices: K_{1,4} and K_{2,2} u K1",
        || {
            let classes = cospectral_classes(&EnumerationSpec::new(5), false)?;
            let star = canonical_form_with_cap(&complete_bipartite(1, 4)?, 12)?;
            let square =
                canonical_form_with_cap(&with_isolated(&complete_bipartite(2, 2)?, 1)?, 12)?;
            let mut expected = [star, square];
            expected.sort();
            let ok = classes.len() == 1
                && classes[0].poly == IntPolynomial::from_i64(&[0, 0, 0, -4, 0, 1])
                && classes[0]
                    .members
                    .iter()
                    .map(|m| &m.form)
                    .eq(expected.iter());
            let detail = classes
                .iter()
                .map(|c| format!("{}: {}", c.poly, c.graph6_members().join(" ")))
                .collect::<Vec<_>>()
                .join("; ");
            Ok((ok, detail))
        },
    );
}

fn minus_edge_window(rec: &mut Recorder, opts: &SuiteOptions) {
    rec.run(
        format!("K-(p,q) has no mate for p+q <= {}", opts.n_max),
        || {
            let report = verify_minus_edge_window(opts.n_max)?;
            let searched: usize = report.rows.iter().map(|r| r.searched).sum();
            let failed: Vec<String> = report
                .rows
                .iter()
                .filter(|r| !r.passed)
                .map(|r| format!("({},{})", r.p, r.q))
                .collect();
            let detail = format!(
                "{} pairs, {searched} graphs compared{}",
                report.rows.len(),
                if failed.is_empty() {
                    String::new()
                } else {
                    format!(", failed {}", failed.join(" "))
                }
            );
            Ok((report.all_passed, detail))
        },
    );
}

/// Exhaustive mates of `K⁺(p,q)` agree with the decision procedure.
fn check_plus(p: usize, q: usize) -> Result<(bool, String)> {
    let g = k_plus(p, q)?;
    let verdict = ds_check_k_plus(p as u64, q as u64)?;
    let found = verify_ds(&g)?;
    let ok = if verdict.is_ds() {
        found.mates.is_empty()
    } else {
        let mate = canonical_form_with_cap(&build_mate(&verdict)?, 12)?;
        found.mates.len() == 1 && canonical_form_with_cap(&found.mates[0], 12)? == mate
    };
    let mates: Vec<String> = found.mates.iter().map(graph6_encode).collect();
    Ok((
        ok,
        format!(
            "verdict {:?}, {} graphs compared, mates [{}]",
            verdict.status,
            found.searched,
            mates.join(" ")
        ),
    ))
}

fn plus_pendant_mates(rec: &mut Recorder, opts: &SuiteOptions) {
    for n in 7..=opts.n_max {
        for p in 3..=(n - 1) / 2 {
            let q = n - 1 - p;
            rec.run(format!("K+({p},{q}) mates match the decision"), || {
                check_plus(p, q)
            });
        }
    }
    if opts.flagship {
        rec.run(
            "K+(3,6): unique mate K_{4,5}- u K1 among 10-vertex 19-edge graphs",
            || check_plus(3, 6),
        );
    }
}

fn closed_forms(rec: &mut Recorder, opts: &SuiteOptions) {
    let max_q = opts.max_q as usize;
    rec.run(
        format!("K-(p,q) closed form, q <= {max_q}, p+q <= 64"),
        || {
            let mut count = 0;
            for q in 2..=max_q {
                for p in (2..=q).take_while(|p| p + q <= 64) {
                    let closed = quartic_to_poly(&spectrum_k_minus(p as u64, q as u64)?);
                    if closed != char_poly(&k_minus(p, q)?) {
                        return Ok((false, format!("mismatch at ({p},{q})")));
                    }
                    count += 1;
                }
            }
            Ok((true, format!("{count} pairs")))
        },
    );
    rec.run(
        format!("K+(p,q) closed form, q <= {max_q}, p+q+1 <= 64"),
        || {
            let mut count = 0;
            for q in 2..=max_q {
                for p in (2..=q).take_while(|p| p + q < 64) {
                    let closed = quartic_to_poly(&spectrum_k_plus(p as u64, q as u64)?);
                    if closed != char_poly(&k_plus(p, q)?) {
                        return Ok((false, format!("mismatch at ({p},{q})")));
                    }
                    count += 1;
                }
            }
            Ok((true, format!("{count} pairs")))
        },
    );
}

fn parametrization(rec: &mut Recorder, opts: &SuiteOptions) {
    let max_q = opts.max_q;
    rec.run(
        format!("parametrized and integer-root lists agree, q <= {max_q}"),
        || {
            let by_params: Vec<(u64, u64)> =
                enumerate_non_ds(max_q).iter().map(|v| (v.p, v.q)).collect();
            let by_roots = non_ds_by_quadratic(max_q);
            Ok((
                by_params == by_roots,
                format!("{} non-DS pairs", by_roots.len()),
            ))
        },
    );
    rec.run(
        format!("pointwise verdicts and mate arithmetic, q <= {max_q}"),
        || {
            for row in enumerate_non_ds(max_q) {
                let v = ds_check_k_plus(row.p, row.q)?;
                let m = v.mate.expect("non-DS verdict has a mate");
                let arithmetic = m.p2 + m.q2 == row.q + 3
                    && m.p2 as u128 * m.q2 as u128 == row.p as u128 * row.q as u128 + 2
                    && m.isolated == row.p - 2
                    && m.p2 <= m.q2
                    && m.p2 >= 2;
                if v != row || !arithmetic {
                    return Ok((false, format!("disagreement at ({},{})", row.p, row.q)));
                }
            }
            Ok((true, "all rows consistent".to_string()))
        },
    );
}
