//! Named checks over a resolved subject, run in parallel.

use std::collections::BTreeMap;
use std::time::Instant;

use hopfkit_core::commutative::enumerate_twists;
use hopfkit_core::degeneracy::{analyze, is_nondegenerate, twisted_dual_verdict};
use hopfkit_core::hopf::check_hopf;
use hopfkit_core::isocat::{run_pipeline, PipelineReport};
use hopfkit_core::plie::frobenius_check;
use hopfkit_core::twist::{apply_twist, check_triangular, check_twist, minimality_rank, r_matrix, RMatrix, Twist};
use hopfkit_core::{CheckReport, HopfPresentation, SparseTensor, Witness};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::fixtures::{Expectation, Subject};
use crate::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub target: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    /// Excluded from determinism comparisons.
    pub timings_ms: BTreeMap<String, f64>,
}

/// A computed outcome before expectations are applied. Properties must
/// hold; measurements pass unless an expectation disagrees.
enum Outcome {
    Property(CheckReport),
    Measure(Value),
    Broken(String),
    /// The check's precondition fails for this subject, e.g. a twisted
    /// dual on a noncommutative parent.
    NotApplicable(String),
}

fn broken(e: hopfkit_core::Error) -> Outcome {
    match e {
        hopfkit_core::Error::Precondition(m) => Outcome::NotApplicable(m),
        e => Outcome::Broken(e.to_string()),
    }
}

pub const TWISTED: [&str; 10] = [
    "hopf",
    "twist-eq",
    "twisted-hopf",
    "triangular",
    "minimality-rank",
    "minimal",
    "nondegenerate",
    "noncomm",
    "nococomm",
    "twisted-dual",
];
pub const HOPF: [&str; 3] = ["hopf", "commutative", "cocommutative"];
pub const REDUCED: [&str; 4] = ["frobenius", "radical-dim", "center-dim", "verdict"];
pub const ENUMERATE: [&str; 4] = ["candidates", "twists", "orbits", "gauge-elements"];
pub const PIPELINE_EXTRA: [&str; 2] = ["g_b-type", "shifted-isomorphic"];

struct TwistedData {
    twisted: Result<HopfPresentation, String>,
    r: Result<RMatrix, String>,
}

fn twisted_data(h: &HopfPresentation, j: &SparseTensor) -> TwistedData {
    let t = Twist::new(h, j.clone()).map_err(|e| e.to_string());
    TwistedData {
        twisted: apply_twist(h, j).map_err(|e| e.to_string()),
        r: t.and_then(|t| r_matrix(&t).map_err(|e| e.to_string())),
    }
}

fn twisted_check(name: &str, h: &HopfPresentation, j: &SparseTensor, d: &TwistedData) -> Outcome {
    let hj = || d.twisted.as_ref().map_err(|e| Outcome::Broken(e.clone()));
    let r = || d.r.as_ref().map_err(|e| Outcome::Broken(e.clone()));
    let run = || -> Result<Outcome, Outcome> {
        Ok(match name {
            "hopf" => Outcome::Property(check_hopf(h)),
            "twist-eq" => Outcome::Property(check_twist(h, j)),
            "twisted-hopf" => Outcome::Property(check_hopf(hj()?)),
            "triangular" => {
                let r = r()?;
                Outcome::Property(check_triangular(r.parent(), r))
            }
            "minimality-rank" | "minimal" => {
                let r = r()?;
                let rank = minimality_rank(r.parent(), r.element()).map_err(|e| Outcome::Broken(e.to_string()))?;
                if name == "minimal" {
                    Outcome::Measure(json!(rank == h.dim()))
                } else {
                    Outcome::Measure(json!(rank))
                }
            }
            "nondegenerate" => Outcome::Measure(json!(is_nondegenerate(h, j).map_err(broken)?)),
            "noncomm" => Outcome::Measure(json!(hj()?.algebra().noncommuting_pair().is_some())),
            "nococomm" => Outcome::Measure(json!(hj()?.coalgebra().noncocommuting_element().is_some())),
            "twisted-dual" => {
                let (_, v) = twisted_dual_verdict(h, j).map_err(broken)?;
                Outcome::Measure(json!(v.to_string()))
            }
            _ => unreachable!("check names are validated"),
        })
    };
    run().unwrap_or_else(|o| o)
}

fn hopf_check(name: &str, h: &HopfPresentation) -> Outcome {
    match name {
        "hopf" => Outcome::Property(check_hopf(h)),
        "commutative" => Outcome::Measure(json!(h.is_commutative())),
        _ => Outcome::Measure(json!(h.is_cocommutative())),
    }
}

fn pipeline_outcomes(out: &PipelineReport) -> Vec<(String, Outcome)> {
    let mut v: Vec<(String, Outcome)> =
        out.stages.iter().map(|s| (s.stage.replace(' ', "-"), Outcome::Property(s.report.clone()))).collect();
    if let Some(t) = &out.g_b_type {
        v.push(("g_b-type".into(), Outcome::Measure(json!(t))));
    }
    if let Some(b) = out.shifted_isomorphic {
        v.push(("shifted-isomorphic".into(), Outcome::Measure(json!(b))));
    }
    v
}

fn finish(name: String, outcome: Outcome, expect: &[Expectation]) -> CheckResult {
    let e = expect.iter().find(|e| e.check == name);
    let (mut passed, value, detail, witness) = match outcome {
        Outcome::Property(report) => {
            let first = report.first_failure().cloned();
            let detail = first.as_ref().map(|c| match &c.detail {
                Some(d) => format!("{}: {d}", c.name),
                None => c.name.clone(),
            });
            (report.passed(), json!(report.passed()), detail, first.and_then(|c| c.witness))
        }
        Outcome::Measure(v) => (true, v, None, None),
        Outcome::Broken(why) | Outcome::NotApplicable(why) => (false, Value::Null, Some(why), None),
    };
    if let Some(e) = e {
        passed = passed && value == e.value;
    }
    CheckResult {
        name,
        passed,
        value,
        expected: e.map(|e| e.value.clone()),
        source: e.map(|e| e.source.clone()),
        detail,
        witness,
    }
}

pub fn available(subject: &Subject) -> Vec<&'static str> {
    match subject {
        Subject::Hopf(_) => HOPF.to_vec(),
        Subject::Twisted { .. } => TWISTED.to_vec(),
        Subject::Reduced(_) => REDUCED.to_vec(),
        Subject::Enumerate(_) => ENUMERATE.to_vec(),
        Subject::Pipeline(_) => hopfkit_core::isocat::STAGES
            .iter()
            .map(|&s| if s == "skew form" { "skew-form" } else { s })
            .chain(PIPELINE_EXTRA)
            .collect(),
    }
}

/// Runs the requested checks (all available ones when `only` is empty).
pub fn verify(
    target: &str,
    subject: &Subject,
    expect: &[Expectation],
    only: &[String],
    budget: u128,
) -> Result<VerifyReport, CliError> {
    let names = available(subject);
    if let Some(bad) = only.iter().find(|c| !names.contains(&c.as_str())) {
        return Err(CliError::input(format!("unknown check {bad:?}; available: {}", names.join(","))));
    }
    let wanted = |n: &str| only.is_empty() || only.iter().any(|c| c == n);
    let selected: Vec<&str> = names.iter().copied().filter(|n| wanted(n)).collect();
    let mut timings = BTreeMap::new();
    let timed = |name: &str, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let o = f();
        (name.to_string(), o, t.elapsed().as_secs_f64() * 1e3)
    };
    let rows: Vec<(String, Outcome, f64)> = match subject {
        Subject::Hopf(h) => selected.par_iter().map(|n| timed(n, &|| hopf_check(n, h))).collect(),
        Subject::Twisted { parent, twist } => {
            let t = Instant::now();
            let data = twisted_data(parent, twist);
            timings.insert("setup".to_string(), t.elapsed().as_secs_f64() * 1e3);
            selected.par_iter().map(|n| timed(n, &|| twisted_check(n, parent, twist, &data))).collect()
        }
        Subject::Reduced(ex) => {
            let t = Instant::now();
            let an = analyze(&ex.reduced);
            timings.insert("setup".to_string(), t.elapsed().as_secs_f64() * 1e3);
            selected
                .par_iter()
                .map(|n| {
                    timed(n, &|| match *n {
                        "frobenius" => {
                            let mut r = CheckReport::new("frobenius");
                            if frobenius_check(&ex.lie, &ex.xi) {
                                r.pass("xi([x, y]) is nondegenerate");
                            } else {
                                r.fail_with("xi([x, y]) is nondegenerate", "the form has a kernel");
                            }
                            Outcome::Property(r)
                        }
                        "radical-dim" => Outcome::Measure(json!(an.radical.len())),
                        "center-dim" => Outcome::Measure(json!(an.center.len())),
                        _ => Outcome::Measure(json!(an.verdict.map(|v| v.to_string()))),
                    })
                })
                .collect()
        }
        Subject::Enumerate(h) => {
            let t = Instant::now();
            let e = enumerate_twists(h, budget)?;
            let ms = t.elapsed().as_secs_f64() * 1e3;
            selected
                .iter()
                .map(|n| {
                    let v = match *n {
                        "candidates" => json!(e.candidates as u64),
                        "twists" => json!(e.twists.len()),
                        "orbits" => json!(e.orbit_count),
                        _ => json!(e.gauge_count),
                    };
                    (n.to_string(), Outcome::Measure(v), ms)
                })
                .collect()
        }
        Subject::Pipeline(input) => {
            let t = Instant::now();
            let out = run_pipeline(input)?;
            let ms = t.elapsed().as_secs_f64() * 1e3;
            pipeline_outcomes(&out).into_iter().filter(|(n, _)| wanted(n)).map(|(n, o)| (n, o, ms)).collect()
        }
    };
    let mut checks = Vec::new();
    for (name, outcome, ms) in rows {
        if matches!(outcome, Outcome::NotApplicable(_)) && only.is_empty() {
            continue;
        }
        timings.insert(name.clone(), (ms * 1e3).round() / 1e3);
        checks.push(finish(name, outcome, expect));
    }
    for e in expect {
        if wanted(&e.check) && !checks.iter().any(|c| c.name == e.check) {
            checks.push(CheckResult {
                name: e.check.clone(),
                passed: false,
                value: Value::Null,
                expected: Some(e.value.clone()),
                source: Some(e.source.clone()),
                detail: Some("not computed".into()),
                witness: None,
            });
        }
    }
    if let Some(ms) = timings.get_mut("setup") {
        *ms = (*ms * 1e3).round() / 1e3;
    }
    Ok(VerifyReport {
        target: target.to_string(),
        passed: checks.iter().all(|c| c.passed),
        checks,
        timings_ms: timings,
    })
}
