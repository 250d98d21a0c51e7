//! Bundled reference cases and the reproduction harness.
//!
//! Every named construction ships as a JSON fixture (also available under
//! `fixtures/` for diffing) together with an expected-values file holding the
//! published polynomial coefficients, variation counts, special values and
//! sign tables. `repro` runs each case through the exact pipeline and
//! compares every number.

use crate::ansatz::AnsatzSpec;
use crate::collar::{standard_models, verify_collar, CollarProfile, CollarVerdict};
use crate::error::Error;
use crate::extended::ExtendedAnsatzSpec;
use crate::rational::Rational;
use crate::ratpoly::RatPoly;
use crate::sturm::{sign_table, sturm_sequence, SignTableRow};
use crate::trigpoly::TrigPoly;
use crate::verify::{verify, verify_extended, FreenessCertificate, Verdict};
use serde::{Deserialize, Serialize};
use std::time::Instant;

pub const CASES: [&str; 9] = [
    "circle",
    "t2",
    "t3",
    "t4",
    "t5",
    "t4-extended",
    "kfree3",
    "kfree6",
    "collar",
];

macro_rules! fixture {
    ($name:literal) => {
        include_str!(concat!("../../../fixtures/", $name))
    };
}

pub fn fixture_json(case: &str) -> Option<&'static str> {
    Some(match case {
        "circle" => fixture!("circle.json"),
        "t2" => fixture!("t2.json"),
        "t3" => fixture!("t3.json"),
        "t4" => fixture!("t4.json"),
        "t5" => fixture!("t5.json"),
        "t4-extended" => fixture!("t4_extended.json"),
        "kfree3" => fixture!("kfree3.json"),
        "kfree6" => fixture!("kfree6.json"),
        "collar" => fixture!("collar.json"),
        _ => return None,
    })
}

fn expected_json(case: &str) -> Option<&'static str> {
    Some(match case {
        "circle" => fixture!("expected/circle.json"),
        "t2" => fixture!("expected/t2.json"),
        "t3" => fixture!("expected/t3.json"),
        "t4" => fixture!("expected/t4.json"),
        "t5" => fixture!("expected/t5.json"),
        "t4-extended" => fixture!("expected/t4_extended.json"),
        "kfree3" => fixture!("expected/kfree3.json"),
        "kfree6" => fixture!("expected/kfree6.json"),
        "collar" => fixture!("expected/collar.json"),
        _ => return None,
    })
}

/// Parses the stored `AnsatzSpec` fixture for one of the loop cases.
pub fn fixture_spec(case: &str) -> Result<AnsatzSpec, Error> {
    let json = fixture_json(case)
        .ok_or_else(|| Error::Validation(vec![format!("unknown case {case}")]))?;
    serde_json::from_str(json).map_err(|e| Error::Validation(vec![e.to_string()]))
}

pub fn fixture_extended() -> Result<ExtendedAnsatzSpec, Error> {
    serde_json::from_str(fixture!("t4_extended.json"))
        .map_err(|e| Error::Validation(vec![e.to_string()]))
}

pub fn fixture_collar() -> Result<CollarProfile, Error> {
    serde_json::from_str(fixture!("collar.json"))
        .map_err(|e| Error::Validation(vec![e.to_string()]))
}

#[derive(Clone, Debug, Deserialize)]
struct FreenessExpected {
    published_numerator: RatPoly,
    display_constant: Rational,
    denom_power: u32,
    v_minus: usize,
    v_plus: usize,
    value_at_zero: Rational,
    value_at_pi: Rational,
    verdict: String,
    #[serde(default)]
    determinant: Option<TrigPoly>,
    #[serde(default)]
    sign_table: Option<Vec<SignTableRow>>,
    #[serde(default)]
    companion_determinant: Option<Rational>,
}

#[derive(Clone, Debug, Deserialize)]
struct CollarExpected {
    k_published: RatPoly,
    k_scale: Rational,
    jets_u0: std::collections::BTreeMap<String, Vec<Rational>>,
    jets_u1: std::collections::BTreeMap<String, Vec<Rational>>,
    cylinder_det: Rational,
    p_tilde_det: Rational,
    verdict: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    fn compare<T: PartialEq + std::fmt::Display>(label: &str, expected: T, actual: T) -> Check {
        Check {
            label: label.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass: expected == actual,
        }
    }

    fn boolean(label: &str, pass: bool) -> Check {
        Check {
            label: label.to_string(),
            expected: "true".into(),
            actual: pass.to_string(),
            pass,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub name: String,
    pub pass: bool,
    pub millis: u128,
    pub checks: Vec<Check>,
    /// The certificate produced for the case, as generic JSON.
    pub artifact: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproReport {
    pub cases: Vec<CaseReport>,
    pub all_pass: bool,
}

fn freeness_checks(cert: &mut FreenessCertificate, exp: &FreenessExpected) -> Vec<Check> {
    let mut checks = Vec::new();
    let scaled = exp.published_numerator.scale(&exp.display_constant);
    cert.normalization_constant = exp.display_constant.clone();
    checks.push(Check::boolean(
        &format!(
            "minimal numerator = {} * published ({} coefficients)",
            exp.display_constant,
            exp.published_numerator.coeffs().len()
        ),
        cert.weierstrass.numerator == scaled,
    ));
    checks.push(Check::compare(
        "denominator power",
        exp.denom_power,
        cert.weierstrass.denom_power,
    ));
    checks.push(Check::compare(
        "D(0)",
        exp.value_at_zero.clone(),
        cert.value_at_zero.clone(),
    ));
    checks.push(Check::compare(
        "D(pi)",
        exp.value_at_pi.clone(),
        cert.value_at_pi.clone(),
    ));
    let (vm, vp) = cert
        .positivity
        .as_ref()
        .map(|p| (p.v_minus_inf, p.v_plus_inf))
        .unwrap_or((usize::MAX, usize::MAX));
    checks.push(Check::compare("V(-inf)", exp.v_minus, vm));
    checks.push(Check::compare("V(+inf)", exp.v_plus, vp));
    let verdict = match cert.verdict {
        Verdict::Free => "FREE",
        Verdict::NotFree => "NOT_FREE",
    };
    checks.push(Check::compare("verdict", exp.verdict.as_str(), verdict));
    if let Some(det) = &exp.determinant {
        checks.push(Check::boolean(
            "determinant equals published display",
            &cert.determinant == det,
        ));
    }
    if let Some(table) = &exp.sign_table {
        let chain = sturm_sequence(&cert.weierstrass.numerator).expect("nonzero numerator");
        let actual = sign_table(&chain);
        checks.push(Check::compare(
            "sign table rows",
            table.len(),
            actual.len(),
        ));
        checks.push(Check::boolean("sign table identical", &actual == table));
    }
    if let Some(comp) = &exp.companion_determinant {
        let actual = cert
            .companion_determinant
            .clone()
            .unwrap_or_else(Rational::zero);
        checks.push(Check::compare("companion det", comp.clone(), actual));
    }
    checks.push(Check::boolean(
        "certificate self-consistency",
        cert.is_self_consistent(),
    ));
    checks
}

fn collar_checks(exp: &CollarExpected) -> Result<(Vec<Check>, serde_json::Value), Error> {
    let profile = fixture_collar()?;
    let cert = verify_collar(&profile)?;
    let mut checks = Vec::new();
    checks.push(Check::boolean(
        &format!(
            "K matches published ({} coefficients)",
            exp.k_published.coeffs().len()
        ),
        cert.k == exp.k_published,
    ));
    checks.push(Check::compare(
        "K scale (K = scale * -H)",
        exp.k_scale.clone(),
        cert.k_scale.clone(),
    ));
    checks.push(Check::boolean("jets at u=0", cert.jet0_ok));
    checks.push(Check::boolean("jets at u=1", cert.jet1_ok));
    // all 18 published endpoint jet values
    let mut jets_ok = true;
    for entry in &cert.jet_table {
        let source = if entry.endpoint == 0 {
            &exp.jets_u0
        } else {
            &exp.jets_u1
        };
        let want = &source[&entry.component.to_string()][entry.derivative as usize];
        jets_ok &= &entry.actual == want && entry.matches;
    }
    checks.push(Check::boolean("18 endpoint jet values", jets_ok));
    checks.push(Check::compare(
        "a positive on [0,1]",
        "positive_on_interval".to_string(),
        cert.a_positive_on_01.verdict.to_string(),
    ));
    checks.push(Check::compare(
        "K positive on [0,1]",
        "positive_on_interval".to_string(),
        cert.k_positive_on_01.verdict.to_string(),
    ));
    let models = standard_models();
    checks.push(Check::compare(
        "det DC",
        exp.cylinder_det.clone(),
        models.cylinder_det.clone(),
    ));
    checks.push(Check::compare(
        "det of P~ osculating matrix",
        exp.p_tilde_det.clone(),
        models.p_tilde_det.clone(),
    ));
    let verdict = match cert.verdict {
        CollarVerdict::FreeOnCollar => "FREE_ON_COLLAR",
        CollarVerdict::Fails => "FAILS",
    };
    checks.push(Check::compare("verdict", exp.verdict.as_str(), verdict));
    let artifact = serde_json::json!({
        "certificate": cert,
        "standard_models": models,
    });
    Ok((checks, artifact))
}

/// Runs one named case and compares every published number.
pub fn repro_case(name: &str) -> Result<CaseReport, Error> {
    let start = Instant::now();
    let (checks, artifact) = match name {
        "collar" => {
            let exp: CollarExpected = serde_json::from_str(expected_json(name).unwrap())
                .map_err(|e| Error::Validation(vec![e.to_string()]))?;
            collar_checks(&exp)?
        }
        "t4-extended" => {
            let exp: FreenessExpected = serde_json::from_str(expected_json(name).unwrap())
                .map_err(|e| Error::Validation(vec![e.to_string()]))?;
            let spec = fixture_extended()?;
            let mut cert = verify_extended(&spec)?;
            let checks = freeness_checks(&mut cert, &exp);
            (checks, serde_json::to_value(&cert).unwrap())
        }
        _ => {
            let exp_json = expected_json(name)
                .ok_or_else(|| Error::Validation(vec![format!("unknown case {name}")]))?;
            let exp: FreenessExpected = serde_json::from_str(exp_json)
                .map_err(|e| Error::Validation(vec![e.to_string()]))?;
            let spec = fixture_spec(name)?;
            let mut cert = verify(&spec)?;
            let checks = freeness_checks(&mut cert, &exp);
            (checks, serde_json::to_value(&cert).unwrap())
        }
    };
    let pass = checks.iter().all(|c| c.pass);
    Ok(CaseReport {
        name: name.to_string(),
        pass,
        millis: start.elapsed().as_millis(),
        checks,
        artifact,
    })
}

/// Runs the whole registry.
pub fn repro_paper() -> ReproReport {
    let mut cases = Vec::new();
    for name in CASES {
        match repro_case(name) {
            Ok(report) => cases.push(report),
            Err(e) => cases.push(CaseReport {
                name: name.to_string(),
                pass: false,
                millis: 0,
                checks: vec![Check {
                    label: "pipeline error".into(),
                    expected: "ok".into(),
                    actual: e.to_string(),
                    pass: false,
                }],
                artifact: serde_json::Value::Null,
            }),
        }
    }
    let all_pass = cases.iter().all(|c| c.pass);
    ReproReport { cases, all_pass }
}

/// Plain-text summary: one block per case, one line per check.
pub fn format_report(report: &ReproReport) -> String {
    let mut out = String::new();
    for case in &report.cases {
        out.push_str(&format!(
            "case {:<12} {} ({} checks, {} ms)\n",
            case.name,
            if case.pass { "PASS" } else { "FAIL" },
            case.checks.len(),
            case.millis
        ));
        for check in &case.checks {
            if check.pass {
                out.push_str(&format!("    {} = {}\n", check.label, check.actual));
            } else {
                out.push_str(&format!(
                    "    {} = {} [expected {}] FAIL\n",
                    check.label, check.actual, check.expected
                ));
            }
        }
    }
    out.push_str(if report.all_pass {
        "all cases PASS\n"
    } else {
        "FAILURES present\n"
    });
    out
}
