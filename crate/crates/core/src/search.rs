//! Deterministic numeric search for loop candidates, with exact
//! certification handoff.
//!
//! The harness never trusts floating point: it scans determinant values on a
//! grid to score candidates (random restarts plus coordinate-wise hill
//! climbing over rational coefficients with bounded denominators) and hands
//! anything promising to the exact pipeline. A candidate is `certified` only
//! when the exact verdict is FREE.

use crate::ansatz::{derivative_family, AnsatzSpec};
use crate::error::Error;
use crate::rational::Rational;
use crate::trigpoly::TrigPoly;
use crate::verify::{verify, FreenessCertificate, Verdict};
use serde::{Deserialize, Serialize};

/// SplitMix64: 64-bit state, same stream for the same seed on every
/// platform. Small enough to pin here rather than depend on a generator
/// crate whose stream might change.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw below `n` (modulo; determinism is the contract here).
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    pub fn pick_i64(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// Which coefficient of a loop component is free.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermRef {
    Const,
    Cos(u32),
    Sin(u32),
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct FreeCoeff {
    pub component: usize,
    pub term: TermRef,
}

fn default_denom_bound() -> u64 {
    1000
}

fn default_restart_period() -> usize {
    25
}

fn default_threshold() -> f64 {
    1e-6
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// Maximize the minimal `|D|` over the grid.
    MinAbs,
    /// Maximize the minimum of `s * D` where `s` is the majority sign —
    /// rewards determinants bounded away from zero with uniform sign.
    SignMargin,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchConfig {
    #[serde(default = "crate::search::schema_one")]
    pub schema_version: u32,
    pub template: AnsatzSpec,
    pub free: Vec<FreeCoeff>,
    /// Inclusive rational box for every free coefficient.
    pub bounds: (Rational, Rational),
    /// Candidates take values `n / denom_bound`; keeps every candidate
    /// exactly certifiable.
    #[serde(default = "default_denom_bound")]
    pub denom_bound: u64,
    pub grid_size: usize,
    pub max_iters: usize,
    #[serde(default = "default_restart_period")]
    pub restart_period: usize,
    pub seed: u64,
    pub objective: Objective,
    /// Float score above which a candidate is handed to exact verification.
    #[serde(default = "default_threshold")]
    pub certify_threshold: f64,
}

pub(crate) fn schema_one() -> u32 {
    1
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), Error> {
        let mut errs = Vec::new();
        if let Err(e) = self.template.validate() {
            errs.push(e.to_string());
        }
        let nyquist = 4 * self.template_max_frequency() as usize + 1;
        if self.grid_size < nyquist.max(2) {
            errs.push(format!(
                "grid_size {} < 4 * max_frequency + 1 = {nyquist}",
                self.grid_size
            ));
        }
        if self.bounds.0 > self.bounds.1 {
            errs.push("bounds box is empty".into());
        }
        if self.denom_bound == 0 {
            errs.push("denom_bound must be positive".into());
        }
        for fc in &self.free {
            if fc.component >= self.template.loop_vector.len() {
                errs.push(format!("free coefficient component {} out of range", fc.component));
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(errs))
        }
    }

    fn template_max_frequency(&self) -> u32 {
        let loop_max = self
            .template
            .loop_vector
            .iter()
            .map(TrigPoly::max_frequency)
            .max()
            .unwrap_or(0);
        let free_max = self
            .free
            .iter()
            .map(|f| match f.term {
                TermRef::Const => 0,
                TermRef::Cos(k) | TermRef::Sin(k) => k,
            })
            .max()
            .unwrap_or(0);
        loop_max.max(free_max)
    }
}

/// One search result; `certified` is present only when the exact pipeline
/// returned FREE for these exact rational coefficients.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Candidate {
    pub iteration: usize,
    pub coeffs: Vec<(FreeCoeff, Rational)>,
    pub float_score: f64,
    pub certified: Option<FreenessCertificate>,
}

/// Splices an assignment of the free coefficients into the template loop.
pub fn apply_assignment(template: &AnsatzSpec, assignment: &[(FreeCoeff, Rational)]) -> AnsatzSpec {
    let mut spec = template.clone();
    for (fc, value) in assignment {
        let comp = &spec.loop_vector[fc.component];
        let updated = match fc.term {
            TermRef::Const => {
                let delta = value - comp.constant_part();
                comp + &TrigPoly::constant(delta)
            }
            TermRef::Cos(k) => {
                let current = comp
                    .cos_coeffs()
                    .get(&k)
                    .cloned()
                    .unwrap_or_else(Rational::zero);
                comp + &TrigPoly::cos_term(k, value - &current)
            }
            TermRef::Sin(k) => {
                let current = comp
                    .sin_coeffs()
                    .get(&k)
                    .cloned()
                    .unwrap_or_else(Rational::zero);
                comp + &TrigPoly::sin_term(k, value - &current)
            }
        };
        spec.loop_vector[fc.component] = updated;
    }
    spec
}

/// LU determinant with partial pivoting; the float path of the scanner.
fn lu_det(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for col in 0..n {
        let (pivot, pmax) = (col..n)
            .map(|r| (r, m[r][col].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if pmax == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                m[r][c] -= f * m[col][c];
            }
        }
    }
    det
}

/// Determinant values of the R-stripped family at `n` equispaced loop points.
pub fn scan_determinant_values(spec: &AnsatzSpec, n: usize) -> Result<Vec<f64>, Error> {
    assert!(n >= 2, "need at least two grid points");
    let fam = derivative_family(spec)?;
    let dim = fam.dimension;
    // float snapshot of each column entry as (const, cos terms, sin terms)
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let z = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
        let m: Vec<Vec<f64>> = (0..dim)
            .map(|row| fam.columns.iter().map(|c| c[row].eval_f64(z)).collect())
            .collect();
        values.push(lu_det(m));
    }
    Ok(values)
}

/// Minimum of `|D|` over `n` equispaced loop points (float path, never used
/// for verdicts).
pub fn scan_determinant(spec: &AnsatzSpec, n: usize) -> Result<f64, Error> {
    Ok(scan_determinant_values(spec, n)?
        .into_iter()
        .map(f64::abs)
        .fold(f64::INFINITY, f64::min))
}

fn score(values: &[f64], objective: Objective) -> f64 {
    match objective {
        Objective::MinAbs => values.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min),
        Objective::SignMargin => {
            let positives = values.iter().filter(|v| **v > 0.0).count();
            let s = if 2 * positives >= values.len() { 1.0 } else { -1.0 };
            values.iter().map(|v| s * v).fold(f64::INFINITY, f64::min)
        }
    }
}

/// Deterministic random-restart hill climbing over the free coefficients.
///
/// Returns every restart's best candidate (certified when the float score
/// clears the threshold and exact verification succeeds), ordered by the
/// iteration at which it was recorded.
pub fn search(config: &SearchConfig) -> Result<Vec<Candidate>, Error> {
    config.validate()?;
    let denom = config.denom_bound as i64;
    let lo_int = {
        let scaled = &config.bounds.0 * &Rational::from_int(denom);
        // ceil to the representable grid
        let num = scaled.numer().clone();
        let den = scaled.denom().clone();
        num_integer::Integer::div_ceil(&num, &den)
    };
    let hi_int = {
        let scaled = &config.bounds.1 * &Rational::from_int(denom);
        let num = scaled.numer().clone();
        let den = scaled.denom().clone();
        num_integer::Integer::div_floor(&num, &den)
    };
    use num_traits::ToPrimitive;
    let lo = lo_int.to_i64().ok_or_else(|| {
        Error::Validation(vec!["bounds too large for the search grid".into()])
    })?;
    let hi = hi_int.to_i64().ok_or_else(|| {
        Error::Validation(vec!["bounds too large for the search grid".into()])
    })?;
    if lo > hi {
        return Err(Error::Validation(vec![
            "no representable coefficient in bounds".into(),
        ]));
    }

    let nfree = config.free.len();
    let mut rng = SplitMix64::new(config.seed);
    let value_of = |ints: &[i64]| -> Vec<(FreeCoeff, Rational)> {
        config
            .free
            .iter()
            .cloned()
            .zip(ints.iter().map(|&n| Rational::new(n, denom)))
            .collect()
    };
    let evaluate = |ints: &[i64]| -> Result<f64, Error> {
        let spec = apply_assignment(&config.template, &value_of(ints));
        let values = scan_determinant_values(&spec, config.grid_size)?;
        Ok(score(&values, config.objective))
    };

    // start from the template's own coefficient values, clamped to the grid
    let start: Vec<i64> = config
        .free
        .iter()
        .map(|fc| {
            let comp = &config.template.loop_vector[fc.component];
            let current = match &fc.term {
                TermRef::Const => comp.constant_part().clone(),
                TermRef::Cos(k) => comp
                    .cos_coeffs()
                    .get(k)
                    .cloned()
                    .unwrap_or_else(Rational::zero),
                TermRef::Sin(k) => comp
                    .sin_coeffs()
                    .get(k)
                    .cloned()
                    .unwrap_or_else(Rational::zero),
            };
            let scaled = &current * &Rational::from_int(denom);
            let rounded = scaled.to_f64().round() as i64;
            rounded.clamp(lo, hi)
        })
        .collect();

    let mut candidates: Vec<Candidate> = Vec::new();
    let record = |iteration: usize, ints: &[i64], sc: f64, out: &mut Vec<Candidate>| {
        let coeffs = value_of(ints);
        let certified = if sc > config.certify_threshold {
            let spec = apply_assignment(&config.template, &coeffs);
            match verify(&spec) {
                Ok(cert) if cert.verdict == Verdict::Free => Some(cert),
                _ => None,
            }
        } else {
            None
        };
        out.push(Candidate {
            iteration,
            coeffs,
            float_score: sc,
            certified,
        });
    };

    if nfree == 0 || config.max_iters == 0 {
        // degenerate search: score the template itself and stop
        let sc = evaluate(&start)?;
        record(0, &start, sc, &mut candidates);
        return Ok(candidates);
    }

    let mut current = start.clone();
    let mut current_score = evaluate(&current)?;
    let mut best = current.clone();
    let mut best_score = current_score;
    let span = (hi - lo).max(1);
    let max_step = (span / 16).max(1);
    for iteration in 1..=config.max_iters {
        // coordinate-wise proposal
        let coord = rng.below(nfree as u64) as usize;
        let step = rng.pick_i64(1, max_step) * if rng.below(2) == 0 { 1 } else { -1 };
        let mut proposal = current.clone();
        proposal[coord] = (proposal[coord] + step).clamp(lo, hi);
        let sc = evaluate(&proposal)?;
        if sc > current_score {
            current = proposal;
            current_score = sc;
            if sc > best_score {
                best = current.clone();
                best_score = sc;
            }
        }
        let restarting = iteration % config.restart_period == 0;
        if restarting || iteration == config.max_iters {
            record(iteration, &best, best_score, &mut candidates);
            if restarting && iteration != config.max_iters {
                current = (0..nfree).map(|_| rng.pick_i64(lo, hi)).collect();
                current_score = evaluate(&current)?;
                best = current.clone();
                best_score = current_score;
            }
        }
    }
    Ok(candidates)
}

/// Searches only the loop components after a frozen prefix.
///
/// The prefix overwrites the leading template components exactly; free
/// coefficients touching prefix components are dropped. A full-length prefix
/// degenerates to scoring (and certifying) the prefixed template itself.
pub fn complete_loop(
    prefix: &[TrigPoly],
    config: &SearchConfig,
) -> Result<Vec<Candidate>, Error> {
    let target = config.template.loop_vector.len();
    if prefix.len() > target {
        return Err(Error::DimensionMismatch {
            what: "loop prefix",
            expected: target,
            found: prefix.len(),
        });
    }
    let mut restricted = config.clone();
    for (i, p) in prefix.iter().enumerate() {
        restricted.template.loop_vector[i] = p.clone();
    }
    restricted.free.retain(|fc| fc.component >= prefix.len());
    if restricted.free.is_empty() {
        restricted.max_iters = 0;
    }
    search(&restricted)
}
