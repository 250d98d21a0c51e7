//! End-to-end freeness pipeline: derivative family, exact determinant,
//! tangent half-angle reduction, Sturm certificate, verdict.

use crate::ansatz::{derivative_family, osculating_det_with_form, AnsatzSpec, MultiIndex};
use crate::error::Error;
use crate::extended::{
    companion_determinant, extended_reduced_matrix, ExtendedAnsatzSpec, REDUCED_COLUMN_LABELS,
};
use crate::matrix::trig_det;
use crate::rational::Rational;
use crate::sturm::{certify_sign, PositivityCertificate, SignDomain, SignVerdict};
use crate::trigpoly::TrigPoly;
use crate::weierstrass::WeierstrassForm;
use serde::{Deserialize, Serialize};

fn default_schema_version() -> u32 {
    1
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "FREE")]
    Free,
    #[serde(rename = "NOT_FREE")]
    NotFree,
}

/// Machine-checkable freeness certificate.
///
/// The verdict is `FREE` exactly when the Sturm certificate shows the reduced
/// numerator keeps one sign on all of `R` and the exact value at `z = pi`
/// (the point the substitution misses) has that same sign. `positivity` is
/// absent only when the determinant vanishes identically.
///
/// `normalization_constant` records the positive constant relating the
/// minimal numerator stored here to a published display form when the
/// certificate is produced by the reproduction registry; it is 1 otherwise.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FreenessCertificate {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    pub spec_label: String,
    pub determinant: TrigPoly,
    pub weierstrass: WeierstrassForm,
    pub positivity: Option<PositivityCertificate>,
    pub value_at_zero: Rational,
    pub value_at_pi: Rational,
    pub column_ordering: Vec<MultiIndex>,
    pub verdict: Verdict,
    pub normalization_constant: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub companion_determinant: Option<Rational>,
}

fn certificate_from_determinant(
    label: &str,
    det: TrigPoly,
    form: WeierstrassForm,
    ordering: Vec<MultiIndex>,
    companion: Option<Rational>,
) -> Result<FreenessCertificate, Error> {
    let value_at_zero = det.eval_weierstrass(&Rational::zero());
    let value_at_pi = det.eval_at_pi();
    let (positivity, verdict) = if det.is_zero() {
        (None, Verdict::NotFree)
    } else {
        let cert = certify_sign(&form.numerator, SignDomain::AllReals)?;
        let sign_definite = matches!(
            cert.verdict,
            SignVerdict::PositiveOnR | SignVerdict::NegativeOnR
        );
        let pi_agrees = value_at_pi.signum() == cert.sample_value.signum();
        let companion_ok = companion.as_ref().map_or(true, |c| !c.is_zero());
        let verdict = if sign_definite && pi_agrees && companion_ok {
            Verdict::Free
        } else {
            Verdict::NotFree
        };
        (Some(cert), verdict)
    };
    Ok(FreenessCertificate {
        schema_version: 1,
        spec_label: label.to_string(),
        determinant: det,
        weierstrass: form,
        positivity,
        value_at_zero,
        value_at_pi,
        column_ordering: ordering,
        verdict,
        normalization_constant: Rational::one(),
        companion_determinant: companion,
    })
}

/// Runs the full pipeline on a block-rotation spec.
pub fn verify(spec: &AnsatzSpec) -> Result<FreenessCertificate, Error> {
    let family = derivative_family(spec)?;
    let (det, form) = osculating_det_with_form(&family);
    certificate_from_determinant(&spec.label, det, form, family.ordering, None)
}

/// Same pipeline; the spec's `order` field selects the k-free family.
pub fn verify_kfree(spec: &AnsatzSpec) -> Result<FreenessCertificate, Error> {
    verify(spec)
}

/// Verifies an extended two-loop spec through its reduced `u`-determinant.
///
/// `FREE` additionally requires the companion block determinant to be a
/// nonzero constant; the factored exponentials `e^{Q_r}` are positive by
/// construction, so they never affect the verdict.
pub fn verify_extended(spec: &ExtendedAnsatzSpec) -> Result<FreenessCertificate, Error> {
    let reduced = extended_reduced_matrix(spec)?;
    let (det, form) = trig_det(&reduced);
    let companion = companion_determinant(spec)?;
    // record the reduced-column labels as pseudo multi-indices by position
    let ordering = (0..REDUCED_COLUMN_LABELS.len() as u32)
        .map(|i| MultiIndex(vec![i]))
        .collect();
    certificate_from_determinant(&spec.label, det, form, ordering, Some(companion))
}

impl FreenessCertificate {
    /// Re-runs the Sturm computation on the stored numerator and re-evaluates
    /// the stored determinant; `true` when everything matches the stored
    /// fields. Used by tests and by `repro` as a self-check.
    pub fn is_self_consistent(&self) -> bool {
        if self.value_at_zero != self.determinant.eval_weierstrass(&Rational::zero()) {
            return false;
        }
        if self.value_at_pi != self.determinant.eval_at_pi() {
            return false;
        }
        match (&self.positivity, self.determinant.is_zero()) {
            (None, true) => true,
            (None, false) => false,
            (Some(_), true) => false,
            (Some(cert), false) => {
                let fresh = match certify_sign(&self.weierstrass.numerator, SignDomain::AllReals) {
                    Ok(c) => c,
                    Err(_) => return false,
                };
                fresh.v_minus_inf == cert.v_minus_inf
                    && fresh.v_plus_inf == cert.v_plus_inf
                    && fresh.verdict == cert.verdict
                    && self.value_at_zero == self.weierstrass.numerator.coeff(0)
            }
        }
    }
}
