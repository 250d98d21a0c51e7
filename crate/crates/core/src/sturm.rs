//! Sturm chains and exact real-root counting.
//!
//! The chain of a nonzero `p` is `S0 = p`, `S1 = p'`,
//! `S_{i+1} = -rem(S_{i-1}, S_i)`, stopping at the last nonzero remainder.
//! The number of distinct real roots of `p` in `(a, b)` (with non-root
//! endpoints) is `V(a) - V(b)`, where `V` counts sign changes through the
//! chain after omitting zero entries. Each stored term is scaled to a
//! primitive integer polynomial — a positive rescaling, so variation counts
//! are unaffected while coefficient growth stays bounded.
//!
//! Sturm counts *distinct* roots; every caller here only needs "zero roots",
//! so multiplicities never matter.

use crate::error::Error;
use crate::rational::Rational;
use crate::ratpoly::RatPoly;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug)]
pub struct SturmChain {
    terms: Vec<RatPoly>,
}

/// Evaluation point for sign variations.
#[derive(Clone, Debug, PartialEq)]
pub enum ChainPoint {
    MinusInfinity,
    PlusInfinity,
    At(Rational),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignVerdict {
    PositiveOnR,
    NegativeOnR,
    PositiveOnInterval,
    NegativeOnInterval,
    HasRoots,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignDomain {
    AllReals,
    Interval(Rational, Rational),
}

/// Machine-checkable record that a polynomial keeps one sign on its domain.
///
/// For `AllReals` the variation counts are `V(-inf)` / `V(+inf)`; for an
/// interval they are `V(a)` / `V(b)`. The leading coefficient is recorded
/// because its sign covers the point `t = infinity` of the half-angle
/// parametrization.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct PositivityCertificate {
    pub polynomial: RatPoly,
    pub v_minus_inf: usize,
    pub v_plus_inf: usize,
    pub real_root_count: usize,
    pub sample_point: Rational,
    pub sample_value: Rational,
    pub leading_coefficient: Rational,
    pub verdict: SignVerdict,
    pub domain: SignDomain,
}

/// One row of the leading-sign table: `(degree, sign at -inf, sign at +inf)`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SignTableRow(pub usize, pub char, pub char);

impl SturmChain {
    pub fn terms(&self) -> &[RatPoly] {
        &self.terms
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.degree().unwrap_or(0)).collect()
    }
}

pub fn sturm_sequence(p: &RatPoly) -> Result<SturmChain, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let prim = |q: &RatPoly| q.primitive_part().0;
    let mut terms = vec![prim(p)];
    let d = p.derivative();
    if d.is_zero() {
        return Ok(SturmChain { terms });
    }
    terms.push(prim(&d));
    loop {
        let n = terms.len();
        let rem = terms[n - 2].div_rem(&terms[n - 1]).1;
        if rem.is_zero() {
            break;
        }
        terms.push(prim(&-&rem));
    }
    Ok(SturmChain { terms })
}

fn count_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut changes = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn sign_at_infinity(p: &RatPoly, minus: bool) -> i32 {
    match p.degree() {
        None => 0,
        Some(d) => {
            let lead = p.leading().unwrap().signum();
            if minus && d % 2 == 1 {
                -lead
            } else {
                lead
            }
        }
    }
}

/// Sign changes through the chain at the given point, zeros omitted.
pub fn sign_variations(chain: &SturmChain, at: &ChainPoint) -> usize {
    match at {
        ChainPoint::MinusInfinity => {
            count_changes(chain.terms.iter().map(|t| sign_at_infinity(t, true)))
        }
        ChainPoint::PlusInfinity => {
            count_changes(chain.terms.iter().map(|t| sign_at_infinity(t, false)))
        }
        ChainPoint::At(a) => count_changes(chain.terms.iter().map(|t| t.eval(a).signum())),
    }
}

/// Number of distinct real roots of `p`, via `V(-inf) - V(+inf)`.
pub fn count_real_roots(p: &RatPoly) -> Result<usize, Error> {
    let chain = sturm_sequence(p)?;
    let vm = sign_variations(&chain, &ChainPoint::MinusInfinity);
    let vp = sign_variations(&chain, &ChainPoint::PlusInfinity);
    Ok(vm - vp)
}

/// Distinct real roots in the open interval `(a, b)`.
///
/// Errors with [`Error::EndpointIsRoot`] if either endpoint is a root; the
/// caller should shrink or split the interval (or pass the squarefree part).
pub fn count_roots_in_interval(p: &RatPoly, a: &Rational, b: &Rational) -> Result<usize, Error> {
    assert!(a < b, "interval endpoints out of order");
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.eval(a).is_zero() {
        return Err(Error::EndpointIsRoot { at: a.clone() });
    }
    if p.eval(b).is_zero() {
        return Err(Error::EndpointIsRoot { at: b.clone() });
    }
    let chain = sturm_sequence(p)?;
    let va = sign_variations(&chain, &ChainPoint::At(a.clone()));
    let vb = sign_variations(&chain, &ChainPoint::At(b.clone()));
    Ok(va - vb)
}

/// Certifies the sign of `p` on the whole line or on an interval.
///
/// If the root count is zero, the sign at one sample point is the sign
/// everywhere on the domain.
pub fn certify_sign(p: &RatPoly, domain: SignDomain) -> Result<PositivityCertificate, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let chain = sturm_sequence(p)?;
    let (v_minus, v_plus, sample_point) = match &domain {
        SignDomain::AllReals => (
            sign_variations(&chain, &ChainPoint::MinusInfinity),
            sign_variations(&chain, &ChainPoint::PlusInfinity),
            Rational::zero(),
        ),
        SignDomain::Interval(a, b) => {
            assert!(a < b, "interval endpoints out of order");
            if p.eval(a).is_zero() {
                return Err(Error::EndpointIsRoot { at: a.clone() });
            }
            if p.eval(b).is_zero() {
                return Err(Error::EndpointIsRoot { at: b.clone() });
            }
            let mid = &(a + b) * &Rational::new(1, 2);
            (
                sign_variations(&chain, &ChainPoint::At(a.clone())),
                sign_variations(&chain, &ChainPoint::At(b.clone())),
                mid,
            )
        }
    };
    let real_root_count = v_minus - v_plus;
    let sample_value = p.eval(&sample_point);
    let verdict = if real_root_count > 0 || sample_value.is_zero() {
        SignVerdict::HasRoots
    } else {
        match (&domain, sample_value.is_positive()) {
            (SignDomain::AllReals, true) => SignVerdict::PositiveOnR,
            (SignDomain::AllReals, false) => SignVerdict::NegativeOnR,
            (SignDomain::Interval(..), true) => SignVerdict::PositiveOnInterval,
            (SignDomain::Interval(..), false) => SignVerdict::NegativeOnInterval,
        }
    };
    Ok(PositivityCertificate {
        polynomial: p.clone(),
        v_minus_inf: v_minus,
        v_plus_inf: v_plus,
        real_root_count,
        sample_point,
        sample_value,
        leading_coefficient: p.leading().unwrap().clone(),
        verdict,
        domain,
    })
}

/// Leading-sign table of the chain, one row per term in chain order.
pub fn sign_table(chain: &SturmChain) -> Vec<SignTableRow> {
    chain
        .terms
        .iter()
        .map(|t| {
            let sgn = |s: i32| if s >= 0 { '+' } else { '-' };
            SignTableRow(
                t.degree().unwrap_or(0),
                sgn(sign_at_infinity(t, true)),
                sgn(sign_at_infinity(t, false)),
            )
        })
        .collect()
}

pub fn format_sign_table(rows: &[SignTableRow]) -> String {
    let mut out = String::from("  i | deg | -inf | +inf\n");
    for (i, row) in rows.iter().enumerate() {
        out.push_str(&format!("{i:>3} | {:>3} |  {}   |  {}\n", row.0, row.1, row.2));
    }
    out
}

impl fmt::Display for SignVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SignVerdict::PositiveOnR => "positive_on_R",
            SignVerdict::NegativeOnR => "negative_on_R",
            SignVerdict::PositiveOnInterval => "positive_on_interval",
            SignVerdict::NegativeOnInterval => "negative_on_interval",
            SignVerdict::HasRoots => "has_roots",
        };
        write!(f, "{s}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> RatPoly {
        RatPoly::from_integers(coeffs)
    }

    #[test]
    fn chain_of_t2_minus_1() {
        // [t^2 - 1, 2t, 1]: rem(t^2 - 1, 2t) = -1
        let chain = sturm_sequence(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(chain.terms().len(), 3);
        assert_eq!(chain.terms()[1], p(&[0, 1])); // primitive part of 2t
        assert_eq!(chain.terms()[2], p(&[1]));
        assert_eq!(sign_variations(&chain, &ChainPoint::MinusInfinity), 2);
        assert_eq!(sign_variations(&chain, &ChainPoint::PlusInfinity), 0);
    }

    #[test]
    fn chain_of_t2_plus_1() {
        let chain = sturm_sequence(&p(&[1, 0, 1])).unwrap();
        assert_eq!(chain.terms()[2], p(&[-1]));
        assert_eq!(count_real_roots(&p(&[1, 0, 1])).unwrap(), 0);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(matches!(
            sturm_sequence(&RatPoly::zero()),
            Err(Error::ZeroPolynomial)
        ));
        assert!(matches!(
            count_real_roots(&RatPoly::zero()),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn t2_numerator_has_no_roots() {
        // 31 t^4 + 18 t^3 - 2t + 1
        let q = p(&[1, -2, 0, 18, 31]);
        assert_eq!(count_real_roots(&q).unwrap(), 0);
        let cert = certify_sign(&q, SignDomain::AllReals).unwrap();
        assert_eq!(cert.verdict, SignVerdict::PositiveOnR);
        assert_eq!(cert.sample_value, Rational::one());
    }

    #[test]
    fn interval_counting() {
        let q = p(&[-1, 0, 1]); // roots at -1, 1
        assert_eq!(
            count_roots_in_interval(&q, &Rational::zero(), &Rational::from_int(2)).unwrap(),
            1
        );
        let err = count_roots_in_interval(&q, &Rational::from_int(-1), &Rational::zero());
        assert_eq!(
            err,
            Err(Error::EndpointIsRoot {
                at: Rational::from_int(-1)
            })
        );
    }

    #[test]
    fn has_roots_certificate() {
        let cert = certify_sign(&p(&[-1, 0, 1]), SignDomain::AllReals).unwrap();
        assert_eq!(cert.verdict, SignVerdict::HasRoots);
        assert_eq!(cert.real_root_count, 2);
    }

    #[test]
    fn table_of_t2_minus_1() {
        let chain = sturm_sequence(&p(&[-1, 0, 1])).unwrap();
        let rows = sign_table(&chain);
        assert_eq!(
            rows,
            vec![
                SignTableRow(2, '+', '+'),
                SignTableRow(1, '-', '+'),
                SignTableRow(0, '+', '+'),
            ]
        );
    }

    #[test]
    fn multiple_roots_count_once() {
        // (t-1)^2 has one distinct root
        let q = &p(&[-1, 1]) * &p(&[-1, 1]);
        assert_eq!(count_real_roots(&q).unwrap(), 1);
    }

    #[test]
    fn constant_polynomial_chain() {
        let chain = sturm_sequence(&p(&[7])).unwrap();
        assert_eq!(chain.terms().len(), 1);
        assert_eq!(count_real_roots(&p(&[7])).unwrap(), 0);
    }
}
