//! Tangent half-angle reduction of trigonometric polynomials.
//!
//! With `t = tan(z/2)` one has `sin z = 2t/(1+t^2)` and
//! `cos z = (1-t^2)/(1+t^2)`, so every trig polynomial of maximal frequency
//! `N` becomes `P(t)/(1+t^2)^N` for a rational polynomial `P`. The conversion
//! here is exact in both directions and the stored form is minimal:
//! `(1+t^2)` does not divide the numerator.

use crate::rational::Rational;
use crate::ratpoly::RatPoly;
use crate::trigpoly::TrigPoly;
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct WeierstrassForm {
    #[serde(rename = "num")]
    pub numerator: RatPoly,
    #[serde(rename = "N")]
    pub denom_power: u32,
}

/// Sign of the value at `z = pi` (`t = infinity`) read off the form.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InfinitySign {
    Positive,
    Negative,
    /// `deg numerator < 2 N`: the limit is zero, consult `eval_at_pi` on the
    /// original trig polynomial instead.
    ZeroLimit,
}

impl WeierstrassForm {
    /// Divides out every `(1+t^2)` factor shared with the denominator.
    fn reduce(mut self) -> Self {
        let d = RatPoly::one_plus_t_squared();
        while self.denom_power > 0 && !self.numerator.is_zero() && d.divides(&self.numerator) {
            self.numerator = self.numerator.div_exact(&d);
            self.denom_power -= 1;
        }
        if self.numerator.is_zero() {
            self.denom_power = 0;
        }
        self
    }

    pub fn eval(&self, t0: &Rational) -> Rational {
        let denom = (&Rational::one() + &(t0 * t0)).pow(self.denom_power);
        &self.numerator.eval(t0) / &denom
    }

    /// Sign of the finite limit at `t = infinity`; zero-limit marker when the
    /// numerator degree falls short of `2 N`.
    pub fn value_at_infinity_sign(&self) -> InfinitySign {
        match self.numerator.degree() {
            Some(d) if d == 2 * self.denom_power as usize => {
                if self.numerator.leading().unwrap().is_positive() {
                    InfinitySign::Positive
                } else {
                    InfinitySign::Negative
                }
            }
            _ => InfinitySign::ZeroLimit,
        }
    }
}

/// Numerator polynomials of `cos kz` and `sin kz` over `(1+t^2)^k`, via
/// `C_k = 2 C_1 C_{k-1} - (1+t^2)^2 C_{k-2}` (same recurrence for `S_k`).
fn angle_numerators(maxk: u32) -> (Vec<RatPoly>, Vec<RatPoly>) {
    let mut cos_num = vec![RatPoly::one()];
    let mut sin_num = vec![RatPoly::zero()];
    if maxk >= 1 {
        cos_num.push(RatPoly::from_integers(&[1, 0, -1]));
        sin_num.push(RatPoly::from_integers(&[0, 2]));
    }
    let d2 = RatPoly::from_integers(&[1, 0, 2, 0, 1]); // (1+t^2)^2
    for k in 2..=maxk as usize {
        let two_c1 = cos_num[1].scale(&Rational::from_int(2));
        cos_num.push(&(&two_c1 * &cos_num[k - 1]) - &(&d2 * &cos_num[k - 2]));
        sin_num.push(&(&two_c1 * &sin_num[k - 1]) - &(&d2 * &sin_num[k - 2]));
    }
    (cos_num, sin_num)
}

/// Converts a trig polynomial to its minimal tangent half-angle form.
pub fn to_weierstrass(a: &TrigPoly) -> WeierstrassForm {
    let n = a.max_frequency();
    let d = RatPoly::one_plus_t_squared();
    let (cos_num, sin_num) = angle_numerators(n);
    // precompute (1+t^2)^j for j <= n
    let mut d_pow = vec![RatPoly::one()];
    for j in 1..=n as usize {
        d_pow.push(&d_pow[j - 1] * &d);
    }
    let mut num = d_pow[n as usize].scale(a.constant_part());
    for (k, v) in a.cos_coeffs() {
        num = &num + &(&cos_num[*k as usize] * &d_pow[(n - k) as usize]).scale(v);
    }
    for (k, v) in a.sin_coeffs() {
        num = &num + &(&sin_num[*k as usize] * &d_pow[(n - k) as usize]).scale(v);
    }
    WeierstrassForm {
        numerator: num,
        denom_power: n,
    }
    .reduce()
}

/// Inverse conversion: reads `P(t)/(1+t^2)^N` back as a trig polynomial.
///
/// Requires `deg P <= 2N` (always true for forms produced by this module).
/// Each monomial `t^j/(1+t^2)^N` equals `sin^j(z/2) cos^{2N-j}(z/2)`, which
/// expands in the half-angle ring into frequencies of one parity; summing
/// leaves only integer frequencies of `z`.
pub fn from_weierstrass(form: &WeierstrassForm) -> TrigPoly {
    let n = form.denom_power as usize;
    if let Some(d) = form.numerator.degree() {
        assert!(d <= 2 * n, "numerator degree exceeds twice the denominator power");
    } else {
        return TrigPoly::zero();
    }
    // work in the half-angle variable w = z/2
    let sin_w = TrigPoly::sin_term(1, Rational::one());
    let cos_w = TrigPoly::cos_term(1, Rational::one());
    let mut sin_pow = vec![TrigPoly::one()];
    let mut cos_pow = vec![TrigPoly::one()];
    for j in 1..=2 * n {
        sin_pow.push(&sin_pow[j - 1] * &sin_w);
        cos_pow.push(&cos_pow[j - 1] * &cos_w);
    }
    let mut acc = TrigPoly::zero();
    for (j, coeff) in form.numerator.coeffs().iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        acc = &acc + &(&sin_pow[j] * &cos_pow[2 * n - j]).scale(coeff);
    }
    // map frequency 2k in w to frequency k in z; odd frequencies must cancel
    let mut out = TrigPoly::constant(acc.constant_part().clone());
    for (k, v) in acc.cos_coeffs() {
        assert!(k % 2 == 0, "odd half-angle frequency survived");
        out = &out + &TrigPoly::cos_term(k / 2, v.clone());
    }
    for (k, v) in acc.sin_coeffs() {
        assert!(k % 2 == 0, "odd half-angle frequency survived");
        out = &out + &TrigPoly::sin_term(k / 2, v.clone());
    }
    out
}
