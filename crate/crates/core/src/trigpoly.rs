//! The trigonometric-polynomial ring with rational coefficients.
//!
//! A `TrigPoly` is a finite Fourier series
//! `a0 + sum_k (a_k cos kz + b_k sin kz)` stored sparsely in the real
//! cos/sin basis. Zero coefficients are never stored, so equality is
//! representation equality. Products are expanded exactly with the
//! product-to-sum identities; evaluation at rational tangent half-angle
//! points uses the multiple-angle recurrences, so every value is an exact
//! rational.

use crate::rational::Rational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TrigPoly {
    #[serde(rename = "const")]
    constant: Rational,
    cos: BTreeMap<u32, Rational>,
    sin: BTreeMap<u32, Rational>,
}

impl TrigPoly {
    pub fn zero() -> Self {
        TrigPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        TrigPoly {
            constant: c,
            ..Default::default()
        }
    }

    pub fn one() -> Self {
        TrigPoly::constant(Rational::one())
    }

    /// `coeff * cos(freq z)`; `freq = 0` folds into the constant.
    pub fn cos_term(freq: u32, coeff: Rational) -> Self {
        let mut p = TrigPoly::zero();
        p.add_cos(freq, coeff);
        p
    }

    /// `coeff * sin(freq z)`; `sin 0` vanishes.
    pub fn sin_term(freq: u32, coeff: Rational) -> Self {
        let mut p = TrigPoly::zero();
        p.add_sin(freq as i64, coeff);
        p
    }

    fn add_cos(&mut self, freq: u32, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        if freq == 0 {
            self.constant += &coeff;
            return;
        }
        let entry = self.cos.entry(freq).or_insert_with(Rational::zero);
        *entry += &coeff;
        if entry.is_zero() {
            self.cos.remove(&freq);
        }
    }

    /// `sin(-k z) = -sin(k z)`, so negative frequencies flip the sign.
    fn add_sin(&mut self, freq: i64, coeff: Rational) {
        if coeff.is_zero() || freq == 0 {
            return;
        }
        let (freq, coeff) = if freq < 0 {
            ((-freq) as u32, -coeff)
        } else {
            (freq as u32, coeff)
        };
        let entry = self.sin.entry(freq).or_insert_with(Rational::zero);
        *entry += &coeff;
        if entry.is_zero() {
            self.sin.remove(&freq);
        }
    }

    pub fn constant_part(&self) -> &Rational {
        &self.constant
    }

    pub fn cos_coeffs(&self) -> &BTreeMap<u32, Rational> {
        &self.cos
    }

    pub fn sin_coeffs(&self) -> &BTreeMap<u32, Rational> {
        &self.sin
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.cos.is_empty() && self.sin.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.cos.is_empty() && self.sin.is_empty()
    }

    /// Largest frequency present (0 for constants).
    pub fn max_frequency(&self) -> u32 {
        let c = self.cos.keys().next_back().copied().unwrap_or(0);
        let s = self.sin.keys().next_back().copied().unwrap_or(0);
        c.max(s)
    }

    pub fn scale(&self, s: &Rational) -> TrigPoly {
        if s.is_zero() {
            return TrigPoly::zero();
        }
        TrigPoly {
            constant: &self.constant * s,
            cos: self.cos.iter().map(|(k, v)| (*k, v * s)).collect(),
            sin: self.sin.iter().map(|(k, v)| (*k, v * s)).collect(),
        }
    }

    /// Termwise `d/dz`: `cos kz -> -k sin kz`, `sin kz -> k cos kz`.
    pub fn derivative(&self) -> TrigPoly {
        let mut out = TrigPoly::zero();
        for (k, v) in &self.cos {
            out.add_sin(*k as i64, v * &Rational::from_int(-(*k as i64)));
        }
        for (k, v) in &self.sin {
            out.add_cos(*k, v * &Rational::from_int(*k as i64));
        }
        out
    }

    /// Exact value at the angle `z` with `tan(z/2) = t0`.
    ///
    /// `sin z = 2 t0 / (1 + t0^2)`, `cos z = (1 - t0^2) / (1 + t0^2)`; the
    /// higher frequencies follow from
    /// `cos kz = 2 cos z cos (k-1)z - cos (k-2)z` (likewise for sin).
    pub fn eval_weierstrass(&self, t0: &Rational) -> Rational {
        let t2 = t0 * t0;
        let denom = &Rational::one() + &t2;
        let c1 = &(&Rational::one() - &t2) / &denom;
        let s1 = &(&Rational::from_int(2) * t0) / &denom;
        let maxk = self.max_frequency() as usize;
        let mut cos_k = Vec::with_capacity(maxk + 1);
        let mut sin_k = Vec::with_capacity(maxk + 1);
        cos_k.push(Rational::one());
        sin_k.push(Rational::zero());
        if maxk >= 1 {
            cos_k.push(c1.clone());
            sin_k.push(s1.clone());
        }
        for k in 2..=maxk {
            let two_c1 = &Rational::from_int(2) * &c1;
            cos_k.push(&(&two_c1 * &cos_k[k - 1]) - &cos_k[k - 2]);
            sin_k.push(&(&two_c1 * &sin_k[k - 1]) - &sin_k[k - 2]);
        }
        let mut acc = self.constant.clone();
        for (k, v) in &self.cos {
            acc += &(v * &cos_k[*k as usize]);
        }
        for (k, v) in &self.sin {
            acc += &(v * &sin_k[*k as usize]);
        }
        acc
    }

    /// Exact value at `z = pi`: `cos k pi = (-1)^k`, `sin k pi = 0`.
    pub fn eval_at_pi(&self) -> Rational {
        let mut acc = self.constant.clone();
        for (k, v) in &self.cos {
            if k % 2 == 0 {
                acc += v;
            } else {
                acc -= v;
            }
        }
        acc
    }

    /// Floating-point evaluation; used only by the search harness and smoke
    /// tests, never for verdicts.
    pub fn eval_f64(&self, z: f64) -> f64 {
        let mut acc = self.constant.to_f64();
        for (k, v) in &self.cos {
            acc += v.to_f64() * (*k as f64 * z).cos();
        }
        for (k, v) in &self.sin {
            acc += v.to_f64() * (*k as f64 * z).sin();
        }
        acc
    }
}

impl Add for &TrigPoly {
    type Output = TrigPoly;
    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        let mut out = self.clone();
        out.constant += &rhs.constant;
        for (k, v) in &rhs.cos {
            out.add_cos(*k, v.clone());
        }
        for (k, v) in &rhs.sin {
            out.add_sin(*k as i64, v.clone());
        }
        out
    }
}

impl Sub for &TrigPoly {
    type Output = TrigPoly;
    fn sub(self, rhs: &TrigPoly) -> TrigPoly {
        self + &-rhs
    }
}

impl Neg for &TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        self.scale(&Rational::from_int(-1))
    }
}

impl Mul for &TrigPoly {
    type Output = TrigPoly;

    /// Exact product via the product-to-sum identities:
    /// `cos a cos b = (cos(a-b) + cos(a+b))/2`,
    /// `sin a sin b = (cos(a-b) - cos(a+b))/2`,
    /// `sin a cos b = (sin(a+b) + sin(a-b))/2`.
    fn mul(self, rhs: &TrigPoly) -> TrigPoly {
        enum Kind {
            Cos,
            Sin,
        }
        let terms = |p: &TrigPoly| -> Vec<(u32, Kind, Rational)> {
            let mut v = Vec::with_capacity(1 + p.cos.len() + p.sin.len());
            if !p.constant.is_zero() {
                v.push((0, Kind::Cos, p.constant.clone()));
            }
            v.extend(p.cos.iter().map(|(k, c)| (*k, Kind::Cos, c.clone())));
            v.extend(p.sin.iter().map(|(k, c)| (*k, Kind::Sin, c.clone())));
            v
        };
        let half = Rational::new(1, 2);
        let mut out = TrigPoly::zero();
        for (k1, kind1, v1) in terms(self) {
            for (k2, kind2, v2) in terms(rhs) {
                let h = &(&v1 * &v2) * &half;
                let (hi, lo) = (k1 + k2, k1 as i64 - k2 as i64);
                match (&kind1, &kind2) {
                    (Kind::Cos, Kind::Cos) => {
                        out.add_cos(lo.unsigned_abs() as u32, h.clone());
                        out.add_cos(hi, h);
                    }
                    (Kind::Sin, Kind::Sin) => {
                        out.add_cos(lo.unsigned_abs() as u32, h.clone());
                        out.add_cos(hi, -h);
                    }
                    (Kind::Cos, Kind::Sin) => {
                        out.add_sin(hi as i64, h.clone());
                        out.add_sin(-lo, h);
                    }
                    (Kind::Sin, Kind::Cos) => {
                        out.add_sin(hi as i64, h.clone());
                        out.add_sin(lo, h);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            Ok(())
        };
        if !self.constant.is_zero() {
            sep(f)?;
            write!(f, "{}", self.constant)?;
        }
        for (k, v) in &self.cos {
            sep(f)?;
            write!(f, "{v} cos {k}z")?;
        }
        for (k, v) in &self.sin {
            sep(f)?;
            write!(f, "{v} sin {k}z")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
