//! Exact determinants.
//!
//! Three routes live here:
//!
//! * [`trig_det`] — the production path for matrices of trig polynomials:
//!   convert every entry to its tangent half-angle form, multiply each row by
//!   `(1+t^2)^(row max power)` to clear denominators, run fraction-free
//!   Bareiss elimination over rational polynomials, then divide the
//!   accumulated `(1+t^2)` power back out and return to the trig ring.
//! * [`cofactor_det`] — Laplace expansion over any commutative ring; the
//!   independent oracle the property tests compare against, and the route
//!   used for the small bivariate standard-model determinants.
//! * [`rational_det`] / [`rational_rank`] — plain Gaussian elimination over
//!   the rationals for pointwise checks and the obstruction rank.

use crate::rational::Rational;
use crate::ratpoly::RatPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use crate::trigpoly::TrigPoly;
use crate::weierstrass::{from_weierstrass, to_weierstrass, WeierstrassForm};

/// Minimal commutative-ring interface for the generic cofactor determinant.
pub trait Ring: Clone {
    fn ring_zero() -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_is_zero(&self) -> bool;
}

impl Ring for Rational {
    fn ring_zero() -> Self {
        Rational::zero()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Ring for RatPoly {
    fn ring_zero() -> Self {
        RatPoly::zero()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Ring for TrigPoly {
    fn ring_zero() -> Self {
        TrigPoly::zero()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}

/// Dense polynomials over an arbitrary coefficient ring; lets the cofactor
/// determinant run on bivariate entries like `u cos 2θ`.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyOver<T: Ring> {
    pub coeffs: Vec<T>,
}

impl<T: Ring> PolyOver<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        let mut p = PolyOver { coeffs };
        p.normalize();
        p
    }

    pub fn constant(c: T) -> Self {
        PolyOver::new(vec![c])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, Ring::ring_is_zero) {
            self.coeffs.pop();
        }
    }

    /// The constant coefficient if the polynomial is constant.
    pub fn as_constant(&self) -> Option<T> {
        match self.coeffs.len() {
            0 => Some(T::ring_zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }
}

impl<T: Ring> Ring for PolyOver<T> {
    fn ring_zero() -> Self {
        PolyOver { coeffs: Vec::new() }
    }
    fn ring_add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = T::ring_zero();
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = other.coeffs.get(i).unwrap_or(&zero);
            coeffs.push(a.ring_add(b));
        }
        PolyOver::new(coeffs)
    }
    fn ring_neg(&self) -> Self {
        PolyOver::new(self.coeffs.iter().map(Ring::ring_neg).collect())
    }
    fn ring_mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::ring_zero();
        }
        let mut coeffs = vec![T::ring_zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].ring_add(&a.ring_mul(b));
            }
        }
        PolyOver::new(coeffs)
    }
    fn ring_is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Laplace expansion along the first column. Exponential in the dimension;
/// meant for n <= 6 oracles and the standard-model checks.
pub fn cofactor_det<T: Ring>(m: &[Vec<T>]) -> T {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix required");
    if n == 0 {
        return T::ring_zero();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = T::ring_zero();
    for i in 0..n {
        if m[i][0].ring_is_zero() {
            continue;
        }
        let minor: Vec<Vec<T>> = m
            .iter()
            .enumerate()
            .filter(|(r, _)| *r != i)
            .map(|(_, row)| row[1..].to_vec())
            .collect();
        let term = m[i][0].ring_mul(&cofactor_det(&minor));
        acc = if i % 2 == 0 {
            acc.ring_add(&term)
        } else {
            acc.ring_add(&term.ring_neg())
        };
    }
    acc
}

/// Gaussian elimination over the rationals.
pub fn rational_det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix required");
    let mut det = Rational::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => return Rational::zero(),
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det = &det * &m[col][col];
        let inv = m[col][col].recip();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..n {
                let sub = &m[col][c] * &f;
                m[r][c] -= &sub;
            }
        }
    }
    det
}

/// Row rank over the rationals.
pub fn rational_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let pivot = match (rank..rows).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        m.swap(pivot, rank);
        let inv = m[rank][col].recip();
        for r in rank + 1..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..cols {
                let sub = &m[rank][c] * &f;
                m[r][c] -= &sub;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Fraction-free Bareiss determinant over rational polynomials.
///
/// Every two-by-two cross step divides exactly by the previous pivot, so
/// intermediate entries stay polynomial (they are minors of the input).
/// Rows are swapped when a pivot vanishes; an all-zero pivot column means the
/// determinant is zero.
pub fn bareiss_det(mut m: Vec<Vec<RatPoly>>) -> RatPoly {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix required");
    if n == 0 {
        return RatPoly::one();
    }
    let mut sign = 1i32;
    let mut prev = RatPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => r,
                None => return RatPoly::zero(),
            };
            m.swap(k, swap);
            sign = -sign;
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&pivot * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev);
            }
            m[i][k] = RatPoly::zero();
        }
        prev = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -&det
    } else {
        det
    }
}

/// Exact determinant of a square matrix of trig polynomials.
///
/// Returns the determinant as a trig polynomial together with its minimal
/// tangent half-angle form (computed on the way).
pub fn trig_det(m: &[Vec<TrigPoly>]) -> (TrigPoly, WeierstrassForm) {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix required");
    if n == 0 {
        return (
            TrigPoly::one(),
            WeierstrassForm {
                numerator: RatPoly::one(),
                denom_power: 0,
            },
        );
    }
    let d = RatPoly::one_plus_t_squared();
    let mut total_power: u32 = 0;
    let mut cleared: Vec<Vec<RatPoly>> = Vec::with_capacity(n);
    for row in m {
        let forms: Vec<WeierstrassForm> = row.iter().map(to_weierstrass).collect();
        let row_power = forms.iter().map(|f| f.denom_power).max().unwrap();
        total_power += row_power;
        let mut cleared_row = Vec::with_capacity(n);
        for f in forms {
            let mut num = f.numerator;
            for _ in 0..row_power - f.denom_power {
                num = &num * &d;
            }
            cleared_row.push(num);
        }
        cleared.push(cleared_row);
    }
    // scale every row by its rational content so entries have coprime integer
    // coefficients; integer entries keep the Bareiss arithmetic cheap.
    // det(original) = det(scaled) * prod(row contents).
    let mut scale = Rational::one();
    for row in &mut cleared {
        let mut denom_lcm = BigInt::one();
        let mut numer_gcd = BigInt::zero();
        for e in row.iter() {
            for c in e.coeffs() {
                denom_lcm = denom_lcm.lcm(c.denom());
            }
        }
        for e in row.iter() {
            for c in e.coeffs() {
                numer_gcd = numer_gcd.gcd(&(c.numer() * (&denom_lcm / c.denom())));
            }
        }
        if numer_gcd.is_zero() {
            continue; // all-zero row; determinant will be zero anyway
        }
        let content = Rational::from_big(numer_gcd, denom_lcm);
        let inv = content.recip();
        for e in row.iter_mut() {
            *e = e.scale(&inv);
        }
        scale = &scale * &content;
    }
    let num = bareiss_det(cleared).scale(&scale);
    let form = WeierstrassForm {
        numerator: num,
        denom_power: total_power,
    };
    // minimality: cancel shared (1+t^2) factors
    let form = {
        let mut f = form;
        while f.denom_power > 0 && !f.numerator.is_zero() && d.divides(&f.numerator) {
            f.numerator = f.numerator.div_exact(&d);
            f.denom_power -= 1;
        }
        if f.numerator.is_zero() {
            f.denom_power = 0;
        }
        f
    };
    (from_weierstrass(&form), form)
}
