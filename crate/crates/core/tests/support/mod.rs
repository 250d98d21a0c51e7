//! Shared test support: random-value strategies and the independent
//! root-isolation oracle used by both the property and acceptance suites.
#![allow(dead_code)]

use freemap_core::rational::Rational;
use freemap_core::ratpoly::RatPoly;
use freemap_core::trigpoly::TrigPoly;
use proptest::prelude::*;

pub fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
}

pub fn nonzero_tangent() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=9).prop_map(|(n, d)| Rational::new(n, d))
}

/// Sparse trig polynomial with frequency <= 6 and small rational coefficients.
pub fn trigpoly_strategy() -> impl Strategy<Value = TrigPoly> {
    let term = (0u32..=6, rational_strategy(), proptest::bool::ANY);
    (rational_strategy(), proptest::collection::vec(term, 0..5)).prop_map(|(c, terms)| {
        let mut p = TrigPoly::constant(c);
        for (freq, coeff, is_cos) in terms {
            let t = if is_cos {
                TrigPoly::cos_term(freq, coeff)
            } else {
                TrigPoly::sin_term(freq, coeff)
            };
            p = &p + &t;
        }
        p
    })
}

pub fn small_trigpoly() -> impl Strategy<Value = TrigPoly> {
    let term = (0u32..=2, -3i64..=3, proptest::bool::ANY);
    proptest::collection::vec(term, 0..3).prop_map(|terms| {
        let mut p = TrigPoly::zero();
        for (freq, coeff, is_cos) in terms {
            let t = if is_cos {
                TrigPoly::cos_term(freq, Rational::from_int(coeff))
            } else {
                TrigPoly::sin_term(freq, Rational::from_int(coeff))
            };
            p = &p + &t;
        }
        p
    })
}

pub fn intpoly_strategy(max_deg: usize) -> impl Strategy<Value = RatPoly> {
    proptest::collection::vec(-20i64..=20, 1..=max_deg + 1)
        .prop_map(|c| RatPoly::from_integers(&c))
}


/// Independent oracle: count distinct real roots of a squarefree integer
/// polynomial by bisection, splitting at rational midpoints until every
/// undecided interval is settled by a Descartes bound of 0 or 1.
pub mod oracle {
    use freemap_core::rational::Rational;
    use freemap_core::ratpoly::RatPoly;

    /// Descartes upper bound on roots of `p` in the open interval `(a, b)`:
    /// sign variations of the coefficients of `(1+x)^n p((a + b x)/(1 + x))`.
    fn descartes_bound(p: &RatPoly, a: &Rational, b: &Rational) -> usize {
        let n = p.degree().unwrap_or(0);
        let mut q = RatPoly::zero();
        let lin_ab = RatPoly::new(vec![a.clone(), b.clone()]);
        let lin_1x = RatPoly::from_integers(&[1, 1]);
        for (i, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = &lin_ab.pow(i as u32) * &lin_1x.pow((n - i) as u32);
            q = &q + &term.scale(c);
        }
        let mut vars = 0;
        let mut last = 0i32;
        for c in q.coeffs() {
            let s = c.signum();
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                vars += 1;
            }
            last = s;
        }
        vars
    }

    /// Distinct real roots of squarefree `p` in `(a, b)`, endpoints non-root.
    fn count_in(p: &RatPoly, a: &Rational, b: &Rational) -> usize {
        match descartes_bound(p, a, b) {
            0 => 0,
            1 => 1,
            _ => {
                let mid = &(a + b) * &Rational::new(1, 2);
                if p.eval(&mid).is_zero() {
                    // count the midpoint root and recurse on nudged halves
                    let quarter = &(&mid - a) * &Rational::new(1, 2);
                    let left_end = &mid - &quarter;
                    let right_end = &mid + &quarter;
                    assert!(!p.eval(&left_end).is_zero() && !p.eval(&right_end).is_zero(),
                        "oracle nudge hit another root");
                    count_in(p, a, &left_end)
                        + count_in(p, &left_end, &mid)
                        + 1
                        + count_in(p, &mid, &right_end)
                        + count_in(p, &right_end, b)
                } else {
                    count_in(p, a, &mid) + count_in(p, &mid, b)
                }
            }
        }
    }

    /// Distinct real roots of an arbitrary nonzero integer polynomial.
    pub fn count_real_roots(p: &RatPoly) -> usize {
        let sf = p.squarefree_part();
        if sf.is_zero() || sf.degree() == Some(0) {
            return 0;
        }
        let bound = sf.cauchy_bound();
        let lo = -&bound;
        count_in(&sf, &lo, &bound)
    }
}

