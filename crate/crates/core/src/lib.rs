//! Exact certification of free torus immersions.
//!
//! A map is *free* when its first and second partial derivatives are linearly
//! independent at every point. For block-rotation maps `F(x, z) = R(x) v(z)`
//! the freeness determinant depends on the loop variable `z` alone, so freeness
//! reduces to showing that a single trigonometric polynomial never vanishes on
//! the circle. This crate carries out that reduction exactly:
//!
//! * [`trigpoly`] / [`ratpoly`] / [`rational`] — the exact scalar and
//!   polynomial rings everything is computed in,
//! * [`weierstrass`] — the tangent half-angle substitution `t = tan(z/2)`,
//!   turning trig polynomials into rational polynomials,
//! * [`sturm`] — Sturm chains, real-root counts and sign certificates,
//! * [`ansatz`] / [`extended`] — building derivative families from integer
//!   weight data and computing their determinants fraction-free,
//! * [`verify`] / [`registry`] — the end-to-end pipeline and the bundled
//!   reference cases,
//! * [`collar`] — the polynomial collar-interpolation checks used by the
//!   surface construction,
//! * [`search`] — a deterministic numeric search harness whose candidates are
//!   handed back to the exact pipeline for certification.
//!
//! All verdicts are produced with arbitrary-precision rational arithmetic;
//! floating point appears only in the search harness and smoke tests.

pub mod ansatz;
pub mod collar;
pub mod error;
pub mod extended;
pub mod matrix;
pub mod rational;
pub mod ratpoly;
pub mod registry;
pub mod search;
pub mod sturm;
pub mod trigpoly;
pub mod verify;
pub mod weierstrass;

pub use ansatz::{AnsatzSpec, DerivativeFamily, MultiIndex, ObstructionReport, WeightSet};
pub use collar::{CollarCertificate, CollarProfile, StandardModels};
pub use error::Error;
pub use extended::ExtendedAnsatzSpec;
pub use rational::Rational;
pub use ratpoly::RatPoly;
pub use sturm::{PositivityCertificate, SignDomain, SignVerdict, SturmChain};
pub use trigpoly::TrigPoly;
pub use verify::{FreenessCertificate, Verdict};
pub use weierstrass::WeierstrassForm;

/// Critical target dimension for `k`-free maps of the `m`-torus:
/// `binom(m + k, k) - 1`. For `k = 2` this is `m (m + 3) / 2`.
pub fn critical_dimension(m: u32, order: u32) -> usize {
    let mut binom: u128 = 1;
    for i in 1..=order as u128 {
        binom = binom * (m as u128 + i) / i;
    }
    (binom - 1) as usize
}
