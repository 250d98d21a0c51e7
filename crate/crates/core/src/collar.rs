//! Collar interpolation between the signed cylinder and the polar quadratic
//! model, verified exactly.
//!
//! Maps of the form
//! `F(u, θ) = (a(u) cos θ, a(u) sin θ, b(u) cos 2θ, b(u) sin 2θ, c(u))`
//! with `b = u a` have osculating determinant `det DF = -2 a(u)^3 H(u)` where
//! `H = (a - 3u a') c'' + (3u a'' - 2a') c'`. Freeness on the collar reduces
//! to endpoint jet matching plus positivity of `a` and of the rescaled
//! combination `K` on `[0, 1]`, both certified by Sturm counting.
//!
//! The smooth cutoff that upgrades 2-jet agreement at the ends to exact
//! agreement near them is non-polynomial and is not modelled here; this
//! module verifies exactly the algebraic facts that argument consumes.

use crate::error::Error;
use crate::matrix::{cofactor_det, trig_det, PolyOver, Ring};
use crate::rational::Rational;
use crate::ratpoly::RatPoly;
use crate::sturm::{certify_sign, PositivityCertificate, SignDomain, SignVerdict};
use crate::trigpoly::TrigPoly;
use serde::{Deserialize, Serialize};

fn default_schema_version() -> u32 {
    1
}

/// Radial interpolation profile; `b = u a` is derived, not stored.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct CollarProfile {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    #[serde(default)]
    pub label: String,
    pub a: RatPoly,
    pub c: RatPoly,
}

impl CollarProfile {
    pub fn b(&self) -> RatPoly {
        &RatPoly::monomial(Rational::one(), 1) * &self.a
    }
}

/// `H = (a - 3u a') c'' + (3u a'' - 2a') c'`, the factor with
/// `det DF = -2 a^3 H`.
pub fn hessian_combination(p: &CollarProfile) -> RatPoly {
    let u = RatPoly::monomial(Rational::one(), 1);
    let a1 = p.a.derivative();
    let a2 = a1.derivative();
    let c1 = p.c.derivative();
    let c2 = c1.derivative();
    let three = Rational::from_int(3);
    let left = &(&p.a - &(&u * &a1).scale(&three)) * &c2;
    let right = &(&(&u * &a2).scale(&three) - &a1.scale(&Rational::from_int(2))) * &c1;
    &left + &right
}

/// One endpoint comparison row of the jet table.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct JetEntry {
    pub component: char,
    pub endpoint: u8,
    pub derivative: u8,
    pub expected: Rational,
    pub actual: Rational,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JetReport {
    pub jet0_ok: bool,
    pub jet1_ok: bool,
    pub table: Vec<JetEntry>,
}

/// Compares the 2-jets of `(a, b, c)` at both endpoints against the models.
pub fn jet_match(p: &CollarProfile) -> JetReport {
    let r = Rational::from_int;
    let expected0 = [
        vec![r(1), r(0), r(0)],
        vec![r(0), r(1), r(0)],
        vec![r(0), r(0), r(-1)],
    ];
    let expected1 = [
        vec![r(2), r(2), r(0)],
        vec![r(2), r(4), r(4)],
        vec![r(2), r(4), r(4)],
    ];
    let fns = [p.a.clone(), p.b(), p.c.clone()];
    let names = ['a', 'b', 'c'];
    let mut table = Vec::with_capacity(18);
    let mut ok = [true, true];
    for (endpoint, (point, expected)) in [
        (Rational::zero(), &expected0),
        (Rational::one(), &expected1),
    ]
    .into_iter()
    .enumerate()
    {
        for (fi, f) in fns.iter().enumerate() {
            let mut d = f.clone();
            for deriv in 0..3u8 {
                let actual = d.eval(&point);
                let want = expected[fi][deriv as usize].clone();
                let matches = actual == want;
                ok[endpoint] &= matches;
                table.push(JetEntry {
                    component: names[fi],
                    endpoint: endpoint as u8,
                    derivative: deriv,
                    expected: want,
                    actual,
                    matches,
                });
                d = d.derivative();
            }
        }
    }
    JetReport {
        jet0_ok: ok[0],
        jet1_ok: ok[1],
        table,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum CollarVerdict {
    #[serde(rename = "FREE_ON_COLLAR")]
    FreeOnCollar,
    #[serde(rename = "FAILS")]
    Fails,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CollarCertificate {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    pub h: RatPoly,
    /// Positive-content rescaling of `-H`; equals the published `K` whenever
    /// `H = -K / k_scale` holds exactly.
    pub k: RatPoly,
    /// The positive scale with `K = k_scale * (-H)`.
    pub k_scale: Rational,
    pub jet0_ok: bool,
    pub jet1_ok: bool,
    pub jet_table: Vec<JetEntry>,
    pub a_endpoints: (Rational, Rational),
    pub k_endpoints: (Rational, Rational),
    pub a_positive_on_01: PositivityCertificate,
    pub k_positive_on_01: PositivityCertificate,
    pub det_formula: String,
    pub verdict: CollarVerdict,
}

/// Full Lemma-style collar certificate: jets, `H`/`K` relation, and interval
/// positivity with closed-interval semantics (endpoints checked directly,
/// interior by Sturm).
pub fn verify_collar(p: &CollarProfile) -> Result<CollarCertificate, Error> {
    let h = hessian_combination(p);
    let (k, content) = (-&h).primitive_part();
    // K = (1/content) * (-H)
    let k_scale = content.recip();
    let jets = jet_match(p);
    let zero = Rational::zero();
    let one = Rational::one();
    let a_endpoints = (p.a.eval(&zero), p.a.eval(&one));
    let k_endpoints = (k.eval(&zero), k.eval(&one));
    if a_endpoints.0.is_zero() || a_endpoints.1.is_zero() {
        return Err(Error::EndpointIsRoot {
            at: if a_endpoints.0.is_zero() { zero } else { one },
        });
    }
    if k_endpoints.0.is_zero() || k_endpoints.1.is_zero() {
        return Err(Error::EndpointIsRoot {
            at: if k_endpoints.0.is_zero() { zero } else { one },
        });
    }
    let a_cert = certify_sign(&p.a, SignDomain::Interval(zero.clone(), one.clone()))?;
    let k_cert = certify_sign(&k, SignDomain::Interval(zero, one))?;
    let positive = |cert: &PositivityCertificate, ends: &(Rational, Rational)| {
        cert.verdict == SignVerdict::PositiveOnInterval
            && ends.0.is_positive()
            && ends.1.is_positive()
    };
    let all_ok = jets.jet0_ok
        && jets.jet1_ok
        && positive(&a_cert, &a_endpoints)
        && positive(&k_cert, &k_endpoints);
    Ok(CollarCertificate {
        schema_version: 1,
        h,
        k,
        k_scale: k_scale.clone(),
        jet0_ok: jets.jet0_ok,
        jet1_ok: jets.jet1_ok,
        jet_table: jets.table,
        a_endpoints,
        k_endpoints,
        a_positive_on_01: a_cert,
        k_positive_on_01: k_cert,
        det_formula: format!("det DF = -2 a^3 H; K = {k_scale} * (-H)"),
        verdict: if all_ok {
            CollarVerdict::FreeOnCollar
        } else {
            CollarVerdict::Fails
        },
    })
}

/// Osculating determinant of the collar map at a fixed rational `u`,
/// computed from the full 5x5 trig matrix in `θ`. Cross-checks the closed
/// form `-2 a^3 H` against the generic determinant machinery.
pub fn collar_det_at(p: &CollarProfile, u: &Rational) -> TrigPoly {
    let b = p.b();
    let ev = |f: &RatPoly| f.eval(u);
    let d1 = |f: &RatPoly| f.derivative();
    let d2 = |f: &RatPoly| f.derivative().derivative();
    let cos1 = TrigPoly::cos_term(1, Rational::one());
    let sin1 = TrigPoly::sin_term(1, Rational::one());
    let cos2 = TrigPoly::cos_term(2, Rational::one());
    let sin2 = TrigPoly::sin_term(2, Rational::one());
    let two = Rational::from_int(2);
    let four = Rational::from_int(4);
    // columns: F_u, F_θ, F_uu, F_uθ, F_θθ
    let cols: [Vec<TrigPoly>; 5] = [
        vec![
            cos1.scale(&ev(&d1(&p.a))),
            sin1.scale(&ev(&d1(&p.a))),
            cos2.scale(&ev(&d1(&b))),
            sin2.scale(&ev(&d1(&b))),
            TrigPoly::constant(ev(&d1(&p.c))),
        ],
        vec![
            (-&sin1).scale(&ev(&p.a)),
            cos1.scale(&ev(&p.a)),
            (-&sin2).scale(&(&ev(&b) * &two)),
            cos2.scale(&(&ev(&b) * &two)),
            TrigPoly::zero(),
        ],
        vec![
            cos1.scale(&ev(&d2(&p.a))),
            sin1.scale(&ev(&d2(&p.a))),
            cos2.scale(&ev(&d2(&b))),
            sin2.scale(&ev(&d2(&b))),
            TrigPoly::constant(ev(&d2(&p.c))),
        ],
        vec![
            (-&sin1).scale(&ev(&d1(&p.a))),
            cos1.scale(&ev(&d1(&p.a))),
            (-&sin2).scale(&(&ev(&d1(&b)) * &two)),
            cos2.scale(&(&ev(&d1(&b)) * &two)),
            TrigPoly::zero(),
        ],
        vec![
            (-&cos1).scale(&ev(&p.a)),
            (-&sin1).scale(&ev(&p.a)),
            (-&cos2).scale(&(&ev(&b) * &four)),
            (-&sin2).scale(&(&ev(&b) * &four)),
            TrigPoly::zero(),
        ],
    ];
    let matrix: Vec<Vec<TrigPoly>> = (0..5)
        .map(|row| cols.iter().map(|c| c[row].clone()).collect())
        .collect();
    trig_det(&matrix).0
}

/// The standard free models around the collar construction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StandardModels {
    /// `det` of the osculating matrix of
    /// `P~(x, y) = (x, y, (x^2-y^2)/2, xy, (x^2+y^2)/2)` — constant.
    pub p_tilde_det: Rational,
    /// `det DC` of the signed cylinder
    /// `C(u, θ) = (cos θ, sin θ, u cos 2θ, u sin 2θ, -u^2/2)` — constant.
    pub cylinder_det: Rational,
    /// `W~(r, θ) = P~(r cos θ, r sin θ)` evaluated at sample points
    /// `(r, tan(θ/2))` with exact rational output.
    pub w_tilde_samples: Vec<(Rational, Rational, Vec<Rational>)>,
    /// Anisotropic dilation `D_λ`: exponent of `λ` on each coordinate.
    pub dilation_exponents: [u32; 5],
}

/// Computes the standard-model determinants symbolically.
///
/// `P~` is handled as a bivariate polynomial matrix (cofactor expansion over
/// `Q[x][y]`), the cylinder as a polynomial-in-`u` matrix over the trig ring.
pub fn standard_models() -> StandardModels {
    // --- P~: rows ∂x, ∂y, ∂xx, ∂xy, ∂yy of the five components
    type Bi = PolyOver<PolyOver<Rational>>; // y outer, x inner
    let cnst = |n: i64| Bi::constant(PolyOver::constant(Rational::from_int(n)));
    let x = Bi::constant(PolyOver::new(vec![Rational::zero(), Rational::one()]));
    let y = Bi::new(vec![
        PolyOver::ring_zero(),
        PolyOver::constant(Rational::one()),
    ]);
    let rows: Vec<Vec<Bi>> = vec![
        vec![cnst(1), cnst(0), x.clone(), y.clone(), x.clone()],
        vec![cnst(0), cnst(1), y.ring_neg(), x.clone(), y.clone()],
        vec![cnst(0), cnst(0), cnst(1), cnst(0), cnst(1)],
        vec![cnst(0), cnst(0), cnst(0), cnst(1), cnst(0)],
        vec![cnst(0), cnst(0), cnst(-1), cnst(0), cnst(1)],
    ];
    let p_det = cofactor_det(&rows);
    let p_tilde_det = p_det
        .as_constant()
        .and_then(|c| c.as_constant())
        .expect("P~ osculating determinant is constant");

    // --- signed cylinder: entries are polynomials in u over the trig ring in θ
    type Cy = PolyOver<TrigPoly>;
    let tz = || TrigPoly::zero();
    let cos1 = TrigPoly::cos_term(1, Rational::one());
    let sin1 = TrigPoly::sin_term(1, Rational::one());
    let cos2 = TrigPoly::cos_term(2, Rational::one());
    let sin2 = TrigPoly::sin_term(2, Rational::one());
    let k = |t: TrigPoly| Cy::constant(t);
    let ku = |t: TrigPoly| Cy::new(vec![tz(), t]); // t * u
    let scale = |t: &TrigPoly, n: i64| t.scale(&Rational::from_int(n));
    // rows ∂u, ∂θ, ∂uu, ∂uθ, ∂θθ applied to (cos θ, sin θ, u cos 2θ, u sin 2θ, -u^2/2)
    let rows: Vec<Vec<Cy>> = vec![
        vec![
            k(tz()),
            k(tz()),
            k(cos2.clone()),
            k(sin2.clone()),
            Cy::new(vec![tz(), TrigPoly::constant(Rational::from_int(-1))]),
        ],
        vec![
            k(scale(&sin1, -1)),
            k(cos1.clone()),
            ku(scale(&sin2, -2)),
            ku(scale(&cos2, 2)),
            k(tz()),
        ],
        vec![
            k(tz()),
            k(tz()),
            k(tz()),
            k(tz()),
            k(TrigPoly::constant(Rational::from_int(-1))),
        ],
        vec![
            k(tz()),
            k(tz()),
            k(scale(&sin2, -2)),
            k(scale(&cos2, 2)),
            k(tz()),
        ],
        vec![
            k(scale(&cos1, -1)),
            k(scale(&sin1, -1)),
            ku(scale(&cos2, -4)),
            ku(scale(&sin2, -4)),
            k(tz()),
        ],
    ];
    // transpose: determinant of the matrix whose COLUMNS are the derivative rows
    let matrix: Vec<Vec<Cy>> = (0..5)
        .map(|i| rows.iter().map(|r| r[i].clone()).collect())
        .collect();
    let c_det = cofactor_det(&matrix);
    let cylinder_det = c_det
        .as_constant()
        .map(|t| {
            assert!(t.is_constant(), "cylinder determinant is constant");
            t.constant_part().clone()
        })
        .expect("cylinder determinant has no u dependence");

    // --- W~ samples
    let samples = [
        (Rational::new(1, 2), Rational::zero()),
        (Rational::one(), Rational::new(1, 3)),
        (Rational::from_int(2), Rational::one()),
    ];
    let w_tilde_samples = samples
        .into_iter()
        .map(|(radius, t_theta)| {
            let cos_t = TrigPoly::cos_term(1, Rational::one()).eval_weierstrass(&t_theta);
            let sin_t = TrigPoly::sin_term(1, Rational::one()).eval_weierstrass(&t_theta);
            let x = &radius * &cos_t;
            let y = &radius * &sin_t;
            let half = Rational::new(1, 2);
            let vals = vec![
                x.clone(),
                y.clone(),
                &(&(&x * &x) - &(&y * &y)) * &half,
                &x * &y,
                &(&(&x * &x) + &(&y * &y)) * &half,
            ];
            (radius, t_theta, vals)
        })
        .collect();

    StandardModels {
        p_tilde_det,
        cylinder_det,
        w_tilde_samples,
        dilation_exponents: [1, 1, 2, 2, 2],
    }
}
