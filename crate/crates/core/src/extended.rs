//! Extended two-loop ansatz: rotation blocks with exponential radial factors
//! plus a unit companion block.
//!
//! The map is `F(x1, x2, u, v) = diag(R(x1, x2), I_4) (b(u, v), c(u, v))`
//! with `b_r(u, v) = e^{Q_r(u)} (cos(mu_r v), sin(mu_r v))` and
//! `c(u, v) = (cos u, sin u, cos v, sin v)`. Expanding the osculating
//! determinant along the companion block leaves a 10x10 determinant in the
//! `b`-columns. Factoring `e^{Q_r}` out of every block row pair (derivatives
//! rewrite through the logarithmic derivative `q_r = Q_r'`) and pulling the
//! `v`-rotation out as a determinant-one left factor reduces that to a matrix
//! of trig polynomials in `u` alone.

use crate::error::Error;
use crate::matrix::trig_det;
use crate::rational::Rational;
use crate::trigpoly::TrigPoly;
use serde::{Deserialize, Serialize};

fn default_schema_version() -> u32 {
    1
}

fn default_companion() -> (u32, u32) {
    (1, 1)
}

/// Two rotation variables, `r` radial blocks and one 4-dimensional companion
/// block; the target dimension is `2r + 4`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ExtendedAnsatzSpec {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    pub label: String,
    /// Weight vectors in `Z^2`, one per radial block.
    pub weights: Vec<Vec<i64>>,
    /// Rotation frequency of each block in the second loop variable `v`.
    pub mu: Vec<i64>,
    /// Logarithmic derivatives `q_r = Q_r'` of the radial factors, as trig
    /// polynomials in `u`.
    pub logderivs: Vec<TrigPoly>,
    /// Frequencies of the companion block `(cos a u, sin a u, cos b v, sin b v)`.
    #[serde(default = "default_companion")]
    pub companion: (u32, u32),
}

impl ExtendedAnsatzSpec {
    pub fn blocks(&self) -> usize {
        self.weights.len()
    }

    pub fn target_dim(&self) -> usize {
        2 * self.blocks() + 4
    }

    pub fn validate(&self) -> Result<(), Error> {
        let mut errs = Vec::new();
        if self.mu.len() != self.blocks() || self.logderivs.len() != self.blocks() {
            errs.push(format!(
                "block data mismatch: {} weights, {} mu, {} log-derivatives",
                self.blocks(),
                self.mu.len(),
                self.logderivs.len()
            ));
        }
        for (j, w) in self.weights.iter().enumerate() {
            if w.len() != 2 {
                errs.push(format!("weight {j} has length {}, expected 2", w.len()));
            }
        }
        for i in 0..self.weights.len() {
            for j in i + 1..self.weights.len() {
                if self.weights[i] == self.weights[j] {
                    errs.push(format!("weights pairwise distinct violated ({i} = {j})"));
                }
            }
        }
        if self.companion.0 == 0 || self.companion.1 == 0 {
            errs.push("companion frequencies must be nonzero".into());
        }
        // the reduced matrix is square only in the critical dimension 14
        let critical = crate::critical_dimension(4, 2);
        if self.target_dim() != critical {
            errs.push(format!(
                "target_dim {} != critical dimension {critical}",
                self.target_dim()
            ));
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(errs))
        }
    }
}

/// Per-block symbol: the block value is `e^{Q_r} A(mu_r v) (alpha, beta)^T`
/// with `alpha, beta` trig polynomials in `u`. The three derivations act as
///
/// * `X_i`: `(alpha, beta) -> w_{ri} (-beta, alpha)`,
/// * `d/du`: `(alpha, beta) -> (q_r alpha + alpha', q_r beta + beta')`,
/// * `d/dv`: `(alpha, beta) -> mu_r (-beta, alpha)`.
#[derive(Clone)]
struct BlockSymbol {
    alpha: TrigPoly,
    beta: TrigPoly,
}

#[derive(Clone, Copy)]
enum Op {
    X(usize),
    Du,
    Dv,
}

fn apply(sym: &BlockSymbol, op: Op, w: &[i64], mu: i64, q: &TrigPoly) -> BlockSymbol {
    match op {
        Op::X(i) => {
            let s = Rational::from_int(w[i]);
            BlockSymbol {
                alpha: (-&sym.beta).scale(&s),
                beta: sym.alpha.scale(&s),
            }
        }
        Op::Du => BlockSymbol {
            alpha: &(q * &sym.alpha) + &sym.alpha.derivative(),
            beta: &(q * &sym.beta) + &sym.beta.derivative(),
        },
        Op::Dv => {
            let s = Rational::from_int(mu);
            BlockSymbol {
                alpha: (-&sym.beta).scale(&s),
                beta: sym.alpha.scale(&s),
            }
        }
    }
}

/// The ten non-companion column words, in the order the determinant is
/// expanded: `X1 b, X2 b, X1^2 b, X1 X2 b, X2^2 b, X1 b_u, X1 b_v,
/// X2 b_u, X2 b_v, b_uv`.
const COLUMN_WORDS: [&[Op]; 10] = [
    &[Op::X(0)],
    &[Op::X(1)],
    &[Op::X(0), Op::X(0)],
    &[Op::X(0), Op::X(1)],
    &[Op::X(1), Op::X(1)],
    &[Op::X(0), Op::Du],
    &[Op::X(0), Op::Dv],
    &[Op::X(1), Op::Du],
    &[Op::X(1), Op::Dv],
    &[Op::Du, Op::Dv],
];

/// Human-readable labels matching the reduced columns.
pub const REDUCED_COLUMN_LABELS: [&str; 10] = [
    "X1 b", "X2 b", "X1^2 b", "X1 X2 b", "X2^2 b", "X1 b_u", "X1 b_v", "X2 b_u", "X2 b_v", "b_uv",
];

/// The reduced square matrix of trig polynomials in `u` whose determinant,
/// times the positive factor `e^{2 sum Q_r}`, equals the 10x10 block
/// determinant (rows: per-block `alpha` then `beta` components).
pub fn extended_reduced_matrix(spec: &ExtendedAnsatzSpec) -> Result<Vec<Vec<TrigPoly>>, Error> {
    spec.validate()?;
    let n = 2 * spec.blocks();
    if COLUMN_WORDS.len() != n {
        return Err(Error::Structure(format!(
            "reduced matrix has {} columns but {n} block rows",
            COLUMN_WORDS.len(),
        )));
    }
    let mut rows = vec![Vec::with_capacity(n); n];
    for (r, ((w, mu), q)) in spec
        .weights
        .iter()
        .zip(&spec.mu)
        .zip(&spec.logderivs)
        .enumerate()
    {
        for word in COLUMN_WORDS {
            let mut sym = BlockSymbol {
                alpha: TrigPoly::one(),
                beta: TrigPoly::zero(),
            };
            // rightmost operator acts first
            for op in word.iter().rev() {
                sym = apply(&sym, *op, w, *mu, q);
            }
            rows[2 * r].push(sym.alpha);
            rows[2 * r + 1].push(sym.beta);
        }
    }
    Ok(rows)
}

/// Exact determinant of the reduced matrix as a trig polynomial in `u`.
pub fn extended_reduced_det(spec: &ExtendedAnsatzSpec) -> Result<TrigPoly, Error> {
    let m = extended_reduced_matrix(spec)?;
    Ok(trig_det(&m).0)
}

/// Determinant of the companion columns `(c_u, c_v, c_uu, c_vv)`.
///
/// The `u`-pair and `v`-pair decouple, so the 4x4 determinant factors as
/// minus the product of two exact 2x2 trig determinants (each constant).
pub fn companion_determinant(spec: &ExtendedAnsatzSpec) -> Result<Rational, Error> {
    spec.validate()?;
    let det_pair = |freq: u32| -> Result<Rational, Error> {
        let f = Rational::from_int(freq as i64);
        let c = TrigPoly::cos_term(freq, Rational::one());
        let s = TrigPoly::sin_term(freq, Rational::one());
        // columns d/dw (cos fw, sin fw) and d^2/dw^2 (cos fw, sin fw)
        let m = vec![
            vec![(-&s).scale(&f), (-&c).scale(&(&f * &f))],
            vec![c.scale(&f), (-&s).scale(&(&f * &f))],
        ];
        let (det, _) = trig_det(&m);
        if det.is_constant() {
            Ok(det.constant_part().clone())
        } else {
            Err(Error::Structure(
                "companion block determinant not constant".into(),
            ))
        }
    };
    let du = det_pair(spec.companion.0)?;
    let dv = det_pair(spec.companion.1)?;
    Ok(-&(&du * &dv))
}
