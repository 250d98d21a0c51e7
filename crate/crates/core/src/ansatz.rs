//! Block-rotation ansatz: weight data, derivative families and their exact
//! determinants.
//!
//! The maps under test have the form `F(x, z) = R(x) v(z)` where
//! `R(x) = diag(A(<w_1, x>), ..., A(<w_r, x>))` is built from planar rotation
//! blocks driven by integer weight vectors (possibly with one extra fixed
//! coordinate when the target dimension is odd), and `v` is a loop of trig
//! polynomials. Differentiating `R` in `x_i` multiplies by the block-diagonal
//! skew generator `X_i = diag(w_{1i} J, ..., w_{ri} J)`, so after stripping
//! the common special-orthogonal factor `R(x)` the osculating columns are the
//! words `X^alpha v^(q)` and the freeness determinant depends on `z` alone.

use crate::error::Error;
use crate::matrix::{rational_rank, trig_det};
use crate::rational::Rational;
use crate::trigpoly::TrigPoly;
use crate::weierstrass::WeierstrassForm;
use serde::{Deserialize, Serialize};

fn default_schema_version() -> u32 {
    1
}

/// Integer weight vectors selecting the rotation angle of each 2x2 block.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct WeightSet {
    /// Number of rotation variables (`m - 1` on the `m`-torus).
    pub k: usize,
    /// One integer vector of length `k` per rotation block.
    pub weights: Vec<Vec<i64>>,
    /// One extra rotation-invariant coordinate (target dimension odd).
    pub fixed: bool,
}

impl WeightSet {
    pub fn blocks(&self) -> usize {
        self.weights.len()
    }

    pub fn target_dim(&self) -> usize {
        2 * self.blocks() + usize::from(self.fixed)
    }

    /// Torus dimension of the resulting map (`k` rotation variables + the
    /// loop variable).
    pub fn torus_dim(&self) -> u32 {
        self.k as u32 + 1
    }

    pub fn validate(&self) -> Result<(), Vec<String>> {
        let mut errs = Vec::new();
        if self.weights.is_empty() {
            errs.push("weights must be nonempty".into());
        }
        for (j, w) in self.weights.iter().enumerate() {
            if w.len() != self.k {
                errs.push(format!(
                    "weight {j} has length {}, expected k = {}",
                    w.len(),
                    self.k
                ));
            }
        }
        for i in 0..self.weights.len() {
            for j in i + 1..self.weights.len() {
                if self.weights[i] == self.weights[j] {
                    errs.push(format!("weights pairwise distinct violated ({i} = {j})"));
                }
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(errs)
        }
    }

    /// Applies the generator `X_i` to a coordinate vector:
    /// block `j` maps `(a, b)` to `w_{ji} (-b, a)`, the fixed coordinate to 0.
    pub fn apply_generator(&self, i: usize, v: &[TrigPoly]) -> Vec<TrigPoly> {
        assert!(i < self.k, "generator index out of range");
        assert_eq!(v.len(), self.target_dim(), "vector length mismatch");
        let mut out = Vec::with_capacity(v.len());
        for (j, w) in self.weights.iter().enumerate() {
            let scale = Rational::from_int(w[i]);
            out.push((-&v[2 * j + 1]).scale(&scale));
            out.push(v[2 * j].scale(&scale));
        }
        if self.fixed {
            out.push(TrigPoly::zero());
        }
        out
    }

    /// Dense matrix of `X_i` over the rationals (for inspection and tests).
    pub fn generator_matrix(&self, i: usize) -> Vec<Vec<Rational>> {
        let n = self.target_dim();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (j, w) in self.weights.iter().enumerate() {
            m[2 * j][2 * j + 1] = Rational::from_int(-w[i]);
            m[2 * j + 1][2 * j] = Rational::from_int(w[i]);
        }
        m
    }

    /// Exact rotation matrix `R(x)` at tangent half-angle points
    /// `t_i = tan(x_i / 2)`; every entry is rational.
    pub fn rotation_at(&self, half_angle_tangents: &[Rational]) -> Vec<Vec<Rational>> {
        assert_eq!(
            half_angle_tangents.len(),
            self.k,
            "one parameter per variable"
        );
        let base: Vec<(Rational, Rational)> = half_angle_tangents
            .iter()
            .map(|t| {
                let t2 = t * t;
                let denom = &Rational::one() + &t2;
                (
                    &(&Rational::one() - &t2) / &denom,
                    &(&Rational::from_int(2) * t) / &denom,
                )
            })
            .collect();
        let compose = |a: &(Rational, Rational), b: &(Rational, Rational)| {
            (
                &(&a.0 * &b.0) - &(&a.1 * &b.1),
                &(&a.1 * &b.0) + &(&a.0 * &b.1),
            )
        };
        let n = self.target_dim();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (j, w) in self.weights.iter().enumerate() {
            // (cos <w_j, x>, sin <w_j, x>) by composing signed copies
            let mut angle = (Rational::one(), Rational::zero());
            for (i, &wi) in w.iter().enumerate() {
                let step = if wi >= 0 {
                    base[i].clone()
                } else {
                    (base[i].0.clone(), -&base[i].1)
                };
                for _ in 0..wi.unsigned_abs() {
                    angle = compose(&angle, &step);
                }
            }
            let (c, s) = angle;
            m[2 * j][2 * j] = c.clone();
            m[2 * j][2 * j + 1] = -&s;
            m[2 * j + 1][2 * j] = s;
            m[2 * j + 1][2 * j + 1] = c;
        }
        if self.fixed {
            m[n - 1][n - 1] = Rational::one();
        }
        m
    }
}

/// Which partial derivative a family column represents: exponents of the
/// rotation variables followed by the order of the loop derivative.
/// Serializes as the flat array `[alpha_1, ..., alpha_k, q]`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn x_exponents(&self) -> &[u32] {
        &self.0[..self.0.len() - 1]
    }

    pub fn z_order(&self) -> u32 {
        *self.0.last().unwrap()
    }

    pub fn total_order(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// The ansatz under test: weights plus a loop of trig polynomials.
///
/// `order` is 2 for plain freeness and larger for `k`-free checks. The
/// optional `ordering` overrides the canonical column ordering (it must be a
/// permutation of it); certificates always record the ordering used.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct AnsatzSpec {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    pub label: String,
    #[serde(flatten)]
    pub weight_set: WeightSet,
    pub order: u32,
    #[serde(rename = "loop")]
    pub loop_vector: Vec<TrigPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<Vec<MultiIndex>>,
}

impl AnsatzSpec {
    pub fn torus_dim(&self) -> u32 {
        self.weight_set.torus_dim()
    }

    /// Structural validation plus the critical-dimension arithmetic check.
    pub fn validate(&self) -> Result<(), Error> {
        let mut errs = match self.weight_set.validate() {
            Ok(()) => Vec::new(),
            Err(e) => e,
        };
        if self.order < 2 {
            errs.push(format!("order {} < 2", self.order));
        }
        let target = self.weight_set.target_dim();
        if self.loop_vector.len() != target {
            errs.push(format!(
                "loop length {} != target_dim {target}",
                self.loop_vector.len()
            ));
        }
        let critical = crate::critical_dimension(self.torus_dim(), self.order);
        if target != critical {
            errs.push(format!(
                "target_dim {target} != critical dimension q_{{{},{}}} = {critical}",
                self.torus_dim(),
                self.order
            ));
        }
        if let Some(ordering) = &self.ordering {
            let canonical = canonical_ordering(self.weight_set.k, self.order);
            let mut sorted_a: Vec<_> = ordering.clone();
            let mut sorted_b: Vec<_> = canonical.clone();
            sorted_a.sort_by(|a, b| a.0.cmp(&b.0));
            sorted_b.sort_by(|a, b| a.0.cmp(&b.0));
            if sorted_a != sorted_b {
                errs.push("ordering is not a permutation of the canonical column set".into());
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(errs))
        }
    }

    pub fn column_ordering(&self) -> Vec<MultiIndex> {
        self.ordering
            .clone()
            .unwrap_or_else(|| canonical_ordering(self.weight_set.k, self.order))
    }
}

/// The R-stripped derivative columns in their recorded ordering.
#[derive(Clone, Debug)]
pub struct DerivativeFamily {
    pub columns: Vec<Vec<TrigPoly>>,
    pub ordering: Vec<MultiIndex>,
    pub dimension: usize,
}

/// Canonical column ordering: grouped by total order; within one order the
/// loop-derivative exponent `q` ascends, and multi-indices with equal `q` are
/// listed lexicographically descending (so `x_1 .. x_k` come in variable
/// order, pure-x pairs precede mixed `x z` terms, and `z..z` closes each
/// group).
pub fn canonical_ordering(k: usize, order: u32) -> Vec<MultiIndex> {
    fn exponent_vectors(k: usize, total: u32) -> Vec<Vec<u32>> {
        if k == 0 {
            return if total == 0 { vec![vec![]] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for first in (0..=total).rev() {
            for mut rest in exponent_vectors(k - 1, total - first) {
                let mut v = vec![first];
                v.append(&mut rest);
                out.push(v);
            }
        }
        out
    }
    let mut ordering = Vec::new();
    for o in 1..=order {
        for q in 0..=o {
            for mut alpha in exponent_vectors(k, o - q) {
                alpha.push(q);
                ordering.push(MultiIndex(alpha));
            }
        }
    }
    ordering
}

/// Builds the column `X^alpha v^(q)` for one multi-index.
fn column_for(ws: &WeightSet, derivs: &[Vec<TrigPoly>], idx: &MultiIndex) -> Vec<TrigPoly> {
    let mut col = derivs[idx.z_order() as usize].clone();
    for (i, &e) in idx.x_exponents().iter().enumerate() {
        for _ in 0..e {
            col = ws.apply_generator(i, &col);
        }
    }
    col
}

/// All derivative columns of the spec, in its recorded ordering.
///
/// Rejects non-square (non-critical) specs with a dimension error.
pub fn derivative_family(spec: &AnsatzSpec) -> Result<DerivativeFamily, Error> {
    spec.validate()?;
    let ws = &spec.weight_set;
    let ordering = spec.column_ordering();
    if ordering.len() != spec.loop_vector.len() {
        return Err(Error::DimensionMismatch {
            what: "derivative family",
            expected: spec.loop_vector.len(),
            found: ordering.len(),
        });
    }
    let mut derivs = vec![spec.loop_vector.clone()];
    for q in 1..=spec.order as usize {
        derivs.push(derivs[q - 1].iter().map(TrigPoly::derivative).collect());
    }
    let columns = ordering
        .iter()
        .map(|idx| column_for(ws, &derivs, idx))
        .collect();
    Ok(DerivativeFamily {
        columns,
        ordering,
        dimension: spec.loop_vector.len(),
    })
}

/// Exact determinant of the R-stripped family as a trig polynomial.
///
/// Equals the determinant of the full osculating matrix at every point
/// because the stripped factor `R(x)` is special orthogonal.
pub fn osculating_det(family: &DerivativeFamily) -> TrigPoly {
    osculating_det_with_form(family).0
}

pub fn osculating_det_with_form(family: &DerivativeFamily) -> (TrigPoly, WeierstrassForm) {
    let n = family.dimension;
    let matrix: Vec<Vec<TrigPoly>> = (0..n)
        .map(|row| family.columns.iter().map(|col| col[row].clone()).collect())
        .collect();
    trig_det(&matrix)
}

/// Evaluates the full osculating matrix `R(x) . (X^alpha v^(q))(z)` at exact
/// rational tangent half-angle points, one `t` per rotation variable plus one
/// for the loop variable. Used to confirm that the determinant really is
/// independent of the rotation variables.
pub fn full_osculating_at(
    spec: &AnsatzSpec,
    x_tangents: &[Rational],
    z_tangent: &Rational,
) -> Result<Vec<Vec<Rational>>, Error> {
    let fam = derivative_family(spec)?;
    let rot = spec.weight_set.rotation_at(x_tangents);
    let n = fam.dimension;
    let evaluated: Vec<Vec<Rational>> = fam
        .columns
        .iter()
        .map(|col| col.iter().map(|e| e.eval_weierstrass(z_tangent)).collect())
        .collect();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for (j, col) in evaluated.iter().enumerate() {
        for (i, row) in out.iter_mut().enumerate() {
            let mut acc = Rational::zero();
            for (l, cl) in col.iter().enumerate() {
                if !rot[i][l].is_zero() && !cl.is_zero() {
                    acc += &(&rot[i][l] * cl);
                }
            }
            row[j] = acc;
        }
    }
    Ok(out)
}

/// Necessary-condition report for the block-rotation ansatz on the `m`-torus.
///
/// The pure second derivatives in the rotation variables contribute one
/// scalar row per block — the quadratic vector
/// `(w_{j1}^2, w_{j1} w_{j2}, ..., w_{jk}^2)` — so the ansatz needs at least
/// `m(m-1)/2` blocks spanning all of `Sym^2`. The block count is forced to
/// `floor(q_m / 2)`, which drops below `m(m-1)/2` for every `m > 5`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub m: u32,
    pub k: usize,
    pub critical_dim: usize,
    pub blocks: usize,
    pub required_blocks: usize,
    pub count_ok: bool,
    pub quadratic_rank: usize,
    pub rank_required: usize,
    pub rank_ok: bool,
    pub passes: bool,
}

pub fn obstruction_check(m: u32, ws: &WeightSet) -> ObstructionReport {
    let k = ws.k;
    assert_eq!(k as u32, m - 1, "weight set sized for the wrong torus");
    let critical_dim = crate::critical_dimension(m, 2);
    let blocks = ws.blocks();
    let required_blocks = (m * (m - 1) / 2) as usize;
    let count_ok = blocks >= required_blocks;
    let rank_required = k * (k + 1) / 2;
    let quad: Vec<Vec<Rational>> = ws
        .weights
        .iter()
        .map(|w| {
            let mut row = Vec::with_capacity(rank_required);
            for i in 0..k {
                for j in i..k {
                    row.push(Rational::from_int(w[i] * w[j]));
                }
            }
            row
        })
        .collect();
    let quadratic_rank = rational_rank(quad);
    let rank_ok = quadratic_rank == rank_required;
    ObstructionReport {
        m,
        k,
        critical_dim,
        blocks,
        required_blocks,
        count_ok,
        quadratic_rank,
        rank_required,
        rank_ok,
        passes: count_ok && rank_ok,
    }
}

/// A default weight enumeration in the paper's style: basis vectors, then
/// runs of consecutive ones, padded with scaled basis vectors until
/// `floor(q_m / 2)` blocks are filled. Used when no explicit weight set is
/// supplied (for example `obstruct` on `m > 5`, where the count bound fails
/// for every choice).
pub fn default_weight_set(m: u32) -> WeightSet {
    let k = (m - 1) as usize;
    let q = crate::critical_dimension(m, 2);
    let blocks = q / 2;
    let mut weights: Vec<Vec<i64>> = Vec::with_capacity(blocks);
    'outer: for len in 1..=k {
        for start in 0..=(k - len) {
            let mut w = vec![0i64; k];
            for x in w.iter_mut().skip(start).take(len) {
                *x = 1;
            }
            weights.push(w);
            if weights.len() == blocks {
                break 'outer;
            }
        }
    }
    let mut scale = 2i64;
    while weights.len() < blocks {
        for i in 0..k {
            let mut w = vec![0i64; k];
            w[i] = scale;
            weights.push(w);
            if weights.len() == blocks {
                break;
            }
        }
        scale += 1;
    }
    WeightSet {
        k,
        weights,
        fixed: q % 2 == 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn sin1() -> TrigPoly {
        TrigPoly::sin_term(1, Rational::one())
    }

    fn cos1() -> TrigPoly {
        TrigPoly::cos_term(1, Rational::one())
    }

    /// The paper's T^2 data: weights {(1), (2)} with fixed coordinate and
    /// loop (2, 1 + sin, cos, 1/2 + sin, cos).
    pub(crate) fn t2_spec() -> AnsatzSpec {
        AnsatzSpec {
            schema_version: 1,
            label: "t2".into(),
            weight_set: WeightSet {
                k: 1,
                weights: vec![vec![1], vec![2]],
                fixed: true,
            },
            order: 2,
            loop_vector: vec![
                TrigPoly::constant(r(2)),
                &TrigPoly::one() + &sin1(),
                cos1(),
                &TrigPoly::constant(Rational::new(1, 2)) + &sin1(),
                cos1(),
            ],
            ordering: None,
        }
    }

    #[test]
    fn t2_generator_is_diag_j_2j_0() {
        let ws = t2_spec().weight_set;
        let x = ws.generator_matrix(0);
        let mut want = vec![vec![r(0); 5]; 5];
        want[0][1] = r(-1);
        want[1][0] = r(1);
        want[2][3] = r(-2);
        want[3][2] = r(2);
        assert_eq!(x, want);
    }

    #[test]
    fn t3_generators() {
        // weights (1,0),(0,1),(1,1),(1,-1): X1 = diag(J,0,J,J,0), X2 = diag(0,J,J,-J,0)
        let ws = WeightSet {
            k: 2,
            weights: vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]],
            fixed: true,
        };
        let x1 = ws.generator_matrix(0);
        assert_eq!(x1[0][1], r(-1));
        assert_eq!(x1[2][3], r(0));
        assert_eq!(x1[4][5], r(-1));
        assert_eq!(x1[6][7], r(-1));
        let x2 = ws.generator_matrix(1);
        assert_eq!(x2[0][1], r(0));
        assert_eq!(x2[2][3], r(-1));
        assert_eq!(x2[6][7], r(1)); // -J block
        let wsz = WeightSet {
            k: 1,
            weights: vec![vec![0]],
            fixed: false,
        };
        let v = vec![cos1(), sin1()];
        assert!(wsz.apply_generator(0, &v).iter().all(TrigPoly::is_zero));
    }

    #[test]
    fn canonical_ordering_t3() {
        let ord = canonical_ordering(2, 2);
        let flat: Vec<Vec<u32>> = ord.into_iter().map(|m| m.0).collect();
        assert_eq!(
            flat,
            vec![
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![0, 2, 0],
                vec![1, 0, 1],
                vec![0, 1, 1],
                vec![0, 0, 2],
            ]
        );
    }

    #[test]
    fn t2_family_columns() {
        let fam = derivative_family(&t2_spec()).unwrap();
        assert_eq!(fam.dimension, 5);
        let flat: Vec<Vec<u32>> = fam.ordering.iter().map(|m| m.0.clone()).collect();
        // Xv, v', X^2 v, X v', v''
        assert_eq!(
            flat,
            vec![vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]
        );
    }

    #[test]
    fn kfree_column_counts() {
        for (k, order, want) in [(1usize, 3u32, 9usize), (1, 6, 27), (3, 2, 14), (4, 2, 20)] {
            assert_eq!(canonical_ordering(k, order).len(), want);
        }
    }

    #[test]
    fn circle_determinant_is_one() {
        let spec = AnsatzSpec {
            schema_version: 1,
            label: "circle".into(),
            weight_set: WeightSet {
                k: 0,
                weights: vec![vec![]],
                fixed: false,
            },
            order: 2,
            loop_vector: vec![cos1(), sin1()],
            ordering: None,
        };
        let fam = derivative_family(&spec).unwrap();
        assert_eq!(osculating_det(&fam), TrigPoly::one());
    }

    #[test]
    fn t2_determinant_matches_display() {
        let fam = derivative_family(&t2_spec()).unwrap();
        let det = osculating_det(&fam);
        let mut want = TrigPoly::constant(r(-12));
        want = &want + &TrigPoly::sin_term(1, r(-4));
        want = &want + &TrigPoly::sin_term(2, Rational::new(5, 2));
        want = &want + &TrigPoly::cos_term(1, r(15));
        want = &want + &TrigPoly::cos_term(2, r(-4));
        assert_eq!(det, want);
    }

    #[test]
    fn constant_loop_gives_zero_determinant() {
        let mut spec = t2_spec();
        spec.loop_vector = vec![
            TrigPoly::constant(r(2)),
            TrigPoly::one(),
            TrigPoly::zero(),
            TrigPoly::one(),
            TrigPoly::zero(),
        ];
        let fam = derivative_family(&spec).unwrap();
        assert!(osculating_det(&fam).is_zero());
    }

    #[test]
    fn wrong_loop_length_rejected() {
        let mut spec = t2_spec();
        spec.loop_vector.pop();
        match spec.validate() {
            Err(Error::Validation(msgs)) => {
                assert!(msgs.iter().any(|m| m.contains("loop length 4")));
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_weights_rejected() {
        let mut spec = t2_spec();
        spec.weight_set.weights = vec![vec![1], vec![1]];
        assert!(matches!(spec.validate(), Err(Error::Validation(_))));
    }

    #[test]
    fn obstruction_examples() {
        // m = 2 with the paper's weights passes
        let report = obstruction_check(2, &t2_spec().weight_set);
        assert!(report.passes);
        assert_eq!(report.quadratic_rank, 1);
        // m = 6: count bound 13 < 15 fails for any weight set
        let report = obstruction_check(6, &default_weight_set(6));
        assert!(!report.passes);
        assert_eq!(report.blocks, 13);
        assert_eq!(report.required_blocks, 15);
        // m = 7: 17 < 21
        let report = obstruction_check(7, &default_weight_set(7));
        assert!(!report.count_ok);
        assert_eq!((report.blocks, report.required_blocks), (17, 21));
    }

    #[test]
    fn rotation_at_is_special_orthogonal() {
        let ws = t2_spec().weight_set;
        let rot = ws.rotation_at(&[Rational::new(1, 3)]);
        assert_eq!(crate::matrix::rational_det(rot.clone()), Rational::one());
        let dot = &(&rot[0][0] * &rot[0][1]) + &(&rot[1][0] * &rot[1][1]);
        assert!(dot.is_zero());
    }
}
