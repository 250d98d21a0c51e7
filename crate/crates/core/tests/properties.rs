//! Property suites: ring laws, evaluation homomorphism, Leibniz,
//! Weierstrass roundtrips, Sturm against an independent isolation oracle,
//! Bareiss against cofactor expansion, and x-independence of the full
//! osculating determinant at random rational rotation points.

use freemap_core::ansatz::{derivative_family, full_osculating_at, osculating_det, AnsatzSpec};
use freemap_core::matrix::{bareiss_det, cofactor_det, rational_det, trig_det};
use freemap_core::rational::Rational;
use freemap_core::ratpoly::RatPoly;
use freemap_core::sturm::count_real_roots;
use freemap_core::trigpoly::TrigPoly;
use freemap_core::weierstrass::{from_weierstrass, to_weierstrass};
use proptest::prelude::*;

#[path = "support/mod.rs"]
mod support;
use support::{intpoly_strategy, nonzero_tangent, oracle, rational_strategy, small_trigpoly, trigpoly_strategy};

// ---------------------------------------------------------------- trig ring

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn trig_mul_commutes(a in trigpoly_strategy(), b in trigpoly_strategy()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn trig_mul_associates(a in small_trigpoly(), b in small_trigpoly(), c in small_trigpoly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn trig_mul_distributes(a in trigpoly_strategy(), b in trigpoly_strategy(), c in trigpoly_strategy()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn evaluation_is_ring_homomorphism(
        a in trigpoly_strategy(),
        b in trigpoly_strategy(),
        t0 in nonzero_tangent(),
    ) {
        let prod = &a * &b;
        prop_assert_eq!(
            prod.eval_weierstrass(&t0),
            &a.eval_weierstrass(&t0) * &b.eval_weierstrass(&t0)
        );
        let sum = &a + &b;
        prop_assert_eq!(
            sum.eval_weierstrass(&t0),
            &a.eval_weierstrass(&t0) + &b.eval_weierstrass(&t0)
        );
    }

    #[test]
    fn leibniz_rule(a in trigpoly_strategy(), b in trigpoly_strategy()) {
        let lhs = (&a * &b).derivative();
        let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_invariants_after_arithmetic(a in rational_strategy(), b in rational_strategy()) {
        use num_integer::Integer;
        use num_traits::Signed;
        for v in [&a + &b, &a * &b, &a - &b] {
            prop_assert!(v.denom().is_positive());
            prop_assert!(v.numer().gcd(v.denom()) == num_bigint::BigInt::from(1));
        }
    }
}

// ------------------------------------------------------------- weierstrass

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn weierstrass_roundtrip_pointwise(a in trigpoly_strategy(), t0 in nonzero_tangent()) {
        let w = to_weierstrass(&a);
        // minimality and degree bound
        prop_assert!(w.numerator.is_zero() || !RatPoly::one_plus_t_squared().divides(&w.numerator));
        if let Some(d) = w.numerator.degree() {
            prop_assert!(d <= 2 * a.max_frequency() as usize);
        }
        prop_assert_eq!(w.eval(&t0), a.eval_weierstrass(&t0));
        // full inverse roundtrip
        prop_assert_eq!(from_weierstrass(&w), a);
    }

    #[test]
    fn infinity_sign_consistent_with_pi(a in trigpoly_strategy()) {
        use freemap_core::weierstrass::InfinitySign;
        let w = to_weierstrass(&a);
        let at_pi = a.eval_at_pi();
        match w.value_at_infinity_sign() {
            InfinitySign::Positive => prop_assert!(at_pi.is_positive()),
            InfinitySign::Negative => prop_assert!(at_pi.is_negative()),
            InfinitySign::ZeroLimit => prop_assert!(at_pi.is_zero()),
        }
    }
}

// ------------------------------------------------------------------- sturm

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sturm_matches_isolation_oracle(p in intpoly_strategy(8)) {
        prop_assume!(!p.is_zero());
        let sturm = count_real_roots(&p).unwrap();
        let oracle = oracle::count_real_roots(&p);
        prop_assert_eq!(sturm, oracle);
    }

    #[test]
    fn interval_counts_are_additive(p in intpoly_strategy(6), a in -30i64..=-11, c in -10i64..=9, b in 10i64..=30) {
        prop_assume!(!p.is_zero());
        let (a, c, b) = (Rational::from_int(a), Rational::from_int(c), Rational::from_int(b));
        prop_assume!(!p.eval(&a).is_zero() && !p.eval(&b).is_zero() && !p.eval(&c).is_zero());
        let whole = freemap_core::sturm::count_roots_in_interval(&p, &a, &b).unwrap();
        let left = freemap_core::sturm::count_roots_in_interval(&p, &a, &c).unwrap();
        let right = freemap_core::sturm::count_roots_in_interval(&p, &c, &b).unwrap();
        prop_assert_eq!(whole, left + right);
    }

    #[test]
    fn squarefree_stability(p in intpoly_strategy(6)) {
        prop_assume!(!p.is_zero());
        let sf = p.squarefree_part();
        prop_assume!(!sf.is_zero());
        prop_assert_eq!(count_real_roots(&p).unwrap(), count_real_roots(&sf).unwrap());
    }

    #[test]
    fn chain_degrees_strictly_decrease(p in intpoly_strategy(8)) {
        prop_assume!(p.degree().map_or(false, |d| d >= 1));
        let chain = freemap_core::sturm::sturm_sequence(&p).unwrap();
        let degs = chain.degrees();
        for w in degs.windows(2) {
            prop_assert!(w[0] > w[1]);
        }
        // first two terms are (primitive rescalings of) p and p'
        prop_assert_eq!(degs[0], p.degree().unwrap());
        prop_assert_eq!(degs[1], p.derivative().degree().unwrap());
    }
}

// ------------------------------------------------------------ determinants

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn bareiss_matches_cofactor(
        n in 3usize..=5,
        seed in proptest::collection::vec((0u32..=2, -4i64..=4, -4i64..=4), 25),
    ) {
        // matrix of trig polys with frequency <= 2
        let mut it = seed.into_iter();
        let m: Vec<Vec<TrigPoly>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let (f, cc, sc) = it.next().unwrap();
                        let mut p = TrigPoly::cos_term(f, Rational::from_int(cc));
                        p = &p + &TrigPoly::sin_term(f, Rational::from_int(sc));
                        p
                    })
                    .collect()
            })
            .collect();
        let (via_pipeline, _) = trig_det(&m);
        let via_cofactor = cofactor_det(&m);
        prop_assert_eq!(via_pipeline, via_cofactor);
    }

    #[test]
    fn bareiss_matches_cofactor_on_rational_polys(
        n in 2usize..=4,
        coeffs in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 0..3), 16),
    ) {
        let mut it = coeffs.into_iter();
        let m: Vec<Vec<RatPoly>> = (0..n)
            .map(|_| (0..n).map(|_| RatPoly::from_integers(&it.next().unwrap())).collect())
            .collect();
        prop_assert_eq!(bareiss_det(m.clone()), cofactor_det(&m));
    }
}

// -------------------------------------------------- ansatz structure checks

fn t2_spec() -> AnsatzSpec {
    serde_json::from_str(freemap_core::registry::fixture_json("t2").unwrap()).unwrap()
}

fn t3_spec() -> AnsatzSpec {
    serde_json::from_str(freemap_core::registry::fixture_json("t3").unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// The factorization claim behind the whole method: the determinant of
    /// the FULL osculating matrix (rotation factor included) at random
    /// rational points equals the z-only determinant at the same loop point.
    #[test]
    fn full_determinant_is_x_independent_t2(
        tx in nonzero_tangent(),
        tz in nonzero_tangent(),
    ) {
        let spec = t2_spec();
        let fam = derivative_family(&spec).unwrap();
        let dz = osculating_det(&fam);
        let full = full_osculating_at(&spec, &[tx], &tz).unwrap();
        prop_assert_eq!(rational_det(full), dz.eval_weierstrass(&tz));
    }

    #[test]
    fn generators_commute(i in 0usize..2, j in 0usize..2) {
        let spec = t3_spec();
        let ws = &spec.weight_set;
        let v = &spec.loop_vector;
        let a = ws.apply_generator(i, &ws.apply_generator(j, v));
        let b = ws.apply_generator(j, &ws.apply_generator(i, v));
        prop_assert_eq!(a, b);
    }
}

proptest! {
    // the 9x9 exact determinant is pricier per case; the t2 suite above
    // already runs 200 cases of the same invariant
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn full_determinant_is_x_independent_t3(
        tx1 in nonzero_tangent(),
        tx2 in nonzero_tangent(),
        tz in nonzero_tangent(),
    ) {
        let spec = t3_spec();
        let fam = derivative_family(&spec).unwrap();
        let dz = osculating_det(&fam);
        let full = full_osculating_at(&spec, &[tx1, tx2], &tz).unwrap();
        prop_assert_eq!(rational_det(full), dz.eval_weierstrass(&tz));
    }
}

// ------------------------------------------------------- family invariants

#[test]
fn column_count_matches_critical_dimension() {
    for (k, order) in [(0usize, 2u32), (1, 2), (1, 3), (1, 6), (2, 2), (3, 2), (4, 2)] {
        let m = k as u32 + 1;
        assert_eq!(
            freemap_core::ansatz::canonical_ordering(k, order).len(),
            freemap_core::critical_dimension(m, order)
        );
    }
}

#[test]
fn swapping_columns_negates_determinant() {
    let spec = t2_spec();
    let fam = derivative_family(&spec).unwrap();
    let det = osculating_det(&fam);
    let mut swapped = fam;
    swapped.columns.swap(0, 1);
    swapped.ordering.swap(0, 1);
    let det_swapped = osculating_det(&swapped);
    assert_eq!(det_swapped, -&det);
}

#[test]
fn three_cycle_preserves_determinant() {
    // even permutations leave the numerator unchanged
    let spec = t2_spec();
    let fam = derivative_family(&spec).unwrap();
    let det = osculating_det(&fam);
    let mut cycled = fam;
    cycled.columns.rotate_left(1); // 5-cycle on 5 columns: even
    cycled.ordering.rotate_left(1);
    assert_eq!(osculating_det(&cycled), det);
}

#[test]
fn free_verdict_survives_float_sampling() {
    // smoke test only; the exact certificate is the proof
    let spec = t2_spec();
    let cert = freemap_core::verify::verify(&spec).unwrap();
    assert_eq!(cert.verdict, freemap_core::verify::Verdict::Free);
    let values = freemap_core::search::scan_determinant_values(&spec, 1000).unwrap();
    let max = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    assert!(values.iter().all(|v| *v < 0.0), "constant sign");
    assert!(values.iter().all(|v| v.abs() > 1e-6 * max));
}

#[test]
fn domain_types_roundtrip_through_json() {
    // parse(serialize(x)) == x, and serialization is byte-stable
    let spec = t3_spec();
    let js = serde_json::to_string(&spec).unwrap();
    let back: AnsatzSpec = serde_json::from_str(&js).unwrap();
    assert_eq!(back, spec);
    assert_eq!(serde_json::to_string(&back).unwrap(), js);

    let ext: freemap_core::extended::ExtendedAnsatzSpec =
        serde_json::from_str(freemap_core::registry::fixture_json("t4-extended").unwrap()).unwrap();
    let js = serde_json::to_string(&ext).unwrap();
    let back: freemap_core::extended::ExtendedAnsatzSpec = serde_json::from_str(&js).unwrap();
    assert_eq!(back, ext);

    let collar: freemap_core::collar::CollarProfile =
        serde_json::from_str(freemap_core::registry::fixture_json("collar").unwrap()).unwrap();
    let js = serde_json::to_string(&collar).unwrap();
    let back: freemap_core::collar::CollarProfile = serde_json::from_str(&js).unwrap();
    assert_eq!(back, collar);

    let cert = freemap_core::sturm::certify_sign(
        &RatPoly::from_integers(&[1, -2, 0, 18, 31]),
        freemap_core::sturm::SignDomain::AllReals,
    )
    .unwrap();
    let js = serde_json::to_string(&cert).unwrap();
    let back: freemap_core::sturm::PositivityCertificate = serde_json::from_str(&js).unwrap();
    assert_eq!(back, cert);
}
