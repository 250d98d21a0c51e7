//! Computes the 6-free certificate, spot-checks the numerator at rational
//! half-angle points against direct 27x27 exact determinants, and prints the
//! expected-values JSON to freeze as a golden file.
use freemap_core::ansatz::derivative_family;
use freemap_core::matrix::rational_det;
use freemap_core::rational::Rational;
use freemap_core::registry::fixture_spec;
use freemap_core::verify::verify;

fn main() {
    let spec = fixture_spec("kfree6").unwrap();
    let start = std::time::Instant::now();
    let cert = verify(&spec).unwrap();
    eprintln!("verify took {:?}", start.elapsed());
    let num = &cert.weierstrass.numerator;
    eprintln!(
        "degree {:?}, denom power {}, verdict {:?}",
        num.degree(),
        cert.weierstrass.denom_power,
        cert.verdict
    );

    // independent spot checks: direct exact determinant of the 27x27 family
    let fam = derivative_family(&spec).unwrap();
    let points = [
        Rational::zero(),
        Rational::one(),
        Rational::new(1, 3),
        Rational::new(-2, 1),
        Rational::new(5, 7),
    ];
    for t in &points {
        let m: Vec<Vec<Rational>> = (0..fam.dimension)
            .map(|i| fam.columns.iter().map(|c| c[i].eval_weierstrass(t)).collect())
            .collect();
        let direct = rational_det(m);
        let via_form = cert.weierstrass.eval(t);
        assert_eq!(direct, via_form, "spot check failed at t = {t}");
        eprintln!("spot check t = {t}: ok");
    }

    let (vm, vp) = cert
        .positivity
        .as_ref()
        .map(|p| (p.v_minus_inf, p.v_plus_inf))
        .unwrap();
    let expected = serde_json::json!({
        "published_numerator": num,
        "display_constant": "1/1",
        "denom_power": cert.weierstrass.denom_power,
        "v_minus": vm,
        "v_plus": vp,
        "value_at_zero": cert.value_at_zero,
        "value_at_pi": cert.value_at_pi,
        "verdict": "FREE",
    });
    println!("{}", serde_json::to_string_pretty(&expected).unwrap());
}
