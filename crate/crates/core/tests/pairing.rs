use kummerlog::logdiv::class_equal;
use kummerlog::neron::{CurvePoint, EllipticCurve};
use kummerlog::pairing::{CurvePairing, PairingOptions};
use kummerlog::Error;

fn setup(ring: &str, a: &str) -> CurvePairing {
    let r = kummerlog::parse::parse_ring(ring).unwrap();
    let e = EllipticCurve::parse(&r, a).unwrap();
    CurvePairing::with_bad_primes(&e).unwrap()
}

fn pt(c: &CurvePairing, s: &str) -> CurvePoint {
    c.curve().parse_point(s).unwrap()
}

fn check(c: &CurvePairing, xs: &str, ys: &str) {
    let (x, y) = (pt(c, xs), pt(c, ys));
    let v = c.log_class_pairing(&x, &y, &PairingOptions::default()).unwrap();
    let prof = c.monodromy_profile(&x, &y).unwrap();
    println!("{} {xs} {ys}: nu={} class={:?} T={}", c.curve(), v.class.nu(), v.class.ideal_class_coords(), v.translation);
    assert!(prof.matches(&v.class.nu()), "{xs} {ys}");
    assert!(v.class.scale(v.order as i64).is_trivial());
    for t in c.translation_candidates(&x, &y).into_iter().take(5) {
        let opts = PairingOptions { translation: Some(t), ..Default::default() };
        let w = c.log_class_pairing(&x, &y, &opts).unwrap();
        assert!(class_equal(&w.class, &v.class).unwrap());
    }
}

#[test]
fn three_root_curve_over_minus_five() {
    let c = setup("Q(sqrt -5)", "[0,-2,0,-3,0]");
    for (x, y) in [("(0,0)", "(0,0)"), ("(3,0)", "(3,0)"), ("(-1,0)", "(-1,0)")] {
        check(&c, x, y);
    }
}

#[test]
fn no_rational_translation_is_a_typed_error() {
    // E(K) is E[2] here, and every T meets -y or x + T meets O or -y
    let c = setup("Q(sqrt -5)", "[0,-2,0,-3,0]");
    let r = c.log_class_pairing(&pt(&c, "(3,0)"), &pt(&c, "(0,0)"), &PairingOptions::default());
    assert!(matches!(r, Err(Error::SupportCollision(_))));
}

#[test]
fn eleven_a1_over_gaussian_integers() {
    let c = setup("Z[i]", "[0,-1,1,-10,-20]");
    for k in 1..5 {
        let y = pt(&c, "(5,5)");
        let x = c.curve().mul(&y, k);
        let v = c.log_class_pairing(&x, &y, &PairingOptions::default());
        println!("{k}: {:?}", v.as_ref().map(|v| v.class.nu().to_string()));
    }
    check(&c, "(5,5)", "(5,5)");
}

#[test]
fn rank_one_over_quadratic_rings() {
    let c = setup("Q(sqrt -5)", "[1,0,0,-1,0]");
    check(&c, "(1,0)", "(0,0)");
    let c = setup("Z[i]", "[0,-1,0,-3,0]");
    check(&c, "(-1,1)", "(0,0)");
}
