use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use kummerlog::logdiv::{class_equal, log_pic_class, MarkedBase, RationalDivisor};
use kummerlog::neron::{fiber_geometry, CurvePoint, EllipticCurve, KodairaType};
use kummerlog::numring::{NfElem, NumberRing, PrimeIdeal};
use kummerlog::pairing::{CurvePairing, PairingOptions};

fn bases() -> Vec<MarkedBase> {
    vec![
        MarkedBase::parse("Z", "(5)").unwrap(),
        MarkedBase::parse("Z", "(2), (3)").unwrap(),
        MarkedBase::parse("Q(sqrt -5)", "(2, 1+w)").unwrap(),
        MarkedBase::parse("Q(sqrt -5)", "(3, 1+w)").unwrap(),
        MarkedBase::parse("Z[i]", "(2, 1+i), (5, 2+i)").unwrap(),
    ]
}

/// Marked primes with fractional coefficients plus a few unmarked primes
/// with integer coefficients.
fn divisor(base: &MarkedBase, fracs: &[(i64, i64)], ints: &[i64]) -> RationalDivisor {
    let mut terms: Vec<(PrimeIdeal, BigRational)> = base
        .primes()
        .iter()
        .zip(fracs)
        .map(|(p, &(a, b))| (p.clone(), BigRational::new(BigInt::from(a), BigInt::from(b))))
        .collect();
    let unmarked: Vec<PrimeIdeal> = [2u64, 3, 5, 7, 11]
        .iter()
        .flat_map(|&p| base.ring().primes_above(p).unwrap())
        .filter(|p| !base.is_marked(p))
        .collect();
    for (p, &k) in unmarked.iter().zip(ints) {
        terms.push((p.clone(), BigRational::from_integer(BigInt::from(k))));
    }
    RationalDivisor::new(base, terms).unwrap()
}

fn frac() -> impl Strategy<Value = (i64, i64)> {
    (-12i64..=12, 1i64..=8)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn class_map_is_additive(
        bi in 0usize..5,
        f1 in prop::collection::vec(frac(), 2),
        f2 in prop::collection::vec(frac(), 2),
        i1 in prop::collection::vec(-3i64..=3, 4),
        i2 in prop::collection::vec(-3i64..=3, 4),
    ) {
        let base = &bases()[bi];
        let d1 = divisor(base, &f1, &i1);
        let d2 = divisor(base, &f2, &i2);
        let c1 = log_pic_class(&d1).unwrap();
        let c2 = log_pic_class(&d2).unwrap();
        let c12 = log_pic_class(&d1.add(&d2).unwrap()).unwrap();
        prop_assert!(class_equal(&c12, &c1.add(&c2).unwrap()).unwrap());
        prop_assert_eq!(c12.nu(), c1.nu().add(&c2.nu()));
        prop_assert!(c1.scale(c1.order() as i64).is_trivial());
        prop_assert!(c1.add(&c1.neg()).unwrap().is_trivial());
    }

    #[test]
    fn principal_divisors_are_trivial(bi in 0usize..5, a in -30i64..=30, b in -30i64..=30) {
        prop_assume!(a != 0 || b != 0);
        let base = &bases()[bi];
        let r = base.ring();
        let x = if r.is_integers() {
            prop_assume!(a != 0);
            r.int(a)
        } else {
            NfElem::from_omega_int(r.d(), BigInt::from(a), BigInt::from(b))
        };
        let d = RationalDivisor::principal(base, &x).unwrap();
        prop_assert!(log_pic_class(&d).unwrap().is_trivial());
    }

    #[test]
    fn divisor_display_round_trips(
        bi in 0usize..5,
        f in prop::collection::vec(frac(), 2),
        i in prop::collection::vec(-3i64..=3, 4),
    ) {
        let base = &bases()[bi];
        let d = divisor(base, &f, &i);
        let back = RationalDivisor::parse(base, &d.to_string()).unwrap();
        prop_assert!(back == d);
    }

    #[test]
    fn component_form_is_symmetric_and_bilinear(t in 0usize..26, a in 0usize..16, b in 0usize..16, c in 0usize..16) {
        let types: Vec<KodairaType> = [
            KodairaType::I0, KodairaType::II, KodairaType::III, KodairaType::IV,
            KodairaType::I0Star, KodairaType::IVStar, KodairaType::IIIStar, KodairaType::IIStar,
        ]
        .into_iter()
        .chain((1..=12).map(KodairaType::In))
        .chain((1..=6).map(KodairaType::InStar))
        .collect();
        let t = types[t];
        let g = kummerlog::neron::ComponentGroup::of_type(t);
        let reduced = fiber_geometry(t).reduced_components();
        let pick = |i: usize| reduced[i % reduced.len()];
        let (a, b, c) = (pick(a), pick(b), pick(c));
        prop_assert_eq!(g.pairing(a, b).unwrap(), g.pairing(b, a).unwrap());
        let ab = g.add(a, b).unwrap();
        prop_assert_eq!(
            g.pairing(ab, c).unwrap(),
            &g.pairing(a, c).unwrap() + &g.pairing(b, c).unwrap()
        );
        prop_assert_eq!(g.pairing(0, c).unwrap(), kummerlog::QmodZ::zero());
    }
}

struct Fixture {
    pairing: CurvePairing,
    p: CurvePoint,
    y: CurvePoint,
}

fn fixture(ring: &str, a: [i64; 5], p: (i64, i64), y: (i64, i64)) -> Fixture {
    let r = NumberRing::parse(ring).unwrap();
    let e = EllipticCurve::from_ints(&r, a).unwrap();
    let pairing = CurvePairing::with_bad_primes(&e).unwrap();
    let p = e.point(r.int(p.0), r.int(p.1)).unwrap();
    let y = e.point(r.int(y.0), r.int(y.1)).unwrap();
    Fixture { pairing, p, y }
}

fn fixtures() -> Vec<Fixture> {
    vec![
        fixture("Z", [0, -1, 0, -3, 0], (-1, 1), (0, 0)),
        fixture("Z", [1, 0, 0, -1, 0], (1, 0), (0, 0)),
        fixture("Z", [0, -1, 1, -10, -20], (5, 5), (5, 5)),
        fixture("Z", [0, -1, 0, -4, 4], (4, 6), (0, 2)),
        fixture("Z[i]", [0, -1, 0, -3, 0], (-1, 1), (0, 0)),
        fixture("Q(sqrt -5)", [1, 0, 0, -1, 0], (1, 0), (0, 0)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn components_are_additive(fi in 0usize..6, k in -4i64..=4, l in -4i64..=4) {
        let f = &fixtures()[fi];
        let e = f.pairing.curve();
        let (a, b) = (e.mul(&f.p, k), e.mul(&f.y, l));
        for r in f.pairing.reductions() {
            let g = r.component_group();
            let want = g.add(r.component(&a).unwrap(), r.component(&b).unwrap()).unwrap();
            prop_assert_eq!(r.component(&e.add(&a, &b)).unwrap(), want);
        }
    }

    #[test]
    fn log_pairing_is_additive_in_x(fi in 0usize..6, k in 1i64..=3, l in 1i64..=2) {
        let f = &fixtures()[fi];
        let c = &f.pairing;
        let e = c.curve();
        let (x1, x2) = (e.mul(&f.p, k), e.mul(&f.p, l));
        let x12 = e.add(&x1, &x2);
        let opts = PairingOptions::default();
        let run = |x: &CurvePoint| c.log_class_pairing(x, &f.y, &opts);
        match (run(&x1), run(&x2), run(&x12)) {
            (Ok(v1), Ok(v2), Ok(v12)) => {
                prop_assert!(class_equal(&v12.class, &v1.class.add(&v2.class).unwrap()).unwrap());
                let prof = c.monodromy_profile(&x12, &f.y).unwrap();
                prop_assert!(prof.matches(&v12.class.nu()));
            }
            (r1, r2, r12) => {
                // only a lack of translation points is acceptable
                for r in [r1, r2, r12] {
                    if let Err(err) = r {
                        prop_assert!(matches!(err, kummerlog::Error::SupportCollision(_)), "{err}");
                    }
                }
            }
        }
    }

    #[test]
    fn translation_choice_is_irrelevant(fi in 0usize..6, k in 1i64..=3, pick in 0usize..8) {
        let f = &fixtures()[fi];
        let c = &f.pairing;
        let x = c.curve().mul(&f.p, k);
        let Ok(reference) = c.log_class_pairing(&x, &f.y, &PairingOptions::default()) else {
            return Ok(());
        };
        let ts = c.translation_candidates(&x, &f.y);
        prop_assume!(!ts.is_empty());
        let t = ts[pick % ts.len()].clone();
        let v = c.log_class_pairing(&x, &f.y, &PairingOptions { translation: Some(t), ..Default::default() }).unwrap();
        prop_assert!(class_equal(&v.class, &reference.class).unwrap());
    }
}
