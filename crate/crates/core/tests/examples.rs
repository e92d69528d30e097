//! Worked examples for each module, run against the public API.

use num_bigint::BigInt;
use num_rational::BigRational;

use kummerlog::logdiv::{
    class_equal, kummer_fppf_group, kummer_log_group, log_pic_class, n_lifting, theta_n,
    FracDivisorModZ, MarkedBase, RationalDivisor,
};
use kummerlog::neron::{
    bad_reduction, reduction_component, tate, ComponentGroup, CurvePoint, EllipticCurve, KodairaType,
};
use kummerlog::numring::{
    factor_element, is_principal, pic_of_open, units_mod_n, FractionalIdeal, NumberRing,
};
use kummerlog::pairing::{monodromy_pairing, CurvePairing, PairingOptions};
use kummerlog::{Error, QmodZ};

fn ring(s: &str) -> NumberRing {
    NumberRing::parse(s).unwrap()
}

fn q(a: i64, b: i64) -> QmodZ {
    QmodZ::from_fraction(a, b)
}

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

mod numring {
    use super::*;

    #[test]
    fn factorization() {
        let z = ring("Z");
        let f = factor_element(&z, &z.int(12)).unwrap();
        let exps: Vec<(u64, i64)> = f.iter().map(|(p, e)| (p.p(), e)).collect();
        assert_eq!(exps, vec![(2, 2), (3, 1)]);

        let k = ring("Q(sqrt -5)");
        let p2 = k.parse_prime("(2, 1+w)").unwrap();
        let f = factor_element(&k, &k.int(2)).unwrap();
        assert_eq!(f.iter().collect::<Vec<_>>(), vec![(&p2, 2)]);
        let f = factor_element(&k, &k.parse_element("w").unwrap()).unwrap();
        let (p5, e) = f.iter().next().unwrap();
        assert_eq!((p5.p(), e, f.iter().count()), (5, 1, 1));
    }

    #[test]
    fn principality() {
        let z = ring("Z");
        let five = FractionalIdeal::prime(&z, &z.parse_prime("(5)").unwrap());
        let g = is_principal(&z, &five).unwrap().unwrap();
        assert!(g == z.int(5) || g == z.int(-5));

        let k = ring("Q(sqrt -5)");
        let p2 = FractionalIdeal::prime(&k, &k.parse_prime("(2, 1+w)").unwrap());
        assert!(is_principal(&k, &p2).unwrap().is_none());
        let g = is_principal(&k, &p2.pow(2)).unwrap().unwrap();
        assert!(g == k.int(2) || g == k.int(-2));
    }

    #[test]
    fn class_groups() {
        assert!(ring("Z").class_group().unwrap().is_trivial());
        assert!(ring("Z[i]").class_group().unwrap().is_trivial());
        let k = ring("Q(sqrt -5)");
        let cl = k.class_group().unwrap();
        assert_eq!(cl.invariants(), &[2]);
        let p2 = FractionalIdeal::prime(&k, &k.parse_prime("(2, 1+w)").unwrap());
        assert_eq!(cl.dlog(&p2).unwrap(), vec![1]);
    }

    #[test]
    fn units_modulo_squares() {
        let z = ring("Z");
        let u = units_mod_n(&z, &[], 2).unwrap();
        assert_eq!((u.invariants.clone(), u.representatives.clone()), (vec![2], vec![z.int(-1)]));
        let u = units_mod_n(&z, &[z.parse_prime("(5)").unwrap()], 2).unwrap();
        assert_eq!(u.order(), 4);
        let gi = ring("Z[i]");
        let u = units_mod_n(&gi, &[], 2).unwrap();
        assert_eq!(u.order(), 2);
        let i = gi.parse_element("i").unwrap();
        assert!(u.representatives == vec![i.clone()] || u.representatives == vec![-i]);
    }

    #[test]
    fn picard_of_open_subsets() {
        let z = ring("Z");
        assert!(pic_of_open(&z, &[z.parse_prime("(7)").unwrap()]).unwrap().is_trivial());
        let k = ring("Q(sqrt -5)");
        let p2 = k.parse_prime("(2, 1+w)").unwrap();
        assert!(pic_of_open(&k, &[p2]).unwrap().is_trivial());
        let p5 = k.primes_above(5).unwrap().remove(0);
        assert_eq!(pic_of_open(&k, &[p5]).unwrap().invariants(), &[2]);
    }
}

mod logdiv {
    use super::*;

    fn z5() -> MarkedBase {
        MarkedBase::parse("Z", "(5)").unwrap()
    }

    fn m5() -> MarkedBase {
        MarkedBase::parse("Q(sqrt -5)", "(2, 1+w)").unwrap()
    }

    fn class(b: &MarkedBase, s: &str) -> kummerlog::logdiv::LogPicClass {
        log_pic_class(&RationalDivisor::parse(b, s).unwrap()).unwrap()
    }

    #[test]
    fn classes() {
        assert!(class(&z5(), "3*(5)").is_trivial());
        let c = class(&m5(), "(2, 1+w)");
        assert_eq!(c.order(), 2);
        let h = class(&z5(), "1/2*(5)");
        assert!(h.add(&h).unwrap().is_trivial());
    }

    #[test]
    fn equality() {
        let b = z5();
        let three = RationalDivisor::principal(&b, &b.ring().int(3)).unwrap();
        let d = RationalDivisor::parse(&b, "1/2*(5)").unwrap();
        let c1 = log_pic_class(&d).unwrap();
        let c2 = log_pic_class(&d.add(&three).unwrap()).unwrap();
        assert!(class_equal(&c1, &c2).unwrap());
        assert!(!class_equal(&class(&b, "1/3*(5)"), &class(&b, "2/3*(5)")).unwrap());

        let b = m5();
        let two = RationalDivisor::principal(&b, &b.ring().int(2)).unwrap();
        let lhs = RationalDivisor::parse(&b, "3/2*(2, 1+w)").unwrap();
        let rhs = RationalDivisor::parse(&b, "-1/2*(2, 1+w)").unwrap().add(&two).unwrap();
        assert!(class_equal(&log_pic_class(&lhs).unwrap(), &log_pic_class(&rhs).unwrap()).unwrap());
    }

    #[test]
    fn orders() {
        assert_eq!(class(&z5(), "1/3*(5)").order(), 3);
        assert_eq!(class(&m5(), "1/2*(2, 1+w)").order(), 4);
        assert_eq!(class(&z5(), "0").order(), 1);
    }

    #[test]
    fn fractional_parts() {
        let b = z5();
        let p5 = b.primes()[0].clone();
        assert_eq!(class(&b, "1/2*(5)").nu().coefficient(&p5), q(1, 2));
        assert!(class(&b, "2*(5) + (7)").nu().is_zero());
        assert_eq!(class(&b, "1/3*(5) + 4*(7)").nu().coefficient(&p5), q(1, 3));
    }

    #[test]
    fn theta_and_liftings() {
        let b = z5();
        let p5 = b.primes()[0].clone();
        let w = FracDivisorModZ::from_pairs(&b, &[(p5.clone(), q(1, 2))]).unwrap();
        assert!(theta_n(&w, 2).unwrap().is_trivial());
        let w = FracDivisorModZ::from_pairs(&b, &[(p5.clone(), q(3, 4))]).unwrap();
        assert_eq!(n_lifting(&w, 4).unwrap(), RationalDivisor::prime(&b, &p5, r(3, 1)).unwrap());

        let b = m5();
        let p2 = b.primes()[0].clone();
        let w = FracDivisorModZ::from_pairs(&b, &[(p2.clone(), q(1, 2))]).unwrap();
        assert!(!theta_n(&w, 2).unwrap().is_trivial());
        assert_eq!(n_lifting(&w, 2).unwrap(), RationalDivisor::prime(&b, &p2, r(1, 1)).unwrap());
        assert!(theta_n(&FracDivisorModZ::zero(&b), 2).unwrap().is_trivial());
        assert!(n_lifting(&FracDivisorModZ::zero(&b), 2).unwrap().is_zero());
    }

    #[test]
    fn kummer_groups() {
        let z = ring("Z");
        assert_eq!(kummer_fppf_group(&z, &[], 2).unwrap().order(), 2);
        assert_eq!(kummer_fppf_group(&z, &[z.parse_prime("(5)").unwrap()], 2).unwrap().order(), 4);
        assert_eq!(kummer_fppf_group(&ring("Q(sqrt -5)"), &[], 2).unwrap().order(), 4);

        assert_eq!(kummer_log_group(&z5(), 2).unwrap().order(), 4);
        let empty = MarkedBase::parse("Z", "").unwrap();
        for n in 1..=6 {
            let g = kummer_log_group(&empty, n).unwrap();
            assert_eq!(g.order(), kummer_fppf_group(&z, &[], n).unwrap().order());
        }
        // both presentations give 4 here: ker theta_2 is trivial
        let g = kummer_log_group(&m5(), 2).unwrap();
        assert_eq!((g.order(), g.open_order, g.kernel.len()), (4, 4, 1));
    }
}

mod neron {
    use super::*;

    fn curve(a: [i64; 5]) -> EllipticCurve {
        EllipticCurve::from_ints(&ring("Z"), a).unwrap()
    }

    fn prime(p: u64) -> kummerlog::numring::PrimeIdeal {
        ring("Z").primes_above(p).unwrap().remove(0)
    }

    #[test]
    fn reduction_types() {
        let e = curve([0, -1, 1, -10, -20]);
        let t = tate(&e, &prime(11)).unwrap();
        assert_eq!(t.kodaira(), KodairaType::In(5));
        assert_eq!(t.component_group().invariants(), &[5]);
        assert_eq!(tate(&e, &prime(7)).unwrap().kodaira(), KodairaType::I0);
        let bad: Vec<u64> = bad_reduction(&e).unwrap().iter().map(|r| r.prime().p()).collect();
        assert_eq!(bad, vec![11]);

        let e = curve([0, -2, 0, -3, 0]);
        let t = tate(&e, &prime(3)).unwrap();
        assert_eq!(t.kodaira(), KodairaType::In(2));
        assert_eq!(t.component_group().order(), 2);
    }

    #[test]
    fn component_groups() {
        let g = ComponentGroup::of_type(KodairaType::In(5));
        for i in 1..5 {
            for j in 1..5 {
                assert_eq!(g.pairing(i, j).unwrap(), q((i * j) as i64, 5));
            }
        }
        assert_eq!(ComponentGroup::of_type(KodairaType::II).order(), 1);
        assert_eq!(ComponentGroup::of_type(KodairaType::III).pairing(1, 1).unwrap(), q(1, 2));
    }

    #[test]
    fn components_of_points() {
        let e = curve([0, -2, 0, -3, 0]);
        let p = e.point(e.ring().int(0), e.ring().int(0)).unwrap();
        assert_eq!(reduction_component(&e, &p, &prime(3)).unwrap().coords, vec![1]);
        // a point with good reduction at 3
        let q = e.point(e.ring().int(-1), e.ring().int(0)).unwrap();
        assert_eq!(reduction_component(&e, &q, &prime(3)).unwrap().component, 0);

        let e = curve([0, -1, 1, -10, -20]);
        let p = e.point(e.ring().int(5), e.ring().int(5)).unwrap();
        let c = reduction_component(&e, &p, &prime(11)).unwrap();
        assert_eq!(c.group_invariants, vec![5]);
        assert_ne!(c.component, 0);
        assert_eq!((5 * c.coords[0]) % 5, 0);
    }
}

mod pairing {
    use super::*;

    fn setup(a: [i64; 5]) -> CurvePairing {
        CurvePairing::with_bad_primes(&EllipticCurve::from_ints(&ring("Z"), a).unwrap()).unwrap()
    }

    fn pt(c: &CurvePairing, x: i64, y: i64) -> CurvePoint {
        let z = c.curve().ring();
        c.curve().point(z.int(x), z.int(y)).unwrap()
    }

    #[test]
    fn monodromy_values() {
        let c = setup([0, -2, 0, -3, 0]);
        let p = pt(&c, 0, 0);
        let three = ring("Z").primes_above(3).unwrap().remove(0);
        assert_eq!(monodromy_pairing(c.curve(), &p, &p, &three).unwrap(), q(1, 2));
        let prof = c.monodromy_profile(&p, &p).unwrap();
        assert_eq!(prof.get(&three), q(1, 2));

        // 11a1: k^2/5 for the component index k of (5,5)
        let c = setup([0, -1, 1, -10, -20]);
        let p = pt(&c, 5, 5);
        let eleven = ring("Z").primes_above(11).unwrap().remove(0);
        let k = c.reductions()[0].component(&p).unwrap() as i64;
        assert_eq!(monodromy_pairing(c.curve(), &p, &p, &eleven).unwrap(), q(k * k, 5));
    }

    #[test]
    fn trivial_arguments() {
        let c = setup([0, -1, 1, -10, -20]);
        let y = pt(&c, 5, 5);
        let v = c.log_class_pairing(&CurvePoint::Infinity, &y, &PairingOptions::default()).unwrap();
        assert!(v.class.is_trivial());
    }

    #[test]
    fn everywhere_good_reduction_has_empty_profile() {
        // y^2 + xy + e^2 y = x^3 over Q(sqrt 29), e = (5 + sqrt 29)/2
        let k = ring("Q(sqrt 29)");
        let e = EllipticCurve::parse(&k, "[1, 0, 11+5*w, 0, 0]").unwrap();
        assert!(bad_reduction(&e).unwrap().is_empty());
        let c = CurvePairing::with_bad_primes(&e).unwrap();
        let y = CurvePoint::affine(k.int(0), k.int(0));
        assert!(c.monodromy_profile(&y, &y).unwrap().is_empty());
    }

    #[test]
    fn non_torsion_y_is_rejected() {
        let c = setup([1, 0, 0, -1, 0]);
        let p = pt(&c, 1, 0);
        let r = c.log_class_pairing(&p, &p, &PairingOptions::default());
        assert!(matches!(r, Err(Error::NonTorsion(_))));
    }
}
