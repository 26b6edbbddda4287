mod common;

use std::collections::HashSet;

use common::{q, qi, qs, short_double, tangent_line_third_point};
use congruum::congruent::point_to_triangle;
use congruum::curve::{
    calpha_to_weierstrass, tangent_next, tangent_y_closed_form, two_torsion_calpha, valuation,
    weierstrass_to_calpha, CAlphaPoint, CurveError, CurvePoint, Valuation, WeierstrassCurve,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn pt(x: &str, y: &str) -> CurvePoint {
    CurvePoint::affine(qs(x), qs(y))
}

fn c6() -> WeierstrassCurve {
    WeierstrassCurve::congruent_curve(&BigInt::from(6))
}

#[test]
fn invariants_of_sample_curves() {
    let e = WeierstrassCurve::from_integers(0, 0, 0, -1, 0);
    assert_eq!(
        [&e.b2, &e.b4, &e.b6, &e.b8, &e.delta, &e.c4],
        [&qi(0), &qi(-2), &qi(0), &qi(-1), &qi(64), &qi(48)]
    );
    assert!(e.is_nonsingular());
    let cusp = WeierstrassCurve::from_integers(0, 0, 0, 0, 0);
    assert_eq!(cusp.delta, qi(0));
    assert!(!cusp.is_nonsingular());
    assert_eq!(WeierstrassCurve::default_non_cm().delta, qi(-11));
    assert_eq!(c6().delta, qi(64 * 6i64.pow(6)));
    assert!(c6().is_nonsingular());
}

#[test]
fn group_law_examples() {
    let e = c6();
    let p = pt("12", "36");
    assert_eq!(e.add(&p, &CurvePoint::Infinity).unwrap(), p);
    assert_eq!(e.add(&p, &e.negate(&p)).unwrap(), CurvePoint::Infinity);
    assert_eq!(e.double(&p).unwrap(), pt("25/4", "-35/8"));
    let (x2, y2) = short_double(&qi(-36), &qi(12), &qi(36));
    assert_eq!(e.double(&p).unwrap(), CurvePoint::affine(x2, y2));
    assert_eq!(e.scalar_mul_i64(0, &p).unwrap(), CurvePoint::Infinity);
    assert_eq!(e.scalar_mul_i64(2, &pt("0", "0")).unwrap(), CurvePoint::Infinity);
    let four = e.scalar_mul_i64(4, &p).unwrap();
    assert_eq!(four, e.double(&e.double(&p).unwrap()).unwrap());
    assert!(matches!(e.add(&pt("1", "1"), &p), Err(CurveError::NotOnCurve(_))));
}

#[test]
fn negation_uses_the_long_form_reflection() {
    // y^2 + y = x^3 - x^2 has (0, 0) and (0, -1) as mutual inverses
    let e = WeierstrassCurve::default_non_cm();
    let p = pt("0", "0");
    assert_eq!(e.negate(&p), pt("0", "-1"));
    assert_eq!(e.add(&p, &pt("0", "-1")).unwrap(), CurvePoint::Infinity);
    // (0, 0) has order 5 on this curve
    assert_eq!(e.scalar_mul_i64(5, &p).unwrap(), CurvePoint::Infinity);
    assert_ne!(e.scalar_mul_i64(1, &p).unwrap(), CurvePoint::Infinity);
}

#[test]
fn model_dictionary() {
    let p = CAlphaPoint::from_integers(6, 2, 1).unwrap();
    assert_eq!(calpha_to_weierstrass(&p), pt("12", "36"));
    let o = CAlphaPoint::from_integers(11, 0, 0).unwrap();
    assert_eq!(calpha_to_weierstrass(&o), pt("0", "0"));
    let p1 = CAlphaPoint::new(BigInt::from(6), q(25, 24), q(35, 288)).unwrap();
    assert_eq!(calpha_to_weierstrass(&p1), pt("25/4", "35/8"));
    let back = weierstrass_to_calpha(&BigInt::from(6), &pt("25/4", "35/8")).unwrap().unwrap();
    assert_eq!(back, p1);
    assert!(CAlphaPoint::from_integers(6, 2, 2).is_err());
}

#[test]
fn tangent_examples() {
    let p = CAlphaPoint::from_integers(6, 2, 1).unwrap();
    let p1 = tangent_next(&p).unwrap();
    assert_eq!((p1.x(), p1.y()), (&q(25, 24), &q(35, 288)));
    let (x1, y1) = tangent_line_third_point(&qi(6), &qi(2), &qi(1));
    assert_eq!((p1.x(), p1.y()), (&x1, &y1));
    // a second step lands on the triangle of 4P, not 3P
    let p2 = tangent_next(&p1).unwrap();
    let half_c = point_to_triangle(&p2).unwrap().c() / qi(2);
    assert_eq!(half_c, qs("2094350404801/483435791720"));

    let fib = CAlphaPoint::new(BigInt::from(5), q(5, 4), q(3, 8)).unwrap();
    let f1 = tangent_next(&fib).unwrap();
    assert_eq!(qi(5) * f1.y() * f1.y(), f1.x() * f1.x() * f1.x() - f1.x());
    let (x, y) = tangent_line_third_point(&qi(5), &q(5, 4), &q(3, 8));
    assert_eq!((f1.x(), f1.y()), (&x, &y));

    for t in two_torsion_calpha(&BigInt::from(6)).unwrap() {
        assert!(matches!(tangent_next(&t), Err(CurveError::TwoTorsion { .. })));
    }
}

#[test]
fn listed_half_hypotenuses_are_multiples() {
    // 5/2, 1201/140, 7776485/2639802, 2094350404801/483435791720 come from P, 2P, 3P, 4P
    let want = ["5/2", "1201/140", "7776485/2639802", "2094350404801/483435791720"];
    let e = c6();
    let six = BigInt::from(6);
    for (k, w) in (1..=4).zip(want) {
        let kp = e.scalar_mul_i64(k, &pt("12", "36")).unwrap();
        let c = weierstrass_to_calpha(&six, &kp).unwrap().unwrap();
        assert_eq!(point_to_triangle(&c).unwrap().c() / qi(2), qs(w), "{k}P");
    }
}

#[test]
fn closed_form_denominator() {
    let p = CAlphaPoint::from_integers(6, 2, 1).unwrap();
    let next = tangent_next(&p).unwrap();
    assert_eq!(&tangent_y_closed_form(&p, 2).unwrap(), next.y());
    let wrong = tangent_y_closed_form(&p, 3).unwrap();
    assert_ne!(qi(6) * &wrong * &wrong, next.x() * next.x() * next.x() - next.x());
}

#[test]
fn torsion() {
    let e = c6();
    let t = two_torsion_calpha(&BigInt::from(6)).unwrap();
    let xs: Vec<_> = t.iter().map(|p| p.x().clone()).collect();
    assert_eq!(xs, vec![qi(-1), qi(0), qi(1)]);
    assert!(t.iter().all(|p| p.y().is_zero()));
    let mut group: HashSet<CurvePoint> = t.iter().map(calpha_to_weierstrass).collect();
    group.insert(CurvePoint::Infinity);
    assert_eq!(group.len(), 4);
    for p in &group {
        assert_eq!(e.double(p).unwrap(), CurvePoint::Infinity);
        for r in &group {
            assert!(group.contains(&e.add(p, r).unwrap()), "closed under addition");
        }
    }
}

#[test]
fn valuations() {
    assert_eq!(valuation(&qi(18), 3).unwrap(), Valuation::Finite(2));
    assert_eq!(valuation(&q(7, 25), 5).unwrap(), Valuation::Finite(-2));
    let e = WeierstrassCurve::from_integers(0, 0, 0, -1, 0);
    assert_eq!(valuation(&e.delta, 2).unwrap(), Valuation::Finite(6));
    assert_eq!(valuation(&qi(0), 7).unwrap(), Valuation::Infinite);
    assert!(valuation(&qi(5), 6).is_err());
}

#[test]
fn tangent_chain_never_repeats() {
    // compared as reduced (numerator, denominator) pairs; hashing a
    // rational of a million bits walks its whole continued fraction
    let key = |p: &CAlphaPoint| [p.x().numer(), p.x().denom(), p.y().numer(), p.y().denom()].map(Clone::clone);
    let mut p = CAlphaPoint::from_integers(6, 2, 1).unwrap();
    let mut seen = vec![key(&p)];
    for i in 1..=10 {
        p = tangent_next(&p).unwrap();
        let k = key(&p);
        assert!(!seen.contains(&k), "iterate {i} revisits a point");
        seen.push(k);
    }
}

#[test]
fn tangent_is_negated_double_on_many_points() {
    // iterates of tangent_next and of the group law from several seeds
    let seeds = [
        (6i64, q(2, 1), q(1, 1)),
        (5, q(5, 4), q(3, 8)),
        (7, q(25, 7), q(120, 49)),
        (6, q(-1, 2), q(1, 4)),
    ];
    let mut checked = 0;
    for (alpha, x, y) in seeds {
        let e = WeierstrassCurve::congruent_curve(&BigInt::from(alpha));
        let mut pts = vec![CAlphaPoint::new(BigInt::from(alpha), x, y).unwrap()];
        let base = calpha_to_weierstrass(&pts[0]);
        // multiples k P for k = 1..=25 have modest height
        for k in 2..=25 {
            let kp = e.scalar_mul_i64(k, &base).unwrap();
            pts.push(weierstrass_to_calpha(&BigInt::from(alpha), &kp).unwrap().unwrap());
        }
        for p in &pts {
            let next = tangent_next(p).unwrap();
            let w = calpha_to_weierstrass(p);
            assert_eq!(calpha_to_weierstrass(&next), e.negate(&e.double(&w).unwrap()));
            let (x1, y1) = tangent_line_third_point(&qi(alpha), p.x(), p.y());
            assert_eq!((next.x(), next.y()), (&x1, &y1));
            checked += 1;
        }
    }
    assert!(checked >= 100);
}

#[test]
fn iterated_triangles_keep_the_area() {
    for (alpha, x, y) in [(6i64, q(2, 1), q(1, 1)), (5, q(5, 4), q(3, 8))] {
        let mut p = CAlphaPoint::new(BigInt::from(alpha), x, y).unwrap();
        for _ in 0..5 {
            let t = point_to_triangle(&p).unwrap();
            assert_eq!(t.area(), &qi(alpha));
            p = tangent_next(&p).unwrap();
        }
    }
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-60i64..60, 1i64..20).prop_map(|(n, d)| q(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    (1i64..200, 1i64..50, any::<bool>()).prop_map(|(n, d, neg)| q(if neg { -n } else { n }, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn b_invariants_identity(a in prop::array::uniform5(rational())) {
        let [a1, a2, a3, a4, a6] = a;
        let e = WeierstrassCurve::new(a1, a2, a3, a4, a6);
        prop_assert_eq!(&e.b2 * &e.b6 - &e.b4 * &e.b4, qi(4) * &e.b8);
        prop_assert_eq!(qi(1728) * &e.delta, &e.c4 * &e.c4 * &e.c4 - &e.c6 * &e.c6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_axioms_on_multiples(i in -6i64..=6, j in -6i64..=6, k in -6i64..=6) {
        let e = c6();
        let g = pt("12", "36");
        let [p, r, s] = [i, j, k].map(|n| e.scalar_mul_i64(n, &g).unwrap());
        prop_assert!(e.contains(&p));
        prop_assert_eq!(e.add(&p, &CurvePoint::Infinity).unwrap(), p.clone());
        prop_assert_eq!(e.add(&p, &e.negate(&p)).unwrap(), CurvePoint::Infinity);
        prop_assert_eq!(e.add(&p, &r).unwrap(), e.add(&r, &p).unwrap());
        let left = e.add(&e.add(&p, &r).unwrap(), &s).unwrap();
        let right = e.add(&p, &e.add(&r, &s).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left, e.scalar_mul_i64(i + j + k, &g).unwrap());
    }

    #[test]
    fn valuation_is_additive_and_ultrametric(r in nonzero_rational(), s in nonzero_rational(), pi in 0usize..5) {
        let p = [2u64, 3, 5, 7, 11][pi];
        let v = |x: &BigRational| valuation(x, p).unwrap();
        let (vr, vs) = (v(&r).finite().unwrap(), v(&s).finite().unwrap());
        prop_assert_eq!(v(&(&r * &s)), Valuation::Finite(vr + vs));
        let sum = &r + &s;
        if !sum.is_zero() {
            prop_assert!(v(&sum).finite().unwrap() >= vr.min(vs));
        }
        prop_assert!(v(&BigRational::one()).finite() == Some(0));
    }
}
