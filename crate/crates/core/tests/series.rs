mod common;

use common::{is_squarefree, naive_g, naive_tunnell};
use congruum::series::{
    eta_like_g, partial_g, theta_series, tunnell_coefficient, tunnell_coefficients, SeriesError,
    TruncatedIntegerSeries, TunnellTable,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn s(c: &[i64]) -> TruncatedIntegerSeries {
    TruncatedIntegerSeries::from_i64(c)
}

#[test]
fn products() {
    assert_eq!(s(&[1, 1, 0]).mul(&s(&[1, -1, 0])).unwrap(), s(&[1, 0, -1]));
    let a = s(&[3, -1, 4, 1, -5]);
    assert_eq!(a.mul(&TruncatedIntegerSeries::one(4)).unwrap(), a);
    let t = TruncatedIntegerSeries::monomial(5, 1, 1);
    assert_eq!(t.mul(&t).unwrap(), TruncatedIntegerSeries::monomial(5, 2, 1));
    assert_eq!(
        s(&[1, 2]).mul(&s(&[1, 2, 3])).unwrap_err(),
        SeriesError::OrderMismatch { left: 1, right: 2 }
    );
}

#[test]
fn binomial_factors() {
    let one = TruncatedIntegerSeries::one(5);
    assert_eq!(one.sparse_binomial_apply(3).unwrap(), s(&[1, 0, 0, -1, 0, 0]));
    assert_eq!(s(&[1, 1, 0, 0]).sparse_binomial_apply(1).unwrap(), s(&[1, 0, -1, 0]));
    let t = TruncatedIntegerSeries::monomial(20, 1, 1);
    let mut want = vec![0i64; 21];
    want[1] = 1;
    want[9] = -1;
    assert_eq!(t.sparse_binomial_apply(8).unwrap(), s(&want));
    assert_eq!(one.sparse_binomial_apply(0).unwrap_err(), SeriesError::ZeroExponent);
}

#[test]
fn g_matches_naive_expansion() {
    let g = eta_like_g(200).unwrap();
    assert_eq!(g.coeffs(), naive_g(200));
    assert_eq!(g.coeff(1), BigInt::from(1));
    assert_eq!(g.coeff(9), BigInt::from(-1));
    // T^16 comes from (1 - T^16) at r = 1 and from (1 - T^{8r}) at r = 2
    assert_eq!(g.coeff(17), BigInt::from(-2));
}

#[test]
fn thetas() {
    assert_eq!(theta_series(1, 10).unwrap(), s(&[1, 0, 2, 0, 0, 0, 0, 0, 2, 0, 0]));
    let mut want = vec![0i64; 21];
    want[0] = 1;
    want[4] = 2;
    want[16] = 2;
    assert_eq!(theta_series(2, 20).unwrap(), s(&want));
    assert_eq!(theta_series(1, 1).unwrap(), s(&[1, 0]));
    assert_eq!(theta_series(3, 10).unwrap_err(), SeriesError::InvalidTheta(3));
}

#[test]
fn known_table_values() {
    let c1 = tunnell_coefficients(1, 23).unwrap();
    let c2 = tunnell_coefficients(2, 23).unwrap();
    let at = |c: &[BigInt], n: usize| c[n - 1].clone();
    for (n, v) in [(1, 1), (3, 2), (11, -2), (17, -4), (19, -2), (5, 0), (7, 0), (15, 0), (23, 0)] {
        assert_eq!(at(&c1, n), BigInt::from(v), "c_1({n})");
    }
    for (n, v) in [(1, 1), (5, 2), (13, -2), (21, -4)] {
        assert_eq!(at(&c2, n), BigInt::from(v), "c_2({n})");
    }
}

#[test]
fn tunnell_matches_naive_product() {
    for j in [1, 2] {
        assert_eq!(tunnell_coefficients(j, 300).unwrap(), naive_tunnell(j as usize, 300));
    }
    let table = TunnellTable::compute(300).unwrap();
    assert_eq!(table.row(1).unwrap(), &naive_tunnell(1, 300)[..]);
    assert_eq!(table.get(2, 157), Some(&naive_tunnell(2, 300)[156]));
    assert_eq!(tunnell_coefficient(1, 157).unwrap(), BigInt::from(0));
}

#[test]
fn residue_classes_force_zero_small() {
    let table = TunnellTable::compute(3000).unwrap();
    for n in (1..=3000u64).step_by(2).filter(|&n| is_squarefree(n)) {
        if n % 8 == 5 || n % 8 == 7 {
            assert_eq!(table.get(1, n as usize).unwrap(), &BigInt::from(0), "c_1({n})");
        }
        if n % 4 == 3 {
            assert_eq!(table.get(2, n as usize).unwrap(), &BigInt::from(0), "c_2({n})");
        }
    }
}

#[test]
fn partial_products_stabilise() {
    let n = 400;
    let g = eta_like_g(n).unwrap();
    for r in 1..=n / 8 {
        let gr = partial_g(r, n).unwrap();
        let upto = (8 * r).min(n);
        assert_eq!(gr.truncate(upto), g.truncate(upto), "r = {r}");
    }
}

fn series_strategy(order: usize) -> impl Strategy<Value = TruncatedIntegerSeries> {
    prop::collection::vec(-50i64..50, order + 1).prop_map(|c| TruncatedIntegerSeries::from_i64(&c))
}

fn triple() -> impl Strategy<Value = (TruncatedIntegerSeries, TruncatedIntegerSeries, TruncatedIntegerSeries)> {
    (0usize..24).prop_flat_map(|n| (series_strategy(n), series_strategy(n), series_strategy(n)))
}

proptest! {
    #[test]
    fn mul_is_commutative_and_associative((a, b, c) in triple()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn mul_distributes((a, b, c) in triple()) {
        let lhs = a.mul(&(&b + &c)).unwrap();
        let rhs = &a.mul(&b).unwrap() + &a.mul(&c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mul_matches_schoolbook((a, b, _) in triple()) {
        let n = a.order();
        prop_assert_eq!(a.mul(&b).unwrap().coeffs(), common::poly_mul(&a.coeffs(), &b.coeffs(), n));
    }

    #[test]
    fn binomial_is_mul_by_factor(a in series_strategy(30), e in 1usize..40) {
        let mut factor = vec![0i64; 31];
        factor[0] = 1;
        if e <= 30 {
            factor[e] = -1;
        }
        prop_assert_eq!(a.sparse_binomial_apply(e).unwrap(), a.mul(&s(&factor)).unwrap());
    }

    #[test]
    fn coefficients_are_prefix_consistent(j in 1u32..=2, n in 1usize..200, extra in 1usize..200) {
        let short = tunnell_coefficients(j, n).unwrap();
        let long = tunnell_coefficients(j, n + extra).unwrap();
        prop_assert_eq!(&long[..n], &short[..]);
    }
}

#[test]
fn huge_coefficients_promote() {
    // 3 m^2 exceeds the native range
    let a = s(&[i64::MAX, i64::MAX, i64::MAX]);
    let sq = a.mul(&a).unwrap();
    let m2 = BigInt::from(i64::MAX).pow(2);
    assert_eq!(sq.coeffs(), vec![m2.clone(), BigInt::from(2) * &m2, BigInt::from(3) * &m2]);
}
