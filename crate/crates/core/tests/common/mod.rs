//! Slow, obviously-correct reference computations shared by the
//! integration tests. None of these reuse the library's algorithms.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parse "n" or "n/d".
pub fn qs(s: &str) -> BigRational {
    match s.split_once('/') {
        Some((n, d)) => BigRational::new(n.parse().unwrap(), d.parse().unwrap()),
        None => BigRational::from_integer(s.parse().unwrap()),
    }
}

/// Schoolbook product of two polynomials, truncated to degree `order`.
pub fn poly_mul(a: &[BigInt], b: &[BigInt], order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        for (j, y) in b.iter().enumerate() {
            if i + j > order {
                break;
            }
            out[i + j] += x * y;
        }
    }
    out
}

/// `T prod_{r>=1} (1 - T^{8r})(1 - T^{16r})` by full polynomial products.
pub fn naive_g(order: usize) -> Vec<BigInt> {
    let mut g = vec![BigInt::zero(); order + 1];
    if order >= 1 {
        g[1] = BigInt::one();
    }
    let mut r = 1;
    while 8 * r <= order {
        for e in [8 * r, 16 * r] {
            let mut factor = vec![BigInt::zero(); order + 1];
            factor[0] = BigInt::one();
            if e <= order {
                factor[e] = BigInt::from(-1);
            }
            g = poly_mul(&g, &factor, order);
        }
        r += 1;
    }
    g
}

/// `1 + 2 sum T^{2 j n^2}`.
pub fn naive_theta(j: usize, order: usize) -> Vec<BigInt> {
    let mut t = vec![BigInt::zero(); order + 1];
    t[0] = BigInt::one();
    for n in 1.. {
        let k = 2 * j * n * n;
        if k > order {
            break;
        }
        t[k] = BigInt::from(2);
    }
    t
}

/// `c_j(1..=order)` from the naive expansions.
pub fn naive_tunnell(j: usize, order: usize) -> Vec<BigInt> {
    poly_mul(&naive_g(order), &naive_theta(j, order), order)[1..].to_vec()
}

pub fn is_squarefree(n: u64) -> bool {
    let mut d = 2;
    while d * d <= n {
        if n % (d * d) == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect()
}

/// Projective points of the long Weierstrass curve with integer
/// coefficients over `F_p`, by trying every affine pair `(x, y)`.
pub fn brute_count(a: [i64; 5], p: u64) -> u64 {
    let [a1, a2, a3, a4, a6] = a.map(|v| v.rem_euclid(p as i64) as u64);
    let sq: Vec<u64> = (0..p).map(|y| y * y % p).collect();
    let mut count = 1;
    for x in 0..p {
        let x2 = x * x % p;
        let rhs = (x2 * x % p + a2 * x2 % p + a4 * x % p + a6) % p;
        // y^2 + (a1 x + a3) y, stepping the linear term by additions
        let b = (a1 * x + a3) % p;
        let mut by = 0;
        for &y2 in &sq {
            let mut lhs = y2 + by;
            if lhs >= p {
                lhs -= p;
            }
            if lhs == rhs {
                count += 1;
            }
            by += b;
            if by >= p {
                by -= p;
            }
        }
    }
    count
}

/// Projective points of `X^3 + Y^3 + Z^3 = 0` over `F_p` by enumeration.
pub fn brute_plane_cubic(p: u64) -> u64 {
    let cube = |v: u64| v * v % p * v % p;
    let mut count = 0;
    for x in 0..p {
        for y in 0..p {
            if (cube(x) + cube(y) + 1) % p == 0 {
                count += 1;
            }
        }
    }
    // Z = 0, Y = 1: X^3 = -1
    count + (0..p).filter(|&x| (cube(x) + 1) % p == 0).count() as u64
}

/// Third intersection of the tangent at `(x, y)` with `alpha y^2 = x^3 - x`,
/// from the slope and the sum of the roots of the restricted cubic.
pub fn tangent_line_third_point(
    alpha: &BigRational,
    x: &BigRational,
    y: &BigRational,
) -> (BigRational, BigRational) {
    let slope = (qi(3) * x * x - qi(1)) / (qi(2) * alpha * y);
    // x^3 - alpha (y + s (X - x))^2 - X = 0 has roots x, x, x1
    let x1 = alpha * &slope * &slope - qi(2) * x;
    let y1 = y + &slope * (&x1 - x);
    (x1, y1)
}

/// Tangent-line double on `Y^2 = X^3 + a X + b`: the group-law `2P`.
pub fn short_double(a: &BigRational, x: &BigRational, y: &BigRational) -> (BigRational, BigRational) {
    let slope = (qi(3) * x * x + a) / (qi(2) * y);
    let x2 = &slope * &slope - qi(2) * x;
    let y2 = -(y + &slope * (&x2 - x));
    (x2, y2)
}

/// Rational square test by the definition: numerator and denominator of the
/// reduced fraction are perfect squares.
pub fn is_square(r: &BigRational) -> bool {
    if r < &BigRational::zero() {
        return false;
    }
    let sq = |n: &BigInt| {
        let s = n.sqrt();
        &s * &s == *n
    };
    sq(r.numer()) && sq(r.denom())
}
