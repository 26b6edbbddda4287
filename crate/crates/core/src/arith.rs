//! Small exact-arithmetic helpers shared by the other modules: square
//! detection, squarefree parts, primality and a prime sieve.

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Integer square root of a non-negative integer, if it is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

pub fn exact_sqrt_u128(n: u128) -> Option<u128> {
    let r = n.sqrt();
    if r.checked_mul(r) == Some(n) {
        Some(r)
    } else {
        None
    }
}

/// Non-negative rational square root, if `r` is the square of a rational.
///
/// `BigRational` is always stored in lowest terms, so it suffices to test
/// numerator and denominator separately.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    let num = exact_sqrt(r.numer())?;
    let den = exact_sqrt(r.denom())?;
    Some(BigRational::new(num, den))
}

pub fn is_rational_square(r: &BigRational) -> bool {
    rational_sqrt(r).is_some()
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes `<= bound`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Squarefree part of `n >= 1` by trial division.
pub fn squarefree_part_u64(mut n: u64) -> u64 {
    assert!(n > 0, "squarefree part of zero");
    let mut part = 1u64;
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e % 2 == 1 {
            part *= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    part * n
}

/// Smallest prime `p` with `p^2 | n`, if any.
pub fn square_divisor(mut n: u64) -> Option<u64> {
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return Some(d);
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    None
}

/// Trial-division limit used by [`squarefree_part`] on big integers.
pub const TRIAL_DIVISION_LIMIT: u64 = 1 << 20;

/// Squarefree part of a positive big integer.
///
/// Divides out primes up to [`TRIAL_DIVISION_LIMIT`]. A cofactor `r` with
/// `r < L^3` is then either a prime, a product of two distinct primes, or a
/// prime square, and is resolved exactly. Larger unresolved cofactors return
/// `None`.
pub fn squarefree_part(n: &BigUint) -> Option<BigUint> {
    assert!(!n.is_zero(), "squarefree part of zero");
    if let Some(small) = n.to_u64() {
        if small <= TRIAL_DIVISION_LIMIT.saturating_mul(TRIAL_DIVISION_LIMIT) {
            return Some(BigUint::from(squarefree_part_u64(small)));
        }
    }
    let mut rest = n.clone();
    let mut part = BigUint::one();
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_LIMIT {
        let bd = BigUint::from(d);
        if &bd * &bd > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&bd);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e % 2 == 1 {
            part *= &bd;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Some(part);
    }
    let limit = BigUint::from(d);
    if &limit * &limit > rest {
        return Some(part * rest);
    }
    if &limit * &limit * &limit > rest {
        let r = rest.sqrt();
        if &r * &r == rest {
            return Some(part);
        }
        return Some(part * rest);
    }
    None
}

/// Squarefree part of a positive rational, i.e. the squarefree integer `s`
/// with `r = s * q^2` for some rational `q`.
pub fn rational_squarefree_part(r: &BigRational) -> Option<BigUint> {
    assert!(r.is_positive(), "squarefree part of a non-positive rational");
    let num = squarefree_part(r.numer().magnitude())?;
    let den = squarefree_part(r.denom().magnitude())?;
    // num and den are coprime, so the part of num*den is their product.
    Some(num * den)
}

/// Reduce a rational with denominator prime to `p` into `[0, p)`.
pub fn rational_mod(r: &BigRational, p: u64) -> Option<u64> {
    let bp = BigInt::from(p);
    let num = r.numer().mod_floor(&bp).to_u64()?;
    let den = r.denom().mod_floor(&bp).to_u64()?;
    if den == 0 {
        return None;
    }
    Some(mul_mod(num, inv_mod(den, p)?, p))
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(p as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(p as i128) as u64)
}

pub(crate) fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
