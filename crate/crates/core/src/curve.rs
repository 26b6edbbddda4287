//! Elliptic curves over Q in long Weierstrass form
//!
//! ```text
//! y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
//! ```
//!
//! together with the twisted model `C_alpha: alpha y^2 = x^3 - x` used for
//! congruent numbers. All arithmetic is exact over `BigRational`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::big;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("point {0} is not on the curve")]
    NotOnCurve(String),
    #[error("point ({x}, {y}) is not on alpha y^2 = x^3 - x for alpha = {alpha}")]
    NotOnModel { alpha: BigInt, x: BigRational, y: BigRational },
    #[error("alpha must be a positive integer, got {0}")]
    InvalidAlpha(BigInt),
    #[error("point ({x}, {y}) is 2-torsion; the tangent there is vertical or degenerate")]
    TwoTorsion { x: BigRational, y: BigRational },
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Long Weierstrass curve with its standard invariants.
#[derive(Clone, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub a1: BigRational,
    pub a2: BigRational,
    pub a3: BigRational,
    pub a4: BigRational,
    pub a6: BigRational,
    pub b2: BigRational,
    pub b4: BigRational,
    pub b6: BigRational,
    pub b8: BigRational,
    pub c4: BigRational,
    pub c6: BigRational,
    pub delta: BigRational,
}

impl WeierstrassCurve {
    pub fn new(
        a1: BigRational,
        a2: BigRational,
        a3: BigRational,
        a4: BigRational,
        a6: BigRational,
    ) -> Self {
        let b2 = &a1 * &a1 + big(4) * &a2;
        let b4 = &a1 * &a3 + big(2) * &a4;
        let b6 = &a3 * &a3 + big(4) * &a6;
        let b8 = &b2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3 - &a4 * &a4;
        let delta = -(&b2 * &b2 * &b8) - big(8) * &b4 * &b4 * &b4 - big(27) * &b6 * &b6
            + big(9) * &b2 * &b4 * &b6;
        let c4 = &b2 * &b2 - big(24) * &b4;
        let c6 = -(&b2 * &b2 * &b2) + big(36) * &b2 * &b4 - big(216) * &b6;
        Self { a1, a2, a3, a4, a6, b2, b4, b6, b8, c4, c6, delta }
    }

    pub fn from_integers(a1: i64, a2: i64, a3: i64, a4: i64, a6: i64) -> Self {
        Self::new(big(a1), big(a2), big(a3), big(a4), big(a6))
    }

    /// `y^2 = x^3 + a x + b`.
    pub fn short(a: BigRational, b: BigRational) -> Self {
        let z = BigRational::zero();
        Self::new(z.clone(), z.clone(), z, a, b)
    }

    /// `Y^2 = X^3 - alpha^2 X`, the Weierstrass form of `C_alpha`.
    pub fn congruent_curve(alpha: &BigInt) -> Self {
        let a = BigRational::from_integer(alpha.clone());
        Self::short(-(&a * &a), BigRational::zero())
    }

    /// `y^2 + y = x^3 - x^2`: conductor 11, no complex multiplication,
    /// multiplicative reduction at 11.
    pub fn default_non_cm() -> Self {
        Self::from_integers(0, -1, 1, 0, 0)
    }

    pub fn coefficients(&self) -> [&BigRational; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn is_nonsingular(&self) -> bool {
        !self.delta.is_zero()
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => self.equation_residual(x, y).is_zero(),
        }
    }

    fn equation_residual(&self, x: &BigRational, y: &BigRational) -> BigRational {
        y * y + &self.a1 * x * y + &self.a3 * y
            - (x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6)
    }

    fn check(&self, p: &CurvePoint) -> Result<(), CurveError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(CurveError::NotOnCurve(p.to_string()))
        }
    }

    /// `-(x, y) = (x, -y - a1 x - a3)`.
    pub fn negate(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: -y - &self.a1 * x - &self.a3,
            },
        }
    }

    /// Chord-tangent addition.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint, CurveError> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let slope = if x1 != x2 {
            (y2 - y1) / (x2 - x1)
        } else {
            // same x: either Q = -P or Q = P
            let denom = big(2) * y1 + &self.a1 * x1 + &self.a3;
            if y1 != y2 || denom.is_zero() {
                return CurvePoint::Infinity;
            }
            (big(3) * x1 * x1 + big(2) * &self.a2 * x1 + &self.a4 - &self.a1 * y1) / denom
        };
        let x3 = &slope * &slope + &self.a1 * &slope - &self.a2 - x1 - x2;
        // third intersection is (x3, y1 + slope (x3 - x1)); negate it
        let third_y = y1 + &slope * (&x3 - x1);
        let y3 = -third_y - &self.a1 * &x3 - &self.a3;
        CurvePoint::Affine { x: x3, y: y3 }
    }

    pub fn double(&self, p: &CurvePoint) -> Result<CurvePoint, CurveError> {
        self.add(p, p)
    }

    /// `k * P` by double-and-add; negative `k` uses `-P`.
    pub fn scalar_mul(&self, k: &BigInt, p: &CurvePoint) -> Result<CurvePoint, CurveError> {
        self.check(p)?;
        let base = if k.is_negative() { self.negate(p) } else { p.clone() };
        let mut acc = CurvePoint::Infinity;
        let bits = k.magnitude().to_str_radix(2);
        for bit in bits.chars() {
            acc = self.add_unchecked(&acc, &acc);
            if bit == '1' {
                acc = self.add_unchecked(&acc, &base);
            }
        }
        Ok(acc)
    }

    pub fn scalar_mul_i64(&self, k: i64, p: &CurvePoint) -> Result<CurvePoint, CurveError> {
        self.scalar_mul(&BigInt::from(k), p)
    }
}

impl fmt::Debug for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "WeierstrassCurve[{}, {}, {}, {}, {}]",
            self.a1, self.a2, self.a3, self.a4, self.a6
        )
    }
}

/// A rational point on a Weierstrass curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { x: BigRational, y: BigRational },
}

impl CurvePoint {
    pub fn affine(x: BigRational, y: BigRational) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn from_integers(x: i64, y: i64) -> Self {
        CurvePoint::Affine { x: big(x), y: big(y) }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// Point on `C_alpha: alpha y^2 = x^3 - x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CAlphaPoint {
    alpha: BigInt,
    x: BigRational,
    y: BigRational,
}

impl CAlphaPoint {
    pub fn new(alpha: BigInt, x: BigRational, y: BigRational) -> Result<Self, CurveError> {
        if !alpha.is_positive() {
            return Err(CurveError::InvalidAlpha(alpha));
        }
        if !on_calpha(&alpha, &x, &y) {
            return Err(CurveError::NotOnModel { alpha, x, y });
        }
        Ok(Self { alpha, x, y })
    }

    pub fn from_integers(alpha: i64, x: i64, y: i64) -> Result<Self, CurveError> {
        Self::new(BigInt::from(alpha), big(x), big(y))
    }

    pub fn alpha(&self) -> &BigInt {
        &self.alpha
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    fn is_two_torsion(&self) -> bool {
        self.y.is_zero()
    }
}

impl fmt::Display for CAlphaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) on {} y^2 = x^3 - x", self.x, self.y, self.alpha)
    }
}

/// Does `(x, y)` satisfy `alpha y^2 = x^3 - x`? Checked on cross-multiplied
/// integers, so no gcds are taken.
pub fn on_calpha(alpha: &BigInt, x: &BigRational, y: &BigRational) -> bool {
    let (xn, xd) = (x.numer(), x.denom());
    let (yn, yd) = (y.numer(), y.denom());
    let xd2 = xd * xd;
    alpha * yn * yn * &xd2 * xd == yd * yd * xn * (xn * xn - xd2)
}

/// `(x, y) -> (alpha x, alpha^2 y)`, landing on `Y^2 = X^3 - alpha^2 X`.
pub fn calpha_to_weierstrass(p: &CAlphaPoint) -> CurvePoint {
    let a = BigRational::from_integer(p.alpha.clone());
    CurvePoint::Affine { x: &a * &p.x, y: &a * &a * &p.y }
}

/// Inverse of [`calpha_to_weierstrass`].
pub fn weierstrass_to_calpha(alpha: &BigInt, p: &CurvePoint) -> Result<Option<CAlphaPoint>, CurveError> {
    match p {
        CurvePoint::Infinity => Ok(None),
        CurvePoint::Affine { x, y } => {
            let a = BigRational::from_integer(alpha.clone());
            CAlphaPoint::new(alpha.clone(), x / &a, y / (&a * &a)).map(Some)
        }
    }
}

/// Second intersection of the tangent at `p` with `C_alpha`.
///
/// `x1 = (x^2 + 1)^2 / (4x (x^2 - 1))` and `y1 = -(x^6 - 5x^4 - 5x^2 + 1) / (8 alpha^2 y^3)`.
/// This is the third intersection point itself, i.e. `-2P` in the group law.
///
/// Heights roughly quadruple per step, so the step avoids big gcds: it maps
/// to `Y^2 = X^3 - alpha^2 X`, where points are `(A/e^2, B/e^3)` in lowest
/// terms, doubles in Jacobian coordinates (multiplications only) and strips
/// the common scale, whose primes all divide `2 alpha`.
pub fn tangent_next(p: &CAlphaPoint) -> Result<CAlphaPoint, CurveError> {
    let (x, y) = (&p.x, &p.y);
    if p.is_two_torsion() || x.is_zero() || (x.numer().abs() == *x.denom()) {
        return Err(CurveError::TwoTorsion { x: x.clone(), y: y.clone() });
    }
    let alpha = &p.alpha;
    let alpha2 = alpha * alpha;
    // X = alpha x, Y = alpha^2 y in lowest terms
    let (a, xd) = mul_reduced(x, alpha);
    let (b, yd) = mul_reduced(y, &alpha2);
    let e = &yd / &xd;
    debug_assert!(&e * &xd == yd && &e * &e == xd, "denominators are e^2 and e^3");

    let aa = &a * &a;
    let bb = &b * &b;
    let ee = &e * &e;
    let s = BigInt::from(4) * &a * &bb;
    let m = BigInt::from(3) * &aa - &alpha2 * &ee * &ee;
    let mut x3 = &m * &m - BigInt::from(2) * &s;
    let mut y3 = &m * (&s - &x3) - BigInt::from(8) * &bb * &bb;
    let mut z3 = BigInt::from(2) * &b * &e;
    // the tangent's third point is -2P
    y3 = -y3;

    match two_alpha_primes(alpha) {
        Some(primes) => {
            for q in primes {
                let (q1, q2, q3) = (BigInt::from(q), BigInt::from(q * q), BigInt::from(q).pow(3));
                while (&z3 % &q1).is_zero() && (&x3 % &q2).is_zero() && (&y3 % &q3).is_zero() {
                    z3 /= &q1;
                    x3 /= &q2;
                    y3 /= &q3;
                }
            }
        }
        None => {
            let g = z3.gcd(&x3.gcd(&y3));
            // only the part of g whose square divides x3 and cube divides y3
            let mut lam = g;
            while !((&x3 % (&lam * &lam)).is_zero() && (&y3 % (&lam * &lam * &lam)).is_zero()) {
                lam = lam.gcd(&(&x3 / &lam));
            }
            z3 /= &lam;
            x3 /= &lam * &lam;
            y3 /= &lam * &lam * &lam;
        }
    }
    if z3.is_negative() {
        // (X, Y, Z) ~ (X, -Y, -Z)
        z3 = -z3;
        y3 = -y3;
    }
    let zz = &z3 * &z3;
    // gcd(x3, z3) = gcd(y3, z3) = 1, so only alpha factors can cancel
    let x1 = div_reduced(x3, alpha * &zz, alpha);
    let y1 = div_reduced(y3, &alpha2 * &zz * &z3, &alpha2);
    CAlphaPoint::new(p.alpha.clone(), x1, y1)
}

/// `r * k` in lowest terms, as (numerator, denominator); only factors of
/// `k` can cancel against the denominator.
fn mul_reduced(r: &BigRational, k: &BigInt) -> (BigInt, BigInt) {
    let mut num = r.numer() * k;
    let mut den = r.denom().clone();
    loop {
        let g = small_gcd(&den, k).gcd(&small_gcd(&num, k));
        if g.is_one() {
            return (num, den);
        }
        num /= &g;
        den /= &g;
    }
}

/// `num / den` in lowest terms when every common factor divides `k`.
fn div_reduced(mut num: BigInt, mut den: BigInt, k: &BigInt) -> BigRational {
    loop {
        let g = small_gcd(&num, k).gcd(&small_gcd(&den, k));
        if g.is_one() {
            break;
        }
        num /= &g;
        den /= &g;
    }
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    BigRational::new_raw(num, den)
}

/// `gcd(n, k)` computed as `gcd(n mod k, k)`: linear in the size of `n`.
fn small_gcd(n: &BigInt, k: &BigInt) -> BigInt {
    n.mod_floor(k).gcd(k)
}

/// Distinct primes dividing `2 alpha`, when `alpha` fits in a machine word.
fn two_alpha_primes(alpha: &BigInt) -> Option<Vec<u64>> {
    let mut n = alpha.to_u64()?;
    let mut primes = vec![2];
    while n % 2 == 0 {
        n /= 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            primes.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 2;
    }
    if n > 1 {
        primes.push(n);
    }
    Some(primes)
}

/// The closed-form `y1 = -(x^6 - 5x^4 - 5x^2 + 1) / (8 alpha^k y^3)`.
///
/// `alpha_power = 2` is the exponent consistent with the tangent line;
/// `alpha_power = 3` is the other normalisation in circulation, which only
/// agrees when `alpha = 1`.
pub fn tangent_y_closed_form(p: &CAlphaPoint, alpha_power: u32) -> Result<BigRational, CurveError> {
    let x = &p.x;
    let y = &p.y;
    if p.is_two_torsion() {
        return Err(CurveError::TwoTorsion { x: x.clone(), y: y.clone() });
    }
    let x2 = x * x;
    let x4 = &x2 * &x2;
    let x6 = &x4 * &x2;
    let num = x6 - big(5) * x4 - big(5) * &x2 + big(1);
    let a = BigRational::from_integer(num_traits::pow(p.alpha.clone(), alpha_power as usize));
    Ok(-num / (big(8) * a * y * y * y))
}

/// `(-1, 0), (0, 0), (1, 0)` on `C_alpha`.
pub fn two_torsion_calpha(alpha: &BigInt) -> Result<[CAlphaPoint; 3], CurveError> {
    let z = BigRational::zero();
    Ok([
        CAlphaPoint::new(alpha.clone(), big(-1), z.clone())?,
        CAlphaPoint::new(alpha.clone(), z.clone(), z.clone())?,
        CAlphaPoint::new(alpha.clone(), big(1), z)?,
    ])
}

/// p-adic valuation; `Infinite` is the valuation of zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    /// `self >= k`, treating `Infinite` as larger than everything.
    pub fn at_least(self, k: i64) -> bool {
        self.cmp(&Valuation::Finite(k)) != Ordering::Less
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

fn int_valuation(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `v_p(r)`, the exponent of `p` in `r`.
pub fn valuation(r: &BigRational, p: u64) -> Result<Valuation, CurveError> {
    if !crate::arith::is_prime(p) {
        return Err(CurveError::NotPrime(p));
    }
    if r.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let bp = BigInt::from(p);
    Ok(Valuation::Finite(int_valuation(r.numer(), &bp) - int_valuation(r.denom(), &bp)))
}
