//! Congruent numbers: Tunnell-based classification, triangle certificates
//! from primitive Pythagorean triples, and the dictionaries between right
//! triangles, arithmetic progressions of squares and points on
//! `alpha y^2 = x^3 - x`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{self, big};
use crate::curve::{CAlphaPoint, CurveError};
use crate::series::{self, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruentError {
    #[error("{0} is not a positive integer")]
    NotPositive(i64),
    #[error("{alpha} is not squarefree ({prime}^2 divides it)")]
    NotSquarefree { alpha: u64, prime: u64 },
    #[error("({a}, {b}, {c}) is not a rational right triangle with positive sides")]
    NotRightTriangle { a: BigRational, b: BigRational, c: BigRational },
    #[error("m = {m}, n = {n} do not give a primitive triple")]
    InvalidPair { m: u64, n: u64 },
    #[error("area squarefree part could not be determined by trial division")]
    AreaTooLarge,
    #[error("point has y = 0, so it gives no triangle")]
    TwoTorsion,
    #[error("area {area} is not alpha = {alpha} times a rational square")]
    AreaMismatch { area: BigRational, alpha: BigInt },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `alpha = j * n` with `j` in {1, 2} and `n` odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SquarefreeTarget {
    pub alpha: u64,
    pub j: u32,
    pub n: u64,
}

pub fn squarefree_decompose(alpha: i64) -> Result<SquarefreeTarget, CongruentError> {
    if alpha < 1 {
        return Err(CongruentError::NotPositive(alpha));
    }
    let alpha = alpha as u64;
    if let Some(prime) = arith::square_divisor(alpha) {
        return Err(CongruentError::NotSquarefree { alpha, prime });
    }
    let (j, n) = if alpha % 2 == 0 { (2, alpha / 2) } else { (1, alpha) };
    Ok(SquarefreeTarget { alpha, j, n })
}

/// A right triangle with positive rational legs `a, b` and hypotenuse `c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalTriangle {
    a: BigRational,
    b: BigRational,
    c: BigRational,
    area: BigRational,
}

impl RationalTriangle {
    pub fn new(a: BigRational, b: BigRational, c: BigRational) -> Result<Self, CongruentError> {
        let positive = a.is_positive() && b.is_positive() && c.is_positive();
        if !positive || &a * &a + &b * &b != &c * &c {
            return Err(CongruentError::NotRightTriangle { a, b, c });
        }
        let area = &a * &b / big(2);
        Ok(Self { a, b, c, area })
    }

    pub fn from_integers(a: i64, b: i64, c: i64) -> Result<Self, CongruentError> {
        Self::new(big(a), big(b), big(c))
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn area(&self) -> &BigRational {
        &self.area
    }

    pub fn sides(&self) -> [&BigRational; 3] {
        [&self.a, &self.b, &self.c]
    }

    /// Legs in ascending order, then the hypotenuse.
    pub fn sorted_sides(&self) -> [BigRational; 3] {
        let (lo, hi) = if self.a <= self.b { (&self.a, &self.b) } else { (&self.b, &self.a) };
        [lo.clone(), hi.clone(), self.c.clone()]
    }

    pub fn scale(&self, k: &BigRational) -> Result<Self, CongruentError> {
        Self::new(&self.a * k, &self.b * k, &self.c * k)
    }

    /// Squarefree part of the area.
    pub fn area_squarefree_part(&self) -> Result<BigUint, CongruentError> {
        arith::rational_squarefree_part(&self.area).ok_or(CongruentError::AreaTooLarge)
    }
}

impl fmt::Display for RationalTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// `(2mn, m^2 - n^2, m^2 + n^2)` with `m > n > 0`, coprime, opposite parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimitiveTriple {
    m: u64,
    n: u64,
}

impl PrimitiveTriple {
    pub fn new(m: u64, n: u64) -> Result<Self, CongruentError> {
        if m > n && n > 0 && m.gcd(&n) == 1 && (m + n) % 2 == 1 {
            Ok(Self { m, n })
        } else {
            Err(CongruentError::InvalidPair { m, n })
        }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn even_leg(&self) -> u128 {
        2 * self.m as u128 * self.n as u128
    }

    pub fn odd_leg(&self) -> u128 {
        let (m, n) = (self.m as u128, self.n as u128);
        m * m - n * n
    }

    pub fn hypotenuse(&self) -> u128 {
        let (m, n) = (self.m as u128, self.n as u128);
        m * m + n * n
    }

    /// `mn(m^2 - n^2)`.
    pub fn area(&self) -> u128 {
        self.m as u128 * self.n as u128 * self.odd_leg()
    }

    /// Squarefree part of the area. `m`, `n`, `m - n`, `m + n` are pairwise
    /// coprime, so it is the product of their squarefree parts.
    pub fn area_squarefree_part(&self) -> u128 {
        [self.m, self.n, self.m - self.n, self.m + self.n]
            .iter()
            .map(|&f| arith::squarefree_part_u64(f) as u128)
            .product()
    }

    /// Sides ordered `(m^2 - n^2, 2mn, m^2 + n^2)`.
    pub fn triangle(&self) -> RationalTriangle {
        let r = |v: u128| BigRational::from_integer(BigInt::from(v));
        RationalTriangle::new(r(self.odd_leg()), r(self.even_leg()), r(self.hypotenuse()))
            .expect("primitive triple is a right triangle")
    }
}

/// Valid `(m, n)` pairs with `m <= m_bound`, `m` ascending then `n` ascending.
pub fn primitive_pairs(m_bound: u64) -> impl Iterator<Item = PrimitiveTriple> {
    (2..=m_bound).flat_map(pairs_with_m)
}

fn pairs_with_m(m: u64) -> impl Iterator<Item = PrimitiveTriple> {
    // n must have the opposite parity to m
    let start = if m % 2 == 0 { 1 } else { 2 };
    (start..m).step_by(2).filter_map(move |n| PrimitiveTriple::new(m, n).ok())
}

/// If `alpha` is the area of a multiple of `triple`, that multiple.
fn certificate_from(alpha: u64, triple: &PrimitiveTriple) -> Option<RationalTriangle> {
    let area = triple.area();
    let alpha = alpha as u128;
    if area % alpha != 0 {
        return None;
    }
    // area / alpha is a rational square iff it is an integer square, since
    // alpha is squarefree
    let beta = arith::exact_sqrt_u128(area / alpha)?;
    let inv = BigRational::new(BigInt::one(), BigInt::from(beta));
    Some(triple.triangle().scale(&inv).expect("positive scale"))
}

/// Scan `(m, n)` with `m <= bound` for a triangle of area exactly `alpha`.
/// Returns the first hit in `m`-ascending order.
pub fn certificate_search(alpha: u64, bound: u64) -> Option<RationalTriangle> {
    primitive_pairs(bound).find_map(|t| certificate_from(alpha, &t))
}

/// Parallel form of [`certificate_search`]; `m` values are partitioned
/// across workers and the smallest `m` hit wins, so the result matches the
/// serial scan.
pub fn certificate_search_par(alpha: u64, bound: u64) -> Option<RationalTriangle> {
    (2..=bound)
        .into_par_iter()
        .find_map_first(|m| pairs_with_m(m).find_map(|t| certificate_from(alpha, &t)))
}

pub const CONDITIONAL_CAVEAT: &str = "c_j(n) = 0 and no triangle was found within the search bound; \
congruence would follow from the Birch and Swinnerton-Dyer conjecture, or unconditionally \
if the associated Shafarevich-Tate group (equivalently S_alpha) is finite";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CongruenceVerdict {
    /// `c_j(n) != 0`, which rules out congruence unconditionally.
    NotCongruent { coefficient: BigInt },
    Congruent { certificate: RationalTriangle },
    /// `c_j(n) = 0` but nothing was found up to `bound`.
    LikelyCongruent { bound: u64 },
}

impl CongruenceVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            CongruenceVerdict::NotCongruent { .. } => "NotCongruent",
            CongruenceVerdict::Congruent { .. } => "Congruent",
            CongruenceVerdict::LikelyCongruent { .. } => "LikelyCongruent",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub target: SquarefreeTarget,
    pub coefficient: BigInt,
    pub verdict: CongruenceVerdict,
}

pub fn classify(alpha: i64, search_bound: u64) -> Result<Classification, CongruentError> {
    let target = squarefree_decompose(alpha)?;
    let coefficient = series::tunnell_coefficient(target.j, target.n as usize)?;
    let verdict = if !coefficient.is_zero() {
        CongruenceVerdict::NotCongruent { coefficient: coefficient.clone() }
    } else {
        match certificate_search(target.alpha, search_bound) {
            Some(certificate) => CongruenceVerdict::Congruent { certificate },
            None => CongruenceVerdict::LikelyCongruent { bound: search_bound },
        }
    };
    Ok(Classification { target, coefficient, verdict })
}

/// Distinct squarefree parts of `mn(m^2 - n^2)` over pairs with `m <= m_bound`.
pub fn enumerate_congruent(m_bound: u64) -> BTreeSet<u128> {
    primitive_pairs(m_bound).map(|t| t.area_squarefree_part()).collect()
}

/// The part of [`enumerate_congruent`] at or below `max_alpha`, with the
/// first `(m, n)` (in `m`-ascending scan order) producing each value.
///
/// A squarefree part `<= max_alpha` forces each of the pairwise coprime
/// factors `m`, `n`, `m - n`, `m + n` to be `s k^2` with `s <= max_alpha`,
/// so only those `m` and `n` are visited. This reaches bounds where the full
/// scan is hopeless (37 first appears at `m = 777925`).
pub fn enumerate_congruent_up_to(m_bound: u64, max_alpha: u64) -> BTreeMap<u64, (u64, u64)> {
    let mut first = BTreeMap::new();
    if m_bound < 2 || max_alpha == 0 {
        return first;
    }
    let sf = squarefree_part_sieve(2 * m_bound);
    let candidates: Vec<u64> = (1..=m_bound).filter(|&k| sf[k as usize] as u64 <= max_alpha).collect();
    for (i, &m) in candidates.iter().enumerate() {
        let sm = sf[m as usize] as u64;
        for &n in &candidates[..i] {
            if (m - n) % 2 == 0 {
                continue;
            }
            let mut part = sm * sf[n as usize] as u64;
            if part > max_alpha {
                continue;
            }
            part *= sf[(m - n) as usize] as u64;
            if part > max_alpha {
                continue;
            }
            part *= sf[(m + n) as usize] as u64;
            if part > max_alpha || m.gcd(&n) != 1 {
                continue;
            }
            first.entry(part).or_insert((m, n));
        }
    }
    first
}

/// `sf[k]` = squarefree part of `k` for `k <= limit` (`sf[0] = 0`).
fn squarefree_part_sieve(limit: u64) -> Vec<u32> {
    let limit = limit as usize;
    let mut sf: Vec<u32> = (0..=limit as u32).collect();
    let mut p = 2usize;
    while p * p <= limit {
        let q = p * p;
        for k in (q..=limit).step_by(q) {
            while sf[k] as usize % q == 0 {
                sf[k] /= q as u32;
            }
        }
        p += 1;
    }
    sf
}

/// Put `t` in the form `lambda (2mn, m^2 - n^2, m^2 + n^2)` and return
/// `(x, y)` on `C_alpha` with `x = m/n`, where `alpha` is the squarefree part
/// of the area.
pub fn triangle_to_point(t: &RationalTriangle) -> Result<CAlphaPoint, CongruentError> {
    let alpha = BigInt::from(t.area_squarefree_part()?);
    triangle_to_point_with_alpha(t, &alpha)
}

/// As [`triangle_to_point`], with `alpha` supplied; the area must be
/// `alpha` times a rational square.
pub fn triangle_to_point_with_alpha(
    t: &RationalTriangle,
    alpha: &BigInt,
) -> Result<CAlphaPoint, CongruentError> {
    let alpha_q = BigRational::from_integer(alpha.clone());
    let s = arith::rational_sqrt(&(t.area() / &alpha_q)).ok_or_else(|| CongruentError::AreaMismatch {
        area: t.area().clone(),
        alpha: alpha.clone(),
    })?;
    let (even, odd) = split_legs(t);
    // (c + odd) / even = 2m^2 / 2mn = m / n
    let x = (t.c() + odd) / even;
    let y = big(2) * &x * s / even;
    Ok(CAlphaPoint::new(alpha.clone(), x, y)?)
}

/// (even leg, odd leg) of the primitive integer triple underlying `t`.
fn split_legs(t: &RationalTriangle) -> (&BigRational, &BigRational) {
    // scale a : b to coprime integers; exactly one of them is even
    let ratio = t.a() / t.b();
    if ratio.numer().is_even() {
        (t.a(), t.b())
    } else {
        (t.b(), t.a())
    }
}

/// Triangle `(|x^2 - 1|/|y|, 2|x|/|y|, (x^2 + 1)/|y|)` of area `alpha`.
pub fn point_to_triangle(p: &CAlphaPoint) -> Result<RationalTriangle, CongruentError> {
    let (x, y) = (p.x(), p.y());
    if y.is_zero() {
        return Err(CongruentError::TwoTorsion);
    }
    let one = BigRational::one();
    let x2 = x * x;
    let ay = y.abs();
    RationalTriangle::new(
        (&x2 - &one).abs() / &ay,
        big(2) * x.abs() / &ay,
        (&x2 + &one) / &ay,
    )
}

/// `d - alpha, d, d + alpha` all squares of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruumWitness {
    pub d: BigRational,
    pub alpha: BigRational,
}

/// `d = (c/2)^2`; with area `A`, `d - A = ((a-b)/2)^2` and `d + A = ((a+b)/2)^2`.
pub fn congruum_ap(t: &RationalTriangle) -> CongruumWitness {
    let half_c = t.c() / big(2);
    let d = &half_c * &half_c;
    let alpha = t.area().clone();
    assert!(
        verify_square_ap(&alpha, &d),
        "internal error: congruum of {t} is not an arithmetic progression of squares"
    );
    CongruumWitness { d, alpha }
}

pub fn verify_square_ap(alpha: &BigRational, d: &BigRational) -> bool {
    if !d.is_positive() {
        return false;
    }
    arith::is_rational_square(d)
        && arith::is_rational_square(&(d - alpha))
        && arith::is_rational_square(&(d + alpha))
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NoUnitAreaReport {
    pub bound: u64,
    /// `(x, y)` grid points examined for `x^4 - y^4 = z^2`.
    pub quartic_pairs_scanned: u64,
    /// Primitive `(m, n)` pairs examined.
    pub triple_pairs_scanned: u64,
    /// `(x, y, z)` solutions found; non-empty would contradict Fermat.
    pub quartic_solutions: Vec<(u64, u64, u128)>,
    /// Pairs whose area is a perfect square.
    pub unit_area_pairs: Vec<(u64, u64)>,
}

impl NoUnitAreaReport {
    pub fn is_empty(&self) -> bool {
        self.quartic_solutions.is_empty() && self.unit_area_pairs.is_empty()
    }
}

/// Exhaustive check of `x^4 - y^4 = z^2` for `0 < x, y <= bound` and of the
/// areas of all primitive triples with `m <= bound`.
pub fn no_unit_area_search(bound: u64) -> NoUnitAreaReport {
    let mut report = NoUnitAreaReport { bound, ..Default::default() };
    for x in 1..=bound {
        let x4 = (x as u128).pow(4);
        for y in 1..=bound {
            report.quartic_pairs_scanned += 1;
            let y4 = (y as u128).pow(4);
            if y4 >= x4 {
                continue;
            }
            if let Some(z) = arith::exact_sqrt_u128(x4 - y4) {
                report.quartic_solutions.push((x, y, z));
            }
        }
    }
    for t in primitive_pairs(bound) {
        report.triple_pairs_scanned += 1;
        if t.area_squarefree_part() == 1 {
            report.unit_area_pairs.push((t.m(), t.n()));
        }
    }
    report
}
