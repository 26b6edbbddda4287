//! Reduction modulo primes `p >= 5`: p-minimal models, point counts by
//! quadratic character sums, traces of Frobenius and the experiments built
//! on them (Hasse bound, supersingular density, Sato-Tate histograms,
//! partial Euler products, reduction types).
//!
//! Counts and traces are exact integers. Floating point appears only in
//! `gamma_p = a_p / (2 sqrt p)` and the semicircle masses.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::One;
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{self, big};
use crate::curve::{valuation, CurveError, Valuation, WeierstrassCurve};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModpError {
    #[error("p = {0} is not supported; reduction is only implemented for primes p >= 5")]
    PrimeTooSmall(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the curve is singular (discriminant 0)")]
    Singular,
    #[error("the curve has bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("p = {0} is not congruent to 1 mod 3")]
    NotOneModThree(u64),
    #[error("histogram needs at least one bin")]
    NoBins,
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

fn check_prime(p: u64) -> Result<(), ModpError> {
    if !arith::is_prime(p) {
        return Err(ModpError::NotPrime(p));
    }
    if p < 5 {
        return Err(ModpError::PrimeTooSmall(p));
    }
    Ok(())
}

/// A model of the curve that is integral and minimal at `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalModel {
    pub p: u64,
    pub curve: WeierstrassCurve,
    /// `k` with the model obtained by `a_i -> p^(ik) a_i` before deflation.
    pub inflation: u32,
    /// Number of `u = p` deflation steps applied afterwards.
    pub deflations: u32,
    pub v_delta: Valuation,
    pub v_c4: Valuation,
}

fn scale(curve: &WeierstrassCurve, u: &BigRational) -> WeierstrassCurve {
    let u2 = u * u;
    let u3 = &u2 * u;
    let u4 = &u2 * &u2;
    let u6 = &u3 * &u3;
    WeierstrassCurve::new(
        &curve.a1 * u,
        &curve.a2 * u2,
        &curve.a3 * u3,
        &curve.a4 * u4,
        &curve.a6 * u6,
    )
}

fn is_p_integral(curve: &WeierstrassCurve, p: u64) -> Result<bool, ModpError> {
    for a in curve.coefficients() {
        if !valuation(a, p)?.at_least(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scale `curve` to a p-integral model, then deflate by `u = p` while
/// `v_p(delta) >= 12` and `v_p(c4) >= 4`.
pub fn minimal_at_p(curve: &WeierstrassCurve, p: u64) -> Result<MinimalModel, ModpError> {
    check_prime(p)?;
    if !curve.is_nonsingular() {
        return Err(ModpError::Singular);
    }
    let mut inflation = 0u32;
    for (a, weight) in curve.coefficients().into_iter().zip([1i64, 2, 3, 4, 6]) {
        if let Valuation::Finite(v) = valuation(a, p)? {
            if v < 0 {
                let need = (-v + weight - 1) / weight;
                inflation = inflation.max(need as u32);
            }
        }
    }
    let bp = BigRational::from_integer(BigInt::from(p));
    let mut model = if inflation > 0 {
        scale(curve, &num_traits::pow(bp.clone(), inflation as usize))
    } else {
        curve.clone()
    };
    let inv_p = bp.recip();
    let mut deflations = 0;
    loop {
        let v_delta = valuation(&model.delta, p)?;
        let v_c4 = valuation(&model.c4, p)?;
        if !(v_delta.at_least(12) && v_c4.at_least(4)) {
            return Ok(MinimalModel { p, curve: model, inflation, deflations, v_delta, v_c4 });
        }
        let plain = scale(&model, &inv_p);
        model = if is_p_integral(&plain, p)? {
            plain
        } else {
            // y^2 = x^3 - 27 c4 x - 54 c6 is p-integral and isomorphic over
            // Z_p (u = 6 is a unit), and v(c4) >= 4, v(c6) >= 6 here.
            let short = WeierstrassCurve::short(big(-27) * &model.c4, big(-54) * &model.c6);
            scale(&short, &inv_p)
        };
        deflations += 1;
    }
}

/// The reduction of a p-minimal model, completed to
/// `y^2 = x^3 + a2 x^2 + a4 x + a6` with `(a2, a4, a6) = (b2/4, b4/2, b6/4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReducedCurve {
    pub p: u64,
    pub a2: u64,
    pub a4: u64,
    pub a6: u64,
    pub good: bool,
}

impl ReducedCurve {
    pub fn new(curve: &WeierstrassCurve, p: u64) -> Result<Self, ModpError> {
        Ok(Self::from_minimal(&minimal_at_p(curve, p)?))
    }

    pub fn from_minimal(m: &MinimalModel) -> Self {
        let p = m.p;
        let reduce = |r: BigRational| arith::rational_mod(&r, p).expect("p-integral model");
        let e = &m.curve;
        Self {
            p,
            a2: reduce(&e.b2 / big(4)),
            a4: reduce(&e.b4 / big(2)),
            a6: reduce(&e.b6 / big(4)),
            good: m.v_delta == Valuation::Finite(0),
        }
    }

    /// `x^3 + a2 x^2 + a4 x + a6 mod p`.
    pub fn rhs(&self, x: u64) -> u64 {
        let p = self.p;
        let t = arith::mul_mod((x + self.a2) % p, x, p);
        let t = arith::mul_mod((t + self.a4) % p, x, p);
        (t + self.a6) % p
    }
}

/// `chi[v]` is the Legendre symbol `(v / p)` with `chi[0] = 0`.
pub fn quadratic_character_table(p: u64) -> Vec<i8> {
    let mut chi = vec![-1i8; p as usize];
    chi[0] = 0;
    // (y + 1)^2 = y^2 + (2y + 1)
    let (mut sq, mut step) = (0u64, 1u64);
    for _ in 1..=(p - 1) / 2 {
        sq = add_mod(sq, step, p);
        step = add_mod(step, 2, p);
        chi[sq as usize] = 1;
    }
    chi
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

/// `|E(F_p)| = p + 1 + sum_x chi(f(x))`, including the point at infinity.
///
/// `f` is stepped through `x = 0, 1, ...` by forward differences, so the
/// inner loop is three modular additions and a table lookup.
pub fn count_points(rc: &ReducedCurve) -> Result<u64, ModpError> {
    if !rc.good {
        return Err(ModpError::BadReduction(rc.p));
    }
    let p = rc.p;
    let chi = quadratic_character_table(p);
    let (f0, f1, f2, f3) = (rc.rhs(0), rc.rhs(1 % p), rc.rhs(2 % p), rc.rhs(3 % p));
    let sub = |a: u64, b: u64| add_mod(a, p - b, p);
    let mut f = f0;
    let mut d1 = sub(f1, f0);
    let mut d2 = sub(sub(f2, f1), d1);
    let d3 = sub(sub(sub(f3, f2), sub(f2, f1)), d2);
    let mut sum = 0i64;
    for _ in 0..p {
        sum += chi[f as usize] as i64;
        f = add_mod(f, d1, p);
        d1 = add_mod(d1, d2, p);
        d2 = add_mod(d2, d3, p);
    }
    Ok((p as i64 + 1 + sum) as u64)
}

/// Per-prime trace data: `count = 1 - a_p + p`, `gamma_p = a_p / (2 sqrt p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub p: u64,
    pub count: u64,
    pub a_p: i64,
    pub gamma_p: f64,
}

impl TraceRecord {
    pub fn new(p: u64, count: u64) -> Self {
        let a_p = p as i64 + 1 - count as i64;
        Self { p, count, a_p, gamma_p: a_p as f64 / (2.0 * (p as f64).sqrt()) }
    }

    /// `a_p^2 <= 4p`, checked in integers.
    pub fn within_hasse_bound(&self) -> bool {
        (self.a_p as i128).pow(2) <= 4 * self.p as i128
    }
}

/// Trace at a single prime; `None` when the reduction is bad.
pub fn trace_at(curve: &WeierstrassCurve, p: u64) -> Result<Option<TraceRecord>, ModpError> {
    let rc = ReducedCurve::new(curve, p)?;
    if !rc.good {
        return Ok(None);
    }
    Ok(Some(TraceRecord::new(p, count_points(&rc)?)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceSweep {
    pub records: Vec<TraceRecord>,
    /// Primes `5 <= p <= bound` of bad reduction.
    pub bad_primes: Vec<u64>,
    /// Primes below 5 in range, skipped by policy.
    pub excluded_primes: Vec<u64>,
}

pub fn trace_sweep(curve: &WeierstrassCurve, bound: u64) -> Result<TraceSweep, ModpError> {
    trace_sweep_threads(curve, bound, 1)
}

/// [`trace_sweep`] over a dedicated pool of `threads` workers. Records come
/// back in prime order regardless of the thread count.
pub fn trace_sweep_threads(
    curve: &WeierstrassCurve,
    bound: u64,
    threads: usize,
) -> Result<TraceSweep, ModpError> {
    if !curve.is_nonsingular() {
        return Err(ModpError::Singular);
    }
    let primes = arith::primes_up_to(bound);
    let (excluded_primes, primes): (Vec<u64>, Vec<u64>) = primes.into_iter().partition(|&p| p < 5);
    let per_prime = |p: &u64| trace_at(curve, *p).map(|r| (*p, r));
    let results: Vec<(u64, Option<TraceRecord>)> = if threads <= 1 {
        primes.iter().map(per_prime).collect::<Result<_, _>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| ModpError::ThreadPool(e.to_string()))?;
        pool.install(|| primes.par_iter().map(per_prime).collect::<Result<_, _>>())?
    };
    let mut records = Vec::with_capacity(results.len());
    let mut bad_primes = Vec::new();
    for (p, r) in results {
        match r {
            Some(r) => records.push(r),
            None => bad_primes.push(p),
        }
    }
    Ok(TraceSweep { records, bad_primes, excluded_primes })
}

/// Fraction of good primes `5 <= p <= bound` with `a_p = 0`; `None` when
/// there is no such prime.
pub fn supersingular_ratio(curve: &WeierstrassCurve, bound: u64) -> Result<Option<Ratio<u64>>, ModpError> {
    Ok(supersingular_ratio_of(&trace_sweep(curve, bound)?.records))
}

pub fn supersingular_ratio_of(records: &[TraceRecord]) -> Option<Ratio<u64>> {
    if records.is_empty() {
        return None;
    }
    let zeros = records.iter().filter(|r| r.a_p == 0).count() as u64;
    Some(Ratio::new(zeros, records.len() as u64))
}

/// Semicircle mass of `[-1, x]`: `1/2 + (x sqrt(1 - x^2) + asin x) / pi`.
pub fn semicircle_cdf(x: f64) -> f64 {
    let x = x.clamp(-1.0, 1.0);
    0.5 + (x * (1.0 - x * x).sqrt() + x.asin()) / PI
}

/// `(2/pi) * integral_lo^hi sqrt(1 - t^2) dt`.
pub fn semicircle_mass(lo: f64, hi: f64) -> f64 {
    semicircle_cdf(hi) - semicircle_cdf(lo)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub empirical: f64,
    pub predicted: f64,
}

/// Equal-width bins over `[-1, 1]`, half-open except the last.
pub fn histogram_of(records: &[TraceRecord], bins: usize) -> Result<Vec<HistogramBin>, ModpError> {
    if bins == 0 {
        return Err(ModpError::NoBins);
    }
    let mut counts = vec![0u64; bins];
    for r in records {
        let t = (r.gamma_p.clamp(-1.0, 1.0) + 1.0) / 2.0 * bins as f64;
        let idx = (t.floor() as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let total = records.len() as f64;
    let width = 2.0 / bins as f64;
    Ok(counts
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let lo = -1.0 + i as f64 * width;
            let hi = if i + 1 == bins { 1.0 } else { -1.0 + (i + 1) as f64 * width };
            let empirical = if total > 0.0 { c as f64 / total } else { 0.0 };
            HistogramBin { lo, hi, empirical, predicted: semicircle_mass(lo, hi) }
        })
        .collect())
}

pub fn sato_tate_histogram(
    curve: &WeierstrassCurve,
    bound: u64,
    bins: usize,
) -> Result<Vec<HistogramBin>, ModpError> {
    if bins == 0 {
        return Err(ModpError::NoBins);
    }
    histogram_of(&trace_sweep(curve, bound)?.records, bins)
}

/// Largest `|empirical - predicted|` over the bins.
pub fn sup_norm(bins: &[HistogramBin]) -> f64 {
    bins.iter().map(|b| (b.empirical - b.predicted).abs()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LProduct {
    /// `prod p / |E(F_p)|` over good primes `5 <= p <= bound`.
    pub value: BigRational,
    pub primes_used: usize,
}

impl LProduct {
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.value.to_f64().unwrap_or(f64::NAN)
    }
}

pub fn partial_l_product(curve: &WeierstrassCurve, bound: u64) -> Result<LProduct, ModpError> {
    Ok(l_product_of(&trace_sweep(curve, bound)?.records))
}

pub fn l_product_of(records: &[TraceRecord]) -> LProduct {
    // accumulate numerator and denominator separately; reduce once
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for r in records {
        num *= r.p;
        den *= r.count;
    }
    LProduct { value: BigRational::new(num, den), primes_used: records.len() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionKind {
    Good,
    Multiplicative,
    Additive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReductionType {
    pub kind: ReductionKind,
    pub v_delta: Valuation,
    pub v_c4: Valuation,
}

pub fn reduction_type(curve: &WeierstrassCurve, p: u64) -> Result<ReductionType, ModpError> {
    let m = minimal_at_p(curve, p)?;
    let kind = if m.v_delta == Valuation::Finite(0) {
        ReductionKind::Good
    } else if m.v_c4 == Valuation::Finite(0) {
        ReductionKind::Multiplicative
    } else {
        ReductionKind::Additive
    };
    Ok(ReductionType { kind, v_delta: m.v_delta, v_c4: m.v_c4 })
}

/// Projective points of `X^3 + Y^3 + Z^3 = 0` over `F_p`.
pub fn count_plane_cubic(p: u64) -> Result<u64, ModpError> {
    check_prime(p)?;
    // cubes[v] = #{y : y^3 = v}
    let mut cubes = vec![0u64; p as usize];
    for y in 0..p {
        cubes[arith::pow_mod(y, 3, p) as usize] += 1;
    }
    let minus_one = p - 1;
    // affine chart Z = 1: y^3 = -1 - x^3
    let affine: u64 = (0..p)
        .map(|x| {
            let x3 = arith::pow_mod(x, 3, p);
            cubes[((minus_one + p - x3) % p) as usize]
        })
        .sum();
    // Z = 0: (X : 1 : 0) with X^3 = -1
    Ok(affine + cubes[minus_one as usize])
}

/// Every `(|c|, d)` with `d >= 1` and `4p = c^2 + 27 d^2`.
pub fn gauss_representations(p: u64) -> Vec<(u64, u64)> {
    let four_p = 4 * p as u128;
    let mut out = Vec::new();
    let mut d = 1u128;
    while 27 * d * d <= four_p {
        if let Some(c) = arith::exact_sqrt_u128(four_p - 27 * d * d) {
            out.push((c as u64, d as u64));
        }
        d += 1;
    }
    out
}

/// `(c_p, d_p)` with `4p = c_p^2 + 27 d_p^2`, `c_p = -1 mod 3`, `d_p >= 0`.
pub fn gauss_c(p: u64) -> Result<(i64, u64), ModpError> {
    if !arith::is_prime(p) {
        return Err(ModpError::NotPrime(p));
    }
    if p % 3 != 1 {
        return Err(ModpError::NotOneModThree(p));
    }
    let (c, d) = *gauss_representations(p)
        .first()
        .expect("every prime p = 1 mod 3 has 4p = c^2 + 27 d^2");
    let c = c as i64;
    let c = if c.rem_euclid(3) == 2 { c } else { -c };
    Ok((c, d))
}

/// `a_p` of `x^3 + y^3 + 1 = 0`: `c_p` when `p = 1 mod 3`, else 0.
pub fn gauss_ap(p: u64) -> Result<i64, ModpError> {
    check_prime(p)?;
    if p % 3 == 1 {
        Ok(gauss_c(p)?.0)
    } else {
        Ok(0)
    }
}
