//! Truncated formal power series with exact integer coefficients, and the
//! Tunnell coefficients `c_j(n)` read off from `g(T) * theta_j(T)` where
//!
//! ```text
//! g(T)       = T * prod_{r >= 1} (1 - T^(8r)) (1 - T^(16r))
//! theta_j(T) = 1 + 2 * sum_{n >= 1} T^(2 j n^2)
//! ```

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("theta index must be 1 or 2, got {0}")]
    InvalidTheta(u32),
    #[error("binomial exponent must be at least 1")]
    ZeroExponent,
    #[error("truncation order must be at least {min}, got {got}")]
    OrderTooSmall { min: usize, got: usize },
}

/// Coefficient storage. Values live in `i128` while they fit; any checked
/// operation that overflows promotes the whole vector to `BigInt`.
#[derive(Clone)]
enum Coeffs {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

impl Coeffs {
    fn promote(v: &[i128]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }
}

/// A power series modulo `T^(N+1)`; `coeff(k)` is the coefficient of `T^k`.
#[derive(Clone)]
pub struct TruncatedIntegerSeries {
    coeffs: Coeffs,
}

impl TruncatedIntegerSeries {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: Coeffs::Small(vec![0; order + 1]) }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, 1)
    }

    /// `c * T^k`, truncated (so it is zero when `k > order`).
    pub fn monomial(order: usize, k: usize, c: i64) -> Self {
        let mut v = vec![0i128; order + 1];
        if k <= order {
            v[k] = c as i128;
        }
        Self { coeffs: Coeffs::Small(v) }
    }

    /// Build from coefficients `c_0, c_1, ...`; the order is `len - 1`.
    ///
    /// Panics on an empty vector.
    pub fn from_coeffs<I: Into<BigInt>>(coeffs: Vec<I>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least one coefficient");
        let big: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        let small: Option<Vec<i128>> = big.iter().map(ToPrimitive::to_i128).collect();
        match small {
            Some(v) => Self { coeffs: Coeffs::Small(v) },
            None => Self { coeffs: Coeffs::Big(big) },
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.to_vec())
    }

    pub fn order(&self) -> usize {
        self.len() - 1
    }

    fn len(&self) -> usize {
        match &self.coeffs {
            Coeffs::Small(v) => v.len(),
            Coeffs::Big(v) => v.len(),
        }
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        match &self.coeffs {
            Coeffs::Small(v) => BigInt::from(v[k]),
            Coeffs::Big(v) => v[k].clone(),
        }
    }

    pub fn coeffs(&self) -> Vec<BigInt> {
        match &self.coeffs {
            Coeffs::Small(v) => Coeffs::promote(v),
            Coeffs::Big(v) => v.clone(),
        }
    }

    /// True when every coefficient has stayed within the native fast path.
    pub fn is_native(&self) -> bool {
        matches!(self.coeffs, Coeffs::Small(_))
    }

    /// Same series at a smaller (or equal) truncation order.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        match &self.coeffs {
            Coeffs::Small(v) => Self { coeffs: Coeffs::Small(v[..=order].to_vec()) },
            Coeffs::Big(v) => Self { coeffs: Coeffs::Big(v[..=order].to_vec()) },
        }
    }

    fn to_big(&mut self) -> &mut Vec<BigInt> {
        if let Coeffs::Small(v) = &self.coeffs {
            self.coeffs = Coeffs::Big(Coeffs::promote(v));
        }
        match &mut self.coeffs {
            Coeffs::Big(v) => v,
            Coeffs::Small(_) => unreachable!(),
        }
    }

    /// Truncated Cauchy product. Zero coefficients of `self` are skipped, so
    /// multiplying by a sparse left operand costs O(nonzeros * N).
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch { left: self.order(), right: other.order() });
        }
        let n = self.order();
        if let (Coeffs::Small(a), Coeffs::Small(b)) = (&self.coeffs, &other.coeffs) {
            if let Some(v) = mul_native(a, b, n) {
                return Ok(Self { coeffs: Coeffs::Small(v) });
            }
        }
        let a = self.coeffs();
        let b = other.coeffs();
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b[..=n - i].iter().enumerate() {
                if !bj.is_zero() {
                    out[i + j] += ai * bj;
                }
            }
        }
        Ok(Self { coeffs: Coeffs::Big(out) })
    }

    /// Multiply in place by `(1 - T^e)`: one descending pass of
    /// `c[k] -= c[k - e]`.
    pub fn apply_binomial(&mut self, e: usize) -> Result<(), SeriesError> {
        if e == 0 {
            return Err(SeriesError::ZeroExponent);
        }
        let n = self.order();
        if e > n {
            return Ok(());
        }
        let mut resume = None;
        if let Coeffs::Small(v) = &mut self.coeffs {
            for k in (e..=n).rev() {
                let src = v[k - e];
                if src == 0 {
                    continue;
                }
                match v[k].checked_sub(src) {
                    Some(x) => v[k] = x,
                    None => {
                        resume = Some(k);
                        break;
                    }
                }
            }
            if resume.is_none() {
                return Ok(());
            }
        }
        // Entries above `resume` are already updated; entries at or below it
        // are untouched, so the descending pass can continue in BigInt.
        let start = resume.unwrap_or(n);
        let v = self.to_big();
        for k in (e..=start).rev() {
            if !v[k - e].is_zero() {
                let src = v[k - e].clone();
                v[k] -= src;
            }
        }
        Ok(())
    }

    /// `self * (1 - T^e)` as a new series.
    pub fn sparse_binomial_apply(&self, e: usize) -> Result<Self, SeriesError> {
        let mut out = self.clone();
        out.apply_binomial(e)?;
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch { left: self.order(), right: other.order() });
        }
        if let (Coeffs::Small(a), Coeffs::Small(b)) = (&self.coeffs, &other.coeffs) {
            let v: Option<Vec<i128>> = a.iter().zip(b).map(|(x, y)| x.checked_add(*y)).collect();
            if let Some(v) = v {
                return Ok(Self { coeffs: Coeffs::Small(v) });
            }
        }
        let v = self.coeffs().into_iter().zip(other.coeffs()).map(|(x, y)| x + y).collect();
        Ok(Self { coeffs: Coeffs::Big(v) })
    }
}

fn mul_native(a: &[i128], b: &[i128], n: usize) -> Option<Vec<i128>> {
    let mut out = vec![0i128; n + 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b[..=n - i].iter().enumerate() {
            if bj != 0 {
                let t = ai.checked_mul(bj)?;
                out[i + j] = out[i + j].checked_add(t)?;
            }
        }
    }
    Some(out)
}

impl PartialEq for TruncatedIntegerSeries {
    fn eq(&self, other: &Self) -> bool {
        match (&self.coeffs, &other.coeffs) {
            (Coeffs::Small(a), Coeffs::Small(b)) => a == b,
            _ => self.coeffs() == other.coeffs(),
        }
    }
}

impl Eq for TruncatedIntegerSeries {}

impl Add for &TruncatedIntegerSeries {
    type Output = TruncatedIntegerSeries;

    /// Panics on mismatched orders; use [`TruncatedIntegerSeries::try_add`]
    /// for the fallible form.
    fn add(self, rhs: Self) -> TruncatedIntegerSeries {
        self.try_add(rhs).expect("adding series of different orders")
    }
}

impl fmt::Debug for TruncatedIntegerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{c}*T^{k}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0 + O(T^{})", self.order() + 1)
        } else {
            write!(f, "{} + O(T^{})", terms.join(" + "), self.order() + 1)
        }
    }
}

/// `g(T) mod T^(N+1)`, built from `T` by applying `(1 - T^(8r))(1 - T^(16r))`
/// for `r = 1, 2, ...` while `8r <= N`. Later factors only touch degrees
/// above `N`.
pub fn eta_like_g(order: usize) -> Result<TruncatedIntegerSeries, SeriesError> {
    if order < 1 {
        return Err(SeriesError::OrderTooSmall { min: 1, got: order });
    }
    let mut g = TruncatedIntegerSeries::monomial(order, 1, 1);
    let mut r = 1;
    while 8 * r <= order {
        g.apply_binomial(8 * r)?;
        g.apply_binomial(16 * r)?;
        r += 1;
    }
    Ok(g)
}

/// The partial product `g_r(T) = T * prod_{s <= r} (1 - T^(8s))(1 - T^(16s))`
/// truncated at `order`.
pub fn partial_g(r: usize, order: usize) -> Result<TruncatedIntegerSeries, SeriesError> {
    let mut g = TruncatedIntegerSeries::monomial(order, 1, 1);
    for s in 1..=r {
        g.apply_binomial(8 * s)?;
        g.apply_binomial(16 * s)?;
    }
    Ok(g)
}

/// `theta_j(T) = 1 + 2 * sum T^(2 j n^2)` truncated at `order`.
pub fn theta_series(j: u32, order: usize) -> Result<TruncatedIntegerSeries, SeriesError> {
    if j != 1 && j != 2 {
        return Err(SeriesError::InvalidTheta(j));
    }
    let mut v = vec![0i64; order + 1];
    v[0] = 1;
    let step = 2 * j as usize;
    let mut n = 1usize;
    while step * n * n <= order {
        v[step * n * n] = 2;
        n += 1;
    }
    Ok(TruncatedIntegerSeries::from_i64(&v))
}

/// Both rows of Tunnell coefficients up to `n_max`, sharing one `g(T)`.
#[derive(Debug, Clone)]
pub struct TunnellTable {
    n_max: usize,
    rows: [Vec<BigInt>; 2],
}

impl TunnellTable {
    pub fn compute(n_max: usize) -> Result<Self, SeriesError> {
        let g = eta_like_g(n_max)?;
        let row = |j| -> Result<Vec<BigInt>, SeriesError> {
            let prod = theta_series(j, n_max)?.mul(&g)?;
            Ok(prod.coeffs().split_off(1))
        };
        Ok(Self { n_max, rows: [row(1)?, row(2)?] })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `c_j(n)` for `1 <= n <= n_max`.
    pub fn get(&self, j: u32, n: usize) -> Option<&BigInt> {
        if n == 0 {
            return None;
        }
        match j {
            1 | 2 => self.rows[j as usize - 1].get(n - 1),
            _ => None,
        }
    }

    /// `c_j(1..=n_max)`.
    pub fn row(&self, j: u32) -> Result<&[BigInt], SeriesError> {
        match j {
            1 | 2 => Ok(&self.rows[j as usize - 1]),
            _ => Err(SeriesError::InvalidTheta(j)),
        }
    }
}

/// `c_j(1), ..., c_j(N)`: coefficients of `T^1..T^N` in `g(T) theta_j(T)`.
pub fn tunnell_coefficients(j: u32, n_max: usize) -> Result<Vec<BigInt>, SeriesError> {
    let theta = theta_series(j, n_max)?;
    let g = eta_like_g(n_max)?;
    // theta is the sparse operand, so it goes on the left.
    Ok(theta.mul(&g)?.coeffs().split_off(1))
}

/// A single coefficient `c_j(n)`.
pub fn tunnell_coefficient(j: u32, n: usize) -> Result<BigInt, SeriesError> {
    if n == 0 {
        return Err(SeriesError::OrderTooSmall { min: 1, got: 0 });
    }
    Ok(tunnell_coefficients(j, n)?.pop().expect("n >= 1 coefficients"))
}
