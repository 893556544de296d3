use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::{NumericsError, Result};

pub const DEFAULT_SERIES_ORDER: usize = 8;

/// Truncated power series `c0 + c1 x + ... + cN x^N` in one formal variable.
///
/// Binary operations truncate to the smaller of the two orders, so an
/// operation never claims more accuracy than its least accurate input.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerSeries {
    coeffs: Vec<f64>,
}

impl PowerSeries {
    /// Series of order `coeffs.len() - 1`. Panics on an empty slice.
    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least one coefficient");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![0.0; order + 1] }
    }

    pub fn constant(c: f64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The formal variable `x` itself.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = 1.0;
        }
        s
    }

    /// Series whose j-th coefficient is `f(j)`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> f64) -> Self {
        Self { coeffs: (0..=order).map(f).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> f64 {
        self.coeffs.get(j).copied().unwrap_or(0.0)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_fn(order.min(self.order()), |j| self.coeffs[j])
    }

    pub fn scale(&self, k: f64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![0.0; order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0 == 0.0 {
            return Err(NumericsError::NotInvertible("reciprocal of a series with zero constant term"));
        }
        let n = self.order();
        let mut out = vec![0.0; n + 1];
        out[0] = 1.0 / c0;
        for k in 1..=n {
            let acc: f64 = (1..=k).map(|j| self.coeffs[j] * out[k - j]).sum();
            out[k] = -acc / c0;
        }
        Ok(Self { coeffs: out })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    /// `self(inner(x))`; `inner` must have no constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.coeffs[0] != 0.0 {
            return Err(NumericsError::NonZeroConstant);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        // Horner in the series ring.
        let mut acc = Self::constant(self.coeffs[order], order);
        for c in self.coeffs[..order].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Compositional inverse: the series `r` with `self(r(x)) = x` to the
    /// truncation order. Requires `c0 = 0` and `c1 != 0`.
    pub fn revert(&self) -> Result<Self> {
        if self.coeffs[0] != 0.0 {
            return Err(NumericsError::NotInvertible("reversion needs a zero constant term"));
        }
        let n = self.order();
        if n == 0 {
            return Err(NumericsError::NotInvertible("reversion needs order at least one"));
        }
        let a1 = self.coeffs[1];
        if a1 == 0.0 {
            return Err(NumericsError::NotInvertible("reversion needs a nonzero linear term"));
        }
        let mut r = Self::zero(n);
        r.coeffs[1] = 1.0 / a1;
        // With r_k still zero, the x^k coefficient of self(r) collects every
        // contribution except a1 * r_k; choose r_k to cancel it.
        for k in 2..=n {
            let partial = self.compose(&r)?.coeffs[k];
            r.coeffs[k] = -partial / a1;
        }
        Ok(r)
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: Self) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries::from_fn(order, |j| self.coeffs[j] + rhs.coeffs[j])
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: Self) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries::from_fn(order, |j| self.coeffs[j] - rhs.coeffs[j])
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: Self) -> PowerSeries {
        PowerSeries::mul(self, rhs)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        self.scale(-1.0)
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                write!(f, " + ")?;
            }
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}·x")?,
                _ => write!(f, "{c}·x^{j}")?,
            }
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}
