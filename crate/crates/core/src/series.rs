//! Truncated formal power series with arbitrary-precision integer
//! coefficients.
//!
//! A series of order `N` stores exactly the coefficients `a(0..=N)`.
//! Binary operations produce a result at the smaller of the two orders,
//! and [`TruncatedSeries::compare`] reports the order it compared at.

use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

/// Outcome of comparing two series up to their common order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SeriesComparison {
    /// The order the comparison was carried out at.
    pub order: usize,
    /// Index of the first differing coefficient, if any.
    pub first_mismatch: Option<usize>,
}

impl SeriesComparison {
    pub fn is_equal(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

impl TruncatedSeries {
    /// Builds a series from `a(0..=N)`; the order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least a(0)");
        TruncatedSeries { coeffs }
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize) -> BigInt) -> Self {
        TruncatedSeries {
            coeffs: (0..=order).map(&mut f).collect(),
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, BigInt::one())
    }

    /// `c * q^k` truncated to `order`.
    pub fn monomial(order: usize, k: usize, c: BigInt) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The polynomial `1 - q^k` at the given order.
    pub fn one_minus_q_pow(order: usize, k: usize) -> Self {
        let mut s = Self::one(order);
        if k <= order {
            s.coeffs[k] -= 1;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// `a(n)`, or zero past the order.
    pub fn coeff(&self, n: usize) -> BigInt {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(
            order <= self.order(),
            "cannot raise order {} to {}",
            self.order(),
            order
        );
        TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `q`; the order is unchanged, so `a(N)` falls off.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(BigInt::zero());
        coeffs.extend(self.coeffs[..self.order()].iter().cloned());
        TruncatedSeries { coeffs }
    }

    /// Multiplies by `1/(1-q)`, i.e. takes running sums of the coefficients.
    pub fn partial_sums(&self) -> Self {
        let mut acc = BigInt::zero();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                acc += a;
                acc.clone()
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// The reciprocal of a series with constant term `+1` or `-1`.
    ///
    /// Uses `g(0) = 1/a(0)`, `g(n) = -(1/a(0)) * sum_{k=1..n} a(k) g(n-k)`,
    /// skipping zero coefficients of `self`.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if !a0.abs().is_one() {
            return Err(Error::NotInvertible(a0.clone()));
        }
        let negative = a0.is_negative();
        let support: Vec<(usize, &BigInt)> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let n = self.order();
        let mut g: Vec<BigInt> = Vec::with_capacity(n + 1);
        g.push(a0.clone());
        for i in 1..=n {
            let mut acc = BigInt::zero();
            for &(k, c) in &support {
                if k > i {
                    break;
                }
                acc += c * &g[i - k];
            }
            // divide by a(0) = ±1 and negate
            if !negative {
                acc = -acc;
            }
            g.push(acc);
        }
        Ok(TruncatedSeries { coeffs: g })
    }

    /// `h_r(q) = q / (1-q)^{r+1}`: coefficient `C(n-1+r, r)` for `n >= 1`.
    pub fn h(r: usize, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(BigInt::zero());
        let mut c = BigInt::one();
        for n in 1..=order {
            if n > 1 {
                // C(n-1+r, r) = C(n-2+r, r) * (n-1+r) / (n-1)
                c = c * (n - 1 + r) / (n - 1);
            }
            coeffs.push(c.clone());
        }
        TruncatedSeries { coeffs }
    }

    /// `f(q^m)`, truncated to the order of `f`.
    pub fn subst_power(&self, m: usize) -> Self {
        assert!(m >= 1);
        let n = self.order();
        Self::from_fn(n, |i| {
            if i % m == 0 {
                self.coeffs[i / m].clone()
            } else {
                BigInt::zero()
            }
        })
    }

    /// The multisection operator `U_m`: `sum a(n) q^n -> sum a(mn) q^n`.
    /// The order drops from `N` to `floor(N/m)`.
    pub fn u_op(&self, m: usize) -> Self {
        assert!(m >= 1);
        let order = self.order() / m;
        Self::from_fn(order, |i| self.coeffs[i * m].clone())
    }

    pub fn compare(&self, other: &Self) -> SeriesComparison {
        let order = self.order().min(other.order());
        let first_mismatch = (0..=order).find(|&i| self.coeffs[i] != other.coeffs[i]);
        SeriesComparison {
            order,
            first_mismatch,
        }
    }

    /// True if every coefficient is divisible by `d`.
    pub fn all_divisible_by(&self, d: &BigInt) -> bool {
        self.coeffs.iter().all(|c| c.is_multiple_of(d))
    }

    /// Plain-text dump: one `index coefficient` pair per line.
    pub fn to_dump(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            let _ = writeln!(out, "{i} {c}");
        }
        out
    }

    /// Reads the format written by [`to_dump`](Self::to_dump).
    pub fn from_dump(text: &str) -> Result<Self> {
        let mut coeffs = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = || {
                Error::InvalidParameter(format!("malformed dump line {}: `{line}`", line_no + 1))
            };
            let (idx, val) = line.split_once(' ').ok_or_else(bad)?;
            let idx: usize = idx.parse().map_err(|_| bad())?;
            if idx != coeffs.len() {
                return Err(bad());
            }
            coeffs.push(val.trim().parse::<BigInt>().map_err(|_| bad())?);
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("empty series dump".into()));
        }
        Ok(TruncatedSeries { coeffs })
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries::from_fn(n, |i| &self.coeffs[i] + &rhs.coeffs[i])
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries::from_fn(n, |i| &self.coeffs[i] - &rhs.coeffs[i])
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Truncated Cauchy product at the smaller order.
impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }
}
