//! Truncated real-coefficient formal power series: the coefficient engine
//! behind the Bürmann reversion and the λ-coefficient computation.
//!
//! All operations are closed at a fixed truncation order; binary operations
//! truncate to the smaller order of the two operands.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<f64>, // coeffs[j] multiplies t^j; order = coeffs.len() - 1
}

impl PowerSeries {
    pub fn from_coeffs(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least a constant term");
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![0.0; order + 1],
        }
    }

    pub fn constant(c: f64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(1.0, order)
    }

    /// The series t.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = 1.0;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> f64 {
        self.coeffs.get(j).copied().unwrap_or(0.0)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, j: usize, c: f64) {
        assert!(j < self.coeffs.len());
        self.coeffs[j] = c;
    }

    /// Copy truncated (or zero-extended) to the given order.
    pub fn truncated(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, 0.0);
        PowerSeries { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|j| self.coeff(j) + other.coeff(j))
            .collect();
        PowerSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|j| self.coeff(j) - other.coeff(j))
            .collect();
        PowerSeries { coeffs }
    }

    pub fn scale(&self, c: f64) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Product truncated to the smaller operand order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![0.0; order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if *a == 0.0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PowerSeries { coeffs }
    }

    /// Multiply by t^k, dropping the tail beyond the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![0.0; order + 1];
        let kept = order + 1 - k.min(order + 1);
        coeffs[k.min(order + 1)..].copy_from_slice(&self.coeffs[..kept]);
        PowerSeries { coeffs }
    }

    /// exp(S) via the standard E' = S'E coefficient recurrence.
    pub fn exp(&self) -> Self {
        let order = self.order();
        let mut out = vec![0.0; order + 1];
        out[0] = self.coeffs[0].exp();
        for n in 1..=order {
            let mut acc = 0.0;
            for k in 1..=n {
                acc += k as f64 * self.coeffs[k] * out[n - k];
            }
            out[n] = acc / n as f64;
        }
        PowerSeries { coeffs: out }
    }

    /// ln(S) for S with positive constant term, via L' = S'/S.
    pub fn ln(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0.is_nan() || c0 <= 0.0 {
            return Err(Error::domain("series ln requires a positive constant term"));
        }
        let order = self.order();
        let mut out = vec![0.0; order + 1];
        out[0] = c0.ln();
        for n in 1..=order {
            let mut acc = n as f64 * self.coeffs[n];
            for (k, o) in out.iter().enumerate().take(n).skip(1) {
                acc -= k as f64 * o * self.coeffs[n - k];
            }
            out[n] = acc / (n as f64 * c0);
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// S^a for real a; requires a positive constant term (the engine's callers
    /// always pass unit constant term). Uses n·c0·p_n = Σ ((a+1)k - n) s_k p_{n-k}.
    pub fn powf(&self, a: f64) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0.is_nan() || c0 <= 0.0 {
            return Err(Error::domain(
                "series powf requires a positive constant term",
            ));
        }
        let order = self.order();
        let mut out = vec![0.0; order + 1];
        out[0] = c0.powf(a);
        for n in 1..=order {
            let mut acc = 0.0;
            for k in 1..=n {
                acc += ((a + 1.0) * k as f64 - n as f64) * self.coeffs[k] * out[n - k];
            }
            out[n] = acc / (n as f64 * c0);
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// self ∘ inner for inner with zero constant term (Horner over the
    /// outer coefficients).
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.coeffs[0] != 0.0 {
            return Err(Error::domain(
                "series composition requires inner constant term 0",
            ));
        }
        let order = self.order().min(inner.order());
        let mut acc = PowerSeries::constant(self.coeff(order), order);
        for j in (0..order).rev() {
            acc = acc.mul(&inner.truncated(order));
            acc.coeffs[0] += self.coeff(j);
        }
        Ok(acc)
    }
}
