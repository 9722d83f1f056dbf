//! Exact arbitrary-precision computation of p_{κ,m}(n) from the generating
//! function, plus an independent pentagonal-recurrence oracle for κ = 1.
//!
//! The table is built by dynamic programming over distinct part values v with
//! multiplicity w_v = #{ℓ : ⌊ℓ^κ⌋ = v}: the factor (Σ_{0<=r<=m} x^{rv})^{w_v}
//! is applied either as w_v repeated single-source updates or, when w_v is
//! large, as one multiplication by the truncated closed-form polynomial.
//! Both routes produce bit-identical coefficients.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::sequence::{index_count_up_to, value_multiplicity, KappaParam, Multiplicity};

/// Default cap on the number of sequence indices a table may touch.
pub const DEFAULT_PART_BUDGET: u64 = 100_000_000;

/// Exact values p_{κ,m}(0..=max_n).
#[derive(Clone, Debug)]
pub struct CountTable {
    kappa: KappaParam,
    m: Multiplicity,
    max_n: usize,
    counts: Vec<BigUint>,
}

impl CountTable {
    pub fn kappa(&self) -> &KappaParam {
        &self.kappa
    }

    pub fn multiplicity(&self) -> Multiplicity {
        self.m
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn count(&self, n: usize) -> &BigUint {
        &self.counts[n]
    }

    /// ln p_{κ,m}(n), usable when the count overflows f64.
    pub fn ln_count(&self, n: usize) -> f64 {
        ln_biguint(&self.counts[n])
    }

    /// CSV with header `n,count`; counts as decimal strings.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "n,count")?;
        for (n, c) in self.counts.iter().enumerate() {
            writeln!(out, "{n},{c}")?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kappa": self.kappa.to_string(),
            "m": self.m.to_string(),
            "max_n": self.max_n,
            "counts": self.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// ln of a positive big integer (ln 0 = -inf).
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("fits f64").ln();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().expect("53 bits fit");
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}

/// Table of p_{κ,m}(0..=max_n) with the default part-index budget.
pub fn count_table(kappa: &KappaParam, m: Multiplicity, max_n: usize) -> Result<CountTable> {
    count_table_with_budget(kappa, m, max_n, DEFAULT_PART_BUDGET)
}

/// As [`count_table`] but with an explicit budget on ⌈(N+1)^α⌉, the number of
/// sequence indices that carry values <= N.
pub fn count_table_with_budget(
    kappa: &KappaParam,
    m: Multiplicity,
    max_n: usize,
    budget: u64,
) -> Result<CountTable> {
    if let Multiplicity::Finite(0) = m {
        return Err(Error::domain("multiplicity cap must be >= 1"));
    }
    let needed = index_count_up_to(max_n as u64, kappa)?;
    if needed > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: needed.to_string(),
            budget,
        });
    }
    let mut counts = vec![BigUint::zero(); max_n + 1];
    counts[0] = BigUint::one();
    for v in 1..=max_n {
        let w = value_multiplicity(v as u64, kappa)?
            .to_u64()
            .expect("bounded by budget");
        if w == 0 {
            continue;
        }
        apply_value_factor(&mut counts, v, w, m, Route::Auto);
    }
    Ok(CountTable {
        kappa: kappa.clone(),
        m,
        max_n,
        counts,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(not(test), allow(dead_code))] // forced routes are exercised by tests
enum Route {
    Auto,
    Repeated,
    Polynomial,
}

/// Multiply the coefficient table in place by (Σ_{0<=r<=m} x^{rv})^w,
/// truncated beyond x^max_n.
fn apply_value_factor(counts: &mut [BigUint], v: usize, w: u64, m: Multiplicity, route: Route) {
    let max_n = counts.len() - 1;
    let j_max = max_n / v;
    let use_poly = match route {
        Route::Repeated => false,
        Route::Polynomial => true,
        Route::Auto => {
            let passes = if m.is_infinite() { 1 } else { 2 };
            let repeated_cost = w.saturating_mul(passes * (max_n - v + 1) as u64);
            let poly_cost = (j_max as u64 + 1) * (max_n as u64 + 1) / 2 + (j_max as u64).pow(2);
            repeated_cost > poly_cost
        }
    };
    if use_poly {
        let g = factor_polynomial(w, m, j_max);
        apply_polynomial(counts, v, &g);
    } else {
        for _ in 0..w {
            apply_single_source(counts, v, m);
        }
    }
}

/// One source of value v: multiply by Σ_{0<=r<=m} x^{rv}.
fn apply_single_source(counts: &mut [BigUint], v: usize, m: Multiplicity) {
    let max_n = counts.len() - 1;
    // divide by (1 - x^v): ascending prefix pass
    for i in v..=max_n {
        let (lo, hi) = counts.split_at_mut(i);
        hi[0] += &lo[i - v];
    }
    if let Multiplicity::Finite(m) = m {
        // multiply back by (1 - x^{(m+1)v}): descending pass
        let Some(u) = (m as usize + 1).checked_mul(v).filter(|&u| u <= max_n) else {
            return;
        };
        for i in (u..=max_n).rev() {
            let (lo, hi) = counts.split_at_mut(i);
            hi[0] -= &lo[i - u];
        }
    }
}

/// Coefficients g_j of (Σ_{0<=r<=m} x^r)^w truncated at degree j_max
/// (the variable here is x^v). g_0 = 1 always.
fn factor_polynomial(w: u64, m: Multiplicity, j_max: usize) -> Vec<BigUint> {
    // negative binomial row: NB_t = C(w+t-1, t)
    let mut nb: Vec<BigUint> = Vec::with_capacity(j_max + 1);
    nb.push(BigUint::one());
    for t in 0..j_max {
        let next = (&nb[t] * (w + t as u64)) / BigUint::from(t as u64 + 1);
        nb.push(next);
    }
    match m {
        Multiplicity::Infinite => nb,
        Multiplicity::Finite(m) => {
            // ((1 - x^{m+1}) / (1 - x))^w = Σ_i (-1)^i C(w,i) x^{(m+1)i} · Σ_t NB_t x^t
            let step = m as usize + 1;
            let i_max = (j_max / step).min(w as usize);
            let mut binoms: Vec<BigUint> = Vec::with_capacity(i_max + 1);
            binoms.push(BigUint::one());
            for i in 0..i_max {
                let next = (&binoms[i] * (w - i as u64)) / BigUint::from(i as u64 + 1);
                binoms.push(next);
            }
            let mut g = Vec::with_capacity(j_max + 1);
            for j in 0..=j_max {
                let mut acc = BigInt::zero();
                let mut i = 0usize;
                while i <= i_max && i * step <= j {
                    let term =
                        BigInt::from(binoms[i].clone()) * BigInt::from(nb[j - i * step].clone());
                    if i.is_multiple_of(2) {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                    i += 1;
                }
                debug_assert!(!acc.is_negative());
                g.push(acc.magnitude().clone());
            }
            g
        }
    }
}

/// Multiply in place by Σ_j g_j x^{jv}, with g_0 = 1 (descending scan keeps
/// lower-index coefficients unmodified until they are read).
fn apply_polynomial(counts: &mut [BigUint], v: usize, g: &[BigUint]) {
    let max_n = counts.len() - 1;
    debug_assert!(g[0].is_one());
    for i in (v..=max_n).rev() {
        let mut acc = std::mem::take(&mut counts[i]);
        for (j, gj) in g.iter().enumerate().skip(1) {
            let Some(k) = i.checked_sub(j * v) else { break };
            if !gj.is_zero() && !counts[k].is_zero() {
                acc += gj * &counts[k];
            }
        }
        counts[i] = acc;
    }
}

// ---------------------------------------------------------------------------
// Pentagonal-recurrence oracle (independent of the DP above)
// ---------------------------------------------------------------------------

/// p(0..=max_n) by the classical pentagonal recurrence, or q(0..=max_n) with
/// the distinct flag (recurrence driven by the Euler function of x²).
pub fn pentagonal_oracle(max_n: usize, distinct: bool) -> Vec<BigUint> {
    let mut table: Vec<BigInt> = vec![BigInt::zero(); max_n + 1];
    table[0] = BigInt::one();
    for n in 1..=max_n {
        let mut acc = BigInt::zero();
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let positive = k % 2 == 1;
            if positive {
                acc += &table[n - g1];
            } else {
                acc -= &table[n - g1];
            }
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= n {
                if positive {
                    acc += &table[n - g2];
                } else {
                    acc -= &table[n - g2];
                }
            }
            k += 1;
        }
        if distinct {
            // coefficient of x^n in Π(1 - x^{2j}) = Σ_k (-1)^k x^{k(3k-1)}
            acc += double_pentagonal_sign(n);
        }
        debug_assert!(!acc.is_negative());
        table[n] = acc;
    }
    table.into_iter().map(|x| x.magnitude().clone()).collect()
}

/// (-1)^k when n = k(3k-1) for some k ∈ ℤ \ {0}, else 0.
fn double_pentagonal_sign(n: usize) -> i64 {
    let d = 1 + 12 * n as u64;
    let r = d.isqrt();
    if r * r != d {
        return 0;
    }
    // k > 0 branch: k = (1 + r)/6;  k < 0 branch (k = -j): j = (r - 1)/6
    if (1 + r).is_multiple_of(6) {
        let k = (1 + r) / 6;
        return if k.is_multiple_of(2) { 1 } else { -1 };
    }
    if r >= 1 && (r - 1).is_multiple_of(6) {
        let j = (r - 1) / 6;
        if j >= 1 {
            return if j.is_multiple_of(2) { 1 } else { -1 };
        }
    }
    0
}

// ---------------------------------------------------------------------------
// tests
// ---------------------------------------------------------------------------
