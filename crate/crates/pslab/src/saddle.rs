//! The log generating function L_κ(x) = -Σ_ℓ ln(1 - e^{-x⌊ℓ^κ⌋}), its
//! derivatives, the saddle equation L'(x) + n = 0 (and its finite-m
//! variant), and the resulting main-term estimate
//! exp(L + nx) / sqrt(2π L'') for p_{κ,m}(n).
//!
//! Everything works in log space; the exponentiated estimate is provided
//! when it is representable.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::numerics::{gamma_fn, zeta_em};
use crate::sequence::{ps_term_u64, value_multiplicity, KappaParam, Multiplicity};
use crate::zeta::{ps_zeta_deriv_zero, ps_zeta_zero};

/// Terms with x·⌊ℓ^κ⌋ beyond this are below double noise (e^{-45} ≈ 3e-20).
const EXP_CUTOFF: f64 = 45.0;

/// Solved saddle point and the main-term estimate at it. The log form is
/// authoritative; `estimate` overflows to ∞ for large n.
#[derive(Clone, Copy, Debug)]
pub struct SaddleResult {
    pub n: u64,
    pub m: Multiplicity,
    /// Positive solution of the (m-adjusted) saddle equation.
    pub x: f64,
    pub log_estimate: f64,
    pub estimate: f64,
    /// (L, L', L'') of the m-adjusted combination at the saddle.
    pub l_values: (f64, f64, f64),
}

/// (L, L', L'') of the plain (m = ∞) function at x > 0.
fn l_raw(x: f64, kappa: &KappaParam) -> Result<(f64, f64, f64)> {
    let mut l = 0.0;
    let mut l1 = 0.0;
    let mut l2 = 0.0;
    let v_max = (EXP_CUTOFF / x).floor() as u64;
    let mut push = |v: u64, w: f64| {
        let vf = v as f64;
        let y = x * vf;
        let em1 = y.exp_m1();
        let e = (-y).exp();
        l += -w * (-e).ln_1p();
        l1 += -w * vf / em1;
        l2 += w * vf * vf * (em1 + 1.0) / (em1 * em1);
    };
    if kappa.alpha() > 1.0 {
        // group by value: w_v copies of each v
        for v in 1..=v_max {
            let w = weight_f64(v, kappa)?;
            if w > 0.0 {
                push(v, w);
            }
        }
    } else {
        // α <= 1: few indices map below the cutoff; walk them directly
        let mut ell = 1u64;
        loop {
            let v = ps_term_u64(ell, kappa)?;
            if v > v_max {
                break;
            }
            push(v, 1.0);
            ell += 1;
        }
    }
    Ok((l, l1, l2))
}

/// w_v as f64, exact while it fits 53 bits.
fn weight_f64(v: u64, kappa: &KappaParam) -> Result<f64> {
    if let Some(a) = kappa.alpha_integer() {
        if a <= 3 {
            // (v+1)^a - v^a in plain integer arithmetic
            let hi = (v as u128 + 1).pow(a as u32);
            let lo = (v as u128).pow(a as u32);
            return Ok((hi - lo) as f64);
        }
    }
    Ok(value_multiplicity(v, kappa)?
        .to_f64()
        .unwrap_or(f64::INFINITY))
}

/// (L, L', L'') of the m-adjusted combination
/// L(x) - L((m+1)x), L'(x) - (m+1)L'((m+1)x), L''(x) - (m+1)² L''((m+1)x).
fn l_combined(x: f64, kappa: &KappaParam, m: Multiplicity) -> Result<(f64, f64, f64)> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::domain("L_κ requires x > 0"));
    }
    let base = l_raw(x, kappa)?;
    match m {
        Multiplicity::Infinite => Ok(base),
        Multiplicity::Finite(m) => {
            let mp1 = (m + 1) as f64;
            let other = l_raw(mp1 * x, kappa)?;
            Ok((
                base.0 - other.0,
                base.1 - mp1 * other.1,
                base.2 - mp1 * mp1 * other.2,
            ))
        }
    }
}

/// j-th derivative (j = 0, 1, 2) of the m-adjusted log generating function.
pub fn big_l(x: f64, j: u8, kappa: &KappaParam, m: Multiplicity) -> Result<f64> {
    let (l, l1, l2) = l_combined(x, kappa, m)?;
    match j {
        0 => Ok(l),
        1 => Ok(l1),
        2 => Ok(l2),
        _ => Err(Error::domain("big_l derivative order must be 0, 1, or 2")),
    }
}

/// β_{κ,m} = α Γ(α+1) ζ(α+1) (1 - (m+1)^{-α}): the leading Mellin residue,
/// used to seed the saddle bracket.
pub(crate) fn beta_constant(kappa: &KappaParam, m: Multiplicity) -> Result<f64> {
    let alpha = kappa.alpha();
    Ok(alpha * gamma_fn(alpha + 1.0)? * zeta_em(alpha + 1.0)? * (1.0 - m.m_plus_one_pow(-alpha)))
}

/// Solve the saddle equation L'(x) + n = 0 (m-adjusted): bracketed,
/// safeguarded Newton, residual |L' + n| <= 1e-9 n.
pub fn solve_saddle(n: u64, kappa: &KappaParam, m: Multiplicity) -> Result<SaddleResult> {
    if n == 0 {
        return Err(Error::domain("solve_saddle requires n >= 1"));
    }
    let alpha = kappa.alpha();
    let nf = n as f64;
    let x0 = (beta_constant(kappa, m)? / nf).powf(1.0 / (1.0 + alpha));
    let mut lo = x0 / 8.0;
    let mut hi = x0 * 8.0;
    let g = |x: f64| -> Result<(f64, f64)> {
        let (_, l1, l2) = l_combined(x, kappa, m)?;
        Ok((l1 + nf, l2))
    };
    // widen until the sign change is bracketed (g is strictly increasing)
    for _ in 0..8 {
        if g(lo)?.0 < 0.0 {
            break;
        }
        lo /= 8.0;
    }
    for _ in 0..8 {
        if g(hi)?.0 > 0.0 {
            break;
        }
        hi *= 8.0;
    }
    let (mut flo, _) = g(lo)?;
    let (fhi, _) = g(hi)?;
    if !(flo < 0.0 && fhi > 0.0) {
        return Err(Error::Bracket(format!(
            "no sign change on [{lo:e}, {hi:e}] for n = {n} (L' truncation misconfigured?)"
        )));
    }
    let tol = 1e-9 * nf;
    let mut x = x0.clamp(lo, hi);
    for _ in 0..200 {
        let (fx, dfx) = g(x)?;
        if fx.abs() <= tol {
            let (l, l1, l2) = l_combined(x, kappa, m)?;
            if l2.is_nan() || l2 <= 0.0 {
                return Err(Error::Bracket(format!(
                    "non-positive variance L'' = {l2} at the saddle for n = {n}"
                )));
            }
            let log_estimate = l + nf * x - 0.5 * (2.0 * std::f64::consts::PI * l2).ln();
            return Ok(SaddleResult {
                n,
                m,
                x,
                log_estimate,
                estimate: log_estimate.exp(),
                l_values: (l, l1, l2),
            });
        }
        if fx < 0.0 {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        let newton = x - fx / dfx;
        x = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let _ = flo;
    }
    Err(Error::Bracket(format!(
        "saddle Newton did not reach |L' + n| <= 1e-9 n for n = {n}"
    )))
}

/// The main-term estimate exp(L + nx)/sqrt(2π L'') at the solved saddle.
pub fn saddle_estimate(n: u64, kappa: &KappaParam, m: Multiplicity) -> Result<SaddleResult> {
    solve_saddle(n, kappa, m)
}

/// Truncated small-x expansion of L_κ and its derivatives:
/// Σ_{0<=h<α} Γ(α+1)ζ(α-h+1)/((h+1)! x^{α-h}) - ζ_κ(0) ln x + ζ'_κ(0),
/// differentiated term-wise for j = 1, 2 (no error term).
pub fn mellin_expansion(x: f64, j: u8, kappa: &KappaParam) -> Result<f64> {
    let zd = if j == 0 {
        ps_zeta_deriv_zero(kappa, 100_000)?.value
    } else {
        0.0
    };
    mellin_expansion_with(x, j, kappa, ps_zeta_zero(kappa), zd)
}

/// As [`mellin_expansion`] with the s = 0 data supplied by the caller (lets
/// sweeps over x reuse the truncated ζ'_κ(0) series).
pub fn mellin_expansion_with(
    x: f64,
    j: u8,
    kappa: &KappaParam,
    zeta_zero: f64,
    zeta_deriv_zero: f64,
) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::domain("mellin_expansion requires x > 0"));
    }
    if j > 2 {
        return Err(Error::domain("mellin_expansion order must be 0, 1, or 2"));
    }
    let alpha = kappa.alpha();
    let gamma_top = gamma_fn(alpha + 1.0)?;
    let mut acc = 0.0;
    let mut fact = 1.0; // (h+1)!
    for h in 0..kappa.ceil_alpha() {
        fact *= (h + 1) as f64;
        let c = gamma_top * zeta_em(alpha - h as f64 + 1.0)? / fact;
        let e = h as f64 - alpha;
        acc += match j {
            0 => c * x.powf(e),
            1 => c * e * x.powf(e - 1.0),
            _ => c * e * (e - 1.0) * x.powf(e - 2.0),
        };
    }
    acc += match j {
        0 => -zeta_zero * x.ln() + zeta_deriv_zero,
        1 => -zeta_zero / x,
        _ => zeta_zero / (x * x),
    };
    Ok(acc)
}

// ---------------------------------------------------------------------------
// tests
// ---------------------------------------------------------------------------
