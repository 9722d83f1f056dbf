//! Exact arithmetic on the Piatetski-Shapiro sequence ⌊ℓ^κ⌋: the parameter
//! type, sequence terms, value multiplicities, and the exponential-sum
//! diagnostics used to illustrate the equidistribution condition.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

/// Largest numerator/denominator accepted for a rational κ. Root exponents
/// beyond this are useless in practice and would only exhaust memory.
const MAX_EXPONENT: u64 = 10_000;

/// Multiplicity cap m: each sequence index may be used at most m times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") || t == "∞" {
            return Ok(Multiplicity::Infinite);
        }
        let m: u64 = t
            .parse()
            .map_err(|_| Error::Parse(format!("multiplicity cap {s:?}")))?;
        if m == 0 {
            return Err(Error::Parse("multiplicity cap must be >= 1".into()));
        }
        Ok(Multiplicity::Finite(m))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Multiplicity::Infinite)
    }

    /// (m+1)^e, which tends to [e < 0: 0 / e = 0: 1 / e > 0: ∞] as m -> ∞.
    pub fn m_plus_one_pow(&self, e: f64) -> f64 {
        match self {
            Multiplicity::Finite(m) => ((m + 1) as f64).powf(e),
            Multiplicity::Infinite => {
                if e < 0.0 {
                    0.0
                } else if e == 0.0 {
                    1.0
                } else {
                    f64::INFINITY
                }
            }
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(m) => write!(f, "{m}"),
            Multiplicity::Infinite => write!(f, "inf"),
        }
    }
}

/// Denominator of α = 1/κ in lowest terms; ∞ when α is irrational.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DAlpha {
    Finite(u64),
    Infinite,
}

/// The sequence parameter κ > 0 together with everything derived from
/// α = 1/κ: ⌈α⌉, {α}, and d_α.
///
/// Rational mode keeps κ = p/q exactly, so branches on α ∈ ℕ and on d_α are
/// exact integer decisions. Decimal mode is a flagged escape hatch for
/// irrational experiments; it uses guarded floating-point evaluation.
#[derive(Clone, Debug)]
pub struct KappaParam {
    rational: Option<BigRational>,
    kappa: f64,
    alpha: f64,
    alpha_exact: Option<BigRational>,
    /// κ = p/q in lowest terms (rational mode), so α = q/p.
    exponents: Option<(u32, u32)>,
    ceil_alpha: u64,
    frac_alpha: f64,
    d_alpha: DAlpha,
}

impl KappaParam {
    pub fn from_rational(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::domain("kappa must be positive"));
        }
        Self::from_big_rational(BigRational::new(p.into(), q.into()))
    }

    pub fn from_big_rational(kappa: BigRational) -> Result<Self> {
        if !kappa.is_positive() {
            return Err(Error::domain("kappa must be positive"));
        }
        let p = kappa
            .numer()
            .to_u64()
            .filter(|&v| v <= MAX_EXPONENT)
            .ok_or_else(|| Error::domain("kappa numerator too large"))?;
        let q = kappa
            .denom()
            .to_u64()
            .filter(|&v| v <= MAX_EXPONENT)
            .ok_or_else(|| Error::domain("kappa denominator too large"))?;
        let alpha_exact = kappa.recip();
        let alpha = q as f64 / p as f64;
        let ceil_alpha = q.div_ceil(p);
        let frac_alpha = (q % p) as f64 / p as f64;
        Ok(KappaParam {
            rational: Some(kappa),
            kappa: p as f64 / q as f64,
            alpha,
            alpha_exact: Some(alpha_exact),
            exponents: Some((p as u32, q as u32)),
            ceil_alpha,
            frac_alpha,
            d_alpha: DAlpha::Finite(p),
        })
    }

    /// Flagged decimal mode for irrational experiments. d_α is treated as ∞
    /// and the n^α ∈ ℕ indicator never fires.
    pub fn decimal(kappa: f64) -> Result<Self> {
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::domain("kappa must be positive and finite"));
        }
        let alpha = 1.0 / kappa;
        Ok(KappaParam {
            rational: None,
            kappa,
            alpha,
            alpha_exact: None,
            exponents: None,
            ceil_alpha: alpha.ceil() as u64,
            frac_alpha: alpha.fract(),
            d_alpha: DAlpha::Infinite,
        })
    }

    /// Accepts "p/q", a bare integer, or a decimal literal (decimal mode).
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some((p, q)) = t.split_once('/') {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("kappa {s:?}")))?;
            let q: u64 = q
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("kappa {s:?}")))?;
            return Self::from_rational(p, q);
        }
        if let Ok(k) = t.parse::<u64>() {
            return Self::from_rational(k, 1);
        }
        let k: f64 = t
            .parse()
            .map_err(|_| Error::Parse(format!("kappa {s:?}")))?;
        Self::decimal(k)
    }

    pub fn kappa_f64(&self) -> f64 {
        self.kappa
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn rational(&self) -> Option<&BigRational> {
        self.rational.as_ref()
    }

    pub fn alpha_exact(&self) -> Option<&BigRational> {
        self.alpha_exact.as_ref()
    }

    pub fn is_rational(&self) -> bool {
        self.rational.is_some()
    }

    /// Some(α) exactly when α ∈ ℕ (equivalently d_α = 1).
    pub fn alpha_integer(&self) -> Option<u64> {
        match (self.exponents, self.d_alpha) {
            (Some((_, q)), DAlpha::Finite(1)) => Some(q as u64),
            _ => None,
        }
    }

    pub fn ceil_alpha(&self) -> u64 {
        self.ceil_alpha
    }

    pub fn frac_alpha(&self) -> f64 {
        self.frac_alpha
    }

    pub fn d_alpha(&self) -> DAlpha {
        self.d_alpha
    }

    /// ⌊α⌋ as an exact integer decision.
    pub fn floor_alpha(&self) -> u64 {
        match self.alpha_integer() {
            Some(a) => a,
            None => {
                if self.is_rational() {
                    self.ceil_alpha - 1
                } else {
                    self.alpha.floor() as u64
                }
            }
        }
    }

    /// κ = p/q in lowest terms (rational mode only).
    pub fn exponent_pair(&self) -> Option<(u32, u32)> {
        self.exponents
    }
}

impl fmt::Display for KappaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.rational, self.exponents) {
            (Some(_), Some((p, 1))) => write!(f, "{p}"),
            (Some(_), Some((p, q))) => write!(f, "{p}/{q}"),
            _ => write!(f, "{}", self.kappa),
        }
    }
}

// ---------------------------------------------------------------------------
// Exact integer roots
// ---------------------------------------------------------------------------

fn u128_pow_checked(base: u128, exp: u32) -> Option<u128> {
    let mut r: u128 = 1;
    for _ in 0..exp {
        r = r.checked_mul(base)?;
    }
    Some(r)
}

/// Floor p-th root of x, exact.
pub(crate) fn u128_nth_root(x: u128, p: u32) -> u128 {
    if p == 1 || x <= 1 {
        return x;
    }
    let mut r = (x as f64).powf(1.0 / p as f64).round() as u128;
    while r > 0 && u128_pow_checked(r, p).is_none_or(|v| v > x) {
        r -= 1;
    }
    while u128_pow_checked(r + 1, p).is_some_and(|v| v <= x) {
        r += 1;
    }
    r
}

fn big_pow(base: &BigUint, exp: u32) -> BigUint {
    num_traits::pow(base.clone(), exp as usize)
}

/// Floor of (n^num)^(1/den), exact, choosing u128 arithmetic when it fits.
fn floor_pow_root(n: u64, num: u32, den: u32) -> BigUint {
    if let Some(r) = u128_pow_checked(n as u128, num) {
        return BigUint::from(u128_nth_root(r, den));
    }
    let base = big_pow(&BigUint::from(n), num);
    base.nth_root(den)
}

/// Ceil of (n^num)^(1/den) together with the exactness flag (true when the
/// root is an integer).
fn ceil_pow_root(n: u64, num: u32, den: u32) -> (BigUint, bool) {
    if let Some(r) = u128_pow_checked(n as u128, num) {
        let root = u128_nth_root(r, den);
        let exact = u128_pow_checked(root, den) == Some(r);
        return if exact {
            (BigUint::from(root), true)
        } else {
            (BigUint::from(root + 1), false)
        };
    }
    let base = big_pow(&BigUint::from(n), num);
    let root = base.nth_root(den);
    if big_pow(&root, den) == base {
        (root, true)
    } else {
        (root + BigUint::one(), false)
    }
}

// ---------------------------------------------------------------------------
// Sequence terms and multiplicities
// ---------------------------------------------------------------------------

/// ⌊ℓ^κ⌋, exactly in rational mode (integer q-th root of ℓ^p, no floating
/// floor). Decimal mode signals when ℓ^κ sits within 1e-12 of an integer.
pub fn ps_term(ell: u64, kappa: &KappaParam) -> Result<BigUint> {
    if ell == 0 {
        return Err(Error::domain("ps_term requires ell >= 1"));
    }
    match kappa.exponent_pair() {
        Some((p, q)) => Ok(floor_pow_root(ell, p, q)),
        None => {
            let t = (ell as f64).powf(kappa.kappa_f64());
            let frac = t.fract();
            if t > 2f64.powi(52) {
                return Err(Error::domain(format!(
                    "decimal-mode ps_term({ell}) exceeds exact f64 range"
                )));
            }
            if !(1e-12..=1.0 - 1e-12).contains(&frac) {
                return Err(Error::domain(format!(
                    "decimal-mode ps_term({ell}) is within 1e-12 of an integer boundary"
                )));
            }
            Ok(BigUint::from(t.floor() as u64))
        }
    }
}

/// ⌊ℓ^κ⌋ as u64 when it fits (rational mode fast path).
pub(crate) fn ps_term_u64(ell: u64, kappa: &KappaParam) -> Result<u64> {
    ps_term(ell, kappa)?
        .to_u64()
        .ok_or_else(|| Error::domain(format!("ps_term({ell}) does not fit in u64")))
}

/// w_n = #{ℓ : ⌊ℓ^κ⌋ = n} = ⌈(n+1)^α⌉ - ⌈n^α⌉, exact in rational mode.
pub fn value_multiplicity(n: u64, kappa: &KappaParam) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::domain("value_multiplicity requires n >= 1"));
    }
    match kappa.exponent_pair() {
        Some((p, q)) => {
            // α = q/p, so n^α is the p-th root of n^q.
            let (hi, _) = ceil_pow_root(n + 1, q, p);
            let (lo, _) = ceil_pow_root(n, q, p);
            Ok(hi - lo)
        }
        None => {
            let a = kappa.alpha();
            let hi = ((n + 1) as f64).powf(a).ceil() as u64;
            let lo = (n as f64).powf(a).ceil() as u64;
            Ok(BigUint::from(hi.saturating_sub(lo)))
        }
    }
}

/// Number of sequence indices ℓ with ⌊ℓ^κ⌋ <= n, i.e. ⌈(n+1)^α⌉ - 1.
pub fn index_count_up_to(n: u64, kappa: &KappaParam) -> Result<BigUint> {
    match kappa.exponent_pair() {
        Some((p, q)) => {
            let (hi, _) = ceil_pow_root(n + 1, q, p);
            Ok(hi - BigUint::one())
        }
        None => {
            let a = kappa.alpha();
            let hi = ((n + 1) as f64).powf(a).ceil();
            if hi > 2f64.powi(60) {
                return Err(Error::domain("index count exceeds u64 in decimal mode"));
            }
            Ok(BigUint::from(hi as u64 - 1))
        }
    }
}

/// {n^α} together with the exact n^α ∈ ℕ indicator.
///
/// Rational mode computes the floor root r of n^q exactly and then the
/// fractional part as r·((1+d)^{1/p} - 1) with d = (n^q - r^p)/r^p, which
/// keeps full relative precision even when n^α overflows the 53-bit integer
/// range. Decimal mode uses powf and never reports an integer (d_α = ∞).
pub fn frac_alpha_power(n: u64, kappa: &KappaParam) -> (f64, bool) {
    if n == 0 {
        return (0.0, true);
    }
    match kappa.exponent_pair() {
        Some((p, q)) => {
            // α = q/p
            if let Some(r_full) = u128_pow_checked(n as u128, q) {
                let root = u128_nth_root(r_full, p);
                let rp = u128_pow_checked(root, p).expect("root^p <= n^q fits");
                if rp == r_full {
                    return (0.0, true);
                }
                let d = (r_full - rp) as f64 / rp as f64;
                // (1+d)^{1/p} - 1 without cancellation
                let g = (d.ln_1p() / p as f64).exp_m1();
                ((root as f64) * g, false)
            } else {
                let base = big_pow(&BigUint::from(n), q);
                let root = base.nth_root(p);
                let rp = big_pow(&root, p);
                if rp == base {
                    return (0.0, true);
                }
                let num = &base - &rp;
                let d = big_ratio_f64(&num, &rp);
                let g = (d.ln_1p() / p as f64).exp_m1();
                (root.to_f64().unwrap_or(f64::INFINITY) * g, false)
            }
        }
        None => {
            let t = (n as f64).powf(kappa.alpha());
            (t.fract(), false)
        }
    }
}

/// num/den as f64 for nonnegative big integers with num < den, to ~2^-53.
fn big_ratio_f64(num: &BigUint, den: &BigUint) -> f64 {
    let q = (num << 64u32) / den;
    q.to_f64().unwrap_or(0.0) / 2f64.powi(64)
}

// ---------------------------------------------------------------------------
// Exponential-sum diagnostics
// ---------------------------------------------------------------------------

/// S = sum over H/2 <= ℓ < H of e^{2πi y ⌊ℓ^κ⌋}.
#[derive(Clone, Copy, Debug)]
pub struct WeylSumResult {
    pub real_part: f64,
    pub imag_part: f64,
    pub count: u64,
}

impl WeylSumResult {
    pub fn modulus(&self) -> f64 {
        self.real_part.hypot(self.imag_part)
    }
}

/// Exact-term Weyl sum over H/2 <= ℓ < H. Requires |y| <= 1/2 and H >= 4.
pub fn weyl_sum(h: u64, y: f64, kappa: &KappaParam) -> Result<WeylSumResult> {
    if h < 4 {
        return Err(Error::domain("weyl_sum requires H >= 4"));
    }
    if y.is_nan() || y.abs() > 0.5 {
        return Err(Error::domain("weyl_sum requires |y| <= 1/2"));
    }
    let lo = h.div_ceil(2);
    let mut re = 0.0;
    let mut im = 0.0;
    let mut count = 0u64;
    for ell in lo..h {
        let v = ps_term_u64(ell, kappa)?;
        if v >= (1u64 << 53) {
            return Err(Error::domain("weyl_sum term exceeds exact f64 range"));
        }
        let phase = 2.0 * PI * (y * v as f64).fract();
        re += phase.cos();
        im += phase.sin();
        count += 1;
    }
    Ok(WeylSumResult {
        real_part: re,
        imag_part: im,
        count,
    })
}

fn dist_to_nearest_int(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// The condition-(II) statistic (1/log H) Σ_{1<=ℓ<=H} ‖⌊ℓ^κ⌋ y‖² at a single y.
pub fn condition2_at(h: u64, y: f64, kappa: &KappaParam) -> Result<f64> {
    if h < 2 {
        return Err(Error::domain("condition2_at requires H >= 2"));
    }
    let mut sum = 0.0;
    for ell in 1..=h {
        let v = ps_term_u64(ell, kappa)? as f64;
        let d = dist_to_nearest_int(v * y);
        sum += d * d;
    }
    Ok(sum / (h as f64).ln())
}

/// Minimum of the condition-(II) statistic over a geometric grid of
/// y in [1/(2⌊H^κ⌋), 1/2].
///
/// This is a diagnostic lower-bound probe of the analytic infimum, not a
/// proof: the true condition takes an infimum over all y in the interval.
pub fn condition2_statistic(h: u64, kappa: &KappaParam, grid_size: u32) -> Result<f64> {
    if h < 16 {
        return Err(Error::domain("condition2_statistic requires H >= 16"));
    }
    if grid_size < 64 {
        return Err(Error::domain(
            "condition2_statistic requires grid_size >= 64",
        ));
    }
    let terms: Vec<f64> = (1..=h)
        .map(|ell| ps_term_u64(ell, kappa).map(|v| v as f64))
        .collect::<Result<_>>()?;
    let top = *terms.last().expect("h >= 16");
    let y_lo = 1.0 / (2.0 * top);
    let y_hi = 0.5;
    let ratio = (y_hi / y_lo).ln();
    let log_h = (h as f64).ln();
    let mut best = f64::INFINITY;
    for i in 0..grid_size {
        let t = i as f64 / (grid_size - 1) as f64;
        let y = y_lo * (ratio * t).exp();
        let mut sum = 0.0;
        for &v in &terms {
            let d = dist_to_nearest_int(v * y);
            sum += d * d;
        }
        best = best.min(sum / log_h);
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn kp(p: u64, q: u64) -> KappaParam {
        KappaParam::from_rational(p, q).unwrap()
    }

    #[test]
    fn kappa_derived_quantities() {
        let k = kp(3, 2); // α = 2/3
        assert_eq!(k.ceil_alpha(), 1);
        assert_eq!(k.d_alpha(), DAlpha::Finite(3));
        assert_eq!(k.alpha_integer(), None);
        assert!((k.frac_alpha() - 2.0 / 3.0).abs() < 1e-15);

        let k = kp(1, 2); // α = 2
        assert_eq!(k.alpha_integer(), Some(2));
        assert_eq!(k.d_alpha(), DAlpha::Finite(1));
        assert_eq!(k.ceil_alpha(), 2);
        assert_eq!(k.frac_alpha(), 0.0);

        let k = KappaParam::parse("6/4").unwrap(); // reduces to 3/2
        assert_eq!(k.exponent_pair(), Some((3, 2)));
        assert_eq!(k.to_string(), "3/2");

        assert!(KappaParam::parse("0").is_err());
        assert!(KappaParam::parse("-1/2").is_err());
    }

    #[test]
    fn ps_term_examples() {
        assert_eq!(ps_term(3, &kp(1, 2)).unwrap(), BigUint::from(1u32));
        assert_eq!(ps_term(3, &kp(3, 2)).unwrap(), BigUint::from(5u32));
        assert_eq!(ps_term(7, &kp(2, 1)).unwrap(), BigUint::from(49u32));
        assert!(ps_term(0, &kp(1, 2)).is_err());
    }

    #[test]
    fn ps_term_boundary_exactness() {
        // ⌊(k²)^(1/2)⌋ must be exactly k, and one less just below.
        let k = kp(1, 2);
        for j in [3u64, 10, 1_000, 65_535, 1_000_000] {
            assert_eq!(ps_term(j * j, &k).unwrap(), BigUint::from(j));
            assert_eq!(ps_term(j * j - 1, &k).unwrap(), BigUint::from(j - 1));
        }
        // Same at a fractional exponent: ℓ = m^2 has ℓ^{3/2} = m^3 exactly.
        let k32 = kp(3, 2);
        for m in [2u64, 7, 12, 99] {
            assert_eq!(ps_term(m * m, &k32).unwrap(), BigUint::from(m * m * m));
        }
    }

    #[test]
    fn value_multiplicity_examples() {
        assert_eq!(
            value_multiplicity(2, &kp(1, 2)).unwrap(),
            BigUint::from(5u32)
        );
        assert_eq!(
            value_multiplicity(3, &kp(2, 1)).unwrap(),
            BigUint::from(0u32)
        );
        assert_eq!(
            value_multiplicity(4, &kp(2, 1)).unwrap(),
            BigUint::from(1u32)
        );
    }

    #[test]
    fn multiplicities_partition_the_index_range() {
        // sum_{n<=N} w_n = max{ℓ : ⌊ℓ^κ⌋ <= N}
        for (p, q) in [(1u64, 2u64), (1, 3), (3, 2), (2, 1)] {
            let k = kp(p, q);
            for n_max in [10u64, 100, 1000] {
                let mut total = BigUint::zero();
                for n in 1..=n_max {
                    total += value_multiplicity(n, &k).unwrap();
                }
                // largest ℓ with ⌊ℓ^κ⌋ <= N, by doubling + bisection on the
                // monotone floor-root path (independent of the ceil roots)
                let fits = |ell: u64| ps_term(ell, &k).unwrap() <= BigUint::from(n_max);
                let mut hi = 1u64;
                while fits(hi) {
                    hi *= 2;
                }
                let mut lo = hi / 2; // fits(lo), !fits(hi)
                while hi - lo > 1 {
                    let mid = lo + (hi - lo) / 2;
                    if fits(mid) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                assert_eq!(total, BigUint::from(lo), "κ={p}/{q}, N={n_max}");
            }
        }
    }

    #[test]
    fn frac_alpha_power_detects_powers() {
        let k = kp(1, 2); // α = 2: every n has integer n^α
        for n in 1..50u64 {
            let (f, int) = frac_alpha_power(n, &k);
            assert!(int && f == 0.0);
        }
        let k = kp(2, 1); // α = 1/2: integers exactly at perfect squares
        for n in 1..200u64 {
            let (f, int) = frac_alpha_power(n, &k);
            let is_square = {
                let r = (n as f64).sqrt().round() as u64;
                r * r == n
            };
            assert_eq!(int, is_square, "n={n}");
            if !int {
                let expected = (n as f64).sqrt().fract();
                assert!((f - expected).abs() < 1e-12, "n={n}: {f} vs {expected}");
            }
        }
    }

    #[test]
    fn frac_alpha_power_large_values() {
        // α = 5/2: n^α overflows 53 bits well before n = 10^6; the exact-root
        // path must still deliver accurate fractional parts there.
        let k = kp(2, 5);
        let (f, int) = frac_alpha_power(1_000_000, &k);
        // 10^6 is a perfect square, so (10^6)^{5/2} = 10^15 is an integer.
        assert!(int && f == 0.0);
        let n = 999_983u64;
        let (f, int) = frac_alpha_power(n, &k);
        assert!(!int);
        assert!((0.0..1.0).contains(&f));
        // First-order cross-check from 128-bit integer arithmetic:
        // frac ≈ (n^5 - r²) / (2r) for r = ⌊n^{5/2}⌋.
        let full = (n as u128).pow(5);
        let root = u128_nth_root(full, 2);
        let expected = (full - root * root) as f64 / (2.0 * root as f64);
        assert!(
            (f - expected).abs() < 1e-6,
            "n={n}: {f} vs crude {expected}"
        );
    }

    #[test]
    fn weyl_sum_examples() {
        let k = kp(3, 2);
        let r = weyl_sum(8, 0.0, &k).unwrap();
        assert_eq!(r.count, 4);
        assert!((r.real_part - 4.0).abs() < 1e-12 && r.imag_part.abs() < 1e-12);

        let r = weyl_sum(4, 0.5, &kp(1, 1)).unwrap();
        assert!(r.modulus() < 1e-12);

        let r = weyl_sum(64, 0.3, &k).unwrap();
        assert!(r.modulus() <= r.count as f64 + 1e-9);

        assert!(weyl_sum(64, 0.7, &k).is_err());
    }

    #[test]
    fn condition2_hand_value() {
        // y = 1/2, κ = 1, H = 10: ‖ℓ/2‖ = 1/2 exactly for the 5 odd ℓ <= 10.
        let v = condition2_at(10, 0.5, &kp(1, 1)).unwrap();
        let expected = 1.25 / 10f64.ln();
        assert!((v - expected).abs() < 1e-12);
        assert!((v - 0.5429).abs() < 1e-4);
    }

    #[test]
    fn condition2_minimum_properties() {
        let k = kp(3, 2);
        let mut prev = -1.0;
        for h in [64u64, 256, 1024, 4096] {
            let m = condition2_statistic(h, &k, 64).unwrap();
            assert!(m >= 0.0);
            assert!(m > prev, "statistic should grow along H: {m} after {prev}");
            prev = m;
        }
    }

    #[test]
    fn fractional_parts_equidistribute() {
        // mean of {ℓ^κ} over ℓ <= 1e5 approaches 1/2 for non-integer κ.
        let mean = |k: f64| {
            let n = 100_000u64;
            let mut sum = 0.0;
            for ell in 1..=n {
                sum += (ell as f64).powf(k).fract();
            }
            sum / n as f64
        };
        assert!((mean(0.5) - 0.5).abs() < 0.01, "κ=1/2: {}", mean(0.5));
        assert!(
            (mean(2.0 / 3.0) - 0.5).abs() < 0.01,
            "κ=2/3: {}",
            mean(2.0 / 3.0)
        );
        // κ = 3/2 wanders further at this range (deviation 0.0157 at 1e5).
        assert!((mean(1.5) - 0.5).abs() < 0.02, "κ=3/2: {}", mean(1.5));
    }

    proptest! {
        #[test]
        fn ps_term_monotone(ell in 1u64..5_000, delta in 1u64..100, p in 1u32..5, q in 1u32..5) {
            let k = kp(p as u64, q as u64);
            let a = ps_term(ell, &k).unwrap();
            let b = ps_term(ell + delta, &k).unwrap();
            prop_assert!(a <= b);
        }

        #[test]
        fn ps_term_identity_at_kappa_one(ell in 1u64..100_000) {
            let k = kp(1, 1);
            prop_assert_eq!(ps_term(ell, &k).unwrap(), BigUint::from(ell));
        }

        #[test]
        fn weyl_modulus_bounded(h in 4u64..512, y in -0.5f64..0.5) {
            let k = kp(3, 2);
            let r = weyl_sum(h, y, &k).unwrap();
            prop_assert!(r.modulus() <= r.count as f64 + 1e-9);
        }
    }
}
