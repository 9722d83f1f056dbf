//! The closed-form Hardy-Ramanujan-type asymptotic for p_{κ,m}(n):
//! expansion coefficients of the log generating function, Bürmann reversion
//! of the saddle location, the λ-coefficients, and the final evaluator
//!
//!   p_{κ,m}(n) ~ λ_c (β/n)^δ exp( Σ_{0<=h<=α} λ(h) (n/β)^{(α-h)/(α+1)} ).

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{gamma_fn, zeta_em};
use crate::sequence::{KappaParam, Multiplicity};
use crate::series::PowerSeries;
use crate::zeta::{ps_zeta_deriv_zero, ps_zeta_zero, ps_zeta_zero_exact, ZetaMethod};

/// Truncation used for ζ'_κ(0) when the caller does not pick one.
pub const DEFAULT_DERIV_TRUNC: u64 = 100_000;

/// Small-argument expansion data of the (m-adjusted) log generating
/// function: L(t) ≈ a - b ln t + Σ_h c_h t^{h-α}.
#[derive(Clone, Debug)]
pub struct ExpansionCoefficients {
    pub a: f64,
    pub b: f64,
    /// c_h for 0 <= h < α (index h); zero beyond.
    pub c: Vec<f64>,
    pub alpha: f64,
    /// Truncation uncertainty carried by `a` (the ζ'_κ(0) series tail).
    pub a_error: f64,
}

/// Expansion coefficients of Σ over the m-adjusted generating function:
/// m = ∞: a = ζ'_κ(0), b = ζ_κ(0), c_h = Γ(α+1)ζ(α-h+1)/(h+1)!;
/// finite m subtracts the (m+1)-scaled copy, giving a = ζ_κ(0) ln(m+1),
/// b = 0, c_h scaled by (1 - (m+1)^{h-α}).
pub fn expansion_coefficients(
    kappa: &KappaParam,
    m: Multiplicity,
) -> Result<ExpansionCoefficients> {
    expansion_coefficients_with_trunc(kappa, m, DEFAULT_DERIV_TRUNC)
}

pub fn expansion_coefficients_with_trunc(
    kappa: &KappaParam,
    m: Multiplicity,
    n_trunc: u64,
) -> Result<ExpansionCoefficients> {
    let alpha = kappa.alpha();
    let zeta_zero = ps_zeta_zero(kappa);
    let (a, b, a_error) = match m {
        Multiplicity::Infinite => {
            let zd = ps_zeta_deriv_zero(kappa, n_trunc)?;
            (zd.value, zeta_zero, zd.error_bound)
        }
        Multiplicity::Finite(m) => (zeta_zero * ((m + 1) as f64).ln(), 0.0, 1e-15),
    };
    let gamma_top = gamma_fn(alpha + 1.0)?;
    let mut c = Vec::with_capacity(kappa.ceil_alpha() as usize);
    let mut fact = 1.0;
    for h in 0..kappa.ceil_alpha() {
        fact *= (h + 1) as f64;
        let hf = h as f64;
        let scale = 1.0 - m.m_plus_one_pow(hf - alpha);
        c.push(gamma_top * zeta_em(alpha - hf + 1.0)? / fact * scale);
    }
    Ok(ExpansionCoefficients {
        a,
        b,
        c,
        alpha,
        a_error,
    })
}

/// Bürmann reversion: with t̂ = u (1 + u P(u))^{-1/(α+1)}, recover
/// u = Σ_{j>=0} t̂^{j+1}/(j+1) · [z^j] (1 + z P(z))^{(j+1)/(α+1)}
/// through order t̂^{order+1}. P = 0 reverts to the identity.
pub fn burmann_revert(p: &PowerSeries, alpha: f64, order: usize) -> Result<PowerSeries> {
    let mut base = PowerSeries::zero(order);
    base.set_coeff(0, 1.0);
    for j in 0..order {
        base.set_coeff(j + 1, p.coeff(j));
    }
    let mut u = PowerSeries::zero(order + 1);
    for j in 0..=order {
        let pw = base.powf((j as f64 + 1.0) / (alpha + 1.0))?;
        u.set_coeff(j + 1, pw.coeff(j) / (j as f64 + 1.0));
    }
    Ok(u)
}

/// λ_0..λ_{j_max} from the expansion coefficients, by the reversion
/// procedure: P(u) = Σ_{h>=1} (α-h) c_h u^{h-1} / (α c_0), then
/// Σ_h c_h (α-h+1) u^{h-α} = t̂^{-α} Σ_j λ_j t̂^j.
pub fn lambda_coefficients(ec: &ExpansionCoefficients, j_max: usize) -> Result<Vec<f64>> {
    let alpha = ec.alpha;
    let c0 = ec.c.first().copied().unwrap_or(0.0);
    if c0.is_nan() || c0 <= 0.0 {
        return Err(Error::domain("lambda coefficients need c_0 > 0"));
    }
    let order = j_max + 2;
    let mut p = PowerSeries::zero(order);
    for (h, &ch) in ec.c.iter().enumerate().skip(1) {
        if h - 1 <= order {
            p.set_coeff(h - 1, (alpha - h as f64) * ch / (alpha * c0));
        }
    }
    let u = burmann_revert(&p, alpha, order)?;
    // U(t̂) = u/t̂, unit constant term
    let mut big_u = PowerSeries::zero(order);
    for j in 0..=order {
        big_u.set_coeff(j, u.coeff(j + 1));
    }
    let mut acc = PowerSeries::zero(order);
    for (h, &ch) in ec.c.iter().enumerate() {
        if h > order {
            break;
        }
        let factor = ch * (alpha - h as f64 + 1.0);
        if factor == 0.0 {
            continue;
        }
        let w = big_u.powf(h as f64 - alpha)?;
        acc = acc.add(&w.shift_up(h).scale(factor));
    }
    Ok((0..=j_max).map(|j| acc.coeff(j)).collect())
}

/// ζ'_κ(0) provenance attached to a model (m = ∞ only).
#[derive(Clone, Debug, Serialize)]
pub struct ZetaDerivProvenance {
    pub value: f64,
    pub error_bound: f64,
    pub method: String,
    pub truncation: u64,
}

/// The constants of the closed-form asymptotic for one (κ, m).
#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticModel {
    pub kappa: String,
    pub m: String,
    pub alpha: f64,
    /// β = α Γ(α+1) ζ(α+1) (1 - (m+1)^{-α})
    pub beta: f64,
    /// δ = 1/2 + (1/2 - ζ_κ(0) 1_{m=∞}) / (1+α)
    pub delta: f64,
    /// δ as an exact rational (rational κ only).
    pub delta_exact: Option<String>,
    pub lambda_c: f64,
    pub log_lambda_c: f64,
    /// λ(0..⌊α⌋) (α ∈ ℕ includes the constant term λ(α)).
    pub lambda: Vec<f64>,
    /// Multiplicative uncertainty of λ_c inherited from the ζ'_κ(0) tail.
    pub lambda_c_log_error: f64,
    pub zeta_deriv_zero: Option<ZetaDerivProvenance>,
}

impl AsymptoticModel {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("model serializes")
    }

    pub fn delta_exact_rational(&self) -> Option<BigRational> {
        self.delta_exact.as_ref().map(|s| {
            let (n, d) = s.split_once('/').unwrap_or((s.as_str(), "1"));
            BigRational::new(n.parse::<BigInt>().unwrap(), d.parse::<BigInt>().unwrap())
        })
    }
}

/// All Theorem constants for one (κ, m), with the default ζ'_κ(0) truncation.
pub fn theorem_constants(kappa: &KappaParam, m: Multiplicity) -> Result<AsymptoticModel> {
    theorem_constants_with_trunc(kappa, m, DEFAULT_DERIV_TRUNC)
}

pub fn theorem_constants_with_trunc(
    kappa: &KappaParam,
    m: Multiplicity,
    n_trunc: u64,
) -> Result<AsymptoticModel> {
    if let Multiplicity::Finite(0) = m {
        return Err(Error::domain("multiplicity cap must be >= 1"));
    }
    let alpha = kappa.alpha();
    let ec = expansion_coefficients_with_trunc(kappa, m, n_trunc)?;
    let beta = alpha * ec.c[0];
    let delta = 0.5
        + (0.5
            - if m.is_infinite() {
                ps_zeta_zero(kappa)
            } else {
                0.0
            })
            / (1.0 + alpha);
    let delta_exact = delta_exact_rational(kappa, m).map(|r| r.to_string());
    // λ_c = e^a / sqrt(2π β (α+1)) in both branches: a is ζ'_κ(0) (m = ∞)
    // or ζ_κ(0) ln(m+1) (finite m).
    let log_lambda_c = ec.a - 0.5 * (2.0 * std::f64::consts::PI * beta * (alpha + 1.0)).ln();
    let lambda = lambda_coefficients(&ec, kappa.floor_alpha() as usize)?;
    let zeta_deriv_zero = if m.is_infinite() {
        let zd = ps_zeta_deriv_zero(kappa, n_trunc)?;
        Some(ZetaDerivProvenance {
            value: zd.value,
            error_bound: zd.error_bound,
            method: match zd.method {
                ZetaMethod::Direct => "direct".into(),
                ZetaMethod::IntegerAlphaFormula => "integer-alpha-formula".into(),
                ZetaMethod::Continuation => "continuation".into(),
            },
            truncation: n_trunc,
        })
    } else {
        None
    };
    Ok(AsymptoticModel {
        kappa: kappa.to_string(),
        m: m.to_string(),
        alpha,
        beta,
        delta,
        delta_exact,
        lambda_c: log_lambda_c.exp(),
        log_lambda_c,
        lambda,
        lambda_c_log_error: ec.a_error,
        zeta_deriv_zero,
    })
}

/// δ as an exact rational: 1/2 + (1/2 - ζ_κ(0) 1_{m=∞})/(1+α).
fn delta_exact_rational(kappa: &KappaParam, m: Multiplicity) -> Option<BigRational> {
    let alpha = kappa.alpha_exact()?;
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let z = if m.is_infinite() {
        ps_zeta_zero_exact(kappa)?
    } else {
        BigRational::new(BigInt::from(0), BigInt::from(1))
    };
    let one = BigRational::new(BigInt::from(1), BigInt::from(1));
    Some(&half + (&half - z) / (one + alpha.clone()))
}

/// log p_{κ,m}(n) per the closed form; also returns the exponentiated value
/// (∞ when it overflows).
pub fn asymptotic_estimate(n: u64, model: &AsymptoticModel) -> (f64, f64) {
    let nf = n as f64;
    let alpha = model.alpha;
    let mut log = model.log_lambda_c + model.delta * (model.beta.ln() - nf.ln());
    for (h, lam) in model.lambda.iter().enumerate() {
        let e = (alpha - h as f64) / (alpha + 1.0);
        log += lam * (nf / model.beta).powf(e);
    }
    (log, log.exp())
}

// ---------------------------------------------------------------------------
// tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational_to_f64;
    use crate::partitions::{ln_biguint, pentagonal_oracle};
    use std::f64::consts::PI;

    fn kp(p: u64, q: u64) -> KappaParam {
        KappaParam::from_rational(p, q).unwrap()
    }

    /// Closed forms of λ_0..λ_3 for a general finite-support c (engine oracle).
    fn lambda_closed(alpha: f64, c: &[f64]) -> [f64; 4] {
        let c0 = c[0];
        let c1 = c.get(1).copied().unwrap_or(0.0);
        let c2 = c.get(2).copied().unwrap_or(0.0);
        let c3 = c.get(3).copied().unwrap_or(0.0);
        let l0 = c0 * (alpha + 1.0);
        let l1 = c1;
        let l2 = c2 - (alpha - 1.0).powi(2) * l1 * l1 / (2.0 * alpha * l0);
        let l3 = c3
            - (alpha - 1.0) * (alpha - 2.0) * l1 * l2 / (alpha * l0)
            - (alpha - 4.0) * (alpha - 1.0).powi(3) * l1.powi(3) / (6.0 * alpha * alpha * l0 * l0);
        [l0, l1, l2, l3]
    }

    fn ec_from(alpha: f64, c: Vec<f64>) -> ExpansionCoefficients {
        ExpansionCoefficients {
            a: 0.0,
            b: 0.0,
            c,
            alpha,
            a_error: 0.0,
        }
    }

    struct XorShift(u64);
    impl XorShift {
        fn next_f64(&mut self) -> f64 {
            let mut x = self.0;
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            self.0 = x;
            (x >> 11) as f64 / (1u64 << 53) as f64
        }
    }

    #[test]
    fn burmann_identity_for_zero_p() {
        let u = burmann_revert(&PowerSeries::zero(6), 1.7, 6).unwrap();
        assert_eq!(u.coeff(1), 1.0);
        for j in 2..=7 {
            assert!(u.coeff(j).abs() < 1e-15, "j={j}");
        }
    }

    #[test]
    fn burmann_constant_p_hand_expansion() {
        // α = 1, P = p0: u = t̂ + (p0/2) t̂² + O(t̂³)
        let p0 = 0.37;
        let mut p = PowerSeries::zero(4);
        p.set_coeff(0, p0);
        let u = burmann_revert(&p, 1.0, 4).unwrap();
        assert!((u.coeff(1) - 1.0).abs() < 1e-15);
        assert!((u.coeff(2) - p0 / 2.0).abs() < 1e-14, "{}", u.coeff(2));
    }

    #[test]
    fn burmann_round_trip_randomized() {
        let mut rng = XorShift(0x9e3779b97f4a7c15);
        for _ in 0..100 {
            let alpha = 0.3 + 3.4 * rng.next_f64();
            let order = 7usize;
            let mut p = PowerSeries::zero(order);
            for j in 0..=3 {
                p.set_coeff(j, rng.next_f64() - 0.5);
            }
            let u = burmann_revert(&p, alpha, order).unwrap();
            // forward: t̂(u) = u (1 + u P(u))^{-1/(1+α)}, composed with u(t̂)
            let mut base = PowerSeries::zero(order + 1);
            base.set_coeff(0, 1.0);
            for j in 0..order {
                base.set_coeff(j + 1, p.coeff(j));
            }
            let fwd = base.powf(-1.0 / (1.0 + alpha)).unwrap();
            let fwd_of_u = fwd.compose(&u.truncated(order + 1)).unwrap();
            let t_rt = fwd_of_u.mul(&u.truncated(order + 1));
            assert!((t_rt.coeff(1) - 1.0).abs() < 1e-10, "α={alpha}");
            for j in 2..=order {
                assert!(
                    t_rt.coeff(j).abs() < 1e-10,
                    "α={alpha}, j={j}: {}",
                    t_rt.coeff(j)
                );
            }
        }
    }

    #[test]
    fn lambda_first_two_are_exact() {
        let ec = ec_from(2.4, vec![1.3, 0.7, 0.2, 0.05]);
        let lam = lambda_coefficients(&ec, 2).unwrap();
        assert!((lam[0] - 1.3 * 3.4).abs() < 1e-13);
        assert!((lam[1] - 0.7).abs() < 1e-13);
    }

    #[test]
    fn lambda_two_at_alpha_two_closed_form() {
        // c = (2ζ(3), ζ(2), 0): λ₂ = -ζ(2)²/(24 ζ(3))
        let z3 = zeta_em(3.0).unwrap();
        let z2 = zeta_em(2.0).unwrap();
        let ec = ec_from(2.0, vec![2.0 * z3, z2, 0.0]);
        let lam = lambda_coefficients(&ec, 2).unwrap();
        let expected = -z2 * z2 / (24.0 * z3);
        assert!(
            (lam[2] - expected).abs() < 1e-12,
            "{} vs {expected}",
            lam[2]
        );
        assert!((expected + 0.093_790_3).abs() < 1e-6);
    }

    #[test]
    fn lambda_engine_matches_closed_forms_randomized() {
        let mut rng = XorShift(0x2545f4914f6cdd1d);
        for trial in 0..100 {
            let mut alpha = 1.0 + 3.0 * rng.next_f64();
            if (alpha - alpha.round()).abs() < 0.02 {
                alpha += 0.05;
            }
            let c = vec![
                0.5 + 0.5 * rng.next_f64(),
                rng.next_f64(),
                rng.next_f64(),
                rng.next_f64(),
            ];
            let lam = lambda_coefficients(&ec_from(alpha, c.clone()), 3).unwrap();
            let closed = lambda_closed(alpha, &c);
            for j in 0..4 {
                assert!(
                    (lam[j] - closed[j]).abs() <= 1e-9 * closed[j].abs().max(1.0),
                    "trial {trial}, α={alpha}, λ_{j}: engine {} vs closed {}",
                    lam[j],
                    closed[j]
                );
            }
        }
    }

    #[test]
    fn expansion_coefficients_examples() {
        // κ = 1, m = ∞
        let ec = expansion_coefficients(&kp(1, 1), Multiplicity::Infinite).unwrap();
        assert!((ec.a + 0.5 * (2.0 * PI).ln()).abs() < 1e-12);
        assert!((ec.b + 0.5).abs() < 1e-15);
        assert_eq!(ec.c.len(), 1);
        assert!((ec.c[0] - PI * PI / 6.0).abs() < 1e-12);

        // κ = 1/2, m = ∞: c₀ = 2ζ(3), c₁ = ζ(2), b = -2/3
        let ec = expansion_coefficients(&kp(1, 2), Multiplicity::Infinite).unwrap();
        let z3 = zeta_em(3.0).unwrap();
        let z2 = zeta_em(2.0).unwrap();
        assert!((ec.c[0] - 2.0 * z3).abs() < 1e-12);
        assert!((ec.c[1] - z2).abs() < 1e-12);
        assert!((ec.b + 2.0 / 3.0).abs() < 1e-15);

        // κ = 1/2, m = 1: a = -(2/3) ln 2, b = 0, c₀ = (3/4)·2ζ(3), c₁ = ζ(2)/2
        let ec = expansion_coefficients(&kp(1, 2), Multiplicity::Finite(1)).unwrap();
        assert!((ec.a + 2.0 / 3.0 * 2f64.ln()).abs() < 1e-12);
        assert_eq!(ec.b, 0.0);
        assert!((ec.c[0] - 1.5 * z3).abs() < 1e-12);
        assert!((ec.c[1] - 0.5 * z2).abs() < 1e-12);
    }

    #[test]
    fn lambda_zero_matches_displayed_formula() {
        // λ(0) = (1+κ) β
        for (p, q, m) in [
            (1u64, 1u64, Multiplicity::Infinite),
            (1, 2, Multiplicity::Infinite),
            (1, 2, Multiplicity::Finite(1)),
            (2, 1, Multiplicity::Infinite),
            (1, 3, Multiplicity::Finite(4)),
        ] {
            let k = kp(p, q);
            let model = theorem_constants(&k, m).unwrap();
            let expected = (1.0 + k.kappa_f64()) * model.beta;
            assert!(
                (model.lambda[0] - expected).abs() <= 1e-12 * expected,
                "κ={p}/{q} m={m}: λ(0) = {} vs (1+κ)β = {expected}",
                model.lambda[0]
            );
        }
    }

    #[test]
    fn hardy_ramanujan_estimate_accuracy() {
        let model = theorem_constants(&kp(1, 1), Multiplicity::Infinite).unwrap();
        let p = pentagonal_oracle(1000, false);
        let exact = ln_biguint(&p[1000]);
        let (log_est, _) = asymptotic_estimate(1000, &model);
        let ratio = (log_est - exact).exp();
        assert!((0.9..1.1).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn estimate_log_concave_increasing() {
        let model = theorem_constants(&kp(1, 2), Multiplicity::Infinite).unwrap();
        let logs: Vec<f64> = (1..=6)
            .map(|i| asymptotic_estimate(200 * i, &model).0)
            .collect();
        for w in logs.windows(2) {
            assert!(w[1] > w[0]);
        }
        let diffs: Vec<f64> = logs.windows(2).map(|w| w[1] - w[0]).collect();
        for w in diffs.windows(2) {
            assert!(w[1] < w[0], "first differences of log must decrease");
        }
    }

    #[test]
    fn corollary_form_for_kappa_above_one() {
        // p_κ(n) ~ c_κ n^{-(α+3)/(2(1+α))} exp((1+κ) β^{1/(1+α)} n^{1/(1+κ)})
        // with c_κ = sqrt(2) e^{ζ'_κ(0)} β^{1/(1+α)} / (2 sqrt(π(1+α))).
        for (p, q) in [(2u64, 1u64), (3, 2)] {
            let k = kp(p, q);
            let kappa = k.kappa_f64();
            let alpha = k.alpha();
            let model = theorem_constants(&k, Multiplicity::Infinite).unwrap();
            let beta = model.beta;
            let zd = model.zeta_deriv_zero.as_ref().unwrap().value;
            let c_kappa = 2f64.sqrt() * zd.exp() * beta.powf(1.0 / (1.0 + alpha))
                / (2.0 * (PI * (1.0 + alpha)).sqrt());
            let n = 50_000u64;
            let nf = n as f64;
            let corollary = c_kappa.ln() - (alpha + 3.0) / (2.0 * (1.0 + alpha)) * nf.ln()
                + (1.0 + kappa) * beta.powf(1.0 / (1.0 + alpha)) * nf.powf(1.0 / (1.0 + kappa));
            let (log_est, _) = asymptotic_estimate(n, &model);
            assert!(
                (log_est - corollary).abs() < 1e-9 * corollary.abs(),
                "κ={p}/{q}: {log_est} vs {corollary}"
            );
        }
    }

    #[test]
    fn delta_exact_strings() {
        let model = theorem_constants(&kp(1, 2), Multiplicity::Infinite).unwrap();
        assert_eq!(model.delta_exact.as_deref(), Some("8/9"));
        let model = theorem_constants(&kp(1, 2), Multiplicity::Finite(1)).unwrap();
        assert_eq!(model.delta_exact.as_deref(), Some("2/3"));
        let model = theorem_constants(&kp(1, 1), Multiplicity::Infinite).unwrap();
        assert_eq!(model.delta_exact.as_deref(), Some("1"));
        assert!((model.delta - 1.0).abs() < 1e-15);
    }

    #[test]
    fn model_json_contains_error_bars() {
        let model = theorem_constants(&kp(3, 2), Multiplicity::Infinite).unwrap();
        let j = model.to_json();
        assert!(j["lambda_c_log_error"].as_f64().unwrap() > 0.0);
        assert_eq!(j["zeta_deriv_zero"]["truncation"], 100_000);
        // κ = 3/2: α = 2/3, ζ_κ(0) = -1/2, δ = 1/2 + 1/(1+2/3) = 11/10.
        assert_eq!(j["delta_exact"], "11/10");
        let r = rational_to_f64(&model.delta_exact_rational().unwrap());
        assert!((r - 1.1).abs() < 1e-15);
    }
}
