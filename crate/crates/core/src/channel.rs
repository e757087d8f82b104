//! The correlated Rayleigh wiretap channel: parameters, the joint SNR
//! density in both its Bessel and series forms, the series coefficients
//! c_k, and the instantaneous secrecy capacity.
//!
//! The joint density of the instantaneous SNRs (α, β) is the Kibble
//! bivariate exponential
//!
//!   f(α,β) = I0( 2√(αβρ/(λ1λ2)) / (1−ρ) )
//!            · exp(−(α/λ1 + β/λ2)/(1−ρ)) / ((1−ρ) λ1 λ2)
//!
//! where ρ is the power correlation between α and β. Expanding I0 as a
//! power series rewrites f as Σ_k c_k f_k(α,β) with
//! c_k = ρ^k / ((k!)² (1−ρ)^(2k+1)).

use crate::closedform::SeriesControl;
use crate::error::{Error, Result};
use crate::specfun;

/// Largest admissible power correlation. Above this the c_k series sheds
/// accuracy faster than double precision can absorb, so such parameters are
/// rejected outright instead of silently degrading.
pub const RHO_MAX: f64 = 0.99;

/// The triple (λ1, λ2, ρ): mean linear SNRs of the main and eavesdropper
/// channels plus their power correlation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    lambda1: f64,
    lambda2: f64,
    rho: f64,
}

impl ChannelParams {
    pub fn new(lambda1: f64, lambda2: f64, rho: f64) -> Result<Self> {
        if !(lambda1 > 0.0) || !lambda1.is_finite() {
            return Err(Error::Domain(format!(
                "lambda1 must be finite and > 0, got {lambda1}"
            )));
        }
        if !(lambda2 > 0.0) || !lambda2.is_finite() {
            return Err(Error::Domain(format!(
                "lambda2 must be finite and > 0, got {lambda2}"
            )));
        }
        if !(0.0..=RHO_MAX).contains(&rho) {
            return Err(Error::Domain(format!(
                "rho must lie in [0, {RHO_MAX}], got {rho}"
            )));
        }
        Ok(ChannelParams {
            lambda1,
            lambda2,
            rho,
        })
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
}

/// One realization of the instantaneous SNR pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrPair {
    alpha: f64,
    beta: f64,
}

impl SnrPair {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha >= 0.0) || !alpha.is_finite() || !(beta >= 0.0) || !beta.is_finite() {
            return Err(Error::Domain(format!(
                "SNRs must be finite and >= 0, got alpha={alpha}, beta={beta}"
            )));
        }
        Ok(SnrPair { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Series coefficient c_k = ρ^k / ((k!)² (1−ρ)^(2k+1)).
///
/// Assembled in log space for k > 20 since the pieces span hundreds of
/// orders of magnitude long before the product does.
pub fn series_coefficient(k: u32, rho: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::Domain(format!(
            "series coefficient requires 0 <= rho < 1, got {rho}"
        )));
    }
    if rho == 0.0 {
        return Ok(if k == 0 { 1.0 } else { 0.0 });
    }
    if k <= 20 {
        let kf = specfun::factorial(k);
        Ok(rho.powi(k as i32) / (kf * kf * (1.0 - rho).powi(2 * k as i32 + 1)))
    } else {
        let ln_ck = k as f64 * rho.ln()
            - 2.0 * specfun::ln_factorial(k)
            - (2 * k + 1) as f64 * (1.0 - rho).ln();
        Ok(ln_ck.exp())
    }
}

/// Joint PDF f(α,β) evaluated through the scaled Bessel function, so the
/// I0 growth and the exponential decay cancel before anything overflows.
pub fn joint_pdf_bessel(p: &ChannelParams, s: &SnrPair) -> f64 {
    let one_m_rho = 1.0 - p.rho;
    let a = s.alpha / p.lambda1;
    let b = s.beta / p.lambda2;
    let arg = 2.0 * (p.rho * a * b).sqrt() / one_m_rho;
    let i0s = specfun::bessel_i0_scaled(arg).expect("argument is >= 0 by construction");
    // 2√(ρab) ≤ a+b, so the combined exponent is never positive
    i0s * (arg - (a + b) / one_m_rho).exp() / (one_m_rho * p.lambda1 * p.lambda2)
}

/// Joint PDF via the series Σ_k c_k f_k(α,β), truncated per `ctrl`.
pub fn joint_pdf_series(p: &ChannelParams, s: &SnrPair, ctrl: &SeriesControl) -> Result<f64> {
    ctrl.validate()?;
    let one_m_rho = 1.0 - p.rho;
    let a = s.alpha / p.lambda1;
    let b = s.beta / p.lambda2;

    // term_k = c_k (ab)^k e^(−(a+b)/(1−ρ)) / (λ1 λ2); the ratio between
    // consecutive terms is ρ a b / ((k+1)² (1−ρ)²).
    let mut term = (-(a + b) / one_m_rho).exp() / (one_m_rho * p.lambda1 * p.lambda2);
    let ratio_num = p.rho * a * b / (one_m_rho * one_m_rho);
    let mut sum = 0.0f64;
    let mut passes = 0u32;
    for k in 0..=ctrl.k_max {
        sum += term;
        if p.rho == 0.0 {
            return Ok(sum);
        }
        if k > 0 && term <= ctrl.rel_tol * sum {
            passes += 1;
            if passes >= ctrl.consecutive_passes {
                return Ok(sum);
            }
        } else {
            passes = 0;
        }
        let kf = (k + 1) as f64;
        term *= ratio_num / (kf * kf);
    }
    Err(Error::ConvergenceFailure {
        partial: sum,
        terms: ctrl.k_max as usize + 1,
    })
}

/// Instantaneous secrecy capacity in nats:
/// C_s(α,β) = ln(1+α) − ln(1+β) when α > β, else 0.
pub fn instantaneous_secrecy_capacity(s: &SnrPair) -> f64 {
    // log-ratio form: ln((1+α)/(1+β)) = ln1p((α−β)/(1+β))
    ((s.alpha - s.beta) / (1.0 + s.beta)).ln_1p().max(0.0)
}
