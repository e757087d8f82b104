//! Independent evaluation of the average secrecy capacity and the outage
//! probability by direct 2-D quadrature of the defining integrals.
//!
//! This engine deliberately consumes only the Bessel form of the joint PDF
//! and shares nothing with the closed-form path beyond the special-function
//! primitives, so disagreement between the two pipelines is meaningful.
//!
//! Integration runs in the normalized coordinates u = α/λ1, v = β/λ2, where
//! the density is O(1), both marginals are unit exponentials, and the
//! truncation box [0, T]² has an immediate tail bound: the mass beyond
//! u = T is exactly e^(−T), so the discarded capacity is below
//! ln(1+λ1 T) e^(−T) — under 1e−15 for the default T = 40.

use crate::channel::{ChannelParams, SnrPair};
use crate::error::{Error, Result};
use crate::quadrature;

/// Tolerances and box truncation for the 2-D quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Target absolute error of the full double integral.
    pub abs_tol: f64,
    /// Box edge in normalized coordinates; the physical box is
    /// [0, tail_multiplier·λ1] × [0, tail_multiplier·λ2].
    pub tail_multiplier: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-9,
            tail_multiplier: 40.0,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::Domain(format!(
                "abs_tol must be > 0, got {}",
                self.abs_tol
            )));
        }
        if !(self.tail_multiplier >= 20.0) {
            return Err(Error::Domain(format!(
                "tail_multiplier must be >= 20, got {}",
                self.tail_multiplier
            )));
        }
        Ok(())
    }
}

const MAX_SEGMENTS: usize = 20_000;

/// Joint PDF in normalized coordinates, including the Jacobian λ1 λ2.
fn normalized_pdf(p: &ChannelParams, u: f64, v: f64) -> f64 {
    let s = SnrPair::new(u * p.lambda1(), v * p.lambda2()).expect("box coordinates are finite");
    crate::channel::joint_pdf_bessel(p, &s) * p.lambda1() * p.lambda2()
}

/// C̄_s = ∫∫ C_s(α,β) f(α,β) dα dβ by iterated adaptive quadrature
/// (inner β, outer α).
pub fn capacity_by_quadrature(p: &ChannelParams, q: &QuadratureSpec) -> Result<f64> {
    q.validate()?;
    let t = q.tail_multiplier;
    let snr_ratio = p.lambda1() / p.lambda2();
    // C_s vanishes for β ≥ α, i.e. v ≥ u λ1/λ2
    let inner_tol = q.abs_tol / (4.0 * t);
    let outer = quadrature::integrate(
        |u| {
            let log_main = (p.lambda1() * u).ln_1p();
            let v_max = (u * snr_ratio).min(t);
            if v_max <= 0.0 {
                return 0.0;
            }
            quadrature::integrate(
                |v| (log_main - (p.lambda2() * v).ln_1p()) * normalized_pdf(p, u, v),
                0.0,
                v_max,
                inner_tol,
                1e-12,
                MAX_SEGMENTS,
            )
            .map(|r| r.value)
            .unwrap_or(f64::NAN)
        },
        0.0,
        t,
        q.abs_tol / 2.0,
        0.0,
        MAX_SEGMENTS,
    )?;
    if !outer.value.is_finite() {
        return Err(Error::QuadratureNonconvergence {
            estimate: outer.value,
            error: f64::INFINITY,
        });
    }
    Ok(outer.value)
}

/// P_out(R) = Pr(α ≤ e^R (1+β) − 1) by integrating the joint PDF over the
/// outage region. The region boundary is the line α = e^R(1+β) − 1, handled
/// exactly by making it the inner integration limit (outer β, inner α).
pub fn outage_by_quadrature(p: &ChannelParams, rate_nats: f64, q: &QuadratureSpec) -> Result<f64> {
    q.validate()?;
    if !(rate_nats >= 0.0) || !rate_nats.is_finite() {
        return Err(Error::Domain(format!(
            "secrecy rate must be finite and >= 0, got {rate_nats}"
        )));
    }
    let t = q.tail_multiplier;
    let e_rate = rate_nats.exp();
    let inner_tol = q.abs_tol / (4.0 * t);
    let outer = quadrature::integrate(
        |v| {
            let beta = v * p.lambda2();
            let u_max = ((e_rate * (1.0 + beta) - 1.0) / p.lambda1()).min(t);
            if u_max <= 0.0 {
                return 0.0;
            }
            quadrature::integrate(
                |u| normalized_pdf(p, u, v),
                0.0,
                u_max,
                inner_tol,
                1e-12,
                MAX_SEGMENTS,
            )
            .map(|r| r.value)
            .unwrap_or(f64::NAN)
        },
        0.0,
        t,
        q.abs_tol / 2.0,
        0.0,
        MAX_SEGMENTS,
    )?;
    if !outer.value.is_finite() {
        return Err(Error::QuadratureNonconvergence {
            estimate: outer.value,
            error: f64::INFINITY,
        });
    }
    Ok(outer.value.clamp(0.0, 1.0))
}

/// Total probability mass inside the truncation box; used by tests to
/// confirm normalization.
pub fn pdf_mass_by_quadrature(p: &ChannelParams, q: &QuadratureSpec) -> Result<f64> {
    q.validate()?;
    let t = q.tail_multiplier;
    let inner_tol = q.abs_tol / (4.0 * t);
    let outer = quadrature::integrate(
        |u| {
            quadrature::integrate(
                |v| normalized_pdf(p, u, v),
                0.0,
                t,
                inner_tol,
                1e-12,
                MAX_SEGMENTS,
            )
            .map(|r| r.value)
            .unwrap_or(f64::NAN)
        },
        0.0,
        t,
        q.abs_tol / 2.0,
        0.0,
        MAX_SEGMENTS,
    )?;
    Ok(outer.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(l1: f64, l2: f64, rho: f64) -> ChannelParams {
        ChannelParams::new(l1, l2, rho).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::default().validate().is_ok());
        assert!(QuadratureSpec {
            abs_tol: 0.0,
            tail_multiplier: 40.0
        }
        .validate()
        .is_err());
        assert!(QuadratureSpec {
            abs_tol: 1e-9,
            tail_multiplier: 10.0
        }
        .validate()
        .is_err());
    }

    #[test]
    fn pdf_mass_is_one() {
        let q = QuadratureSpec::default();
        for &(l1, l2, rho) in &[(1.0, 1.0, 0.0), (10.0, 5.0, 0.6), (3.0, 3.0, 0.9)] {
            let mass = pdf_mass_by_quadrature(&params(l1, l2, rho), &q).unwrap();
            assert!(
                (mass - 1.0).abs() < 1e-6,
                "({l1},{l2},{rho}): mass = {mass}"
            );
        }
    }

    #[test]
    fn weak_main_channel_has_negligible_secrecy() {
        let v = capacity_by_quadrature(&params(0.01, 1.0, 0.0), &QuadratureSpec::default())
            .unwrap();
        assert!(v > 0.0 && v < 0.01);
    }

    #[test]
    fn tail_doubling_is_inert() {
        let p = params(2.0, 1.0, 0.5);
        let near = capacity_by_quadrature(
            &p,
            &QuadratureSpec {
                abs_tol: 1e-10,
                tail_multiplier: 40.0,
            },
        )
        .unwrap();
        let far = capacity_by_quadrature(
            &p,
            &QuadratureSpec {
                abs_tol: 1e-10,
                tail_multiplier: 80.0,
            },
        )
        .unwrap();
        assert!((near - far).abs() < 1e-9, "{near} vs {far}");
    }

    #[test]
    fn outage_symmetry_at_rate_zero() {
        let q = QuadratureSpec::default();
        let v = outage_by_quadrature(&params(1.0, 1.0, 0.0), 0.0, &q).unwrap();
        assert!((v - 0.5).abs() < 1e-8);
        // exchangeable joint density when λ1 = λ2, any ρ
        let v = outage_by_quadrature(&params(1.0, 1.0, 0.9), 0.0, &q).unwrap();
        assert!((v - 0.5).abs() < 1e-7);
    }

    #[test]
    fn outage_complementary_region() {
        // P(α ≤ β) + P(α > β) = 1; the complement comes from swapping the
        // channel roles at R = 0.
        let q = QuadratureSpec::default();
        let p_le = outage_by_quadrature(&params(2.0, 1.0, 0.4), 0.0, &q).unwrap();
        let p_gt = outage_by_quadrature(&params(1.0, 2.0, 0.4), 0.0, &q).unwrap();
        assert!((p_le + p_gt - 1.0).abs() < 1e-8);
    }

    #[test]
    fn tolerance_refinement_is_consistent() {
        let p = params(10.0, 5.0, 0.6);
        let coarse = capacity_by_quadrature(
            &p,
            &QuadratureSpec {
                abs_tol: 1e-7,
                tail_multiplier: 40.0,
            },
        )
        .unwrap();
        let fine = capacity_by_quadrature(
            &p,
            &QuadratureSpec {
                abs_tol: 1e-8,
                tail_multiplier: 40.0,
            },
        )
        .unwrap();
        assert!((coarse - fine).abs() < 1e-7);
    }
}
