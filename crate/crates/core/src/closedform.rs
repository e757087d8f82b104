//! Closed-form series for the average secrecy capacity and the secrecy
//! outage probability of the correlated Rayleigh wiretap channel.
//!
//! The capacity series is Σ_k c_k (R_k¹ − R_k²). Evaluated literally, c_k
//! and the R terms separately overflow long before k reaches the truncation
//! point, so both are folded analytically: with
//! G(λ,k,μ) = μ^(k+1) F(λ,k,μ)/k! (bounded, O(ln k)) each summand becomes
//!
//!   c_k (R_k¹ − R_k²) = ρ^k (1−ρ) [ G(λ1,k,1/(1−ρ))
//!       − p1^(k+1) Σ_m C(k+m,m) q1^m G(λ1,k+m,μ1)
//!       − p2^(k+1) Σ_m C(k+m,m) q2^m G(λ2,k+m,μ2) ]
//!
//! with r_i the SNR ratio, q_i = r_i/(1+r_i), p_i = 1/(1+r_i) and
//! μ_i = (1+r_i)/(1−ρ). Every factor lives in [0,1] or grows
//! logarithmically, so the sum is stable for any admissible ρ.
//!
//! The outage series reduces the same way to
//!
//!   P_out(R) = 1 − (1−ρ) Σ_k ρ^k p^(k+1) Σ_{n=0}^k C(k+n,n) q^n Q(k−n+1, z)
//!
//! with μ = e^R λ2/λ1, y = (e^R−1)/λ1, z = y/(1−ρ), q = μ/(1+μ),
//! p = 1/(1+μ) and Q the regularized upper incomplete gamma (a Poisson
//! CDF). The inner sum over the published binomial/power form collapses to
//! this after reading the binomial as C(m,n) and restoring a (1−ρ)^(k+1)
//! factor that the ρ = 0 and λ1 = λ2 sanity limits require; both readings
//! are pinned by the quadrature and Monte-Carlo oracles in the test suite.

use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use crate::specfun::{self, EvalDiag};

/// Truncation policy for the k-series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    /// Stop once |term| / |partial sum| falls below this.
    pub rel_tol: f64,
    /// Number of consecutive sub-tolerance terms required before stopping,
    /// guarding against terms that pass through zero.
    pub consecutive_passes: u32,
    /// Hard cap on the series index.
    pub k_max: u32,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            rel_tol: 1e-12,
            consecutive_passes: 3,
            k_max: 200,
        }
    }
}

impl SeriesControl {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-3) {
            return Err(Error::Domain(format!(
                "rel_tol must lie in (0, 1e-3], got {}",
                self.rel_tol
            )));
        }
        if self.consecutive_passes < 1 {
            return Err(Error::Domain("consecutive_passes must be >= 1".into()));
        }
        if self.k_max < 10 {
            return Err(Error::Domain(format!(
                "k_max must be >= 10, got {}",
                self.k_max
            )));
        }
        Ok(())
    }
}

/// Average secrecy capacity with convergence diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityResult {
    /// C̄_s in nats, ≥ 0.
    pub value: f64,
    /// Number of k-terms summed.
    pub terms_used: u32,
    /// |last summed term| / |value|.
    pub last_term_ratio: f64,
    /// Worst special-function diagnostic encountered.
    pub diag: EvalDiag,
}

/// Secrecy outage probability with the rate-derived parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageResult {
    /// P_out(R) in [0, 1].
    pub value: f64,
    pub terms_used: u32,
    /// y = (e^R − 1)/λ1.
    pub y: f64,
    /// μ = e^R λ2/λ1.
    pub mu: f64,
}

/// Kahan-compensated accumulator.
#[derive(Debug, Default, Clone, Copy)]
struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    fn add(&mut self, value: f64) {
        let y = value - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

/// Incrementally extended table of G(λ, j, μ) = μ^(j+1) F(λ,j,μ)/j!.
struct LogMomentTable {
    lambda: f64,
    mu: f64,
    values: Vec<f64>,
    diag: EvalDiag,
}

impl LogMomentTable {
    fn new(lambda: f64, mu: f64) -> Result<Self> {
        Ok(LogMomentTable {
            lambda,
            mu,
            values: vec![specfun::exp_e1_scaled(mu / lambda)?],
            diag: EvalDiag::default(),
        })
    }

    fn get(&mut self, j: u32) -> Result<f64> {
        while self.values.len() <= j as usize {
            let next = self.values.len() as u32;
            let (h, d) = specfun::f_k_scaled(self.lambda, next, self.mu)?;
            self.diag = self.diag.worst(d);
            let prev = *self.values.last().expect("table starts non-empty");
            self.values.push(prev + self.lambda * h);
        }
        Ok(self.values[j as usize])
    }
}

/// The geometry-independent pieces of one capacity summand.
struct CapacitySeries {
    q1: f64,
    p1: f64,
    q2: f64,
    p2: f64,
    g_nu: LogMomentTable,
    g_mu1: LogMomentTable,
    g_mu2: LogMomentTable,
}

impl CapacitySeries {
    fn new(p: &ChannelParams) -> Result<Self> {
        let rho = p.rho();
        let one_m_rho = 1.0 - rho;
        let r1 = p.lambda1() / p.lambda2();
        let r2 = p.lambda2() / p.lambda1();
        Ok(CapacitySeries {
            q1: r1 / (1.0 + r1),
            p1: 1.0 / (1.0 + r1),
            q2: r2 / (1.0 + r2),
            p2: 1.0 / (1.0 + r2),
            g_nu: LogMomentTable::new(p.lambda1(), 1.0 / one_m_rho)?,
            g_mu1: LogMomentTable::new(p.lambda1(), (1.0 + r1) / one_m_rho)?,
            g_mu2: LogMomentTable::new(p.lambda2(), (1.0 + r2) / one_m_rho)?,
        })
    }

    /// c_k R_k¹ / (ρ^k (1−ρ)).
    fn scaled_r1(&mut self, k: u32) -> Result<f64> {
        let direct = self.g_nu.get(k)?;
        Ok(direct - self.p1.powi(k as i32 + 1) * self.negative_binomial_sum(k, true)?)
    }

    /// c_k R_k² / (ρ^k (1−ρ)).
    fn scaled_r2(&mut self, k: u32) -> Result<f64> {
        Ok(self.p2.powi(k as i32 + 1) * self.negative_binomial_sum(k, false)?)
    }

    /// Σ_{m=0}^k C(k+m,m) q^m G(λ, k+m, μ) for the requested branch.
    fn negative_binomial_sum(&mut self, k: u32, first: bool) -> Result<f64> {
        let q = if first { self.q1 } else { self.q2 };
        let table = if first {
            &mut self.g_mu1
        } else {
            &mut self.g_mu2
        };
        let mut weight = 1.0f64;
        let mut acc = KahanSum::default();
        acc.add(table.get(k)?);
        for m in 1..=k {
            weight *= q * (k + m) as f64 / m as f64;
            acc.add(weight * table.get(k + m)?);
        }
        Ok(acc.value())
    }

    fn diag(&self) -> EvalDiag {
        self.g_nu
            .diag
            .worst(self.g_mu1.diag)
            .worst(self.g_mu2.diag)
    }
}

/// (k!)² (1−ρ)^(2k+2), the factor relating the scaled summand back to the
/// raw R_k terms.
fn r_term_unscale(k: u32, rho: f64) -> f64 {
    if k <= 20 {
        let kf = specfun::factorial(k);
        kf * kf * (1.0 - rho).powi(2 * k as i32 + 2)
    } else {
        (2.0 * specfun::ln_factorial(k) + (2 * k + 2) as f64 * (1.0 - rho).ln()).exp()
    }
}

/// R_k¹: the main-channel part of the k-th capacity summand,
/// k!(1−ρ)^(k+1) F(λ1,k,1/(1−ρ))
///   − k! Σ_m (λ1/λ2)^m/m! (1−ρ)^(k+1−m) F(λ1,k+m,(1+λ1/λ2)/(1−ρ)).
pub fn r1_term(p: &ChannelParams, k: u32) -> Result<f64> {
    let mut series = CapacitySeries::new(p)?;
    Ok(series.scaled_r1(k)? * r_term_unscale(k, p.rho()))
}

/// R_k²: the eavesdropper part,
/// k! Σ_m (λ2/λ1)^m/m! (1−ρ)^(k+1−m) F(λ2,k+m,(1+λ2/λ1)/(1−ρ)).
pub fn r2_term(p: &ChannelParams, k: u32) -> Result<f64> {
    let mut series = CapacitySeries::new(p)?;
    Ok(series.scaled_r2(k)? * r_term_unscale(k, p.rho()))
}

/// Average secrecy capacity C̄_s = Σ_k c_k (R_k¹ − R_k²) in nats.
pub fn average_secrecy_capacity(p: &ChannelParams, ctrl: &SeriesControl) -> Result<CapacityResult> {
    ctrl.validate()?;
    let mut series = CapacitySeries::new(p)?;
    let rho = p.rho();
    let one_m_rho = 1.0 - rho;

    let mut acc = KahanSum::default();
    let mut rho_pow = 1.0f64;
    let mut passes = 0u32;
    let mut last_term = 0.0f64;
    let mut terms_used = 0u32;
    let mut converged = false;

    for k in 0..=ctrl.k_max {
        let term = rho_pow * one_m_rho * (series.scaled_r1(k)? - series.scaled_r2(k)?);
        acc.add(term);
        last_term = term;
        terms_used = k + 1;
        if rho == 0.0 {
            // c_k vanishes for k >= 1
            converged = true;
            break;
        }
        if k > 0 && term.abs() <= ctrl.rel_tol * acc.value().abs() {
            passes += 1;
            if passes >= ctrl.consecutive_passes {
                converged = true;
                break;
            }
        } else {
            passes = 0;
        }
        rho_pow *= rho;
    }

    let mut value = acc.value();
    if !converged {
        return Err(Error::ConvergenceFailure {
            partial: value,
            terms: terms_used as usize,
        });
    }
    if value < 0.0 {
        if value >= -1e-12 {
            value = 0.0;
        } else {
            return Err(Error::NumericalInconsistency(format!(
                "average secrecy capacity evaluated to {value:e} < 0"
            )));
        }
    }
    Ok(CapacityResult {
        value,
        terms_used,
        last_term_ratio: last_term.abs() / value.abs().max(f64::MIN_POSITIVE),
        diag: series.diag(),
    })
}

/// Secrecy outage probability P_out(R) = Pr(C_s ≤ R) for a target secrecy
/// rate R in nats.
pub fn outage_probability(
    p: &ChannelParams,
    rate_nats: f64,
    ctrl: &SeriesControl,
) -> Result<OutageResult> {
    ctrl.validate()?;
    if !(rate_nats >= 0.0) || !rate_nats.is_finite() {
        return Err(Error::Domain(format!(
            "secrecy rate must be finite and >= 0, got {rate_nats}"
        )));
    }
    let rho = p.rho();
    let one_m_rho = 1.0 - rho;
    let e_rate = rate_nats.exp();
    let y = (e_rate - 1.0) / p.lambda1();
    let mu = e_rate * p.lambda2() / p.lambda1();
    let z = y / one_m_rho;
    let q = mu / (1.0 + mu);
    let pp = 1.0 / (1.0 + mu);

    // Poisson CDF table: poisson_cdf[j] = Q(j+1, z) = e^(−z) Σ_{i≤j} z^i/i!
    let mut poisson_cdf: Vec<f64> = Vec::with_capacity(64);
    let mut pmf_term = if z > 700.0 { 0.0 } else { (-z).exp() };
    let mut cdf_acc = pmf_term;
    let huge_z = z > 700.0;
    let mut extend_cdf = |table: &mut Vec<f64>, upto: u32| -> Result<()> {
        while table.len() <= upto as usize {
            let j = table.len() as u32;
            if huge_z {
                // e^(−z) underflows; delegate to the log-space path
                table.push(specfun::regularized_upper_gamma_int(j + 1, z)?);
            } else {
                if j > 0 {
                    pmf_term *= z / j as f64;
                    cdf_acc += pmf_term;
                }
                table.push(cdf_acc.min(1.0));
            }
        }
        Ok(())
    };

    let mut acc = KahanSum::default();
    let mut rho_pow = 1.0f64;
    let mut passes = 0u32;
    let mut terms_used = 0u32;
    let mut converged = false;

    for k in 0..=ctrl.k_max {
        extend_cdf(&mut poisson_cdf, k)?;
        // Σ_{n=0}^k C(k+n,n) q^n Q(k−n+1, z)
        let mut weight = 1.0f64;
        let mut inner = KahanSum::default();
        inner.add(poisson_cdf[k as usize]);
        for n in 1..=k {
            weight *= q * (k + n) as f64 / n as f64;
            inner.add(weight * poisson_cdf[(k - n) as usize]);
        }
        let term = rho_pow * one_m_rho * pp.powi(k as i32 + 1) * inner.value();
        acc.add(term);
        terms_used = k + 1;
        if rho == 0.0 {
            converged = true;
            break;
        }
        if k > 0 && term.abs() <= ctrl.rel_tol * acc.value().abs().max(f64::MIN_POSITIVE) {
            passes += 1;
            if passes >= ctrl.consecutive_passes {
                converged = true;
                break;
            }
        } else {
            passes = 0;
        }
        rho_pow *= rho;
    }

    let survival = acc.value();
    if !converged {
        return Err(Error::ConvergenceFailure {
            partial: 1.0 - survival,
            terms: terms_used as usize,
        });
    }
    let raw = 1.0 - survival;
    if !(-1e-12..=1.0 + 1e-12).contains(&raw) {
        return Err(Error::NumericalInconsistency(format!(
            "outage probability evaluated to {raw:e}, outside [0,1]"
        )));
    }
    Ok(OutageResult {
        value: raw.clamp(0.0, 1.0),
        terms_used,
        y,
        mu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::SnrPair;
    use crate::channel::{instantaneous_secrecy_capacity, joint_pdf_bessel};
    use crate::quadrature::integrate;

    fn params(l1: f64, l2: f64, rho: f64) -> ChannelParams {
        ChannelParams::new(l1, l2, rho).unwrap()
    }

    #[test]
    fn control_validation() {
        let mut ctrl = SeriesControl::default();
        assert!(ctrl.validate().is_ok());
        ctrl.rel_tol = 1e-2;
        assert!(ctrl.validate().is_err());
        ctrl.rel_tol = 1e-12;
        ctrl.k_max = 5;
        assert!(ctrl.validate().is_err());
    }

    #[test]
    fn r1_independent_channels() {
        // k=0, ρ=0, λ1=λ2=1: R_0¹ = e E1(1) − (1/2) e² E1(2), equal to the
        // quadrature of ∫ ln(1+u) e^(−u) (1 − e^(−u)) du (frozen).
        let v = r1_term(&params(1.0, 1.0, 0.0), 0).unwrap();
        assert!((v - 0.415_683_053_879_082_782).abs() < 1e-12);
    }

    #[test]
    fn r2_independent_channels() {
        // k=0, ρ=0, λ1=λ2=1: R_0² = (1/2) e² E1(2) (frozen from quadrature)
        let v = r2_term(&params(1.0, 1.0, 0.0), 0).unwrap();
        assert!((v - 0.180_664_308_444_111_292).abs() < 1e-12);
    }

    #[test]
    fn r_terms_nonnegative() {
        for &(l1, l2, rho) in &[(1.0, 1.0, 0.0), (2.0, 1.0, 0.5), (10.0, 3.0, 0.9)] {
            let p = params(l1, l2, rho);
            for k in 0..6 {
                assert!(r1_term(&p, k).unwrap() >= 0.0);
                assert!(r2_term(&p, k).unwrap() >= 0.0);
            }
        }
    }

    #[test]
    fn r2_is_lambda_swapped_second_sum_of_r1() {
        // R_k²(λ1,λ2) equals the subtracted sum inside R_k¹(λ2,λ1), i.e.
        // firstpiece(λ2,λ1) − R_k¹(λ2,λ1).
        for k in 0..5u32 {
            let p = params(2.0, 1.0, 0.3);
            let swapped = params(1.0, 2.0, 0.3);
            let one_m_rho: f64 = 0.7;
            // k!(1−ρ)^(k+1) F(λ1,k,1/(1−ρ)) with λ1 = 1 (the swapped main channel)
            let (f, _) = crate::specfun::f_log_moment(1.0, k, 1.0 / one_m_rho).unwrap();
            let first_piece = crate::specfun::factorial(k) * one_m_rho.powi(k as i32 + 1) * f;
            let lhs = r2_term(&p, k).unwrap();
            let rhs = first_piece - r1_term(&swapped, k).unwrap();
            assert!(
                (lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1e-12),
                "k={k}: {lhs:e} vs {rhs:e}"
            );
        }
    }

    #[test]
    fn r1_matches_two_dimensional_quadrature() {
        // k=2, (λ1,λ2,ρ)=(2,1,0.5): R_k¹ is the normalized-variable double
        // integral of ln(1+λ1 u) e^(−(u+v)/(1−ρ)) u^k v^k over v < λ1 u/λ2.
        let p = params(2.0, 1.0, 0.5);
        let k = 2u32;
        let quad = integrate(
            |u| {
                let inner = integrate(
                    |v| (-(v) / 0.5).exp() * v.powi(k as i32),
                    0.0,
                    2.0 * u,
                    1e-14,
                    1e-12,
                    4000,
                )
                .unwrap()
                .value;
                (2.0 * u).ln_1p() * (-u / 0.5).exp() * u.powi(k as i32) * inner
            },
            0.0,
            30.0,
            1e-11,
            0.0,
            4000,
        )
        .unwrap()
        .value;
        let v = r1_term(&p, k).unwrap();
        assert!(
            (v - quad).abs() <= 1e-8 * quad,
            "closed {v:e} vs quad {quad:e}"
        );
    }

    #[test]
    fn capacity_rho_zero_single_term() {
        let p = params(10.0, 5.0, 0.0);
        let r = average_secrecy_capacity(&p, &SeriesControl::default()).unwrap();
        assert_eq!(r.terms_used, 1);
        // must equal the k = 0 R-term difference exactly
        let expected = r1_term(&p, 0).unwrap() - r2_term(&p, 0).unwrap();
        assert_eq!(r.value, expected.max(0.0));
    }

    #[test]
    fn capacity_decreases_with_correlation() {
        let ctrl = SeriesControl {
            k_max: 400,
            ..SeriesControl::default()
        };
        let mut prev = f64::INFINITY;
        for &rho in &[0.0, 0.3, 0.6, 0.9] {
            let v = average_secrecy_capacity(&params(10.0, 10.0, rho), &ctrl)
                .unwrap()
                .value;
            assert!(v < prev, "rho={rho}: {v} !< {prev}");
            prev = v;
        }
    }

    #[test]
    fn capacity_nondecreasing_in_main_snr() {
        let ctrl = SeriesControl::default();
        let mut prev = 0.0;
        for &l1 in &[0.5, 1.0, 2.0, 5.0, 20.0, 80.0] {
            let v = average_secrecy_capacity(&params(l1, 4.0, 0.4), &ctrl)
                .unwrap()
                .value;
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn capacity_convergence_failure_carries_partial() {
        let ctrl = SeriesControl {
            rel_tol: 1e-12,
            consecutive_passes: 3,
            k_max: 10,
        };
        // ρ = 0.9 needs ~250 terms at this tolerance
        match average_secrecy_capacity(&params(1.0, 1.0, 0.9), &ctrl) {
            Err(Error::ConvergenceFailure { partial, terms }) => {
                assert!(partial > 0.0);
                assert_eq!(terms, 11);
            }
            other => panic!("expected convergence failure, got {other:?}"),
        }
    }

    #[test]
    fn outage_analytic_pins() {
        let ctrl = SeriesControl::default();
        // R=0, ρ=0, λ1=λ2: Pr(α ≤ β) = 1/2
        let r = outage_probability(&params(1.0, 1.0, 0.0), 0.0, &ctrl).unwrap();
        assert!((r.value - 0.5).abs() < 1e-14);
        // R=0, ρ=0: Pr(α ≤ β) = λ2/(λ1+λ2)
        let r = outage_probability(&params(2.0, 1.0, 0.0), 0.0, &ctrl).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-14);
        assert_eq!(r.y, 0.0);
        assert!((r.mu - 0.5).abs() < 1e-15);
    }

    #[test]
    fn outage_symmetric_at_equal_snr_any_rho() {
        let ctrl = SeriesControl {
            k_max: 400,
            rel_tol: 1e-14,
            ..SeriesControl::default()
        };
        for &rho in &[0.2, 0.5, 0.9] {
            let r = outage_probability(&params(3.0, 3.0, rho), 0.0, &ctrl).unwrap();
            assert!((r.value - 0.5).abs() < 1e-12, "rho={rho}: {}", r.value);
        }
    }

    #[test]
    fn outage_monotone_in_rate_and_saturates() {
        let ctrl = SeriesControl {
            k_max: 400,
            ..SeriesControl::default()
        };
        for &(l1, l2, rho) in &[(1.0, 1.0, 0.5), (10.0, 5.0, 0.6), (31.62, 31.62, 0.9)] {
            let p = params(l1, l2, rho);
            let mut prev = -1.0;
            for &rate in &[0.0, 0.5, 1.0, 2.0, 4.0] {
                let v = outage_probability(&p, rate, &ctrl).unwrap().value;
                assert!(v >= prev, "({l1},{l2},{rho}) R={rate}");
                prev = v;
            }
        }
        let v = outage_probability(&params(1.0, 1.0, 0.5), 30.0, &ctrl)
            .unwrap()
            .value;
        assert!(v > 1.0 - 1e-6);
        assert!(v <= 1.0);
    }

    #[test]
    fn outage_rejects_negative_rate() {
        let r = outage_probability(&params(1.0, 1.0, 0.0), -0.5, &SeriesControl::default());
        assert!(r.is_err());
    }

    #[test]
    fn outage_matches_direct_monte_carlo_free_quadrature() {
        // (10,5,0.6), R=1: integrate the joint PDF over α ≤ e(1+β)−1
        let p = params(10.0, 5.0, 0.6);
        let e1 = std::f64::consts::E;
        let quad = integrate(
            |beta| {
                let a_max = (e1 * (1.0 + beta) - 1.0).min(10.0 * 45.0);
                integrate(
                    |alpha| joint_pdf_bessel(&p, &SnrPair::new(alpha, beta).unwrap()),
                    0.0,
                    a_max,
                    1e-13,
                    1e-12,
                    4000,
                )
                .unwrap()
                .value
            },
            0.0,
            5.0 * 45.0,
            1e-9,
            0.0,
            4000,
        )
        .unwrap()
        .value;
        let ctrl = SeriesControl::default();
        let r = outage_probability(&p, 1.0, &ctrl).unwrap();
        assert!(
            (r.value - quad).abs() < 1e-7,
            "series {} vs quad {}",
            r.value,
            quad
        );
    }

    #[test]
    fn truncation_tolerance_stability() {
        let p = params(10.0, 10.0, 0.8);
        let loose = average_secrecy_capacity(
            &p,
            &SeriesControl {
                rel_tol: 1e-10,
                consecutive_passes: 3,
                k_max: 400,
            },
        )
        .unwrap()
        .value;
        let tight = average_secrecy_capacity(
            &p,
            &SeriesControl {
                rel_tol: 1e-13,
                consecutive_passes: 3,
                k_max: 400,
            },
        )
        .unwrap()
        .value;
        assert!((loose - tight).abs() < 1e-9 * tight);
    }

    #[test]
    fn capacity_value_is_mean_of_instantaneous_capacity() {
        // sanity against the defining expectation at moderate accuracy,
        // using a coarse product quadrature independent of the oracle module
        let p = params(2.0, 1.0, 0.5);
        let quad = integrate(
            |alpha| {
                integrate(
                    |beta| {
                        let s = SnrPair::new(alpha, beta).unwrap();
                        instantaneous_secrecy_capacity(&s) * joint_pdf_bessel(&p, &s)
                    },
                    0.0,
                    alpha,
                    1e-12,
                    1e-11,
                    4000,
                )
                .unwrap()
                .value
            },
            0.0,
            80.0,
            1e-9,
            0.0,
            4000,
        )
        .unwrap()
        .value;
        let v = average_secrecy_capacity(&p, &SeriesControl::default())
            .unwrap()
            .value;
        assert!((v - quad).abs() < 1e-7 * quad, "{v} vs {quad}");
    }
}
