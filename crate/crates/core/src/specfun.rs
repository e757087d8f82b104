//! Special functions backing the closed-form series: the exponential
//! integral E1, the modified Bessel function I0, integer-order incomplete
//! gamma functions, factorials/binomials, and the log-moment family
//!
//!   F(λ,k,μ) = ∫0^∞ ln(1+λx) e^(−μx) x^k dx
//!   F_k      = ∫0^∞ x^k e^(−μx) / (1+λx) dx
//!
//! evaluated through their closed forms, with a quadrature fallback when
//! the alternating closed form of F_k cancels catastrophically.
//!
//! Everything here is a pure function; no shared state.

use crate::error::{Error, Result};
use crate::quadrature;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_86;

/// Cancellation ratio Σ|term| / |Σ term| above which the F_k closed form is
/// abandoned for direct quadrature. The alternating sum loses roughly
/// log10(ratio) digits, so 1e6 keeps at least ~9 significant digits.
const CANCELLATION_LIMIT: f64 = 1e6;

/// How a value was obtained, plus how much cancellation the closed form saw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalDiag {
    pub method_used: EvalMethod,
    /// Σ|term| / |Σ term| of the closed-form evaluation; always finite, ≥ 0.
    pub cancellation_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMethod {
    Recursion,
    QuadratureFallback,
}

impl EvalDiag {
    fn recursion(cancellation: f64) -> Self {
        EvalDiag {
            method_used: EvalMethod::Recursion,
            cancellation_estimate: cancellation.min(f64::MAX).max(0.0),
        }
    }

    fn fallback(cancellation: f64) -> Self {
        EvalDiag {
            method_used: EvalMethod::QuadratureFallback,
            cancellation_estimate: cancellation.min(f64::MAX).max(0.0),
        }
    }

    /// The worse of two diagnostics: fallback dominates recursion, then the
    /// larger cancellation estimate wins.
    pub fn worst(self, other: EvalDiag) -> EvalDiag {
        match (self.method_used, other.method_used) {
            (EvalMethod::QuadratureFallback, EvalMethod::Recursion) => self,
            (EvalMethod::Recursion, EvalMethod::QuadratureFallback) => other,
            _ => {
                if self.cancellation_estimate >= other.cancellation_estimate {
                    self
                } else {
                    other
                }
            }
        }
    }
}

impl Default for EvalDiag {
    fn default() -> Self {
        EvalDiag::recursion(1.0)
    }
}

// ---------------------------------------------------------------------------
// Gamma-family helpers
// ---------------------------------------------------------------------------

/// ln Γ(x) for x > 0, via the Stirling series after shifting x above 10.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires x > 0, got {x}");
    let mut shift = 0.0;
    let mut x = x;
    while x < 10.0 {
        shift -= x.ln();
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    // Bernoulli coefficients B_2n / (2n(2n-1))
    let series = inv
        * (1.0 / 12.0
            + inv2
                * (-1.0 / 360.0
                    + inv2
                        * (1.0 / 1260.0
                            + inv2
                                * (-1.0 / 1680.0
                                    + inv2 * (1.0 / 1188.0 + inv2 * (-691.0 / 360_360.0))))));
    shift + 0.5 * (2.0 * std::f64::consts::PI).ln() + (x - 0.5) * x.ln() - x + series
}

/// n! as f64; exact for small n, `inf` for n > 170.
pub fn factorial(n: u32) -> f64 {
    if n > 170 {
        return f64::INFINITY;
    }
    let mut acc = 1.0f64;
    for i in 2..=n as u64 {
        acc *= i as f64;
    }
    acc
}

/// ln(n!).
pub fn ln_factorial(n: u32) -> f64 {
    if n <= 20 {
        factorial(n).ln()
    } else {
        ln_gamma(n as f64 + 1.0)
    }
}

/// Binomial coefficient C(n, k) as f64, multiplicative form.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 1..=k as u64 {
        acc = acc * ((n as u64 - k as u64 + i) as f64) / (i as f64);
    }
    acc
}

/// Regularized upper incomplete gamma Q(n+1, x) = e^(−x) Σ_{m=0}^{n} x^m/m!
/// for integer order n+1. Equals Pr(Poisson(x) ≤ n).
pub fn regularized_upper_gamma_int(order: u32, x: f64) -> Result<f64> {
    if order < 1 {
        return Err(Error::Domain(format!(
            "incomplete gamma order must be >= 1, got {order}"
        )));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "incomplete gamma argument must be finite and >= 0, got {x}"
        )));
    }
    let n = order - 1;
    if x == 0.0 {
        return Ok(1.0);
    }
    if x > 700.0 {
        // e^(−x) underflows near 745; assemble each Poisson weight in log
        // space instead.
        let ln_x = x.ln();
        let mut sum = 0.0;
        for m in 0..=n {
            sum += (m as f64 * ln_x - x - ln_factorial(m)).exp();
        }
        return Ok(sum.min(1.0));
    }
    let mut term = (-x).exp();
    let mut sum = term;
    for m in 1..=n {
        term *= x / m as f64;
        sum += term;
    }
    Ok(sum.min(1.0))
}

/// Upper incomplete gamma Γ(n+1, x) = n! e^(−x) Σ_{m=0}^{n} x^m/m!.
/// `order` is the integer n+1 ≥ 1.
pub fn upper_gamma_int(order: u32, x: f64) -> Result<f64> {
    let q = regularized_upper_gamma_int(order, x)?;
    Ok(factorial(order - 1) * q)
}

/// Lower incomplete gamma γ(n+1, x) = n! − n! e^(−x) Σ_{m=0}^{n} x^m/m!.
/// `order` is the integer n+1 ≥ 1.
pub fn lower_gamma_int(order: u32, x: f64) -> Result<f64> {
    let q = regularized_upper_gamma_int(order, x)?;
    Ok(factorial(order - 1) * (1.0 - q))
}

// ---------------------------------------------------------------------------
// Exponential integral
// ---------------------------------------------------------------------------

fn e1_series(x: f64) -> f64 {
    // E1(x) = −γ − ln x + Σ_{n≥1} (−1)^(n+1) x^n / (n·n!), for x ≤ 1
    let mut sum = -EULER_GAMMA - x.ln();
    let mut pow = 1.0f64; // (−x)^n / n!
    for n in 1..200u32 {
        pow *= -x / n as f64;
        let term = -pow / n as f64;
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-30) {
            break;
        }
    }
    sum
}

fn e1_continued_fraction_scaled(x: f64) -> f64 {
    // Modified Lentz on E1(x) = e^(−x) / (x+1− 1/(x+3− 4/(x+5− ...)));
    // returns the scaled value e^x E1(x).
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=300u32 {
        let a = -((i as f64) * (i as f64));
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h
}

/// Exponential integral E1(x) = ∫1^∞ e^(−xt)/t dt for x > 0.
///
/// Series for x ≤ 1, continued fraction for x > 1. Underflows to zero for
/// x beyond ~700 rather than erroring.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("E1 requires x > 0, got {x}")));
    }
    if x <= 1.0 {
        Ok(e1_series(x))
    } else {
        Ok(e1_continued_fraction_scaled(x) * (-x).exp())
    }
}

/// Scaled exponential integral e^x E1(x); stays ≈ 1/x for large x where the
/// unscaled value underflows.
pub fn exp_e1_scaled(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("E1 requires x > 0, got {x}")));
    }
    if x <= 1.0 {
        Ok(e1_series(x) * x.exp())
    } else {
        Ok(e1_continued_fraction_scaled(x))
    }
}

// ---------------------------------------------------------------------------
// Modified Bessel function I0
// ---------------------------------------------------------------------------

/// Split point between the power series and the asymptotic expansion.
const I0_ASYMPTOTIC_CUTOVER: f64 = 18.0;

/// Scaled modified Bessel function e^(−x) I0(x) for x ≥ 0.
pub fn bessel_i0_scaled(x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("I0 requires x >= 0, got {x}")));
    }
    if x < I0_ASYMPTOTIC_CUTOVER {
        // Σ (x²/4)^k / (k!)², all terms positive.
        let q = 0.25 * x * x;
        let mut term = 1.0f64;
        let mut sum = 1.0f64;
        for k in 1..300u32 {
            term *= q / ((k as f64) * (k as f64));
            sum += term;
            if term < 1e-17 * sum {
                break;
            }
        }
        Ok(sum * (-x).exp())
    } else {
        // e^(−x) I0(x) ~ (2πx)^(−1/2) Σ_j ((2j−1)!!)² / (j! (8x)^j),
        // truncated at the smallest term.
        let mut term = 1.0f64;
        let mut sum = 1.0f64;
        for j in 1..60u32 {
            let next = term * ((2 * j - 1) as f64).powi(2) / (8.0 * j as f64 * x);
            if next >= term {
                break;
            }
            term = next;
            sum += term;
            if term < 1e-17 * sum {
                break;
            }
        }
        Ok(sum / (2.0 * std::f64::consts::PI * x).sqrt())
    }
}

/// Modified Bessel function I0(x) for x ≥ 0. Overflows to `inf` past
/// x ≈ 713.
pub fn bessel_i0(x: f64) -> Result<f64> {
    Ok(bessel_i0_scaled(x)? * x.exp())
}

// ---------------------------------------------------------------------------
// F_k and the log-moment F(λ, k, μ)
// ---------------------------------------------------------------------------

fn check_lambda_mu(lambda: f64, mu: f64) -> Result<()> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!("lambda must be > 0, got {lambda}")));
    }
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::Domain(format!("mu must be > 0, got {mu}")));
    }
    Ok(())
}

/// Scaled F_k: H_k = μ^k F_k / k!, where
/// F_k = ∫0^∞ x^k e^(−μx)/(1+λx) dx.
///
/// H_k stays bounded by 1/μ for every k, so it is the form used inside the
/// capacity series. The closed form in terms of x = μ/λ is
///
///   λ H_k = Σ_{i=0}^{k−1} (−1)^i x^i (k−i−1)!/k!  +  (−1)^k x^k/k! · e^x E1(x)
///
/// which alternates; when Σ|term|/|Σ term| exceeds the cancellation limit
/// the value is recomputed by adaptive quadrature of the gamma-weighted
/// integrand.
pub fn f_k_scaled(lambda: f64, k: u32, mu: f64) -> Result<(f64, EvalDiag)> {
    check_lambda_mu(lambda, mu)?;
    let x = mu / lambda;
    if k == 0 {
        return Ok((exp_e1_scaled(x)? / lambda, EvalDiag::recursion(1.0)));
    }

    let mut sum = 0.0f64;
    let mut abs_sum = 0.0f64;
    // t_i = x^i (k−i−1)!/k!, starting at t_0 = 1/k
    let mut t = 1.0 / k as f64;
    for i in 0..k {
        if i % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        abs_sum += t;
        let rem = k - i - 1;
        t *= if rem > 0 { x / rem as f64 } else { x };
    }
    // here t = x^k / k!
    let e1_term = t * exp_e1_scaled(x)?;
    if k % 2 == 0 {
        sum += e1_term;
    } else {
        sum -= e1_term;
    }
    abs_sum += e1_term;

    let value = sum / lambda;
    let cancellation = abs_sum / sum.abs().max(f64::MIN_POSITIVE);

    if value.is_finite() && cancellation <= CANCELLATION_LIMIT {
        return Ok((value, EvalDiag::recursion(cancellation)));
    }

    // Quadrature fallback on the substituted integral
    //   H_k = (1/μ) ∫0^∞ exp(k ln s − s − ln k!) / (1 + s/x) ds
    // whose gamma weight never overflows. The cutoff T bounds the integrand
    // tail below 1e−16 of the running integral.
    let upper = k as f64 * ((k + 2) as f64).ln() + 40.0;
    let ln_fact = ln_factorial(k);
    let kf = k as f64;
    let quad = quadrature::integrate(
        |s| {
            if s <= 0.0 {
                0.0
            } else {
                (kf * s.ln() - s - ln_fact).exp() / (1.0 + s / x)
            }
        },
        0.0,
        upper,
        f64::MIN_POSITIVE,
        1e-13,
        4000,
    )?;
    Ok((quad.value / mu, EvalDiag::fallback(cancellation)))
}

/// F_k = ∫0^∞ x^k e^(−μx)/(1+λx) dx, with evaluation diagnostics.
pub fn f_k_base(lambda: f64, k: u32, mu: f64) -> Result<(f64, EvalDiag)> {
    let (scaled, diag) = f_k_scaled(lambda, k, mu)?;
    Ok((scaled * unscale_factor(k, mu), diag))
}

/// k!/μ^k, assembled in log space once the direct products risk over- or
/// underflow.
fn unscale_factor(k: u32, mu: f64) -> f64 {
    if k <= 20 {
        factorial(k) / mu.powi(k as i32)
    } else {
        (ln_factorial(k) - k as f64 * mu.ln()).exp()
    }
}

/// Scaled log-moment: G(λ,k,μ) = μ^(k+1) F(λ,k,μ) / k!.
///
/// Satisfies G(λ,k,μ) = G(λ,k−1,μ) + λ H_k with G(λ,0,μ) = e^(μ/λ) E1(μ/λ);
/// every increment is positive, so the upward recursion is stable.
pub fn f_log_moment_scaled(lambda: f64, k: u32, mu: f64) -> Result<(f64, EvalDiag)> {
    check_lambda_mu(lambda, mu)?;
    let mut g = exp_e1_scaled(mu / lambda)?;
    let mut diag = EvalDiag::recursion(1.0);
    let mut compensation = 0.0f64;
    for j in 1..=k {
        let (h, d) = f_k_scaled(lambda, j, mu)?;
        diag = diag.worst(d);
        // Kahan step
        let y = lambda * h - compensation;
        let t = g + y;
        compensation = (t - g) - y;
        g = t;
    }
    Ok((g, diag))
}

/// F(λ,k,μ) = ∫0^∞ ln(1+λx) e^(−μx) x^k dx ≥ 0, by the upward recursion
/// F(λ,k,μ) = (λ/μ) F_k + (k/μ) F(λ,k−1,μ).
pub fn f_log_moment(lambda: f64, k: u32, mu: f64) -> Result<(f64, EvalDiag)> {
    let (g, diag) = f_log_moment_scaled(lambda, k, mu)?;
    Ok((g * unscale_factor(k, mu) / mu, diag))
}
