//! Seeded, reproducible Monte-Carlo estimation of the average secrecy
//! capacity and the outage probability.
//!
//! Correlated exponential SNR pairs come from the Kibble construction:
//! with g1, w independent standard complex Gaussians,
//!
//!   g2 = √ρ g1 + √(1−ρ) w
//!
//! gives |g1|², |g2|² unit exponentials with power correlation exactly ρ,
//! matching the bivariate joint density used everywhere else. The sampler
//! law is validated empirically (goodness-of-fit) rather than assumed.
//!
//! Reproducibility contract: every estimate is fully determined by
//! (seed, n_samples, worker count). Worker w draws from ChaCha12 seeded
//! with the master seed on stream w, and worker partials are reduced by a
//! fixed-order compensated fold, so parallel execution is bit-identical to
//! any rerun with the same worker count.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::channel::{instantaneous_secrecy_capacity, ChannelParams, SnrPair};
use crate::error::{Error, Result};

/// One channel realization.
#[derive(Debug, Clone, Copy)]
pub struct FadingSample {
    /// Main-channel complex gain (Alice → Bob).
    pub h_sd: Complex64,
    /// Eavesdropper-channel complex gain (Alice → Eve).
    pub h_se: Complex64,
    /// |h_sd|², the instantaneous main-channel SNR.
    pub alpha: f64,
    /// |h_se|², the instantaneous eavesdropper SNR.
    pub beta: f64,
}

impl FadingSample {
    pub fn snr_pair(&self) -> SnrPair {
        SnrPair::new(self.alpha, self.beta).expect("squared magnitudes are finite and >= 0")
    }
}

/// A Monte-Carlo estimate with its standard error and provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
}

fn standard_complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    // unit-mean-square: E|g|² = 1
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Draws one correlated pair of channel gains.
pub fn sample_pair<R: Rng>(p: &ChannelParams, rng: &mut R) -> FadingSample {
    let g1 = standard_complex_gaussian(rng);
    let w = standard_complex_gaussian(rng);
    let g2 = g1 * p.rho().sqrt() + w * (1.0 - p.rho()).sqrt();
    let h_sd = g1 * p.lambda1().sqrt();
    let h_se = g2 * p.lambda2().sqrt();
    FadingSample {
        h_sd,
        h_se,
        alpha: h_sd.norm_sqr(),
        beta: h_se.norm_sqr(),
    }
}

fn worker_rng(seed: u64, worker: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(worker);
    rng
}

/// Splits `n` into per-worker chunk sizes (first chunks take the remainder).
fn chunk_sizes(n: u64, workers: usize) -> Vec<u64> {
    let workers = workers.max(1) as u64;
    let base = n / workers;
    let rem = n % workers;
    (0..workers)
        .map(|w| base + u64::from(w < rem))
        .collect()
}

fn validate_samples(n: u64) -> Result<()> {
    if n < 1000 {
        return Err(Error::Domain(format!(
            "Monte-Carlo estimates need at least 1000 samples, got {n}"
        )));
    }
    Ok(())
}

/// Per-worker compensated accumulation, reduced in worker order.
fn parallel_fold<T, F>(n: u64, workers: usize, per_worker: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync,
{
    let chunks = chunk_sizes(n, workers);
    if chunks.len() == 1 {
        return vec![per_worker(0, chunks[0])];
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .iter()
            .enumerate()
            .map(|(w, &count)| {
                let per_worker = &per_worker;
                scope.spawn(move || per_worker(w as u64, count))
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    })
}

#[derive(Default, Clone, Copy)]
struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn add(&mut self, v: f64) {
        let y = v - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Sample mean of the instantaneous secrecy capacity over `n` i.i.d. pairs.
pub fn estimate_capacity(
    p: &ChannelParams,
    n: u64,
    seed: u64,
    workers: usize,
) -> Result<McEstimate> {
    validate_samples(n)?;
    let partials = parallel_fold(n, workers, |w, count| {
        let mut rng = worker_rng(seed, w);
        let mut sum = Kahan::default();
        let mut sum_sq = Kahan::default();
        for _ in 0..count {
            let cs = instantaneous_secrecy_capacity(&sample_pair(p, &mut rng).snr_pair());
            sum.add(cs);
            sum_sq.add(cs * cs);
        }
        (sum, sum_sq)
    });
    let mut total = Kahan::default();
    let mut total_sq = Kahan::default();
    for (s, s2) in partials {
        total.add(s.sum);
        total_sq.add(s2.sum);
    }
    let nf = n as f64;
    let mean = total.sum / nf;
    let variance = ((total_sq.sum - nf * mean * mean) / (nf - 1.0)).max(0.0);
    Ok(McEstimate {
        mean,
        std_error: (variance / nf).sqrt(),
        n_samples: n,
        seed,
    })
}

/// Fraction of samples with C_s ≤ R, with the binomial standard error.
pub fn estimate_outage(
    p: &ChannelParams,
    rate_nats: f64,
    n: u64,
    seed: u64,
    workers: usize,
) -> Result<McEstimate> {
    validate_samples(n)?;
    if !(rate_nats >= 0.0) || !rate_nats.is_finite() {
        return Err(Error::Domain(format!(
            "secrecy rate must be finite and >= 0, got {rate_nats}"
        )));
    }
    let counts = parallel_fold(n, workers, |w, count| {
        let mut rng = worker_rng(seed, w);
        let mut outages = 0u64;
        for _ in 0..count {
            let cs = instantaneous_secrecy_capacity(&sample_pair(p, &mut rng).snr_pair());
            if cs <= rate_nats {
                outages += 1;
            }
        }
        outages
    });
    let outages: u64 = counts.iter().sum();
    let p_hat = outages as f64 / n as f64;
    Ok(McEstimate {
        mean: p_hat,
        std_error: (p_hat * (1.0 - p_hat) / n as f64).sqrt(),
        n_samples: n,
        seed,
    })
}

/// Empirical CDF of C_s on a sorted grid of rates; one sampling pass shared
/// by all grid points.
pub fn empirical_cdf(
    p: &ChannelParams,
    n: u64,
    seed: u64,
    workers: usize,
    grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    validate_samples(n)?;
    if grid.is_empty() {
        return Err(Error::Domain("rate grid must be non-empty".into()));
    }
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Domain("rate grid must be sorted ascending".into()));
    }
    let counts = parallel_fold(n, workers, |w, count| {
        let mut rng = worker_rng(seed, w);
        let mut bins = vec![0u64; grid.len()];
        for _ in 0..count {
            let cs = instantaneous_secrecy_capacity(&sample_pair(p, &mut rng).snr_pair());
            // first grid rate >= cs; everything from there on counts
            let idx = grid.partition_point(|&r| r < cs);
            if idx < bins.len() {
                bins[idx] += 1;
            }
        }
        bins
    });
    let mut bins = vec![0u64; grid.len()];
    for worker_bins in counts {
        for (total, b) in bins.iter_mut().zip(worker_bins) {
            *total += b;
        }
    }
    let mut cumulative = 0u64;
    Ok(grid
        .iter()
        .zip(bins)
        .map(|(&rate, count)| {
            cumulative += count;
            (rate, cumulative as f64 / n as f64)
        })
        .collect())
}
