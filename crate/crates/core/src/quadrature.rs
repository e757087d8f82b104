//! Adaptive Gauss-Kronrod quadrature over finite intervals.
//!
//! A single 21-point Kronrod rule (embedding the 10-point Gauss rule) is
//! applied per interval; the interval with the largest error estimate is
//! bisected until the summed error estimate meets the requested tolerance.
//! Node and weight tables are the QUADPACK `dqk21` constants.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Kronrod abscissae for the 21-point rule (positive half, descending).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

/// Weights of the embedded 10-point Gauss rule.
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Weights of the 21-point Kronrod rule.
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

#[derive(Debug)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One application of the G10/K21 pair on `[a, b]`.
fn kronrod_step<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = f(center);
    let mut kronrod = f_center * WGK[10];
    let mut gauss = 0.0;
    let mut res_abs = kronrod.abs();

    let mut fv = [0.0f64; 21];
    fv[10] = f_center;

    for j in 0..10 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[j] = f1;
        fv[20 - j] = f2;
        let fsum = f1 + f2;
        kronrod += WGK[j] * fsum;
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * fsum;
        }
    }

    let mean = kronrod * 0.5;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[20 - j] - mean).abs());
    }

    let raw_err = ((kronrod - gauss) * half).abs();
    res_abs *= half.abs();
    res_asc *= half.abs();

    // QUADPACK error rescaling: sharpen the raw G-K difference, floor at
    // roundoff level of the absolute integral.
    let mut err = raw_err;
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }

    Segment {
        a,
        b,
        value: kronrod * half,
        error: err,
    }
}

/// Adaptively integrates `f` over `[a, b]` until the estimated error drops
/// below `abs_tol + rel_tol * |integral|`, or the subdivision budget
/// `max_segments` is exhausted.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            abs_error: 0.0,
            evaluations: 0,
        });
    }

    let mut heap = BinaryHeap::new();
    heap.push(kronrod_step(&f, a, b));
    let mut evaluations = 21;

    loop {
        let total: f64 = heap.iter().map(|s| s.value).sum();
        let total_err: f64 = heap.iter().map(|s| s.error).sum();
        if total_err <= abs_tol + rel_tol * total.abs() {
            return Ok(QuadResult {
                value: total,
                abs_error: total_err,
                evaluations,
            });
        }
        if heap.len() >= max_segments {
            return Err(Error::QuadratureNonconvergence {
                estimate: total,
                error: total_err,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval collapsed to machine precision; keep its estimate.
            let mut kept = worst;
            kept.error = 0.0;
            heap.push(kept);
            continue;
        }
        heap.push(kronrod_step(&f, worst.a, mid));
        heap.push(kronrod_step(&f, mid, worst.b));
        evaluations += 42;
    }
}
