//! Command-line front end.
//!
//! Subcommands: `capacity`, `outage`, `sweep`, `compare`, `simulate`, `pdf`.
//! SNR is accepted in dB and converted once at this boundary
//! (λ = 10^(dB/10)); the library sees linear means only. Capacities are
//! computed in nats; `--units bits` divides printed values by ln 2 but never
//! touches internal computation or the CSV `cs_nats` column.
//!
//! Exit codes: 0 ok, 2 invalid input, 3 series/quadrature non-convergence,
//! 4 I/O failure.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use secrecap::channel::{joint_pdf_series, ChannelParams, SnrPair};
use secrecap::closedform::{average_secrecy_capacity, outage_probability, SeriesControl};
use secrecap::error::Error;
use secrecap::montecarlo::{estimate_capacity, estimate_outage};
use secrecap::oracle::{capacity_by_quadrature, outage_by_quadrature, QuadratureSpec};

const LN_2: f64 = std::f64::consts::LN_2;

// ---------------------------------------------------------------------------
// Argument definitions
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "secrecap",
    version,
    about = "Average secrecy capacity and secrecy-outage probability of a \
             correlated Rayleigh-fading wiretap channel"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Average secrecy capacity at one parameter point (closed-form series).
    Capacity(PointArgs),
    /// Secrecy-outage probability at one parameter point (closed-form series).
    Outage(PointArgs),
    /// Capacity (or outage, with --rate) over an SNR × correlation grid, as CSV.
    Sweep(GridArgs),
    /// Three-way closed-form / quadrature / Monte-Carlo comparison, as CSV.
    Compare(GridArgs),
    /// Raw Monte-Carlo estimate of capacity (or outage, with --rate).
    Simulate(PointArgs),
    /// Tabulate the joint SNR density on a rectangular grid, as CSV.
    Pdf(PdfArgs),
}

/// Flags shared by every subcommand. Each is optional here; resolution order
/// is flag > config file > default.
#[derive(Args, Clone)]
struct CommonArgs {
    /// Mean SNR of the main channel, linear scale.
    #[arg(long)]
    lambda1: Option<f64>,
    /// Mean SNR of the eavesdropper channel, linear scale.
    #[arg(long)]
    lambda2: Option<f64>,
    /// Sets both mean SNRs to 10^(dB/10); --lambda1/--lambda2 override per channel.
    #[arg(long = "snr-db")]
    snr_db: Option<f64>,
    /// Units for printed capacity values.
    #[arg(long, value_enum)]
    units: Option<Units>,
    /// Relative truncation tolerance of the series.
    #[arg(long)]
    tol: Option<f64>,
    /// Hard cap on the number of series terms (default 400; high correlation
    /// needs ~300 terms at tight tolerances).
    #[arg(long)]
    kmax: Option<u32>,
    /// Monte-Carlo sample count.
    #[arg(long = "mc-samples")]
    mc_samples: Option<u64>,
    /// RNG seed; auto-generated and printed if absent.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker thread count.
    #[arg(long)]
    workers: Option<usize>,
    /// Output file path (CSV subcommands); stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// key=value config file; flags take precedence over its entries.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct PointArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Correlation coefficient between the two SNRs, in [0, 0.99].
    #[arg(long)]
    rho: Option<f64>,
    /// Target secrecy rate in nats.
    #[arg(long)]
    rate: Option<f64>,
}

#[derive(Args, Clone)]
struct GridArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Grid start in dB (equal-SNR sweep: λ1 = λ2 = 10^(dB/10)).
    #[arg(long = "snr-start")]
    snr_start: Option<f64>,
    /// Grid stop in dB, inclusive.
    #[arg(long = "snr-stop")]
    snr_stop: Option<f64>,
    /// Grid step in dB, > 0.
    #[arg(long = "snr-step")]
    snr_step: Option<f64>,
    /// Correlation values, comma-separated.
    #[arg(long, value_delimiter = ',')]
    rho: Option<Vec<f64>>,
    /// Target secrecy rate in nats; switches the grid to outage probability.
    #[arg(long)]
    rate: Option<f64>,
}

#[derive(Args, Clone)]
struct PdfArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Correlation coefficient between the two SNRs, in [0, 0.99].
    #[arg(long)]
    rho: Option<f64>,
    /// Upper edge of the α grid; defaults to 5 λ1.
    #[arg(long = "alpha-max")]
    alpha_max: Option<f64>,
    /// Upper edge of the β grid; defaults to 5 λ2.
    #[arg(long = "beta-max")]
    beta_max: Option<f64>,
    /// Number of grid points per axis, including both edges.
    #[arg(long = "grid-points")]
    grid_points: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Debug)]
enum Units {
    Nats,
    Bits,
}

impl FromStr for Units {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "nats" => Ok(Units::Nats),
            "bits" => Ok(Units::Bits),
            other => Err(format!("units must be 'nats' or 'bits', got '{other}'")),
        }
    }
}

// ---------------------------------------------------------------------------
// Failure plumbing: map library and I/O errors onto the exit-code contract
// ---------------------------------------------------------------------------

enum Failure {
    /// Exit 2.
    Invalid(String),
    /// Exit 3.
    NonConvergence(String),
    /// Exit 4.
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Domain(_) => Failure::Invalid(e.to_string()),
            Error::ConvergenceFailure { .. }
            | Error::NumericalInconsistency(_)
            | Error::QuadratureNonconvergence { .. } => Failure::NonConvergence(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Capacity(a) => cmd_capacity(a),
        Command::Outage(a) => cmd_outage(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Pdf(a) => cmd_pdf(a),
    };
    let code = match result {
        Ok(()) => 0,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::NonConvergence(msg)) => {
            eprintln!("error: {msg}");
            3
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            4
        }
    };
    std::process::exit(code);
}

// ---------------------------------------------------------------------------
// Config file and setting resolution
// ---------------------------------------------------------------------------

/// key=value lines; '#' starts a comment, blank lines ignored.
struct ConfigFile(HashMap<String, String>);

impl ConfigFile {
    fn load(path: Option<&Path>) -> Result<ConfigFile, Failure> {
        let mut map = HashMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Failure::Io(format!("cannot read config file {}: {e}", path.display()))
            })?;
            for (lineno, raw) in text.lines().enumerate() {
                let line = raw.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    Failure::Invalid(format!(
                        "config line {} is not key=value: '{raw}'",
                        lineno + 1
                    ))
                })?;
                map.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(ConfigFile(map))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, Failure>
    where
        T::Err: std::fmt::Display,
    {
        match self.0.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|e| {
                Failure::Invalid(format!("config key '{key}': cannot parse '{raw}': {e}"))
            }),
        }
    }

    fn get_list(&self, key: &str) -> Result<Option<Vec<f64>>, Failure> {
        match self.0.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .split(',')
                .map(|s| {
                    s.trim().parse::<f64>().map_err(|e| {
                        Failure::Invalid(format!("config key '{key}': cannot parse '{s}': {e}"))
                    })
                })
                .collect::<Result<Vec<f64>, Failure>>()
                .map(Some),
        }
    }
}

fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Everything the subcommands need, after flag/config/default resolution.
struct Settings {
    params_input: (Option<f64>, Option<f64>, Option<f64>), // lambda1, lambda2, snr_db
    units: Units,
    ctrl: SeriesControl,
    mc_samples: u64,
    seed: Option<u64>,
    workers: usize,
    out: Option<PathBuf>,
}

impl Settings {
    fn resolve(common: &CommonArgs) -> Result<(Settings, ConfigFile), Failure> {
        let cfg = ConfigFile::load(common.config.as_deref())?;
        let defaults = SeriesControl::default();
        let settings = Settings {
            params_input: (
                common.lambda1.or(cfg.get("lambda1")?),
                common.lambda2.or(cfg.get("lambda2")?),
                common.snr_db.or(cfg.get("snr_db")?),
            ),
            units: common.units.or(cfg.get("units")?).unwrap_or(Units::Nats),
            ctrl: SeriesControl {
                rel_tol: common.tol.or(cfg.get("tol")?).unwrap_or(defaults.rel_tol),
                k_max: common.kmax.or(cfg.get("kmax")?).unwrap_or(400),
                ..defaults
            },
            mc_samples: common
                .mc_samples
                .or(cfg.get("mc_samples")?)
                .unwrap_or(100_000),
            seed: common.seed.or(cfg.get("seed")?),
            workers: common.workers.or(cfg.get("workers")?).unwrap_or(4),
            out: common.out.clone().or(cfg.get::<String>("out")?.map(PathBuf::from)),
        };
        Ok((settings, cfg))
    }

    /// Channel parameters for single-point commands. --snr-db fills both
    /// means unless a per-channel flag overrides it.
    fn channel_params(&self, rho: f64) -> Result<ChannelParams, Failure> {
        let (l1, l2, snr_db) = self.params_input;
        let from_db = snr_db.map(db_to_linear);
        let lambda1 = l1.or(from_db).ok_or_else(|| {
            Failure::Invalid("main-channel SNR not set: pass --snr-db or --lambda1".into())
        })?;
        let lambda2 = l2.or(from_db).ok_or_else(|| {
            Failure::Invalid("eavesdropper SNR not set: pass --snr-db or --lambda2".into())
        })?;
        ChannelParams::new(lambda1, lambda2, rho).map_err(Failure::from)
    }

    /// Returns the seed, generating and announcing one if the user gave none.
    fn seed_or_announce(&self) -> u64 {
        match self.seed {
            Some(s) => s,
            None => {
                let s = rand::random::<u64>();
                println!("seed = {s} (auto-generated; pass --seed {s} to reproduce)");
                s
            }
        }
    }

    fn in_units(&self, nats: f64) -> f64 {
        match self.units {
            Units::Nats => nats,
            Units::Bits => nats / LN_2,
        }
    }

    fn unit_name(&self) -> &'static str {
        match self.units {
            Units::Nats => "nats",
            Units::Bits => "bits",
        }
    }
}

fn resolve_rho(flag: Option<f64>, cfg: &ConfigFile) -> Result<f64, Failure> {
    Ok(flag.or(cfg.get("rho")?).unwrap_or(0.0))
}

fn resolve_rate(flag: Option<f64>, cfg: &ConfigFile) -> Result<Option<f64>, Failure> {
    Ok(flag.or(cfg.get("rate")?))
}

// ---------------------------------------------------------------------------
// CSV emission
// ---------------------------------------------------------------------------

/// 17 significant digits: round-trip exact for f64.
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_output(out: Option<&Path>, content: &str) -> CmdResult {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| Failure::Io(format!("cannot write to stdout: {e}"))),
    }
}

fn csv_document(header: &str, rows: &[String]) -> String {
    let mut doc = String::new();
    doc.push_str(header);
    doc.push_str("\r\n");
    for row in rows {
        doc.push_str(row);
        doc.push_str("\r\n");
    }
    doc
}

// ---------------------------------------------------------------------------
// Single-point commands
// ---------------------------------------------------------------------------

fn cmd_capacity(args: PointArgs) -> CmdResult {
    let (settings, cfg) = Settings::resolve(&args.common)?;
    let rho = resolve_rho(args.rho, &cfg)?;
    let p = settings.channel_params(rho)?;
    let r = average_secrecy_capacity(&p, &settings.ctrl).map_err(|e| {
        if let Error::ConvergenceFailure { partial, terms } = e {
            eprintln!("partial value after {terms} terms: {} nats", fmt_f64(partial));
        }
        Failure::from(e)
    })?;
    println!(
        "C_s = {} {}",
        fmt_f64(settings.in_units(r.value)),
        settings.unit_name()
    );
    println!("terms_used = {}", r.terms_used);
    println!("last_term_ratio = {:e}", r.last_term_ratio);
    Ok(())
}

fn cmd_outage(args: PointArgs) -> CmdResult {
    let (settings, cfg) = Settings::resolve(&args.common)?;
    let rho = resolve_rho(args.rho, &cfg)?;
    let rate = resolve_rate(args.rate, &cfg)?
        .ok_or_else(|| Failure::Invalid("outage needs a target rate: pass --rate".into()))?;
    let p = settings.channel_params(rho)?;
    let r = outage_probability(&p, rate, &settings.ctrl).map_err(|e| {
        if let Error::ConvergenceFailure { partial, terms } = e {
            eprintln!("partial value after {terms} terms: {}", fmt_f64(partial));
        }
        Failure::from(e)
    })?;
    println!("P_out = {}", fmt_f64(r.value));
    println!("terms_used = {}", r.terms_used);
    Ok(())
}

fn cmd_simulate(args: PointArgs) -> CmdResult {
    let (settings, cfg) = Settings::resolve(&args.common)?;
    let rho = resolve_rho(args.rho, &cfg)?;
    let rate = resolve_rate(args.rate, &cfg)?;
    let p = settings.channel_params(rho)?;
    let seed = settings.seed_or_announce();
    let est = match rate {
        None => estimate_capacity(&p, settings.mc_samples, seed, settings.workers)?,
        Some(rate) => estimate_outage(&p, rate, settings.mc_samples, seed, settings.workers)?,
    };
    let (mean, label) = match rate {
        None => (settings.in_units(est.mean), settings.unit_name()),
        Some(_) => (est.mean, "probability"),
    };
    println!("estimate = {} {}", fmt_f64(mean), label);
    println!("std_error = {}", fmt_f64(est.std_error));
    println!("n_samples = {}", est.n_samples);
    println!("seed = {seed}");
    println!("workers = {}", settings.workers);
    Ok(())
}

// ---------------------------------------------------------------------------
// Grid commands
// ---------------------------------------------------------------------------

struct Grid {
    snr_db: Vec<f64>,
    rho: Vec<f64>,
    rate: Option<f64>,
}

impl Grid {
    fn resolve(args: &GridArgs, cfg: &ConfigFile) -> Result<Grid, Failure> {
        let start = args.snr_start.or(cfg.get("snr_start")?).unwrap_or(0.0);
        let stop = args.snr_stop.or(cfg.get("snr_stop")?).unwrap_or(30.0);
        let step = args.snr_step.or(cfg.get("snr_step")?).unwrap_or(1.0);
        if !(step > 0.0) || !step.is_finite() {
            return Err(Failure::Invalid(format!(
                "snr step must be finite and > 0, got {step}"
            )));
        }
        if stop < start {
            return Err(Failure::Invalid(format!(
                "snr range is empty: start {start} dB > stop {stop} dB"
            )));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        let snr_db = (0..count).map(|i| start + i as f64 * step).collect();
        let rho = args
            .rho
            .clone()
            .or(cfg.get_list("rho_list")?)
            .unwrap_or_else(|| vec![0.0, 0.3, 0.6, 0.9]);
        if rho.is_empty() {
            return Err(Failure::Invalid(
                "correlation list is empty: pass --rho with at least one value".into(),
            ));
        }
        Ok(Grid {
            snr_db,
            rho,
            rate: resolve_rate(args.rate, cfg)?,
        })
    }

    /// All grid points in output order: SNR-major, then correlation.
    fn points(&self) -> Vec<(f64, f64)> {
        let mut pts = Vec::with_capacity(self.snr_db.len() * self.rho.len());
        for &db in &self.snr_db {
            for &rho in &self.rho {
                pts.push((db, rho));
            }
        }
        pts
    }
}

/// Evaluates `eval` at every grid point on `workers` threads and returns the
/// rows in grid order regardless of completion order.
fn map_grid<F>(points: &[(f64, f64)], workers: usize, eval: F) -> Result<Vec<String>, Failure>
where
    F: Fn(f64, f64) -> Result<String, Failure> + Sync,
{
    let workers = workers.max(1).min(points.len().max(1));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots: Vec<std::sync::Mutex<Option<Result<String, Failure>>>> =
        points.iter().map(|_| std::sync::Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= points.len() {
                    break;
                }
                let (db, rho) = points[i];
                *slots[i].lock().unwrap() = Some(eval(db, rho));
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.into_inner().unwrap().expect("every grid slot filled"))
        .collect()
}

fn cmd_sweep(args: GridArgs) -> CmdResult {
    let (settings, cfg) = Settings::resolve(&args.common)?;
    let grid = Grid::resolve(&args, &cfg)?;
    let ctrl = settings.ctrl;
    let (header, rows) = match grid.rate {
        None => {
            let rows = map_grid(&grid.points(), settings.workers, |db, rho| {
                let p = settings.channel_params_at(db, rho)?;
                let r = average_secrecy_capacity(&p, &ctrl)?;
                let mut row = String::new();
                let _ = write!(
                    row,
                    "{},{},{},{},{}",
                    fmt_f64(db),
                    fmt_f64(rho),
                    fmt_f64(r.value),
                    fmt_f64(settings.in_units(r.value)),
                    r.terms_used
                );
                Ok(row)
            })?;
            ("snr_db,rho,cs_nats,cs_units_requested,terms_used", rows)
        }
        Some(rate) => {
            let rows = map_grid(&grid.points(), settings.workers, |db, rho| {
                let p = settings.channel_params_at(db, rho)?;
                let r = outage_probability(&p, rate, &ctrl)?;
                let mut row = String::new();
                let _ = write!(
                    row,
                    "{},{},{},{}",
                    fmt_f64(db),
                    fmt_f64(rho),
                    fmt_f64(r.value),
                    r.terms_used
                );
                Ok(row)
            })?;
            ("snr_db,rho,po,terms_used", rows)
        }
    };
    write_output(
        settings.out.as_deref(),
        &csv_document(header, &rows),
    )
}

fn cmd_compare(args: GridArgs) -> CmdResult {
    let (settings, cfg) = Settings::resolve(&args.common)?;
    let grid = Grid::resolve(&args, &cfg)?;
    if settings.mc_samples < 10_000 {
        return Err(Failure::Invalid(format!(
            "compare needs at least 10000 Monte-Carlo samples, got {}",
            settings.mc_samples
        )));
    }
    let seed = settings.seed_or_announce();
    eprintln!("workers = {}", settings.workers);
    let ctrl = settings.ctrl;
    let quad = QuadratureSpec::default();
    let points = grid.points();
    // Each row gets its own derived seed so rows are independent yet fully
    // reproducible from the master seed; inside a row the estimator runs
    // single-threaded, so the CSV does not depend on --workers.
    let row_seed = |db: f64, rho: f64| {
        let i = points
            .iter()
            .position(|&(d, r)| d == db && r == rho)
            .expect("grid point") as u64;
        seed.wrapping_add(i)
    };
    let (header, rows) = match grid.rate {
        None => {
            let rows = map_grid(&points, settings.workers, |db, rho| {
                let p = settings.channel_params_at(db, rho)?;
                let closed = average_secrecy_capacity(&p, &ctrl)?.value;
                let oracle = capacity_by_quadrature(&p, &quad)?;
                let mc = estimate_capacity(&p, settings.mc_samples, row_seed(db, rho), 1)?;
                Ok(compare_row(db, rho, closed, oracle, mc.mean, mc.std_error))
            })?;
            (
                "snr_db,rho,cs_closed,cs_quadrature,cs_mc,mc_stderr,\
                 abs_diff_closed_quad,z_score_mc",
                rows,
            )
        }
        Some(rate) => {
            let rows = map_grid(&points, settings.workers, |db, rho| {
                let p = settings.channel_params_at(db, rho)?;
                let closed = outage_probability(&p, rate, &ctrl)?.value;
                let oracle = outage_by_quadrature(&p, rate, &quad)?;
                let mc =
                    estimate_outage(&p, rate, settings.mc_samples, row_seed(db, rho), 1)?;
                Ok(compare_row(db, rho, closed, oracle, mc.mean, mc.std_error))
            })?;
            (
                "snr_db,rho,po_closed,po_quadrature,po_mc,mc_stderr,\
                 abs_diff_closed_quad,z_score_mc",
                rows,
            )
        }
    };
    write_output(
        settings.out.as_deref(),
        &csv_document(header, &rows),
    )
}

fn compare_row(db: f64, rho: f64, closed: f64, oracle: f64, mc: f64, stderr: f64) -> String {
    let z = if stderr > 0.0 {
        (mc - closed) / stderr
    } else {
        0.0
    };
    format!(
        "{},{},{},{},{},{},{},{}",
        fmt_f64(db),
        fmt_f64(rho),
        fmt_f64(closed),
        fmt_f64(oracle),
        fmt_f64(mc),
        fmt_f64(stderr),
        fmt_f64((closed - oracle).abs()),
        fmt_f64(z)
    )
}

impl Settings {
    /// Channel parameters for one equal-SNR grid point; per-channel flags
    /// still override the grid value, matching the single-point commands.
    fn channel_params_at(&self, snr_db: f64, rho: f64) -> Result<ChannelParams, Failure> {
        let (l1, l2, _) = self.params_input;
        let grid_lambda = db_to_linear(snr_db);
        ChannelParams::new(l1.unwrap_or(grid_lambda), l2.unwrap_or(grid_lambda), rho)
            .map_err(Failure::from)
    }
}

// ---------------------------------------------------------------------------
// PDF tabulation
// ---------------------------------------------------------------------------

fn cmd_pdf(args: PdfArgs) -> CmdResult {
    let (settings, cfg) = Settings::resolve(&args.common)?;
    let rho = resolve_rho(args.rho, &cfg)?;
    let p = settings.channel_params(rho)?;
    let alpha_max = args
        .alpha_max
        .or(cfg.get("alpha_max")?)
        .unwrap_or(5.0 * p.lambda1());
    let beta_max = args
        .beta_max
        .or(cfg.get("beta_max")?)
        .unwrap_or(5.0 * p.lambda2());
    let n = args.grid_points.or(cfg.get("grid_points")?).unwrap_or(50);
    if n < 2 {
        return Err(Failure::Invalid(format!(
            "grid needs at least 2 points per axis, got {n}"
        )));
    }
    if !(alpha_max > 0.0) || !(beta_max > 0.0) {
        return Err(Failure::Invalid(
            "grid edges alpha-max and beta-max must be > 0".into(),
        ));
    }
    let ctrl = settings.ctrl;
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        let alpha = alpha_max * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let beta = beta_max * j as f64 / (n - 1) as f64;
            let s = SnrPair::new(alpha, beta)?;
            let density = joint_pdf_series(&p, &s, &ctrl)?;
            rows.push(format!(
                "{},{},{}",
                fmt_f64(alpha),
                fmt_f64(beta),
                fmt_f64(density)
            ));
        }
    }
    write_output(
        settings.out.as_deref(),
        &csv_document("alpha,beta,pdf", &rows),
    )
}
