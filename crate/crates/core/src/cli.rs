//! Command-line front end: `pdist`, `verify` and `moments`.
//!
//! Settings resolve as flag, then `--config` JSON file, then built-in default.
//! Output goes to `--out` (relative paths land under `$POLPHASE_OUT_DIR` when it
//! is set), to `$POLPHASE_OUT_DIR/<command>.<ext>` when only the variable is set,
//! and to stdout otherwise.
//!
//! Exit codes: 0 every check passed, 1 some check failed, 2 usage, config or I/O error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use std::f64::consts::PI;

use crate::fock::make_basis;
use crate::nfm::nfm_build;
use crate::pol_phase::{phase_operator_spectral, phase_q_commutators, pol_distribution, PolarizationDistribution};
use crate::quad::make_grid;
use crate::rs_field::{commutator_check, eigen_residuals, ladder_residuals};
use crate::xi_rep::{completeness_residual, reproducing_residual, ModeConfig, OnePhotonState};

pub const OUT_DIR_ENV: &str = "POLPHASE_OUT_DIR";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Tolerance on `sup |P - P_analytic|` and on moment deviations.
pub const DISTRIBUTION_TOL: f64 = 1e-8;
/// Input amplitudes further than this from unit norm trigger a warning.
pub const AMPLITUDE_WARN_TOL: f64 = 1e-6;

pub const DEFAULT_CUTOFF: usize = 12;
pub const DEFAULT_RADIAL_ORDER: usize = 40;
pub const DEFAULT_ANGULAR_ORDER: usize = 64;
pub const DEFAULT_THETA_COUNT: usize = 64;
pub const DEFAULT_PDIST_RADIAL_ORDER: usize = 8;

/// Labels at which the eigen and ladder rows are evaluated.
pub fn xi_probes() -> [Complex64; 3] {
    [
        Complex64::new(1.0, 0.0),
        Complex64::new(2.0, 1.0),
        Complex64::from_polar(0.5, PI / 3.0),
    ]
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] crate::error::Error),
}

#[derive(Debug, Parser)]
#[command(
    name = "polphase",
    version,
    about = "Photon polarization operators in the two-mode Fock space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate P(θ) for a one-photon state against its closed form.
    Pdist(StateArgs),
    /// Run the residual suite and write a JSON report.
    Verify(VerifyArgs),
    /// Circular moments of orders 1 to 4 for a one-photon state.
    Moments(StateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct Common {
    /// JSON file with default settings; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StateArgs {
    /// Left-handed amplitude as "re,im".
    #[arg(long, allow_hyphen_values = true, value_parser = parse_amplitude)]
    cplus: Option<Complex64>,
    /// Right-handed amplitude as "re,im".
    #[arg(long, allow_hyphen_values = true, value_parser = parse_amplitude)]
    cminus: Option<Complex64>,
    #[arg(long)]
    theta_count: Option<usize>,
    #[arg(long)]
    radial_order: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    cutoff: Option<usize>,
    /// Interior margin; defaults to N/3.
    #[arg(long)]
    margin: Option<usize>,
    #[arg(long)]
    radial_order: Option<usize>,
    #[arg(long)]
    angular_order: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,
    #[command(flatten)]
    common: Common,
}

/// Contents of a `--config` file. Every field is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    cutoff: Option<usize>,
    margin: Option<usize>,
    radial_order: Option<usize>,
    angular_order: Option<usize>,
    theta_count: Option<usize>,
    phi: Option<f64>,
    cplus: Option<String>,
    cminus: Option<String>,
    out: Option<PathBuf>,
    format: Option<Format>,
}

fn parse_amplitude(s: &str) -> Result<Complex64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"re,im\", got {s:?}"))?;
    let re: f64 = re.trim().parse().map_err(|e| format!("real part {re:?}: {e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("imaginary part {im:?}: {e}"))?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(format!("non-finite amplitude {s:?}"));
    }
    Ok(Complex64::new(re, im))
}

fn load_config(path: Option<&Path>) -> Result<FileConfig, CliError> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn positive(name: &str, value: usize) -> Result<usize, CliError> {
    if value == 0 {
        return Err(CliError::Config(format!("{name} must be positive")));
    }
    Ok(value)
}

/// Resolved settings of `pdist` and `moments`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateConfig {
    pub c_plus: Complex64,
    pub c_minus: Complex64,
    pub theta_count: usize,
    pub radial_order: usize,
    pub phi: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl StateConfig {
    fn resolve(args: StateArgs, default_format: Format) -> Result<Self, CliError> {
        let file = load_config(args.common.config.as_deref())?;
        let from_file = |s: &Option<String>| s.as_deref().map(parse_amplitude).transpose().map_err(CliError::Config);
        Ok(Self {
            c_plus: args
                .cplus
                .or(from_file(&file.cplus)?)
                .unwrap_or(Complex64::new(1.0, 0.0)),
            c_minus: args
                .cminus
                .or(from_file(&file.cminus)?)
                .unwrap_or(Complex64::new(0.0, 0.0)),
            theta_count: positive(
                "theta count",
                args.theta_count.or(file.theta_count).unwrap_or(DEFAULT_THETA_COUNT),
            )?,
            radial_order: positive(
                "radial order",
                args.radial_order
                    .or(file.radial_order)
                    .unwrap_or(DEFAULT_PDIST_RADIAL_ORDER),
            )?,
            phi: args.phi.or(file.phi).unwrap_or(0.0),
            format: args.format.or(file.format).unwrap_or(default_format),
            out: args.common.out.or(file.out),
        })
    }

    /// Normalized state, warning on stderr when the input was noticeably off unit norm.
    pub fn state(&self) -> Result<OnePhotonState, CliError> {
        let norm_sqr = self.c_plus.norm_sqr() + self.c_minus.norm_sqr();
        if (norm_sqr.sqrt() - 1.0).abs() > AMPLITUDE_WARN_TOL {
            eprintln!("warning: amplitudes have norm {:.6e}; normalizing", norm_sqr.sqrt());
        }
        OnePhotonState::normalized(self.c_plus, self.c_minus, ModeConfig::new(self.phi))
            .map_err(|e| CliError::Config(format!("invalid amplitudes: {e}")))
    }
}

/// Resolved settings of `verify`.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub cutoff: usize,
    pub margin: usize,
    pub radial_order: usize,
    pub angular_order: usize,
    pub phi: f64,
    pub out: Option<PathBuf>,
}

impl VerifyConfig {
    pub fn new(cutoff: usize) -> Self {
        Self {
            cutoff,
            margin: default_margin(cutoff),
            radial_order: DEFAULT_RADIAL_ORDER,
            angular_order: DEFAULT_ANGULAR_ORDER,
            phi: 0.0,
            out: None,
        }
    }

    fn resolve(args: VerifyArgs) -> Result<Self, CliError> {
        let file = load_config(args.common.config.as_deref())?;
        let cutoff = args.cutoff.or(file.cutoff).unwrap_or(DEFAULT_CUTOFF);
        if cutoff < 3 {
            return Err(CliError::Config(format!("cutoff {cutoff} < 3")));
        }
        let margin = args.margin.or(file.margin).unwrap_or(default_margin(cutoff));
        if margin == 0 || margin >= cutoff {
            return Err(CliError::Config(format!("margin {margin} outside 1..{cutoff}")));
        }
        Ok(Self {
            cutoff,
            margin,
            radial_order: positive(
                "radial order",
                args.radial_order.or(file.radial_order).unwrap_or(DEFAULT_RADIAL_ORDER),
            )?,
            angular_order: positive(
                "angular order",
                args.angular_order
                    .or(file.angular_order)
                    .unwrap_or(DEFAULT_ANGULAR_ORDER),
            )?,
            phi: args.phi.or(file.phi).unwrap_or(0.0),
            out: args.common.out.or(file.out),
        })
    }
}

pub fn default_margin(cutoff: usize) -> usize {
    (cutoff / 3).max(1)
}

/// Residual trend of one row over increasing cutoffs at proportional margin.
#[derive(Debug, Clone, PartialEq)]
pub struct Trend {
    pub cutoffs: Vec<usize>,
    pub margins: Vec<usize>,
    pub residuals: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyRow {
    pub equation_tag: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub cutoff: usize,
    pub margin: usize,
    pub trend: Option<Trend>,
}

impl VerifyRow {
    pub fn pass(&self) -> bool {
        self.residual <= self.tolerance
    }
}

/// The eleven residual rows of `verify`, in report order.
pub fn verify_rows(cfg: &VerifyConfig) -> Result<Vec<VerifyRow>, CliError> {
    let basis = make_basis(cfg.cutoff);
    let mode = ModeConfig::new(cfg.phi);
    let grid = make_grid(cfg.radial_order, cfg.angular_order)?;
    let probes = xi_probes();
    let (n, margin) = (cfg.cutoff, cfg.margin);
    let row = |equation_tag, residual, tolerance| VerifyRow {
        equation_tag,
        residual,
        tolerance,
        cutoff: n,
        margin,
        trend: None,
    };
    // first, so that an inadequate grid is rejected before any dense work
    let spectral = phase_operator_spectral(mode, basis, &grid)?;

    let (mut lad_a, mut lad_b, mut eig_f, mut eig_fd) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for &xi in &probes {
        let (ra, rb) = ladder_residuals(xi, mode, basis, margin)?;
        let (rf, rfd) = eigen_residuals(xi, mode, basis, margin)?;
        lad_a = lad_a.max(ra);
        lad_b = lad_b.max(rb);
        eig_f = eig_f.max(rf);
        eig_fd = eig_fd.max(rfd);
    }
    let probe_cut = 4.min(n - 2);
    let (lower, raise) = commutator_check(basis, mode);
    let (grading, conjugation) = phase_q_commutators(&spectral, margin)?;

    Ok(vec![
        row("eq10", lad_a, 1e-3),
        row("eq11", eig_f, 1e-3),
        row("eq12", lad_b, 1e-3),
        row("eq13", eig_fd, 1e-3),
        row("eq14", completeness_residual(basis, &grid, probe_cut)?, 1e-6),
        row("eq16", reproducing_residual(basis, &grid, &probes, probe_cut)?, 1e-6),
        row("eq21_F", lower, 1e-12),
        row("eq21_Fdag", raise, 1e-12),
        row("eq22", grading, 1e-8),
        row("eq24", conjugation, 1e-3),
        nfm_row(cfg)?,
    ])
}

/// NFM identity residual at `cfg.cutoff`, with its trend over `N/2`, `3N/4` and `N`.
fn nfm_row(cfg: &VerifyConfig) -> Result<VerifyRow, CliError> {
    let mut cutoffs = vec![(cfg.cutoff / 2).max(2), (3 * cfg.cutoff / 4).max(2), cfg.cutoff];
    cutoffs.dedup();
    let mut trend = Trend {
        cutoffs: Vec::new(),
        margins: Vec::new(),
        residuals: Vec::new(),
    };
    for &n in &cutoffs {
        let margin = ((cfg.margin * n + cfg.cutoff / 2) / cfg.cutoff).clamp(1, n - 1);
        let ops = nfm_build(make_basis(n))?;
        trend.cutoffs.push(n);
        trend.margins.push(margin);
        trend.residuals.push(crate::nfm::nfm_identity_residual(&ops, margin)?);
    }
    Ok(VerifyRow {
        equation_tag: "eq27",
        residual: *trend.residuals.last().expect("at least one cutoff"),
        tolerance: 1e-2,
        cutoff: cfg.cutoff,
        margin: cfg.margin,
        trend: Some(trend),
    })
}

/// `{:.16e}`: 17 significant digits, enough to round-trip an `f64`.
fn number(x: f64) -> Box<RawValue> {
    let text = if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    };
    RawValue::from_string(text).expect("formatted float is valid JSON")
}

fn complex(z: Complex64) -> [Box<RawValue>; 2] {
    [number(z.re), number(z.im)]
}

#[derive(Serialize)]
struct TrendJson {
    cutoffs: Vec<usize>,
    margins: Vec<usize>,
    residuals: Vec<Box<RawValue>>,
}

#[derive(Serialize)]
struct RowJson {
    equation_tag: &'static str,
    residual: Box<RawValue>,
    tolerance: Box<RawValue>,
    pass: bool,
    cutoff: usize,
    margin: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    trend: Option<TrendJson>,
}

#[derive(Serialize)]
struct VerifyJson {
    runs: Vec<RowJson>,
}

pub fn verify_report(rows: &[VerifyRow]) -> String {
    let runs = rows
        .iter()
        .map(|r| RowJson {
            equation_tag: r.equation_tag,
            residual: number(r.residual),
            tolerance: number(r.tolerance),
            pass: r.pass(),
            cutoff: r.cutoff,
            margin: r.margin,
            trend: r.trend.as_ref().map(|t| TrendJson {
                cutoffs: t.cutoffs.clone(),
                margins: t.margins.clone(),
                residuals: t.residuals.iter().map(|&x| number(x)).collect(),
            }),
        })
        .collect();
    to_json(&VerifyJson { runs })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}

#[derive(Serialize)]
struct PdistRowJson {
    theta: Box<RawValue>,
    p_quadrature: Box<RawValue>,
    p_analytic: Box<RawValue>,
    abs_diff: Box<RawValue>,
}

#[derive(Serialize)]
struct PdistJson {
    c_plus: [Box<RawValue>; 2],
    c_minus: [Box<RawValue>; 2],
    radial_order: usize,
    max_abs_diff: Box<RawValue>,
    tolerance: Box<RawValue>,
    pass: bool,
    rows: Vec<PdistRowJson>,
}

pub fn pdist_report(dist: &PolarizationDistribution, format: Format) -> String {
    let rows: Vec<(f64, f64, f64)> = dist
        .thetas()
        .iter()
        .zip(dist.values())
        .map(|(&t, &p)| (t, p, crate::pol_phase::analytic_density(dist.state(), t)))
        .collect();
    match format {
        Format::Csv => {
            let mut out = String::from("theta,p_quadrature,p_analytic,abs_diff\n");
            for (t, p, a) in rows {
                writeln!(out, "{t:.16e},{p:.16e},{a:.16e},{:.16e}", (p - a).abs()).expect("write to string");
            }
            out
        }
        Format::Json => {
            let max = dist.max_deviation();
            to_json(&PdistJson {
                c_plus: complex(dist.state().c_plus()),
                c_minus: complex(dist.state().c_minus()),
                radial_order: dist.radial_order(),
                max_abs_diff: number(max),
                tolerance: number(DISTRIBUTION_TOL),
                pass: max <= DISTRIBUTION_TOL,
                rows: rows
                    .into_iter()
                    .map(|(t, p, a)| PdistRowJson {
                        theta: number(t),
                        p_quadrature: number(p),
                        p_analytic: number(a),
                        abs_diff: number((p - a).abs()),
                    })
                    .collect(),
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentRow {
    pub order: u32,
    pub value: Complex64,
    pub target: Complex64,
}

impl MomentRow {
    pub fn deviation(&self) -> f64 {
        (self.value - self.target).norm()
    }
}

/// Orders 1..=4 with targets `0, c₊ conj(c₋), 0, 0`.
pub fn moment_rows(dist: &PolarizationDistribution) -> Vec<MomentRow> {
    let s = dist.state();
    (1..=4)
        .map(|order| MomentRow {
            order,
            value: dist.moment(order),
            target: if order == 2 {
                s.c_plus() * s.c_minus().conj()
            } else {
                Complex64::new(0.0, 0.0)
            },
        })
        .collect()
}

#[derive(Serialize)]
struct MomentJson {
    order: u32,
    value: [Box<RawValue>; 2],
    target: [Box<RawValue>; 2],
    deviation: Box<RawValue>,
    pass: bool,
}

#[derive(Serialize)]
struct MomentsJson {
    c_plus: [Box<RawValue>; 2],
    c_minus: [Box<RawValue>; 2],
    tolerance: Box<RawValue>,
    moments: Vec<MomentJson>,
}

pub fn moments_report(dist: &PolarizationDistribution, rows: &[MomentRow], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("order,re,im,target_re,target_im,deviation\n");
            for r in rows {
                writeln!(
                    out,
                    "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                    r.order,
                    r.value.re,
                    r.value.im,
                    r.target.re,
                    r.target.im,
                    r.deviation()
                )
                .expect("write to string");
            }
            out
        }
        Format::Json => to_json(&MomentsJson {
            c_plus: complex(dist.state().c_plus()),
            c_minus: complex(dist.state().c_minus()),
            tolerance: number(DISTRIBUTION_TOL),
            moments: rows
                .iter()
                .map(|r| MomentJson {
                    order: r.order,
                    value: complex(r.value),
                    target: complex(r.target),
                    deviation: number(r.deviation()),
                    pass: r.deviation() <= DISTRIBUTION_TOL,
                })
                .collect(),
        }),
    }
}

/// Where a report goes, or `None` for stdout.
fn output_path(out: Option<&Path>, default_name: &str) -> Option<PathBuf> {
    let dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    match (out, dir) {
        (Some(p), Some(d)) if p.is_relative() => Some(d.join(p)),
        (Some(p), _) => Some(p.to_path_buf()),
        (None, Some(d)) => Some(d.join(default_name)),
        (None, None) => None,
    }
}

fn emit(text: &str, out: Option<&Path>, default_name: &str) -> Result<(), CliError> {
    match output_path(out, default_name) {
        Some(path) => std::fs::write(&path, text).map_err(|source| CliError::Io { path, source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn extension(format: Format) -> &'static str {
    match format {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

fn cmd_pdist(cfg: &StateConfig) -> Result<bool, CliError> {
    let dist = pol_distribution(&cfg.state()?, cfg.theta_count, cfg.radial_order)?;
    emit(
        &pdist_report(&dist, cfg.format),
        cfg.out.as_deref(),
        &format!("pdist.{}", extension(cfg.format)),
    )?;
    Ok(dist.max_deviation() <= DISTRIBUTION_TOL)
}

fn cmd_moments(cfg: &StateConfig) -> Result<bool, CliError> {
    let dist = pol_distribution(&cfg.state()?, cfg.theta_count, cfg.radial_order)?;
    let rows = moment_rows(&dist);
    emit(
        &moments_report(&dist, &rows, cfg.format),
        cfg.out.as_deref(),
        &format!("moments.{}", extension(cfg.format)),
    )?;
    Ok(rows.iter().all(|r| r.deviation() <= DISTRIBUTION_TOL))
}

fn cmd_verify(cfg: &VerifyConfig) -> Result<bool, CliError> {
    let rows = verify_rows(cfg)?;
    emit(&verify_report(&rows), cfg.out.as_deref(), "verify.json")?;
    Ok(rows.iter().all(VerifyRow::pass))
}

/// Parses `args` (program name first) and runs the command, returning the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let outcome = match cli.command {
        Command::Pdist(args) => StateConfig::resolve(args, Format::Csv).and_then(|c| cmd_pdist(&c)),
        Command::Moments(args) => StateConfig::resolve(args, Format::Json).and_then(|c| cmd_moments(&c)),
        Command::Verify(args) => VerifyConfig::resolve(args).and_then(|c| cmd_verify(&c)),
    };
    match outcome {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn amplitude_parsing() {
        assert_eq!(parse_amplitude("0.5,-1").unwrap(), Complex64::new(0.5, -1.0));
        assert_eq!(parse_amplitude(" -1e-3 , 2 ").unwrap(), Complex64::new(-1e-3, 2.0));
        assert!(parse_amplitude("1").is_err());
        assert!(parse_amplitude("a,b").is_err());
        assert!(parse_amplitude("inf,0").is_err());
    }

    #[test]
    fn floats_keep_seventeen_digits() {
        assert_eq!(number(0.1).get(), "1.0000000000000001e-1");
        assert_eq!(number(-2.0).get(), "-2.0000000000000000e0");
        assert_eq!(number(f64::NAN).get(), "null");
        let back: f64 = serde_json::from_str(number(PI).get()).unwrap();
        assert_eq!(back, PI);
    }

    #[test]
    fn default_margins() {
        assert_eq!(default_margin(24), 8);
        assert_eq!(default_margin(12), 4);
        assert_eq!(default_margin(2), 1);
    }

    #[test]
    fn verify_has_eleven_rows() {
        let rows = verify_rows(&VerifyConfig::new(6)).unwrap();
        let tags: Vec<_> = rows.iter().map(|r| r.equation_tag).collect();
        assert_eq!(
            tags,
            [
                "eq10",
                "eq11",
                "eq12",
                "eq13",
                "eq14",
                "eq16",
                "eq21_F",
                "eq21_Fdag",
                "eq22",
                "eq24",
                "eq27"
            ]
        );
        assert!(rows[6].residual <= 1e-12 && rows[7].residual <= 1e-12);
        assert!(rows[10].trend.is_some());
    }

    #[test]
    fn grid_too_coarse_is_an_error() {
        let mut cfg = VerifyConfig::new(12);
        cfg.angular_order = 20;
        assert!(matches!(verify_rows(&cfg), Err(CliError::Core(_))));
    }
}
