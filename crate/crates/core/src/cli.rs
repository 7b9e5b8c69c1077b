//! Command-line front door: subcommands wrapping each verifier and
//! experiment, with reproducible configuration handling.
//!
//! Conventions shared by every subcommand:
//! - the first stdout line is `resolved-config: <subcommand> --flag value ...`;
//!   re-running with exactly that command line reproduces all outputs byte
//!   for byte;
//! - exit status 0 means every check asserted by the run passed, 1 means a
//!   check failed (a single machine-parsable `FAIL key=value ...` line is
//!   printed), 2 means the invocation itself was invalid;
//! - files are written atomically (temp file + rename).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::geom::DiscSpec;
use crate::verify::VerificationReport;
use crate::{experiments, maps, metrics, real_dynamics, verify, Error, Result, N0};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const TAU: f64 = std::f64::consts::TAU;
const PI: f64 = std::f64::consts::PI;

#[derive(Parser, Debug)]
#[command(
    name = "wandering-lab",
    version,
    about = "Numerical laboratory for a wandering-domain construction: \
             inequality checks, orbit classifiers, image renders, and \
             convergence experiments",
    subcommand_required = true,
    arg_required_else_help = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Locate the real fixed points in each window, report multipliers and
    /// offsets, and find an escaping orbit below the windows
    #[command(name = "fixed-points")]
    FixedPoints(FixedPointsArgs),
    /// Run dense-sampling inequality checks; exit 0 only if every requested
    /// check passes
    #[command(name = "verify-lemmas")]
    VerifyLemmas(VerifyLemmasArgs),
    /// Render the bounded quadratic component window (PPM + run-length dump
    /// + metadata)
    #[command(name = "render-cauliflower")]
    RenderCauliflower(RenderCauliflowerArgs),
    /// Render the seven-panel component figure into one composite image
    #[command(name = "render-figure1")]
    RenderFigure1(RenderFigure1Args),
    /// Classify one component window and report pixel counts and a diameter
    /// estimate
    #[command(name = "estimate-component")]
    EstimateComponent(EstimateComponentArgs),
    /// Measure Hausdorff distances between rescaled components and the
    /// bounded quadratic component; writes a CSV
    #[command(name = "hausdorff-convergence")]
    HausdorffConvergence(HausdorffArgs),
    /// Measure component diameters against the enclosure bound; writes a CSV
    #[command(name = "diameter-check")]
    DiameterCheck(DiameterArgs),
    /// Hyperbolic step-size decay along real orbits (half-plane route and
    /// trap-disc pair route); writes CSVs
    #[command(name = "contraction")]
    Contraction(ContractionArgs),
    /// Heuristic bounded-orbit exploration of the one-parameter family at a
    /// fixed parameter value
    #[command(name = "explore-lambda")]
    ExploreLambda(ExploreLambdaArgs),
}

#[derive(Args, Debug)]
pub struct FixedPointsArgs {
    /// Largest window index to scan; each window (2n*pi, 2(n+1)*pi) yields
    /// exactly two roots
    #[arg(long, default_value_t = 10)]
    pub max_n: u32,
    /// Width of the seed interval (-delta, 0) for the escaping-orbit search
    #[arg(long, default_value_t = 0.1)]
    pub escape_delta: f64,
    /// Step budget for the escaping-orbit search
    #[arg(long, default_value_t = 50)]
    pub escape_max_n: u32,
}

#[derive(Args, Debug)]
pub struct VerifyLemmasArgs {
    /// Which check to run: 3.2, 3.4, 3.6, 6.2, 6.4, 7.2, 7.3, or all
    #[arg(long, default_value = "all")]
    pub lemma: String,
    /// First-index sweep as `a..b` (inclusive) or `a,b,c`; default depends
    /// on the check (3.2: 1..20, 3.4: 5..200, 3.6: 0..20, 6.4: 1..3)
    #[arg(long)]
    pub n: Option<String>,
    /// Second-index sweep; default depends on the check (3.6: 1..20,
    /// 6.2: 2..200, 7.2: 5..20, 7.3: 5)
    #[arg(long)]
    pub m: Option<String>,
    /// Samples per parameter set (default 10000 for the drift band, 4096
    /// elsewhere)
    #[arg(long)]
    pub samples: Option<usize>,
    /// Radius of the sampled disc for the rescaled-map checks (default 1
    /// for 6.2, 0.5 for 6.4)
    #[arg(long)]
    pub r: Option<f64>,
    /// Deviation threshold for the composite-approximation check
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
    /// Seed offset above the window point for the ordering check (default:
    /// half the trap-disc radius at the chosen index)
    #[arg(long)]
    pub y0_offset: Option<f64>,
    /// Orbit length for the ordering check
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
}

#[derive(Args, Debug)]
pub struct RenderCauliflowerArgs {
    /// Pixels per grid side
    #[arg(long, default_value_t = 512)]
    pub res: usize,
    /// Iteration budget per pixel
    #[arg(long, default_value_t = 5000)]
    pub max_iter: u32,
    /// Output directory
    #[arg(long, default_value = "runs")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct RenderFigure1Args {
    /// Pixels per panel side (panels compose horizontally)
    #[arg(long, default_value_t = 256)]
    pub res: usize,
    /// Output directory
    #[arg(long, default_value = "runs")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct EstimateComponentArgs {
    /// Component index to classify (must be at least --n0)
    #[arg(long)]
    pub n: u32,
    /// Smallest index with a certified trap/escape pair; lower indices are
    /// rejected
    #[arg(long, default_value_t = N0)]
    pub n0: u32,
    /// Pixels per grid side
    #[arg(long, default_value_t = 512)]
    pub res: usize,
    /// Orbit step budget per pixel
    #[arg(long, default_value_t = 1000)]
    pub max_steps: u32,
    /// Output directory
    #[arg(long, default_value = "runs")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct HausdorffArgs {
    /// Component indices as `a..b` or `a,b,c`
    #[arg(long, default_value = "10,20,40,80")]
    pub n: String,
    /// Pixels per grid side (shared by reference and component grids)
    #[arg(long, default_value_t = 1024)]
    pub res: usize,
    /// Output directory for convergence.csv
    #[arg(long, default_value = "runs")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct DiameterArgs {
    /// Component indices as `a..b` or `a,b,c`
    #[arg(long, default_value = "10,20,40,80")]
    pub n: String,
    /// Pixels per grid side
    #[arg(long, default_value_t = 1024)]
    pub res: usize,
    /// Output directory for diameter.csv
    #[arg(long, default_value = "runs")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct ContractionArgs {
    /// Base index of the half-plane orbit
    #[arg(long, default_value_t = 5)]
    pub m: u32,
    /// Real seed for the half-plane orbit (default: one unit right of the
    /// first wall, 3(m+1)*pi + 1)
    #[arg(long)]
    pub t0: Option<f64>,
    /// Number of half-plane orbit steps
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    /// Number of coupled-pair steps in the trap-disc route
    #[arg(long, default_value_t = 100)]
    pub pair_steps: usize,
    /// Seed offset above the window point for the coupled pair (default:
    /// half the trap-disc radius)
    #[arg(long)]
    pub y0_offset: Option<f64>,
    /// Output directory for contraction.csv and pair.csv
    #[arg(long, default_value = "runs")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct ExploreLambdaArgs {
    /// Real part of the family parameter
    #[arg(long, default_value_t = 0.0)]
    pub lambda_re: f64,
    /// Imaginary part of the family parameter
    #[arg(long, default_value_t = 0.0)]
    pub lambda_im: f64,
    /// Component indices to explore, as `a..b` or `a,b,c`
    #[arg(long, default_value = "5,6,7,8")]
    pub n: String,
    /// Pixels per grid side
    #[arg(long, default_value_t = 256)]
    pub res: usize,
    /// Orbit step budget per pixel
    #[arg(long, default_value_t = 400)]
    pub max_iter: u32,
    /// Output directory
    #[arg(long, default_value = "runs/lambda")]
    pub out: PathBuf,
}

/// Parses `a..b` (inclusive) or a comma list of indices.
pub fn parse_index_list(s: &str) -> std::result::Result<Vec<u32>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty index list".to_string());
    }
    if let Some((a, b)) = s.split_once("..") {
        let a: u32 = a
            .trim()
            .parse()
            .map_err(|e| format!("bad range start {a:?}: {e}"))?;
        let b: u32 = b
            .trim()
            .parse()
            .map_err(|e| format!("bad range end {b:?}: {e}"))?;
        if b < a {
            return Err(format!("empty range {s:?}"));
        }
        if b - a > 100_000 {
            return Err(format!("range {s:?} is unreasonably large"));
        }
        Ok((a..=b).collect())
    } else {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| format!("bad index {t:?}: {e}"))
            })
            .collect()
    }
}

fn quote_if_needed(v: &str) -> String {
    if v.contains(' ') {
        format!("{v:?}")
    } else {
        v.to_string()
    }
}

/// Prints the reproducible config line: running the printed command line
/// again yields byte-identical outputs.
fn emit_resolved(cmd: &str, params: &[(&str, String)]) {
    let mut line = format!("resolved-config: {cmd}");
    for (k, v) in params {
        line.push(' ');
        line.push_str(&format!("--{k} {}", quote_if_needed(v)));
    }
    println!("{line}");
}

fn code_for(e: &Error) -> i32 {
    match e {
        Error::PreconditionViolated(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

/// Prints the single machine-parsable failure record (or a usage message)
/// and returns the exit code.
fn report_error(context: &str, e: &Error) -> i32 {
    let code = code_for(e);
    if code == EXIT_USAGE {
        eprintln!("usage error: {context}: {e}");
    } else {
        println!("FAIL check={context} error=\"{e}\"");
    }
    code
}

fn fail_line(report: &VerificationReport) {
    println!(
        "FAIL check={} margin={:e} witness_re={:e} witness_im={:e} m={} n={}",
        report.lemma_id,
        report.worst_margin,
        report.witness.re,
        report.witness.im,
        report.witness_m,
        report.witness_n
    );
}

/// Folds a sweep of reports into one: the entry with the smallest margin
/// wins (so the aggregate passes iff every entry passed), sample counts add,
/// and the parameter range is replaced by the sweep description.
fn aggregate(reports: Vec<VerificationReport>, range: String) -> VerificationReport {
    assert!(!reports.is_empty());
    let total: usize = reports.iter().map(|r| r.samples).sum();
    let mut worst = reports
        .into_iter()
        .min_by(|a, b| a.worst_margin.total_cmp(&b.worst_margin))
        .unwrap();
    worst.parameter_range = range;
    worst.samples = total;
    worst
}

fn indices_or(opt: &Option<String>, default_lo: u32, default_hi: u32) -> Result<Vec<u32>> {
    match opt {
        Some(s) => parse_index_list(s).map_err(Error::PreconditionViolated),
        None => Ok((default_lo..=default_hi).collect()),
    }
}

fn range_label(opt: &Option<String>, default: &str) -> String {
    opt.clone().unwrap_or_else(|| default.to_string())
}

const ALL_FAMILIES: [&str; 7] = ["3.2", "3.4", "3.6", "6.2", "6.4", "7.2", "7.3"];

fn run_family(family: &str, a: &VerifyLemmasArgs) -> Result<VerificationReport> {
    match family {
        "3.2" => {
            let ns = indices_or(&a.n, 1, 20)?;
            if ns.iter().any(|&n| n == 0) {
                return Err(Error::PreconditionViolated(
                    "drift-band indices start at 1".to_string(),
                ));
            }
            let samples = a.samples.unwrap_or(10_000);
            let reports = ns
                .iter()
                .map(|&n| verify::check_halfplane_drift(n, samples))
                .collect::<Result<Vec<_>>>()?;
            Ok(aggregate(reports, format!("n={}", range_label(&a.n, "1..20"))))
        }
        "3.4" => {
            let ns = indices_or(&a.n, 5, 200)?;
            if ns.iter().any(|&n| n == 0) {
                return Err(Error::PreconditionViolated(
                    "inclusion indices start at 1".to_string(),
                ));
            }
            let samples = a.samples.unwrap_or(4096);
            let reports: Vec<_> = ns
                .iter()
                .map(|&n| verify::check_disc_inclusion(n, samples))
                .collect();
            Ok(aggregate(reports, format!("n={}", range_label(&a.n, "5..200"))))
        }
        "3.6" => {
            let ms = indices_or(&a.m, 1, 20)?;
            if ms.iter().any(|&m| m == 0) {
                return Err(Error::PreconditionViolated(
                    "expansion base indices start at 1".to_string(),
                ));
            }
            let ns = indices_or(&a.n, 0, 20)?;
            let samples = a.samples.unwrap_or(4096);
            let mut reports = Vec::with_capacity(ms.len() * ns.len());
            for &m in &ms {
                for &n in &ns {
                    reports.push(verify::check_circle_expansion(m, n, samples));
                }
            }
            Ok(aggregate(
                reports,
                format!(
                    "m={} n={}",
                    range_label(&a.m, "1..20"),
                    range_label(&a.n, "0..20")
                ),
            ))
        }
        "6.2" => {
            let r = a.r.unwrap_or(1.0);
            if !(r > 0.0 && r <= 5.0) {
                return Err(Error::PreconditionViolated(format!(
                    "radius must lie in (0, 5], got {r}"
                )));
            }
            let m_max = match &a.m {
                Some(s) => *parse_index_list(s)
                    .map_err(Error::PreconditionViolated)?
                    .iter()
                    .max()
                    .unwrap(),
                None => 200,
            };
            if m_max < 2 {
                return Err(Error::PreconditionViolated(
                    "the rescaled-map sweep needs indices up to at least 2".to_string(),
                ));
            }
            Ok(verify::check_g_uniform_convergence(r, m_max))
        }
        "6.4" => {
            let ns = indices_or(&a.n, 1, 3)?;
            if ns.iter().any(|&n| n > 12) {
                return Err(Error::PreconditionViolated(
                    "iterate counts above 12 are not supported".to_string(),
                ));
            }
            let r = a.r.unwrap_or(0.5);
            if !(r > 0.0 && r <= 1.0) {
                return Err(Error::PreconditionViolated(format!(
                    "radius must lie in (0, 1], got {r}"
                )));
            }
            if a.epsilon <= 0.0 {
                return Err(Error::PreconditionViolated(format!(
                    "threshold must be positive, got {}",
                    a.epsilon
                )));
            }
            let reports = ns
                .iter()
                .map(|&n| verify::phi_threshold_report(n, r, a.epsilon))
                .collect::<Result<Vec<_>>>()?;
            Ok(aggregate(reports, format!("n={}", range_label(&a.n, "1..3"))))
        }
        "7.2" => {
            let ms = indices_or(&a.m, 5, 20)?;
            if ms.iter().any(|&m| m == 0) {
                return Err(Error::PreconditionViolated(
                    "monotonicity indices start at 1".to_string(),
                ));
            }
            let samples = a.samples.unwrap_or(4096);
            let reports: Vec<_> = ms
                .iter()
                .map(|&m| verify::check_monotone_increasing_on_discs(m, samples))
                .collect();
            Ok(aggregate(reports, format!("m={}", range_label(&a.m, "5..20"))))
        }
        "7.3" => {
            let ms = indices_or(&a.m, 5, 5)?;
            if ms.iter().any(|&m| m < 5) {
                return Err(Error::PreconditionViolated(
                    "ordering orbits need a base index of at least 5".to_string(),
                ));
            }
            if a.steps < 1 {
                return Err(Error::PreconditionViolated(
                    "the ordering check needs at least one step".to_string(),
                ));
            }
            let reports = ms
                .iter()
                .map(|&m| {
                    let offset = a.y0_offset.unwrap_or(DiscSpec::trap(m).radius / 2.0);
                    let y0 = maps::two_n_pi(m) + offset;
                    verify::check_ordering_sequences(m, y0, a.steps)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(aggregate(reports, format!("m={}", range_label(&a.m, "5"))))
        }
        other => Err(Error::PreconditionViolated(format!(
            "unknown check {other:?}; valid: 3.2 3.4 3.6 6.2 6.4 7.2 7.3 all"
        ))),
    }
}

fn run_verify_lemmas(a: &VerifyLemmasArgs) -> i32 {
    let mut params: Vec<(&str, String)> = vec![("lemma", a.lemma.clone())];
    if let Some(n) = &a.n {
        params.push(("n", n.clone()));
    }
    if let Some(m) = &a.m {
        params.push(("m", m.clone()));
    }
    if let Some(s) = &a.samples {
        params.push(("samples", s.to_string()));
    }
    if let Some(r) = &a.r {
        params.push(("r", format!("{r:e}")));
    }
    params.push(("epsilon", format!("{:e}", a.epsilon)));
    if let Some(y) = &a.y0_offset {
        params.push(("y0-offset", format!("{y:e}")));
    }
    params.push(("steps", a.steps.to_string()));
    emit_resolved("verify-lemmas", &params);

    let families: Vec<&str> = if a.lemma == "all" {
        ALL_FAMILIES.to_vec()
    } else if ALL_FAMILIES.contains(&a.lemma.as_str()) {
        vec![a.lemma.as_str()]
    } else {
        eprintln!(
            "usage error: unknown check {:?}; valid: 3.2 3.4 3.6 6.2 6.4 7.2 7.3 all",
            a.lemma
        );
        return EXIT_USAGE;
    };

    let mut all_pass = true;
    for family in families {
        match run_family(family, a) {
            Ok(report) => {
                println!("{}", report.to_line());
                if !report.pass {
                    fail_line(&report);
                    all_pass = false;
                }
            }
            Err(e) => {
                let code = code_for(&e);
                if code == EXIT_USAGE {
                    eprintln!("usage error: check {family}: {e}");
                    return EXIT_USAGE;
                }
                println!("FAIL check={family} error=\"{e}\"");
                all_pass = false;
            }
        }
    }
    println!("verify-lemmas {}", if all_pass { "pass" } else { "fail" });
    if all_pass {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn run_fixed_points(a: &FixedPointsArgs) -> i32 {
    emit_resolved(
        "fixed-points",
        &[
            ("max-n", a.max_n.to_string()),
            ("escape-delta", format!("{:e}", a.escape_delta)),
            ("escape-max-n", a.escape_max_n.to_string()),
        ],
    );
    if a.max_n < 1 {
        eprintln!("usage error: --max-n must be at least 1");
        return EXIT_USAGE;
    }
    let mut ok = true;

    for n in 1..=a.max_n {
        match real_dynamics::find_real_fixed_points(n) {
            Ok(records) => {
                for r in records {
                    let residual = (real_dynamics::f_real(r.x) - r.x).abs();
                    println!(
                        "fixed-point window={} x={:e} multiplier={:e} eta={:e} residual={:e}",
                        r.window, r.x, r.multiplier, r.eta, residual
                    );
                    if residual >= 1e-10 {
                        println!("FAIL check=fixed-points window={n} residual={residual:e}");
                        ok = false;
                    }
                    if r.x > TAU && r.multiplier.abs() <= TAU - 1.0 {
                        println!(
                            "FAIL check=fixed-points window={n} multiplier={:e} bound={:e}",
                            r.multiplier,
                            TAU - 1.0
                        );
                        ok = false;
                    }
                }
            }
            Err(e) => {
                println!("FAIL check=fixed-points window={n} error=\"{e}\"");
                ok = false;
            }
        }
    }

    let res_pi = (real_dynamics::f_real(PI) - PI).abs();
    let mult_pi = real_dynamics::multiplier(PI);
    println!(
        "anchor x=pi residual={:e} multiplier={:e}",
        res_pi, mult_pi
    );
    if res_pi > 1e-12 || (mult_pi + 1.0).abs() > 1e-12 {
        println!("FAIL check=fixed-points anchor=pi residual={res_pi:e} multiplier={mult_pi:e}");
        ok = false;
    }
    let x = 4.0 * PI / 3.0;
    let res_x = (real_dynamics::f_real(x) - x).abs();
    let mult_x = real_dynamics::multiplier(x);
    println!("anchor x=4pi/3 residual={:e} multiplier={:e}", res_x, mult_x);
    if res_x > 1e-12 || mult_x.abs() <= 1.0 {
        println!("FAIL check=fixed-points anchor=4pi/3 residual={res_x:e}");
        ok = false;
    }

    match real_dynamics::find_escaping_negative(a.escape_delta, a.escape_max_n) {
        Ok(w) => {
            let mut x = w.x0;
            for _ in 0..w.n {
                x = real_dynamics::f_real(x);
            }
            let bound = maps::two_n_pi(w.n) - PI / 2.0;
            println!(
                "escape-witness x0={:e} n={} value={:e} bound={:e}",
                w.x0, w.n, w.value, bound
            );
            if x != w.value || x > bound {
                println!("FAIL check=fixed-points escape-reverify x={x:e} bound={bound:e}");
                ok = false;
            }
        }
        Err(e) => {
            println!("FAIL check=fixed-points escape error=\"{e}\"");
            ok = false;
        }
    }

    println!("fixed-points {}", if ok { "pass" } else { "fail" });
    if ok {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn run_render_cauliflower(a: &RenderCauliflowerArgs) -> i32 {
    emit_resolved(
        "render-cauliflower",
        &[
            ("res", a.res.to_string()),
            ("max-iter", a.max_iter.to_string()),
            ("out", a.out.display().to_string()),
        ],
    );
    if a.res < 2 {
        eprintln!("usage error: --res must be at least 2");
        return EXIT_USAGE;
    }
    match experiments::render_cauliflower(&a.out, a.res, a.max_iter) {
        Ok((paths, grid)) => {
            let (inside, outside, undecided) = grid.counts();
            println!(
                "render-cauliflower inside={inside} outside={outside} undecided={undecided}"
            );
            for p in paths {
                println!("wrote {}", p.display());
            }
            EXIT_OK
        }
        Err(e) => report_error("render-cauliflower", &e),
    }
}

fn run_render_figure1(a: &RenderFigure1Args) -> i32 {
    emit_resolved(
        "render-figure1",
        &[
            ("res", a.res.to_string()),
            ("out", a.out.display().to_string()),
        ],
    );
    if a.res < 32 {
        eprintln!("usage error: --res must be at least 32 to resolve the trap discs");
        return EXIT_USAGE;
    }
    match experiments::run_figure1(&a.out, a.res) {
        Ok(out) => {
            for p in &out.panels {
                println!(
                    "panel n={} mode={} inside={} outside={} undecided={}",
                    p.n,
                    if p.sound { "sound" } else { "best-effort" },
                    p.inside,
                    p.outside,
                    p.undecided
                );
            }
            println!("wrote {}", out.image_path.display());
            println!("wrote {}", out.metadata_path.display());
            EXIT_OK
        }
        Err(e) => report_error("render-figure1", &e),
    }
}

fn run_estimate_component(a: &EstimateComponentArgs) -> i32 {
    emit_resolved(
        "estimate-component",
        &[
            ("n", a.n.to_string()),
            ("n0", a.n0.to_string()),
            ("res", a.res.to_string()),
            ("max-steps", a.max_steps.to_string()),
            ("out", a.out.display().to_string()),
        ],
    );
    if a.n < a.n0 {
        eprintln!(
            "usage error: --n {} is below --n0 {}; sound classification needs the certified trap chain",
            a.n, a.n0
        );
        return EXIT_USAGE;
    }
    match experiments::render_component(&a.out, a.n, a.res, a.max_steps) {
        Ok((paths, grid)) => {
            let (inside, outside, undecided) = grid.counts();
            println!(
                "estimate-component n={} inside={inside} outside={outside} undecided={undecided} undecided_fraction={:e}",
                a.n,
                grid.undecided_fraction()
            );
            for p in paths {
                println!("wrote {}", p.display());
            }
            EXIT_OK
        }
        Err(e) => report_error("estimate-component", &e),
    }
}

fn run_hausdorff(a: &HausdorffArgs) -> i32 {
    emit_resolved(
        "hausdorff-convergence",
        &[
            ("n", a.n.clone()),
            ("res", a.res.to_string()),
            ("out", a.out.display().to_string()),
        ],
    );
    let ns = match parse_index_list(&a.n) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("usage error: --n: {e}");
            return EXIT_USAGE;
        }
    };
    match experiments::run_hausdorff_convergence(&ns, a.res) {
        Ok(rows) => {
            for r in &rows {
                println!(
                    "row n={} d_H={:e} undecided_fraction={:e} pixel_size={:e}",
                    r.n, r.d_h, r.undecided_fraction, r.pixel_size
                );
            }
            let path = a.out.join("convergence.csv");
            match experiments::write_atomic(&path, &experiments::convergence_csv(&rows)) {
                Ok(()) => {
                    println!("wrote {}", path.display());
                    EXIT_OK
                }
                Err(e) => report_error("hausdorff-convergence", &e),
            }
        }
        Err(e) => report_error("hausdorff-convergence", &e),
    }
}

fn run_diameter(a: &DiameterArgs) -> i32 {
    emit_resolved(
        "diameter-check",
        &[
            ("n", a.n.clone()),
            ("res", a.res.to_string()),
            ("out", a.out.display().to_string()),
        ],
    );
    let ns = match parse_index_list(&a.n) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("usage error: --n: {e}");
            return EXIT_USAGE;
        }
    };
    match experiments::run_diameter_check(&ns, a.res) {
        Ok(rows) => {
            for r in &rows {
                println!(
                    "row n={} diameter={:e} enclosure_bound={:e} pixel_diagonal={:e} rescaled_diameter={:e}",
                    r.n, r.diameter, r.enclosure_bound, r.pixel_diagonal, r.rescaled_diameter
                );
            }
            let violations = experiments::diameter_violations(&rows);
            let path = a.out.join("diameter.csv");
            match experiments::write_atomic(&path, &experiments::diameter_csv(&rows)) {
                Ok(()) => {
                    println!("wrote {}", path.display());
                    if violations.is_empty() {
                        println!("diameter-check pass");
                        EXIT_OK
                    } else {
                        for v in &violations {
                            println!("FAIL diameter {v}");
                        }
                        println!("diameter-check fail");
                        EXIT_FAIL
                    }
                }
                Err(e) => report_error("diameter-check", &e),
            }
        }
        Err(e) => report_error("diameter-check", &e),
    }
}

/// The decay envelope for the half-plane step sizes at offset index k >= 1:
/// (11/8)(m+k)pi over ((pi/3) k (2m+k-1)).
fn contraction_bound(m: u32, k: usize) -> f64 {
    let m = f64::from(m);
    let k = k as f64;
    (11.0 / 8.0) * (m + k) * PI / ((PI / 3.0) * k * (2.0 * m + k - 1.0))
}

fn run_contraction(a: &ContractionArgs) -> i32 {
    let t0 = a.t0.unwrap_or(3.0 * f64::from(a.m + 1) * PI + 1.0);
    let y0_offset = a.y0_offset.unwrap_or(DiscSpec::trap(a.m.max(1)).radius / 2.0);
    emit_resolved(
        "contraction",
        &[
            ("m", a.m.to_string()),
            ("t0", format!("{t0:e}")),
            ("steps", a.steps.to_string()),
            ("pair-steps", a.pair_steps.to_string()),
            ("y0-offset", format!("{y0_offset:e}")),
            ("out", a.out.display().to_string()),
        ],
    );
    if a.m < 5 {
        eprintln!("usage error: --m must be at least 5 (certified trap chain)");
        return EXIT_USAGE;
    }
    if a.steps < 1 || a.pair_steps < 2 {
        eprintln!("usage error: --steps must be >= 1 and --pair-steps >= 2");
        return EXIT_USAGE;
    }

    let d = match metrics::contraction_experiment(a.m, t0, a.steps) {
        Ok(d) => d,
        Err(e) => return report_error("contraction", &e),
    };
    let mut violations = 0usize;
    let mut csv = String::from("n,d_n,bound\n");
    for (k, dk) in d.iter().enumerate() {
        let bound = if k >= 1 {
            contraction_bound(a.m, k)
        } else {
            f64::INFINITY
        };
        if k >= 1 && *dk > bound {
            violations += 1;
        }
        csv.push_str(&format!("{k},{dk:e},{bound:e}\n"));
        if k < 5 || k % 100 == 0 || k + 1 == d.len() {
            println!("step n={k} d={dk:e} bound={bound:e}");
        }
    }
    println!(
        "halfplane-route steps={} d_first={:e} d_last={:e} bound_violations={violations}",
        d.len(),
        d[0],
        d[d.len() - 1]
    );

    let pair = match metrics::wandering_contraction(a.m, maps::two_n_pi(a.m) + y0_offset, a.pair_steps)
    {
        Ok(p) => p,
        Err(e) => return report_error("contraction", &e),
    };
    let mut pair_csv = String::from("n,pair_bound\n");
    for (i, b) in pair.iter().enumerate() {
        pair_csv.push_str(&format!("{},{b:e}\n", i + 1));
    }
    println!(
        "trap-route steps={} bound_first={:e} bound_last={:e}",
        pair.len(),
        pair[0],
        pair[pair.len() - 1]
    );

    let csv_path = a.out.join("contraction.csv");
    if let Err(e) = experiments::write_atomic(&csv_path, &csv) {
        return report_error("contraction", &e);
    }
    println!("wrote {}", csv_path.display());
    let pair_path = a.out.join("pair.csv");
    if let Err(e) = experiments::write_atomic(&pair_path, &pair_csv) {
        return report_error("contraction", &e);
    }
    println!("wrote {}", pair_path.display());

    if violations == 0 {
        println!("contraction pass");
        EXIT_OK
    } else {
        println!("FAIL check=contraction bound_violations={violations}");
        EXIT_FAIL
    }
}

fn run_explore_lambda(a: &ExploreLambdaArgs) -> i32 {
    emit_resolved(
        "explore-lambda",
        &[
            ("lambda-re", format!("{:e}", a.lambda_re)),
            ("lambda-im", format!("{:e}", a.lambda_im)),
            ("n", a.n.clone()),
            ("res", a.res.to_string()),
            ("max-iter", a.max_iter.to_string()),
            ("out", a.out.display().to_string()),
        ],
    );
    let ns = match parse_index_list(&a.n) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("usage error: --n: {e}");
            return EXIT_USAGE;
        }
    };
    let lambda = Complex64::new(a.lambda_re, a.lambda_im);
    match experiments::run_lambda_explore(lambda, &ns, a.res, a.max_iter, &a.out) {
        Ok(out) => {
            println!(
                "quadratic-parameter c={:e}{}{:e}i (verdicts are HEURISTIC)",
                out.c.re,
                if out.c.im < 0.0 { "-" } else { "+" },
                out.c.im.abs()
            );
            for r in &out.rows {
                println!(
                    "row n={} d_H={:e} undecided_fraction={:e} pixel_size={:e}",
                    r.n, r.d_h, r.undecided_fraction, r.pixel_size
                );
            }
            for f in &out.files {
                println!("wrote {}", f.display());
            }
            EXIT_OK
        }
        Err(e) => report_error("explore-lambda", &e),
    }
}

/// Executes a parsed invocation; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match &cli.command {
        Command::FixedPoints(a) => run_fixed_points(a),
        Command::VerifyLemmas(a) => run_verify_lemmas(a),
        Command::RenderCauliflower(a) => run_render_cauliflower(a),
        Command::RenderFigure1(a) => run_render_figure1(a),
        Command::EstimateComponent(a) => run_estimate_component(a),
        Command::HausdorffConvergence(a) => run_hausdorff(a),
        Command::DiameterCheck(a) => run_diameter(a),
        Command::Contraction(a) => run_contraction(a),
        Command::ExploreLambda(a) => run_explore_lambda(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn index_list_parses_ranges_and_lists() {
        assert_eq!(parse_index_list("5..8").unwrap(), vec![5, 6, 7, 8]);
        assert_eq!(parse_index_list("10,20,40,80").unwrap(), vec![10, 20, 40, 80]);
        assert_eq!(parse_index_list("7").unwrap(), vec![7]);
        assert_eq!(parse_index_list(" 3 .. 4 ").unwrap(), vec![3, 4]);
        assert!(parse_index_list("8..5").is_err());
        assert!(parse_index_list("").is_err());
        assert!(parse_index_list("x").is_err());
        assert!(parse_index_list("1,,2").is_err());
    }

    #[test]
    fn empty_argv_is_a_usage_error() {
        assert!(Cli::try_parse_from(["wandering-lab"]).is_err());
    }

    #[test]
    fn unknown_flags_are_rejected() {
        assert!(Cli::try_parse_from(["wandering-lab", "fixed-points", "--bogus", "1"]).is_err());
        assert!(Cli::try_parse_from(["wandering-lab", "estimate-component"]).is_err());
    }

    #[test]
    fn verify_lemmas_parses_the_documented_example() {
        let cli = Cli::try_parse_from([
            "wandering-lab",
            "verify-lemmas",
            "--lemma",
            "3.4",
            "--n",
            "5..200",
        ])
        .unwrap();
        match cli.command {
            Command::VerifyLemmas(a) => {
                assert_eq!(a.lemma, "3.4");
                assert_eq!(a.n.as_deref(), Some("5..200"));
                assert_eq!(a.epsilon, 0.05);
                assert_eq!(a.steps, 50);
            }
            _ => panic!("wrong subcommand"),
        }
    }

    #[test]
    fn estimate_component_below_threshold_is_usage_error() {
        let cli =
            Cli::try_parse_from(["wandering-lab", "estimate-component", "--n", "3"]).unwrap();
        assert_eq!(run(cli), EXIT_USAGE);
    }

    #[test]
    fn unknown_lemma_is_usage_error() {
        let cli = Cli::try_parse_from(["wandering-lab", "verify-lemmas", "--lemma", "9.9"])
            .unwrap();
        assert_eq!(run(cli), EXIT_USAGE);
    }

    #[test]
    fn aggregate_keeps_the_worst_margin_and_sums_samples() {
        let mk = |margin: f64, samples: usize| VerificationReport {
            lemma_id: "t".to_string(),
            parameter_range: "x".to_string(),
            samples,
            pass: margin > 0.0,
            worst_margin: margin,
            witness: Complex64::new(0.0, 0.0),
            witness_m: 1,
            witness_n: 2,
        };
        let agg = aggregate(vec![mk(0.5, 10), mk(0.1, 20), mk(0.9, 30)], "sweep".to_string());
        assert_eq!(agg.worst_margin, 0.1);
        assert_eq!(agg.samples, 60);
        assert!(agg.pass);
        assert_eq!(agg.parameter_range, "sweep");
        let agg = aggregate(vec![mk(0.5, 1), mk(-0.2, 1)], "s".to_string());
        assert!(!agg.pass);
        assert_eq!(agg.worst_margin, -0.2);
    }

    #[test]
    fn monotone_family_passes_quickly() {
        let args = Cli::try_parse_from([
            "wandering-lab",
            "verify-lemmas",
            "--lemma",
            "7.2",
            "--m",
            "5..6",
            "--samples",
            "256",
        ])
        .unwrap();
        match args.command {
            Command::VerifyLemmas(a) => {
                let report = run_family("7.2", &a).unwrap();
                assert!(report.pass);
                assert_eq!(report.lemma_id, "7.2");
                assert!(report.parameter_range.contains("5..6"));
            }
            _ => panic!("wrong subcommand"),
        }
    }

    #[test]
    fn contraction_bound_decays() {
        assert!(contraction_bound(5, 1) > contraction_bound(5, 2));
        assert!(contraction_bound(5, 999) < 0.01);
    }

    #[test]
    fn fixed_points_subcommand_passes_end_to_end() {
        let cli = Cli::try_parse_from(["wandering-lab", "fixed-points", "--max-n", "2"]).unwrap();
        assert_eq!(run(cli), EXIT_OK);
    }

    #[test]
    fn quoting_only_when_needed() {
        assert_eq!(quote_if_needed("runs"), "runs");
        assert_eq!(quote_if_needed("my runs"), "\"my runs\"");
    }
}
