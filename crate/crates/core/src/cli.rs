//! Command-line front end: `expand`, `region`, `converge` and `verify`.
//!
//! Exit codes: 0 success, 1 failed verification, 2 parse or invalid input,
//! 3 geometry or domain error, 4 non-convergent quadrature.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use crate::coefficients::CoeffTensor;
use crate::contour::{default_delta, enclosing_circle, QuadratureOptions};
use crate::error::{Error, Result};
use crate::function::{parse_function, Analytic, AnalyticFunction, Singularity};
use crate::hermite::{hermite_interpolate, residue_coeffs_rational};
use crate::laurent::{expand_laurent, expand_taylor_laurent, laurent_remainder};
use crate::points::{parse_complex, PointSet};
use crate::region::{boundary_sample, BBox, RegionKind, RegionSpec};
use crate::taylor::{expand_taylor_with, remainder_exact, ExpansionOptions, Method};

#[derive(Parser, Debug)]
#[command(name = "lemniscate", version, about = "Multi-point Taylor and Laurent expansions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coefficient tensors as JSON.
    Expand(ExpandArgs),
    /// Boundary of the convergence region as CSV, with a JSON sidecar.
    Region(RegionArgs),
    /// Remainder magnitudes at probe points for N = 1..N, as CSV.
    Converge(ConvergeArgs),
    /// Cross-check the coefficient engines against each other and the oracles.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Taylor,
    Laurent,
    TaylorLaurent,
}

impl ModeArg {
    fn name(self) -> &'static str {
        match self {
            ModeArg::Taylor => "taylor",
            ModeArg::Laurent => "laurent",
            ModeArg::TaylorLaurent => "taylor-laurent",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodArg {
    Cauchy,
    Derivative,
    Both,
}

/// Function, foci and expansion settings shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Function of `z`, e.g. "exp(z)" or "1/((z-1)*(z+1))".
    #[arg(long = "f", value_name = "EXPR")]
    pub function: String,
    /// Foci as "z:m,z:m,...", e.g. "1:1,-1:2,0.5+2i".
    #[arg(long, value_name = "FOCI")]
    pub points: String,
    #[arg(long, value_enum, default_value = "taylor")]
    pub mode: ModeArg,
    /// Number of regular foci (taylor-laurent only); the rest carry the poles.
    #[arg(long, value_name = "Q")]
    pub split: Option<usize>,
    /// Radius of the excluded disks about singular foci.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Declare a pole, "z" or "z:order". Repeatable.
    #[arg(long = "pole", value_name = "Z[:ORDER]")]
    pub poles: Vec<String>,
    /// Declare an essential singularity. Repeatable.
    #[arg(long = "essential", value_name = "Z")]
    pub essentials: Vec<String>,
    /// Declare a branch point. Repeatable.
    #[arg(long = "branch", value_name = "Z")]
    pub branches: Vec<String>,
    /// Drop the automatically detected singularities.
    #[arg(long)]
    pub no_auto_singularities: bool,
    /// Quadrature tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Largest node count per circle.
    #[arg(long)]
    pub max_nodes: Option<usize>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    #[command(flatten)]
    pub config: RunConfig,
    #[arg(long = "N", default_value_t = 6)]
    pub blocks: usize,
    #[arg(long, value_enum, default_value = "both")]
    pub method: MethodArg,
}

#[derive(Args, Debug)]
pub struct RegionArgs {
    #[command(flatten)]
    pub config: RunConfig,
    /// Grid cells per side.
    #[arg(long, default_value_t = 512)]
    pub resolution: usize,
    /// Sampling box "xmin,xmax,ymin,ymax".
    #[arg(long, value_name = "BOX")]
    pub clip: Option<String>,
    /// Lemniscate radius to use instead of the one implied by `f`.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Sidecar path; defaults to the CSV path with a `.json` extension, or stderr.
    #[arg(long)]
    pub sidecar: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub config: RunConfig,
    #[arg(long = "N", default_value_t = 10)]
    pub blocks: usize,
    /// Probe point. Repeatable or comma-separated.
    #[arg(long = "probe", value_name = "Z", required = true, value_delimiter = ',')]
    pub probes: Vec<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Function to check; the built-in battery runs when omitted.
    #[arg(long = "f", value_name = "EXPR", requires = "points")]
    pub function: Option<String>,
    #[arg(long, value_name = "FOCI")]
    pub points: Option<String>,
    /// Blocks compared, so indices `n < N`.
    #[arg(long = "N", default_value_t = 7)]
    pub blocks: usize,
}

/// Parses `std::env::args` and runs the command.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = std::env::var("LEMNISCATE_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            log::warn!("LEMNISCATE_THREADS ignored: {e}");
        }
    }
    let result = match &cli.command {
        Command::Expand(a) => cmd_expand(a),
        Command::Region(a) => cmd_region(a),
        Command::Converge(a) => cmd_converge(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

impl RunConfig {
    pub fn function(&self) -> Result<AnalyticFunction> {
        let mut f = parse_function(&self.function)?;
        if self.no_auto_singularities {
            f = f.with_singularities(Vec::new());
        }
        for p in &self.poles {
            let (z, order) = match p.rsplit_once(':') {
                Some((z, m)) => {
                    let m: u32 = m.trim().parse().map_err(|_| Error::invalid(format!("bad pole order in {p:?}")))?;
                    (parse_complex(z)?, m)
                }
                None => (parse_complex(p)?, 1),
            };
            f = f.with_singularity(Singularity::pole(z, order));
        }
        for s in &self.essentials {
            f = f.with_singularity(Singularity::essential(parse_complex(s)?));
        }
        for s in &self.branches {
            f = f.with_singularity(Singularity::branch(parse_complex(s)?));
        }
        Ok(f)
    }

    pub fn point_set(&self) -> Result<PointSet> {
        self.points.parse()
    }

    /// The split for taylor-laurent mode, 0 otherwise.
    pub fn split(&self, points: &PointSet) -> Result<usize> {
        match (self.mode, self.split) {
            (ModeArg::TaylorLaurent, Some(q)) if q >= 1 && q < points.len() => Ok(q),
            (ModeArg::TaylorLaurent, Some(q)) => {
                Err(Error::invalid(format!("--split {q} must lie in 1..{}", points.len())))
            }
            (ModeArg::TaylorLaurent, None) => Err(Error::invalid("--split is required in taylor-laurent mode")),
            (_, Some(_)) => Err(Error::invalid("--split only applies to taylor-laurent mode")),
            (_, None) => Ok(0),
        }
    }

    pub fn quadrature(&self) -> Result<QuadratureOptions> {
        let mut q = QuadratureOptions::default();
        if let Some(t) = self.tol {
            if t.is_nan() || t <= 0.0 {
                return Err(Error::invalid("--tol must be positive"));
            }
            q.tol = t;
        }
        if let Some(n) = self.max_nodes {
            if n < q.min_nodes {
                return Err(Error::invalid(format!("--max-nodes must be at least {}", q.min_nodes)));
            }
            q.max_nodes = n;
        }
        Ok(q)
    }

    fn options(&self) -> Result<ExpansionOptions> {
        if let Some(d) = self.delta {
            if d.is_nan() || d <= 0.0 {
                return Err(Error::invalid("--delta must be positive"));
            }
        }
        Ok(ExpansionOptions { delta: self.delta, quadrature: self.quadrature()?, ..Default::default() })
    }

    fn region(&self, f: &AnalyticFunction, points: &PointSet, split: usize) -> Result<RegionSpec> {
        let sings = f.singularities();
        match self.mode {
            ModeArg::Taylor => Ok(RegionSpec::lemniscate(points, sings)),
            ModeArg::Laurent => {
                RegionSpec::annulus(points, sings, self.delta.unwrap_or_else(|| default_delta(points, f, 0)))
            }
            ModeArg::TaylorLaurent => RegionSpec::taylor_laurent(
                points,
                split,
                sings,
                self.delta.unwrap_or_else(|| default_delta(points, f, split)),
            ),
        }
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(
            File::create(p).map_err(|e| Error::invalid(format!("cannot create {}: {e}", p.display())))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::invalid(format!("write failed: {e}"))
}

// ---------------------------------------------------------------------------
// expand
// ---------------------------------------------------------------------------

type Nested = Vec<Vec<Vec<[f64; 2]>>>;

#[derive(Serialize)]
struct FocusJson {
    z: [f64; 2],
    m: u32,
}

#[derive(Serialize)]
struct RegionJson {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<f64>,
}

impl From<&RegionSpec> for RegionJson {
    fn from(r: &RegionSpec) -> Self {
        match r.kind {
            RegionKind::Lemniscate => {
                RegionJson { kind: "lemniscate", r: Some(r.r()), r1: None, r2: None, delta: None }
            }
            RegionKind::Annulus => {
                RegionJson { kind: "annulus", r: None, r1: Some(r.r1), r2: Some(r.r2), delta: r.delta }
            }
            RegionKind::TaylorLaurent { .. } => {
                RegionJson { kind: "taylor-laurent", r: None, r1: Some(r.r1), r2: Some(r.r2), delta: r.delta }
            }
        }
    }
}

#[derive(Serialize)]
struct ExpandReport {
    mode: &'static str,
    points: Vec<FocusJson>,
    #[serde(rename = "N")]
    blocks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    split: Option<usize>,
    method: &'static str,
    a: Nested,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<Nested>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c: Option<Nested>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cross_check_max_abs_diff: Option<f64>,
    region: Option<RegionJson>,
}

fn nested(t: &CoeffTensor) -> Nested {
    t.to_nested()
        .into_iter()
        .map(|b| b.into_iter().map(|j| j.into_iter().map(|z| [z.re, z.im]).collect()).collect())
        .collect()
}

/// `(a, b, c)` tensors for one method; absent tensors are `None`.
type Tensors = (CoeffTensor, Option<CoeffTensor>, Option<CoeffTensor>);

fn tensors(
    f: &AnalyticFunction,
    points: &PointSet,
    mode: ModeArg,
    split: usize,
    blocks: usize,
    method: Method,
    opts: &ExpansionOptions,
) -> Result<Tensors> {
    Ok(match mode {
        ModeArg::Taylor => (expand_taylor_with(f, points, blocks, method, opts)?.a().clone(), None, None),
        ModeArg::Laurent => {
            let e = expand_laurent(f, points, blocks, method, opts)?;
            (e.a().clone(), Some(e.b().clone()), None)
        }
        ModeArg::TaylorLaurent => {
            let e = expand_taylor_laurent(f, points, split, blocks, method, opts)?;
            (e.a().clone(), Some(e.b().clone()), Some(e.c().clone()))
        }
    })
}

fn max_diff(x: &Tensors, y: &Tensors) -> f64 {
    let opt = |a: &Option<CoeffTensor>, b: &Option<CoeffTensor>| match (a, b) {
        (Some(a), Some(b)) => a.max_abs_diff(b),
        _ => 0.0,
    };
    x.0.max_abs_diff(&y.0).max(opt(&x.1, &y.1)).max(opt(&x.2, &y.2))
}

pub fn cmd_expand(args: &ExpandArgs) -> Result<i32> {
    let cfg = &args.config;
    let f = cfg.function()?;
    let points = cfg.point_set()?;
    let split = cfg.split(&points)?;
    if args.blocks == 0 {
        return Err(Error::invalid("--N must be at least 1"));
    }
    let opts = cfg.options()?;
    let (method, primary, diff) = match args.method {
        MethodArg::Cauchy => {
            ("cauchy", tensors(&f, &points, cfg.mode, split, args.blocks, Method::Cauchy, &opts)?, None)
        }
        MethodArg::Derivative => {
            ("derivative", tensors(&f, &points, cfg.mode, split, args.blocks, Method::Derivative, &opts)?, None)
        }
        MethodArg::Both => {
            let c = tensors(&f, &points, cfg.mode, split, args.blocks, Method::Cauchy, &opts)?;
            let d = tensors(&f, &points, cfg.mode, split, args.blocks, Method::Derivative, &opts)?;
            let diff = max_diff(&c, &d);
            ("both", c, Some(diff))
        }
    };
    let region = match cfg.region(&f, &points, split) {
        Ok(r) => Some(RegionJson::from(&r)),
        Err(e) => {
            log::warn!("no convergence region: {e}");
            None
        }
    };
    let report = ExpandReport {
        mode: cfg.mode.name(),
        points: points.foci().iter().map(|&(z, m)| FocusJson { z: [z.re, z.im], m }).collect(),
        blocks: args.blocks,
        split: (cfg.mode == ModeArg::TaylorLaurent).then_some(split),
        method,
        a: nested(&primary.0),
        b: primary.1.as_ref().map(nested),
        c: primary.2.as_ref().map(nested),
        cross_check_max_abs_diff: diff,
        region,
    };
    let mut out = output(cfg.out.as_deref())?;
    serde_json::to_writer(&mut out, &report).map_err(io_err)?;
    writeln!(out).map_err(io_err)?;
    out.flush().map_err(io_err)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// region
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct Sidecar {
    kind: &'static str,
    r: Option<f64>,
    r1: Option<f64>,
    r2: Option<f64>,
    delta: Option<f64>,
    resolution: usize,
    component_count: usize,
}

pub fn parse_bbox(s: &str) -> Result<BBox> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::invalid(format!("bad clip box {s:?}"))))
        .collect::<Result<_>>()?;
    if v.len() != 4 || !(v[0] < v[1] && v[2] < v[3]) || v.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid(format!("clip box {s:?} must be xmin,xmax,ymin,ymax with xmin<xmax, ymin<ymax")));
    }
    Ok(BBox::new(v[0], v[1], v[2], v[3]))
}

pub fn cmd_region(args: &RegionArgs) -> Result<i32> {
    let cfg = &args.config;
    let f = cfg.function()?;
    let points = cfg.point_set()?;
    let split = cfg.split(&points)?;
    let clip = args.clip.as_deref().map(parse_bbox).transpose()?;
    let region = match (args.radius, cfg.mode) {
        (Some(r), ModeArg::Taylor) if r > 0.0 => RegionSpec::lemniscate_with_radius(&points, r),
        (Some(_), ModeArg::Taylor) => return Err(Error::invalid("--radius must be positive")),
        (Some(_), _) => return Err(Error::invalid("--radius only applies to taylor mode")),
        (None, _) => cfg.region(&f, &points, split)?,
    };
    let lines = boundary_sample(&region, args.resolution, clip)?;

    let mut out = output(cfg.out.as_deref())?;
    {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(["component_id", "x", "y"]).map_err(io_err)?;
        for (k, line) in lines.iter().enumerate() {
            for z in &line.points {
                w.write_record([k.to_string(), z.re.to_string(), z.im.to_string()]).map_err(io_err)?;
            }
        }
        w.flush().map_err(io_err)?;
    }
    out.flush().map_err(io_err)?;

    let json: RegionJson = (&region).into();
    let sidecar = Sidecar {
        kind: json.kind,
        r: json.r,
        r1: json.r1,
        r2: json.r2,
        delta: json.delta,
        resolution: args.resolution,
        component_count: lines.len(),
    };
    let text = serde_json::to_string_pretty(&sidecar).map_err(io_err)?;
    let path = args.sidecar.clone().or_else(|| cfg.out.as_ref().map(|p| p.with_extension("json")));
    match path {
        Some(p) => {
            std::fs::write(&p, text + "\n").map_err(|e| Error::invalid(format!("cannot write {}: {e}", p.display())))?
        }
        None => eprintln!("{text}"),
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// converge
// ---------------------------------------------------------------------------

pub fn cmd_converge(args: &ConvergeArgs) -> Result<i32> {
    let cfg = &args.config;
    let f = cfg.function()?;
    let points = cfg.point_set()?;
    let split = cfg.split(&points)?;
    if args.blocks == 0 {
        return Err(Error::invalid("--N must be at least 1"));
    }
    let probes: Vec<C64> = args.probes.iter().map(|s| parse_complex(s)).collect::<Result<_>>()?;
    let region = cfg.region(&f, &points, split)?;
    let quad = cfg.quadrature()?;

    let jobs: Vec<(C64, usize)> = probes.iter().flat_map(|&z| (1..=args.blocks).map(move |n| (z, n))).collect();
    let rows: Vec<(C64, usize, f64, f64)> = jobs
        .par_iter()
        .map(|&(z, n)| -> Result<_> {
            let r = match cfg.mode {
                ModeArg::Taylor => {
                    let contour = enclosing_circle(&points, &f, &[z])?;
                    remainder_exact(&f, &points, n, z, &contour, &quad)?
                }
                ModeArg::Laurent | ModeArg::TaylorLaurent => laurent_remainder(&f, &points, split, n, z, region.delta)?,
            };
            let ratio = if points.index_of(z).is_some() { 0.0 } else { region.predicted_ratio(z) };
            Ok((z, n, r.norm(), ratio))
        })
        .collect::<Result<_>>()?;

    let mut out = output(cfg.out.as_deref())?;
    {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(["z_re", "z_im", "N", "abs_r_N", "predicted_ratio"]).map_err(io_err)?;
        for (z, n, r, ratio) in rows {
            w.write_record([z.re.to_string(), z.im.to_string(), n.to_string(), format!("{r:e}"), ratio.to_string()])
                .map_err(io_err)?;
        }
        w.flush().map_err(io_err)?;
    }
    out.flush().map_err(io_err)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

/// Functions and point sets of the built-in battery.
pub const VERIFY_FUNCTIONS: [&str; 3] = ["1/(3-z)", "1/((z-1)*(z+1)^2)", "(z^2+1)/(z-2)"];
pub const VERIFY_POINTS: [&str; 3] = ["1,-1", "0:2,1:1", "1,-1,i"];

/// Outcome of one verification case.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyCase {
    pub function: String,
    pub points: String,
    /// Largest cauchy/derivative/residue disagreement, scaled by `max(1, |a|)`.
    pub coeff_error: f64,
    /// Largest partial-sum vs Hermite-interpolant disagreement; `None` when
    /// `f` is singular at a focus.
    pub hermite_error: Option<f64>,
    pub residue_checked: bool,
}

impl VerifyCase {
    pub fn passed(&self) -> bool {
        self.coeff_error <= 1e-10 && self.hermite_error.is_none_or(|e| e <= 1e-9)
    }
}

fn scaled(x: C64, y: C64) -> f64 {
    (x - y).norm() / y.norm().max(1.0)
}

/// Three-way coefficient check for `n < blocks`, plus the Hermite check for
/// partial sums of one to three blocks.
pub fn verify_case(f_text: &str, points_text: &str, blocks: usize) -> Result<VerifyCase> {
    let f = parse_function(f_text)?;
    let points: PointSet = points_text.parse()?;
    let cauchy = expand_taylor_with(&f, &points, blocks, Method::Cauchy, &ExpansionOptions::default())?;
    let deriv = expand_taylor_with(&f, &points, blocks, Method::Derivative, &ExpansionOptions::default())?;
    let rational = f.rational().is_some();
    let mut coeff_error: f64 = 0.0;
    for (n, j, l) in cauchy.a().indices() {
        let d = deriv.a().get(n, j, l);
        coeff_error = coeff_error.max(scaled(cauchy.a().get(n, j, l), d));
        if rational {
            let r = residue_coeffs_rational(&f, &points, n, j, l)?;
            coeff_error = coeff_error.max(scaled(cauchy.a().get(n, j, l), r)).max(scaled(d, r));
        }
    }
    let c = points.centroid();
    let spread = points.foci().iter().map(|p| (p.0 - c).norm()).fold(0.5, f64::max);
    let regular = points.foci().iter().all(|p| f.singularities().iter().all(|s| (s.location - p.0).norm() > 1e-9));
    let hermite_error = if regular {
        let mut err: f64 = 0.0;
        for n in 1..=blocks.min(3) {
            let h = hermite_interpolate(&f, &points, n)?;
            for k in 0..16 {
                let z = c + C64::from_polar(spread * (0.3 + 0.05 * k as f64), 0.4 + 0.9 * k as f64);
                err = err.max(scaled(deriv.eval_partial(z, n), h.eval(z)));
            }
        }
        Some(err)
    } else {
        None
    };
    Ok(VerifyCase {
        function: f_text.to_string(),
        points: points_text.to_string(),
        coeff_error,
        hermite_error,
        residue_checked: rational,
    })
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    if args.blocks == 0 {
        return Err(Error::invalid("--N must be at least 1"));
    }
    let cases: Vec<(String, String)> = match (&args.function, &args.points) {
        (Some(f), Some(p)) => vec![(f.clone(), p.clone())],
        _ => VERIFY_FUNCTIONS
            .iter()
            .flat_map(|f| VERIFY_POINTS.iter().map(move |p| (f.to_string(), p.to_string())))
            .collect(),
    };
    let mut failures = 0;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for (f, p) in &cases {
        let case = verify_case(f, p, args.blocks)?;
        let tag = if case.passed() { "PASS" } else { "FAIL" };
        if !case.passed() {
            failures += 1;
        }
        writeln!(
            out,
            "{tag}  f={f}  S={{{p}}}  coeff_err={:.2e}{}  hermite_err={}",
            case.coeff_error,
            if case.residue_checked { "" } else { " (no residue oracle)" },
            case.hermite_error.map_or("n/a (singular focus)".to_string(), |e| format!("{e:.2e}"))
        )
        .map_err(io_err)?;
    }
    writeln!(out, "{} of {} cases passed", cases.len() - failures, cases.len()).map_err(io_err)?;
    Ok(if failures == 0 { 0 } else { 1 })
}
