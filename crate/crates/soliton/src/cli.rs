//! Command-line front end: `surface`, `verify`, `curvature`, `gauge`, `euler`.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use soliton_core::cpn::EulerQuadrature;
use soliton_core::gauges::{
    action_on_phi, compat_gauge_residual, compat_st_residual, linearization_residual, mapping_inverse, mapping_m,
    prop1_residual, prop2_residual, GaugeKind,
};
use soliton_core::field::Diff;
use soliton_core::immersion::{Family, Options, Surface};
use soliton_core::spectral::Normalization;
use soliton_core::{CMat, FieldSampler, Point, C64};

use crate::error::{config, AppError, AppResult};
use crate::export::{csv_bytes, export, to_json, write_output, Format};
use crate::grid::GridSpec;
use crate::mesh::sample_surface;
use crate::model::{parse_coeffs, parse_complex, Model, SurfaceSpec};
use crate::parallel::ordered_map;
use crate::report::{run_verification_suite, SuiteConfig};
use crate::sweep::{curvature_sweep, Stats};

#[derive(Parser, Debug)]
#[command(name = "soliton", version, about = "Soliton surfaces of the CP^(N-1) sigma model")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Sample an immersion on a grid and write a mesh.
    Surface(SurfaceCmd),
    /// Run the residual battery and write a JSON report.
    Verify(VerifyCmd),
    /// Gaussian and mean curvature over a grid.
    Curvature(CurvatureCmd),
    /// Gauges, mapping matrix and proposition residuals at points.
    Gauge(GaugeCmd),
    /// Euler characteristic of a chain member by disk quadrature.
    Euler(EulerCmd),
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// cp1 or cpn
    #[arg(long, default_value = "cp1")]
    pub model: String,
    /// N for the cpn model
    #[arg(long)]
    pub dim: Option<usize>,
    /// Seed components for cpn, e.g. "1;0,1;0,0,1" (ascending powers, complex as a+bi)
    #[arg(long)]
    pub coeffs: Option<String>,
}

impl ModelArgs {
    fn model(&self) -> AppResult<Model> {
        match self.model.to_ascii_lowercase().as_str() {
            "cp1" => {
                if self.dim.is_some_and(|n| n != 2) || self.coeffs.is_some() {
                    return Err(config("cp1 takes no --dim or --coeffs; use --model cpn"));
                }
                Ok(Model::Cp1)
            }
            "cpn" => {
                let n = self.dim.ok_or_else(|| config("cpn needs --dim N"))?;
                if n < 2 {
                    return Err(config("--dim must be at least 2"));
                }
                let coeffs = self.coeffs.as_deref().map(parse_coeffs).transpose()?;
                if let Some(c) = &coeffs {
                    if c.len() != n {
                        return Err(config(format!("--coeffs has {} components, --dim is {n}", c.len())));
                    }
                }
                Ok(Model::Cpn { n, coeffs })
            }
            other => Err(config(format!("unknown model '{other}'"))),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    #[arg(long, default_value_t = -5.0, allow_negative_numbers = true)]
    pub x_min: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    pub x_max: f64,
    #[arg(long, default_value_t = -5.0, allow_negative_numbers = true)]
    pub y_min: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    pub y_max: f64,
    #[arg(long, default_value_t = 201)]
    pub nx: usize,
    #[arg(long, default_value_t = 201)]
    pub ny: usize,
    /// Skip grid points with |z| below this radius
    #[arg(long, default_value_t = 0.0)]
    pub exclusion: f64,
}

impl GridArgs {
    fn grid(&self) -> AppResult<GridSpec> {
        let g = GridSpec {
            x_min: self.x_min,
            x_max: self.x_max,
            y_min: self.y_min,
            y_max: self.y_max,
            nx: self.nx,
            ny: self.ny,
            exclusion: self.exclusion,
        };
        g.validate()?;
        Ok(g)
    }
}

#[derive(Args, Debug, Clone)]
pub struct SurfaceArgs {
    /// st, cd, g, c, fg or gwfi
    #[arg(long, default_value = "st")]
    pub formula: String,
    /// Gauge used by --formula cd: st, g, c or fg
    #[arg(long, default_value = "fg")]
    pub gauge: String,
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    /// Spectral parameter λ = it
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub t: f64,
    #[arg(long, default_value = "1")]
    pub beta: String,
    /// Constant of the conformal family
    #[arg(long, default_value = "1+1i")]
    pub g: String,
    /// origin or closed
    #[arg(long, default_value = "origin")]
    pub normalization: String,
}

/// What to sample: a family and whether to use the prolonged-symmetry form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Formula {
    pub family: Family,
    pub direct: bool,
}

fn family_of_gauge(s: &str) -> AppResult<Family> {
    match s.to_ascii_lowercase().as_str() {
        "st" => Ok(Family::St),
        "g" => Ok(Family::Scaling),
        "c" => Ok(Family::Conformal),
        "fg" => Ok(Family::Fg),
        o => Err(config(format!("unknown gauge '{o}'"))),
    }
}

pub fn parse_formula(formula: &str, gauge: &str) -> AppResult<Formula> {
    let f = formula.to_ascii_lowercase();
    let family = match f.as_str() {
        "cd" => family_of_gauge(gauge)?,
        "st" | "g" | "c" | "fg" | "gwfi" => Family::parse(&f).expect("listed formula"),
        o => return Err(config(format!("unknown formula '{o}'"))),
    };
    Ok(Formula { family, direct: f == "fg" })
}

fn options(beta: &str, g: &str, normalization: &str) -> AppResult<Options> {
    let normalization = match normalization.to_ascii_lowercase().as_str() {
        "origin" => Normalization::Origin,
        "closed" => Normalization::Closed,
        o => return Err(config(format!("unknown normalization '{o}'"))),
    };
    Ok(Options { beta: parse_complex(beta)?, g: parse_complex(g)?, normalization })
}

fn finite_t(t: f64) -> AppResult<f64> {
    if t.is_finite() {
        Ok(t)
    } else {
        Err(config("--t must be finite"))
    }
}

impl SurfaceArgs {
    fn spec(&self, model: Model) -> AppResult<(SurfaceSpec, Formula, f64)> {
        let formula = parse_formula(&self.formula, &self.gauge)?;
        let spec = SurfaceSpec { model, k: self.k, family: formula.family, options: options(&self.beta, &self.g, &self.normalization)? };
        spec.validate()?;
        Ok((spec, formula, finite_t(self.t)?))
    }
}

fn build(spec: &SurfaceSpec, formula: Formula) -> AppResult<Surface> {
    let mut s = spec.build()?;
    if formula.direct {
        s.f = s.f_direct.clone();
    }
    Ok(s)
}

fn format_of(s: &Option<String>, default: Format, allowed: &[Format]) -> AppResult<Format> {
    let f = match s {
        None => default,
        Some(v) => Format::parse(v).ok_or_else(|| config(format!("unknown format '{v}'")))?,
    };
    if !allowed.contains(&f) {
        return Err(config(format!("format '{}' not supported here", f.extension())));
    }
    Ok(f)
}

#[derive(Args, Debug)]
pub struct SurfaceCmd {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// obj, csv or json
    #[arg(long)]
    pub format: Option<String>,
    /// Output path, `-` for standard output
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyCmd {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random sample points
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    /// Comma-separated t values
    #[arg(long, default_value = "0.5,1,2")]
    pub t_values: String,
    #[arg(long, default_value_t = 50.0)]
    pub radius: f64,
    /// Quadrature intervals for the Euler characteristic
    #[arg(long, default_value_t = 500)]
    pub euler_n: usize,
    #[arg(long, default_value = "1")]
    pub beta: String,
    #[arg(long, default_value = "1+1i")]
    pub g: String,
    #[arg(long, default_value = "origin")]
    pub normalization: String,
    /// json only
    #[arg(long)]
    pub format: Option<String>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CurvatureCmd {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// csv or json
    #[arg(long)]
    pub format: Option<String>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GaugeCmd {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub t: f64,
    /// Points z = x+yi; repeatable
    #[arg(long, default_values_t = vec!["1+1i".to_string()], allow_negative_numbers = true)]
    pub at: Vec<String>,
    #[arg(long, default_value = "1")]
    pub beta: String,
    #[arg(long, default_value = "1+1i")]
    pub g: String,
    #[arg(long, default_value = "origin")]
    pub normalization: String,
    #[arg(long)]
    pub format: Option<String>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EulerCmd {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    #[arg(long, default_value_t = 50.0)]
    pub radius: f64,
    /// Quadrature intervals
    #[arg(long, default_value_t = 2000)]
    pub n: usize,
    #[arg(long)]
    pub format: Option<String>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Euler characteristic with quadrature rows evaluated in parallel and summed in order.
pub fn euler_parallel(p: &FieldSampler, radius: f64, n: usize) -> soliton_core::Result<f64> {
    let q = EulerQuadrature::new(radius, n)?;
    let rows = ordered_map(q.rows(), |i| q.row(p, i));
    rows.into_iter().try_fold(0.0, |acc, r| Ok(acc + r?))
}

#[derive(Serialize)]
struct EulerOut {
    k: usize,
    radius: f64,
    n: usize,
    chi: f64,
    /// `|χ(n) − χ(n/2)|`
    quadrature_delta: f64,
    /// `(χ(R) − χ(R/2))/3`, the missing mass for a `1/R²` tail.
    tail: f64,
    error_bound: f64,
}

#[derive(Serialize)]
struct MatOut {
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

fn mat(m: &CMat) -> MatOut {
    let n = m.dim();
    MatOut {
        re: (0..n).map(|i| (0..n).map(|j| m[(i, j)].re).collect()).collect(),
        im: (0..n).map(|i| (0..n).map(|j| m[(i, j)].im).collect()).collect(),
    }
}

#[derive(Serialize)]
struct GaugePoint {
    x: f64,
    y: f64,
    t: f64,
    k: usize,
    gauges: std::collections::BTreeMap<String, MatOut>,
    m: Option<MatOut>,
    m_inverse: Option<MatOut>,
    mapping_error: Option<String>,
    residuals: std::collections::BTreeMap<String, f64>,
}

fn default_path(o: &Option<PathBuf>, stem: String, f: Format) -> PathBuf {
    o.clone().unwrap_or_else(|| PathBuf::from(format!("{stem}.{}", f.extension())))
}

fn cmd_surface(c: &SurfaceCmd) -> AppResult<i32> {
    let model = c.model.model()?;
    let (spec, formula, t) = c.surface.spec(model)?;
    let grid = c.grid.grid()?;
    let format = format_of(&c.format, Format::Obj, &[Format::Obj, Format::Csv, Format::Json])?;
    if spec.model.n() != 2 {
        return Err(config("surface meshes need N = 2"));
    }
    let path = default_path(&c.output, format!("surface_{}_k{}", c.surface.formula, spec.k), format);
    let s = build(&spec, formula)?;
    let mesh = sample_surface(&s, &grid, t)?;
    for e in &mesh.excluded {
        eprintln!("excluded ({}, {}): {}", e.x, e.y, e.reason);
    }
    write_output(&path, &export(&mesh, format)?)?;
    Ok(0)
}

fn parse_ts(s: &str) -> AppResult<Vec<f64>> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| config(format!("bad t value '{x}'"))))
        .collect::<AppResult<_>>()?;
    if v.is_empty() || v.iter().any(|t| !t.is_finite()) {
        return Err(config("--t-values needs finite numbers"));
    }
    Ok(v)
}

fn cmd_verify(c: &VerifyCmd) -> AppResult<i32> {
    let model = c.model.model()?;
    let grid = c.grid.grid()?;
    format_of(&c.format, Format::Json, &[Format::Json])?;
    if !(c.tol > 0.0) || !c.tol.is_finite() {
        return Err(config("--tol must be positive"));
    }
    if c.points == 0 {
        return Err(config("--points must be positive"));
    }
    if !(c.radius > 0.0) || c.euler_n < 2 {
        return Err(config("--radius must be positive and --euler-n at least 2"));
    }
    let cfg = SuiteConfig {
        ks: (0..model.n()).collect(),
        model,
        t_values: parse_ts(&c.t_values)?,
        grid,
        seed: c.seed,
        points: c.points,
        tol: c.tol,
        euler_radius: c.radius,
        euler_n: c.euler_n,
        options: options(&c.beta, &c.g, &c.normalization)?,
        ..SuiteConfig::default()
    };
    let path = default_path(&c.output, "report".into(), Format::Json);
    let report = run_verification_suite(&cfg)?;
    for ch in report.checks.iter().filter(|c| c.gating && !c.pass) {
        eprintln!("FAIL {}: max {:e} >= tol {:e}", ch.name, ch.max_residual, ch.tolerance);
    }
    eprintln!(
        "{} checks, {} gating failures, {} informative failures",
        report.checks.len(),
        report.gating_failures,
        report.informative_failures
    );
    write_output(&path, &to_json(&report)?)?;
    Ok(if report.all_gating_pass() { 0 } else { 1 })
}

fn stats_line(name: &str, s: &Stats) -> String {
    format!("{name} mean={:e} std={:e} min={:e} max={:e}", s.mean, s.std, s.min, s.max)
}

fn cmd_curvature(c: &CurvatureCmd) -> AppResult<i32> {
    let model = c.model.model()?;
    let (spec, formula, t) = c.surface.spec(model)?;
    let grid = c.grid.grid()?;
    let format = format_of(&c.format, Format::Csv, &[Format::Csv, Format::Json])?;
    let path = default_path(&c.output, format!("curvature_{}_k{}", c.surface.formula, spec.k), format);
    let s = build(&spec, formula)?;
    let field = curvature_sweep(&s, &grid, t);
    let (ks, hs) = (field.gaussian_stats(), field.mean_stats());
    eprintln!("{}; {}; points={} skipped={}", stats_line("K", &ks), stats_line("H", &hs), ks.count, field.skipped.len());
    let bytes = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                field: &'a crate::sweep::CurvatureField,
                gaussian: Stats,
                mean: Stats,
            }
            to_json(&Out { field: &field, gaussian: ks, mean: hs })?
        }
        _ => {
            let num = |v: f64| format!("{v:.16e}");
            let rows = field.samples.iter().map(|r| vec![num(r.x), num(r.y), num(r.gaussian), num(r.mean)]);
            csv_bytes(&["x", "y", "K", "H"], rows)?
        }
    };
    write_output(&path, &bytes)?;
    Ok(0)
}

fn cmd_gauge(c: &GaugeCmd) -> AppResult<i32> {
    let model = c.model.model()?;
    let o = options(&c.beta, &c.g, &c.normalization)?;
    format_of(&c.format, Format::Json, &[Format::Json])?;
    let t = finite_t(c.t)?;
    let pts: Vec<C64> = c.at.iter().map(|s| parse_complex(s)).collect::<AppResult<_>>()?;
    let spec = |f| SurfaceSpec { model: model.clone(), k: c.k, family: f, options: o };
    spec(Family::St).validate()?;
    let path = default_path(&c.output, "gauge".into(), Format::Json);
    let fams = [Family::St, Family::Scaling, Family::Conformal, Family::Fg];
    let surfaces: Vec<Surface> = fams.iter().map(|&f| spec(f).build()).collect::<AppResult<_>>()?;
    let mut out = Vec::new();
    for z in pts {
        let p = Point::new(z.re, z.im, t);
        let mut gauges = std::collections::BTreeMap::new();
        let mut residuals = std::collections::BTreeMap::new();
        for s in &surfaces {
            let g = s.gauge.as_ref().expect("gauge family");
            let name = s.family.name();
            gauges.insert(format!("S_{name}"), mat(&g.s.eval(p)));
            let action = action_on_phi(g.kind, &s.phi, o.beta, o.g);
            residuals.insert(format!("linearization_{name}"), linearization_residual(&s.phi, g, &action, p));
            if g.kind == GaugeKind::St {
                residuals.insert("prop1_st".into(), prop1_residual(g, &s.u, o.beta, p, Diff::Exact)?);
                residuals.insert("compat_st".into(), compat_st_residual(g, &s.u, o.beta, p, Diff::Exact)?);
            } else {
                residuals.insert(format!("prop2_{name}"), prop2_residual(g, &s.u, (&s.a[0], &s.a[1]), p, Diff::Exact)?);
                residuals.insert(format!("compat_{name}"), compat_gauge_residual(g, &s.u, p, Diff::Exact)?);
            }
        }
        let (st, fg) = (&surfaces[0], &surfaces[3]);
        let (s1, s2) = (st.gauge.as_ref().expect("gauge"), fg.gauge.as_ref().expect("gauge"));
        let action = action_on_phi(GaugeKind::St, &st.phi, o.beta, o.g);
        let (m, m_inverse, mapping_error) = match mapping_m(s1, s2, &st.phi, &action, p) {
            Ok(m) => {
                residuals.insert("mapping_gauge".into(), m.gauge_residual);
                residuals.insert("mapping_phi".into(), m.phi_residual);
                (Some(mat(&m.m)), mapping_inverse(s1, s2, p).ok().map(|m| mat(&m)), None)
            }
            Err(e) => (None, None, Some(e.to_string())),
        };
        out.push(GaugePoint { x: p.x, y: p.y, t, k: c.k, gauges, m, m_inverse, mapping_error, residuals });
    }
    write_output(&path, &to_json(&out)?)?;
    Ok(0)
}

fn cmd_euler(c: &EulerCmd) -> AppResult<i32> {
    let model = c.model.model()?;
    format_of(&c.format, Format::Json, &[Format::Json])?;
    if c.k >= model.n() {
        return Err(config(format!("k = {} out of range for N = {}", c.k, model.n())));
    }
    if !(c.radius > 0.0) || !c.radius.is_finite() || c.n < 4 {
        return Err(config("--radius must be positive and --n at least 4"));
    }
    let path = default_path(&c.output, "euler".into(), Format::Json);
    let chain = model.chain()?;
    let p = chain.member(c.k)?;
    let chi = euler_parallel(p, c.radius, c.n)?;
    let coarse = euler_parallel(p, c.radius, c.n / 2)?;
    let half = euler_parallel(p, c.radius / 2.0, c.n / 2)?;
    let (quadrature_delta, tail) = ((chi - coarse).abs(), (chi - half) / 3.0);
    let out = EulerOut { k: c.k, radius: c.radius, n: c.n, chi, quadrature_delta, tail, error_bound: quadrature_delta + tail.abs() };
    eprintln!("chi = {chi} ± {:e}", out.error_bound);
    write_output(&path, &to_json(&out)?)?;
    Ok(0)
}

pub fn dispatch(cli: &Cli) -> AppResult<i32> {
    match &cli.cmd {
        Cmd::Surface(c) => cmd_surface(c),
        Cmd::Verify(c) => cmd_verify(c),
        Cmd::Curvature(c) => cmd_curvature(c),
        Cmd::Gauge(c) => cmd_gauge(c),
        Cmd::Euler(c) => cmd_euler(c),
    }
}

/// Parses `args` and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let msg = e.render().to_string();
            eprintln!("{}", msg.lines().next().unwrap_or("invalid arguments"));
            return 2;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

impl From<AppError> for i32 {
    fn from(e: AppError) -> i32 {
        e.exit_code()
    }
}
