//! Command-line surface. [`run`] parses arguments and returns the exit code
//! together with everything destined for stdout and stderr; files named by
//! `--out` are written directly.
//!
//! Exit codes: 0 success, 1 verification or numerical failure, 2 usage or
//! parameter-region error.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::{solution_csv, to_json, write_file};
use crate::linalg::{binomial, real, CMatrix};
use crate::radial::{
    verify_asymptotics, AsymptoticsReport, RadialGrid, SolverConfig, Template,
};
use crate::render::{render_coxeter, render_polytope, spec_for};
use crate::representation::{ext_power_group, satake_check, soliton_graph, SatakeReport};
use crate::roots::{coxeter_diagram, mass, mass_operator_spectrum, roots_on_ray};
use crate::stokes::{
    build_w, ordered_stokes_product, steinberg_monodromy, stokes_factors, stokes_from_m, w_commutator,
    StokesVector, TodaParams,
};

#[derive(Debug, Parser)]
#[command(name = "ttstar", version, about = "Coxeter-plane geometry, Stokes data and radial solutions of the tt*-Toda equations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root projections on a Coxeter plane.
    Coxeter(CoxeterArgs),
    /// Soliton polytope of an exterior power.
    Polytope(PolytopeArgs),
    /// Closed-form Stokes data from asymptotic data m.
    Stokes(StokesArgs),
    /// Numerical radial solution with a fit of the Stokes data.
    Solve(SolveArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Svg,
}

#[derive(Debug, clap::Args)]
pub struct CoxeterArgs {
    #[arg(long)]
    pub n: usize,
    /// Spin order r of the Coxeter plane.
    #[arg(long, default_value_t = 1)]
    pub spin: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StokesPreset {
    /// s_i = C(n+1, i)
    Binomial,
}

#[derive(Debug, clap::Args)]
pub struct PolytopeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, conflicts_with = "stokes")]
    pub preset: Option<StokesPreset>,
    /// Real Stokes data s_1,…,s_n.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub stokes: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MPreset {
    /// m = (-n/2, …, n/2)
    Cpn,
}

#[derive(Debug, clap::Args)]
pub struct StokesArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "preset")]
    pub m: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    pub preset: Option<MPreset>,
    /// N = n + 1 + Σk; defaults to n + 1.
    #[arg(long)]
    pub big_n: Option<f64>,
    /// Also print every Stokes factor and their ordered product.
    #[arg(long)]
    pub factors: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TemplateArg {
    F,
    Bessel,
}

impl From<TemplateArg> for Template {
    fn from(t: TemplateArg) -> Self {
        match t {
            TemplateArg::F => Template::F,
            TemplateArg::Bessel => Template::Bessel,
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub m: Vec<f64>,
    #[arg(long, default_value_t = 1e-3)]
    pub xmin: f64,
    #[arg(long, default_value_t = 8.0)]
    pub xmax: f64,
    #[arg(long, default_value_t = 2000)]
    pub nodes: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Fit window x_a,x_b.
    #[arg(long, value_delimiter = ',', num_args = 1, default_value = "1.5,3.5")]
    pub window: Vec<f64>,
    #[arg(long, value_enum, default_value_t = TemplateArg::Bessel)]
    pub template: TemplateArg,
    /// CSV file for the solution (x, w_0..w_n); the fit report goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Satake,
    Asymptotics,
    Algebra,
    All,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::NoConvergence { .. } | Error::Consistency(_) => 1,
        _ => 2,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn emit(text: String, out: Option<&PathBuf>) -> Result<Outcome> {
    match out {
        Some(path) => {
            write_file(path, &text)?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Coxeter(a) => emit(cmd_coxeter(a.n, a.spin, a.format)?, a.out.as_ref()),
        Command::Polytope(a) => {
            let stokes = match a.stokes {
                Some(s) => StokesVector::from_real(a.n, &s)?,
                None => StokesVector::binomial(a.n),
            };
            emit(cmd_polytope(a.n, a.k, &stokes, a.format)?, a.out.as_ref())
        }
        Command::Stokes(a) => {
            let params = match (a.m, a.preset) {
                (Some(m), _) => TodaParams::from_m(a.n, &m, a.big_n)?,
                (None, Some(MPreset::Cpn)) => {
                    let m = TodaParams::cpn(a.n)?.m;
                    TodaParams::from_m(a.n, &m, a.big_n)?
                }
                (None, None) => return Err(Error::InvalidInput("one of --m or --preset is required".into())),
            };
            emit(cmd_stokes(&params, a.factors)?, a.out.as_ref())
        }
        Command::Solve(a) => {
            if a.window.len() != 2 {
                return Err(Error::InvalidInput(format!(
                    "--window takes two values x_a,x_b, got {}",
                    a.window.len()
                )));
            }
            let params = TodaParams::from_m(a.n, &a.m, None)?;
            let config = SolverConfig {
                grid: RadialGrid::from_x(a.xmin, a.xmax, a.nodes)?,
                tol: a.tol,
                window: (a.window[0], a.window[1]),
                template: a.template.into(),
                ..SolverConfig::default()
            };
            let (json, csv) = cmd_solve(&params, &config)?;
            if let Some(path) = &a.out {
                write_file(path, &csv)?;
            }
            Ok(Outcome::ok(json))
        }
        Command::Verify(a) => {
            let report = cmd_verify(a.suite)?;
            let code = if report.passed { 0 } else { 1 };
            let mut outcome = emit(to_json(&report)?, a.out.as_ref())?;
            outcome.code = code;
            Ok(outcome)
        }
    }
}

pub fn cmd_coxeter(n: usize, r: usize, format: Format) -> Result<String> {
    let diagram = coxeter_diagram(n, r)?;
    match format {
        Format::Json => to_json(&diagram),
        Format::Svg => render_coxeter(&diagram, &spec_for(&diagram)),
    }
}

pub fn cmd_polytope(n: usize, k: usize, stokes: &StokesVector, format: Format) -> Result<String> {
    let graph = soliton_graph(n, k, stokes)?;
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Polytope<'a> {
                graph: &'a crate::representation::SolitonGraph,
                diagram: crate::roots::CoxeterDiagram,
            }
            to_json(&Polytope {
                diagram: graph.diagram(),
                graph: &graph,
            })
        }
        Format::Svg => render_polytope(&graph, &spec_for(&graph.diagram())),
    }
}

fn matrix_rows(m: &CMatrix) -> Vec<Vec<Complex64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

#[derive(Debug, Serialize)]
struct FactorOutput {
    angle: f64,
    roots: Vec<String>,
    matrix: Vec<Vec<Complex64>>,
}

#[derive(Debug, Serialize)]
struct StokesOutput {
    m: Vec<f64>,
    k: Vec<f64>,
    #[serde(rename = "N")]
    big_n: f64,
    s: Vec<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    factors: Option<Vec<FactorOutput>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ordered_product: Option<Vec<Vec<Complex64>>>,
}

pub fn cmd_stokes(params: &TodaParams, with_factors: bool) -> Result<String> {
    let s = stokes_from_m(params)?;
    let n = params.n;
    let (factors, ordered_product) = if with_factors {
        let factors = stokes_factors(n, &s)?
            .into_iter()
            .map(|(angle, q)| {
                Ok(FactorOutput {
                    angle,
                    roots: roots_on_ray(n, angle)?.into_iter().map(|r| r.label()).collect(),
                    matrix: matrix_rows(&q),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        (Some(factors), Some(matrix_rows(&ordered_stokes_product(n, &s)?)))
    } else {
        (None, None)
    };
    to_json(&StokesOutput {
        m: params.m.clone(),
        k: params.k.clone(),
        big_n: params.big_n,
        s: s.values().to_vec(),
        factors,
        ordered_product,
    })
}

#[derive(Debug, Serialize)]
struct SolveOutput {
    boundary_flux: Vec<f64>,
    continuation: Vec<f64>,
    grid: RadialGrid,
    nodes: usize,
    report: AsymptoticsReport,
}

/// Returns the JSON fit report and the CSV solution.
pub fn cmd_solve(params: &TodaParams, config: &SolverConfig) -> Result<(String, String)> {
    let (solution, report) = verify_asymptotics(params, config)?;
    let json = to_json(&SolveOutput {
        boundary_flux: solution.boundary_flux(),
        continuation: solution.continuation.clone(),
        grid: solution.grid,
        nodes: solution.grid.count,
        report,
    })?;
    Ok((json, solution_csv(&solution)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

fn check<T: Serialize>(name: impl Into<String>, passed: bool, detail: &T) -> Result<CheckResult> {
    Ok(CheckResult {
        name: name.into(),
        passed,
        detail: serde_json::to_value(detail).map_err(|e| Error::InvalidInput(format!("JSON encoding: {e}")))?,
    })
}

pub fn satake_suite() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for n in 1..=6 {
        for k in 1..=n {
            let report: SatakeReport = satake_check(n, k, &StokesVector::binomial(n))?;
            out.push(check(format!("satake/n{n}_k{k}"), report.passed, &report)?);
        }
    }
    Ok(out)
}

/// The radial cases: m = 0, the CP¹ point, and generic n = 2, 3 data.
pub fn asymptotic_cases() -> Vec<(&'static str, usize, Vec<f64>)> {
    vec![
        ("asymptotics/cp1", 1, vec![-0.5, 0.5]),
        ("asymptotics/n2_generic", 2, vec![-0.5, 0.0, 0.5]),
        ("asymptotics/n3_generic", 3, vec![-0.9, -0.3, 0.3, 0.9]),
        ("asymptotics/trivial", 3, vec![0.0; 4]),
    ]
}

pub fn asymptotics_suite() -> Result<Vec<CheckResult>> {
    asymptotic_cases()
        .into_iter()
        .map(|(name, n, m)| {
            let params = TodaParams::from_m(n, &m, None)?;
            let (_, report) = verify_asymptotics(&params, &SolverConfig::default())?;
            check(name, report.passed, &report)
        })
        .collect()
}

#[derive(Serialize)]
struct ErrorDetail {
    max_error: f64,
    tolerance: f64,
}

pub fn algebra_suite() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();

    let mut worst: f64 = 0.0;
    for n in 1..=8 {
        let s = stokes_from_m(&TodaParams::cpn(n)?)?;
        for k in 1..=n {
            worst = worst.max((s.get(k) - real(binomial(n + 1, k) as f64)).norm());
        }
    }
    out.push(check("algebra/binomial_stokes", worst < 1e-10, &ErrorDetail { max_error: worst, tolerance: 1e-10 })?);

    // fixed symmetric complex data, no randomness
    let mut worst: f64 = 0.0;
    for n in 1..=6 {
        for seed in 0..5 {
            let s: Vec<Complex64> = (1..=n)
                .map(|k| {
                    let j = k.min(n + 1 - k) as f64 + seed as f64;
                    Complex64::new((1.7 * j).cos() * 3.0, (0.3 * j).sin())
                })
                .collect();
            let s = StokesVector::new(n, s)?;
            let m = steinberg_monodromy(&s);
            worst = worst.max((m.determinant() - real(1.0)).norm());
            for k in 1..=n {
                worst = worst.max((ext_power_group(m.matrix(), k)?.trace() - s.get(k)).norm());
            }
        }
    }
    out.push(check("algebra/cross_section", worst < 1e-8, &ErrorDetail { max_error: worst, tolerance: 1e-8 })?);

    let mut worst: f64 = 0.0;
    for n in 1..=8 {
        let spectrum = mass_operator_spectrum(n)?;
        let mut want: Vec<f64> = (1..=n).map(|k| mass(n, k).powi(2)).collect();
        want.sort_by(f64::total_cmp);
        for (a, b) in spectrum.iter().zip(&want) {
            worst = worst.max((a - b).abs());
        }
        if spectrum.len() != want.len() {
            worst = f64::INFINITY;
        }
    }
    out.push(check("algebra/mass_spectrum", worst < 1e-10, &ErrorDetail { max_error: worst, tolerance: 1e-10 })?);

    let mut worst: f64 = 0.0;
    for n in 1..=6 {
        for sample in 0..10 {
            let half: Vec<f64> = (0..=n).map(|i| (1.3 * i as f64 + 0.7 * sample as f64).sin() * 1.5).collect();
            let w: Vec<f64> = (0..=n).map(|i| 0.5 * (half[i] - half[n - i])).collect();
            let c = w_commutator(&build_w(n, &w)?);
            let r = crate::radial::toda_rhs(&w);
            for i in 0..=n {
                worst = worst.max((c[(i, i)] - r[i]).abs() / r[i].abs().max(1.0));
            }
        }
    }
    out.push(check("algebra/off_shell_identity", worst < 1e-12, &ErrorDetail { max_error: worst, tolerance: 1e-12 })?);

    let graph = soliton_graph(5, 3, &StokesVector::binomial(5))?;
    let diagram = graph.diagram();
    let edge = graph.edge_between(&[0, 2, 5], &[2, 4, 5]);
    let gr36 = diagram.points.len() == 13
        && diagram.points[0].sources == ["024", "135"]
        && edge.is_some_and(|e| e.class == 2 && (e.mass - 3f64.sqrt()).abs() < 1e-12 && e.multiplicity == real(15.0))
        && graph.edge_between(&[0, 2, 4], &[1, 3, 5]).is_none()
        && graph.edge_between(&[0, 3, 4], &[2, 4, 5]).is_none();
    #[derive(Serialize)]
    struct Gr36 {
        positions: usize,
        origin: Vec<String>,
    }
    out.push(check(
        "algebra/grassmannian_3_6",
        gr36,
        &Gr36 {
            positions: diagram.points.len(),
            origin: diagram.points[0].sources.clone(),
        },
    )?);
    Ok(out)
}

pub fn cmd_verify(suite: Suite) -> Result<VerifyReport> {
    let mut checks = match suite {
        Suite::Satake => satake_suite()?,
        Suite::Asymptotics => asymptotics_suite()?,
        Suite::Algebra => algebra_suite()?,
        Suite::All => {
            let mut all = algebra_suite()?;
            all.extend(asymptotics_suite()?);
            all.extend(satake_suite()?);
            all
        }
    };
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let name = format!("{suite:?}").to_lowercase();
    Ok(VerifyReport {
        suite: name,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}
