//! Radial two-point boundary value problem in `u = ln x` and extraction of
//! Stokes data from the exponentially small tail.
//!
//! The reduced system is `w_uu = 2 e^{2u} R_i(w)` for the free components
//! `0..ceil(n/2)`, with `w_u(u_min) = -m` and `w(u_max) = 0`. Discretized
//! residuals are reported multiplied by `h^2`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots::mass;
use crate::special::{bessel_profile, soliton_profile};
use crate::stokes::{build_w, stokes_from_m, w_commutator, TodaParams};

/// Uniform grid in `u = ln x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialGrid {
    pub u_min: f64,
    pub u_max: f64,
    pub count: usize,
}

impl RadialGrid {
    pub const MIN_NODES: usize = 16;

    pub fn new(u_min: f64, u_max: f64, count: usize) -> Result<Self> {
        if !(u_min.is_finite() && u_max.is_finite() && u_min < u_max) {
            return Err(Error::InvalidInput(format!("grid needs u_min < u_max, got [{u_min}, {u_max}]")));
        }
        if count < Self::MIN_NODES {
            return Err(Error::InvalidInput(format!(
                "grid needs at least {} nodes, got {count}",
                Self::MIN_NODES
            )));
        }
        Ok(RadialGrid { u_min, u_max, count })
    }

    pub fn from_x(x_min: f64, x_max: f64, count: usize) -> Result<Self> {
        if !(x_min > 0.0) {
            return Err(Error::InvalidInput(format!("x_min must be positive, got {x_min}")));
        }
        RadialGrid::new(x_min.ln(), x_max.ln(), count)
    }

    pub fn step(&self) -> f64 {
        (self.u_max - self.u_min) / (self.count - 1) as f64
    }

    pub fn u(&self, j: usize) -> f64 {
        self.u_min + j as f64 * self.step()
    }

    pub fn x(&self, j: usize) -> f64 {
        self.u(j).exp()
    }

    pub fn x_min(&self) -> f64 {
        self.u_min.exp()
    }

    pub fn x_max(&self) -> f64 {
        self.u_max.exp()
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|j| self.x(j))
    }
}

impl Default for RadialGrid {
    fn default() -> Self {
        RadialGrid::from_x(1e-3, 8.0, 2000).expect("default grid is valid")
    }
}

/// Fit template for the one-soliton tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Template {
    /// `½ (πy)^{-1/2} e^{-2y}`
    F,
    /// `(1/π) K_0(2y)`
    #[default]
    Bessel,
}

impl Template {
    pub fn eval(self, y: f64) -> f64 {
        match self {
            Template::F => soliton_profile(y),
            Template::Bessel => bessel_profile(y),
        }
    }
}

impl std::str::FromStr for Template {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f" | "F" => Ok(Template::F),
            "bessel" => Ok(Template::Bessel),
            other => Err(Error::InvalidInput(format!("unknown template {other:?} (expected f or bessel)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverConfig {
    pub grid: RadialGrid,
    pub tol: f64,
    pub max_iterations: usize,
    pub window: (f64, f64),
    pub template: Template,
    /// Relative tolerance when comparing fitted and closed-form Stokes data.
    pub rel_tol: f64,
    /// Absolute tolerance used where the closed form vanishes.
    pub abs_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            grid: RadialGrid::default(),
            tol: 1e-10,
            max_iterations: 60,
            window: (1.5, 3.5),
            template: Template::Bessel,
            rel_tol: 0.10,
            abs_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    pub params: TodaParams,
    pub grid: RadialGrid,
    /// Node × component, all `n + 1` components.
    pub w: DMatrix<f64>,
    pub newton_iterations: usize,
    pub max_residual: f64,
    /// Fractions of `m` solved in sequence; a single `1.0` means no continuation.
    pub continuation: Vec<f64>,
}

impl RadialSolution {
    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn component(&self, i: usize) -> Vec<f64> {
        self.w.column(i).iter().copied().collect()
    }

    pub fn row(&self, j: usize) -> Vec<f64> {
        self.w.row(j).iter().copied().collect()
    }

    /// `x w_i'(x)` at `x_min` from a one-sided second-order difference.
    pub fn boundary_flux(&self) -> Vec<f64> {
        let h = self.grid.step();
        (0..=self.n())
            .map(|i| (-3.0 * self.w[(0, i)] + 4.0 * self.w[(1, i)] - self.w[(2, i)]) / (2.0 * h))
            .collect()
    }

    /// Largest `|x w_i' + m_i|` at `x_min`.
    pub fn boundary_flux_error(&self) -> f64 {
        self.boundary_flux()
            .iter()
            .zip(&self.params.m)
            .map(|(f, m)| (f + m).abs())
            .fold(0.0, f64::max)
    }
}

/// `R_i(w) = -e^{2(w_{i+1} - w_i)} + e^{2(w_i - w_{i-1})}`, indices mod `n + 1`.
pub fn toda_rhs(w: &[f64]) -> Vec<f64> {
    let len = w.len();
    (0..len)
        .map(|i| {
            let next = w[(i + 1) % len];
            let prev = w[(i + len - 1) % len];
            -(2.0 * (next - w[i])).exp() + (2.0 * (w[i] - prev)).exp()
        })
        .collect()
}

/// `∂R_i/∂w_j`.
fn toda_jacobian(w: &[f64]) -> DMatrix<f64> {
    let len = w.len();
    let mut jac = DMatrix::zeros(len, len);
    for i in 0..len {
        let next = (i + 1) % len;
        let prev = (i + len - 1) % len;
        let a = (2.0 * (w[next] - w[i])).exp();
        let b = (2.0 * (w[i] - w[prev])).exp();
        jac[(i, i)] += 2.0 * a + 2.0 * b;
        jac[(i, next)] -= 2.0 * a;
        jac[(i, prev)] -= 2.0 * b;
    }
    jac
}

/// Anti-symmetric reduction: `w = E v`.
struct Reduction {
    n: usize,
    free: usize,
    expand: DMatrix<f64>,
}

impl Reduction {
    fn new(n: usize) -> Self {
        let free = n.div_ceil(2);
        let mut expand = DMatrix::zeros(n + 1, free);
        for p in 0..free {
            expand[(p, p)] = 1.0;
            expand[(n - p, p)] = -1.0;
        }
        Reduction { n, free, expand }
    }

    fn full(&self, v: &[f64]) -> Vec<f64> {
        let mut w = vec![0.0; self.n + 1];
        for (p, &x) in v.iter().enumerate() {
            w[p] = x;
            w[self.n - p] = -x;
        }
        w
    }
}

struct Discretization<'a> {
    red: Reduction,
    grid: &'a RadialGrid,
    m: Vec<f64>,
}

impl Discretization<'_> {
    /// Number of unknown blocks; the last node is fixed at 0.
    fn blocks(&self) -> usize {
        self.grid.count - 1
    }

    fn value(&self, v: &[f64], j: usize, p: usize) -> f64 {
        if j == self.blocks() {
            0.0
        } else {
            v[j * self.red.free + p]
        }
    }

    fn node(&self, v: &[f64], j: usize) -> Vec<f64> {
        let f = self.red.free;
        self.red.full(&v[j * f..(j + 1) * f])
    }

    fn residual(&self, v: &[f64]) -> Vec<f64> {
        let h = self.grid.step();
        let f = self.red.free;
        let mut g = vec![0.0; v.len()];
        for j in 0..self.blocks() {
            let weight = 2.0 * h * h * (2.0 * self.grid.u(j)).exp();
            let r = toda_rhs(&self.node(v, j));
            for p in 0..f {
                let centre = self.value(v, j, p);
                let right = self.value(v, j + 1, p);
                // ghost node from w_u(u_min) = -m
                let left = if j == 0 {
                    right + 2.0 * h * self.m[p]
                } else {
                    self.value(v, j - 1, p)
                };
                g[j * f + p] = right - 2.0 * centre + left - weight * r[p];
            }
        }
        g
    }

    /// Solves `J δ = rhs` with the block Thomas algorithm.
    fn newton_step(&self, v: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
        let h = self.grid.step();
        let f = self.red.free;
        let blocks = self.blocks();
        let ident = DMatrix::<f64>::identity(f, f);
        let mut c_prime: Vec<DMatrix<f64>> = Vec::with_capacity(blocks);
        let mut g_prime: Vec<DVector<f64>> = Vec::with_capacity(blocks);
        for j in 0..blocks {
            let weight = 2.0 * h * h * (2.0 * self.grid.u(j)).exp();
            let jr = toda_jacobian(&self.node(v, j)) * &self.red.expand;
            let diag = -2.0 * &ident - weight * jr.rows(0, f);
            let upper = if j == 0 { 2.0 * &ident } else { ident.clone() };
            let r = DVector::from_column_slice(&rhs[j * f..(j + 1) * f]);
            let (s, r) = if j == 0 {
                (diag, r)
            } else {
                (diag - &c_prime[j - 1], r - &g_prime[j - 1])
            };
            let lu = s.lu();
            let singular = || Error::Consistency(format!("singular Jacobian block at node {j}"));
            c_prime.push(lu.solve(&upper).ok_or_else(singular)?);
            g_prime.push(lu.solve(&r).ok_or_else(singular)?);
        }
        let mut delta = vec![0.0; v.len()];
        let mut next = DVector::zeros(f);
        for j in (0..blocks).rev() {
            let x = if j + 1 == blocks {
                g_prime[j].clone()
            } else {
                &g_prime[j] - &c_prime[j] * &next
            };
            delta[j * f..(j + 1) * f].copy_from_slice(x.as_slice());
            next = x;
        }
        Ok(delta)
    }
}

fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, x| a.max(x.abs()))
}

struct NewtonOutcome {
    v: Vec<f64>,
    iterations: usize,
    residual: f64,
}

fn newton(disc: &Discretization, mut v: Vec<f64>, tol: f64, max_iterations: usize) -> Result<NewtonOutcome> {
    let mut g = disc.residual(&v);
    let mut norm = max_norm(&g);
    let mut iterations = 0;
    while !(norm < tol) {
        if iterations == max_iterations || !norm.is_finite() {
            return Err(Error::NoConvergence { iterations, residual: norm });
        }
        iterations += 1;
        let rhs: Vec<f64> = g.iter().map(|x| -x).collect();
        let delta = disc.newton_step(&v, &rhs)?;
        let mut lambda = 1.0;
        loop {
            let trial: Vec<f64> = v.iter().zip(&delta).map(|(a, d)| a + lambda * d).collect();
            let trial_g = disc.residual(&trial);
            let trial_norm = max_norm(&trial_g);
            if trial_norm.is_finite() && (trial_norm < norm || lambda < 1e-4) {
                v = trial;
                g = trial_g;
                norm = trial_norm;
                break;
            }
            lambda *= 0.5;
            if lambda < 1e-4 {
                return Err(Error::NoConvergence { iterations, residual: norm });
            }
        }
    }
    // one more full step: the tail is far below the stopping tolerance
    let rhs: Vec<f64> = g.iter().map(|x| -x).collect();
    let delta = disc.newton_step(&v, &rhs)?;
    let polished: Vec<f64> = v.iter().zip(&delta).map(|(a, d)| a + d).collect();
    let polished_norm = max_norm(&disc.residual(&polished));
    if polished_norm <= norm {
        return Ok(NewtonOutcome {
            v: polished,
            iterations: iterations + 1,
            residual: polished_norm,
        });
    }
    Ok(NewtonOutcome { v, iterations, residual: norm })
}

fn initial_guess(red: &Reduction, grid: &RadialGrid, m: &[f64]) -> Vec<f64> {
    let mut v = Vec::with_capacity((grid.count - 1) * red.free);
    for j in 0..grid.count - 1 {
        let u = grid.u(j);
        // softminus(u) = -ln(1 + e^{-u})
        let softminus = -(-u).exp().ln_1p();
        v.extend(m[..red.free].iter().map(|mp| -mp * softminus));
    }
    v
}

fn solve_scaled(
    red_n: usize,
    grid: &RadialGrid,
    m: &[f64],
    start: Option<Vec<f64>>,
    tol: f64,
    max_iterations: usize,
) -> Result<NewtonOutcome> {
    let disc = Discretization {
        red: Reduction::new(red_n),
        grid,
        m: m.to_vec(),
    };
    let v0 = start.unwrap_or_else(|| initial_guess(&disc.red, grid, m));
    newton(&disc, v0, tol, max_iterations)
}

fn continuation_path(
    n: usize,
    grid: &RadialGrid,
    m: &[f64],
    scales: &[f64],
    tol: f64,
    max_iterations: usize,
) -> Result<NewtonOutcome> {
    let mut start = None;
    let mut total = 0;
    let mut last = None;
    for &scale in scales {
        let scaled: Vec<f64> = m.iter().map(|x| scale * x).collect();
        let out = solve_scaled(n, grid, &scaled, start.take(), tol, max_iterations)?;
        total += out.iterations;
        start = Some(out.v.clone());
        last = Some(out);
    }
    let mut out = last.expect("at least one continuation step");
    out.iterations = total;
    Ok(out)
}

/// Newton solve of the reduced radial system; continuation in `m` is used on
/// the region boundary and as a fallback when the direct solve fails.
pub fn solve_radial(params: &TodaParams, grid: &RadialGrid, tol: f64) -> Result<RadialSolution> {
    solve_radial_with(params, grid, tol, SolverConfig::default().max_iterations)
}

pub fn solve_radial_with(
    params: &TodaParams,
    grid: &RadialGrid,
    tol: f64,
    max_iterations: usize,
) -> Result<RadialSolution> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    // revalidate in case the fields were edited
    let params = TodaParams::from_m(params.n, &params.m, Some(params.big_n))?;
    let n = params.n;
    if params.is_trivial() {
        return Ok(RadialSolution {
            w: DMatrix::zeros(grid.count, n + 1),
            params,
            grid: *grid,
            newton_iterations: 0,
            max_residual: 0.0,
            continuation: vec![1.0],
        });
    }
    const BOUNDARY_PATH: [f64; 3] = [0.8, 0.9, 1.0];
    const FALLBACK_PATH: [f64; 6] = [0.2, 0.4, 0.6, 0.8, 0.9, 1.0];
    let first: &[f64] = if params.on_boundary() { &BOUNDARY_PATH } else { &[1.0] };
    let (out, path) = match continuation_path(n, grid, &params.m, first, tol, max_iterations) {
        Ok(out) => (out, first),
        Err(_) => (
            continuation_path(n, grid, &params.m, &FALLBACK_PATH, tol, max_iterations)?,
            &FALLBACK_PATH[..],
        ),
    };
    let red = Reduction::new(n);
    let mut w = DMatrix::zeros(grid.count, n + 1);
    for j in 0..grid.count - 1 {
        let full = red.full(&out.v[j * red.free..(j + 1) * red.free]);
        for (i, x) in full.into_iter().enumerate() {
            w[(j, i)] = x;
        }
    }
    Ok(RadialSolution {
        params,
        grid: *grid,
        w,
        newton_iterations: out.iterations,
        max_residual: out.residual,
        continuation: path.to_vec(),
    })
}

/// The discretized equation evaluated node by node, with `R_i` computed
/// componentwise and from `diag([W^T, W])`. Rows are nodes `0..count-1`
/// (the Dirichlet node is excluded), columns all `n + 1` components.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub componentwise: DMatrix<f64>,
    pub commutator: DMatrix<f64>,
}

impl ResidualReport {
    pub fn max_componentwise(&self) -> f64 {
        self.componentwise.amax()
    }

    pub fn max_commutator(&self) -> f64 {
        self.commutator.amax()
    }

    pub fn max_route_gap(&self) -> f64 {
        (&self.componentwise - &self.commutator).amax()
    }
}

pub fn residual(solution: &RadialSolution) -> Result<ResidualReport> {
    let grid = &solution.grid;
    let n = solution.n();
    let h = grid.step();
    let rows = grid.count - 1;
    let mut componentwise = DMatrix::zeros(rows, n + 1);
    let mut commutator = DMatrix::zeros(rows, n + 1);
    for j in 0..rows {
        let w = solution.row(j);
        let weight = 2.0 * h * h * (2.0 * grid.u(j)).exp();
        let r = toda_rhs(&w);
        let c = w_commutator(&build_w(n, &w)?);
        for i in 0..=n {
            let right = solution.w[(j + 1, i)];
            let left = if j == 0 {
                right + 2.0 * h * solution.params.m[i]
            } else {
                solution.w[(j - 1, i)]
            };
            let second = right - 2.0 * w[i] + left;
            componentwise[(j, i)] = second - weight * r[i];
            commutator[(j, i)] = second - weight * c[(i, i)];
        }
    }
    Ok(ResidualReport { componentwise, commutator })
}

pub fn asymptotic_count(n: usize) -> usize {
    n.div_ceil(2)
}

/// `u_k(x_j) = -(4/(n+1)) Σ_p w_p(x_j) sin((2p+1)kπ/(n+1))` for
/// `k = 1..=floor((n+1)/2)`; outer index `k - 1`, inner index node.
pub fn asymptotic_components(solution: &RadialSolution) -> Vec<Vec<f64>> {
    let n = solution.n();
    let h = (n + 1) as f64;
    (1..=asymptotic_count(n))
        .map(|k| {
            (0..solution.grid.count)
                .map(|j| {
                    let sum: f64 = (0..=(n - 1) / 2)
                        .map(|p| solution.w[(j, p)] * ((2 * p + 1) as f64 * k as f64 * PI / h).sin())
                        .sum();
                    -4.0 / h * sum
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitWindow {
    pub k: usize,
    pub x_a: f64,
    pub x_b: f64,
    pub nodes: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticFit {
    pub template: Template,
    pub s_hat: Vec<f64>,
    pub windows: Vec<FitWindow>,
    /// `(max - min) / |mean|` of the pointwise ratios; plain `max - min`
    /// when the mean vanishes.
    pub spread: Vec<f64>,
    /// Sign of each `ŝ_k` as measured.
    pub sign: Vec<i8>,
}

/// `ŝ_k` as the mean of `u_k(x) / T(L_k x)` over the grid nodes in the window.
pub fn extract_stokes(solution: &RadialSolution, window: (f64, f64), template: Template) -> Result<AsymptoticFit> {
    let grid = &solution.grid;
    let (x_a, x_b) = window;
    let slack = 1e-12;
    if !(x_a < x_b && x_a >= grid.x_min() * (1.0 - slack) && x_b <= grid.x_max() * (1.0 + slack)) {
        return Err(Error::Window {
            x_a,
            x_b,
            x_min: grid.x_min(),
            x_max: grid.x_max(),
        });
    }
    let nodes: Vec<usize> = (0..grid.count)
        .filter(|&j| (x_a..=x_b).contains(&grid.x(j)))
        .collect();
    if nodes.is_empty() {
        return Err(Error::Window {
            x_a,
            x_b,
            x_min: grid.x_min(),
            x_max: grid.x_max(),
        });
    }
    let n = solution.n();
    let components = asymptotic_components(solution);
    let mut fit = AsymptoticFit {
        template,
        s_hat: Vec::new(),
        windows: Vec::new(),
        spread: Vec::new(),
        sign: Vec::new(),
    };
    for (idx, u) in components.iter().enumerate() {
        let k = idx + 1;
        let lk = mass(n, k);
        let ratios: Vec<f64> = nodes
            .iter()
            .map(|&j| u[j] / template.eval(lk * grid.x(j)))
            .collect();
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        let (lo, hi) = ratios
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &r| (lo.min(r), hi.max(r)));
        let spread = if mean.abs() > 1e-12 { (hi - lo) / mean.abs() } else { hi - lo };
        fit.s_hat.push(mean);
        fit.spread.push(spread);
        fit.sign.push(if mean > 0.0 {
            1
        } else if mean < 0.0 {
            -1
        } else {
            0
        });
        fit.windows.push(FitWindow {
            k,
            x_a,
            x_b,
            nodes: nodes.len(),
        });
    }
    Ok(fit)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StokesComparison {
    pub k: usize,
    pub fitted: f64,
    pub closed_form: f64,
    pub abs_error: f64,
    /// Absent when the closed form vanishes.
    pub rel_error: Option<f64>,
    pub spread: f64,
    pub sign_agrees: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticsReport {
    pub params: TodaParams,
    pub template: Template,
    pub window: (f64, f64),
    pub newton_iterations: usize,
    pub max_residual: f64,
    pub boundary_flux_error: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub fit: AsymptoticFit,
    pub rows: Vec<StokesComparison>,
    pub passed: bool,
}

pub fn compare_fit(params: &TodaParams, fit: &AsymptoticFit, rel_tol: f64, abs_tol: f64) -> Result<Vec<StokesComparison>> {
    let closed = stokes_from_m(params)?;
    Ok(fit
        .s_hat
        .iter()
        .enumerate()
        .map(|(idx, &fitted)| {
            let k = idx + 1;
            let closed_form = closed.get(k).re;
            let abs_error = (fitted - closed_form).abs();
            let vanishing = closed_form.abs() < abs_tol;
            let rel_error = (!vanishing).then(|| abs_error / closed_form.abs());
            let passed = match rel_error {
                Some(r) => r < rel_tol,
                None => abs_error < abs_tol,
            };
            StokesComparison {
                k,
                fitted,
                closed_form,
                abs_error,
                rel_error,
                spread: fit.spread[idx],
                sign_agrees: vanishing || fitted.signum() == closed_form.signum(),
                passed,
            }
        })
        .collect())
}

/// Solves, fits, and compares `ŝ_k` against the closed-form Stokes data.
pub fn verify_asymptotics(params: &TodaParams, config: &SolverConfig) -> Result<(RadialSolution, AsymptoticsReport)> {
    let solution = solve_radial_with(params, &config.grid, config.tol, config.max_iterations)?;
    let fit = extract_stokes(&solution, config.window, config.template)?;
    let rows = compare_fit(&solution.params, &fit, config.rel_tol, config.abs_tol)?;
    let report = AsymptoticsReport {
        params: solution.params.clone(),
        template: config.template,
        window: config.window,
        newton_iterations: solution.newton_iterations,
        max_residual: solution.max_residual,
        boundary_flux_error: solution.boundary_flux_error(),
        rel_tol: config.rel_tol,
        abs_tol: config.abs_tol,
        passed: rows.iter().all(|r| r.passed),
        fit,
        rows,
    };
    Ok((solution, report))
}
