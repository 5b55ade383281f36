//! Solution parameters, closed-form Stokes data, the Steinberg cross-section
//! and the individual Stokes factors.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{check_rank, Error, Result};
use crate::linalg::{binomial, elementary_symmetric, nilpotent_exp, numerical_rank, real, CMatrix};
use crate::representation::ext_power_group;
use crate::roots::{self, particle_class, vandermonde, vandermonde_inverse};

/// Slack allowed when testing the region inequalities.
pub const REGION_TOLERANCE: f64 = 1e-12;
/// Imaginary parts below this are dropped from closed-form Stokes data.
pub const IMAGINARY_TOLERANCE: f64 = 1e-10;

/// Parameters of a global solution: exponents `m` at t = 0, holomorphic
/// exponents `k`, and `N = n + 1 + Σ k_i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TodaParams {
    pub n: usize,
    pub m: Vec<f64>,
    pub k: Vec<f64>,
    #[serde(rename = "N")]
    pub big_n: f64,
}

fn check_m_region(n: usize, m: &[f64]) -> Result<()> {
    if m.len() != n + 1 {
        return Err(Error::InvalidInput(format!("expected {} values of m, got {}", n + 1, m.len())));
    }
    if let Some(x) = m.iter().find(|x| !x.is_finite()) {
        return Err(Error::InvalidInput(format!("m contains {x}")));
    }
    for i in 0..=n {
        let s = m[i] + m[n - i];
        if s.abs() > REGION_TOLERANCE {
            return Err(Error::Region(format!("m_{i} + m_{} = 0 violated: sum is {s}", n - i)));
        }
    }
    for i in 0..n {
        let d = m[i + 1] - m[i];
        if d > 1.0 + REGION_TOLERANCE {
            return Err(Error::Region(format!(
                "m_{} - m_{i} <= 1 violated: difference is {d}",
                i + 1
            )));
        }
    }
    let cyclic = 1.0 - m[0] + m[n];
    if cyclic < -REGION_TOLERANCE {
        return Err(Error::Region(format!("1 - m_0 + m_{n} >= 0 violated: value is {cyclic}")));
    }
    Ok(())
}

impl TodaParams {
    /// From the asymptotic data `m`; `big_n` defaults to `n + 1`, which makes t = z.
    pub fn from_m(n: usize, m: &[f64], big_n: Option<f64>) -> Result<Self> {
        check_rank(n)?;
        check_m_region(n, m)?;
        let big_n = big_n.unwrap_or((n + 1) as f64);
        if !(big_n > 0.0) {
            return Err(Error::Region(format!("N > 0 violated: N = {big_n}")));
        }
        let h = (n + 1) as f64;
        let k = (0..=n)
            .map(|i| {
                let prev = if i == 0 { m[n] } else { m[i - 1] };
                big_n / h * (1.0 - m[i] + prev) - 1.0
            })
            .collect();
        Ok(TodaParams {
            n,
            m: m.to_vec(),
            k,
            big_n,
        })
    }

    /// From the holomorphic exponents `k`; `m` is then determined exactly.
    pub fn from_k(n: usize, k: &[f64]) -> Result<Self> {
        check_rank(n)?;
        if k.len() != n + 1 {
            return Err(Error::InvalidInput(format!("expected {} values of k, got {}", n + 1, k.len())));
        }
        if let Some(i) = k.iter().position(|&x| !(x >= -1.0 - REGION_TOLERANCE)) {
            return Err(Error::Region(format!("k_{i} >= -1 violated: k_{i} = {}", k[i])));
        }
        for i in 1..=n {
            if (k[i] - k[n + 1 - i]).abs() > REGION_TOLERANCE {
                return Err(Error::Region(format!(
                    "k_{i} = k_{} violated: {} vs {}",
                    n + 1 - i,
                    k[i],
                    k[n + 1 - i]
                )));
            }
        }
        let big_n = (n + 1) as f64 + k.iter().sum::<f64>();
        if big_n <= REGION_TOLERANCE {
            return Err(Error::Region(format!(
                "N = n + 1 + Σk > 0 violated: N = {big_n} (all k_i = -1 is the excluded trivial case)"
            )));
        }
        let h = (n + 1) as f64;
        // m_i - m_{i-1} = 1 - c_i
        let steps: Vec<f64> = k.iter().map(|&ki| 1.0 - h / big_n * (ki + 1.0)).collect();
        let m0 = -0.5 * steps[1..].iter().sum::<f64>();
        let mut m = Vec::with_capacity(n + 1);
        m.push(m0);
        for i in 1..=n {
            m.push(m[i - 1] + steps[i]);
        }
        // antisymmetrise away the rounding
        let m: Vec<f64> = (0..=n).map(|i| 0.5 * (m[i] - m[n - i])).collect();
        Ok(TodaParams {
            n,
            m,
            k: k.to_vec(),
            big_n,
        })
    }

    /// `m = -x_0 = (-n/2, …, n/2)`, the quantum cohomology point of CP^n.
    pub fn cpn(n: usize) -> Result<Self> {
        let m: Vec<f64> = (0..=n).map(|i| i as f64 - n as f64 / 2.0).collect();
        TodaParams::from_m(n, &m, None)
    }

    pub fn is_trivial(&self) -> bool {
        self.m.iter().all(|&x| x == 0.0)
    }

    /// True when some region inequality holds with equality.
    pub fn on_boundary(&self) -> bool {
        let n = self.n;
        let tol = 1e-9;
        (0..n).any(|i| (self.m[i + 1] - self.m[i] - 1.0).abs() < tol)
            || (1.0 - self.m[0] + self.m[n]).abs() < tol
    }
}

/// Stokes data `s_1, …, s_n` (1-based through `get`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StokesVector {
    n: usize,
    s: Vec<Complex64>,
}

impl StokesVector {
    pub fn new(n: usize, s: Vec<Complex64>) -> Result<Self> {
        check_rank(n)?;
        if s.len() != n {
            return Err(Error::InvalidInput(format!("expected {n} Stokes values, got {}", s.len())));
        }
        Ok(StokesVector { n, s })
    }

    pub fn from_real(n: usize, s: &[f64]) -> Result<Self> {
        StokesVector::new(n, s.iter().map(|&x| real(x)).collect())
    }

    /// `s_i = C(n+1, i)`.
    pub fn binomial(n: usize) -> Self {
        StokesVector {
            n,
            s: (1..=n).map(|i| real(binomial(n + 1, i) as f64)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Complex64] {
        &self.s
    }

    /// `s_k` for `1 <= k <= n`.
    pub fn get(&self, k: usize) -> Complex64 {
        self.s[k - 1]
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (1..=self.n).all(|k| (self.get(k) - self.get(self.n + 1 - k)).norm() <= tol)
    }

    pub fn is_binomial(&self, tol: f64) -> bool {
        (1..=self.n).all(|k| (self.get(k) - real(binomial(self.n + 1, k) as f64)).norm() <= tol)
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.s.iter().map(|z| z.re).collect()
    }
}

/// The unit-modulus quantities `exp((2m_j + n - 2j)πi/(n+1))`.
pub fn stokes_exponentials(params: &TodaParams) -> Vec<Complex64> {
    let n = params.n as f64;
    params
        .m
        .iter()
        .enumerate()
        .map(|(j, &mj)| Complex64::from_polar(1.0, (2.0 * mj + n - 2.0 * j as f64) * PI / (n + 1.0)))
        .collect()
}

pub fn stokes_from_m(params: &TodaParams) -> Result<StokesVector> {
    stokes_from_m_with_tolerance(params, IMAGINARY_TOLERANCE)
}

/// `s_k = e_k(z_0, …, z_n)`, cross-checked against `tr ∧^k diag(z)`.
pub fn stokes_from_m_with_tolerance(params: &TodaParams, imaginary_tol: f64) -> Result<StokesVector> {
    let n = params.n;
    let z = stokes_exponentials(params);
    let e = elementary_symmetric(&z);
    let diag = CMatrix::from_fn(n + 1, n + 1, |i, j| if i == j { z[i] } else { real(0.0) });
    let mut s = Vec::with_capacity(n);
    for k in 1..=n {
        let via_power = ext_power_group(&diag, k)?.trace();
        let gap = (via_power - e[k]).norm();
        if gap > 1e-10 {
            return Err(Error::Consistency(format!(
                "s_{k}: elementary symmetric {} vs exterior trace {via_power} (gap {gap:e})",
                e[k]
            )));
        }
        s.push(e[k]);
    }
    // the z_j are closed under conjugation with product 1
    let s: Vec<Complex64> = (0..n)
        .map(|i| {
            let mut v = (s[i] + s[n - 1 - i]) * 0.5;
            if v.im.abs() < imaginary_tol {
                v.im = 0.0;
            }
            v
        })
        .collect();
    StokesVector::new(n, s)
}

/// Monic characteristic polynomial coefficients, highest degree first:
/// `z^{n+1} - s_1 z^n + s_2 z^{n-1} - … + (-1)^{n+1}`.
pub fn characteristic_coefficients(stokes: &StokesVector) -> Vec<Complex64> {
    let n = stokes.n();
    let mut c = Vec::with_capacity(n + 2);
    c.push(real(1.0));
    for j in 1..=n {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        c.push(stokes.get(j) * sign);
    }
    c.push(real(if (n + 1).is_multiple_of(2) { 1.0 } else { -1.0 }));
    c
}

/// Monodromy data `M = C(S)`, a regular element of SL_{n+1} with the
/// prescribed characteristic polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct MonodromyMatrix {
    matrix: CMatrix,
}

impl MonodromyMatrix {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn determinant(&self) -> Complex64 {
        self.matrix.determinant()
    }

    /// Every eigenvalue has a one-dimensional eigenspace.
    pub fn is_regular(&self) -> Result<bool> {
        let dim = self.matrix.nrows();
        for lambda in crate::linalg::eigenvalues(&self.matrix)? {
            let shifted = &self.matrix - CMatrix::identity(dim, dim) * lambda;
            if numerical_rank(&shifted, 1e-10) < dim - 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Steinberg cross-section realised as the companion matrix of the
/// characteristic polynomial.
pub fn steinberg_monodromy(stokes: &StokesVector) -> MonodromyMatrix {
    let n = stokes.n();
    let coeffs = characteristic_coefficients(stokes);
    let mut c = CMatrix::zeros(n + 1, n + 1);
    for i in 0..n {
        c[(i + 1, i)] = real(1.0);
    }
    // coefficient of z^i sits at position n + 1 - i of `coeffs`
    for i in 0..=n {
        c[(i, n)] = -coeffs[n + 1 - i];
    }
    MonodromyMatrix { matrix: c }
}

/// Stokes factor on the singular direction `angle`:
/// `exp(Σ_{β on the ray} s_β Ω E_β Ω^{-1})`, with `s_β = s_{|i-j|}`.
pub fn stokes_factor(n: usize, stokes: &StokesVector, angle: f64) -> Result<CMatrix> {
    check_rank(n)?;
    if stokes.n() != n {
        return Err(Error::InvalidInput(format!("Stokes data for rank {}, expected {n}", stokes.n())));
    }
    let on_ray = roots::roots_on_ray(n, angle)?;
    let mut x = CMatrix::zeros(n + 1, n + 1);
    for root in on_ray {
        let d = root.separation();
        debug_assert_eq!(particle_class(n, root).k, d.min(n + 1 - d));
        x[(root.i, root.j)] += stokes.get(d);
    }
    // the exponent is nilpotent with exact zeros in the root basis
    Ok(vandermonde(n) * nilpotent_exp(&x) * vandermonde_inverse(n))
}

/// All Stokes factors in increasing ray angle over (-π, π].
pub fn stokes_factors(n: usize, stokes: &StokesVector) -> Result<Vec<(f64, CMatrix)>> {
    let diagram = roots::coxeter_diagram(n, 1)?;
    diagram
        .rays
        .iter()
        .map(|ray| Ok((ray.angle, stokes_factor(n, stokes, ray.angle)?)))
        .collect()
}

/// Product of the Stokes factors in increasing angle order.
pub fn ordered_stokes_product(n: usize, stokes: &StokesVector) -> Result<CMatrix> {
    let mut product = CMatrix::identity(n + 1, n + 1);
    for (_, q) in stokes_factors(n, stokes)? {
        product *= q;
    }
    Ok(product)
}

/// The cyclic matrix W with `W_{i,i+1} = e^{w_{i+1} - w_i}` and
/// `W_{n,0} = e^{w_0 - w_n}`.
pub fn build_w(n: usize, w: &[f64]) -> Result<DMatrix<f64>> {
    check_rank(n)?;
    if w.len() != n + 1 {
        return Err(Error::InvalidInput(format!("expected {} values of w, got {}", n + 1, w.len())));
    }
    for i in 0..=n {
        if (w[i] + w[n - i]).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!("w_{i} + w_{} = 0 violated", n - i)));
        }
    }
    let mut m = DMatrix::zeros(n + 1, n + 1);
    for i in 0..n {
        m[(i, i + 1)] += (w[i + 1] - w[i]).exp();
    }
    m[(n, 0)] += (w[0] - w[n]).exp();
    Ok(m)
}

/// `[W^T, W]`.
pub fn w_commutator(w_matrix: &DMatrix<f64>) -> DMatrix<f64> {
    w_matrix.transpose() * w_matrix - w_matrix * w_matrix.transpose()
}
