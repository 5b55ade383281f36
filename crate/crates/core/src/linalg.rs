//! Small dense complex linear algebra helpers shared by the other modules.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

pub(crate) fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Binomial coefficient C(n, k); zero when k > n.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// All k-subsets of {0, ..., m-1} in lexicographic order.
pub fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // rightmost position that can still be advanced
        let Some(pos) = (0..k).rev().find(|&p| current[p] < m - k + p) else {
            break;
        };
        current[pos] += 1;
        for q in pos + 1..k {
            current[q] = current[q - 1] + 1;
        }
    }
    out
}

/// Elementary symmetric functions e_0, ..., e_m of the given values.
pub fn elementary_symmetric(values: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::zero(); values.len() + 1];
    e[0] = Complex64::one();
    for (count, &v) in values.iter().enumerate() {
        for j in (1..=count + 1).rev() {
            let prev = e[j - 1];
            e[j] += v * prev;
        }
    }
    e
}

pub fn eigenvalues(a: &CMatrix) -> Result<Vec<Complex64>> {
    let dim = a.nrows();
    if dim == 0 {
        return Ok(Vec::new());
    }
    let max_iter = 30 * dim;
    if let Some(v) = schur_eigenvalues(a.clone(), max_iter) {
        return Ok(v);
    }
    // Shifted QR stalls on permutation-like matrices; a fixed unit lower
    // triangular similarity breaks the symmetry without moving the spectrum.
    let mut l = CMatrix::identity(dim, dim);
    for i in 1..dim {
        for j in 0..i {
            l[(i, j)] = real(0.125 * (((i * 7 + j * 3) % 5) as f64 + 1.0) / 5.0);
        }
    }
    let l_inv = l
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Consistency("singular similarity".into()))?;
    schur_eigenvalues(&l * a * l_inv, max_iter)
        .ok_or_else(|| Error::Consistency("Schur decomposition did not converge".into()))
}

fn schur_eigenvalues(a: CMatrix, max_iter: usize) -> Option<Vec<Complex64>> {
    nalgebra::linalg::Schur::try_new(a, f64::EPSILON, max_iter)?
        .eigenvalues()
        .map(|v| v.iter().copied().collect())
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Exponential of a nilpotent matrix as a finite power series.
pub fn nilpotent_exp(a: &CMatrix) -> CMatrix {
    let dim = a.nrows();
    let mut result = CMatrix::identity(dim, dim);
    let mut term = CMatrix::identity(dim, dim);
    for p in 1..=dim {
        term = &term * a / real(p as f64);
        if max_abs(&term) == 0.0 {
            break;
        }
        result += &term;
    }
    result
}

/// Rank from singular values, relative to the largest one.
pub fn numerical_rank(a: &CMatrix, rel_tol: f64) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    let sv = a.clone().svd(false, false).singular_values;
    let largest = sv.iter().copied().fold(0.0, f64::max);
    if largest == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * largest).count()
}

/// Exact rank when every entry is (to within 1e-9) a real integer.
pub fn integer_rank(a: &CMatrix) -> Option<usize> {
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(a.nrows());
    for i in 0..a.nrows() {
        let mut row = Vec::with_capacity(a.ncols());
        for j in 0..a.ncols() {
            let z = a[(i, j)];
            let rounded = z.re.round();
            if z.im.abs() > 1e-9 || (z.re - rounded).abs() > 1e-9 || rounded.abs() > 9.0e15 {
                return None;
            }
            row.push(BigRational::from_integer(BigInt::from(rounded as i64)));
        }
        rows.push(row);
    }
    Some(rational_rank(rows))
}

pub(crate) fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for r in rank + 1..nrows {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &pivot_row[col];
            for c in col..ncols {
                let delta = &factor * &pivot_row[c];
                rows[r][c] -= delta;
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Sort complex values for multiset comparison: real parts are compared on a
/// 1e-6 grid so that near-equal real parts fall back to the imaginary part.
pub fn sort_complex(values: &mut [Complex64]) {
    let key = |z: &Complex64| (z.re * 1e6).round() as i64;
    values.sort_by(|a, b| {
        key(a)
            .cmp(&key(b))
            .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
}

/// Largest pairwise distance after sorting both multisets; `None` if the sizes differ.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    sort_complex(&mut a);
    sort_complex(&mut b);
    Some(a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max))
}
