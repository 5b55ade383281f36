//! Type A_n roots, the cyclic Coxeter element and Coxeter-plane geometry.
//!
//! Roots are evaluated on the apposition Cartan subalgebra through the
//! Vandermonde identification, so the projection of `x_i - x_j` is the complex
//! number `-(ζ^i - ζ^j)` with `ζ = e^{2πi/(n+1)}`. Higher Coxeter planes use
//! powers of the same element.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{check_rank, Error, Result};
use crate::linalg::{real, CMatrix};

/// Angles within this distance are the same ray.
pub const RAY_TOLERANCE: f64 = 1e-9;
/// Radii (and positions) within this distance are identified.
pub const RADIUS_TOLERANCE: f64 = 1e-9;

/// The root `x_i - x_j` of A_n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootA {
    pub i: usize,
    pub j: usize,
}

impl RootA {
    pub fn new(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j || i > n || j > n {
            return Err(Error::InvalidRoot { n, i, j });
        }
        Ok(RootA { i, j })
    }

    pub fn negate(self) -> Self {
        RootA { i: self.j, j: self.i }
    }

    /// `(i - j) mod (n+1)`, which labels the Coxeter orbit.
    pub fn orbit_index(self, n: usize) -> usize {
        (self.i + n + 1 - self.j) % (n + 1)
    }

    /// `|i - j|`.
    pub fn separation(self) -> usize {
        self.i.abs_diff(self.j)
    }

    /// Image under the Coxeter element, the index cycle n → n-1 → … → 0 → n.
    pub fn coxeter_image(self, n: usize) -> Self {
        let step = |a: usize| (a + n) % (n + 1);
        RootA {
            i: step(self.i),
            j: step(self.j),
        }
    }

    pub fn label(self) -> String {
        format!("x{}-x{}", self.i, self.j)
    }

    fn check(self, n: usize) -> Result<()> {
        RootA::new(n, self.i, self.j).map(|_| ())
    }
}

/// A Coxeter orbit of roots, i.e. a particle class before the k ↔ n+1-k identification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParticleClass {
    pub k: usize,
    pub mass: f64,
}

/// `L_k = 2 sin(kπ/(n+1))`.
pub fn mass(n: usize, k: usize) -> f64 {
    2.0 * (k as f64 * PI / (n + 1) as f64).sin()
}

/// Number of distinct particles, `floor((n+1)/2)`.
pub fn particle_count(n: usize) -> usize {
    n.div_ceil(2)
}

/// `ζ^p` with `ζ = e^{2πi/(n+1)}`. The exponent is reduced first so that
/// equal powers give bitwise equal values.
pub fn root_of_unity(n: usize, p: i64) -> Complex64 {
    let h = (n + 1) as i64;
    let p = p.rem_euclid(h);
    Complex64::from_polar(1.0, 2.0 * PI * p as f64 / h as f64)
}

pub fn roots(n: usize) -> Result<Vec<RootA>> {
    check_rank(n)?;
    let mut out = Vec::with_capacity(n * (n + 1));
    for i in 0..=n {
        for j in 0..=n {
            if i != j {
                out.push(RootA { i, j });
            }
        }
    }
    Ok(out)
}

/// Partition of the roots into the `n` Coxeter orbits, each of size `n+1`.
///
/// Orbit `d - 1` holds the roots with `(i - j) mod (n+1) = d`, listed along
/// the Coxeter action starting from `x_d - x_0`.
pub fn coxeter_orbits(n: usize) -> Result<Vec<Vec<RootA>>> {
    check_rank(n)?;
    Ok((1..=n)
        .map(|d| {
            let mut orbit = Vec::with_capacity(n + 1);
            let mut root = RootA { i: d, j: 0 };
            for _ in 0..=n {
                orbit.push(root);
                root = root.coxeter_image(n);
            }
            orbit
        })
        .collect())
}

/// Projection of a root to the `r`-th Coxeter plane: evaluation on `(-d_{n+1})^r`.
pub fn project_root(n: usize, root: RootA, r: usize) -> Result<Complex64> {
    check_rank(n)?;
    root.check(n)?;
    if r < 1 || r > n {
        return Err(Error::SpinOrder { n, r });
    }
    let sign = if r.is_multiple_of(2) { 1.0 } else { -1.0 };
    let r = r as i64;
    let value = root_of_unity(n, r * root.i as i64) - root_of_unity(n, r * root.j as i64);
    Ok(value * sign)
}

pub fn particle_class(n: usize, root: RootA) -> ParticleClass {
    let d = root.separation();
    let k = d.min(n + 1 - d);
    ParticleClass { k, mass: mass(n, k) }
}

pub fn particle_classes(n: usize) -> Vec<ParticleClass> {
    (1..=particle_count(n))
        .map(|k| ParticleClass { k, mass: mass(n, k) })
        .collect()
}

/// Signed r-spins: row `k-1`, column `r-1` holds `2 sin(rkπ/(n+1))`.
pub fn spin_table(n: usize) -> Result<Vec<Vec<f64>>> {
    check_rank(n)?;
    let h = (n + 1) as f64;
    Ok((1..=particle_count(n))
        .map(|k| {
            (1..=n)
                .map(|r| 2.0 * ((r * k) as f64 * PI / h).sin())
                .collect()
        })
        .collect())
}

/// `E_+ = E_{n,0} + Σ E_{i,i+1}`.
pub fn e_plus(n: usize) -> CMatrix {
    let mut e = CMatrix::zeros(n + 1, n + 1);
    for i in 0..n {
        e[(i, i + 1)] += real(1.0);
    }
    e[(n, 0)] += real(1.0);
    e
}

pub fn e_minus(n: usize) -> CMatrix {
    e_plus(n).transpose()
}

/// Vandermonde matrix `Ω = (ζ^{ij})`.
pub fn vandermonde(n: usize) -> CMatrix {
    CMatrix::from_fn(n + 1, n + 1, |i, j| root_of_unity(n, (i * j) as i64))
}

/// `Ω^{-1} = conj(Ω) / (n+1)`.
pub fn vandermonde_inverse(n: usize) -> CMatrix {
    vandermonde(n).map(|z| z.conj() / (n + 1) as f64)
}

/// `d_{n+1} = diag(1, ζ, …, ζ^n)`.
pub fn coxeter_diagonal(n: usize) -> CMatrix {
    CMatrix::from_fn(n + 1, n + 1, |i, j| {
        if i == j {
            root_of_unity(n, i as i64)
        } else {
            real(0.0)
        }
    })
}

fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// Eigenvalues (ascending) of `w ↦ [E_+, [E_-, w]]` on traceless diagonal matrices.
pub fn mass_operator_spectrum(n: usize) -> Result<Vec<f64>> {
    check_rank(n)?;
    let dim = n + 1;
    // orthonormal basis of the traceless diagonal matrices by Gram-Schmidt on
    // the simple coroots E_ii - E_{i+1,i+1}
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        v[i + 1] = -1.0;
        for b in &basis {
            let dot: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
        basis.push(v);
    }
    let ep = e_plus(n);
    let em = e_minus(n);
    let diag = |v: &[f64]| CMatrix::from_fn(dim, dim, |i, j| real(if i == j { v[i] } else { 0.0 }));
    let images: Vec<CMatrix> = basis
        .iter()
        .map(|b| commutator(&ep, &commutator(&em, &diag(b))))
        .collect();
    let op = DMatrix::from_fn(n, n, |a, b| {
        (0..dim).map(|i| basis[a][i] * images[b][(i, i)].re).sum::<f64>()
    });
    let sym = (&op + op.transpose()) * 0.5;
    let mut values: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| a.total_cmp(b));
    Ok(values)
}

/// Angle canonicalised into (-π, π].
pub fn canonical_angle(z: Complex64) -> f64 {
    let a = z.arg();
    if a <= -PI + RAY_TOLERANCE {
        PI
    } else {
        a
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagramPoint {
    pub position: Complex64,
    /// Labels of every root (or weight) projecting here, sorted.
    pub sources: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ray {
    pub angle: f64,
    /// Indices into `CoxeterDiagram::points`.
    pub points: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Wheel {
    pub radius: f64,
    pub points: Vec<usize>,
}

/// Projected points grouped into rays (spokes) and wheels (circles).
///
/// Points are sorted by (angle, radius, first label) with the origin, if
/// present, first. The origin belongs to no ray and no wheel.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoxeterDiagram {
    pub n: usize,
    pub spin_order: usize,
    pub points: Vec<DiagramPoint>,
    pub rays: Vec<Ray>,
    pub wheels: Vec<Wheel>,
}

impl CoxeterDiagram {
    /// Merge coincident positions and group the result into rays and wheels.
    pub fn from_labelled_points(
        n: usize,
        spin_order: usize,
        labelled: impl IntoIterator<Item = (Complex64, String)>,
    ) -> Self {
        let mut points: Vec<DiagramPoint> = Vec::new();
        for (position, label) in labelled {
            match points
                .iter_mut()
                .find(|p| (p.position - position).norm() < RADIUS_TOLERANCE)
            {
                Some(p) => p.sources.push(label),
                None => points.push(DiagramPoint {
                    position,
                    sources: vec![label],
                }),
            }
        }
        for p in &mut points {
            p.sources.sort();
            if p.position.norm() < RADIUS_TOLERANCE {
                p.position = Complex64::new(0.0, 0.0);
            }
        }
        let sort_key = |p: &DiagramPoint| {
            let r = p.position.norm();
            let a = if r == 0.0 { f64::NEG_INFINITY } else { canonical_angle(p.position) };
            (a, r)
        };
        points.sort_by(|a, b| {
            let (aa, ar) = sort_key(a);
            let (ba, br) = sort_key(b);
            if (aa - ba).abs() > RAY_TOLERANCE {
                aa.total_cmp(&ba)
            } else if (ar - br).abs() > RADIUS_TOLERANCE {
                ar.total_cmp(&br)
            } else {
                a.sources.cmp(&b.sources)
            }
        });

        let mut rays: Vec<Ray> = Vec::new();
        let mut wheels: Vec<Wheel> = Vec::new();
        for (idx, p) in points.iter().enumerate() {
            let r = p.position.norm();
            if r == 0.0 {
                continue;
            }
            let a = canonical_angle(p.position);
            match rays.iter_mut().find(|ray| (ray.angle - a).abs() < RAY_TOLERANCE) {
                Some(ray) => ray.points.push(idx),
                None => rays.push(Ray {
                    angle: a,
                    points: vec![idx],
                }),
            }
            match wheels.iter_mut().find(|w| (w.radius - r).abs() < RADIUS_TOLERANCE) {
                Some(w) => w.points.push(idx),
                None => wheels.push(Wheel {
                    radius: r,
                    points: vec![idx],
                }),
            }
        }
        rays.sort_by(|a, b| a.angle.total_cmp(&b.angle));
        wheels.sort_by(|a, b| a.radius.total_cmp(&b.radius));
        CoxeterDiagram {
            n,
            spin_order,
            points,
            rays,
            wheels,
        }
    }

    /// Index of the ray with the given angle, within `RAY_TOLERANCE`.
    pub fn ray_at(&self, angle: f64) -> Option<&Ray> {
        let target = canonical_angle(Complex64::from_polar(1.0, angle));
        self.rays
            .iter()
            .find(|ray| (ray.angle - target).abs() < RAY_TOLERANCE)
    }
}

/// Projections of all roots to the `r`-th Coxeter plane.
pub fn coxeter_diagram(n: usize, r: usize) -> Result<CoxeterDiagram> {
    let labelled = roots(n)?
        .into_iter()
        .map(|root| Ok((project_root(n, root, r)?, root.label())))
        .collect::<Result<Vec<_>>>()?;
    Ok(CoxeterDiagram::from_labelled_points(n, r, labelled))
}

/// Roots whose r = 1 projection lies on the ray with the given angle.
pub fn roots_on_ray(n: usize, angle: f64) -> Result<Vec<RootA>> {
    let target = canonical_angle(Complex64::from_polar(1.0, angle));
    let mut out = Vec::new();
    for root in roots(n)? {
        let p = project_root(n, root, 1)?;
        if (canonical_angle(p) - target).abs() < RAY_TOLERANCE {
            out.push(root);
        }
    }
    if out.is_empty() {
        return Err(Error::NotARay(angle));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() < tol
    }

    #[test]
    fn root_counts() {
        assert_eq!(roots(1).unwrap(), vec![RootA { i: 0, j: 1 }, RootA { i: 1, j: 0 }]);
        assert_eq!(roots(2).unwrap().len(), 6);
        assert_eq!(roots(5).unwrap().len(), 30);
        assert_eq!(roots(0), Err(Error::InvalidRank(0)));
    }

    #[test]
    fn roots_closed_under_negation() {
        let all = roots(4).unwrap();
        for r in &all {
            assert!(all.contains(&r.negate()));
        }
    }

    #[test]
    fn invalid_roots_rejected() {
        assert!(RootA::new(3, 1, 1).is_err());
        assert!(RootA::new(3, 0, 4).is_err());
    }

    #[test]
    fn orbits_partition_roots() {
        for n in 1..=7 {
            let orbits = coxeter_orbits(n).unwrap();
            assert_eq!(orbits.len(), n);
            let mut all: Vec<RootA> = orbits.iter().flatten().copied().collect();
            assert!(orbits.iter().all(|o| o.len() == n + 1));
            all.sort();
            all.dedup();
            assert_eq!(all.len(), n * (n + 1));
            for (d, orbit) in orbits.iter().enumerate() {
                assert!(orbit.iter().all(|r| r.orbit_index(n) == d + 1));
            }
        }
        assert_eq!(coxeter_orbits(1).unwrap(), vec![vec![RootA { i: 1, j: 0 }, RootA { i: 0, j: 1 }]]);
    }

    #[test]
    fn complementary_orbits_share_a_wheel() {
        let n = 5;
        let orbits = coxeter_orbits(n).unwrap();
        let radius = |orbit: &[RootA]| {
            let rs: Vec<f64> = orbit.iter().map(|&r| project_root(n, r, 1).unwrap().norm()).collect();
            assert!(rs.iter().all(|x| close(*x, rs[0], 1e-12)));
            rs[0]
        };
        for d in 1..=n {
            assert!(close(radius(&orbits[d - 1]), radius(&orbits[n - d]), 1e-12));
        }
    }

    #[test]
    fn projection_examples() {
        let p = project_root(5, RootA { i: 0, j: 3 }, 1).unwrap();
        assert!((p - real(-2.0)).norm() < 1e-12);
        let p = project_root(2, RootA { i: 1, j: 2 }, 1).unwrap();
        assert!(close(p.norm(), 3f64.sqrt(), 1e-12));
        for root in roots(5).unwrap().into_iter().filter(|r| r.separation() == 2) {
            assert!(close(project_root(5, root, 1).unwrap().norm(), 3f64.sqrt(), 1e-12));
        }
        assert_eq!(
            project_root(3, RootA { i: 0, j: 1 }, 4),
            Err(Error::SpinOrder { n: 3, r: 4 })
        );
    }

    #[test]
    fn particle_class_examples() {
        let c = particle_class(5, RootA { i: 0, j: 1 });
        assert_eq!(c.k, 1);
        assert!(close(c.mass, 1.0, 1e-12));
        let c = particle_class(5, RootA { i: 0, j: 3 });
        assert_eq!(c.k, 3);
        assert!(close(c.mass, 2.0, 1e-12));
        let c = particle_class(5, RootA { i: 0, j: 5 });
        assert_eq!(c.k, 1);
        assert!(close(c.mass, 1.0, 1e-12));
    }

    #[test]
    fn masses_increase_and_pair() {
        for n in 1..=10 {
            let classes = particle_classes(n);
            assert_eq!(classes.len(), (n + 1) / 2);
            assert!(classes.windows(2).all(|w| w[0].mass < w[1].mass));
            for k in 1..=n {
                assert!(close(mass(n, k), mass(n, n + 1 - k), 1e-12));
            }
        }
    }

    #[test]
    fn spin_table_examples() {
        let t = spin_table(5).unwrap();
        assert!(close(t[0][0], 1.0, 1e-12));
        assert!(close(t[2][1], 0.0, 1e-12));
        let t = spin_table(3).unwrap();
        assert!(close(t[1][2], -2.0, 1e-12));
        let t = spin_table(6).unwrap();
        for (k, row) in t.iter().enumerate() {
            assert!(close(row[0], mass(6, k + 1), 1e-15));
        }
    }

    #[test]
    fn vandermonde_diagonalises_e_plus() {
        for n in 1..=6 {
            let d = vandermonde_inverse(n) * e_plus(n) * vandermonde(n);
            assert!(crate::linalg::max_abs_diff(&d, &coxeter_diagonal(n)) < 1e-12);
            let d = vandermonde_inverse(n) * e_minus(n) * vandermonde(n);
            let dinv = coxeter_diagonal(n).map(|z| if z.norm() > 0.0 { z.conj() } else { z });
            assert!(crate::linalg::max_abs_diff(&d, &dinv) < 1e-12);
        }
    }

    #[test]
    fn mass_operator_small_cases() {
        let s = mass_operator_spectrum(1).unwrap();
        assert_eq!(s.len(), 1);
        assert!(close(s[0], 4.0, 1e-12));
        let s = mass_operator_spectrum(2).unwrap();
        assert!(close(s[0], 3.0, 1e-12) && close(s[1], 3.0, 1e-12));
        let s = mass_operator_spectrum(5).unwrap();
        let want = [1.0, 1.0, 3.0, 3.0, 4.0];
        for (g, w) in s.iter().zip(want) {
            assert!(close(*g, w, 1e-12));
        }
    }

    #[test]
    fn mass_operator_matches_masses() {
        for n in 1..=10 {
            let got = mass_operator_spectrum(n).unwrap();
            let mut want: Vec<f64> = (1..=n).map(|k| mass(n, k).powi(2)).collect();
            want.sort_by(|a, b| a.total_cmp(b));
            for (g, w) in got.iter().zip(&want) {
                assert!(close(*g, *w, 1e-10), "n={n}: {got:?} vs {want:?}");
            }
        }
    }

    // independent enumeration of -(ζ^i - ζ^j) without the diagram builder
    fn brute_points(n: usize) -> Vec<Complex64> {
        let h = (n + 1) as f64;
        let mut pts: Vec<Complex64> = Vec::new();
        for i in 0..=n {
            for j in 0..=n {
                if i == j {
                    continue;
                }
                let z = -(Complex64::from_polar(1.0, 2.0 * PI * i as f64 / h)
                    - Complex64::from_polar(1.0, 2.0 * PI * j as f64 / h));
                if !pts.iter().any(|p| (p - z).norm() < 1e-9) {
                    pts.push(z);
                }
            }
        }
        pts
    }

    #[test]
    fn diagram_examples() {
        let d = coxeter_diagram(2, 1).unwrap();
        assert_eq!(d.points.len(), brute_points(2).len());
        assert_eq!(d.points.len(), 6);
        assert_eq!(d.wheels.len(), 1);
        assert!(close(d.wheels[0].radius, 3f64.sqrt(), 1e-12));
        assert_eq!(d.rays.len(), 6);

        let d = coxeter_diagram(5, 1).unwrap();
        let radii: Vec<f64> = d.wheels.iter().map(|w| w.radius).collect();
        assert_eq!(radii.len(), 3);
        for (g, w) in radii.iter().zip([1.0, 3f64.sqrt(), 2.0]) {
            assert!(close(*g, w, 1e-12));
        }
        assert_eq!(d.points.len(), brute_points(5).len());

        let d = coxeter_diagram(1, 1).unwrap();
        assert_eq!(d.points.len(), 2);
        assert_eq!(d.wheels.len(), 1);
        assert_eq!(d.rays.len(), 2);
        // sorted by angle: 0 before π
        assert!((d.points[0].position - real(2.0)).norm() < 1e-12);
        assert!((d.points[1].position - real(-2.0)).norm() < 1e-12);
    }

    #[test]
    fn diagram_wheels_are_equally_spaced() {
        for n in 1..=9 {
            let d = coxeter_diagram(n, 1).unwrap();
            for wheel in &d.wheels {
                let count = wheel.points.len();
                assert!(count == n + 1 || count == 2 * (n + 1), "n={n}: {count}");
                let mut angles: Vec<f64> = wheel
                    .points
                    .iter()
                    .map(|&i| canonical_angle(d.points[i].position))
                    .collect();
                angles.sort_by(|a, b| a.total_cmp(b));
                let gap = 2.0 * PI / count as f64;
                for w in angles.windows(2) {
                    assert!(close(w[1] - w[0], gap, 1e-9));
                }
            }
        }
    }

    #[test]
    fn every_point_on_one_ray_and_one_wheel() {
        for n in 1..=8 {
            for r in 1..=n {
                let d = coxeter_diagram(n, r).unwrap();
                for (idx, p) in d.points.iter().enumerate() {
                    let on_rays = d.rays.iter().filter(|ray| ray.points.contains(&idx)).count();
                    let on_wheels = d.wheels.iter().filter(|w| w.points.contains(&idx)).count();
                    let expected = usize::from(p.position.norm() > 0.0);
                    assert_eq!((on_rays, on_wheels), (expected, expected));
                }
                // antipodal pairs
                for ray in &d.rays {
                    let opposite = if ray.angle > 0.0 { ray.angle - PI } else { ray.angle + PI };
                    assert!(d.ray_at(opposite).is_some(), "n={n} r={r}");
                }
            }
        }
    }

    #[test]
    fn roots_on_ray_lookup() {
        let on = roots_on_ray(1, 0.0).unwrap();
        assert_eq!(on, vec![RootA { i: 1, j: 0 }]);
        assert_eq!(roots_on_ray(1, 0.3), Err(Error::NotARay(0.3)));
    }
}
