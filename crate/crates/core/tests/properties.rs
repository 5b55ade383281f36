use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use ttstar_toda::linalg::{binomial, CMatrix};
use ttstar_toda::radial::{extract_stokes, solve_radial, toda_rhs, RadialGrid, Template};
use ttstar_toda::representation::{
    ext_power_algebra, ext_power_group, project_weight, soliton_graph, weights_of_ext, WeightIndexSet,
};
use ttstar_toda::roots::{mass, particle_classes, project_root, roots};
use ttstar_toda::stokes::{
    build_w, steinberg_monodromy, stokes_from_m, w_commutator, StokesVector, TodaParams,
};

fn complex_matrix(dim: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), dim * dim)
        .prop_map(move |v| CMatrix::from_iterator(dim, dim, v.into_iter().map(|(a, b)| Complex64::new(a, b))))
}

/// Symmetric exponents k with k_i >= -1 and N > 0, returned as parameters.
fn admissible_params() -> impl Strategy<Value = TodaParams> {
    (1usize..=7).prop_flat_map(|n| {
        (Just(n), prop::collection::vec(-1.0f64..3.0, n + 1)).prop_filter_map("N must be positive", |(n, raw)| {
            let mut k = raw.clone();
            for i in 1..=n {
                k[i] = k[i].max(-1.0);
                k[n + 1 - i] = k[i];
            }
            TodaParams::from_k(n, &k).ok()
        })
    })
}

fn symmetric_stokes() -> impl Strategy<Value = StokesVector> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), n).prop_map(move |raw| {
            let s: Vec<Complex64> = (1..=n)
                .map(|k| {
                    let (a, b) = raw[k.min(n + 1 - k) - 1];
                    Complex64::new(a, b)
                })
                .collect();
            StokesVector::new(n, s).unwrap()
        })
    })
}

fn antisymmetric_w() -> impl Strategy<Value = (usize, Vec<f64>)> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec(-2.0f64..2.0, n + 1)
            .prop_map(move |raw| (n, (0..=n).map(|i| 0.5 * (raw[i] - raw[n - i])).collect()))
    })
}

fn contains_point(set: &[Complex64], p: Complex64) -> bool {
    set.iter().any(|q| (q - p).norm() < 1e-9)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projected_root_length(n in 1usize..=12) {
        for root in roots(n).unwrap() {
            let d = root.i.abs_diff(root.j) as f64;
            let want = 2.0 * (d * PI / (n as f64 + 1.0)).sin();
            prop_assert!((project_root(n, root, 1).unwrap().norm() - want).abs() < 1e-13);
        }
    }

    #[test]
    fn projection_is_odd(n in 1usize..=10, r_seed in 0usize..100) {
        let r = 1 + r_seed % n;
        for root in roots(n).unwrap() {
            let a = project_root(n, root, r).unwrap();
            let b = project_root(n, root.negate(), r).unwrap();
            prop_assert!((a + b).norm() < 1e-13);
        }
    }

    #[test]
    fn coxeter_rotation_permutes_roots(n in 1usize..=10) {
        let points: Vec<Complex64> = roots(n).unwrap().into_iter().map(|b| project_root(n, b, 1).unwrap()).collect();
        let rot = Complex64::from_polar(1.0, -2.0 * PI / (n as f64 + 1.0));
        for p in &points {
            prop_assert!(contains_point(&points, p * rot));
        }
    }

    #[test]
    fn particle_class_count(n in 1usize..=12) {
        prop_assert_eq!(particle_classes(n).len(), n.div_ceil(2));
    }

    #[test]
    fn stokes_symmetric_and_real(params in admissible_params()) {
        let s = stokes_from_m(&params).unwrap();
        let n = params.n;
        for k in 1..=n {
            prop_assert_eq!(s.get(k), s.get(n + 1 - k));
            prop_assert!(s.get(k).im.abs() < 1e-10);
        }
    }

    #[test]
    fn parameters_round_trip(params in admissible_params()) {
        let back = TodaParams::from_m(params.n, &params.m, Some(params.big_n)).unwrap();
        for (a, b) in back.k.iter().zip(&params.k) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn cross_section(s in symmetric_stokes()) {
        let m = steinberg_monodromy(&s);
        prop_assert!((m.determinant() - Complex64::new(1.0, 0.0)).norm() < 1e-8);
        for k in 1..=s.n() {
            let t = ext_power_group(m.matrix(), k).unwrap().trace();
            prop_assert!((t - s.get(k)).norm() < 1e-8);
        }
    }

    #[test]
    fn exterior_power_is_multiplicative(a in complex_matrix(4), b in complex_matrix(4), k in 1usize..=4) {
        let lhs = ext_power_group(&(&a * &b), k).unwrap();
        let rhs = ext_power_group(&a, k).unwrap() * ext_power_group(&b, k).unwrap();
        let scale = lhs.iter().map(|z| z.norm()).fold(1.0, f64::max);
        prop_assert!((lhs - rhs).iter().all(|z| z.norm() < 1e-8 * scale));
    }

    #[test]
    fn exterior_power_determinant(a in complex_matrix(4), k in 1usize..=4) {
        let lifted = ext_power_group(&a, k).unwrap().determinant();
        let want = a.determinant().powu(binomial(3, k - 1) as u32);
        prop_assert!((lifted - want).norm() < 1e-8 * want.norm().max(1.0));
    }

    #[test]
    fn exterior_derivation_preserves_brackets(x in complex_matrix(4), y in complex_matrix(4), k in 1usize..=4) {
        let bracket = &x * &y - &y * &x;
        let tx = ext_power_algebra(&x, k).unwrap();
        let ty = ext_power_algebra(&y, k).unwrap();
        let lhs = ext_power_algebra(&bracket, k).unwrap();
        let rhs = &tx * &ty - &ty * &tx;
        prop_assert!((lhs - rhs).iter().all(|z| z.norm() < 1e-9));
    }

    #[test]
    fn complementary_weights_negate(n in 1usize..=8, k_seed in 0usize..100) {
        let k = 1 + k_seed % n;
        for set in weights_of_ext(n, k).unwrap() {
            let complement: Vec<usize> = (0..=n).filter(|i| !set.indices().contains(i)).collect();
            if complement.is_empty() || complement.len() > n {
                continue;
            }
            let other = WeightIndexSet::new(n, complement).unwrap();
            prop_assert!((project_weight(n, &set) + project_weight(n, &other)).norm() < 1e-12);
        }
    }

    #[test]
    fn coxeter_rotation_permutes_weights(n in 1usize..=7, k_seed in 0usize..100) {
        let k = 1 + k_seed % n;
        let points: Vec<Complex64> = weights_of_ext(n, k).unwrap().iter().map(|w| project_weight(n, w)).collect();
        let rot = Complex64::from_polar(1.0, -2.0 * PI / (n as f64 + 1.0));
        for p in &points {
            prop_assert!(contains_point(&points, p * rot));
        }
    }

    #[test]
    fn off_shell_identity((n, w) in antisymmetric_w()) {
        let c = w_commutator(&build_w(n, &w).unwrap());
        let r = toda_rhs(&w);
        let scale = c.iter().fold(1.0f64, |a, x| a.max(x.abs()));
        prop_assert!(c.trace().abs() < 1e-12 * scale);
        for i in 0..=n {
            prop_assert!((c[(i, i)] - r[i]).abs() < 1e-12 * scale);
            for j in 0..=n {
                if i != j {
                    prop_assert_eq!(c[(i, j)], 0.0);
                }
            }
        }
    }

    #[test]
    fn w_matrix_is_cyclic_of_order_n_plus_one((n, w) in antisymmetric_w()) {
        let m = build_w(n, &w).unwrap();
        let power = m.pow(n as u32 + 1);
        let ident = nalgebra::DMatrix::<f64>::identity(n + 1, n + 1);
        prop_assert!((power - ident).amax() < 1e-10);
    }
}

#[test]
fn soliton_degree_and_masses() {
    for n in 1..=7usize {
        let masses: Vec<f64> = (1..=n).map(|k| mass(n, k)).collect();
        for k in 1..=n {
            let graph = soliton_graph(n, k, &StokesVector::binomial(n)).unwrap();
            for v in 0..graph.vertices.len() {
                assert_eq!(graph.degree(v), k * (n + 1 - k), "n={n} k={k}");
            }
            for e in &graph.edges {
                assert!(masses.iter().any(|m| (m - e.mass).abs() < 1e-12));
            }
        }
    }
}

#[test]
fn region_boundary_accepted() {
    for n in 1..=8 {
        assert!(TodaParams::cpn(n).unwrap().on_boundary());
    }
}

#[test]
fn sign_structure_at_projective_points() {
    let grid = RadialGrid::default();
    for n in 1..=5usize {
        let sol = solve_radial(&TodaParams::cpn(n).unwrap(), &grid, 1e-10).unwrap();
        for p in (0..n).filter(|p| 2 * p < n) {
            for j in 1..grid.count - 1 {
                assert!(sol.w[(j, p)] < 0.0, "n={n} p={p} node {j}");
            }
        }
        for j in 0..grid.count {
            for i in 0..=n {
                assert_eq!(sol.w[(j, i)], -sol.w[(j, n - i)]);
            }
        }
    }
}

#[test]
fn boundary_flux_matches_m() {
    let grid = RadialGrid::default();
    for (n, m) in [
        (1usize, vec![-0.3, 0.3]),
        (2, vec![-0.5, 0.0, 0.5]),
        (3, vec![-0.9, -0.3, 0.3, 0.9]),
        (3, vec![-1.5, -0.5, 0.5, 1.5]),
    ] {
        let sol = solve_radial(&TodaParams::from_m(n, &m, None).unwrap(), &grid, 1e-10).unwrap();
        for (flux, mi) in sol.boundary_flux().iter().zip(&m) {
            assert!((flux + mi).abs() <= 0.02 * mi.abs().max(1e-9), "n={n} flux {flux} vs m {mi}");
        }
    }
}

#[test]
fn grid_convergence_within_spread() {
    for (n, m) in [
        (1usize, vec![-0.5, 0.5]),
        (2, vec![-0.5, 0.0, 0.5]),
        (3, vec![-0.9, -0.3, 0.3, 0.9]),
    ] {
        let params = TodaParams::from_m(n, &m, None).unwrap();
        let fit = |nodes| {
            let grid = RadialGrid::from_x(1e-3, 8.0, nodes).unwrap();
            let sol = solve_radial(&params, &grid, 1e-10).unwrap();
            extract_stokes(&sol, (1.5, 3.5), Template::Bessel).unwrap()
        };
        for (coarse, fine) in [(1000, 2000), (2000, 4000)] {
            let (c, f) = (fit(coarse), fit(fine));
            for k in 0..c.s_hat.len() {
                let change = (c.s_hat[k] - f.s_hat[k]).abs() / f.s_hat[k].abs();
                assert!(change < c.spread[k], "n={n} k={} change {change} spread {}", k + 1, c.spread[k]);
            }
        }
    }
}
