//! Exterior powers at group and algebra level, weights of ∧^k, soliton
//! polytopes and the holomorphic data η.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{check_rank, Error, Result};
use crate::linalg::{
    self, binomial, combinations, eigenvalues, multiset_distance, rational_rank, real, CMatrix,
};
use crate::roots::{particle_class, root_of_unity, CoxeterDiagram, RootA};
use crate::stokes::{steinberg_monodromy, StokesVector};

/// Lexicographic rank of a sorted k-subset of {0, …, m-1}.
fn subset_rank(m: usize, subset: &[usize]) -> usize {
    let k = subset.len();
    let mut rank = 0usize;
    let mut next = 0usize;
    for (t, &c) in subset.iter().enumerate() {
        for v in next..c {
            rank += binomial(m - 1 - v, k - 1 - t) as usize;
        }
        next = c + 1;
    }
    rank
}

fn check_degree(m: usize, k: usize) -> Result<()> {
    if k < 1 || k > m {
        Err(Error::ExteriorDegree { k, max: m })
    } else {
        Ok(())
    }
}

/// `∧^k A`: the matrix of k×k minors, rows and columns indexed by k-subsets
/// in lexicographic order.
///
/// Minors are built level by level with a Laplace expansion along the first
/// selected row, reusing the (l-1)-minors, so no pivoting is involved.
pub fn ext_power_group(a: &CMatrix, k: usize) -> Result<CMatrix> {
    let m = a.nrows();
    if a.ncols() != m {
        return Err(Error::InvalidInput("exterior power of a non-square matrix".into()));
    }
    check_degree(m, k)?;
    let mut prev = CMatrix::from_element(1, 1, real(1.0));
    let mut prev_sets: Vec<Vec<usize>> = vec![Vec::new()];
    for level in 1..=k {
        let sets = combinations(m, level);
        let mut next = CMatrix::zeros(sets.len(), sets.len());
        for (ri, rows) in sets.iter().enumerate() {
            let lead = rows[0];
            let rest_rank = subset_rank(m, &rows[1..]);
            debug_assert_eq!(prev_sets[rest_rank], rows[1..]);
            for (ci, cols) in sets.iter().enumerate() {
                let mut acc = Complex64::zero();
                let mut minor_cols = Vec::with_capacity(level - 1);
                for t in 0..level {
                    let entry = a[(lead, cols[t])];
                    if entry.is_zero() {
                        continue;
                    }
                    minor_cols.clear();
                    minor_cols.extend(cols.iter().enumerate().filter(|&(s, _)| s != t).map(|(_, &c)| c));
                    let term = entry * prev[(rest_rank, subset_rank(m, &minor_cols))];
                    if t % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                next[(ri, ci)] = acc;
            }
        }
        prev = next;
        prev_sets = sets;
    }
    Ok(prev)
}

/// Derivation action of X on ∧^k: X applied in one tensor slot at a time.
pub fn ext_power_algebra(x: &CMatrix, k: usize) -> Result<CMatrix> {
    let m = x.nrows();
    if x.ncols() != m {
        return Err(Error::InvalidInput("exterior power of a non-square matrix".into()));
    }
    check_degree(m, k)?;
    let sets = combinations(m, k);
    let mut out = CMatrix::zeros(sets.len(), sets.len());
    for (ci, cols) in sets.iter().enumerate() {
        out[(ci, ci)] = cols.iter().map(|&c| x[(c, c)]).sum();
        // replace slot `b` by `a`, then re-sort
        for &b in cols {
            for a in (0..m).filter(|a| !cols.contains(a)) {
                let coeff = x[(a, b)];
                if coeff.is_zero() {
                    continue;
                }
                let mut target: Vec<usize> = cols.iter().copied().filter(|&c| c != b).collect();
                let between = target.iter().filter(|&&c| c > a.min(b) && c < a.max(b)).count();
                target.push(a);
                target.sort_unstable();
                let ri = subset_rank(m, &target);
                let sign = if between % 2 == 0 { 1.0 } else { -1.0 };
                out[(ri, ci)] += coeff * sign;
            }
        }
    }
    Ok(out)
}

/// A sorted k-subset {i_1 < … < i_k} of {0..n}, standing for the weight
/// `x_{i_1} + … + x_{i_k}` and the state `e_{i_1} ∧ … ∧ e_{i_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct WeightIndexSet(Vec<usize>);

impl WeightIndexSet {
    pub fn new(n: usize, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        let distinct = indices.windows(2).all(|w| w[0] < w[1]);
        if !distinct || indices.iter().any(|&i| i > n) || indices.is_empty() {
            return Err(Error::InvalidInput(format!(
                "{indices:?} is not a set of distinct indices in 0..={n}"
            )));
        }
        Ok(WeightIndexSet(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Digits run together (`"025"`); comma separated once an index exceeds 9.
    pub fn label(&self) -> String {
        if self.0.iter().all(|&i| i < 10) {
            self.0.iter().map(|i| i.to_string()).collect()
        } else {
            self.0.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
        }
    }

    fn shared(&self, other: &WeightIndexSet) -> usize {
        self.0.iter().filter(|i| other.0.contains(i)).count()
    }
}

pub fn weights_of_ext(n: usize, k: usize) -> Result<Vec<WeightIndexSet>> {
    check_rank(n)?;
    if k < 1 || k > n {
        return Err(Error::ExteriorDegree { k, max: n });
    }
    Ok(combinations(n + 1, k).into_iter().map(WeightIndexSet).collect())
}

/// `-(ζ^{i_1} + … + ζ^{i_k})`.
pub fn project_weight(n: usize, set: &WeightIndexSet) -> Complex64 {
    -set.0.iter().map(|&i| root_of_unity(n, i as i64)).sum::<Complex64>()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolitonVertex {
    pub state: WeightIndexSet,
    pub position: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolitonEdge {
    /// Vertex indices with `from < to`.
    pub from: usize,
    pub to: usize,
    /// The root `λ_from - λ_to`.
    pub root: RootA,
    pub class: usize,
    pub mass: f64,
    pub multiplicity: Complex64,
}

/// Vacua of the ∧^k model with the solitons between them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolitonGraph {
    pub n: usize,
    pub k: usize,
    pub vertices: Vec<SolitonVertex>,
    pub edges: Vec<SolitonEdge>,
}

impl SolitonGraph {
    pub fn vertex_index(&self, state: &[usize]) -> Option<usize> {
        self.vertices.iter().position(|v| v.state.indices() == state)
    }

    pub fn edge_between(&self, a: &[usize], b: &[usize]) -> Option<&SolitonEdge> {
        let (a, b) = (self.vertex_index(a)?, self.vertex_index(b)?);
        let (from, to) = (a.min(b), a.max(b));
        self.edges.iter().find(|e| e.from == from && e.to == to)
    }

    pub fn degree(&self, vertex: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.from == vertex || e.to == vertex)
            .count()
    }

    /// The projected vertices grouped as a Coxeter-plane diagram; coincident
    /// projections are merged with all their labels.
    pub fn diagram(&self) -> CoxeterDiagram {
        CoxeterDiagram::from_labelled_points(
            self.n,
            1,
            self.vertices.iter().map(|v| (v.position, v.state.label())),
        )
    }
}

/// Soliton polytope of ∧^k C^{n+1}: an edge joins two weights whose
/// difference is a root, i.e. whose index sets share k-1 elements.
pub fn soliton_graph(n: usize, k: usize, stokes: &StokesVector) -> Result<SolitonGraph> {
    let states = weights_of_ext(n, k)?;
    if stokes.n() != n {
        return Err(Error::InvalidInput(format!(
            "Stokes data has {} entries, expected {n}",
            stokes.values().len()
        )));
    }
    let vertices: Vec<SolitonVertex> = states
        .into_iter()
        .map(|state| SolitonVertex {
            position: project_weight(n, &state),
            state,
        })
        .collect();
    let mut edges = Vec::new();
    for a in 0..vertices.len() {
        for b in a + 1..vertices.len() {
            let (sa, sb) = (&vertices[a].state, &vertices[b].state);
            if sa.shared(sb) + 1 != k {
                continue;
            }
            let i = *sa.indices().iter().find(|i| !sb.indices().contains(i)).expect("k-1 shared");
            let j = *sb.indices().iter().find(|j| !sa.indices().contains(j)).expect("k-1 shared");
            let root = RootA { i, j };
            let class = particle_class(n, root);
            edges.push(SolitonEdge {
                from: a,
                to: b,
                root,
                class: class.k,
                mass: class.mass,
                multiplicity: stokes.get(class.k),
            });
        }
    }
    Ok(SolitonGraph {
        n,
        k,
        vertices,
        edges,
    })
}

/// How η(z) is written out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EtaPresentation {
    /// Cyclic entries `z^{k_i}`, the coefficient of `dz`.
    Exponents,
    /// `z · η(z)`, the coefficient of `dz/z`; for the CP^n data this has a
    /// single entry `z` and all other entries 1.
    Logarithmic,
}

/// Holomorphic data `ω = λ^{-1} η dz` with η the cyclic matrix of `z^{k_i}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EtaConnection {
    pub n: usize,
    pub k: Vec<f64>,
    /// Power of the spectral parameter λ in front of η (always -1); kept as
    /// metadata, never evaluated.
    pub lambda_power: i32,
}

impl EtaConnection {
    pub fn new(n: usize, k: Vec<f64>) -> Result<Self> {
        check_rank(n)?;
        if k.len() != n + 1 {
            return Err(Error::InvalidInput(format!("expected {} exponents, got {}", n + 1, k.len())));
        }
        if let Some(i) = k.iter().position(|&x| x < -1.0 - 1e-12) {
            return Err(Error::Region(format!("k_{i} = {} < -1", k[i])));
        }
        for i in 1..=n {
            if (k[i] - k[n + 1 - i]).abs() > 1e-12 {
                return Err(Error::Region(format!(
                    "k_{i} = k_{} violated: {} vs {}",
                    n + 1 - i,
                    k[i],
                    k[n + 1 - i]
                )));
            }
        }
        Ok(EtaConnection { n, k, lambda_power: -1 })
    }

    /// The CP^n data `k = (0, -1, …, -1)`.
    pub fn cpn(n: usize) -> Self {
        let mut k = vec![-1.0; n + 1];
        k[0] = 0.0;
        EtaConnection { n, k, lambda_power: -1 }
    }

    /// η(z): `z^{k_0}` in the top-right corner, `z^{k_i}` on the subdiagonal.
    pub fn matrix(&self, z: f64) -> Result<CMatrix> {
        self.matrix_in(z, EtaPresentation::Exponents)
    }

    pub fn matrix_in(&self, z: f64, presentation: EtaPresentation) -> Result<CMatrix> {
        if !(z > 0.0) {
            return Err(Error::InvalidInput(format!("η is evaluated for z > 0, got {z}")));
        }
        let n = self.n;
        let factor = match presentation {
            EtaPresentation::Exponents => 1.0,
            EtaPresentation::Logarithmic => z,
        };
        let mut eta = CMatrix::zeros(n + 1, n + 1);
        eta[(0, n)] += real(factor * z.powf(self.k[0]));
        for i in 1..=n {
            eta[(i, i - 1)] += real(factor * z.powf(self.k[i]));
        }
        Ok(eta)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SatakeCheck {
    pub name: String,
    pub passed: bool,
    pub error: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SatakeReport {
    pub n: usize,
    pub k: usize,
    pub checks: Vec<SatakeCheck>,
    pub passed: bool,
}

pub const SATAKE_TOLERANCE: f64 = 1e-8;

/// Sums of k distinct entries, one per k-subset.
pub fn k_fold_sums(values: &[Complex64], k: usize) -> Vec<Complex64> {
    combinations(values.len(), k)
        .into_iter()
        .map(|set| set.iter().map(|&i| values[i]).sum())
        .collect()
}

/// Jordan block sizes (descending) of a nilpotent matrix from the ranks of its powers.
pub fn nilpotent_jordan_type(ranks: &[usize]) -> Vec<usize> {
    // ranks[j] = rank(N^j), ranks[0] = dimension, ending at 0
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = Vec::new();
    for (j, &count) in at_least.iter().enumerate() {
        let next = at_least.get(j + 1).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(j + 1, count - next));
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Block sizes of a regular unipotent element of SL_{n+1} acting on ∧^k,
/// read off from the weights of `x_0 = diag(n/2, …, -n/2)` on ∧^k.
pub fn principal_jordan_type(n: usize, k: usize) -> Vec<usize> {
    // doubled weights are integers
    let doubled: Vec<i64> = combinations(n + 1, k)
        .into_iter()
        .map(|set| set.iter().map(|&i| n as i64 - 2 * i as i64).sum())
        .collect();
    let mult = |h: i64| doubled.iter().filter(|&&w| w == h).count();
    let top = doubled.iter().copied().max().unwrap_or(0);
    let mut sizes = Vec::new();
    let mut h = top;
    while h >= 0 {
        let count = mult(h) - mult(h + 2);
        sizes.extend(std::iter::repeat_n(h as usize + 1, count));
        h -= 1;
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

fn to_big(a: &CMatrix) -> Option<Vec<Vec<BigInt>>> {
    let mut out = Vec::with_capacity(a.nrows());
    for i in 0..a.nrows() {
        let mut row = Vec::with_capacity(a.ncols());
        for j in 0..a.ncols() {
            let z = a[(i, j)];
            let r = z.re.round();
            if z.im.abs() > 1e-9 || (z.re - r).abs() > 1e-9 || r.abs() > 9.0e15 {
                return None;
            }
            row.push(BigInt::from(r as i64));
        }
        out.push(row);
    }
    Some(out)
}

fn big_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for l in 0..n {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

/// Ranks of N^0, N^1, … until zero (or `dim + 1` powers), exact for integer matrices.
pub fn power_ranks(nil: &CMatrix) -> Vec<usize> {
    let dim = nil.nrows();
    let mut ranks = vec![dim];
    if let Some(base) = to_big(nil) {
        let mut power = base.clone();
        for _ in 0..=dim {
            let rows = power
                .iter()
                .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
                .collect();
            let r = rational_rank(rows);
            ranks.push(r);
            if r == 0 {
                break;
            }
            power = big_mul(&power, &base);
        }
    } else {
        let mut power = nil.clone();
        for _ in 0..=dim {
            let r = linalg::numerical_rank(&power, 1e-8);
            ranks.push(r);
            if r == 0 {
                break;
            }
            power = &power * nil;
        }
    }
    ranks
}

/// Functoriality checks for Θ = ∧^k applied to the monodromy data and to η.
///
/// * `trace`: `tr ∧^k C(S) = s_k`.
/// * `spectrum`: eigenvalues of `θ(η(z))` are the k-fold sums of eigenvalues
///   of `η(z)` for the CP^n data, at z ∈ {0.5, 1, 2}, in both presentations.
/// * `unipotent` (binomial S only): `∧^k M` is unipotent with the Jordan type
///   of a regular unipotent element acting on ∧^k.
pub fn satake_check(n: usize, k: usize, stokes: &StokesVector) -> Result<SatakeReport> {
    check_rank(n)?;
    if k < 1 || k > n {
        return Err(Error::ExteriorDegree { k, max: n });
    }
    if stokes.n() != n {
        return Err(Error::InvalidInput(format!("Stokes data for rank {}, expected {n}", stokes.n())));
    }
    let mut checks = Vec::new();

    let monodromy = steinberg_monodromy(stokes);
    let lifted = ext_power_group(monodromy.matrix(), k)?;
    let trace = lifted.trace();
    let err = (trace - stokes.get(k)).norm();
    checks.push(SatakeCheck {
        name: "trace".into(),
        passed: err < SATAKE_TOLERANCE,
        error: err,
        detail: format!("tr ∧^{k} M = {:.12} vs s_{k} = {:.12}", trace, stokes.get(k)),
    });

    let eta = EtaConnection::cpn(n);
    let mut worst: f64 = 0.0;
    for z in [0.5, 1.0, 2.0] {
        for presentation in [EtaPresentation::Exponents, EtaPresentation::Logarithmic] {
            let base = eta.matrix_in(z, presentation)?;
            let sums = k_fold_sums(&eigenvalues(&base)?, k);
            let spectrum = eigenvalues(&ext_power_algebra(&base, k)?)?;
            let d = multiset_distance(&spectrum, &sums).unwrap_or(f64::INFINITY);
            worst = worst.max(d);
        }
    }
    checks.push(SatakeCheck {
        name: "spectrum".into(),
        passed: worst < SATAKE_TOLERANCE,
        error: worst,
        detail: format!("max eigenvalue mismatch of θ(η) over z ∈ {{0.5, 1, 2}}: {worst:.3e}"),
    });

    if stokes.is_binomial(1e-12) {
        let dim = lifted.nrows();
        let nil = &lifted - CMatrix::identity(dim, dim);
        let ranks = power_ranks(&nil);
        let nilpotent = ranks.last() == Some(&0);
        let observed = if nilpotent { nilpotent_jordan_type(&ranks) } else { Vec::new() };
        let expected = principal_jordan_type(n, k);
        let passed = nilpotent && observed == expected;
        checks.push(SatakeCheck {
            name: "unipotent".into(),
            passed,
            error: if passed { 0.0 } else { 1.0 },
            detail: format!(
                "rank sequence {ranks:?}, Jordan blocks {observed:?}, expected {expected:?}{}",
                if expected.len() == 1 { " (single block)" } else { "" }
            ),
        });
    }

    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let passed = checks.iter().all(|c| c.passed);
    Ok(SatakeReport { n, k, checks, passed })
}

/// Positions of all ∧^k weights as a labelled diagram.
pub fn weight_diagram(n: usize, k: usize) -> Result<CoxeterDiagram> {
    let weights = weights_of_ext(n, k)?;
    Ok(CoxeterDiagram::from_labelled_points(
        n,
        1,
        weights.iter().map(|w| (project_weight(n, w), w.label())),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_matrix(rng: &mut StdRng, m: usize, scale: f64) -> CMatrix {
        CMatrix::from_fn(m, m, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale
        })
    }

    fn diag(values: &[f64]) -> CMatrix {
        CMatrix::from_fn(values.len(), values.len(), |i, j| real(if i == j { values[i] } else { 0.0 }))
    }

    #[test]
    fn subset_rank_matches_enumeration() {
        for m in 1..=7 {
            for k in 0..=m {
                for (idx, set) in combinations(m, k).iter().enumerate() {
                    assert_eq!(subset_rank(m, set), idx);
                }
            }
        }
    }

    #[test]
    fn group_power_of_diagonal() {
        let g = ext_power_group(&diag(&[1.0, 2.0, 3.0]), 2).unwrap();
        assert!(max_abs_diff(&g, &diag(&[2.0, 3.0, 6.0])) < 1e-14);
        assert!((g.trace() - real(11.0)).norm() < 1e-14);
        for k in 1..=4 {
            let dim = binomial(4, k) as usize;
            let g = ext_power_group(&CMatrix::identity(4, 4), k).unwrap();
            assert!(max_abs_diff(&g, &CMatrix::identity(dim, dim)) < 1e-15);
        }
        assert_eq!(
            ext_power_group(&CMatrix::identity(3, 3), 4),
            Err(Error::ExteriorDegree { k: 4, max: 3 })
        );
    }

    #[test]
    fn group_power_top_degree_is_determinant() {
        let mut rng = StdRng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 5, 1.0);
        let top = ext_power_group(&a, 5).unwrap();
        assert!((top[(0, 0)] - a.determinant()).norm() < 1e-12);
    }

    #[test]
    fn trace_of_third_power_is_e3_of_eigenvalues() {
        let mut rng = StdRng::seed_from_u64(11);
        let a = random_matrix(&mut rng, 5, 1.0);
        let e3 = linalg::elementary_symmetric(&eigenvalues(&a).unwrap())[3];
        let t = ext_power_group(&a, 3).unwrap().trace();
        assert!((t - e3).norm() < 1e-8);
    }

    #[test]
    fn group_power_is_multiplicative() {
        let mut rng = StdRng::seed_from_u64(5);
        for k in 1..=4 {
            let a = random_matrix(&mut rng, 4, 1.0);
            let b = random_matrix(&mut rng, 4, 1.0);
            let lhs = ext_power_group(&(&a * &b), k).unwrap();
            let rhs = ext_power_group(&a, k).unwrap() * ext_power_group(&b, k).unwrap();
            assert!(max_abs_diff(&lhs, &rhs) < 1e-8);
        }
    }

    #[test]
    fn algebra_power_of_diagonal() {
        let x = diag(&[1.5, -2.0, 7.0]);
        let got = ext_power_algebra(&x, 2).unwrap();
        assert!(max_abs_diff(&got, &diag(&[-0.5, 8.5, 5.0])) < 1e-15);
    }

    #[test]
    fn algebra_power_exponentiates_to_group_power() {
        let mut rng = StdRng::seed_from_u64(17);
        for k in 1..=3 {
            let x = random_matrix(&mut rng, 4, 0.7);
            let lhs = ext_power_algebra(&x, k).unwrap().exp();
            let rhs = ext_power_group(&x.exp(), k).unwrap();
            assert!(max_abs_diff(&lhs, &rhs) < 1e-8, "k={k}");
        }
    }

    #[test]
    fn algebra_power_trace_count() {
        let mut rng = StdRng::seed_from_u64(23);
        let x = random_matrix(&mut rng, 6, 1.0);
        for k in 1..=6 {
            let t = ext_power_algebra(&x, k).unwrap().trace();
            let want = x.trace() * binomial(5, k - 1) as f64;
            assert!((t - want).norm() < 1e-10);
        }
    }

    #[test]
    fn algebra_power_is_a_lie_homomorphism() {
        let mut rng = StdRng::seed_from_u64(29);
        let x = random_matrix(&mut rng, 5, 1.0);
        let y = random_matrix(&mut rng, 5, 1.0);
        let bracket = &x * &y - &y * &x;
        let tx = ext_power_algebra(&x, 2).unwrap();
        let ty = ext_power_algebra(&y, 2).unwrap();
        let lhs = ext_power_algebra(&bracket, 2).unwrap();
        assert!(max_abs_diff(&lhs, &(&tx * &ty - &ty * &tx)) < 1e-12);
    }

    #[test]
    fn weight_enumeration() {
        assert_eq!(weights_of_ext(5, 3).unwrap().len(), 20);
        let w = weights_of_ext(5, 1).unwrap();
        assert_eq!(w.iter().map(|s| s.label()).collect::<Vec<_>>(), ["0", "1", "2", "3", "4", "5"]);
        assert_eq!(weights_of_ext(3, 2).unwrap().len(), 6);
        assert!(weights_of_ext(3, 4).is_err());
        assert!(weights_of_ext(3, 0).is_err());
    }

    #[test]
    fn weight_projection_examples() {
        let p = |v: Vec<usize>| project_weight(5, &WeightIndexSet::new(5, v).unwrap());
        assert!(p(vec![0, 2, 4]).norm() < 1e-12);
        assert!((p(vec![3, 4, 5]) - Complex64::new(1.0, 3f64.sqrt())).norm() < 1e-12);
        assert!((p(vec![0, 3, 4]).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn complement_negates_projection() {
        for n in 1..=7 {
            for k in 1..=n {
                for w in weights_of_ext(n, k).unwrap() {
                    let rest: Vec<usize> = (0..=n).filter(|i| !w.indices().contains(i)).collect();
                    let p = project_weight(n, &w);
                    let q = project_weight(n, &WeightIndexSet::new(n, rest).unwrap());
                    assert!((p + q).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn grassmannian_solitons() {
        let s = StokesVector::binomial(5);
        let g = soliton_graph(5, 3, &s).unwrap();
        let e = g.edge_between(&[0, 2, 5], &[2, 4, 5]).unwrap();
        assert_eq!(e.class, 2);
        assert!((e.mass - 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(e.multiplicity, real(15.0));
        assert!(g.edge_between(&[0, 2, 4], &[1, 3, 5]).is_none());
        assert!(g.edge_between(&[0, 3, 4], &[2, 4, 5]).is_none());
        assert_eq!(g.diagram().points.len(), 13);
    }

    #[test]
    fn soliton_edge_mass_is_chord_length() {
        for n in 1..=6 {
            for k in 1..=n {
                let g = soliton_graph(n, k, &StokesVector::binomial(n)).unwrap();
                for e in &g.edges {
                    let chord = (g.vertices[e.from].position - g.vertices[e.to].position).norm();
                    assert!((chord - e.mass).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn soliton_graph_rejects_wrong_length() {
        let s = StokesVector::binomial(4);
        assert!(soliton_graph(5, 2, &s).is_err());
    }

    #[test]
    fn eta_presets() {
        let n = 3;
        let eta = EtaConnection::cpn(n);
        let z = 1.7;
        let log = eta.matrix_in(z, EtaPresentation::Logarithmic).unwrap();
        assert!((log[(0, n)] - real(z)).norm() < 1e-15);
        for i in 1..=n {
            assert!((log[(i, i - 1)] - real(1.0)).norm() < 1e-15);
        }
        // μ^{n+1} - z
        let ev = eigenvalues(&log).unwrap();
        for mu in ev {
            assert!((mu.powi(4) - real(z)).norm() < 1e-12);
        }
        let flat = EtaConnection::new(2, vec![0.0; 3]).unwrap().matrix(5.0).unwrap();
        let mut perm = CMatrix::zeros(3, 3);
        perm[(0, 2)] = real(1.0);
        perm[(1, 0)] = real(1.0);
        perm[(2, 1)] = real(1.0);
        assert_eq!(flat, perm);
        assert!(eta.matrix(0.0).is_err());
        assert!(EtaConnection::new(2, vec![0.0, -2.0, -2.0]).is_err());
        assert!(EtaConnection::new(3, vec![0.0, 1.0, 0.0, 0.5]).is_err());
    }

    #[test]
    fn eta_at_one_has_roots_of_unity() {
        let n = 5;
        let ev = eigenvalues(&EtaConnection::cpn(n).matrix(1.0).unwrap()).unwrap();
        let want: Vec<Complex64> = (0..=n as i64).map(|p| root_of_unity(n, p)).collect();
        assert!(multiset_distance(&ev, &want).unwrap() < 1e-12);
    }

    #[test]
    fn jordan_types() {
        assert_eq!(principal_jordan_type(3, 1), vec![4]);
        assert_eq!(principal_jordan_type(3, 2), vec![5, 1]);
        assert_eq!(principal_jordan_type(2, 2), vec![3]);
        assert_eq!(nilpotent_jordan_type(&[6, 4, 3, 2, 1, 0]), vec![5, 1]);
        for n in 1..=7 {
            for k in 1..=n {
                let t = principal_jordan_type(n, k);
                assert_eq!(t.iter().sum::<usize>() as u64, binomial(n + 1, k));
            }
        }
    }

    #[test]
    fn satake_small_cases() {
        let r = satake_check(3, 2, &StokesVector::binomial(3)).unwrap();
        assert!(r.passed, "{r:?}");
        let trace = r.checks.iter().find(|c| c.name == "trace").unwrap();
        assert!(trace.detail.contains("6.0"));
        let r = satake_check(4, 1, &StokesVector::binomial(4)).unwrap();
        assert!(r.passed);
        assert!(r.checks.iter().any(|c| c.name == "unipotent" && c.detail.contains("single block")));
    }
}
