use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use pathfinding::prelude::{kuhn_munkres, Matrix};
use rayon::prelude::*;

use super::build_matrix_at;
use crate::algebra::{interpolate_consecutive, AlgebraError, ExactInt, IntPolynomial};
use crate::graph::ColoredBipartiteGraph;

/// Determinants of `M_G` on the grid `λ ∈ 0..=n(n-1)/2`, `x ∈ 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationGrid {
    pub lambda_points: Vec<i64>,
    pub x_points: Vec<i64>,
    /// `det_values[j][k]` at `λ = lambda_points[j]`, `x = x_points[k]`.
    pub det_values: Vec<Vec<ExactInt>>,
}

pub fn lambda_bound(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl EvaluationGrid {
    pub fn evaluate(g: &ColoredBipartiteGraph, threads: usize) -> Result<Self, AlgebraError> {
        let n = g.n();
        let lambda_points: Vec<i64> = (0..=lambda_bound(n) as i64).collect();
        let x_points: Vec<i64> = (0..=n as i64).collect();
        let det_values = lambda_points.iter().map(|&l| dets_at(g, l, threads)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self { lambda_points, x_points, det_values })
    }

    /// Coefficients in `x` of `D_G(x, λ_j)`, low to high, padded to `n + 1`.
    pub fn x_coefficients(&self, j: usize) -> Result<Vec<ExactInt>, AlgebraError> {
        pad(interpolate_consecutive(&self.det_values[j])?, self.x_points.len())
    }
}

fn pad(p: IntPolynomial, len: usize) -> Result<Vec<ExactInt>, AlgebraError> {
    let mut c = p.into_coeffs();
    assert!(c.len() <= len, "x-degree exceeds n");
    c.resize(len, BigInt::zero());
    Ok(c)
}

/// Runs `f` on a dedicated pool when `threads > 1`.
fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    if threads <= 1 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn dets_at(g: &ColoredBipartiteGraph, lambda: i64, threads: usize) -> Result<Vec<ExactInt>, AlgebraError> {
    let lam = BigInt::from(lambda);
    let det = |x: usize| build_matrix_at(g, &BigInt::from(x), &lam).bareiss_det();
    if threads <= 1 {
        (0..=g.n()).map(det).collect()
    } else {
        with_threads(threads, || (0..=g.n()).into_par_iter().map(det).collect())
    }
}

/// `[x^k] D_G(x, λ)` for `k = 0..=n` at one `λ`.
pub fn x_coefficients_at(
    g: &ColoredBipartiteGraph,
    lambda: i64,
    threads: usize,
) -> Result<Vec<ExactInt>, AlgebraError> {
    pad(interpolate_consecutive(&dets_at(g, lambda, threads)?)?, g.n() + 1)
}

/// Whether `P_t(λ) ≢ 0`, scanning `λ = 0, 1, …, n(n-1)/2` and stopping at the
/// first nonzero sample. Complete because `deg P_t ≤ n(n-1)/2`.
pub fn pt_nonvanishing(g: &ColoredBipartiteGraph, t: i64) -> Result<bool, AlgebraError> {
    let Ok(t) = usize::try_from(t) else { return Ok(false) };
    if t > g.n() {
        return Ok(false);
    }
    Ok(nonvanishing_targets(g, &[t], 1)?.contains(&t))
}

/// The subset of `candidates` whose `P_t` is not identically zero. Stops as
/// soon as every candidate has shown a nonzero sample.
pub fn nonvanishing_targets(
    g: &ColoredBipartiteGraph,
    candidates: &[usize],
    threads: usize,
) -> Result<BTreeSet<usize>, AlgebraError> {
    let n = g.n();
    let mut pending: BTreeSet<usize> = candidates.iter().copied().filter(|&t| t <= n).collect();
    let mut found = BTreeSet::new();
    for lambda in 0..=lambda_bound(n) as i64 {
        if pending.is_empty() {
            break;
        }
        let coeffs = x_coefficients_at(g, lambda, threads)?;
        pending.retain(|&t| {
            let hit = !coeffs[t].is_zero();
            if hit {
                found.insert(t);
            }
            !hit
        });
    }
    Ok(found)
}

/// The full `P_t(λ)`: `[x^t]` at every `λ` sample, then interpolation in `λ`.
pub fn pt_polynomial(g: &ColoredBipartiteGraph, t: i64) -> Result<IntPolynomial, AlgebraError> {
    let n = g.n();
    let Some(t) = usize::try_from(t).ok().filter(|&t| t <= n) else {
        return Ok(IntPolynomial::zero());
    };
    let samples = (0..=lambda_bound(n) as i64)
        .map(|l| x_coefficients_at(g, l, 1).map(|mut c| c.swap_remove(t)))
        .collect::<Result<Vec<_>, _>>()?;
    let p = interpolate_consecutive(&samples)?;
    assert!(p.degree().is_none_or(|d| d <= lambda_bound(n)), "λ-degree exceeds n(n-1)/2");
    Ok(p)
}

/// All `P_t` at once, indexed by `t = 0..=n`.
pub fn pt_polynomials(g: &ColoredBipartiteGraph, threads: usize) -> Result<Vec<IntPolynomial>, AlgebraError> {
    let grid = EvaluationGrid::evaluate(g, threads)?;
    let rows = (0..grid.lambda_points.len()).map(|j| grid.x_coefficients(j)).collect::<Result<Vec<_>, _>>()?;
    (0..=g.n()).map(|t| interpolate_consecutive(&rows.iter().map(|r| r[t].clone()).collect::<Vec<_>>())).collect()
}

/// Minimum and maximum red count over perfect matchings, by two assignment
/// problems; `None` when there is no perfect matching.
pub fn red_count_range(g: &ColoredBipartiteGraph) -> Option<(usize, usize)> {
    let n = g.n();
    if n == 0 {
        return Some((0, 0));
    }
    let forbidden = -(2 * n as i64 + 2);
    let solve = |sign: i64| -> Option<usize> {
        let mut w = Matrix::new(n, n, forbidden);
        for e in g.edges() {
            let v = sign * e.color.bit() as i64;
            if w[(e.row, e.col)] < v {
                w[(e.row, e.col)] = v;
            }
        }
        let (total, _) = kuhn_munkres(&w);
        (total > forbidden + n as i64).then(|| (sign * total) as usize)
    };
    Some((solve(-1)?, solve(1)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_family, Coloring, Edge, Family, FamilySpec};

    fn k22_red00() -> ColoredBipartiteGraph {
        ColoredBipartiteGraph::simple(2, vec![Edge::red(0, 0), Edge::blue(0, 1), Edge::blue(1, 0), Edge::blue(1, 1)])
            .unwrap()
    }

    #[test]
    fn nonvanishing_examples() {
        let k22 = gen_family(&FamilySpec::new(Family::Knn { n: 2 }), 0).unwrap();
        assert!(pt_nonvanishing(&k22, 0).unwrap());
        assert!(!pt_nonvanishing(&k22, 1).unwrap());
        let k44 = gen_family(&FamilySpec::colored(Family::Knn { n: 4 }, Coloring::Diagonal), 0).unwrap();
        assert!(!pt_nonvanishing(&k44, 3).unwrap());
        assert!(pt_nonvanishing(&k44, 4).unwrap());
        assert!(!pt_nonvanishing(&k44, -1).unwrap());
    }

    #[test]
    fn polynomial_examples() {
        let g = k22_red00();
        assert_eq!(pt_polynomial(&g, 1).unwrap(), IntPolynomial::linear(1));
        assert_eq!(pt_polynomial(&g, 0).unwrap(), IntPolynomial::from_i64s(&[0, -1]));
        assert!(pt_polynomial(&g, 2).unwrap().is_zero());
        let all = pt_polynomials(&g, 1).unwrap();
        assert_eq!(all[0], IntPolynomial::from_i64s(&[0, -1]));
        assert_eq!(all[1], IntPolynomial::linear(1));
    }

    #[test]
    fn grid_shape_and_threads() {
        let g = gen_family(&FamilySpec::colored(Family::Knn { n: 4 }, Coloring::Diagonal), 0).unwrap();
        let a = EvaluationGrid::evaluate(&g, 1).unwrap();
        assert_eq!(a.lambda_points.len(), 7);
        assert_eq!(a.x_points.len(), 5);
        assert_eq!(a, EvaluationGrid::evaluate(&g, 3).unwrap());
    }

    #[test]
    fn red_range() {
        let g = gen_family(&FamilySpec::colored(Family::Knn { n: 4 }, Coloring::Diagonal), 0).unwrap();
        assert_eq!(red_count_range(&g), Some((0, 4)));
        assert_eq!(red_count_range(&k22_red00()), Some((0, 1)));
        let no_pm = ColoredBipartiteGraph::simple(2, vec![Edge::red(0, 0), Edge::red(1, 0)]).unwrap();
        assert_eq!(red_count_range(&no_pm), None);
        let multi = ColoredBipartiteGraph::new(1, vec![Edge::blue(0, 0), Edge::red(0, 0)], true).unwrap();
        assert_eq!(red_count_range(&multi), Some((0, 1)));
    }
}
