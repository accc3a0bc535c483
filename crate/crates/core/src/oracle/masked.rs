use num_traits::Zero;

use super::PolyMatrix;
use crate::algebra::{ExactInt, IntMatrix, IntPolynomial};
use crate::graph::{ColoredBipartiteGraph, Edge};
use crate::matching::has_perfect_matching;

/// `W_ij = η_ij μ_i^{d_j}` with `μ_i = λ + α_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaskedMatrix {
    pub bases: Vec<i64>,
    pub exponents: Vec<usize>,
    /// Row-major `m × m` mask.
    pub mask: Vec<Vec<bool>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaskedMinorReport {
    pub det: IntPolynomial,
    pub support_has_pm: bool,
}

impl MaskedMinorReport {
    /// `det ≠ 0 ⟺ Γ(W)` has a perfect matching.
    pub fn holds(&self) -> bool {
        self.det.is_zero() != self.support_has_pm
    }
}

impl MaskedMatrix {
    pub fn new(bases: Vec<i64>, exponents: Vec<usize>, mask: Vec<Vec<bool>>) -> Self {
        let m = bases.len();
        assert!(exponents.len() == m && mask.len() == m && mask.iter().all(|r| r.len() == m), "shape mismatch");
        assert!(exponents.windows(2).all(|w| w[0] < w[1]), "exponents must increase");
        let mut sorted = bases.clone();
        sorted.sort_unstable();
        assert!(sorted.windows(2).all(|w| w[0] != w[1]), "bases must be distinct");
        Self { bases, exponents, mask }
    }

    pub fn full(bases: Vec<i64>, exponents: Vec<usize>) -> Self {
        let m = bases.len();
        Self::new(bases, exponents, vec![vec![true; m]; m])
    }

    pub fn m(&self) -> usize {
        self.bases.len()
    }

    pub fn to_poly_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.m(), |i, j| {
            if self.mask[i][j] {
                IntPolynomial::linear_pow(self.bases[i], self.exponents[j])
            } else {
                IntPolynomial::zero()
            }
        })
    }

    /// The same mask over integer bases: `W_ij = η_ij α_i^{d_j}`.
    pub fn integer_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.m(), self.m(), |i, j| {
            if self.mask[i][j] {
                num_traits::pow(ExactInt::from(self.bases[i]), self.exponents[j])
            } else {
                ExactInt::zero()
            }
        })
    }

    pub fn support_graph(&self) -> ColoredBipartiteGraph {
        let m = self.m();
        let edges = (0..m * m).filter(|&k| self.mask[k / m][k % m]).map(|k| Edge::blue(k / m, k % m)).collect();
        ColoredBipartiteGraph::from_parts_unchecked(m, edges, false)
    }
}

pub fn check_masked_minor(w: &MaskedMatrix) -> MaskedMinorReport {
    MaskedMinorReport { det: w.to_poly_matrix().det(), support_has_pm: has_perfect_matching(&w.support_graph()) }
}

/// Masks whose support graph has a perfect matching but whose integer
/// determinant vanishes, in lexicographic order of the row-major bit string.
pub fn integer_mask_counterexamples(bases: &[i64], exponents: &[usize]) -> Vec<MaskedMatrix> {
    let m = bases.len();
    assert!(m * m < 32, "mask search is limited to m ≤ 5");
    let mut out = Vec::new();
    for bits in 0u32..1 << (m * m) {
        let mask = (0..m).map(|i| (0..m).map(|j| bits >> (m * m - 1 - (i * m + j)) & 1 == 1).collect()).collect();
        let w = MaskedMatrix::new(bases.to_vec(), exponents.to_vec(), mask);
        if has_perfect_matching(&w.support_graph()) && w.integer_matrix().bareiss_det().is_ok_and(|d| d.is_zero()) {
            out.push(w);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_mask_is_nonzero() {
        let r = check_masked_minor(&MaskedMatrix::full(vec![0, 1, 2], vec![0, 1, 2]));
        assert!(r.support_has_pm && !r.det.is_zero() && r.holds());
    }

    #[test]
    fn no_pm_mask_vanishes() {
        let mask = vec![vec![true, true, true], vec![false, false, true], vec![false, false, true]];
        let r = check_masked_minor(&MaskedMatrix::new(vec![0, 1, 2], vec![0, 1, 2], mask));
        assert!(!r.support_has_pm && r.det.is_zero() && r.holds());
    }

    #[test]
    fn integer_bases_can_cancel() {
        let full = MaskedMatrix::full(vec![2, 3, 5], vec![0, 1, 2]);
        assert_eq!(full.integer_matrix().bareiss_det().unwrap(), ExactInt::from(6));
        let found = integer_mask_counterexamples(&[2, 3, 5], &[0, 1, 2]);
        assert_eq!(found.len(), 1);
        let mask = &found[0].mask;
        assert!(!mask[2][0]);
        assert_eq!(mask.iter().flatten().filter(|&&b| !b).count(), 1);
        // the same mask over polynomial bases does not cancel
        assert!(check_masked_minor(&MaskedMatrix::new(vec![2, 3, 5], vec![0, 1, 2], mask.clone())).holds());
    }
}
