use serde::Serialize;

use crate::algebra::{ExactInt, IntMatrix, IntPolynomial};

/// Sign of a permutation given in one-line notation.
pub fn perm_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for start in 0..p.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    if transpositions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Advances `p` to its lexicographic successor; `false` after the last one.
pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    while next_permutation(&mut p) {
        out.push(p.clone());
    }
    out
}

/// Determinant by full Leibniz expansion.
pub fn leibniz_det(m: &IntMatrix) -> ExactInt {
    assert_eq!(m.n_rows(), m.n_cols());
    all_permutations(m.n_rows())
        .iter()
        .map(|p| {
            let prod: ExactInt = p.iter().enumerate().map(|(i, &j)| m.get(i, j).clone()).product();
            prod * perm_sign(p)
        })
        .sum()
}

/// `Π_i (λ+i)^{σ(i)}`.
pub fn perm_monomial(p: &[usize]) -> IntPolynomial {
    p.iter().enumerate().map(|(i, &j)| IntPolynomial::linear_pow(i as i64, j)).product()
}

/// A set of permutations of `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationFamily {
    pub n: usize,
    pub members: Vec<Vec<usize>>,
}

impl PermutationFamily {
    /// Sorts and deduplicates the members; panics on a non-permutation.
    pub fn new(n: usize, mut members: Vec<Vec<usize>>) -> Self {
        for p in &members {
            let mut s = p.clone();
            s.sort_unstable();
            assert!(s.iter().copied().eq(0..n), "not a permutation of 0..{n}: {p:?}");
        }
        members.sort();
        members.dedup();
        Self { n, members }
    }

    pub fn full(n: usize) -> Self {
        Self { n, members: all_permutations(n) }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `P_S(λ) = Σ_{σ∈S} sgn(σ) Π_i (λ+i)^{σ(i)}`.
pub fn subset_poly(fam: &PermutationFamily) -> IntPolynomial {
    fam.members.iter().map(|p| perm_monomial(p).scale(&ExactInt::from(perm_sign(p)))).sum()
}
