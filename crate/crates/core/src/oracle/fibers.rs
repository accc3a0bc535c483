use num_traits::Zero;
use serde::Serialize;

use super::{
    all_permutations, enumerate_pms, perm_sign, subset_poly, OracleError, PermutationFamily, DEFAULT_ORACLE_CAP,
};
use crate::algebra::ExactInt;
use crate::graph::ColoredBipartiteGraph;

/// The exact-`t` fiber of `g` as a family of permutations. Requires a simple graph.
pub fn fiber_family(g: &ColoredBipartiteGraph, t: usize) -> Result<PermutationFamily, OracleError> {
    let members = enumerate_pms(g, DEFAULT_ORACLE_CAP)?
        .into_iter()
        .filter(|m| m.red_count == t)
        .filter_map(|m| m.permutation())
        .collect();
    Ok(PermutationFamily::new(g.n(), members))
}

/// `W_ij = 1` exactly at red cells.
pub fn weight_matrix(g: &ColoredBipartiteGraph) -> Vec<Vec<u8>> {
    let mut w = vec![vec![0; g.n()]; g.n()];
    for e in g.edges().iter().filter(|e| e.color.is_red()) {
        w[e.row][e.col] = 1;
    }
    w
}

fn weight(w: &[Vec<u8>], p: &[usize]) -> usize {
    p.iter().enumerate().map(|(i, &j)| w[i][j] as usize).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowInitialForm {
    pub row: usize,
    pub k_min: usize,
    /// `[u^{k_min}] P_F(-r + u)`.
    pub by_substitution: ExactInt,
    /// `Σ_{σ(r)=k_min} sgn(σ) Π_{i≠r} (i-r)^{σ(i)}`.
    pub closed_form: ExactInt,
    pub unique_minimizer: bool,
    pub family_poly_nonzero: bool,
}

impl RowInitialForm {
    /// Both computations agree, and a unique minimiser forces a nonzero
    /// coefficient and a nonzero family polynomial.
    pub fn holds(&self) -> bool {
        self.by_substitution == self.closed_form
            && (!self.unique_minimizer || (!self.closed_form.is_zero() && self.family_poly_nonzero))
    }
}

pub fn row_initial_form(fam: &PermutationFamily, r: usize) -> Result<RowInitialForm, OracleError> {
    let k_min = fam.members.iter().map(|p| p[r]).min().ok_or(OracleError::EmptyFamily)?;
    let poly = subset_poly(fam);
    let by_substitution = poly.shift(-(r as i64)).coeff(k_min);
    let minimisers: Vec<&Vec<usize>> = fam.members.iter().filter(|p| p[r] == k_min).collect();
    let closed_form = minimisers
        .iter()
        .map(|p| {
            let prod: ExactInt = p
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != r)
                .map(|(i, &j)| num_traits::pow(ExactInt::from(i as i64 - r as i64), j))
                .product();
            prod * perm_sign(p)
        })
        .sum();
    Ok(RowInitialForm {
        row: r,
        k_min,
        by_substitution,
        closed_form,
        unique_minimizer: minimisers.len() == 1,
        family_poly_nonzero: !poly.is_zero(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ParallelogramOutcome {
    /// `P1 + P3 - P2` is not a permutation matrix.
    NotPermutation,
    /// It is the permutation `σ4`, with the common red count.
    SameFiber(Vec<usize>),
    /// It is a permutation with a different red count.
    Violation(Vec<usize>),
}

/// Completes `P_{σ1} + P_{σ3} - P_{σ2}` for three permutations of equal weight.
pub fn parallelogram_check(
    s1: &[usize],
    s2: &[usize],
    s3: &[usize],
    w: &[Vec<u8>],
) -> Result<ParallelogramOutcome, OracleError> {
    let n = s1.len();
    let t = weight(w, s1);
    if weight(w, s2) != t || weight(w, s3) != t {
        return Err(OracleError::BadFamily("permutations have different red counts".into()));
    }
    let mut m = vec![vec![0i32; n]; n];
    for i in 0..n {
        m[i][s1[i]] += 1;
        m[i][s3[i]] += 1;
        m[i][s2[i]] -= 1;
    }
    let mut s4 = Vec::with_capacity(n);
    for row in &m {
        if row.iter().any(|&v| v != 0 && v != 1) || row.iter().filter(|&&v| v == 1).count() != 1 {
            return Ok(ParallelogramOutcome::NotPermutation);
        }
        s4.push(row.iter().position(|&v| v == 1).expect("one entry"));
    }
    let mut cols = s4.clone();
    cols.sort_unstable();
    if !cols.iter().copied().eq(0..n) {
        return Ok(ParallelogramOutcome::NotPermutation);
    }
    Ok(if weight(w, &s4) == t { ParallelogramOutcome::SameFiber(s4) } else { ParallelogramOutcome::Violation(s4) })
}

/// Whether `S` is the full exact-`t` layer of its own support: every
/// permutation using only cells of `S` and of the same weight lies in `S`.
pub fn affine_closure_membership(s: &PermutationFamily, w: &[Vec<u8>]) -> bool {
    let Some(first) = s.members.first() else {
        return false;
    };
    let t = weight(w, first);
    if s.members.iter().any(|p| weight(w, p) != t) {
        return false;
    }
    let n = s.n;
    let mut support = vec![vec![false; n]; n];
    for p in &s.members {
        for (i, &j) in p.iter().enumerate() {
            support[i][j] = true;
        }
    }
    let layer: Vec<Vec<usize>> = all_permutations(n)
        .into_iter()
        .filter(|p| p.iter().enumerate().all(|(i, &j)| support[i][j]) && weight(w, p) == t)
        .collect();
    layer == s.members
}
