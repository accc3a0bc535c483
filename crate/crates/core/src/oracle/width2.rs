use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use super::{fiber_family, subset_poly, OracleError, PermutationFamily};
use crate::algebra::{ExactInt, IntMatrix, IntPolynomial};
use crate::graph::ColoredBipartiteGraph;

/// Members with `σ(k) = c_k` on the given prefix pins, relabelled onto the
/// kept rows and columns (both in increasing order).
fn residual(fam: &PermutationFamily, pins: &[(usize, usize)], rows: &[usize], cols: &[usize]) -> PermutationFamily {
    let members = fam
        .members
        .iter()
        .filter(|p| pins.iter().all(|&(r, c)| p[r] == c))
        .map(|p| rows.iter().map(|&r| cols.binary_search(&p[r]).expect("kept column")).collect())
        .collect();
    PermutationFamily::new(rows.len(), members)
}

fn color(g: &ColoredBipartiteGraph, r: usize, c: usize) -> Option<usize> {
    g.find_edge(r, c, None).map(|id| g.edge(id).color.bit())
}

/// Exact-`t` fiber of the subgraph induced on `keep × keep`, or empty when
/// the pinned cells already use more than `t` red edges or are missing.
fn sub_fiber(
    g: &ColoredBipartiteGraph,
    keep: &[usize],
    pinned: &[(usize, usize)],
    t: usize,
) -> Result<PermutationFamily, OracleError> {
    let mut used = 0;
    for &(r, c) in pinned {
        match color(g, r, c) {
            Some(b) => used += b,
            None => return Ok(PermutationFamily::new(keep.len(), vec![])),
        }
    }
    match t.checked_sub(used) {
        Some(rest) => fiber_family(&g.induced(keep, keep).0, rest),
        None => Ok(PermutationFamily::new(keep.len(), vec![])),
    }
}

fn within_band(g: &ColoredBipartiteGraph, cyclic: bool) -> bool {
    let m = g.n() as i64;
    g.edges().iter().all(|e| {
        let d = e.col as i64 - e.row as i64;
        d.abs() <= 1 || (cyclic && d.abs() == m - 1)
    })
}

/// Two-branch factorisation on a coloured width-2 path graph:
/// `P_F = Π_{i=1}^{m-1}(λ+i) P_{F0'}(λ+1) - λ Π_{i=2}^{m-1}(λ+i)² P_{F1'}(λ+2)`.
pub fn width2_branch_check(g: &ColoredBipartiteGraph, t: usize) -> Result<bool, OracleError> {
    let m = g.n();
    if m < 2 || !within_band(g, false) {
        return Err(OracleError::BadFamily("expected a width-2 path graph on at least 2 vertices".into()));
    }
    let fam = fiber_family(g, t)?;
    if fam.members.iter().any(|p| p[0] == 1 && p[1] != 0) {
        return Ok(false);
    }
    let tail1: Vec<usize> = (1..m).collect();
    let tail2: Vec<usize> = (2..m).collect();
    let f0 = residual(&fam, &[(0, 0)], &tail1, &tail1);
    let f1 = residual(&fam, &[(0, 1), (1, 0)], &tail2, &tail2);
    let first: IntPolynomial = (1..m).map(|i| IntPolynomial::linear(i as i64)).product();
    let second: IntPolynomial = (2..m).map(|i| IntPolynomial::linear_pow(i as i64, 2)).product();
    let lhs = subset_poly(&fam);
    let rhs =
        &(&first * &subset_poly(&f0).shift(1)) - &(&(&IntPolynomial::linear(0) * &second) * &subset_poly(&f1).shift(2));
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicSplitReport {
    /// Fiber sizes of the branches `σ(0) = 0, 1, m-1`.
    pub branch_sizes: [usize; 3],
    pub forward_shift_forced: bool,
    pub backward_shift_forced: bool,
    pub holds: bool,
}

/// Splits a coloured width-2 cyclic fiber by `σ(0)` and checks each branch
/// against the path instance it reduces to, or the forced cyclic shift.
pub fn width2_cyclic_split_check(g: &ColoredBipartiteGraph, t: usize) -> Result<CyclicSplitReport, OracleError> {
    let m = g.n();
    if m < 3 || !within_band(g, true) {
        return Err(OracleError::BadFamily("expected a width-2 cyclic graph on at least 3 vertices".into()));
    }
    let fam = fiber_family(g, t)?;
    let forward: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
    let backward: Vec<usize> = (0..m).map(|i| (i + m - 1) % m).collect();
    let mut holds = fam.members.iter().all(|p| p[0] == 0 || p[0] == 1 || p[0] == m - 1);
    let branch = |c: usize| fam.members.iter().filter(|p| p[0] == c).count();
    let branch_sizes = [branch(0), branch(1), branch(m - 1)];

    // σ(0) = 0
    let keep: Vec<usize> = (1..m).collect();
    holds &= residual(&fam, &[(0, 0)], &keep, &keep) == sub_fiber(g, &keep, &[(0, 0)], t)?;

    // σ(0) = 1: either the forward cascade or σ(1) = 0
    let cascade: Vec<&Vec<usize>> = fam.members.iter().filter(|p| p[0] == 1 && p[1] != 0).collect();
    holds &= cascade.iter().all(|p| **p == forward);
    let keep: Vec<usize> = (2..m).collect();
    holds &= residual(&fam, &[(0, 1), (1, 0)], &keep, &keep) == sub_fiber(g, &keep, &[(0, 1), (1, 0)], t)?;
    let forward_shift_forced = !cascade.is_empty() && branch_sizes[1] == 1;

    // σ(0) = m-1: the mirror image
    let mirror: Vec<&Vec<usize>> = fam.members.iter().filter(|p| p[0] == m - 1 && p[m - 1] != 0).collect();
    holds &= mirror.iter().all(|p| **p == backward);
    let keep: Vec<usize> = (1..m - 1).collect();
    let pins = [(0, m - 1), (m - 1, 0)];
    holds &= residual(&fam, &pins, &keep, &keep) == sub_fiber(g, &keep, &pins, t)?;
    let backward_shift_forced = !mirror.is_empty() && branch_sizes[2] == 1;

    Ok(CyclicSplitReport { branch_sizes, forward_shift_forced, backward_shift_forced, holds })
}

/// A word `η ∈ {-1, 0, +1}^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TernaryWord(pub Vec<i8>);

impl TernaryWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negatives(&self) -> i64 {
        self.0.iter().filter(|&&l| l == -1).count() as i64
    }

    /// All `3^r` words in lexicographic order of `(-1, 0, +1)`.
    pub fn all(r: usize) -> Vec<Self> {
        let mut out = vec![Vec::new()];
        for _ in 0..r {
            out = out.into_iter().flat_map(|w: Vec<i8>| [-1, 0, 1].map(|l| [w.clone(), vec![l]].concat())).collect();
        }
        out.into_iter().map(Self).collect()
    }

    /// Independent sets of the path on `r` vertices, as bit masks.
    fn independent_sets(&self) -> impl Iterator<Item = u32> {
        let r = self.len() as u32;
        (0..1u32 << r).filter(|s| s & (s >> 1) == 0)
    }

    fn charge(&self, set: u32) -> i64 {
        self.0.iter().enumerate().filter(|&(i, _)| set >> i & 1 == 1).map(|(_, &l)| l as i64).sum()
    }

    /// Charges `η(E)` over independent sets `E`.
    pub fn support(&self) -> BTreeSet<i64> {
        self.independent_sets().map(|s| self.charge(s)).collect()
    }
}

/// `G_{η,q}(u) = Σ_{η(E)=q} ε(E) Π_{i∈E}(u+2i+1) Π_{i∉E}(u+2i+3)` by brute force.
pub fn brute_g(eta: &TernaryWord, q: i64) -> IntPolynomial {
    eta.independent_sets()
        .filter(|&s| eta.charge(s) == q)
        .map(|s| {
            let mut sign = 1;
            let mut p = IntPolynomial::one();
            for i in 0..eta.len() {
                let shift = 2 * i as i64;
                if s >> i & 1 == 1 {
                    if eta.0[i] == 0 {
                        sign = -sign;
                    }
                    p = &p * &IntPolynomial::linear(shift + 1);
                } else {
                    p = &p * &IntPolynomial::linear(shift + 3);
                }
            }
            p.scale(&ExactInt::from(sign))
        })
        .sum()
}

/// `(X_η(q), Y_η(q)) = (G_{η,q}(0), G_{η,q}(2))`.
pub fn brute_gxy(eta: &TernaryWord, q: i64) -> (ExactInt, ExactInt) {
    let g = brute_g(eta, q);
    (g.eval_i64(0), g.eval_i64(2))
}

/// `(u_e M e_0, u_o M e_0)` as polynomials in the charge variable `t`, for
/// `M = T_{r-1} ⋯ T_0` over states `(N_e, C_e, N_o, C_o)`.
pub fn transfer_xy(eta: &TernaryWord, a: i64) -> (IntPolynomial, IntPolynomial) {
    let t = IntPolynomial::monomial(1, 1);
    let mut state = [IntPolynomial::one(), IntPolynomial::zero(), IntPolynomial::zero(), IntPolynomial::zero()];
    for (i, &letter) in eta.0.iter().enumerate() {
        let alpha = IntPolynomial::constant(a + 2 * i as i64 + 3);
        let beta = IntPolynomial::constant(a + 2 * i as i64 + 1);
        let [ne, ce, no, co] = &state;
        state = match letter {
            1 => {
                let bt = &beta * &t;
                [&alpha * &(ne + ce), &bt * ne, &alpha * &(no + co), &bt * no]
            }
            -1 => {
                let at = &alpha * &t;
                [&at * &(ne + ce), &beta * ne, &at * &(no + co), &beta * no]
            }
            _ => [&alpha * &(ne + ce), &beta * no, &alpha * &(no + co), &beta * ne],
        };
    }
    let [ne, ce, no, co] = state;
    (&ne + &ce, &no + &co)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub word: TernaryWord,
    /// Transfer-matrix coefficients equal the brute-force values at every charge.
    pub agree: bool,
    pub support_is_interval: bool,
    /// The 4×4 determinant equals `Δ_η(q)` at every adjacent pair.
    pub determinant_identity: bool,
    /// `(q, Δ_η(q))` for every supported adjacent pair.
    pub deltas: Vec<(i64, ExactInt)>,
}

impl TransferReport {
    pub fn holds(&self) -> bool {
        self.agree
            && self.support_is_interval
            && self.determinant_identity
            && self.deltas.iter().all(|(_, d)| !d.is_zero())
    }
}

pub fn transfer_check(eta: &TernaryWord) -> TransferReport {
    let (xe, xo) = transfer_xy(eta, 0);
    let (ye, yo) = transfer_xy(eta, 2);
    let shift = eta.negatives();
    let support = eta.support();
    let (lo, hi) = (*support.first().expect("nonempty"), *support.last().expect("nonempty"));
    let support_is_interval = support.len() as i64 == hi - lo + 1;
    let coeffs = |q: i64| -> [ExactInt; 4] {
        let k = usize::try_from(q + shift).expect("κ ≥ 0");
        [xe.coeff(k), xo.coeff(k), ye.coeff(k), yo.coeff(k)]
    };
    let mut agree = true;
    for q in lo - 1..=hi + 1 {
        let (x, y) = brute_gxy(eta, q);
        let c = if q + shift >= 0 { coeffs(q) } else { Default::default() };
        agree &= x == &c[0] - &c[1] && y == &c[2] - &c[3];
    }
    let mut determinant_identity = true;
    let mut deltas = Vec::new();
    for q in lo..hi {
        let (x0, y0) = brute_gxy(eta, q);
        let (x1, y1) = brute_gxy(eta, q + 1);
        let delta = &x0 * &y1 - &x1 * &y0;
        let (n0, n1) = (coeffs(q), coeffs(q + 1));
        let one = ExactInt::from(1);
        let zero = ExactInt::zero();
        let m = IntMatrix::from_fn(4, 4, |i, j| match j {
            0 => n0[i].clone(),
            1 => {
                if i < 2 {
                    one.clone()
                } else {
                    zero.clone()
                }
            }
            2 => n1[i].clone(),
            _ => {
                if i < 2 {
                    zero.clone()
                } else {
                    one.clone()
                }
            }
        });
        determinant_identity &= m.bareiss_det().is_ok_and(|d| d == delta);
        deltas.push((q, delta));
    }
    TransferReport { word: eta.clone(), agree, support_is_interval, determinant_identity, deltas }
}
