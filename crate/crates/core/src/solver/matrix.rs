use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{ExactInt, IntMatrix};
use crate::graph::ColoredBipartiteGraph;

/// `M_G(x, λ)` at an integer point: entry `(i, j)` sums `x^ρ(e) (λ+i)^j` over
/// the edges `e` at cell `(i, j)`, so a blue/red pair contributes
/// `(1 + x)(λ+i)^j`. Uses `0^0 = 1`.
pub fn build_matrix_at(g: &ColoredBipartiteGraph, x_val: &ExactInt, lambda_val: &ExactInt) -> IntMatrix {
    let n = g.n();
    let mut m = IntMatrix::zeros(n, n);
    let mut pows: Vec<BigInt> = Vec::with_capacity(n);
    for i in 0..n {
        let base = lambda_val + BigInt::from(i);
        pows.clear();
        let mut p = BigInt::one();
        for _ in 0..n {
            pows.push(p.clone());
            p *= &base;
        }
        for e in g.row_edges(i) {
            let term = if e.color.is_red() { x_val * &pows[e.col] } else { pows[e.col].clone() };
            if term.is_zero() {
                continue;
            }
            let cur = m.get(i, e.col).clone();
            m.set(i, e.col, cur + term);
        }
    }
    m
}
