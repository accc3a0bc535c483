use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::OracleError;
use crate::graph::ColoredBipartiteGraph;

pub const DEFAULT_MVV_PRIME: u64 = 1_000_003;

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn det_mod(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| m[i][k] != 0) else {
            return 0;
        };
        if piv != k {
            m.swap(piv, k);
            det = (p - det) % p;
        }
        det = mul_mod(det, m[k][k], p);
        let inv = inv_mod(m[k][k], p);
        for i in k + 1..n {
            let f = mul_mod(m[i][k], inv, p);
            if f == 0 {
                continue;
            }
            for j in k..n {
                let s = mul_mod(f, m[k][j], p);
                m[i][j] = (m[i][j] + p - s) % p;
            }
        }
    }
    det
}

/// Coefficients of the interpolating polynomial through `(xs[k], ys[k])` over `F_p`.
fn interpolate_mod(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    let mut out = vec![0u64; n];
    for k in 0..n {
        // basis numerator Π_{j≠k} (x - x_j), built incrementally
        let mut basis = vec![1u64];
        let mut denom = 1u64;
        for j in (0..n).filter(|&j| j != k) {
            let mut next = vec![0u64; basis.len() + 1];
            for (d, &c) in basis.iter().enumerate() {
                next[d + 1] = (next[d + 1] + c) % p;
                next[d] = (next[d] + p - mul_mod(c, xs[j], p)) % p;
            }
            basis = next;
            denom = mul_mod(denom, (xs[k] + p - xs[j]) % p, p);
        }
        let scale = mul_mod(ys[k], inv_mod(denom, p), p);
        for (d, c) in basis.into_iter().enumerate() {
            out[d] = (out[d] + mul_mod(c, scale, p)) % p;
        }
    }
    out
}

fn matrix_mod(g: &ColoredBipartiteGraph, x: u64, lambda: u64, p: u64) -> Vec<Vec<u64>> {
    let n = g.n();
    let mut m = vec![vec![0u64; n]; n];
    for e in g.edges() {
        let base = (lambda + e.row as u64) % p;
        let mut v = pow_mod(base, e.col as u64, p);
        if e.col == 0 {
            v = 1;
        }
        if e.color.is_red() {
            v = mul_mod(v, x, p);
        }
        m[e.row][e.col] = (m[e.row][e.col] + v) % p;
    }
    m
}

/// Randomised one-sided test for `[x^t] det M_G(x, λ) ≢ 0` over `F_p`.
///
/// Each trial draws `λ` and `n+1` distinct `x` values, interpolates the
/// determinant in `x` and inspects the `x^t` coefficient. A `true` answer is
/// always correct; a `false` answer is wrong with probability at most
/// `(n(n-1)/2) / p` per trial.
pub fn mvv_test(g: &ColoredBipartiteGraph, t: i64, prime: u64, trials: usize, seed: u64) -> Result<bool, OracleError> {
    let n = g.n();
    if !is_prime(prime) || prime <= (n * n.saturating_sub(1)) as u64 || prime <= n as u64 + 1 {
        return Err(OracleError::BadPrime(prime));
    }
    let Some(t) = usize::try_from(t).ok().filter(|&t| t <= n) else {
        return Ok(false);
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let lambda = rng.gen_range(0..prime);
        let xs: Vec<u64> = sample(&mut rng, prime as usize, n + 1).into_iter().map(|v| v as u64).collect();
        let ys: Vec<u64> = xs.iter().map(|&x| det_mod(matrix_mod(g, x, lambda, prime), prime)).collect();
        if interpolate_mod(&xs, &ys, prime)[t] != 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    #[test]
    fn k22_single_red() {
        let g = ColoredBipartiteGraph::simple(
            2,
            vec![Edge::red(0, 0), Edge::blue(0, 1), Edge::blue(1, 0), Edge::blue(1, 1)],
        )
        .unwrap();
        assert!(mvv_test(&g, 1, DEFAULT_MVV_PRIME, 20, 1).unwrap());
        assert!(mvv_test(&g, 0, DEFAULT_MVV_PRIME, 20, 1).unwrap());
        assert!(!mvv_test(&g, 2, DEFAULT_MVV_PRIME, 20, 1).unwrap());
        assert!(!mvv_test(&g, -1, DEFAULT_MVV_PRIME, 20, 1).unwrap());
        assert_eq!(mvv_test(&g, 1, 1_000_000, 5, 1), Err(OracleError::BadPrime(1_000_000)));
        assert_eq!(mvv_test(&g, 1, 2, 5, 1), Err(OracleError::BadPrime(2)));
    }

    #[test]
    fn modular_helpers() {
        let p = 101;
        assert_eq!(det_mod(vec![vec![1, 2], vec![3, 4]], p), p - 2);
        // 3 + 2x + x² through x = 1, 2, 5
        let xs = [1, 2, 5];
        let ys: Vec<u64> = xs.iter().map(|&x| (3 + 2 * x + x * x) % p).collect();
        assert_eq!(interpolate_mod(&xs, &ys, p), vec![3, 2, 1]);
    }
}
