use std::collections::BTreeMap;

use super::{boundary_minor, signed_fiber_polys, symbolic_pt, OracleError, DEFAULT_ORACLE_CAP};
use crate::algebra::{ExactInt, IntPolynomial};
use crate::graph::ColoredBipartiteGraph;

/// Square matrix of integer polynomials, for small exact identity checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<IntPolynomial>,
}

impl PolyMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> IntPolynomial) -> Self {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &IntPolynomial {
        &self.entries[i * self.n + j]
    }

    pub fn column(&self, j: usize) -> Vec<IntPolynomial> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    /// `M[c ← v]`.
    pub fn replace_column(&self, c: usize, v: &[IntPolynomial]) -> Self {
        Self::from_fn(self.n, |i, j| if j == c { v[i].clone() } else { self.get(i, j).clone() })
    }

    pub fn minor(&self, row: usize, col: usize) -> Self {
        let keep = |k: usize, skip: usize| if k < skip { k } else { k + 1 };
        Self::from_fn(self.n - 1, |i, j| self.get(keep(i, row), keep(j, col)).clone())
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> IntPolynomial {
        match self.n {
            0 => IntPolynomial::one(),
            1 => self.entries[0].clone(),
            _ => (0..self.n)
                .filter(|&j| !self.get(0, j).is_zero())
                .map(|j| {
                    let term = self.get(0, j) * &self.minor(0, j).det();
                    if j % 2 == 0 {
                        term
                    } else {
                        -&term
                    }
                })
                .sum(),
        }
    }

    /// Column-hole vector: `u_a = (-1)^{a+c} det M[â, ĉ]`.
    pub fn column_hole(&self, c: usize) -> Vec<IntPolynomial> {
        (0..self.n)
            .map(|a| {
                let d = self.minor(a, c).det();
                if (a + c).is_multiple_of(2) {
                    d
                } else {
                    -&d
                }
            })
            .collect()
    }
}

fn dot(v: &[IntPolynomial], u: &[IntPolynomial]) -> IntPolynomial {
    v.iter().zip(u).map(|(a, b)| a * b).sum()
}

/// Checks `vᵀ U^{(c)} = det M[c ← v]`, and that every other column of `M`
/// is annihilated by `U^{(c)}`.
pub fn check_replacement_det(m: &PolyMatrix, c: usize, v: &[IntPolynomial]) -> bool {
    assert!(c < m.n() && v.len() == m.n(), "dimension mismatch");
    let u = m.column_hole(c);
    if dot(v, &u) != m.replace_column(c, v).det() {
        return false;
    }
    if dot(&m.column(c), &u) != m.det() {
        return false;
    }
    (0..m.n()).filter(|&d| d != c).all(|d| dot(&m.column(d), &u).is_zero())
}

/// Deletion identity for an edge `e = (r, c)` of a simple graph:
/// `P_t(G) = P_t(G - e) + (-1)^{r+c} (λ+r)^c P^{r,c}_{G-e, t-ρ(e)}`.
pub fn check_se_identity(g: &ColoredBipartiteGraph, e: (usize, usize), t: i64) -> Result<bool, OracleError> {
    let (r, c) = e;
    let id = g.find_edge(r, c, None).ok_or(OracleError::EdgeNotFound(r, c))?;
    let h = g.without_edge(id);
    let lhs = symbolic_pt(g, t)?;
    let minor = boundary_minor(&h, &[r], &[c], t - g.edge(id).color.bit() as i64)?;
    let mut cofactor = &IntPolynomial::linear_pow(r as i64, c) * &minor;
    if (r + c) % 2 == 1 {
        cofactor = -&cofactor;
    }
    Ok(lhs == &symbolic_pt(&h, t)? + &cofactor)
}

/// Block factorisation for `g1 ⊔ g2` placed on the diagonal:
/// `P_t = Σ_{t1+t2=t} P^{(1)}_{t1} P^{(2)}_{t2}`, blocks in embedded labels.
pub fn check_hall_block_product(
    g1: &ColoredBipartiteGraph,
    g2: &ColoredBipartiteGraph,
    t: i64,
) -> Result<bool, OracleError> {
    let g = g1.disjoint_union(g2);
    let (n1, n) = (g1.n(), g.n());
    let first: Vec<usize> = (0..n1).collect();
    let second: Vec<usize> = (n1..n).collect();
    let p1 = signed_fiber_polys(&g, &first, &first, DEFAULT_ORACLE_CAP)?;
    let p2 = signed_fiber_polys(&g, &second, &second, DEFAULT_ORACLE_CAP)?;
    let mut conv: BTreeMap<usize, IntPolynomial> = BTreeMap::new();
    for (&t1, a) in &p1 {
        for (&t2, b) in &p2 {
            let slot = conv.entry(t1 + t2).or_default();
            *slot = &*slot + &(a * b);
        }
    }
    let rhs = usize::try_from(t).ok().and_then(|t| conv.get(&t).cloned()).unwrap_or_default();
    Ok(symbolic_pt(&g, t)? == rhs)
}

/// Random polynomial with `len` coefficients in `-bound..=bound`.
pub fn random_poly(rng: &mut impl rand::Rng, len: usize, bound: i64) -> IntPolynomial {
    IntPolynomial::from_coeffs((0..len).map(|_| ExactInt::from(rng.gen_range(-bound..=bound))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_family, Coloring, Edge, Family, FamilySpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn knn(n: usize, c: Coloring) -> ColoredBipartiteGraph {
        gen_family(&FamilySpec::colored(Family::Knn { n }, c), 0).unwrap()
    }

    #[test]
    fn se_identity_examples() {
        let k22 = knn(2, Coloring::AllBlue);
        assert!(check_se_identity(&k22, (0, 0), 0).unwrap());
        assert!(check_se_identity(&knn(3, Coloring::AllBlue), (1, 2), 0).unwrap());
        let red = knn(3, Coloring::Diagonal);
        for t in 0..=3 {
            assert!(check_se_identity(&red, (1, 1), t).unwrap());
        }
        assert_eq!(check_se_identity(&k22.without_edge(0), (0, 0), 0), Err(OracleError::EdgeNotFound(0, 0)));
    }

    #[test]
    fn hall_blocks() {
        let blue = knn(2, Coloring::AllBlue);
        let red = knn(2, Coloring::Diagonal);
        assert!(check_hall_block_product(&blue, &blue, 0).unwrap());
        assert!(check_hall_block_product(&red, &blue, 1).unwrap());
        assert!(check_hall_block_product(&red, &blue, 5).unwrap());
        let c = ColoredBipartiteGraph::simple(1, vec![Edge::red(0, 0)]).unwrap();
        assert!(check_hall_block_product(&c, &red, 2).unwrap());
    }

    #[test]
    fn replacement_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = PolyMatrix::from_fn(3, |_, _| random_poly(&mut rng, 3, 4));
        assert!(check_replacement_det(&m, 1, &m.column(1)));
        assert!(check_replacement_det(&m, 0, &m.column(2)));
        let v: Vec<_> = (0..3).map(|_| random_poly(&mut rng, 2, 5)).collect();
        assert!(check_replacement_det(&m, 2, &v));
        let dup = m.replace_column(0, &m.column(1));
        assert!(dup.det().is_zero());
    }

    #[test]
    fn cofactor_det_matches_vandermonde() {
        let m = PolyMatrix::from_fn(3, |i, j| IntPolynomial::linear_pow(i as i64, j));
        // det((λ+i)^j) = Π_{i<k} (k - i) = 2
        assert_eq!(m.det(), IntPolynomial::constant(2));
    }
}
