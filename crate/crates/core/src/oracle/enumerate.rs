use std::collections::BTreeMap;

use serde::Serialize;

use super::OracleError;
use crate::algebra::{ExactInt, IntPolynomial};
use crate::graph::ColoredBipartiteGraph;
use crate::matching::Matching;

pub const DEFAULT_ORACLE_CAP: usize = 5_000_000;

/// Number of perfect matchings per red count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberTable {
    pub counts: BTreeMap<usize, usize>,
    pub total: usize,
}

impl FiberTable {
    pub fn count(&self, t: i64) -> usize {
        usize::try_from(t).ok().and_then(|t| self.counts.get(&t).copied()).unwrap_or(0)
    }

    /// Red counts with a nonempty fiber.
    pub fn support(&self) -> Vec<usize> {
        self.counts.keys().copied().collect()
    }
}

/// Every perfect matching, by backtracking over rows in edge order.
pub fn enumerate_pms(g: &ColoredBipartiteGraph, cap: usize) -> Result<Vec<Matching>, OracleError> {
    let n = g.n();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(n);
    let mut col_used = vec![false; n];
    fn rec(
        g: &ColoredBipartiteGraph,
        row: usize,
        chosen: &mut Vec<usize>,
        col_used: &mut [bool],
        out: &mut Vec<Matching>,
        cap: usize,
    ) -> Result<(), OracleError> {
        if row == g.n() {
            if out.len() == cap {
                return Err(OracleError::CapExceeded(cap));
            }
            out.push(Matching::from_edge_ids(g, chosen.iter().copied()).expect("disjoint by construction"));
            return Ok(());
        }
        for id in g.row_edge_ids(row) {
            let c = g.edge(id).col;
            if !col_used[c] {
                col_used[c] = true;
                chosen.push(id);
                rec(g, row + 1, chosen, col_used, out, cap)?;
                chosen.pop();
                col_used[c] = false;
            }
        }
        Ok(())
    }
    rec(g, 0, &mut chosen, &mut col_used, &mut out, cap)?;
    Ok(out)
}

pub fn fiber_table(g: &ColoredBipartiteGraph) -> Result<FiberTable, OracleError> {
    let pms = enumerate_pms(g, DEFAULT_ORACLE_CAP)?;
    let mut counts = BTreeMap::new();
    for m in &pms {
        *counts.entry(m.red_count).or_insert(0) += 1;
    }
    Ok(FiberTable { counts, total: pms.len() })
}

/// Signed matching polynomials between ordered `rows` and `cols`, keyed by
/// red count. Labels stay global: a matched edge `(i, j)` contributes
/// `(λ+i)^j`, and the sign is that of the induced bijection between positions.
pub fn signed_fiber_polys(
    g: &ColoredBipartiteGraph,
    rows: &[usize],
    cols: &[usize],
    cap: usize,
) -> Result<BTreeMap<usize, IntPolynomial>, OracleError> {
    assert_eq!(rows.len(), cols.len(), "minor must be square");
    let n = g.n();
    let mut col_pos = vec![usize::MAX; n];
    for (k, &c) in cols.iter().enumerate() {
        col_pos[c] = k;
    }
    struct State<'a> {
        g: &'a ColoredBipartiteGraph,
        rows: &'a [usize],
        col_pos: Vec<usize>,
        used: Vec<bool>,
        perm: Vec<usize>,
        partial: Vec<IntPolynomial>,
        reds: usize,
        out: BTreeMap<usize, IntPolynomial>,
        leaves: usize,
        cap: usize,
    }
    fn rec(s: &mut State<'_>, k: usize) -> Result<(), OracleError> {
        if k == s.rows.len() {
            s.leaves += 1;
            if s.leaves > s.cap {
                return Err(OracleError::CapExceeded(s.cap));
            }
            let term = s.partial[k].scale(&ExactInt::from(super::perm_sign(&s.perm)));
            let slot = s.out.entry(s.reds).or_default();
            *slot = &*slot + &term;
            return Ok(());
        }
        let i = s.rows[k];
        for id in s.g.row_edge_ids(i) {
            let e = s.g.edge(id);
            let pos = s.col_pos[e.col];
            if pos == usize::MAX || s.used[pos] {
                continue;
            }
            s.used[pos] = true;
            s.perm.push(pos);
            s.reds += e.color.bit();
            let next = &s.partial[k] * &IntPolynomial::linear_pow(i as i64, e.col);
            s.partial.push(next);
            rec(s, k + 1)?;
            s.partial.pop();
            s.reds -= e.color.bit();
            s.perm.pop();
            s.used[pos] = false;
        }
        Ok(())
    }
    let mut s = State {
        g,
        rows,
        col_pos,
        used: vec![false; cols.len()],
        perm: Vec::with_capacity(rows.len()),
        partial: vec![IntPolynomial::one()],
        reds: 0,
        out: BTreeMap::new(),
        leaves: 0,
        cap,
    };
    rec(&mut s, 0)?;
    s.out.retain(|_, p| !p.is_zero());
    Ok(s.out)
}

/// `P_t(λ) = Σ_{σ ∈ F_t} sgn(σ) Π (λ+i)^{σ(i)}` by enumeration.
pub fn symbolic_pt(g: &ColoredBipartiteGraph, t: i64) -> Result<IntPolynomial, OracleError> {
    let all: Vec<usize> = (0..g.n()).collect();
    let polys = signed_fiber_polys(g, &all, &all, DEFAULT_ORACLE_CAP)?;
    Ok(usize::try_from(t).ok().and_then(|t| polys.get(&t).cloned()).unwrap_or_default())
}

/// Boundary minor `P^{U,V}_{G,s}`: the `x^s` coefficient of the determinant
/// of `M_G` with rows `U` and columns `V` deleted, in global labels.
pub fn boundary_minor(
    g: &ColoredBipartiteGraph,
    del_rows: &[usize],
    del_cols: &[usize],
    s: i64,
) -> Result<IntPolynomial, OracleError> {
    let rows: Vec<usize> = (0..g.n()).filter(|r| !del_rows.contains(r)).collect();
    let cols: Vec<usize> = (0..g.n()).filter(|c| !del_cols.contains(c)).collect();
    if rows.len() != cols.len() {
        return Ok(IntPolynomial::zero());
    }
    let polys = signed_fiber_polys(g, &rows, &cols, DEFAULT_ORACLE_CAP)?;
    Ok(usize::try_from(s).ok().and_then(|s| polys.get(&s).cloned()).unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_family, Coloring, Edge, Family, FamilySpec};

    fn fam(f: Family, c: Coloring) -> ColoredBipartiteGraph {
        gen_family(&FamilySpec::colored(f, c), 0).unwrap()
    }

    #[test]
    fn pm_counts() {
        assert_eq!(enumerate_pms(&fam(Family::Knn { n: 3 }, Coloring::AllBlue), 100).unwrap().len(), 6);
        assert_eq!(enumerate_pms(&fam(Family::Biwheel { m: 5 }, Coloring::AllBlue), 100).unwrap().len(), 16);
        assert_eq!(enumerate_pms(&fam(Family::BandPath { m: 6 }, Coloring::AllBlue), 100).unwrap().len(), 13);
        assert_eq!(enumerate_pms(&fam(Family::Knn { n: 4 }, Coloring::AllBlue), 5), Err(OracleError::CapExceeded(5)));
    }

    #[test]
    fn fibers() {
        let t = fiber_table(&fam(Family::Knn { n: 3 }, Coloring::Diagonal)).unwrap();
        assert_eq!(t.counts, BTreeMap::from([(0, 2), (1, 3), (3, 1)]));
        let t = fiber_table(&fam(Family::Knn { n: 4 }, Coloring::Diagonal)).unwrap();
        assert_eq!(t.counts, BTreeMap::from([(0, 9), (1, 8), (2, 6), (4, 1)]));
        assert_eq!(t.total, 24);
        let t = fiber_table(&fam(Family::Knn { n: 3 }, Coloring::AllBlue)).unwrap();
        assert_eq!(t.counts, BTreeMap::from([(0, 6)]));
    }

    #[test]
    fn symbolic_examples() {
        let k22 = fam(Family::Knn { n: 2 }, Coloring::AllBlue);
        assert_eq!(symbolic_pt(&k22, 0).unwrap(), IntPolynomial::one());
        assert!(symbolic_pt(&k22, 1).unwrap().is_zero());
        let red = ColoredBipartiteGraph::simple(
            2,
            vec![Edge::red(0, 0), Edge::blue(0, 1), Edge::blue(1, 0), Edge::blue(1, 1)],
        )
        .unwrap();
        assert_eq!(symbolic_pt(&red, 0).unwrap(), IntPolynomial::from_i64s(&[0, -1]));
        assert_eq!(symbolic_pt(&red, 1).unwrap(), IntPolynomial::linear(1));
        assert!(symbolic_pt(&red, -1).unwrap().is_zero());
    }

    #[test]
    fn boundary_minor_of_k22() {
        let k22 = fam(Family::Knn { n: 2 }, Coloring::AllBlue);
        // delete row 0, col 0: remaining entry (λ+1)^1
        assert_eq!(boundary_minor(&k22, &[0], &[0], 0).unwrap(), IntPolynomial::linear(1));
        // delete row 0, col 1: remaining entry (λ+1)^0
        assert_eq!(boundary_minor(&k22, &[0], &[1], 0).unwrap(), IntPolynomial::one());
    }
}
