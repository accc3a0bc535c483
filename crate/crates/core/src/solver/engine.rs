use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Value};

use super::grid::{nonvanishing_targets, red_count_range};
use super::SolveError;
use crate::graph::{ColoredBipartiteGraph, TargetSpec};
use crate::matching::{allowed_edge_ids, find_tight_set, is_brace, Matching, MatchingError};
use crate::oracle::fiber_table;

/// Multigraph brace blocks up to this size are cross-checked by enumeration.
pub const ORACLE_CROSSCHECK_LIMIT: usize = 8;

pub const REPORT_SCHEMA: &str = "exactmatch/1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Worker threads for grid evaluation; 1 keeps everything on the caller.
    pub threads: usize,
    /// Brace blocks with `n` at most this are decided by enumeration instead.
    pub fallback_brute: usize,
    pub witness: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { threads: 1, fallback_brute: 0, witness: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockMethod {
    /// Determinant test on a simple brace.
    PureAsnc,
    /// Perfect-matching enumeration.
    OracleFallback,
    /// Determinant test on a multigraph brace too large to cross-check.
    AsncExtension,
}

impl BlockMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::PureAsnc => "pure-asnc",
            Self::OracleFallback => "oracle-fallback",
            Self::AsncExtension => "asnc-extension",
        }
    }
}

/// Feasible targets of one brace block, in original vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub n: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub feasible_t: Vec<usize>,
    pub method: BlockMethod,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Decision {
    #[serde(rename = "YES")]
    Yes,
    #[serde(rename = "NO")]
    No,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Timings {
    pub decompose_ms: f64,
    pub grid_ms: f64,
    pub dp_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport {
    pub decision: Decision,
    pub n: usize,
    pub t: TargetSpec,
    /// Red counts achievable by perfect matchings of the whole graph.
    pub achievable: Vec<usize>,
    pub blocks: Vec<BlockReport>,
    pub witness: Option<Matching>,
    pub timings: Timings,
}

impl SolveReport {
    pub fn is_yes(&self) -> bool {
        self.decision == Decision::Yes
    }

    /// Methods used across all blocks, deduplicated and sorted.
    pub fn methods(&self) -> Vec<BlockMethod> {
        let set: BTreeSet<BlockMethod> = self.blocks.iter().map(|b| b.method).collect();
        set.into_iter().collect()
    }

    /// Single-object JSON report. Witness edges are `[row, col, color]`.
    pub fn to_json(&self, g: &ColoredBipartiteGraph) -> Value {
        let mut v = json!({
            "schema": REPORT_SCHEMA,
            "decision": self.decision,
            "n": self.n,
            "t": self.t,
            "blocks": self.blocks.iter().map(|b| json!({
                "n": b.n,
                "feasible_t": b.feasible_t,
                "method": b.method.as_str(),
            })).collect::<Vec<_>>(),
            "timings": self.timings,
        });
        if let Some(w) = &self.witness {
            v["witness"] = w.edges(g).iter().map(|e| json!([e.row, e.col, e.color.bit()])).collect();
        }
        v
    }
}

type Key = (Vec<usize>, Vec<usize>);

/// Achievable red counts of induced subgraphs of one input graph, memoised
/// on the `(rows, cols)` pair.
///
/// A connected matching-covered piece is either a brace, decided by the
/// determinant test, or split along a tight set `(A1, B1)`: every perfect
/// matching uses exactly one crossing edge `e = (a, b)`, so
/// `Ach = ⋃_e ρ(e) + Ach(A1 - a, B1) + Ach(A - A1, B - B1 - b)`.
pub(crate) struct Engine<'g> {
    g: &'g ColoredBipartiteGraph,
    opts: SolveOptions,
    memo: HashMap<Key, Rc<BTreeSet<usize>>>,
    blocks: Vec<BlockReport>,
    structure: Duration,
    grid: Duration,
}

impl<'g> Engine<'g> {
    pub fn new(g: &'g ColoredBipartiteGraph, opts: &SolveOptions) -> Self {
        Self {
            g,
            opts: opts.clone(),
            memo: HashMap::new(),
            blocks: Vec::new(),
            structure: Duration::ZERO,
            grid: Duration::ZERO,
        }
    }

    pub fn achievable(&mut self, rows: &[usize], cols: &[usize]) -> Result<Rc<BTreeSet<usize>>, SolveError> {
        if rows.is_empty() {
            return Ok(Rc::new(BTreeSet::from([0])));
        }
        let key = (rows.to_vec(), cols.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let result = Rc::new(self.compute(rows, cols)?);
        self.memo.insert(key, result.clone());
        Ok(result)
    }

    fn compute(&mut self, rows: &[usize], cols: &[usize]) -> Result<BTreeSet<usize>, SolveError> {
        let start = Instant::now();
        let (h, _) = self.g.induced(rows, cols);
        let allowed = match allowed_edge_ids(&h) {
            Ok(ids) => ids,
            Err(MatchingError::NoPerfectMatching) => {
                self.structure += start.elapsed();
                return Ok(BTreeSet::new());
            }
            Err(e) => return Err(e.into()),
        };
        let h = h.with_edge_ids(allowed);
        let comps = h.components();
        self.structure += start.elapsed();

        if comps.len() > 1 {
            let mut acc = BTreeSet::from([0]);
            for (cr, cc) in comps {
                let sub_rows: Vec<usize> = cr.iter().map(|&r| rows[r]).collect();
                let sub_cols: Vec<usize> = cc.iter().map(|&c| cols[c]).collect();
                let sub = self.achievable(&sub_rows, &sub_cols)?;
                acc = sumset(&acc, &sub, 0);
                if acc.is_empty() {
                    break;
                }
            }
            return Ok(acc);
        }

        let start = Instant::now();
        let cert = if h.n() <= 2 || is_brace(&h) {
            None
        } else {
            match find_tight_set(&h) {
                Ok(c) => Some(c),
                Err(MatchingError::IsBrace) => None,
                Err(e) => return Err(e.into()),
            }
        };
        self.structure += start.elapsed();
        let Some(cert) = cert else {
            return self.block_table(&h, rows, cols);
        };

        let n = h.n();
        let mut in_a1 = vec![false; n];
        let mut in_b1 = vec![false; n];
        cert.a1.iter().for_each(|&r| in_a1[r] = true);
        cert.b1.iter().for_each(|&c| in_b1[c] = true);
        let right_rows: Vec<usize> = (0..n).filter(|&r| !in_a1[r]).map(|r| rows[r]).collect();
        let mut out = BTreeSet::new();
        for e in h.edges().iter().filter(|e| in_a1[e.row] && !in_b1[e.col]) {
            let left_rows: Vec<usize> = cert.a1.iter().filter(|&&r| r != e.row).map(|&r| rows[r]).collect();
            let left_cols: Vec<usize> = cert.b1.iter().map(|&c| cols[c]).collect();
            let left = self.achievable(&left_rows, &left_cols)?;
            if left.is_empty() {
                continue;
            }
            let right_cols: Vec<usize> = (0..n).filter(|&c| !in_b1[c] && c != e.col).map(|c| cols[c]).collect();
            let right = self.achievable(&right_rows, &right_cols)?;
            out.extend(sumset(&left, &right, e.color.bit()));
        }
        Ok(out)
    }

    fn block_table(
        &mut self,
        h: &ColoredBipartiteGraph,
        rows: &[usize],
        cols: &[usize],
    ) -> Result<BTreeSet<usize>, SolveError> {
        let start = Instant::now();
        let k = h.n();
        let multi = h.edges().windows(2).any(|w| w[0].row == w[1].row && w[0].col == w[1].col);
        let oracle = |h: &ColoredBipartiteGraph| -> Result<BTreeSet<usize>, SolveError> {
            Ok(fiber_table(h)?.support().into_iter().collect())
        };
        let (feasible, method) = if k <= self.opts.fallback_brute {
            (oracle(h)?, BlockMethod::OracleFallback)
        } else {
            let (lo, hi) = red_count_range(h)
                .ok_or(SolveError::InternalInconsistency("brace block without a perfect matching"))?;
            let candidates: Vec<usize> = (lo..=hi).collect();
            let det = nonvanishing_targets(h, &candidates, self.opts.threads)?;
            if multi && k <= ORACLE_CROSSCHECK_LIMIT {
                (oracle(h)?, BlockMethod::OracleFallback)
            } else if multi {
                (det, BlockMethod::AsncExtension)
            } else {
                (det, BlockMethod::PureAsnc)
            }
        };
        self.blocks.push(BlockReport {
            n: k,
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            feasible_t: feasible.iter().copied().collect(),
            method,
        });
        self.grid += start.elapsed();
        Ok(feasible)
    }

    /// Self-reduction: fix the smallest remaining row and commit the first
    /// edge whose removal keeps the residual target achievable.
    pub fn witness(&mut self, t: usize) -> Result<Matching, SolveError> {
        let g = self.g;
        let mut rows: Vec<usize> = (0..g.n()).collect();
        let mut cols: Vec<usize> = (0..g.n()).collect();
        let mut target = t;
        let mut chosen = Vec::with_capacity(g.n());
        while let Some(&i) = rows.first() {
            let sub_rows: Vec<usize> = rows[1..].to_vec();
            let mut committed = false;
            for id in g.row_edge_ids(i) {
                let e = g.edge(id);
                let Ok(pos) = cols.binary_search(&e.col) else { continue };
                let Some(rest) = target.checked_sub(e.color.bit()) else { continue };
                let mut sub_cols = cols.clone();
                sub_cols.remove(pos);
                if self.achievable(&sub_rows, &sub_cols)?.contains(&rest) {
                    chosen.push(id);
                    rows = sub_rows;
                    cols = sub_cols;
                    target = rest;
                    committed = true;
                    break;
                }
            }
            if !committed {
                return Err(SolveError::InternalInconsistency("no edge extends the partial witness"));
            }
        }
        let m = Matching::from_edge_ids(g, chosen).ok_or(SolveError::InternalInconsistency("witness edges overlap"))?;
        if !m.is_perfect() || m.red_count != t {
            return Err(SolveError::InternalInconsistency("witness has the wrong red count"));
        }
        Ok(m)
    }

    pub fn into_blocks(self) -> (Vec<BlockReport>, Duration, Duration) {
        (self.blocks, self.structure, self.grid)
    }
}

/// The brace evaluated for `block`: the subgraph of `g` on its rows and
/// columns, restricted to edges that lie in some perfect matching.
pub fn block_graph(g: &ColoredBipartiteGraph, block: &BlockReport) -> Result<ColoredBipartiteGraph, SolveError> {
    let (h, _) = g.induced(&block.rows, &block.cols);
    let keep = allowed_edge_ids(&h)?;
    Ok(h.with_edge_ids(keep))
}

fn sumset(a: &BTreeSet<usize>, b: &BTreeSet<usize>, shift: usize) -> BTreeSet<usize> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x + y + shift)).collect()
}

/// Red counts achievable by perfect matchings of `g`, with the brace blocks
/// that were evaluated along the way.
pub fn achievable_targets(
    g: &ColoredBipartiteGraph,
    opts: &SolveOptions,
) -> Result<(BTreeSet<usize>, Vec<BlockReport>), SolveError> {
    let all: Vec<usize> = (0..g.n()).collect();
    let mut engine = Engine::new(g, opts);
    let set = engine.achievable(&all, &all)?;
    let (blocks, _, _) = engine.into_blocks();
    Ok(((*set).clone(), blocks))
}

/// Decides whether `g` has a perfect matching with exactly `t` red edges.
pub fn solve(g: &ColoredBipartiteGraph, t: TargetSpec, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    let total = Instant::now();
    let n = g.n();
    let in_range = usize::try_from(t).ok().filter(|&t| t <= n);
    let mut engine = Engine::new(g, opts);
    let all: Vec<usize> = (0..n).collect();
    let achievable = match in_range {
        Some(_) => (*engine.achievable(&all, &all)?).clone(),
        None => BTreeSet::new(),
    };
    let decided_blocks = engine.blocks.len();
    let decision = match in_range {
        Some(t) if achievable.contains(&t) => Decision::Yes,
        _ => Decision::No,
    };
    let witness = match (decision, in_range) {
        (Decision::Yes, Some(t)) if opts.witness => Some(engine.witness(t)?),
        _ => None,
    };
    let (mut blocks, structure, grid) = engine.into_blocks();
    // Witness extraction visits further blocks; the report lists the decision's.
    blocks.truncate(decided_blocks);
    let ms = |d: Duration| d.as_secs_f64() * 1e3;
    let dp = total.elapsed().saturating_sub(structure + grid);
    Ok(SolveReport {
        decision,
        n,
        t,
        achievable: achievable.into_iter().collect(),
        blocks,
        witness,
        timings: Timings { decompose_ms: ms(structure), grid_ms: ms(grid), dp_ms: ms(dp) },
    })
}

/// A perfect matching with exactly `t` red edges, by self-reduction.
pub fn extract_witness(g: &ColoredBipartiteGraph, t: TargetSpec, opts: &SolveOptions) -> Result<Matching, SolveError> {
    let n = g.n();
    let t = usize::try_from(t).ok().filter(|&t| t <= n).ok_or(SolveError::NoSolution)?;
    let mut engine = Engine::new(g, opts);
    let all: Vec<usize> = (0..n).collect();
    if !engine.achievable(&all, &all)?.contains(&t) {
        return Err(SolveError::NoSolution);
    }
    engine.witness(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_family, Coloring, Edge, Family, FamilySpec};

    fn opts() -> SolveOptions {
        SolveOptions::default()
    }

    fn c6(red: &[(usize, usize)]) -> ColoredBipartiteGraph {
        let cells = [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)];
        let edges = cells
            .iter()
            .map(|&(r, c)| if red.contains(&(r, c)) { Edge::red(r, c) } else { Edge::blue(r, c) })
            .collect();
        ColoredBipartiteGraph::simple(3, edges).unwrap()
    }

    #[test]
    fn k44_diagonal() {
        let g = gen_family(&FamilySpec::colored(Family::Knn { n: 4 }, Coloring::Diagonal), 0).unwrap();
        assert!(solve(&g, 2, &opts()).unwrap().is_yes());
        let no = solve(&g, 3, &opts()).unwrap();
        assert!(!no.is_yes());
        assert_eq!(no.achievable, vec![0, 1, 2, 4]);
        assert_eq!(no.blocks.len(), 1);
        assert_eq!(no.blocks[0].method, BlockMethod::PureAsnc);
        assert!(!solve(&g, 5, &opts()).unwrap().is_yes());
        assert!(!solve(&g, -1, &opts()).unwrap().is_yes());
    }

    #[test]
    fn c6_cases() {
        assert!(solve(&c6(&[(0, 0)]), 1, &opts()).unwrap().is_yes());
        // both red edges sit on the same perfect matching
        let g = c6(&[(0, 0), (2, 2)]);
        assert_eq!(solve(&g, 0, &opts()).unwrap().achievable, vec![0, 2]);
        // red edges on different matchings
        let g = c6(&[(0, 0), (2, 1)]);
        assert_eq!(solve(&g, 0, &opts()).unwrap().achievable, vec![1]);
    }

    #[test]
    fn witnesses() {
        let g = ColoredBipartiteGraph::simple(
            2,
            vec![Edge::red(0, 0), Edge::blue(0, 1), Edge::blue(1, 0), Edge::blue(1, 1)],
        )
        .unwrap();
        let w = extract_witness(&g, 1, &opts()).unwrap();
        assert_eq!(w.edges(&g), vec![Edge::red(0, 0), Edge::blue(1, 1)]);
        let k33 = gen_family(&FamilySpec::new(Family::Knn { n: 3 }), 0).unwrap();
        assert_eq!(extract_witness(&k33, 0, &opts()).unwrap().permutation(), Some(vec![0, 1, 2]));
        assert_eq!(extract_witness(&k33, 1, &opts()), Err(SolveError::NoSolution));
    }

    #[test]
    fn witness_does_not_change_reported_blocks() {
        let g = gen_family(&FamilySpec::colored(Family::Knn { n: 4 }, Coloring::Diagonal), 0).unwrap();
        let plain = solve(&g, 2, &opts()).unwrap();
        let with = solve(&g, 2, &SolveOptions { witness: true, ..opts() }).unwrap();
        assert_eq!(plain.blocks, with.blocks);
        assert!(with.witness.is_some());
    }

    #[test]
    fn disconnected_and_no_pm() {
        let k = gen_family(&FamilySpec::colored(Family::Knn { n: 2 }, Coloring::Diagonal), 0).unwrap();
        let g = k.disjoint_union(&k);
        assert_eq!(solve(&g, 0, &opts()).unwrap().achievable, vec![0, 2, 4]);
        let no_pm = ColoredBipartiteGraph::simple(2, vec![Edge::blue(0, 0), Edge::blue(1, 0)]).unwrap();
        assert!(!solve(&no_pm, 0, &opts()).unwrap().is_yes());
    }

    #[test]
    fn multigraph_block_is_cross_checked() {
        let g = ColoredBipartiteGraph::new(
            2,
            vec![Edge::blue(0, 0), Edge::red(0, 0), Edge::blue(0, 1), Edge::blue(1, 0), Edge::blue(1, 1)],
            true,
        )
        .unwrap();
        let r = solve(&g, 1, &opts()).unwrap();
        assert!(r.is_yes());
        assert_eq!(r.methods(), vec![BlockMethod::OracleFallback]);
    }

    #[test]
    fn json_schema() {
        let g = c6(&[(0, 0)]);
        let r = solve(&g, 1, &SolveOptions { witness: true, ..opts() }).unwrap();
        let v = r.to_json(&g);
        assert_eq!(v["schema"], "exactmatch/1");
        assert_eq!(v["decision"], "YES");
        assert_eq!(v["witness"].as_array().unwrap().len(), 3);
        assert!(v["timings"]["grid_ms"].is_number());
        assert_eq!(v["blocks"][0]["method"], "pure-asnc");
    }
}
