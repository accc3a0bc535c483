//! Tight-cut decomposition into brace blocks.
//!
//! A split along a certificate `(A1, B1)` yields a left block on rows `A1`
//! and columns `B1 + b*`, and a right block on rows `(A \ A1) + a*` and
//! columns `B \ B1`. Every edge leaving the shore is copied into both blocks,
//! at the contracted vertex, with its color and original edge id.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{ColoredBipartiteGraph, Edge};
use crate::matching::{find_tight_set, is_brace, is_matching_covered, MatchingError, TightSetCertificate};
use crate::oracle::{enumerate_pms, fiber_table, OracleError, DEFAULT_ORACLE_CAP};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecompositionError {
    #[error("graph is not matching-covered")]
    NotMatchingCovered,
    #[error("tight-set search unsupported for n = {0}")]
    UnsupportedSize(usize),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("composition oracle requires n <= {limit}, got {n}")]
    OracleCap { n: usize, limit: usize },
}

/// Largest `n` accepted by [`achievable_sets_compose`].
pub const COMPOSE_ORACLE_LIMIT: usize = 8;

/// Where a block vertex comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VertexOrigin {
    Original(usize),
    /// Contracted vertex of the split with this pre-order index.
    Contracted(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BraceBlock {
    #[serde(skip)]
    pub graph: ColoredBipartiteGraph,
    /// Original edge id of each block edge.
    pub provenance: Vec<usize>,
    pub rows: Vec<VertexOrigin>,
    pub cols: Vec<VertexOrigin>,
}

impl BraceBlock {
    pub fn block_n(&self) -> usize {
        self.graph.n()
    }

    /// True when some cell carries parallel edges.
    pub fn has_parallel_edges(&self) -> bool {
        self.graph.edges().windows(2).any(|w| w[0].row == w[1].row && w[0].col == w[1].col)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum DecompositionTree {
    Leaf(BraceBlock),
    Split {
        /// Pre-order index, shared with the contracted vertices it creates.
        index: usize,
        /// Certificate in the coordinates of the graph being split.
        certificate: TightSetCertificate,
        /// Original ids of the edges crossing the cut.
        crossing: Vec<usize>,
        left: Box<DecompositionTree>,
        right: Box<DecompositionTree>,
    },
}

impl DecompositionTree {
    pub fn leaves(&self) -> Vec<&BraceBlock> {
        match self {
            Self::Leaf(b) => vec![b],
            Self::Split { left, right, .. } => {
                let mut v = left.leaves();
                v.extend(right.leaves());
                v
            }
        }
    }

    pub fn split_count(&self) -> usize {
        match self {
            Self::Leaf(_) => 0,
            Self::Split { left, right, .. } => 1 + left.split_count() + right.split_count(),
        }
    }

    /// Graphviz rendering: splits as ellipses, leaves as boxes.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph decomposition {\n  node [fontname=\"monospace\"];\n");
        let mut next_id = 0;
        self.dot_node(&mut out, &mut next_id);
        out.push_str("}\n");
        out
    }

    fn dot_node(&self, out: &mut String, next_id: &mut usize) -> usize {
        let id = *next_id;
        *next_id += 1;
        match self {
            Self::Leaf(b) => {
                let edges: Vec<String> = b
                    .graph
                    .edges()
                    .iter()
                    .map(|e| format!("{}{}{}", e.row, if e.color.is_red() { 'r' } else { '-' }, e.col))
                    .collect();
                let _ = writeln!(out, "  n{id} [shape=box, label=\"brace n={}\\n{}\"];", b.block_n(), edges.join(" "));
            }
            Self::Split { index, certificate, crossing, left, right } => {
                let _ = writeln!(
                    out,
                    "  n{id} [shape=ellipse, label=\"split {index}\\nA1={:?} B1={:?}\\ncrossing={:?}\"];",
                    certificate.a1, certificate.b1, crossing
                );
                let l = left.dot_node(out, next_id);
                let r = right.dot_node(out, next_id);
                let _ = writeln!(out, "  n{id} -> n{l} [label=\"L\"];");
                let _ = writeln!(out, "  n{id} -> n{r} [label=\"R\"];");
            }
        }
        id
    }
}

struct Node {
    graph: ColoredBipartiteGraph,
    provenance: Vec<usize>,
    rows: Vec<VertexOrigin>,
    cols: Vec<VertexOrigin>,
}

/// Decomposes a matching-covered graph into brace blocks.
pub fn decompose(g: &ColoredBipartiteGraph) -> Result<DecompositionTree, DecompositionError> {
    if !is_matching_covered(g) {
        return Err(DecompositionError::NotMatchingCovered);
    }
    let root = Node {
        graph: g.clone(),
        provenance: (0..g.edge_count()).collect(),
        rows: (0..g.n()).map(VertexOrigin::Original).collect(),
        cols: (0..g.n()).map(VertexOrigin::Original).collect(),
    };
    let mut splits = 0;
    split(root, &mut splits)
}

fn split(node: Node, splits: &mut usize) -> Result<DecompositionTree, DecompositionError> {
    let leaf = |node: Node| {
        DecompositionTree::Leaf(BraceBlock {
            graph: node.graph,
            provenance: node.provenance,
            rows: node.rows,
            cols: node.cols,
        })
    };
    if node.graph.n() <= 2 || is_brace(&node.graph) {
        return Ok(leaf(node));
    }
    let cert = match find_tight_set(&node.graph) {
        Ok(c) => c,
        Err(MatchingError::IsBrace) => return Ok(leaf(node)),
        Err(MatchingError::UnsupportedSize(n)) => return Err(DecompositionError::UnsupportedSize(n)),
        Err(_) => return Err(DecompositionError::NotMatchingCovered),
    };
    let index = *splits;
    *splits += 1;
    let (left, right, crossing) = contract(&node, &cert, index);
    let left = split(left, splits)?;
    let right = split(right, splits)?;
    Ok(DecompositionTree::Split { index, certificate: cert, crossing, left: Box::new(left), right: Box::new(right) })
}

fn contract(node: &Node, cert: &TightSetCertificate, index: usize) -> (Node, Node, Vec<usize>) {
    let h = &node.graph;
    let n = h.n();
    let mut in_a1 = vec![false; n];
    let mut in_b1 = vec![false; n];
    cert.a1.iter().for_each(|&r| in_a1[r] = true);
    cert.b1.iter().for_each(|&c| in_b1[c] = true);
    let rows_r: Vec<usize> = (0..n).filter(|&r| !in_a1[r]).collect();
    let cols_r: Vec<usize> = (0..n).filter(|&c| !in_b1[c]).collect();
    let pos = |list: &[usize]| {
        let mut p = vec![usize::MAX; n];
        for (k, &v) in list.iter().enumerate() {
            p[v] = k;
        }
        p
    };
    let (row_l, col_l, row_r, col_r) = (pos(&cert.a1), pos(&cert.b1), pos(&rows_r), pos(&cols_r));
    let b_star = cert.b1.len();
    let a_star = rows_r.len();

    let mut left: Vec<(Edge, usize)> = Vec::new();
    let mut right: Vec<(Edge, usize)> = Vec::new();
    let mut crossing = Vec::new();
    for (id, e) in h.edges().iter().enumerate() {
        let orig = node.provenance[id];
        match (in_a1[e.row], in_b1[e.col]) {
            (true, true) => left.push((Edge::new(row_l[e.row], col_l[e.col], e.color), orig)),
            (false, false) => right.push((Edge::new(row_r[e.row], col_r[e.col], e.color), orig)),
            (true, false) => {
                left.push((Edge::new(row_l[e.row], b_star, e.color), orig));
                right.push((Edge::new(a_star, col_r[e.col], e.color), orig));
                crossing.push(orig);
            }
            (false, true) => unreachable!("certificate guarantees N(B1) within A1"),
        }
    }
    let build = |mut tagged: Vec<(Edge, usize)>, size: usize| {
        tagged.sort();
        let multi = tagged.windows(2).any(|w| w[0].0.row == w[1].0.row && w[0].0.col == w[1].0.col);
        let prov = tagged.iter().map(|&(_, o)| o).collect();
        let g = ColoredBipartiteGraph::from_parts_unchecked(size, tagged.into_iter().map(|(e, _)| e).collect(), multi);
        (g, prov)
    };
    let (lg, lp) = build(left, cert.a1.len());
    let (rg, rp) = build(right, rows_r.len() + 1);
    let mut l_cols: Vec<VertexOrigin> = cert.b1.iter().map(|&c| node.cols[c]).collect();
    l_cols.push(VertexOrigin::Contracted(index));
    let mut r_rows: Vec<VertexOrigin> = rows_r.iter().map(|&r| node.rows[r]).collect();
    r_rows.push(VertexOrigin::Contracted(index));
    let left = Node { graph: lg, provenance: lp, rows: cert.a1.iter().map(|&r| node.rows[r]).collect(), cols: l_cols };
    let right = Node { graph: rg, provenance: rp, rows: r_rows, cols: cols_r.iter().map(|&c| node.cols[c]).collect() };
    (left, right, crossing)
}

/// Perfect matchings of the tree's root, as sorted original edge id lists,
/// assembled from leaf enumerations by pairing matchings of the two sides
/// that use the same crossing edge.
pub fn composed_matchings(tree: &DecompositionTree) -> Result<BTreeSet<Vec<usize>>, DecompositionError> {
    match tree {
        DecompositionTree::Leaf(b) => Ok(enumerate_pms(&b.graph, DEFAULT_ORACLE_CAP)?
            .into_iter()
            .map(|m| {
                let mut ids: Vec<usize> = m.edge_ids.iter().flatten().map(|&id| b.provenance[id]).collect();
                ids.sort_unstable();
                ids
            })
            .collect()),
        DecompositionTree::Split { crossing, left, right, .. } => {
            let by_crossing = |set: BTreeSet<Vec<usize>>| {
                let mut groups: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
                for m in set {
                    let shared: Vec<usize> = crossing.iter().copied().filter(|c| m.binary_search(c).is_ok()).collect();
                    assert_eq!(shared.len(), 1, "a block matching uses exactly one crossing edge");
                    groups.entry(shared[0]).or_default().push(m);
                }
                groups
            };
            let l = by_crossing(composed_matchings(left)?);
            let r = by_crossing(composed_matchings(right)?);
            let mut out = BTreeSet::new();
            for (c, ls) in &l {
                for rm in r.get(c).into_iter().flatten() {
                    for lm in ls {
                        let mut ids: Vec<usize> = lm.iter().chain(rm).copied().collect();
                        ids.sort_unstable();
                        ids.dedup();
                        out.insert(ids);
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Checks that red counts composed from the leaves equal the red counts of
/// the perfect matchings of `g`. Each crossing edge is counted once.
pub fn achievable_sets_compose(
    g: &ColoredBipartiteGraph,
    tree: &DecompositionTree,
) -> Result<bool, DecompositionError> {
    if g.n() > COMPOSE_ORACLE_LIMIT {
        return Err(DecompositionError::OracleCap { n: g.n(), limit: COMPOSE_ORACLE_LIMIT });
    }
    let composed: BTreeSet<usize> = composed_matchings(tree)?
        .iter()
        .map(|ids| ids.iter().filter(|&&id| g.edge(id).color.is_red()).count())
        .collect();
    let direct: BTreeSet<usize> = fiber_table(g)?.support().into_iter().collect();
    Ok(composed == direct)
}

/// Provenance totality: an original edge crossing `k` splits lies in exactly
/// `k + 1` leaves, and block edges keep their original color.
pub fn check_provenance(g: &ColoredBipartiteGraph, tree: &DecompositionTree) -> bool {
    fn crossings(t: &DecompositionTree, counts: &mut [usize]) {
        if let DecompositionTree::Split { crossing, left, right, .. } = t {
            crossing.iter().for_each(|&c| counts[c] += 1);
            crossings(left, counts);
            crossings(right, counts);
        }
    }
    let mut cross = vec![0; g.edge_count()];
    crossings(tree, &mut cross);
    let mut seen = vec![0; g.edge_count()];
    for leaf in tree.leaves() {
        for (k, &orig) in leaf.provenance.iter().enumerate() {
            if orig >= g.edge_count() || leaf.graph.edge(k).color != g.edge(orig).color {
                return false;
            }
            seen[orig] += 1;
        }
    }
    seen.iter().zip(&cross).all(|(&s, &c)| s == c + 1)
}
