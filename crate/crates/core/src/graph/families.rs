use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{ColoredBipartiteGraph, Edge, EdgeColor, GraphError};
use crate::matching::has_perfect_matching;

const REQUIRE_PM_ATTEMPTS: usize = 1000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Family {
    /// Complete bipartite graph.
    Knn {
        n: usize,
    },
    /// Double-hub wheel on `m` vertices per side: row 0 and column 0 are hubs,
    /// rows/columns `1..m` form the rim cycle.
    Biwheel {
        m: usize,
    },
    /// Tridiagonal band, `|i - j| <= 1`.
    BandPath {
        m: usize,
    },
    /// Cyclic tridiagonal band, `i - j ≡ 0, ±1 (mod m)`.
    BandCyclic {
        m: usize,
    },
    Random {
        n: usize,
        density: f64,
        red_prob: f64,
        require_pm: bool,
    },
}

/// Coloring directive applied on top of a family skeleton.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub enum Coloring {
    /// The family's own coloring: all blue, or Bernoulli(red_prob) for `Random`.
    #[default]
    Native,
    AllBlue,
    /// Edges on the main diagonal are red.
    Diagonal,
    /// Explicit red cells.
    List(Vec<(usize, usize)>),
    /// Each edge red independently with this probability (seeded).
    Bernoulli(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub coloring: Coloring,
}

impl FamilySpec {
    pub fn new(family: Family) -> Self {
        Self { family, coloring: Coloring::Native }
    }

    pub fn colored(family: Family, coloring: Coloring) -> Self {
        Self { family, coloring }
    }
}

/// Generates a family member. Output is a deterministic function of `(spec, seed)`.
pub fn gen_family(spec: &FamilySpec, seed: u64) -> Result<ColoredBipartiteGraph, GraphError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let skeleton = match spec.family {
        Family::Knn { n } => {
            require(n >= 1, "knn needs n >= 1")?;
            let cells = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
            blue(n, cells)
        }
        Family::Biwheel { m } => {
            require(m >= 3, "biwheel needs m >= 3")?;
            let mut cells = Vec::new();
            for j in 1..m {
                cells.push((0, j));
            }
            for i in 1..m {
                cells.push((i, 0));
                let next = if i + 1 < m { i + 1 } else { 1 };
                cells.push((i, i));
                if next != i {
                    cells.push((i, next));
                }
            }
            cells.sort_unstable();
            cells.dedup();
            blue(m, cells)
        }
        Family::BandPath { m } => {
            require(m >= 1, "band_path needs m >= 1")?;
            let cells = (0..m).flat_map(|i| (i.saturating_sub(1)..(i + 2).min(m)).map(move |j| (i, j))).collect();
            blue(m, cells)
        }
        Family::BandCyclic { m } => {
            require(m >= 1, "band_cyclic needs m >= 1")?;
            let mut cells: Vec<(usize, usize)> =
                (0..m).flat_map(|i| [i, (i + 1) % m, (i + m - 1) % m].map(|j| (i, j))).collect();
            cells.sort_unstable();
            cells.dedup();
            blue(m, cells)
        }
        Family::Random { n, density, red_prob, require_pm } => {
            require(n >= 1, "random needs n >= 1")?;
            require(density > 0.0 && density <= 1.0, "density must lie in (0, 1]")?;
            require((0.0..=1.0).contains(&red_prob), "red_prob must lie in [0, 1]")?;
            let mut attempts = 0;
            loop {
                let mut edges = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        if rng.gen_bool(density) {
                            let color = if rng.gen_bool(red_prob) { EdgeColor::Red } else { EdgeColor::Blue };
                            edges.push(Edge::new(i, j, color));
                        }
                    }
                }
                let g = ColoredBipartiteGraph::from_parts_unchecked(n, edges, false);
                attempts += 1;
                if !require_pm || has_perfect_matching(&g) {
                    break g;
                }
                if attempts >= REQUIRE_PM_ATTEMPTS {
                    return Err(GraphError::BadParams(format!(
                        "no perfect-matchable instance after {REQUIRE_PM_ATTEMPTS} attempts"
                    )));
                }
            }
        }
    };
    apply_coloring(skeleton, &spec.coloring, &mut rng)
}

fn require(ok: bool, msg: &str) -> Result<(), GraphError> {
    if ok {
        Ok(())
    } else {
        Err(GraphError::BadParams(msg.to_string()))
    }
}

fn blue(n: usize, cells: Vec<(usize, usize)>) -> ColoredBipartiteGraph {
    ColoredBipartiteGraph::from_parts_unchecked(n, cells.into_iter().map(|(i, j)| Edge::blue(i, j)).collect(), false)
}

fn apply_coloring(
    g: ColoredBipartiteGraph,
    coloring: &Coloring,
    rng: &mut ChaCha8Rng,
) -> Result<ColoredBipartiteGraph, GraphError> {
    Ok(match coloring {
        Coloring::Native => g,
        Coloring::AllBlue => g.with_colors(|_| EdgeColor::Blue),
        Coloring::Diagonal => g.with_colors(|e| if e.row == e.col { EdgeColor::Red } else { EdgeColor::Blue }),
        Coloring::List(cells) => {
            for &(r, c) in cells {
                if !g.has_cell(r, c) {
                    return Err(GraphError::BadParams(format!("red cell ({r}, {c}) is not an edge")));
                }
            }
            g.with_colors(|e| if cells.contains(&(e.row, e.col)) { EdgeColor::Red } else { EdgeColor::Blue })
        }
        Coloring::Bernoulli(p) => {
            require((0.0..=1.0).contains(p), "red probability must lie in [0, 1]")?;
            g.with_colors(|_| if rng.gen_bool(*p) { EdgeColor::Red } else { EdgeColor::Blue })
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate;

    fn gen(f: Family) -> ColoredBipartiteGraph {
        gen_family(&FamilySpec::new(f), 0).unwrap()
    }

    #[test]
    fn band_path_edge_count() {
        assert_eq!(gen(Family::BandPath { m: 4 }).edge_count(), 10);
        assert_eq!(gen(Family::BandPath { m: 1 }).edge_count(), 1);
    }

    #[test]
    fn band_cyclic_edges() {
        assert_eq!(gen(Family::BandCyclic { m: 6 }).edge_count(), 18);
        assert_eq!(gen(Family::BandCyclic { m: 2 }).edge_count(), 4);
        assert_eq!(gen(Family::BandCyclic { m: 1 }).edge_count(), 1);
    }

    #[test]
    fn biwheel_degrees() {
        let g = gen(Family::Biwheel { m: 4 });
        assert_eq!(g.n(), 4);
        // hubs see the whole rim; the hub-hub cell is absent
        assert_eq!(g.row_neighbors(0), vec![1, 2, 3]);
        assert_eq!(g.col_neighbors()[0], vec![1, 2, 3]);
        for i in 1..4 {
            assert_eq!(g.row_neighbors(i).len(), 3);
        }
    }

    #[test]
    fn random_is_deterministic() {
        let f = Family::Random { n: 6, density: 0.5, red_prob: 0.3, require_pm: false };
        let a = gen_family(&FamilySpec::new(f.clone()), 42).unwrap();
        let b = gen_family(&FamilySpec::new(f.clone()), 42).unwrap();
        assert_eq!(a, b);
        let c = gen_family(&FamilySpec::new(f), 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn bad_params() {
        for f in [
            Family::Biwheel { m: 2 },
            Family::Knn { n: 0 },
            Family::BandPath { m: 0 },
            Family::Random { n: 3, density: 0.0, red_prob: 0.5, require_pm: false },
            Family::Random { n: 3, density: 0.5, red_prob: 1.5, require_pm: false },
        ] {
            assert!(matches!(gen_family(&FamilySpec::new(f), 1), Err(GraphError::BadParams(_))));
        }
    }

    #[test]
    fn generators_validate_clean() {
        for m in 3..8 {
            assert!(validate(&gen(Family::Biwheel { m })).is_empty());
        }
        for m in 1..10 {
            assert!(validate(&gen(Family::BandPath { m })).is_empty());
            assert!(validate(&gen(Family::BandCyclic { m })).is_empty());
            assert!(validate(&gen(Family::Knn { n: m })).is_empty());
        }
        let f = Family::Random { n: 7, density: 0.6, red_prob: 0.4, require_pm: true };
        for seed in 0..20 {
            assert!(validate(&gen_family(&FamilySpec::new(f.clone()), seed).unwrap()).is_empty());
        }
    }

    #[test]
    fn colorings() {
        let g = gen_family(&FamilySpec::colored(Family::Knn { n: 3 }, Coloring::Diagonal), 0).unwrap();
        assert_eq!(g.red_edge_count(), 3);
        let g = gen_family(&FamilySpec::colored(Family::Knn { n: 3 }, Coloring::List(vec![(0, 2)])), 0).unwrap();
        assert_eq!(g.red_edge_count(), 1);
        assert!(g.find_edge(0, 2, Some(EdgeColor::Red)).is_some());
        let bad = FamilySpec::colored(Family::BandPath { m: 3 }, Coloring::List(vec![(0, 2)]));
        assert!(gen_family(&bad, 0).is_err());
    }
}
