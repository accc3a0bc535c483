//! Tight-cut decomposition of a band path into brace blocks, with the
//! Graphviz rendering of the tree.

use exactmatch::decomposition::{achievable_sets_compose, decompose};
use exactmatch::graph::{gen_family, Coloring, Family, FamilySpec};
use exactmatch::matching::find_tight_set;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = gen_family(&FamilySpec::colored(Family::BandPath { m: 5 }, Coloring::Diagonal), 0)?;
    println!("first tight set: {:?}", find_tight_set(&g)?);

    let tree = decompose(&g)?;
    for (k, b) in tree.leaves().iter().enumerate() {
        println!("block {k}: n={} rows={:?} cols={:?}", b.block_n(), b.rows, b.cols);
    }
    println!("composition agrees with enumeration: {}", achievable_sets_compose(&g, &tree)?);
    print!("{}", tree.to_dot());
    Ok(())
}
