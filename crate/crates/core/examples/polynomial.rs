//! Exact-t polynomials from the evaluation grid, checked against the
//! enumerated signed sum.

use exactmatch::graph::{parse_ebg, ColoredBipartiteGraph, Edge};
use exactmatch::oracle::symbolic_pt;
use exactmatch::solver::{nonvanishing_targets, pt_polynomial};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k22 =
        ColoredBipartiteGraph::simple(2, vec![Edge::red(0, 0), Edge::blue(0, 1), Edge::blue(1, 0), Edge::blue(1, 1)])?;
    let c6 = parse_ebg(include_str!("../fixtures/c6_one_red.ebg"))?;

    for (name, g) in [("K22", &k22), ("C6", &c6)] {
        for t in 0..=g.n() as i64 {
            let p = pt_polynomial(g, t)?;
            assert_eq!(p, symbolic_pt(g, t)?);
            println!("{name} P_{t} = {p}");
        }
        let all: Vec<usize> = (0..=g.n()).collect();
        println!("{name} nonvanishing targets: {:?}", nonvanishing_targets(g, &all, 1)?);
    }
    Ok(())
}
