//! Width-2 band graphs: branch factorisation, cyclic splits, and transfer
//! matrices against brute force.

use exactmatch::graph::{gen_family, Coloring, Family, FamilySpec};
use exactmatch::oracle::{transfer_check, width2_branch_check, width2_cyclic_split_check, TernaryWord};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = gen_family(&FamilySpec::colored(Family::BandPath { m: 6 }, Coloring::Diagonal), 0)?;
    let ring = gen_family(&FamilySpec::colored(Family::BandCyclic { m: 6 }, Coloring::Bernoulli(0.5)), 3)?;
    for t in 0..=6 {
        let split = width2_cyclic_split_check(&ring, t)?;
        println!("t={t} branch={} cyclic={:?}", width2_branch_check(&path, t)?, split.branch_sizes);
    }

    let word = TernaryWord(vec![1, -1, 0, 1, 1]);
    let report = transfer_check(&word);
    println!("{:?}: agree={} deltas={:?}", word.0, report.agree, report.deltas);
    Ok(())
}
