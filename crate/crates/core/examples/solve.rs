//! Decide exact-count perfect matchings on K_{4,4} with a red diagonal and
//! print a witness for each achievable target.
//!
//! ```text
//! cargo run --example solve
//! ```

use exactmatch::graph::{gen_family, Coloring, Family, FamilySpec};
use exactmatch::solver::{solve, SolveOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = gen_family(&FamilySpec::colored(Family::Knn { n: 4 }, Coloring::Diagonal), 0)?;
    let opts = SolveOptions { witness: true, ..SolveOptions::default() };

    for t in 0..=4 {
        let report = solve(&g, t, &opts)?;
        print!("t={t}: {:?}", report.decision);
        if let Some(w) = &report.witness {
            let cells: Vec<String> = w.edges(&g).iter().map(|e| format!("({},{})", e.row, e.col)).collect();
            print!("  {}", cells.join(" "));
        }
        println!();
    }
    Ok(())
}
