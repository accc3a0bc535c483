//! Solve times on seeded random braces.
//!
//! ```text
//! cargo run --release --example bench -- 10 20 30
//! ```

use exactmatch::solver::{bench, SolveOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut sizes: Vec<usize> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    if sizes.is_empty() {
        sizes = vec![4, 8, 12, 16, 20];
    }
    for row in bench(&sizes, 0, &SolveOptions::default())? {
        println!("n={:>3} edges={:>4} t={:>3} {:?} {:.4}s", row.n, row.edges, row.t, row.decision, row.seconds);
    }
    Ok(())
}
