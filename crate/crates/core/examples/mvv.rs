//! The randomised test over a prime field next to the deterministic solver.

use exactmatch::oracle::{mvv_test, DEFAULT_MVV_PRIME};
use exactmatch::solver::{solve, SolveOptions};
use exactmatch::verify::random_instances;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (k, g) in random_instances(8, 5, 6).iter().enumerate() {
        let row: Vec<String> = (0..=g.n() as i64)
            .map(|t| {
                let det = solve(g, t, &SolveOptions::default()).map(|r| r.is_yes());
                let rnd = mvv_test(g, t, DEFAULT_MVV_PRIME, 20, k as u64);
                format!("{}{}", u8::from(det.unwrap_or(false)), u8::from(rnd.unwrap_or(false)))
            })
            .collect();
        println!("graph {k} (n={}): {}", g.n(), row.join(" "));
    }
    Ok(())
}
