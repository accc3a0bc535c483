//! Algebraic identity checks on seeded random inputs, plus the masked
//! integer matrix whose determinant cancels.

use exactmatch::oracle::integer_mask_counterexamples;
use exactmatch::verify::{identity_tallies, IdentityPlan};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for tally in identity_tallies(&IdentityPlan::uniform(20), 7)? {
        println!("{tally}");
        for f in &tally.failures {
            println!("  {f}");
        }
    }
    for w in integer_mask_counterexamples(&[2, 3, 5], &[0, 1, 2]) {
        println!("integer det 0 under mask {:?}", w.mask);
    }
    Ok(())
}
