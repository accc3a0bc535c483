//! Named graph families, their perfect-matching counts, and EBG output.

use exactmatch::graph::{gen_family, serialize_ebg, Family, FamilySpec};
use exactmatch::matching::is_brace;
use exactmatch::oracle::enumerate_pms;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let families = [
        Family::Knn { n: 3 },
        Family::Biwheel { m: 5 },
        Family::BandPath { m: 6 },
        Family::BandCyclic { m: 5 },
        Family::Random { n: 5, density: 0.6, red_prob: 0.3, require_pm: true },
    ];
    for f in families {
        let g = gen_family(&FamilySpec::new(f.clone()), 42)?;
        let pms = enumerate_pms(&g, 1 << 20)?.len();
        println!("{f:?}: edges={} pms={pms} brace={}", g.edge_count(), is_brace(&g));
    }
    print!("{}", serialize_ebg(&gen_family(&FamilySpec::new(Family::Biwheel { m: 4 }), 0)?));
    Ok(())
}
