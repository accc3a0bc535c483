//! Named verification suites that run the solver against the oracles and
//! check the algebraic identities on seeded random instances.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::IntPolynomial;
use crate::decomposition::{achievable_sets_compose, check_provenance, decompose, DecompositionError};
use crate::graph::{gen_family, ColoredBipartiteGraph, Coloring, Family, FamilySpec, GraphError};
use crate::matching::{is_brace, is_matching_covered};
use crate::oracle::{
    check_bad_locus, check_gen_vandermonde, check_hall_block_product, check_masked_minor, check_replacement_det,
    check_se_identity, fiber_table, mvv_test, random_poly, symbolic_pt, transfer_check, universal_small_check,
    width2_branch_check, width2_cyclic_split_check, BadLocusShape, MaskedMatrix, OracleError, PolyMatrix,
    SupportFamily, TernaryWord, DEFAULT_MVV_PRIME,
};
use crate::solver::{block_graph, nonvanishing_targets, pt_polynomial, random_brace, solve, SolveError, SolveOptions};

const MAX_REPORTED_FAILURES: usize = 5;

/// Tallies that rely on `gcd(G_D, μ_r) = 1`, which fails whenever two
/// shifted bases `α_i - α_r` are negatives of each other and the relevant
/// gap is even, e.g. bases `(1, 0, 2)` with exponents `(0, 1, 3)`.
pub const COPRIME_DEPENDENT: [&str; 2] = ["gen-vandermonde-coprime", "order-identity"];

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Identities,
    UniversalSmall,
    Width2,
    AsncEmpirical,
    Decomposition,
    MvvAgreement,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Identities,
        Suite::UniversalSmall,
        Suite::Width2,
        Suite::AsncEmpirical,
        Suite::Decomposition,
        Suite::MvvAgreement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::UniversalSmall => "universal-small",
            Suite::Width2 => "width2",
            Suite::AsncEmpirical => "asnc-empirical",
            Suite::Decomposition => "decomposition",
            Suite::MvvAgreement => "mvv-agreement",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| VerifyError::UnknownSuite(s.to_string()))
    }
}

/// Pass count for one kind of check, with the first few failures described.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub name: String,
    pub passed: u64,
    pub total: u64,
    pub failures: Vec<String>,
}

impl Tally {
    pub fn new(name: &str) -> Self {
        Self { name: name.to_string(), ..Self::default() }
    }

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.failures.len() < MAX_REPORTED_FAILURES {
            self.failures.push(describe());
        }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

impl fmt::Display for Tally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}/{}", self.name, self.passed, self.total)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub tallies: Vec<Tally>,
    pub summary: String,
}

impl SuiteReport {
    fn from_tallies(suite: Suite, tallies: Vec<Tally>) -> Self {
        let passed: u64 = tallies.iter().map(|t| t.passed).sum();
        let total: u64 = tallies.iter().map(|t| t.total).sum();
        Self { suite, tallies, summary: format!("{suite}: {passed}/{total}") }
    }

    pub fn ok(&self) -> bool {
        self.tallies.iter().all(Tally::ok)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Size bound; its meaning depends on the suite.
    pub n: Option<usize>,
    pub seed: u64,
    /// Instance count per check.
    pub trials: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { n: None, seed: 0, trials: 100 }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport, VerifyError> {
    let trials = opts.trials;
    match suite {
        Suite::Identities => {
            Ok(SuiteReport::from_tallies(suite, identity_tallies(&IdentityPlan::uniform(trials), opts.seed)?))
        }
        Suite::UniversalSmall => {
            let max_n = opts.n.unwrap_or(4).clamp(2, 4);
            let reports: Vec<_> = (2..=max_n).map(universal_small_check).collect();
            let tallies = reports
                .iter()
                .map(|r| Tally {
                    name: format!("n={}", r.n),
                    passed: r.subsets_checked - r.vanishing_found,
                    total: r.subsets_checked,
                    failures: vec![],
                })
                .collect::<Vec<_>>();
            let vanishing: u64 = reports.iter().map(|r| r.vanishing_found).sum();
            let mut summary: Vec<String> =
                tallies.iter().map(|t| format!("{}:{}/{}", t.name, t.passed, t.total)).collect();
            summary.push(format!("vanishing={vanishing}"));
            Ok(SuiteReport { suite, tallies, summary: summary.join(" ") })
        }
        Suite::Width2 => {
            let m = opts.n.unwrap_or(8);
            Ok(SuiteReport::from_tallies(suite, width2_tallies(m, m, opts.seed)?))
        }
        Suite::AsncEmpirical => {
            let graphs = random_instances(trials, opts.seed, opts.n.unwrap_or(7));
            let tallies = vec![
                oracle_equivalence(&graphs)?,
                polynomial_equivalence(&graphs, 6)?,
                asnc_empirical(&graphs, trials, opts.seed, opts.n.unwrap_or(6))?,
            ];
            Ok(SuiteReport::from_tallies(suite, tallies))
        }
        Suite::Decomposition => {
            Ok(SuiteReport::from_tallies(suite, vec![decomposition_contract(trials, opts.seed, opts.n.unwrap_or(7))?]))
        }
        Suite::MvvAgreement => {
            let graphs = random_instances(trials, opts.seed, opts.n.unwrap_or(7));
            Ok(SuiteReport::from_tallies(suite, vec![mvv_agreement(&graphs, 20, opts.seed)?]))
        }
    }
}

/// Seeded random colored graphs with `n ≤ max_n`, cycling density through
/// `{0.4, 0.6, 0.9}` and red probability through `{0.2, 0.5}`; every other
/// instance is drawn conditioned on having a perfect matching.
pub fn random_instances(count: usize, seed: u64, max_n: usize) -> Vec<ColoredBipartiteGraph> {
    const DENSITIES: [f64; 3] = [0.4, 0.6, 0.9];
    const RED: [f64; 2] = [0.2, 0.5];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let n = rng.gen_range(1..=max_n.max(1));
            let family =
                Family::Random { n, density: DENSITIES[k % 3], red_prob: RED[(k / 3) % 2], require_pm: k % 2 == 0 };
            let s = rng.gen();
            gen_family(&FamilySpec::new(family.clone()), s).unwrap_or_else(|_| {
                let fallback =
                    Family::Random { n, density: DENSITIES[k % 3], red_prob: RED[(k / 3) % 2], require_pm: false };
                gen_family(&FamilySpec::new(fallback), s).expect("unconditioned draw")
            })
        })
        .collect()
}

/// `solve(g, t)` says YES exactly when the exact-`t` fiber is nonempty, for
/// every `t ∈ [0, n]`.
pub fn oracle_equivalence(graphs: &[ColoredBipartiteGraph]) -> Result<Tally, VerifyError> {
    let mut tally = Tally::new("decision-vs-oracle");
    let opts = SolveOptions::default();
    for (k, g) in graphs.iter().enumerate() {
        let fibers = fiber_table(g)?;
        for t in 0..=g.n() as i64 {
            let yes = solve(g, t, &opts)?.is_yes();
            tally.record(yes == (fibers.count(t) > 0), || format!("instance {k} t={t}: solver {yes}, {g:?}"));
        }
    }
    Ok(tally)
}

/// The determinant pipeline's `P_t` equals the enumerated signed sum.
pub fn polynomial_equivalence(graphs: &[ColoredBipartiteGraph], max_n: usize) -> Result<Tally, VerifyError> {
    let mut tally = Tally::new("polynomial-vs-oracle");
    for (k, g) in graphs.iter().enumerate().filter(|(_, g)| g.n() <= max_n) {
        for t in 0..=g.n() as i64 {
            let ok = pt_polynomial(g, t).map_err(SolveError::from)? == symbolic_pt(g, t)?;
            tally.record(ok, || format!("instance {k} t={t}: {g:?}"));
        }
    }
    Ok(tally)
}

/// On every brace block met while solving `graphs`, and on `extra` random
/// braces, a nonempty fiber has a nonvanishing polynomial.
pub fn asnc_empirical(
    graphs: &[ColoredBipartiteGraph],
    extra: usize,
    seed: u64,
    max_brace_n: usize,
) -> Result<Tally, VerifyError> {
    let mut tally = Tally::new("asnc");
    let mut braces = Vec::new();
    for g in graphs {
        let report = solve(g, 0, &SolveOptions::default())?;
        for b in &report.blocks {
            braces.push(block_graph(g, b)?);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xb7ace);
    for _ in 0..extra {
        let n = rng.gen_range(1..=max_brace_n.max(1));
        let (g, _) = random_brace(n, rng.gen())?;
        braces.push(g);
    }
    for (k, h) in braces.iter().enumerate() {
        let fibers = fiber_table(h)?;
        let support = fibers.support();
        let nonzero = nonvanishing_targets(h, &support, 1).map_err(SolveError::from)?;
        for t in support {
            tally.record(nonzero.contains(&t), || format!("brace {k} t={t}: {h:?}"));
        }
    }
    Ok(tally)
}

/// Red counts composed from the decomposition leaves match the graph's own,
/// on seeded matching-covered graphs that are not braces.
pub fn decomposition_contract(count: usize, seed: u64, max_n: usize) -> Result<Tally, VerifyError> {
    let mut tally = Tally::new("compose");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xdec0);
    let mut found = 0;
    let mut draws = 0u64;
    while found < count {
        draws += 1;
        assert!(draws < 1_000_000, "could not draw enough non-brace instances");
        let n = rng.gen_range(4..=max_n.max(4));
        let density = rng.gen_range(0.3..0.7);
        let spec = FamilySpec::new(Family::Random { n, density, red_prob: 0.4, require_pm: false });
        let g = gen_family(&spec, rng.gen())?;
        if !is_matching_covered(&g) || is_brace(&g) {
            continue;
        }
        found += 1;
        let tree = decompose(&g)?;
        let ok = tree.split_count() > 0 && check_provenance(&g, &tree) && achievable_sets_compose(&g, &tree)?;
        tally.record(ok, || format!("{g:?}"));
    }
    Ok(tally)
}

/// The randomised test never reports a target the solver rejects, and finds
/// every target the solver accepts.
pub fn mvv_agreement(graphs: &[ColoredBipartiteGraph], trials: usize, seed: u64) -> Result<Tally, VerifyError> {
    let mut tally = Tally::new("mvv");
    for (k, g) in graphs.iter().enumerate() {
        for t in 0..=g.n() as i64 {
            let yes = solve(g, t, &SolveOptions::default())?.is_yes();
            let mvv = mvv_test(g, t, DEFAULT_MVV_PRIME, trials, seed.wrapping_add(k as u64))?;
            tally.record(mvv == yes, || format!("instance {k} t={t}: solver {yes}, mvv {mvv}"));
        }
    }
    Ok(tally)
}

/// Instance counts for the identity checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityPlan {
    pub se_graphs: usize,
    pub replacement: usize,
    pub hall_pairs: usize,
    pub vandermonde: usize,
    pub bad_locus_per_shape: usize,
    pub masked: usize,
}

impl IdentityPlan {
    pub fn uniform(trials: usize) -> Self {
        Self {
            se_graphs: trials,
            replacement: trials,
            hall_pairs: trials,
            vandermonde: trials,
            bad_locus_per_shape: trials,
            masked: trials,
        }
    }

    /// The sizes of the acceptance run.
    pub fn acceptance() -> Self {
        Self { se_graphs: 50, replacement: 200, hall_pairs: 30, vandermonde: 50, bad_locus_per_shape: 25, masked: 500 }
    }
}

fn distinct(rng: &mut impl Rng, k: usize, range: std::ops::Range<i64>) -> Vec<i64> {
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let v = rng.gen_range(range.clone());
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

fn increasing(rng: &mut impl Rng, k: usize) -> Vec<usize> {
    let mut e = rng.gen_range(0..3);
    (0..k)
        .map(|_| {
            let cur = e;
            e += rng.gen_range(1..=2);
            cur
        })
        .collect()
}

pub fn identity_tallies(plan: &IdentityPlan, seed: u64) -> Result<Vec<Tally>, VerifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1de);

    let mut se = Tally::new("se-identity");
    for k in 0..plan.se_graphs {
        let n = rng.gen_range(2..=5);
        let spec = FamilySpec::new(Family::Random { n, density: 0.6, red_prob: 0.4, require_pm: false });
        let g = gen_family(&spec, rng.gen())?;
        for e in g.edges() {
            let mut ok = true;
            for t in 0..=n as i64 {
                ok &= check_se_identity(&g, (e.row, e.col), t)?;
            }
            se.record(ok, || format!("graph {k} edge ({}, {}): {g:?}", e.row, e.col));
        }
    }

    let mut replacement = Tally::new("replacement-det");
    for k in 0..plan.replacement {
        let n = rng.gen_range(3..=4);
        let m = PolyMatrix::from_fn(n, |_, _| random_poly(&mut rng, 3, 5));
        let v: Vec<IntPolynomial> = (0..n).map(|_| random_poly(&mut rng, 3, 5)).collect();
        let c = rng.gen_range(0..n);
        replacement.record(check_replacement_det(&m, c, &v), || format!("matrix {k}"));
    }

    let mut hall = Tally::new("hall-block");
    for k in 0..plan.hall_pairs {
        let block = |rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(1..=3);
            gen_family(
                &FamilySpec::new(Family::Random { n, density: 0.7, red_prob: 0.5, require_pm: false }),
                rng.gen(),
            )
        };
        let (g1, g2) = (block(&mut rng)?, block(&mut rng)?);
        let mut ok = true;
        for t in 0..=(g1.n() + g2.n() + 1) as i64 {
            ok &= check_hall_block_product(&g1, &g2, t)?;
        }
        hall.record(ok, || format!("pair {k}: {g1:?} {g2:?}"));
    }

    let mut factor = Tally::new("gen-vandermonde-factorization");
    let mut coprime = Tally::new("gen-vandermonde-coprime");
    let mut ka = Tally::new("two-node");
    let mut order = Tally::new("order-identity");
    let mut record = |fam: &SupportFamily, label: String| -> Result<(), VerifyError> {
        let r = check_gen_vandermonde(fam)?;
        factor.record(r.factorization, || label.clone());
        coprime.record(r.coprime, || label.clone());
        if let Some(ok) = r.two_node {
            ka.record(ok, || label.clone());
        }
        if let Some(ok) = r.order {
            order.record(ok, || label.clone());
        }
        Ok(())
    };
    for alpha in 0..4 {
        for beta in (0..4).filter(|&b| b != alpha) {
            for q in 1..=3 {
                for p in 0..q {
                    let fam = SupportFamily::from_kernel(vec![alpha, beta], vec![p, q], IntPolynomial::one())?;
                    record(&fam, format!("two-node {alpha} {beta} {p} {q}"))?;
                }
            }
        }
    }
    for k in 0..plan.vandermonde {
        let m = rng.gen_range(2..=4);
        let bases = distinct(&mut rng, m, 0..8);
        let exps = increasing(&mut rng, m);
        let len = rng.gen_range(1..=3);
        let h = random_poly(&mut rng, len, 4);
        let fam = SupportFamily::from_kernel(bases, exps, h)?;
        record(&fam, format!("family {k}: {fam:?}"))?;
    }

    let mut locus = Tally::new("bad-locus");
    for k in 0..plan.bad_locus_per_shape {
        let c = rng.gen_range(1..=3);
        let a = distinct(&mut rng, 3, 0..6);
        let poly = |rng: &mut ChaCha8Rng| {
            let len = rng.gen_range(1..=3);
            random_poly(rng, len, 5)
        };
        let shapes = [
            BadLocusShape::Sb2 { alpha: a[0], c, w: poly(&mut rng) },
            BadLocusShape::Db2 { alpha: a[0], beta: a[1], c, h: poly(&mut rng) },
            BadLocusShape::Sb3 { alpha: a[0], c: [c - 1, c + 1, c + 2], u1: poly(&mut rng), u2: poly(&mut rng) },
            BadLocusShape::Db3 {
                alphas: [a[0], a[1], a[2]],
                c,
                k2: poly(&mut rng),
                k3: poly(&mut rng),
                h: poly(&mut rng),
            },
        ];
        for s in &shapes {
            locus.record(check_bad_locus(s), || format!("{} instance {k}: {s:?}", s.name()));
        }
    }

    let mut masked = Tally::new("masked-minor");
    for k in 0..plan.masked {
        let m = rng.gen_range(1..=5);
        let bases = distinct(&mut rng, m, -4..8);
        let exps = increasing(&mut rng, m);
        let p = rng.gen_range(0.4..0.9);
        let mask = (0..m).map(|_| (0..m).map(|_| rng.gen_bool(p)).collect()).collect();
        let w = MaskedMatrix::new(bases, exps, mask);
        masked.record(check_masked_minor(&w).holds(), || format!("matrix {k}: {w:?}"));
    }

    Ok(vec![se, replacement, hall, factor, coprime, ka, order, locus, masked])
}

/// Branch factorisation for band paths with `2 ≤ m ≤ max_m`, cyclic splits
/// for `3 ≤ m ≤ max_m`, each under all-blue, diagonal and three seeded
/// Bernoulli colorings at every target; transfer agreement for every word
/// of length at most `max_r`.
pub fn width2_tallies(max_m: usize, max_r: usize, seed: u64) -> Result<Vec<Tally>, VerifyError> {
    let colorings = |s: u64| {
        let mut v = vec![(Coloring::AllBlue, 0), (Coloring::Diagonal, 0)];
        v.extend((0..3).map(|k| (Coloring::Bernoulli(0.5), s.wrapping_add(k))));
        v
    };
    let mut branch = Tally::new("width2-branch");
    for m in 2..=max_m {
        for (coloring, s) in colorings(seed) {
            let g = gen_family(&FamilySpec::colored(Family::BandPath { m }, coloring.clone()), s)?;
            for t in 0..=m {
                branch.record(width2_branch_check(&g, t)?, || format!("m={m} {coloring:?} seed {s} t={t}"));
            }
        }
    }
    let mut cyclic = Tally::new("width2-cyclic");
    for m in 3..=max_m {
        for (coloring, s) in colorings(seed) {
            let g = gen_family(&FamilySpec::colored(Family::BandCyclic { m }, coloring.clone()), s)?;
            for t in 0..=m {
                cyclic.record(width2_cyclic_split_check(&g, t)?.holds, || format!("m={m} {coloring:?} seed {s} t={t}"));
            }
        }
    }
    let mut transfer = Tally::new("transfer");
    for r in 1..=max_r {
        for w in TernaryWord::all(r) {
            let rep = transfer_check(&w);
            transfer.record(rep.holds(), || format!("{rep:?}"));
        }
    }
    Ok(vec![branch, cyclic, transfer])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let opts = VerifyOptions { n: Some(4), seed: 1, trials: 5 };
        for s in Suite::ALL {
            let r = run_suite(s, &opts).unwrap();
            for t in r.tallies.iter().filter(|t| !COPRIME_DEPENDENT.contains(&t.name.as_str())) {
                assert!(t.ok(), "{s}: {t:?}");
            }
        }
    }

    #[test]
    fn universal_summary_format() {
        let r = run_suite(Suite::UniversalSmall, &VerifyOptions { n: Some(3), ..Default::default() }).unwrap();
        assert_eq!(r.summary, "n=2:3/3 n=3:63/63 vanishing=0");
    }

    #[test]
    fn instances_are_seeded() {
        assert_eq!(random_instances(10, 3, 7), random_instances(10, 3, 7));
        assert!(random_instances(30, 3, 7).iter().all(|g| (1..=7).contains(&g.n())));
    }
}
