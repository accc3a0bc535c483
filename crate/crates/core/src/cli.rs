//! The `exactmatch` command line.
//!
//! Exit codes: 0 success or YES, 1 decision NO (`solve` only), 2 usage error,
//! 3 runtime error or a failed verification suite.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::decomposition::{decompose, VertexOrigin};
use crate::graph::{gen_family, parse_ebg_multi, serialize_ebg, ColoredBipartiteGraph, Coloring, Family, FamilySpec};
use crate::solver::{bench, pt_polynomial, solve, SolveOptions};
use crate::verify::{run_suite, Suite, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "exactmatch", version, about = "Exact-count perfect matchings in red/blue bipartite graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a perfect matching with exactly `t` red edges exists.
    Solve(SolveArgs),
    /// Print the coefficients of the exact-t polynomial, lowest degree first.
    Poly(PolyArgs),
    /// List the brace blocks of a matching-covered graph.
    Decompose(DecomposeArgs),
    /// Generate a family member as EBG text.
    Gen(GenArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
    /// Time the solver on random braces.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub target: i64,
    #[arg(long)]
    pub witness: bool,
    #[arg(long)]
    pub json: bool,
    /// Decide blocks of at most this size by enumeration.
    #[arg(long, default_value_t = 0)]
    pub fallback_brute: usize,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub target: i64,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Write the decomposition tree in Graphviz format to this path.
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Knn,
    Biwheel,
    BandPath,
    BandCyclic,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RedMode {
    Native,
    Blue,
    Diag,
    List,
    Bernoulli,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, value_enum, default_value_t = RedMode::Native)]
    pub red: RedMode,
    /// Red cells for `--red list`, as `row:col` pairs separated by commas.
    #[arg(long, value_delimiter = ',')]
    pub red_cells: Vec<String>,
    #[arg(long, default_value_t = 0.5)]
    pub red_prob: f64,
    #[arg(long, default_value_t = 0.5)]
    pub density: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub require_pm: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub suite: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "4,6,8,10")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

/// Failure carrying the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    msg: String,
}

fn usage(msg: impl ToString) -> Failure {
    Failure { code: EXIT_USAGE, msg: msg.to_string() }
}

fn runtime(msg: impl ToString) -> Failure {
    Failure { code: EXIT_RUNTIME, msg: msg.to_string() }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(&a, out),
        Command::Poly(a) => cmd_poly(&a, out),
        Command::Decompose(a) => cmd_decompose(&a, out),
        Command::Gen(a) => cmd_gen(&a, out),
        Command::Verify(a) => cmd_verify(&a, out, err),
        Command::Bench(a) => cmd_bench(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn io(e: std::io::Error) -> Failure {
    runtime(e)
}

fn read_graph(path: &Path) -> Result<ColoredBipartiteGraph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_ebg_multi(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn cmd_solve(a: &SolveArgs, out: &mut dyn Write) -> CmdResult {
    let g = read_graph(&a.input)?;
    let opts = SolveOptions { threads: a.threads.max(1), fallback_brute: a.fallback_brute, witness: a.witness };
    let report = solve(&g, a.target, &opts).map_err(runtime)?;
    if a.json {
        writeln!(out, "{}", report.to_json(&g)).map_err(io)?;
    } else {
        writeln!(out, "{}", if report.is_yes() { "YES" } else { "NO" }).map_err(io)?;
        if let Some(w) = &report.witness {
            for e in w.edges(&g) {
                writeln!(out, "{} {} {}", e.row, e.col, e.color.bit()).map_err(io)?;
            }
        }
    }
    Ok(if report.is_yes() { EXIT_OK } else { EXIT_NO })
}

fn cmd_poly(a: &PolyArgs, out: &mut dyn Write) -> CmdResult {
    let g = read_graph(&a.input)?;
    let p = pt_polynomial(&g, a.target).map_err(runtime)?;
    let coeffs: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
    let line = if coeffs.is_empty() { "0".to_string() } else { coeffs.join(" ") };
    writeln!(out, "{line}").map_err(io)?;
    Ok(EXIT_OK)
}

fn origin(o: &VertexOrigin) -> String {
    match o {
        VertexOrigin::Original(v) => v.to_string(),
        VertexOrigin::Contracted(s) => format!("*{s}"),
    }
}

fn cmd_decompose(a: &DecomposeArgs, out: &mut dyn Write) -> CmdResult {
    let g = read_graph(&a.input)?;
    let tree = decompose(&g).map_err(runtime)?;
    let leaves = tree.leaves();
    writeln!(out, "blocks {} splits {}", leaves.len(), tree.split_count()).map_err(io)?;
    for (k, b) in leaves.iter().enumerate() {
        let rows: Vec<String> = b.rows.iter().map(origin).collect();
        let cols: Vec<String> = b.cols.iter().map(origin).collect();
        writeln!(
            out,
            "block {k}: n={} edges={} rows=[{}] cols=[{}]{}",
            b.block_n(),
            b.graph.edge_count(),
            rows.join(","),
            cols.join(","),
            if b.has_parallel_edges() { " multigraph" } else { "" },
        )
        .map_err(io)?;
    }
    if let Some(path) = &a.dot {
        std::fs::write(path, tree.to_dot()).map_err(|e| runtime(format!("{}: {e}", path.display())))?;
    }
    Ok(EXIT_OK)
}

fn parse_cell(s: &str) -> Result<(usize, usize), Failure> {
    let (r, c) = s.split_once(':').ok_or_else(|| usage(format!("bad red cell '{s}', expected row:col")))?;
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| usage(format!("bad red cell '{s}'")));
    Ok((num(r)?, num(c)?))
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> CmdResult {
    let size = a.n.or(a.m).ok_or_else(|| usage("gen needs --n or --m"))?;
    let family = match a.family {
        FamilyName::Knn => Family::Knn { n: size },
        FamilyName::Biwheel => Family::Biwheel { m: size },
        FamilyName::BandPath => Family::BandPath { m: size },
        FamilyName::BandCyclic => Family::BandCyclic { m: size },
        FamilyName::Random => {
            Family::Random { n: size, density: a.density, red_prob: a.red_prob, require_pm: a.require_pm }
        }
    };
    let coloring = match a.red {
        RedMode::Native => Coloring::Native,
        RedMode::Blue => Coloring::AllBlue,
        RedMode::Diag => Coloring::Diagonal,
        RedMode::Bernoulli => Coloring::Bernoulli(a.red_prob),
        RedMode::List => Coloring::List(a.red_cells.iter().map(|s| parse_cell(s)).collect::<Result<_, _>>()?),
    };
    let g = gen_family(&FamilySpec::colored(family, coloring), a.seed).map_err(usage)?;
    out.write_all(serialize_ebg(&g).as_bytes()).map_err(io)?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let suite: Suite = a.suite.parse().map_err(usage)?;
    let opts = VerifyOptions { n: a.n, seed: a.seed, trials: a.trials };
    let report = run_suite(suite, &opts).map_err(runtime)?;
    if suite != Suite::UniversalSmall {
        for t in &report.tallies {
            writeln!(out, "{} {t}", if t.ok() { "PASS" } else { "FAIL" }).map_err(io)?;
            for f in &t.failures {
                writeln!(err, "  {}: {f}", t.name).map_err(io)?;
            }
        }
    }
    writeln!(out, "{}", report.summary).map_err(io)?;
    Ok(if report.ok() { EXIT_OK } else { EXIT_RUNTIME })
}

fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> CmdResult {
    if a.sizes.contains(&0) {
        return Err(usage("bench sizes must be positive"));
    }
    let opts = SolveOptions { threads: a.threads.max(1), ..SolveOptions::default() };
    let rows = bench(&a.sizes, a.seed, &opts).map_err(runtime)?;
    if a.json {
        for r in &rows {
            writeln!(out, "{}", serde_json::to_string(r).map_err(runtime)?).map_err(io)?;
        }
    } else {
        writeln!(out, "{:>4} {:>6} {:>4} {:>4} {:>8} {:>10}", "n", "edges", "t", "dec", "attempts", "seconds")
            .map_err(io)?;
        for r in &rows {
            let dec = serde_json::to_value(r.decision).map_err(runtime)?;
            writeln!(
                out,
                "{:>4} {:>6} {:>4} {:>4} {:>8} {:>10.6}",
                r.n,
                r.edges,
                r.t,
                dec.as_str().unwrap_or_default(),
                r.attempts,
                r.seconds
            )
            .map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("exactmatch").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&[]).0, EXIT_USAGE);
        assert_eq!(run_str(&["gen", "--family", "petersen", "--n", "3"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["solve", "--input", "/nonexistent.ebg", "--target", "1"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["bench", "--sizes", "0"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["verify", "--suite", "nope"]).0, EXIT_USAGE);
    }

    #[test]
    fn gen_is_deterministic() {
        let a = run_str(&["gen", "--family", "random", "--n", "6", "--seed", "1"]);
        assert_eq!(a, run_str(&["gen", "--family", "random", "--n", "6", "--seed", "1"]));
        assert_eq!(a.0, EXIT_OK);
        assert!(a.1.starts_with("ebg 1"));
    }

    #[test]
    fn red_cells_parse() {
        assert_eq!(parse_cell("2:3").unwrap(), (2, 3));
        assert!(parse_cell("2-3").is_err());
    }
}
