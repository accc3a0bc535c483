use std::path::PathBuf;
use std::process::{Command, Output};

use exactmatch::graph::{parse_ebg_multi, serialize_ebg};
use exactmatch::solver::{solve, SolveOptions};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exactmatch")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_exit_codes_follow_the_decision() {
    let k44 = fixture("k44_red_diagonal.ebg");
    let no = bin(&["solve", "--input", &k44, "--target", "3"]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(stdout(&no), "NO\n");
    let yes = bin(&["solve", "--input", &k44, "--target", "2"]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(stdout(&yes), "YES\n");
    assert_eq!(bin(&["solve", "--input", &k44, "--target", "-1"]).status.code(), Some(1));
    assert_eq!(bin(&["solve", "--input", "/does/not/exist.ebg", "--target", "1"]).status.code(), Some(2));
}

#[test]
fn solve_witness_lines_are_edges() {
    let out = bin(&["solve", "--input", &fixture("k44_red_diagonal.ebg"), "--target", "2", "--witness"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("YES"));
    let edges: Vec<Vec<usize>> = lines.map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(edges.len(), 4);
    assert_eq!(edges.iter().map(|e| e[2]).sum::<usize>(), 2);
}

#[test]
fn solve_json_schema() {
    let out = bin(&["solve", "--input", &fixture("c6_one_red.ebg"), "--target", "1", "--json", "--witness"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["schema"], "exactmatch/1");
    assert_eq!(v["decision"], "YES");
    assert_eq!(v["n"], 3);
    assert_eq!(v["witness"].as_array().unwrap().len(), 3);
    for key in ["decompose_ms", "grid_ms", "dp_ms"] {
        assert!(v["timings"][key].is_number());
    }
}

#[test]
fn fallback_brute_is_reported() {
    let out = bin(&["solve", "--input", &fixture("k33_blue.ebg"), "--target", "0", "--json", "--fallback-brute", "3"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!(v["blocks"].as_array().unwrap().iter().all(|b| b["method"] == "oracle-fallback"));
}

#[test]
fn poly_prints_coefficients_low_to_high() {
    let k22 = fixture("k22_one_red.ebg");
    assert_eq!(stdout(&bin(&["poly", "--input", &k22, "--target", "1"])), "1 1\n");
    assert_eq!(stdout(&bin(&["poly", "--input", &k22, "--target", "0"])), "0 -1\n");
    assert_eq!(stdout(&bin(&["poly", "--input", &k22, "--target", "2"])), "0\n");
}

#[test]
fn decompose_lists_blocks() {
    let c6 = stdout(&bin(&["decompose", "--input", &fixture("c6_one_red.ebg")]));
    assert!(c6.starts_with("blocks 2 splits 1\n"));
    assert_eq!(c6.lines().filter(|l| l.contains("n=2")).count(), 2);
    let k33 = stdout(&bin(&["decompose", "--input", &fixture("k33_blue.ebg")]));
    assert!(k33.starts_with("blocks 1 splits 0\n") && k33.contains("n=3"));
    let bad = bin(&["decompose", "--input", &fixture("forced_edge.ebg")]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("not matching-covered"));
}

#[test]
fn decompose_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tree.dot");
    let out = bin(&["decompose", "--input", &fixture("band_path6_diag.ebg"), "--dot", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(path).unwrap().starts_with("digraph"));
}

#[test]
fn gen_outputs_are_deterministic() {
    let args = ["gen", "--family", "random", "--n", "6", "--seed", "1"];
    let a = bin(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, bin(&args).stdout);
    let g = parse_ebg_multi(&stdout(&a)).unwrap();
    assert_eq!(g.n(), 6);

    let wheel = parse_ebg_multi(&stdout(&bin(&["gen", "--family", "biwheel", "--m", "4"]))).unwrap();
    assert_eq!(wheel.row_neighbors(0).len(), 3);
    assert_eq!(bin(&["gen", "--family", "petersen", "--n", "3"]).status.code(), Some(2));
    assert_eq!(bin(&["gen", "--family", "knn"]).status.code(), Some(2));
}

#[test]
fn gen_red_list() {
    let out = stdout(&bin(&["gen", "--family", "knn", "--n", "2", "--red", "list", "--red-cells", "0:0,1:0"]));
    let g = parse_ebg_multi(&out).unwrap();
    assert_eq!(g.red_edge_count(), 2);
    assert_eq!(
        bin(&["gen", "--family", "knn", "--n", "2", "--red", "list", "--red-cells", "zz"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_universal_small_summary() {
    let out = bin(&["verify", "--suite", "universal-small", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "n=2:3/3 n=3:63/63 vanishing=0\n");
    assert_eq!(bin(&["verify", "--suite", "bogus"]).status.code(), Some(2));
}

#[test]
fn verify_width2_passes() {
    let out = bin(&["verify", "--suite", "width2", "--n", "5", "--seed", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).lines().all(|l| !l.starts_with("FAIL")));
}

#[test]
fn bench_rows_and_bad_sizes() {
    let out = stdout(&bin(&["bench", "--sizes", "4,5", "--json"]));
    let rows: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["n"], 4);
    assert_eq!(rows[1]["decision"], "YES");
    let text = stdout(&bin(&["bench", "--sizes", "4"]));
    assert_eq!(text.lines().count(), 2);
    assert_eq!(bin(&["bench", "--sizes", "0"]).status.code(), Some(2));
}

#[test]
fn stdout_is_byte_identical_across_runs() {
    let k44 = fixture("k44_red_diagonal.ebg");
    let runs: [&[&str]; 4] = [
        &["solve", "--input", &k44, "--target", "2", "--witness"],
        &["poly", "--input", &k44, "--target", "1"],
        &["decompose", "--input", &k44],
        &["verify", "--suite", "decomposition", "--trials", "3", "--seed", "9"],
    ];
    for args in runs {
        assert_eq!(bin(args).stdout, bin(args).stdout, "{args:?}");
    }
}

#[test]
fn fixtures_round_trip_and_solve() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("ebg") {
            continue;
        }
        seen += 1;
        let g = parse_ebg_multi(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(parse_ebg_multi(&serialize_ebg(&g)).unwrap(), g, "{}", path.display());
        for t in 0..=g.n() as i64 {
            solve(&g, t, &SolveOptions::default()).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        }
    }
    assert!(seen >= 8);
}
