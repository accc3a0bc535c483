use exactmatch::algebra::{interpolate, ExactInt, IntMatrix, IntPolynomial};
use exactmatch::graph::{parse_ebg, parse_ebg_multi, serialize_ebg, ColoredBipartiteGraph, Edge};
use exactmatch::matching::{allowed_edges, has_perfect_matching, is_brace, Matching};
use exactmatch::oracle::{
    check_masked_minor, fiber_table, leibniz_det, mvv_test, symbolic_pt, transfer_check, MaskedMatrix, TernaryWord,
    DEFAULT_MVV_PRIME,
};
use exactmatch::solver::{extract_witness, pt_polynomial, solve, SolveOptions};
use proptest::prelude::*;

/// Cell states: 0 absent, 1 blue, 2 red, 3 blue and red (multigraph only).
fn graph_from_cells(n: usize, cells: &[u8], multi: bool) -> ColoredBipartiteGraph {
    let mut edges = Vec::new();
    for (k, &c) in cells.iter().enumerate().take(n * n) {
        let (r, col) = (k / n, k % n);
        if c & 1 == 1 {
            edges.push(Edge::blue(r, col));
        }
        if c & 2 == 2 {
            edges.push(Edge::red(r, col));
        }
    }
    ColoredBipartiteGraph::new(n, edges, multi).unwrap()
}

fn simple_graph(max_n: usize) -> impl Strategy<Value = ColoredBipartiteGraph> {
    (1..=max_n)
        .prop_flat_map(|n| prop::collection::vec(0u8..3, n * n).prop_map(move |c| graph_from_cells(n, &c, false)))
}

fn multi_graph(max_n: usize) -> impl Strategy<Value = ColoredBipartiteGraph> {
    (1..=max_n).prop_flat_map(|n| prop::collection::vec(0u8..4, n * n).prop_map(move |c| graph_from_cells(n, &c, true)))
}

fn small_poly() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-20i64..20, 0..6).prop_map(|c| IntPolynomial::from_i64s(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn bareiss_matches_leibniz(n in 1usize..=5, vals in prop::collection::vec(-9i64..10, 25)) {
        let m = IntMatrix::from_fn(n, n, |i, j| ExactInt::from(vals[i * n + j]));
        prop_assert_eq!(m.bareiss_det().unwrap(), leibniz_det(&m));
    }

    #[test]
    fn interpolation_round_trips(p in small_poly(), start in -5i64..5) {
        let k = p.degree().unwrap_or(0) + 1;
        let pts: Vec<_> = (0..k as i64).map(|i| (ExactInt::from(start + i), p.eval_i64(start + i))).collect();
        prop_assert_eq!(interpolate(&pts).unwrap(), p);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in small_poly(), b in small_poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b), Some(a));
    }

    #[test]
    fn ebg_round_trips(g in multi_graph(5)) {
        let text = serialize_ebg(&g);
        prop_assert_eq!(parse_ebg_multi(&text).unwrap(), g.clone());
        if !g.is_multi() {
            prop_assert_eq!(parse_ebg(&text).unwrap(), g);
        }
    }

    #[test]
    fn allowed_edges_is_idempotent(g in simple_graph(6)) {
        prop_assume!(has_perfect_matching(&g));
        let a = allowed_edges(&g).unwrap();
        prop_assert_eq!(allowed_edges(&a).unwrap(), a.clone());
        prop_assert_eq!(fiber_table(&a).unwrap(), fiber_table(&g).unwrap());
    }

    #[test]
    fn solve_agrees_with_enumeration(g in multi_graph(6)) {
        let fibers = fiber_table(&g).unwrap();
        for t in -1..=g.n() as i64 + 1 {
            let yes = solve(&g, t, &SolveOptions::default()).unwrap().is_yes();
            prop_assert_eq!(yes, fibers.count(t) > 0, "t = {}", t);
        }
    }

    #[test]
    fn witnesses_have_the_requested_red_count(g in simple_graph(6)) {
        for t in fiber_table(&g).unwrap().support() {
            let w: Matching = extract_witness(&g, t as i64, &SolveOptions::default()).unwrap();
            prop_assert!(w.is_perfect() && w.is_valid_in(&g));
            prop_assert_eq!(w.edges(&g).iter().filter(|e| e.color.is_red()).count(), t);
        }
    }

    #[test]
    fn thread_count_does_not_change_answers(g in simple_graph(6)) {
        let one = SolveOptions::default();
        let four = SolveOptions { threads: 4, ..one.clone() };
        for t in 0..=g.n() as i64 {
            prop_assert_eq!(solve(&g, t, &one).unwrap().achievable, solve(&g, t, &four).unwrap().achievable);
        }
    }

    #[test]
    fn grid_polynomial_matches_signed_sum(g in simple_graph(5)) {
        for t in 0..=g.n() as i64 {
            prop_assert_eq!(pt_polynomial(&g, t).unwrap(), symbolic_pt(&g, t).unwrap());
        }
    }

    #[test]
    fn braces_are_nonvanishing_on_their_support(g in simple_graph(6)) {
        prop_assume!(is_brace(&g));
        for t in fiber_table(&g).unwrap().support() {
            prop_assert!(!pt_polynomial(&g, t as i64).unwrap().is_zero());
        }
    }

    #[test]
    fn mvv_never_says_yes_on_an_empty_fiber(g in simple_graph(6), seed in any::<u64>()) {
        let fibers = fiber_table(&g).unwrap();
        for t in 0..=g.n() as i64 {
            if fibers.count(t) == 0 {
                prop_assert!(!mvv_test(&g, t, DEFAULT_MVV_PRIME, 3, seed).unwrap());
            }
        }
    }

    #[test]
    fn masked_minor_criterion(
        m in 1usize..=5,
        bases in prop::collection::btree_set(-6i64..8, 5),
        gaps in prop::collection::vec(1usize..3, 5),
        mask in prop::collection::vec(any::<bool>(), 25),
    ) {
        let bases: Vec<i64> = bases.into_iter().take(m).collect();
        let exps: Vec<usize> = gaps.iter().take(m).scan(0, |e, g| { let cur = *e; *e += g; Some(cur) }).collect();
        let mask = (0..m).map(|i| mask[i * 5..i * 5 + m].to_vec()).collect();
        prop_assert!(check_masked_minor(&MaskedMatrix::new(bases, exps, mask)).holds());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transfer_matches_brute_force(word in prop::collection::vec(-1i8..=1, 1..=8)) {
        let rep = transfer_check(&TernaryWord(word));
        prop_assert!(rep.agree, "{:?}", rep);
        prop_assert!(rep.holds(), "{:?}", rep);
    }
}
