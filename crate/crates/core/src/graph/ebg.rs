use std::fmt::Write as _;

use super::{ColoredBipartiteGraph, Edge, EdgeColor, GraphError};

/// Parses EBG text into a simple graph (parallel edges rejected).
///
/// ```text
/// # comment
/// ebg 1
/// n <N>
/// e <row> <col> <color>
/// ```
pub fn parse_ebg(text: &str) -> Result<ColoredBipartiteGraph, GraphError> {
    parse(text, false)
}

/// Parses EBG text allowing a blue/red parallel pair per cell.
pub fn parse_ebg_multi(text: &str) -> Result<ColoredBipartiteGraph, GraphError> {
    parse(text, true)
}

fn parse(text: &str, multi: bool) -> Result<ColoredBipartiteGraph, GraphError> {
    let mut version_seen = false;
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let syntax = |msg: &str| GraphError::SyntaxError { line, msg: msg.to_string() };
        let mut tok = trimmed.split_whitespace();
        let directive = tok.next().unwrap_or_default();
        let args: Vec<&str> = tok.collect();
        match directive {
            "ebg" => {
                if version_seen {
                    return Err(syntax("repeated header"));
                }
                let [v] = args.as_slice() else {
                    return Err(syntax("header takes one version field"));
                };
                if *v != "1" {
                    return Err(GraphError::BadVersion(v.to_string()));
                }
                version_seen = true;
            }
            _ if !version_seen => return Err(syntax("missing 'ebg 1' header")),
            "n" => {
                if n.is_some() {
                    return Err(syntax("repeated 'n'"));
                }
                let [v] = args.as_slice() else {
                    return Err(syntax("'n' takes one field"));
                };
                n = Some(v.parse().map_err(|_| syntax("vertex count must be a non-negative integer"))?);
            }
            "e" => {
                let Some(n) = n else {
                    return Err(syntax("edge before 'n'"));
                };
                let [r, c, k] = args.as_slice() else {
                    return Err(syntax("'e' takes row, col, color"));
                };
                let row: usize = r.parse().map_err(|_| syntax("bad row index"))?;
                let col: usize = c.parse().map_err(|_| syntax("bad column index"))?;
                let color =
                    k.parse::<u8>().ok().and_then(EdgeColor::from_bit).ok_or_else(|| syntax("color must be 0 or 1"))?;
                if row >= n || col >= n {
                    return Err(GraphError::IndexOutOfRange { row, col, n });
                }
                edges.push(Edge::new(row, col, color));
            }
            other => return Err(syntax(&format!("unknown directive '{other}'"))),
        }
    }
    if !version_seen {
        return Err(GraphError::SyntaxError { line: 0, msg: "empty input".into() });
    }
    let n = n.ok_or(GraphError::SyntaxError { line: 0, msg: "missing 'n'".into() })?;
    ColoredBipartiteGraph::new(n, edges, multi)
}

/// Canonical EBG text: header, `n`, then edges sorted by `(row, col, color)`.
pub fn serialize_ebg(g: &ColoredBipartiteGraph) -> String {
    let mut out = format!("ebg 1\nn {}\n", g.n());
    for e in g.edges() {
        let _ = writeln!(out, "e {} {} {}", e.row, e.col, e.color.bit());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_k22() {
        let g = parse_ebg("ebg 1\nn 2\ne 0 0 0\ne 0 1 0\ne 1 0 0\ne 1 1 0").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.red_edge_count(), 0);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_ebg("# a graph\n\nebg 1\n# size\nn 1\ne 0 0 1\n").unwrap();
        assert_eq!(g.edges(), &[Edge::red(0, 0)]);
    }

    #[test]
    fn errors() {
        assert_eq!(parse_ebg("ebg 2\nn 1"), Err(GraphError::BadVersion("2".into())));
        assert!(matches!(parse_ebg("ebg 1\nn 2\ne 0 5 0"), Err(GraphError::IndexOutOfRange { .. })));
        assert!(matches!(parse_ebg("ebg 1\nn 2\nv 0"), Err(GraphError::SyntaxError { line: 3, .. })));
        assert!(matches!(parse_ebg("ebg 1\nn 2\ne 0 0 2"), Err(GraphError::SyntaxError { line: 3, .. })));
        assert!(matches!(parse_ebg("ebg 1\nn 2\ne 0 0 0\ne 0 0 0"), Err(GraphError::DuplicateEdge { .. })));
        assert!(matches!(parse_ebg("n 2"), Err(GraphError::SyntaxError { line: 1, .. })));
    }

    #[test]
    fn multi_parse_accepts_blue_red_pair() {
        let g = parse_ebg_multi("ebg 1\nn 1\ne 0 0 1\ne 0 0 0").unwrap();
        assert_eq!(g.cell_counts(0, 0), (1, 1));
        assert!(parse_ebg("ebg 1\nn 1\ne 0 0 1\ne 0 0 0").is_err());
    }

    #[test]
    fn serialize_is_canonical() {
        let g = parse_ebg("ebg 1\nn 2\ne 1 1 1\ne 0 1 0\ne 1 0 0\ne 0 0 0").unwrap();
        assert_eq!(serialize_ebg(&g), "ebg 1\nn 2\ne 0 0 0\ne 0 1 0\ne 1 0 0\ne 1 1 1\n");
        let empty = ColoredBipartiteGraph::simple(1, vec![]).unwrap();
        assert_eq!(serialize_ebg(&empty), "ebg 1\nn 1\n");
    }
}
