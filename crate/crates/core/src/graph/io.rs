use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{SimilarityGraph, VertexId};
use crate::error::{Error, Result};

/// Comment line that pins the vertex count, so trailing isolated vertices
/// survive a write/read cycle. Other readers treat it as an ordinary comment.
pub const EDGE_LIST_VERTEX_HINT: &str = "# vertices:";

/// Reads a whitespace-separated `u v w` edge list.
pub fn read_edge_list(path: impl AsRef<Path>) -> Result<SimilarityGraph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(&text)
}

/// Parses edge-list text.
///
/// Lines are `u v w`; blank lines and `#` comments are skipped. A file whose
/// lines all omit the weight column is read as unweighted (unit weights) and
/// flagged so callers can pick a weighting scheme. Negative weights are
/// accepted and produce a signed graph.
pub fn parse_edge_list(text: &str) -> Result<SimilarityGraph> {
    let mut edges: Vec<(VertexId, VertexId, f64)> = Vec::new();
    let mut hinted_n: Option<usize> = None;
    let mut with_weight = 0usize;
    let mut without_weight = 0usize;
    let mut signed = false;
    let mut max_id: Option<VertexId> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim();
        if let Some(rest) = trimmed.strip_prefix(EDGE_LIST_VERTEX_HINT) {
            let n = rest
                .trim()
                .parse::<usize>()
                .map_err(|e| Error::parse(line_no, format!("bad vertex count: {e}")))?;
            hinted_n = Some(n);
            continue;
        }
        let content = match trimmed.find('#') {
            Some(pos) => trimmed[..pos].trim(),
            None => trimmed,
        };
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 && fields.len() != 3 {
            return Err(Error::parse(
                line_no,
                format!("expected `u v w`, found {} fields", fields.len()),
            ));
        }
        let vertex = |s: &str| {
            s.parse::<VertexId>()
                .map_err(|_| Error::parse(line_no, format!("invalid vertex id `{s}`")))
        };
        let u = vertex(fields[0])?;
        let v = vertex(fields[1])?;
        if u == v {
            return Err(Error::parse(line_no, format!("self-loop on vertex {u}")));
        }
        let w = if fields.len() == 3 {
            with_weight += 1;
            let w = fields[2]
                .parse::<f64>()
                .map_err(|_| Error::parse(line_no, format!("invalid weight `{}`", fields[2])))?;
            if !w.is_finite() {
                return Err(Error::parse(line_no, format!("non-finite weight `{}`", fields[2])));
            }
            signed |= w <= 0.0;
            w
        } else {
            without_weight += 1;
            1.0
        };
        if with_weight > 0 && without_weight > 0 {
            return Err(Error::parse(line_no, "mixed weighted and unweighted lines"));
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v, w));
    }

    let inferred = max_id.map_or(0, |m| m as usize + 1);
    let n = match hinted_n {
        Some(h) if h < inferred => {
            return Err(Error::parse(
                0,
                format!("vertex hint {h} smaller than largest id {}", inferred - 1),
            ))
        }
        Some(h) => h,
        None => inferred,
    };
    let graph = if signed {
        SimilarityGraph::from_signed_edges(n, edges)?
    } else {
        SimilarityGraph::from_edges(n, edges)?
    };
    Ok(if without_weight > 0 { graph.mark_unweighted() } else { graph })
}

/// Renders the canonical edge list, preceded by a vertex-count hint.
pub fn edge_list_text(g: &SimilarityGraph) -> String {
    let mut out = String::with_capacity(g.m() * 24 + 32);
    let _ = writeln!(out, "{EDGE_LIST_VERTEX_HINT} {}", g.n());
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", e.u, e.v, e.w);
    }
    out
}

pub fn write_edge_list(g: &SimilarityGraph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, edge_list_text(g)).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_path() {
        let g = parse_edge_list("0 1 3.0\n1 2 2.0").unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(g.weight(1, 0), Some(3.0));
        assert!(!g.is_unweighted());
    }

    #[test]
    fn empty_file_is_empty_graph() {
        let g = parse_edge_list("").unwrap();
        assert_eq!((g.n(), g.m()), (0, 0));
        let g = parse_edge_list("# only a comment\n\n").unwrap();
        assert_eq!((g.n(), g.m()), (0, 0));
    }

    #[test]
    fn self_loop_is_rejected_with_line() {
        let err = parse_edge_list("0 0 1.0").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_edge_list("0 1 1\n# c\n1 x 2").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_edge_list("0 1 1 7").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn symmetric_duplicates() {
        let g = parse_edge_list("0 1 2\n1 0 2\n").unwrap();
        assert_eq!(g.m(), 1);
        assert!(matches!(
            parse_edge_list("0 1 2\n1 0 2.5\n"),
            Err(Error::ConflictingDuplicate { .. })
        ));
    }

    #[test]
    fn unweighted_lines() {
        let g = parse_edge_list("0 1\n1 2 # trailing comment\n").unwrap();
        assert!(g.is_unweighted());
        assert_eq!(g.weight(1, 2), Some(1.0));
        assert!(parse_edge_list("0 1\n1 2 3\n").is_err());
    }

    #[test]
    fn negative_weights_make_a_signed_graph() {
        let g = parse_edge_list("0 1 -2.5\n").unwrap();
        assert!(g.is_signed());
    }

    #[test]
    fn text_round_trip_keeps_isolated_vertices() {
        let g = SimilarityGraph::from_edges(5, [(0, 1, 0.1), (1, 2, 1.0 / 3.0)]).unwrap();
        let back = parse_edge_list(&edge_list_text(&g)).unwrap();
        assert_eq!(back.n(), 5);
        assert_eq!(back.edges(), g.edges());
    }
}
