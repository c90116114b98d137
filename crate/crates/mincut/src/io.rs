//! Graph file loaders.
//!
//! Two formats are supported. A METIS file starts with a header line
//! `n m [fmt]` where `fmt = 1` marks weighted edges; line `i` of the body
//! lists the 1-indexed neighbors of vertex `i`, alternating neighbor and
//! weight when weighted, and every edge appears in both endpoint lines.
//! An edge list file holds one `u v [w]` triple per line with 0-indexed
//! ids and a default weight of 1. Lines starting with `%` or `#` are
//! comments in both formats.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph, Vertex, Weight};

/// Input format, chosen by file extension in [`load_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Metis,
    EdgeList,
}

impl Format {
    pub fn name(&self) -> &'static str {
        match self {
            Format::Metis => "metis",
            Format::EdgeList => "edge-list",
        }
    }
}

/// Loads a graph, picking the format from the extension: `.metis` and
/// `.graph` parse as METIS; `.txt`, `.edges` and `.el` as edge lists.
pub fn load_graph(path: &Path) -> Result<(Graph, Format)> {
    let format = match path.extension().and_then(|e| e.to_str()) {
        Some("metis") | Some("graph") => Format::Metis,
        Some("txt") | Some("edges") | Some("el") => Format::EdgeList,
        other => {
            return Err(Error::Input(format!(
                "unknown graph format for extension {:?} (expected .metis/.graph or .txt/.edges/.el)",
                other.unwrap_or("")
            )))
        }
    };
    let text = fs::read_to_string(path)?;
    let name = path.display().to_string();
    let graph = match format {
        Format::Metis => parse_metis(&text, &name)?,
        Format::EdgeList => parse_edge_list(&text, &name)?,
    };
    Ok((graph, format))
}

fn is_comment(line: &str) -> bool {
    let t = line.trim_start();
    t.starts_with('%') || t.starts_with('#')
}

fn parse_err(path: &str, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        line,
        msg: msg.into(),
    }
}

/// Parses METIS text. The header edge count is validated against the
/// constructed graph.
pub fn parse_metis(text: &str, path: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !is_comment(l));

    let (header_no, header) = lines
        .next()
        .ok_or_else(|| parse_err(path, 1, "missing header line"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() < 2 || fields.len() > 3 {
        return Err(parse_err(path, header_no + 1, "header must be 'n m [fmt]'"));
    }
    let n: usize = fields[0]
        .parse()
        .map_err(|_| parse_err(path, header_no + 1, "bad vertex count"))?;
    let m: usize = fields[1]
        .parse()
        .map_err(|_| parse_err(path, header_no + 1, "bad edge count"))?;
    let weighted = match fields.get(2).copied() {
        None | Some("0") | Some("00") | Some("000") => false,
        Some("1") | Some("001") => true,
        Some(other) => {
            return Err(parse_err(
                path,
                header_no + 1,
                format!("unsupported fmt '{other}' (only edge weights are supported)"),
            ))
        }
    };

    let mut edges: Vec<(Vertex, Vertex, Weight)> = Vec::with_capacity(2 * m);
    let mut vertex = 0usize;
    for (line_no, line) in lines {
        if vertex >= n {
            if line.trim().is_empty() {
                continue;
            }
            return Err(parse_err(path, line_no + 1, "more vertex lines than vertices"));
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let stride = if weighted { 2 } else { 1 };
        if tokens.len() % stride != 0 {
            return Err(parse_err(
                path,
                line_no + 1,
                "weighted lines must alternate neighbor and weight",
            ));
        }
        for pair in tokens.chunks(stride) {
            let nb: usize = pair[0]
                .parse()
                .map_err(|_| parse_err(path, line_no + 1, "bad neighbor id"))?;
            if nb < 1 || nb > n {
                return Err(parse_err(
                    path,
                    line_no + 1,
                    format!("neighbor {nb} out of range 1..={n}"),
                ));
            }
            let w: Weight = if weighted {
                pair[1]
                    .parse()
                    .map_err(|_| parse_err(path, line_no + 1, "bad edge weight"))?
            } else {
                1
            };
            edges.push((vertex as Vertex, (nb - 1) as Vertex, w));
        }
        vertex += 1;
    }
    if vertex != n {
        return Err(parse_err(
            path,
            0,
            format!("expected {n} vertex lines, found {vertex}"),
        ));
    }
    let graph = build_graph(n, &edges)?;
    if graph.m() != m {
        return Err(parse_err(
            path,
            header_no + 1,
            format!("header promises {m} edges but the body holds {}", graph.m()),
        ));
    }
    Ok(graph)
}

/// Parses whitespace-separated `u v [w]` lines with 0-indexed ids. The
/// vertex count is one more than the largest id seen.
pub fn parse_edge_list(text: &str, path: &str) -> Result<Graph> {
    let mut edges: Vec<(Vertex, Vertex, Weight)> = Vec::new();
    let mut max_id: Option<Vertex> = None;
    for (line_no, line) in text.lines().enumerate() {
        if is_comment(line) || line.trim().is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 && tokens.len() != 3 {
            return Err(parse_err(path, line_no + 1, "expected 'u v [w]'"));
        }
        let u: Vertex = tokens[0]
            .parse()
            .map_err(|_| parse_err(path, line_no + 1, "bad vertex id"))?;
        let v: Vertex = tokens[1]
            .parse()
            .map_err(|_| parse_err(path, line_no + 1, "bad vertex id"))?;
        let w: Weight = match tokens.get(2) {
            Some(t) => t
                .parse()
                .map_err(|_| parse_err(path, line_no + 1, "bad edge weight"))?,
            None => 1,
        };
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v, w));
    }
    let n = max_id.map_or(0, |m| m as usize + 1);
    build_graph(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metis_unweighted_round_trip() {
        // Triangle plus a pendant on vertex 3 (1-indexed ids in the file).
        let text = "% a comment\n4 4\n2 3\n1 3\n1 2 4\n3\n";
        let g = parse_metis(text, "test").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 4);
        assert_eq!(g.weighted_degree(2), 3);
    }

    #[test]
    fn metis_weighted_edges() {
        let text = "3 2 1\n2 5\n1 5 3 7\n2 7\n";
        let g = parse_metis(text, "test").unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.neighbors(1).collect::<Vec<_>>(), vec![(0, 5), (2, 7)]);
    }

    #[test]
    fn metis_blank_line_is_an_isolated_vertex() {
        let text = "3 1\n2\n1\n\n";
        let g = parse_metis(text, "test").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.degree(2), 0);
    }

    #[test]
    fn metis_header_edge_count_mismatch_is_an_error() {
        let text = "3 5\n2\n1 3\n2\n";
        assert!(matches!(
            parse_metis(text, "test"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn metis_rejects_out_of_range_neighbor() {
        let text = "2 1\n2\n3\n";
        assert!(parse_metis(text, "test").is_err());
    }

    #[test]
    fn metis_rejects_vertex_weight_formats() {
        let text = "2 1 11\n2 1 1\n1 1 1\n";
        assert!(parse_metis(text, "test").is_err());
    }

    #[test]
    fn edge_list_with_default_weights() {
        let text = "# pair per line\n0 1\n1 2 4\n\n2 0\n";
        let g = parse_edge_list(text, "test").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
        assert_eq!(g.weighted_degree(1), 5);
    }

    #[test]
    fn edge_list_rejects_garbage() {
        assert!(parse_edge_list("0 1 2 3\n", "test").is_err());
        assert!(parse_edge_list("0\n", "test").is_err());
        assert!(parse_edge_list("a b\n", "test").is_err());
        assert!(parse_edge_list("0 -1\n", "test").is_err());
    }

    #[test]
    fn load_graph_dispatches_on_extension() {
        let dir = tempfile::tempdir().unwrap();
        let metis = dir.path().join("g.metis");
        std::fs::write(&metis, "2 1\n2\n1\n").unwrap();
        let (g, f) = load_graph(&metis).unwrap();
        assert_eq!((g.n(), f), (2, Format::Metis));

        let el = dir.path().join("g.txt");
        std::fs::write(&el, "0 1 9\n").unwrap();
        let (g, f) = load_graph(&el).unwrap();
        assert_eq!((g.m(), f), (1, Format::EdgeList));

        let unknown = dir.path().join("g.gml");
        std::fs::write(&unknown, "whatever").unwrap();
        assert!(matches!(load_graph(&unknown), Err(Error::Input(_))));
    }
}
