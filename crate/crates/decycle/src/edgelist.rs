//! Plain edge-list text format: first line `n m`, then `m` lines `u v`
//! with 0-based endpoints.

use decycle_core::Graph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EdgeListError {
    #[error("line {line}: {what}")]
    Malformed { line: usize, what: &'static str },
    #[error("line {line}: expected {expected} edges, found {found}")]
    EdgeCountMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("graph construction failed: {0}")]
    Graph(decycle_core::Error),
}

pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let Some((line0, header)) = lines.next() else {
        return Err(EdgeListError::Malformed {
            line: 1,
            what: "missing 'n m' header",
        });
    };
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(EdgeListError::Malformed {
            line: line0 + 1,
            what: "bad vertex count",
        })?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(EdgeListError::Malformed {
            line: line0 + 1,
            what: "bad edge count",
        })?;
    if it.next().is_some() {
        return Err(EdgeListError::Malformed {
            line: line0 + 1,
            what: "trailing tokens in header",
        });
    }
    let mut edges = Vec::with_capacity(m);
    let mut last_line = line0 + 1;
    for (lineno, line) in lines {
        last_line = lineno + 1;
        let mut it = line.split_whitespace();
        let u: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(EdgeListError::Malformed {
                line: lineno + 1,
                what: "bad endpoint",
            })?;
        let v: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(EdgeListError::Malformed {
                line: lineno + 1,
                what: "bad endpoint",
            })?;
        if it.next().is_some() {
            return Err(EdgeListError::Malformed {
                line: lineno + 1,
                what: "trailing tokens",
            });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(EdgeListError::EdgeCountMismatch {
            line: last_line,
            expected: m,
            found: edges.len(),
        });
    }
    Graph::from_edges(n, edges).map_err(EdgeListError::Graph)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for g in [
            Graph::path(5).unwrap(),
            Graph::cycle(6).unwrap(),
            Graph::star(4).unwrap(),
        ] {
            let text = write_edge_list(&g);
            assert_eq!(parse_edge_list(&text).unwrap(), g);
        }
    }

    #[test]
    fn parses_loose_whitespace() {
        let g = parse_edge_list("3 2\n\n0 1\n1 2\n").unwrap();
        assert_eq!(g, Graph::path(3).unwrap());
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(
            parse_edge_list(""),
            Err(EdgeListError::Malformed { .. })
        ));
        assert!(matches!(
            parse_edge_list("x y"),
            Err(EdgeListError::Malformed { .. })
        ));
        assert!(matches!(
            parse_edge_list("3 2\n0 1\n"),
            Err(EdgeListError::EdgeCountMismatch {
                expected: 2,
                found: 1,
                ..
            })
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 9\n"),
            Err(EdgeListError::Graph(
                decycle_core::Error::VertexOutOfRange { .. }
            ))
        ));
    }
}
