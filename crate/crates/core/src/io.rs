//! Plain-text edge lists and partition files.
//!
//! Edge lists hold one `u v` pair per line (single space, LF endings); lines
//! starting with `#` are comments. Graph files may also declare a node on a
//! line of its own, which is an error unless some edge touches it. Partition
//! and two-dimensional tree files hold `node community` pairs.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, IncrementalSequence, NodeId};
use crate::partition::Partition;

enum Record {
    Node(NodeId),
    Pair(u64, u64),
}

fn parse_lines(path: &Path, text: &str, allow_single: bool) -> Result<Vec<(usize, Record)>> {
    let mut out = Vec::new();
    for (i, line) in text.split('\n').enumerate() {
        let lineno = i + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |msg: String| Error::Parse {
            path: path.to_path_buf(),
            line: lineno,
            msg,
        };
        let num = |tok: &str| {
            tok.parse::<u64>()
                .map_err(|_| parse_err(format!("expected a non-negative integer, got {tok:?}")))
        };
        let fields: Vec<&str> = line.split(' ').collect();
        match fields.as_slice() {
            [a, b] => out.push((lineno, Record::Pair(num(a)?, num(b)?))),
            [a] if allow_single => out.push((lineno, Record::Node(num(a)?))),
            _ => {
                return Err(parse_err(format!(
                    "expected two space-separated integers, got {line:?}"
                )))
            }
        }
    }
    Ok(out)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn edge_lines(edges: impl Iterator<Item = Edge>) -> String {
    let mut s = String::new();
    for (u, v) in edges {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// Reads a graph. Rejects self-loops, repeated edges and isolated nodes.
pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let mut g = Graph::new();
    let mut declared = BTreeSet::new();
    for (line, rec) in parse_lines(path, &read(path)?, true)? {
        match rec {
            Record::Node(v) => {
                declared.insert(v);
            }
            Record::Pair(u, v) => {
                if u == v {
                    return Err(Error::SelfLoop {
                        node: u,
                        line: Some(line),
                    });
                }
                if !g.insert_edge(u, v) {
                    return Err(Error::DuplicateEdge {
                        u,
                        v,
                        line: Some(line),
                    });
                }
            }
        }
    }
    if let Some(&v) = declared.iter().find(|&&v| !g.contains_node(v)) {
        return Err(Error::IsolatedNode(v));
    }
    Ok(g)
}

/// Writes the graph's edges in canonical sorted order.
pub fn save_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    write(path.as_ref(), &edge_lines(g.edges()))
}

/// Reads an incremental sequence; line order is sequence order.
pub fn load_sequence(path: impl AsRef<Path>) -> Result<IncrementalSequence> {
    let path = path.as_ref();
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for (line, rec) in parse_lines(path, &read(path)?, false)? {
        let Record::Pair(u, v) = rec else {
            unreachable!("single-field lines are rejected for sequences")
        };
        if u == v {
            return Err(Error::SelfLoop {
                node: u,
                line: Some(line),
            });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::DuplicateEdge {
                u,
                v,
                line: Some(line),
            });
        }
        edges.push((u, v));
    }
    IncrementalSequence::from_edges(edges)
}

pub fn save_sequence(xi: &IncrementalSequence, path: impl AsRef<Path>) -> Result<()> {
    write(path.as_ref(), &edge_lines(xi.iter()))
}

/// Reads a `node community` file. Each node may appear once.
pub fn load_partition(path: impl AsRef<Path>) -> Result<Partition> {
    let path = path.as_ref();
    let mut pairs = Vec::new();
    let mut seen = HashSet::new();
    for (line, rec) in parse_lines(path, &read(path)?, false)? {
        let Record::Pair(v, c) = rec else {
            unreachable!("single-field lines are rejected for partitions")
        };
        if !seen.insert(v) {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line,
                msg: format!("node {v} assigned twice"),
            });
        }
        pairs.push((v, c));
    }
    Ok(Partition::new(pairs))
}

pub fn save_partition(p: &Partition, path: impl AsRef<Path>) -> Result<()> {
    let mut s = String::new();
    for (v, c) in p.iter() {
        let _ = writeln!(s, "{v} {c}");
    }
    write(path.as_ref(), &s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmp_file(contents: &str) -> tempfile::NamedTempFile {
        let f = tempfile::NamedTempFile::new().unwrap();
        fs::write(f.path(), contents).unwrap();
        f
    }

    #[test]
    fn sequence_keeps_file_order() {
        let f = tmp_file("0 1\n1 2\n");
        let xi = load_sequence(f.path()).unwrap();
        assert_eq!(xi.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn self_loop_reports_line() {
        let f = tmp_file("0 0\n");
        assert!(matches!(
            load_edge_list(f.path()),
            Err(Error::SelfLoop {
                node: 0,
                line: Some(1)
            })
        ));
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let f = tmp_file("# header\n0 1\n1  2\n");
        match load_edge_list(f.path()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        let f = tmp_file("0 x\n");
        assert!(matches!(
            load_sequence(f.path()),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn duplicate_and_isolated_rejected() {
        let f = tmp_file("0 1\n1 0\n");
        assert!(matches!(
            load_edge_list(f.path()),
            Err(Error::DuplicateEdge { line: Some(2), .. })
        ));
        let f = tmp_file("0 1\n7\n");
        assert!(matches!(
            load_edge_list(f.path()),
            Err(Error::IsolatedNode(7))
        ));
        // a declared node that also has edges is fine
        let f = tmp_file("1\n0 1\n");
        assert_eq!(load_edge_list(f.path()).unwrap().node_count(), 2);
    }

    #[test]
    fn comments_are_skipped() {
        let f = tmp_file("# a comment\n3 4\n# another\n4 5\n");
        assert_eq!(load_edge_list(f.path()).unwrap().edge_count(), 2);
    }

    #[test]
    fn partition_round_trip() {
        let p = Partition::new([(0, 0u32), (1, 0), (7, 1), (9, 2)]);
        let f = tempfile::NamedTempFile::new().unwrap();
        save_partition(&p, f.path()).unwrap();
        assert_eq!(load_partition(f.path()).unwrap(), p);
    }
}
