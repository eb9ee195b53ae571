//! Plain-text graph and tree formats.
//!
//! Edge list:
//!
//! ```text
//! # comment
//! v 3
//! e 0 1
//! e 1 2
//! ```
//!
//! Rooted tree (one `p <child> <parent>` line per non-root vertex):
//!
//! ```text
//! root 2
//! p 0 2
//! p 1 0
//! ```
//!
//! Labels are 0-based. Blank lines and text after `#` are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Edge, LabeledGraph};
use crate::trees::RootedTree;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(k, line)| {
        let line = line.split('#').next().unwrap_or("");
        let words: Vec<&str> = line.split_whitespace().collect();
        (!words.is_empty()).then_some((k + 1, words))
    })
}

fn parse_label(line: usize, word: &str) -> Result<usize> {
    word.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("expected a vertex label, found {word:?}"),
    })
}

pub fn parse_edge_list(text: &str) -> Result<LabeledGraph> {
    let mut graph: Option<LabeledGraph> = None;
    for (line, words) in content_lines(text) {
        match words.as_slice() {
            ["v", n] => {
                if graph.is_some() {
                    return Err(Error::Parse {
                        line,
                        msg: "duplicate `v` line".into(),
                    });
                }
                let n = parse_label(line, n)?;
                graph = Some(LabeledGraph::empty(n).map_err(|e| Error::Parse {
                    line,
                    msg: e.to_string(),
                })?);
            }
            ["e", a, b] => {
                let g = graph.as_mut().ok_or_else(|| Error::Parse {
                    line,
                    msg: "`e` line before `v` line".into(),
                })?;
                let (a, b) = (parse_label(line, a)?, parse_label(line, b)?);
                let edge = Edge::new(a, b)
                    .and_then(|e| g.check_edge(e).map(|_| e))
                    .map_err(|e| Error::Parse {
                        line,
                        msg: e.to_string(),
                    })?;
                *g = LabeledGraph::from_bits_unchecked(g.n_vertices(), g.bits() | edge.bit());
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unrecognised line {:?}", words.join(" ")),
                })
            }
        }
    }
    graph.ok_or(Error::Parse {
        line: 0,
        msg: "missing `v <n_vertices>` line".into(),
    })
}

/// Edges are written in canonical slot order.
pub fn write_edge_list(g: &LabeledGraph) -> String {
    let mut out = format!("v {}\n", g.n_vertices());
    for e in g.edges() {
        writeln!(out, "e {} {}", e.i(), e.j()).expect("writing to a String");
    }
    out
}

pub fn parse_rooted_tree(text: &str) -> Result<RootedTree> {
    let mut root: Option<usize> = None;
    let mut links: Vec<(usize, usize, usize)> = Vec::new();
    for (line, words) in content_lines(text) {
        match words.as_slice() {
            ["root", r] => {
                if root.is_some() {
                    return Err(Error::Parse {
                        line,
                        msg: "duplicate `root` line".into(),
                    });
                }
                root = Some(parse_label(line, r)?);
            }
            ["p", child, parent] => {
                links.push((line, parse_label(line, child)?, parse_label(line, parent)?));
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unrecognised line {:?}", words.join(" ")),
                })
            }
        }
    }
    let root = root.ok_or(Error::Parse {
        line: 0,
        msg: "missing `root <r>` line".into(),
    })?;
    let m = links.len() + 1;
    let mut parent = vec![usize::MAX; m];
    if root >= m {
        return Err(Error::InvalidTree(format!(
            "root {root} out of range for {m} vertices"
        )));
    }
    parent[root] = root;
    for (line, child, p) in links {
        if child >= m || p >= m {
            return Err(Error::Parse {
                line,
                msg: format!("label out of range for {m} vertices"),
            });
        }
        if parent[child] != usize::MAX {
            return Err(Error::Parse {
                line,
                msg: format!("vertex {child} already has a parent"),
            });
        }
        parent[child] = p;
    }
    RootedTree::new(root, parent)
}

pub fn write_rooted_tree(t: &RootedTree) -> String {
    let mut out = format!("root {}\n", t.root());
    for v in 0..t.n_vertices() {
        if let Some(p) = t.parent(v) {
            writeln!(out, "p {v} {p}").expect("writing to a String");
        }
    }
    out
}
