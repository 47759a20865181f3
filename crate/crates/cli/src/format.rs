//! The line-oriented instance format.
//!
//! ```text
//! c a path s - m - t with one pair
//! p vmc 3 2 1
//! e 1 2
//! e 2 3
//! t 1 3
//! k 1
//! ```
//!
//! Vertices are 1-indexed in files and 0-indexed in memory. `w <v>` lines
//! mark members of `W` for compression instances.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;
use vmc_core::instance::normalize_pair;
use vmc_core::{CompressionInstance, Graph, MulticutInstance, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// A parsed instance file. Edges and pairs are stored normalized and
/// 0-indexed, in the order they appeared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub pairs: Vec<(usize, usize)>,
    pub w: Vec<usize>,
    pub k: Option<usize>,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let mut header: Option<(usize, usize, usize, usize)> = None;
    let mut doc = Document {
        n: 0,
        edges: Vec::new(),
        pairs: Vec::new(),
        w: Vec::new(),
        k: None,
    };
    let mut seen_edges = BTreeSet::new();
    let mut seen_pairs = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        let Some(tag) = tokens.next() else { continue };
        if tag == "c" {
            continue;
        }
        let args: Vec<&str> = tokens.collect();
        let num = |s: &str| -> Result<usize, ParseError> {
            s.parse::<usize>()
                .map_err(|_| err(line, format!("expected a non-negative integer, found `{s}`")))
        };
        let arity = |want: usize| -> Result<(), ParseError> {
            if args.len() == want {
                Ok(())
            } else {
                Err(err(line, format!("`{tag}` takes {want} arguments, found {}", args.len())))
            }
        };
        if tag == "p" {
            if header.is_some() {
                return Err(err(line, "duplicate `p` line"));
            }
            if args.first() != Some(&"vmc") {
                return Err(err(line, "header must start with `p vmc`"));
            }
            if args.len() != 4 {
                return Err(err(line, "header is `p vmc <n> <m> <p>`"));
            }
            let (n, m, p) = (num(args[1])?, num(args[2])?, num(args[3])?);
            doc.n = n;
            header = Some((n, m, p, line));
            continue;
        }
        if header.is_none() {
            return Err(err(line, format!("`{tag}` line before the `p vmc` header")));
        }
        let vertex = |s: &str| -> Result<usize, ParseError> {
            let v = num(s)?;
            if v == 0 || v > doc.n {
                return Err(err(line, format!("vertex {v} out of range 1..={}", doc.n)));
            }
            Ok(v - 1)
        };
        match tag {
            "e" | "t" => {
                arity(2)?;
                let (a, b) = (vertex(args[0])?, vertex(args[1])?);
                if a == b {
                    return Err(err(line, format!("`{tag}` has identical endpoints {}", a + 1)));
                }
                let e = normalize_pair(a, b);
                let (seen, list, what) = if tag == "e" {
                    (&mut seen_edges, &mut doc.edges, "edge")
                } else {
                    (&mut seen_pairs, &mut doc.pairs, "pair")
                };
                if !seen.insert(e) {
                    return Err(err(line, format!("duplicate {what} {} {}", e.0 + 1, e.1 + 1)));
                }
                list.push(e);
            }
            "w" => {
                arity(1)?;
                let v = vertex(args[0])?;
                if doc.w.contains(&v) {
                    return Err(err(line, format!("duplicate `w` vertex {}", v + 1)));
                }
                doc.w.push(v);
            }
            "k" => {
                arity(1)?;
                if doc.k.is_some() {
                    return Err(err(line, "duplicate `k` line"));
                }
                doc.k = Some(num(args[0])?);
            }
            _ => return Err(err(line, format!("unknown line type `{tag}`"))),
        }
    }
    let Some((_, m, p, hline)) = header else {
        return Err(err(text.lines().count().max(1), "missing `p vmc` header"));
    };
    if doc.edges.len() != m {
        return Err(err(hline, format!("header declares {m} edges, found {}", doc.edges.len())));
    }
    if doc.pairs.len() != p {
        return Err(err(hline, format!("header declares {p} pairs, found {}", doc.pairs.len())));
    }
    Ok(doc)
}

pub fn serialize(doc: &Document) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p vmc {} {} {}", doc.n, doc.edges.len(), doc.pairs.len());
    for &(u, v) in &doc.edges {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    for &(s, t) in &doc.pairs {
        let _ = writeln!(out, "t {} {}", s + 1, t + 1);
    }
    for &v in &doc.w {
        let _ = writeln!(out, "w {}", v + 1);
    }
    if let Some(k) = doc.k {
        let _ = writeln!(out, "k {k}");
    }
    out
}

impl Document {
    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.n, self.edges.iter().copied()).expect("parser validated the edges")
    }

    pub fn w_set(&self) -> VertexSet {
        VertexSet::from_iter(self.n, self.w.iter().copied())
    }

    /// `k` from the argument, else from the file, else 0.
    pub fn budget(&self, k: Option<usize>) -> usize {
        k.or(self.k).unwrap_or(0)
    }

    pub fn multicut(&self, k: Option<usize>) -> MulticutInstance {
        MulticutInstance::new(self.graph(), self.pairs.iter().copied(), self.budget(k))
            .expect("parser validated the pairs")
    }

    pub fn compression(&self, k: Option<usize>) -> Result<CompressionInstance, vmc_core::error::InstanceError> {
        CompressionInstance::new(self.graph(), self.pairs.iter().copied(), self.w_set(), self.budget(k))
    }

    pub fn from_multicut(inst: &MulticutInstance) -> Self {
        let g = inst.graph();
        Document {
            n: g.universe(),
            edges: g.edges().collect(),
            pairs: inst.pairs().iter().copied().collect(),
            w: Vec::new(),
            k: Some(inst.k()),
        }
    }

    pub fn from_compression(inst: &CompressionInstance) -> Self {
        let g = inst.graph();
        Document {
            n: g.universe(),
            edges: g.edges().collect(),
            pairs: inst.pairs().iter().copied().collect(),
            w: inst.w_set().to_vec(),
            k: Some(inst.k()),
        }
    }
}

/// Parses `1,4,7` (1-indexed) into 0-indexed vertices. An empty string is
/// the empty list.
pub fn parse_vertex_list(s: &str, n: usize) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
            Ok(v) => Err(format!("vertex {v} out of range 1..={n}")),
            Err(_) => Err(format!("`{t}` is not a vertex number")),
        })
        .collect()
}

/// 1-indexed, comma separated.
pub fn format_vertex_list<I: IntoIterator<Item = usize>>(vs: I) -> String {
    vs.into_iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    const PATH: &str = "c s - m - t\np vmc 3 2 1\ne 1 2\ne 2 3\nt 1 3\nk 1\n";

    #[test]
    fn parses_and_round_trips() {
        let doc = parse(PATH).unwrap();
        assert_eq!(doc.edges, [(0, 1), (1, 2)]);
        assert_eq!(doc.pairs, [(0, 2)]);
        assert_eq!(doc.k, Some(1));
        assert_eq!(parse(&serialize(&doc)).unwrap(), doc);
        assert_eq!(serialize(&doc), PATH.trim_start_matches("c s - m - t\n"));
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let cases = [
            ("e 1 2\n", 1, "before"),
            ("p vmc 2 1 0\ne 1 3\n", 2, "out of range"),
            ("p vmc 2 1 0\n\ne 1 1\n", 3, "identical"),
            ("p vmc 2 1 0\ne 1 2\ne 2 1\n", 3, "duplicate edge"),
            ("p vmc 2 0 0\nx 1\n", 2, "unknown"),
            ("p vmc 2 2 0\ne 1 2\n", 1, "declares 2 edges"),
            ("p vmc 2 0 0\nk two\n", 2, "integer"),
            ("c nothing\n", 1, "missing"),
        ];
        for (text, line, needle) in cases {
            let e = parse(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
            assert!(e.message.contains(needle), "{text:?}: {e}");
        }
    }

    #[test]
    fn vertex_lists() {
        assert_eq!(parse_vertex_list("2, 3", 3).unwrap(), [1, 2]);
        assert_eq!(parse_vertex_list("", 3).unwrap(), Vec::<usize>::new());
        assert!(parse_vertex_list("4", 3).is_err());
        assert_eq!(format_vertex_list([0, 4]), "1,5");
    }
}
