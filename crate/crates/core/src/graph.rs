//! Labeled simplicial graphs: the presentation graph of a graph product.
//!
//! Text format, one statement per line (or separated by `;`):
//!
//! ```text
//! # comment
//! a : inf
//! u : 3
//! edge a u
//! ```

use std::fmt;

use sha2::{Digest, Sha256};

use crate::error::ParseError;

/// Order of a vertex group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(c) => Some(c),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(c) => write!(f, "{c}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub name: String,
    pub order: Order,
}

/// A finite simplicial graph whose vertices carry cyclic group orders.
///
/// Vertex position in `vertices` is the total order used for tie-breaking
/// in normal forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    vertices: Vec<Vertex>,
    adjacency: Vec<bool>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ':' | ',' | '^' | '#' | ';' | '(' | ')'))
}

impl LabeledGraph {
    /// Builds a graph from vertices and an edge list of index pairs.
    ///
    /// Panics on self-loops or out-of-range indices; use [`parse_graph`] for
    /// untrusted input.
    pub fn new(vertices: Vec<Vertex>, edges: &[(usize, usize)]) -> Self {
        let n = vertices.len();
        let mut adjacency = vec![false; n * n];
        for &(a, b) in edges {
            assert!(a != b, "self-loop on vertex {a}");
            adjacency[a * n + b] = true;
            adjacency[b * n + a] = true;
        }
        LabeledGraph { vertices, adjacency }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn name(&self, v: usize) -> &str {
        &self.vertices[v].name
    }

    pub fn order(&self, v: usize) -> Order {
        self.vertices[v].order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a * self.vertices.len() + b]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if self.adjacent(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn finite_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.order(v).is_finite()).collect()
    }

    pub fn infinite_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| !self.order(v).is_finite()).collect()
    }

    /// Canonical text form; parsing it gives back an equal graph.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("{}:{}\n", v.name, v.order));
        }
        for (a, b) in self.edges() {
            out.push_str(&format!("edge {} {}\n", self.name(a), self.name(b)));
        }
        out
    }

    /// SHA-256 of [`LabeledGraph::to_text`], hex encoded.
    pub fn fingerprint_hex(&self) -> String {
        hex::encode(Sha256::digest(self.to_text().as_bytes()))
    }

    pub(crate) fn fingerprint(&self) -> u64 {
        let digest = Sha256::digest(self.to_text().as_bytes());
        u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
    }
}

/// Parses the graph text format.
pub fn parse_graph(spec: &str) -> Result<LabeledGraph, ParseError> {
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (lineno, raw_line) in spec.lines().enumerate() {
        let line = lineno + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        for stmt in content.split(';') {
            let stmt = stmt.trim();
            if stmt.is_empty() {
                continue;
            }
            let malformed = || ParseError::Malformed {
                line,
                text: stmt.to_string(),
            };
            if let Some((name, order)) = stmt.split_once(':') {
                let name = name.trim();
                let order = order.trim();
                if !valid_name(name) {
                    return Err(malformed());
                }
                let order = if order.eq_ignore_ascii_case("inf") {
                    Order::Infinite
                } else {
                    let c: u64 = order.parse().map_err(|_| malformed())?;
                    if c < 2 {
                        return Err(ParseError::OrderTooSmall {
                            line,
                            name: name.to_string(),
                            order: c,
                        });
                    }
                    Order::Finite(u32::try_from(c).map_err(|_| malformed())?)
                };
                if vertices.iter().any(|v| v.name == name) {
                    return Err(ParseError::DuplicateVertex {
                        line,
                        name: name.to_string(),
                    });
                }
                vertices.push(Vertex {
                    name: name.to_string(),
                    order,
                });
            } else {
                let tokens: Vec<&str> = stmt.split_whitespace().collect();
                if tokens.len() != 3 || tokens[0] != "edge" {
                    return Err(malformed());
                }
                let lookup = |name: &str| {
                    vertices
                        .iter()
                        .position(|v| v.name == name)
                        .ok_or_else(|| ParseError::UnknownVertex {
                            line,
                            name: name.to_string(),
                        })
                };
                let a = lookup(tokens[1])?;
                let b = lookup(tokens[2])?;
                if a == b {
                    return Err(ParseError::SelfLoop {
                        line,
                        name: tokens[1].to_string(),
                    });
                }
                edges.push((a, b));
            }
        }
    }
    Ok(LabeledGraph::new(vertices, &edges))
}

impl std::str::FromStr for LabeledGraph {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_graph(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_graph() {
        let g = parse_graph("a:inf").unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.infinite_vertices(), vec![0]);
        assert!(g.finite_vertices().is_empty());
    }

    #[test]
    fn dihedral_and_mixed() {
        let d = parse_graph("a:2; b:2").unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.edges().is_empty());
        let m = parse_graph("a:inf; b:3; edge a b").unwrap();
        assert_eq!(m.edges(), vec![(0, 1)]);
        assert_eq!(m.order(1), Order::Finite(3));
        assert!(m.adjacent(1, 0));
    }

    #[test]
    fn comments_and_whitespace() {
        let g = parse_graph("# pentagon\n a : 2 \n b:2 # trailing\n\nedge  a   b\n").unwrap();
        assert_eq!(g.len(), 2);
        assert!(g.adjacent(0, 1));
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert!(matches!(
            parse_graph("a:2\na:3"),
            Err(ParseError::DuplicateVertex { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("a:2\nedge a b"),
            Err(ParseError::UnknownVertex { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("a:2\nedge a a"),
            Err(ParseError::SelfLoop { .. })
        ));
        assert!(matches!(
            parse_graph("a:1"),
            Err(ParseError::OrderTooSmall { order: 1, .. })
        ));
        assert!(matches!(
            parse_graph("a:0"),
            Err(ParseError::OrderTooSmall { order: 0, .. })
        ));
        assert!(matches!(parse_graph("a:x"), Err(ParseError::Malformed { .. })));
        assert!(matches!(parse_graph("vertex a"), Err(ParseError::Malformed { .. })));
        assert!(matches!(parse_graph("a^b:2"), Err(ParseError::Malformed { .. })));
    }

    #[test]
    fn text_round_trip() {
        let g = parse_graph("a:inf; u:3; b:2; edge a u; edge u b").unwrap();
        let again = parse_graph(&g.to_text()).unwrap();
        assert_eq!(g, again);
        assert_eq!(g.fingerprint_hex(), again.fingerprint_hex());
    }
}
