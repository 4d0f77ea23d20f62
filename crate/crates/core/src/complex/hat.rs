use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, Order, Vertex};

/// A vertex of the doubled graph: a finite generator, or an infinite
/// generator together with a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HatVertex {
    pub gen: usize,
    /// +1 or -1; always +1 for finite-order generators.
    pub sign: i8,
}

impl HatVertex {
    pub fn positive(gen: usize) -> Self {
        HatVertex { gen, sign: 1 }
    }

    pub fn negative(gen: usize) -> Self {
        HatVertex { gen, sign: -1 }
    }

    pub fn flipped(self) -> Self {
        HatVertex {
            gen: self.gen,
            sign: -self.sign,
        }
    }
}

/// The graph Δ on hat vertices, with adjacency pulled back from Γ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HatGraph {
    vertices: Vec<HatVertex>,
    finite: Vec<bool>,
    adjacency: Vec<u64>,
    /// Position of the positive / negative hat vertex for each generator.
    slots: Vec<(usize, Option<usize>)>,
}

impl HatGraph {
    pub fn new(graph: &LabeledGraph) -> Result<Self> {
        let mut vertices = Vec::new();
        let mut finite = Vec::new();
        let mut slots = Vec::with_capacity(graph.len());
        for v in 0..graph.len() {
            let pos = vertices.len();
            vertices.push(HatVertex::positive(v));
            if graph.order(v).is_finite() {
                finite.push(true);
                slots.push((pos, None));
            } else {
                finite.push(false);
                vertices.push(HatVertex::negative(v));
                finite.push(false);
                slots.push((pos, Some(pos + 1)));
            }
        }
        if vertices.len() > 64 {
            return Err(Error::GraphTooLarge(vertices.len()));
        }
        let adjacency = vertices
            .iter()
            .map(|a| {
                vertices.iter().enumerate().fold(0u64, |mask, (j, b)| {
                    if a.gen != b.gen && graph.adjacent(a.gen, b.gen) {
                        mask | (1 << j)
                    } else {
                        mask
                    }
                })
            })
            .collect();
        Ok(HatGraph {
            vertices,
            finite,
            adjacency,
            slots,
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> HatVertex {
        self.vertices[i]
    }

    pub fn vertices(&self) -> &[HatVertex] {
        &self.vertices
    }

    pub fn is_finite(&self, i: usize) -> bool {
        self.finite[i]
    }

    pub fn index_of(&self, h: HatVertex) -> Option<usize> {
        let (pos, neg) = *self.slots.get(h.gen)?;
        match h.sign {
            1 => Some(pos),
            -1 => neg,
            _ => None,
        }
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a] & (1 << b) != 0
    }

    pub fn neighbors(&self, a: usize) -> u64 {
        self.adjacency[a]
    }

    pub fn is_clique(&self, c: Clique) -> bool {
        c.iter().all(|a| (c.0 & !(1u64 << a)) & !self.adjacency[a] == 0)
    }

    /// Index of the same generator with opposite sign.
    pub fn flip(&self, i: usize) -> usize {
        self.index_of(self.vertices[i].flipped())
            .expect("flip called on a finite hat vertex")
    }

    pub fn name(&self, graph: &LabeledGraph, i: usize) -> String {
        let h = self.vertices[i];
        let base = graph.name(h.gen);
        if self.finite[i] {
            base.to_string()
        } else if h.sign > 0 {
            format!("{base}+")
        } else {
            format!("{base}-")
        }
    }

    /// Δ as a labeled graph; each vertex is labeled by the size of its
    /// standard subset (c(s) for finite s, 2 for a signed infinite one).
    pub fn to_labeled_graph(&self, graph: &LabeledGraph) -> LabeledGraph {
        let vertices = (0..self.len())
            .map(|i| Vertex {
                name: self.name(graph, i),
                order: if self.finite[i] {
                    graph.order(self.vertices[i].gen)
                } else {
                    Order::Finite(2)
                },
            })
            .collect();
        let mut edges = Vec::new();
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.adjacent(a, b) {
                    edges.push((a, b));
                }
            }
        }
        LabeledGraph::new(vertices, &edges)
    }

    /// All cliques of Δ including the empty one, ordered by size then mask.
    pub fn cliques(&self) -> Vec<Clique> {
        let mut out = vec![Clique::EMPTY];
        let mut stack: Vec<(Clique, u64)> = vec![(Clique::EMPTY, self.all_mask())];
        while let Some((c, candidates)) = stack.pop() {
            let mut rest = candidates;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let next = c.with(v);
                out.push(next);
                stack.push((next, rest & self.adjacency[v]));
            }
        }
        out.sort_by_key(|c| (c.len(), c.0));
        out
    }

    fn all_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    /// Largest clique size.
    pub fn dimension(&self) -> usize {
        self.cliques().iter().map(|c| c.len()).max().unwrap_or(0)
    }
}

/// A clique of Δ as a bit mask over hat vertex indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Clique(pub u64);

impl Clique {
    pub const EMPTY: Clique = Clique(0);

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn with(self, i: usize) -> Clique {
        Clique(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Clique {
        Clique(self.0 & !(1 << i))
    }

    pub fn is_subset(self, other: Clique) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(v)
            }
        })
    }

    /// All subsets of this clique.
    pub fn subsets(self) -> impl Iterator<Item = Clique> {
        let full = self.0;
        let mut sub = full;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = Clique(sub);
            if sub == 0 {
                done = true;
            } else {
                sub = (sub - 1) & full;
            }
            Some(out)
        })
    }
}

impl fmt::Display for Clique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Clique {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    #[test]
    fn single_infinite_vertex_doubles() {
        let g = parse_graph("s:inf").unwrap();
        let d = HatGraph::new(&g).unwrap();
        assert_eq!(d.len(), 2);
        assert!(!d.adjacent(0, 1));
        assert_eq!(d.to_labeled_graph(&g).edges(), vec![]);
    }

    #[test]
    fn finite_graph_is_unchanged() {
        let g = parse_graph("u:2").unwrap();
        let d = HatGraph::new(&g).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.to_labeled_graph(&g), g);
    }

    #[test]
    fn edge_pulls_back_to_k22() {
        let g = parse_graph("s:inf; t:inf; edge s t").unwrap();
        let d = HatGraph::new(&g).unwrap();
        assert_eq!(d.len(), 4);
        let lg = d.to_labeled_graph(&g);
        assert_eq!(lg.edges(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
    }

    #[test]
    fn clique_enumeration() {
        let g = parse_graph("s:inf").unwrap();
        assert_eq!(HatGraph::new(&g).unwrap().cliques().len(), 3);
        let z2 = parse_graph("s:inf; t:inf; edge s t").unwrap();
        let cl = HatGraph::new(&z2).unwrap().cliques();
        assert_eq!(cl.len(), 9);
        assert_eq!(cl.iter().filter(|c| c.len() == 2).count(), 4);
        let one = parse_graph("u:5").unwrap();
        assert_eq!(HatGraph::new(&one).unwrap().cliques(), vec![Clique(0), Clique(1)]);
    }

    #[test]
    fn subsets_enumerate_power_set() {
        let c = Clique(0b1011);
        let subs: Vec<_> = c.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.is_subset(c)));
    }
}
