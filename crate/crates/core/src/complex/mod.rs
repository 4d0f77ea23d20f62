//! The cube complex X(Γ): cosets g⟨⟨C⟩⟩ ordered by inclusion, cubes are
//! intervals of that poset.

pub mod ball;
pub mod domain;
pub mod export;
pub mod hat;
pub mod link;

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, Order};
use crate::group::GraphProduct;
use crate::word::NormalForm;

pub use ball::{Cube, CubeBall};
pub use hat::{Clique, HatGraph, HatVertex};
pub use link::{is_flag, SimplicialComplex, VertexLink};

/// The finite set ⟨⟨C⟩⟩ together with its clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StdSubset {
    pub clique: Clique,
    pub elements: Vec<NormalForm>,
}

/// A vertex g⟨⟨C⟩⟩ of X, stored with its shortlex-least element as `rep`
/// and the clique `C` taken relative to that rep.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StdCosetVertex {
    pub rep: NormalForm,
    pub clique: Clique,
    /// Sorted element set.
    pub elements: Vec<NormalForm>,
    /// A longest element (the lexicographically greatest if several).
    pub top: NormalForm,
}

impl StdCosetVertex {
    pub fn max_length(&self) -> u64 {
        self.top.length()
    }

    pub fn key(&self) -> (Clique, NormalForm) {
        (self.clique, self.rep.clone())
    }

    pub fn contains(&self, g: &NormalForm) -> bool {
        self.elements.binary_search(g).is_ok()
    }
}

/// Group plus doubled graph: everything needed to build cosets.
#[derive(Debug, Clone)]
pub struct CosetComplex {
    group: GraphProduct,
    hat: HatGraph,
    cliques: Vec<Clique>,
}

impl CosetComplex {
    pub fn new(graph: LabeledGraph) -> Result<Self> {
        let hat = HatGraph::new(&graph)?;
        let cliques = hat.cliques();
        Ok(CosetComplex {
            group: GraphProduct::new(graph),
            hat,
            cliques,
        })
    }

    pub fn group(&self) -> &GraphProduct {
        &self.group
    }

    pub fn graph(&self) -> &LabeledGraph {
        self.group.graph()
    }

    pub fn hat(&self) -> &HatGraph {
        &self.hat
    }

    pub fn cliques(&self) -> &[Clique] {
        &self.cliques
    }

    /// Exponents available in ⟨⟨ŝ⟩⟩ for hat vertex `i` (0 is the identity).
    pub(crate) fn hat_exponents(&self, i: usize) -> Vec<i64> {
        let h = self.hat.vertex(i);
        match self.graph().order(h.gen) {
            Order::Finite(c) => (0..c as i64).collect(),
            Order::Infinite => vec![0, h.sign as i64],
        }
    }

    /// All exponent tuples of ⟨⟨C⟩⟩, one entry per clique member in index order.
    pub(crate) fn clique_tuples(&self, c: Clique) -> Vec<Vec<(usize, i64)>> {
        let mut out: Vec<Vec<(usize, i64)>> = vec![Vec::new()];
        for i in c.iter() {
            let exps = self.hat_exponents(i);
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    exps.iter().map(move |&e| {
                        let mut p = prefix.clone();
                        p.push((i, e));
                        p
                    })
                })
                .collect();
        }
        out
    }

    fn apply_tuple(&self, g: &NormalForm, tuple: &[(usize, i64)]) -> NormalForm {
        tuple.iter().fold(g.clone(), |acc, &(i, e)| {
            if e == 0 {
                acc
            } else {
                self.group.mul_letter(&acc, self.hat.vertex(i).gen, e)
            }
        })
    }

    pub fn std_subset(&self, c: Clique) -> Result<StdSubset> {
        if !self.hat.is_clique(c) {
            return Err(Error::InvalidArgument(format!("{c} is not a clique of the doubled graph")));
        }
        let id = self.group.identity();
        let mut elements: Vec<NormalForm> = self
            .clique_tuples(c)
            .iter()
            .map(|t| self.apply_tuple(&id, t))
            .collect();
        elements.sort();
        elements.dedup();
        Ok(StdSubset { clique: c, elements })
    }

    /// The vertex g⟨⟨C⟩⟩ in canonical form.
    pub fn coset_vertex(&self, g: &NormalForm, c: Clique) -> Result<StdCosetVertex> {
        if !self.hat.is_clique(c) {
            return Err(Error::InvalidArgument(format!("{c} is not a clique of the doubled graph")));
        }
        Ok(self.coset_unchecked(g, c))
    }

    pub(crate) fn coset_unchecked(&self, g: &NormalForm, c: Clique) -> StdCosetVertex {
        let tuples = self.clique_tuples(c);
        let mut elems: Vec<(NormalForm, usize)> = tuples
            .iter()
            .enumerate()
            .map(|(k, t)| (self.apply_tuple(g, t), k))
            .collect();
        let (rep_pos, _) = elems
            .iter()
            .enumerate()
            .min_by(|a, b| a.1 .0.shortlex_cmp(&b.1 .0))
            .expect("cosets are nonempty");
        let (rep, rep_tuple) = elems[rep_pos].clone();
        // g⟨⟨C⟩⟩ = rep⟨⟨C'⟩⟩ where C' flips each infinite sign used by rep.
        let clique = tuples[rep_tuple]
            .iter()
            .fold(c, |acc, &(i, e)| {
                if e != 0 && !self.hat.is_finite(i) {
                    acc.without(i).with(self.hat.flip(i))
                } else {
                    acc
                }
            });
        let top = elems
            .iter()
            .map(|(x, _)| x)
            .max_by(|a, b| a.shortlex_cmp(b))
            .expect("cosets are nonempty")
            .clone();
        elems.sort();
        let elements: Vec<NormalForm> = elems.into_iter().map(|(x, _)| x).collect();
        StdCosetVertex {
            rep,
            clique,
            elements,
            top,
        }
    }

    /// Number of elements of the coset attaining the maximal length.
    pub fn max_length_multiplicity(&self, v: &StdCosetVertex) -> usize {
        let m = v.max_length();
        v.elements.iter().filter(|x| x.length() == m).count()
    }

    /// The clique D with h⁻¹·v = ⟨⟨D⟩⟩, for h an element of v.
    pub fn relative_clique(&self, v: &StdCosetVertex, h: &NormalForm) -> Result<Clique> {
        if !v.contains(h) {
            return Err(Error::InvalidArgument("element not in coset".into()));
        }
        let q = self.group.mul(&self.group.inv(&v.rep), h);
        let mut d = v.clique;
        for l in q.letters() {
            let i = v
                .clique
                .iter()
                .find(|&i| self.hat.vertex(i).gen == l.gen)
                .ok_or_else(|| Error::InvariantViolation("coset offset leaves the clique".into()))?;
            if !self.hat.is_finite(i) {
                d = d.without(i).with(self.hat.flip(i));
            }
        }
        Ok(d)
    }

    /// Inclusion of element sets.
    pub fn poset_leq(&self, a: &StdCosetVertex, b: &StdCosetVertex) -> bool {
        a.elements.len() <= b.elements.len() && a.elements.iter().all(|x| b.contains(x))
    }

    /// Left translate h·v.
    pub fn translate(&self, h: &NormalForm, v: &StdCosetVertex) -> StdCosetVertex {
        self.coset_unchecked(&self.group.mul(h, &v.rep), v.clique)
    }

    /// Hat-vertex names of a clique, in index order.
    pub fn clique_names(&self, c: Clique) -> Vec<String> {
        c.iter().map(|i| self.hat.name(self.graph(), i)).collect()
    }

    /// Shorthand `rep·⟨⟨C⟩⟩` label.
    pub fn vertex_label(&self, v: &StdCosetVertex) -> String {
        if v.clique.is_empty() {
            format!("{{{}}}", self.group.format(&v.rep))
        } else {
            format!(
                "{}<<{}>>",
                self.group.format(&v.rep),
                self.clique_names(v.clique).join(",")
            )
        }
    }
}
