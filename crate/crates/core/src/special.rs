//! Edge labels, walls, and the specialness conditions for the action of G
//! on a ball of X; freeness of the torsion-free kernel.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::complex::{CosetComplex, CubeBall, HatGraph};
use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, Order};
use crate::group::GraphProduct;
use crate::word::NormalForm;

/// ŝ for an infinite generator, s^k (k mod c) for a finite one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeLabel {
    Hat(usize),
    Power { hat: usize, k: u32 },
}

impl EdgeLabel {
    /// The hat vertex, forgetting the power.
    pub fn base(self) -> usize {
        match self {
            EdgeLabel::Hat(h) | EdgeLabel::Power { hat: h, .. } => h,
        }
    }

    pub fn display(self, hat: &HatGraph, graph: &LabeledGraph) -> String {
        match self {
            EdgeLabel::Hat(h) => hat.name(graph, h),
            EdgeLabel::Power { hat: h, k } => format!("{}^{k}", hat.name(graph, h)),
        }
    }
}

/// An edge bottom < top of the ball, oriented upward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrientedEdge {
    pub bottom: usize,
    pub top: usize,
    pub label: EdgeLabel,
}

#[derive(Debug, Clone, Serialize)]
pub struct Hyperplane {
    pub edges: Vec<usize>,
    /// None when member edges disagree.
    pub label: Option<EdgeLabel>,
    /// Some member edge touches a vertex whose star leaves the ball.
    pub truncated: bool,
}

impl CosetComplex {
    /// Label of the edge x⟨⟨D⟩⟩ < x⟨⟨D ∪ {ŝ}⟩⟩ computed from the element `x`
    /// of the bottom vertex.
    fn label_from(&self, bottom: &crate::complex::StdCosetVertex, top: &crate::complex::StdCosetVertex, x: &NormalForm) -> Result<EdgeLabel> {
        let d = self.relative_clique(bottom, x)?;
        let t = self.relative_clique(top, x)?;
        if !d.is_subset(t) || t.len() != d.len() + 1 {
            return Err(Error::InvariantViolation("not an edge".into()));
        }
        let s = crate::complex::Clique(t.0 & !d.0).iter().next().expect("one new hat vertex");
        let gen = self.hat().vertex(s).gen;
        Ok(match self.graph().order(gen) {
            Order::Infinite => EdgeLabel::Hat(s),
            Order::Finite(c) => EdgeLabel::Power {
                hat: s,
                k: self.group().tail_exponent(x, gen).rem_euclid(c as i64) as u32,
            },
        })
    }
}

impl CubeBall {
    pub fn edge_label(&self, bottom: usize, top: usize) -> Result<EdgeLabel> {
        let b = self.vertex(bottom);
        self.complex().label_from(b, self.vertex(top), &b.rep)
    }

    /// Labels obtained from every element of the bottom vertex; a
    /// well-defined label makes this a singleton.
    pub fn edge_label_candidates(&self, bottom: usize, top: usize) -> Result<BTreeSet<EdgeLabel>> {
        let b = self.vertex(bottom);
        let t = self.vertex(top);
        b.elements
            .iter()
            .map(|x| self.complex().label_from(b, t, x))
            .collect()
    }

    pub fn oriented_edges(&self) -> Result<Vec<OrientedEdge>> {
        self.cubes_of_dim(1)
            .map(|c| {
                Ok(OrientedEdge {
                    bottom: c.bottom,
                    top: c.top,
                    label: self.edge_label(c.bottom, c.top)?,
                })
            })
            .collect()
    }

    pub fn special_structure(&self) -> Result<SpecialStructure> {
        let edges = self.oriented_edges()?;
        let index: HashMap<(usize, usize), usize> =
            edges.iter().enumerate().map(|(i, e)| ((e.bottom, e.top), i)).collect();
        let mut squares = Vec::new();
        for c in self.cubes_of_dim(2) {
            let mids: Vec<usize> = self
                .cube_vertices(c)
                .into_iter()
                .filter(|&v| v != c.bottom && v != c.top)
                .collect();
            let (m1, m2) = (mids[0], mids[1]);
            squares.push(Square {
                a1: index[&(c.bottom, m1)],
                a2: index[&(c.bottom, m2)],
                b1: index[&(m1, c.top)],
                b2: index[&(m2, c.top)],
            });
        }
        Ok(SpecialStructure {
            hat: self.complex().hat().clone(),
            graph: self.complex().graph().clone(),
            interior: (0..self.len()).map(|v| self.is_interior(v)).collect(),
            edges,
            squares,
        })
    }

    pub fn hyperplanes(&self) -> Result<Vec<Hyperplane>> {
        Ok(self.special_structure()?.hyperplanes())
    }

    pub fn check_special(&self) -> Result<SpecialReport> {
        Ok(self.special_structure()?.check())
    }
}

/// Square with bottom a, middle vertices m1, m2 and top b; edges
/// a1 = [a,m1], a2 = [a,m2], b1 = [m1,b], b2 = [m2,b]. a1 ∥ b2, a2 ∥ b1.
#[derive(Debug, Clone, Copy)]
pub struct Square {
    pub a1: usize,
    pub a2: usize,
    pub b1: usize,
    pub b2: usize,
}

impl Square {
    fn corners(&self) -> [(usize, usize); 4] {
        [(self.a1, self.a2), (self.a1, self.b1), (self.a2, self.b2), (self.b1, self.b2)]
    }
}

/// Edge and square data detached from the ball, so tests can tamper with
/// labels.
#[derive(Debug, Clone)]
pub struct SpecialStructure {
    pub hat: HatGraph,
    pub graph: LabeledGraph,
    pub interior: Vec<bool>,
    pub edges: Vec<OrientedEdge>,
    pub squares: Vec<Square>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ConditionVerdict {
    pub checked: usize,
    pub violations: usize,
    pub examples: Vec<String>,
}

impl ConditionVerdict {
    pub fn pass(&self) -> bool {
        self.violations == 0
    }

    fn fail(&mut self, note: String) {
        self.violations += 1;
        if self.examples.len() < 8 {
            self.examples.push(note);
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecialReport {
    pub edges: usize,
    pub squares: usize,
    pub hyperplanes: usize,
    pub truncated_hyperplanes: usize,
    /// Hyperplanes (complete or truncated) per label.
    pub label_census: BTreeMap<String, usize>,
    /// Label constancy and orientation coherence.
    pub labels_and_orientation: ConditionVerdict,
    /// Same-label edges never cross or osculate.
    pub self_crossing_and_osculation: ConditionVerdict,
    /// Crossing labels are adjacent in Δ.
    pub crossing_labels_commute: ConditionVerdict,
    /// Label pairs that cross never osculate.
    pub no_inter_osculation: ConditionVerdict,
    /// Condition (ii) with labels compared by hat vertex only. Reported,
    /// not part of the verdict: the edges into ⟨⟨u⟩⟩, u finite, always share ŝ.
    pub generator_granularity_collisions: usize,
    pub truncation_notes: Vec<String>,
}

impl SpecialReport {
    pub fn pass(&self) -> bool {
        self.labels_and_orientation.pass()
            && self.self_crossing_and_osculation.pass()
            && self.crossing_labels_commute.pass()
            && self.no_inter_osculation.pass()
    }
}

impl SpecialStructure {
    fn edge_interior(&self, e: usize) -> bool {
        let e = self.edges[e];
        self.interior[e.bottom] && self.interior[e.top]
    }

    fn name(&self, l: EdgeLabel) -> String {
        l.display(&self.hat, &self.graph)
    }

    /// Classes of edges under "opposite sides of a square".
    pub fn hyperplanes(&self) -> Vec<Hyperplane> {
        let mut uf = UnionFind::<usize>::new(self.edges.len());
        for s in &self.squares {
            uf.union(s.a1, s.b2);
            uf.union(s.a2, s.b1);
        }
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in 0..self.edges.len() {
            classes.entry(uf.find(e)).or_default().push(e);
        }
        let mut out: Vec<Hyperplane> = classes
            .into_values()
            .map(|edges| {
                let labels: BTreeSet<EdgeLabel> = edges.iter().map(|&e| self.edges[e].label).collect();
                Hyperplane {
                    label: (labels.len() == 1).then(|| *labels.iter().next().unwrap()),
                    truncated: !edges.iter().all(|&e| self.edge_interior(e)),
                    edges,
                }
            })
            .collect();
        out.sort_by_key(|h| h.edges[0]);
        out
    }

    pub fn check(&self) -> SpecialReport {
        let hyperplanes = self.hyperplanes();
        let mut hyperplane_of = vec![0; self.edges.len()];
        for (i, h) in hyperplanes.iter().enumerate() {
            for &e in &h.edges {
                hyperplane_of[e] = i;
            }
        }

        let mut cond_i = ConditionVerdict::default();
        let mut census = BTreeMap::new();
        let mut notes = Vec::new();
        // A truncated class is part of a wall of X, so label and orientation
        // are checked on it too; truncation only makes it incomplete.
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.truncated {
                notes.push(format!("hyperplane {i} ({} edges) touches the ball boundary", h.edges.len()));
            }
            cond_i.checked += 1;
            let Some(label) = h.label else {
                cond_i.fail(format!("hyperplane {i} carries several labels"));
                continue;
            };
            *census.entry(self.name(label)).or_insert(0) += 1;
            // Coherent orientation: no vertex is a bottom of one member edge
            // and the top of another.
            let bottoms: HashSet<usize> = h.edges.iter().map(|&e| self.edges[e].bottom).collect();
            if h.edges.iter().any(|&e| bottoms.contains(&self.edges[e].top)) {
                cond_i.fail(format!("hyperplane {i} is not coherently oriented"));
            }
        }

        let mut spanning: HashSet<(usize, usize)> = HashSet::new();
        let mut crossing_pairs: HashSet<(EdgeLabel, EdgeLabel)> = HashSet::new();
        let mut cond_iii = ConditionVerdict::default();
        for s in &self.squares {
            for (x, y) in s.corners() {
                spanning.insert((x.min(y), x.max(y)));
            }
            let (l1, l2) = (self.edges[s.a1].label, self.edges[s.a2].label);
            crossing_pairs.insert((l1.min(l2), l1.max(l2)));
            cond_iii.checked += 1;
            if !self.hat.adjacent(l1.base(), l2.base()) {
                cond_iii.fail(format!("{} crosses {}", self.name(l1), self.name(l2)));
            }
            if hyperplane_of[s.a1] == hyperplane_of[s.a2] && !hyperplanes[hyperplane_of[s.a1]].truncated {
                cond_iii.fail(format!("hyperplane {} crosses itself", hyperplane_of[s.a1]));
            }
        }

        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.interior.len()];
        for (i, e) in self.edges.iter().enumerate() {
            incident[e.bottom].push(i);
            incident[e.top].push(i);
        }
        let mut cond_ii = ConditionVerdict::default();
        let mut cond_iv = ConditionVerdict::default();
        let mut coarse = 0;
        for (v, edges) in incident.iter().enumerate() {
            if !self.interior[v] {
                continue;
            }
            cond_ii.checked += 1;
            cond_iv.checked += 1;
            for (i, &x) in edges.iter().enumerate() {
                for &y in &edges[i + 1..] {
                    let (lx, ly) = (self.edges[x].label, self.edges[y].label);
                    let spans = spanning.contains(&(x.min(y), x.max(y)));
                    if lx.base() == ly.base() {
                        coarse += 1;
                    }
                    if lx == ly {
                        let what = if spans { "cross" } else { "osculate" };
                        cond_ii.fail(format!("two {} edges {what} at vertex {v}", self.name(lx)));
                    } else if !spans && crossing_pairs.contains(&(lx.min(ly), lx.max(ly))) {
                        cond_iv.fail(format!(
                            "{} and {} osculate at vertex {v}",
                            self.name(lx),
                            self.name(ly)
                        ));
                    }
                }
            }
        }

        SpecialReport {
            edges: self.edges.len(),
            squares: self.squares.len(),
            hyperplanes: hyperplanes.len(),
            truncated_hyperplanes: hyperplanes.iter().filter(|h| h.truncated).count(),
            label_census: census,
            labels_and_orientation: cond_i,
            self_crossing_and_osculation: cond_ii,
            crossing_labels_commute: cond_iii,
            no_inter_osculation: cond_iv,
            generator_granularity_collisions: coarse,
            truncation_notes: notes,
        }
    }
}

/// Exponent sums mod c(s) over the finite generators, in vertex order.
pub fn torsion_projection(group: &GraphProduct, g: &NormalForm) -> Vec<u32> {
    let fin = group.graph().finite_vertices();
    let mut out = vec![0i64; fin.len()];
    for l in g.letters() {
        if let Some(i) = fin.iter().position(|&s| s == l.gen) {
            out[i] += l.exp;
        }
    }
    fin.iter()
        .zip(out)
        .map(|(&s, e)| match group.graph().order(s) {
            Order::Finite(c) => e.rem_euclid(c as i64) as u32,
            Order::Infinite => unreachable!("finite vertices only"),
        })
        .collect()
}

pub fn in_torsion_kernel(group: &GraphProduct, g: &NormalForm) -> bool {
    torsion_projection(group, g).iter().all(|&e| e == 0)
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelReport {
    pub vertices_checked: usize,
    /// Vertex labels whose stabilizer meets the kernel nontrivially.
    pub offenders: Vec<String>,
    pub max_stabilizer: usize,
}

impl KernelReport {
    pub fn pass(&self) -> bool {
        self.offenders.is_empty()
    }
}

impl CubeBall {
    pub fn kernel_report(&self) -> KernelReport {
        let cx = self.complex();
        let g = cx.group();
        let mut offenders = Vec::new();
        let mut max_stabilizer = 0;
        for (i, v) in self.vertices().iter().enumerate() {
            let stab = cx.stabilizer(v);
            max_stabilizer = max_stabilizer.max(stab.len());
            if stab.iter().any(|h| !h.is_identity() && in_torsion_kernel(g, h)) {
                offenders.push(self.label(i));
            }
        }
        KernelReport {
            vertices_checked: self.len(),
            offenders,
            max_stabilizer,
        }
    }

    pub fn check_free_kernel_action(&self) -> bool {
        self.kernel_report().pass()
    }
}
