//! Group action on the ball: stabilizers, the fundamental domain K,
//! equivariance and local finiteness.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{Clique, CosetComplex, CubeBall, StdCosetVertex};
use crate::graph::Order;
use crate::word::NormalForm;

impl CosetComplex {
    /// {h : h·v = v}, filtered from the candidates g q q'⁻¹ g⁻¹.
    pub fn stabilizer(&self, v: &StdCosetVertex) -> Vec<NormalForm> {
        let g = self.group();
        let q_set = self.std_subset(v.clique).expect("vertex cliques are cliques").elements;
        let rep_inv = g.inv(&v.rep);
        let mut out = BTreeSet::new();
        for q in &q_set {
            for q2 in &q_set {
                let h = g.mul(&g.mul(&g.mul(&v.rep, q), &g.inv(q2)), &rep_inv);
                let mut moved: Vec<NormalForm> = v.elements.iter().map(|x| g.mul(&h, x)).collect();
                moved.sort();
                if moved == v.elements {
                    out.insert(h);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Partition of the K-vertices ⟨⟨C⟩⟩ into G-orbits, by direct search:
    /// g⟨⟨C⟩⟩ = ⟨⟨D⟩⟩ forces g ∈ ⟨⟨D⟩⟩.
    pub fn k_orbits(&self) -> Vec<Vec<Clique>> {
        let g = self.group();
        let subsets: Vec<(Clique, Vec<NormalForm>)> = self
            .cliques()
            .iter()
            .map(|&c| (c, self.std_subset(c).expect("clique").elements))
            .collect();
        let mut orbit_of: Vec<Option<usize>> = vec![None; subsets.len()];
        let mut orbits: Vec<Vec<Clique>> = Vec::new();
        for i in 0..subsets.len() {
            if orbit_of[i].is_some() {
                continue;
            }
            let id = orbits.len();
            orbits.push(vec![subsets[i].0]);
            orbit_of[i] = Some(id);
            for j in i + 1..subsets.len() {
                if orbit_of[j].is_some() || subsets[j].1.len() != subsets[i].1.len() {
                    continue;
                }
                let hit = subsets[j].1.iter().any(|h| {
                    let mut moved: Vec<NormalForm> =
                        subsets[i].1.iter().map(|x| g.mul(h, x)).collect();
                    moved.sort();
                    moved == subsets[j].1
                });
                if hit {
                    orbit_of[j] = Some(id);
                    orbits[id].push(subsets[j].0);
                }
            }
        }
        orbits
    }

    /// Base generators of a clique (signs forgotten).
    pub fn clique_support(&self, c: Clique) -> BTreeSet<usize> {
        c.iter().map(|i| self.hat().vertex(i).gen).collect()
    }

    /// Letters s^±1 for infinite s and s^k for finite s: the length-one elements.
    pub fn unit_generators(&self) -> Vec<NormalForm> {
        let g = self.group();
        (0..self.graph().len())
            .flat_map(|s| match self.graph().order(s) {
                Order::Finite(c) => (1..c as i64).map(|k| g.generator(s, k)).collect::<Vec<_>>(),
                Order::Infinite => vec![g.generator(s, 1), g.generator(s, -1)],
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitCensus {
    /// Hat-vertex names of the K-vertices in this orbit.
    pub k_vertices: Vec<Vec<String>>,
    pub ball_vertices: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FundamentalDomainReport {
    /// Every ball vertex is rep·⟨⟨C⟩⟩ for a K-vertex ⟨⟨C⟩⟩.
    pub translates_ok: bool,
    /// K-vertices share an orbit iff their cliques have the same support.
    pub orbits_match_support: bool,
    pub orbits: Vec<OrbitCensus>,
}

impl FundamentalDomainReport {
    pub fn ok(&self) -> bool {
        self.translates_ok && self.orbits_match_support
    }
}

impl CubeBall {
    pub fn fundamental_domain_check(&self) -> FundamentalDomainReport {
        let cx = &self.complex;
        let g = cx.group();
        let mut translates_ok = true;
        for v in &self.vertices {
            let rep_inv = g.inv(&v.rep);
            let mut moved: Vec<NormalForm> = v.elements.iter().map(|x| g.mul(&rep_inv, x)).collect();
            moved.sort();
            let k = cx.std_subset(v.clique).expect("vertex cliques are cliques");
            translates_ok &= moved == k.elements;
        }

        let orbits = cx.k_orbits();
        let mut orbits_match_support = true;
        for (i, a) in orbits.iter().enumerate() {
            let support = cx.clique_support(a[0]);
            orbits_match_support &= a.iter().all(|&c| cx.clique_support(c) == support);
            for b in &orbits[i + 1..] {
                orbits_match_support &= cx.clique_support(b[0]) != support;
            }
        }

        let orbit_index: BTreeMap<Clique, usize> = orbits
            .iter()
            .enumerate()
            .flat_map(|(i, o)| o.iter().map(move |&c| (c, i)))
            .collect();
        let mut counts = vec![0usize; orbits.len()];
        for v in &self.vertices {
            counts[orbit_index[&v.clique]] += 1;
        }
        FundamentalDomainReport {
            translates_ok,
            orbits_match_support,
            orbits: orbits
                .iter()
                .zip(counts)
                .map(|(o, n)| OrbitCensus {
                    k_vertices: o.iter().map(|&c| cx.clique_names(c)).collect(),
                    ball_vertices: n,
                })
                .collect(),
        }
    }

    /// For each length-one generator h and all pairs v, w with h·v, h·w in
    /// the ball, v ≤ w iff h·v ≤ h·w. Returns the number of violations.
    pub fn equivariance_violations(&self) -> usize {
        let cx = &self.complex;
        let mut bad = 0;
        for h in cx.unit_generators() {
            let image: Vec<Option<usize>> = self
                .vertices
                .iter()
                .map(|v| self.find(&cx.translate(&h, v)))
                .collect();
            for (v, iv) in image.iter().enumerate() {
                let Some(hv) = *iv else { continue };
                for (w, iw) in image.iter().enumerate() {
                    let Some(hw) = *iw else { continue };
                    if self.leq(v, w) != self.leq(hv, hw) {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }

    /// Coface counts at interior vertices, grouped by clique. Local
    /// finiteness and G-invariance hold iff each group has one count.
    pub fn coface_counts_by_clique(&self) -> BTreeMap<Clique, BTreeSet<usize>> {
        let mut out: BTreeMap<Clique, BTreeSet<usize>> = BTreeMap::new();
        for v in self.interior_vertices() {
            out.entry(self.vertices[v].clique)
                .or_default()
                .insert(self.coface_count(v));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn complex(spec: &str) -> CosetComplex {
        CosetComplex::new(parse_graph(spec).unwrap()).unwrap()
    }

    #[test]
    fn stabilizer_examples() {
        let cx = complex("s:inf; u:3");
        let g = cx.group();
        let single = cx.coset_vertex(&g.generator(0, 1), Clique::EMPTY).unwrap();
        assert_eq!(cx.stabilizer(&single), vec![g.identity()]);
        let u = cx.hat().index_of(crate::complex::HatVertex::positive(1)).unwrap();
        let sub = cx.coset_vertex(&g.identity(), Clique::EMPTY.with(u)).unwrap();
        assert_eq!(cx.stabilizer(&sub).len(), 3);
        let edge = cx.coset_vertex(&g.identity(), Clique(1)).unwrap();
        assert_eq!(cx.stabilizer(&edge), vec![g.identity()]);
    }

    #[test]
    fn fundamental_domain_real_line() {
        let b = complex("s:inf").build_ball(2, 1000).unwrap();
        let r = b.fundamental_domain_check();
        assert!(r.ok());
        assert_eq!(r.orbits.len(), 2);
        assert_eq!(r.orbits[0].ball_vertices, 5);
        assert_eq!(r.orbits[1].ball_vertices, 4);
    }

    #[test]
    fn fundamental_domain_involution_and_f2() {
        let b = complex("s:2").build_ball(2, 1000).unwrap();
        let r = b.fundamental_domain_check();
        assert!(r.ok());
        assert_eq!(r.orbits.len(), 2);
        let f2 = complex("s:inf; t:inf").build_ball(1, 1000).unwrap();
        let r = f2.fundamental_domain_check();
        assert!(r.ok());
        // {1}, {1,s^±}, {1,t^±}
        assert_eq!(r.orbits.len(), 3);
    }

    #[test]
    fn action_preserves_order() {
        let b = complex("s:inf; t:inf; edge s t").build_ball(2, 1000).unwrap();
        assert_eq!(b.equivariance_violations(), 0);
        for counts in b.coface_counts_by_clique().values() {
            assert_eq!(counts.len(), 1);
        }
    }
}
