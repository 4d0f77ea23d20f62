use std::collections::{HashMap, HashSet};

use super::{Clique, CosetComplex, StdCosetVertex};
use crate::error::{Error, Result};
use crate::word::NormalForm;

/// An interval [bottom, top] of the coset poset, by vertex index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    pub bottom: usize,
    pub top: usize,
    pub dim: usize,
}

/// A finite, downward-closed piece of X together with all of its cubes.
#[derive(Debug, Clone)]
pub struct CubeBall {
    pub(crate) complex: CosetComplex,
    pub(crate) radius: Option<u64>,
    pub(crate) vertices: Vec<StdCosetVertex>,
    pub(crate) index: HashMap<(Clique, NormalForm), usize>,
    /// Sorted; includes the vertex itself.
    pub(crate) below: Vec<Vec<usize>>,
    /// Sorted; includes the vertex itself.
    pub(crate) above: Vec<Vec<usize>>,
    pub(crate) interior: Vec<bool>,
    pub(crate) cubes: Vec<Cube>,
}

impl CosetComplex {
    /// All vertices whose cosets have max length at most `radius`.
    /// `max_size` caps both the element and the vertex count.
    pub fn build_ball(&self, radius: u64, max_size: usize) -> Result<CubeBall> {
        let region = self.group().enumerate_ball(radius, max_size)?;
        let mut ball = self.build_region(&region, max_size)?;
        ball.radius = Some(radius);
        Ok(ball)
    }

    /// All vertices whose element sets lie inside `region`.
    pub fn build_region(&self, region: &[NormalForm], max_vertices: usize) -> Result<CubeBall> {
        let members: HashSet<&NormalForm> = region.iter().collect();
        let mut vertices = Vec::new();
        for g in region {
            for &c in self.cliques() {
                let v = self.coset_unchecked(g, c);
                if v.rep != *g || !v.elements.iter().all(|x| members.contains(x)) {
                    continue;
                }
                vertices.push(v);
                if vertices.len() > max_vertices {
                    return Err(Error::BudgetExceeded {
                        what: "ball vertices",
                        limit: max_vertices,
                    });
                }
            }
        }
        vertices.sort_by(|a, b| {
            a.max_length()
                .cmp(&b.max_length())
                .then(a.clique.len().cmp(&b.clique.len()))
                .then_with(|| a.rep.shortlex_cmp(&b.rep))
                .then(a.clique.cmp(&b.clique))
        });
        let index: HashMap<(Clique, NormalForm), usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.key(), i))
            .collect();

        let mut below = Vec::with_capacity(vertices.len());
        for v in &vertices {
            let mut ids = Vec::new();
            for h in &v.elements {
                let rel = self.relative_clique(v, h)?;
                for d in rel.subsets() {
                    let sub = self.coset_unchecked(h, d);
                    let id = index.get(&sub.key()).copied().ok_or_else(|| {
                        Error::InvariantViolation(format!(
                            "face {} of {} missing from ball",
                            self.vertex_label(&sub),
                            self.vertex_label(v)
                        ))
                    })?;
                    ids.push(id);
                }
            }
            ids.sort_unstable();
            ids.dedup();
            below.push(ids);
        }
        let mut above = vec![Vec::new(); vertices.len()];
        for (b, subs) in below.iter().enumerate() {
            for &a in subs {
                above[a].push(b);
            }
        }
        for list in &mut above {
            list.sort_unstable();
        }

        let interior = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let expected = self.cliques().iter().filter(|d| v.clique.is_subset(**d)).count();
                above[i].len() == expected
            })
            .collect();

        let mut cubes = Vec::new();
        for (top, subs) in below.iter().enumerate() {
            for &bottom in subs {
                cubes.push(Cube {
                    bottom,
                    top,
                    dim: vertices[top].clique.len() - vertices[bottom].clique.len(),
                });
            }
        }
        cubes.sort_by_key(|c| (c.dim, c.top, c.bottom));

        Ok(CubeBall {
            complex: self.clone(),
            radius: None,
            vertices,
            index,
            below,
            above,
            interior,
            cubes,
        })
    }
}

impl CubeBall {
    pub fn complex(&self) -> &CosetComplex {
        &self.complex
    }

    pub fn radius(&self) -> Option<u64> {
        self.radius
    }

    pub fn vertices(&self) -> &[StdCosetVertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &StdCosetVertex {
        &self.vertices[i]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn cubes_of_dim(&self, dim: usize) -> impl Iterator<Item = &Cube> {
        self.cubes.iter().filter(move |c| c.dim == dim)
    }

    pub fn find(&self, v: &StdCosetVertex) -> Option<usize> {
        self.index.get(&v.key()).copied()
    }

    /// Index of g⟨⟨C⟩⟩ if it lies in the ball.
    pub fn find_coset(&self, g: &NormalForm, c: Clique) -> Option<usize> {
        self.find(&self.complex.coset_unchecked(g, c))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].binary_search(&a).is_ok()
    }

    /// Vertices contained in `v` (including `v`).
    pub fn below(&self, v: usize) -> &[usize] {
        &self.below[v]
    }

    /// Vertices containing `v` (including `v`).
    pub fn above(&self, v: usize) -> &[usize] {
        &self.above[v]
    }

    /// True iff every coface of `v` in X lies in the ball.
    pub fn is_interior(&self, v: usize) -> bool {
        self.interior[v]
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&v| self.interior[v])
    }

    pub fn cube_vertices(&self, c: &Cube) -> Vec<usize> {
        self.below[c.top]
            .iter()
            .copied()
            .filter(|&x| self.leq(c.bottom, x))
            .collect()
    }

    /// Down- and up-neighbours of `v` along edges.
    pub fn down_neighbors(&self, v: usize) -> Vec<usize> {
        let k = self.vertices[v].clique.len();
        self.below[v]
            .iter()
            .copied()
            .filter(|&x| self.vertices[x].clique.len() + 1 == k)
            .collect()
    }

    pub fn up_neighbors(&self, v: usize) -> Vec<usize> {
        let k = self.vertices[v].clique.len();
        self.above[v]
            .iter()
            .copied()
            .filter(|&x| self.vertices[x].clique.len() == k + 1)
            .collect()
    }

    /// Number of cubes containing `v`.
    pub fn coface_count(&self, v: usize) -> usize {
        self.below[v].len() * self.above[v].len()
    }

    /// Σ (−1)^dim over all cubes.
    pub fn euler_characteristic(&self) -> i64 {
        self.cubes
            .iter()
            .map(|c| if c.dim % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    pub fn dimension(&self) -> usize {
        self.cubes.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    pub fn label(&self, v: usize) -> String {
        self.complex.vertex_label(&self.vertices[v])
    }
}
