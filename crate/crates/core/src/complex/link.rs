use std::collections::{BTreeSet, HashMap};

use super::{Clique, CubeBall};
use crate::error::{Error, Result};

/// A finite abstract simplicial complex on vertices `0..n`. Faces are
/// sorted vertex lists; the empty face is always present.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    n: usize,
    faces: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    /// Downward closure of the given faces.
    pub fn new<I, F>(n: usize, faces: I) -> Self
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[usize]>,
    {
        let mut out = SimplicialComplex {
            n,
            faces: BTreeSet::from([Vec::new()]),
        };
        for f in faces {
            out.insert_closed(f.as_ref());
        }
        out
    }

    fn insert_closed(&mut self, face: &[usize]) {
        let mut f = face.to_vec();
        f.sort_unstable();
        f.dedup();
        assert!(f.iter().all(|&v| v < self.n), "face vertex out of range");
        if self.faces.contains(&f) {
            return;
        }
        let k = f.len();
        for mask in 0u64..(1u64 << k) {
            let sub: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect();
            self.faces.insert(sub);
        }
    }

    /// The full simplex on `n` vertices.
    pub fn simplex(n: usize) -> Self {
        Self::new(n, [(0..n).collect::<Vec<_>>()])
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn faces(&self) -> &BTreeSet<Vec<usize>> {
        &self.faces
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        self.faces.contains(face)
    }

    pub fn dimension(&self) -> isize {
        self.faces.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    /// Reduced-free Euler characteristic: Σ (−1)^dim over nonempty faces.
    pub fn euler(&self) -> i64 {
        self.faces
            .iter()
            .filter(|f| !f.is_empty())
            .map(|f| if f.len() % 2 == 1 { 1 } else { -1 })
            .sum()
    }

    /// Vertices that actually occur in a face.
    pub fn used_vertices(&self) -> Vec<usize> {
        self.faces
            .iter()
            .filter(|f| f.len() == 1)
            .map(|f| f[0])
            .collect()
    }

    /// True iff the faces are exactly all subsets of the used vertices.
    pub fn is_full_simplex(&self) -> bool {
        let k = self.used_vertices().len();
        k < 63 && self.faces.len() == 1usize << k
    }

    /// Maps vertices through `f` and returns the image face set.
    pub fn image(&self, f: impl Fn(usize) -> usize) -> BTreeSet<Vec<usize>> {
        self.faces
            .iter()
            .map(|face| {
                let mut g: Vec<usize> = face.iter().map(|&v| f(v)).collect();
                g.sort_unstable();
                g
            })
            .collect()
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n]; self.n];
        for f in self.faces.iter().filter(|f| f.len() == 2) {
            adj[f[0]][f[1]] = true;
            adj[f[1]][f[0]] = true;
        }
        adj
    }
}

/// True iff every set of pairwise adjacent vertices spans a face.
pub fn is_flag(k: &SimplicialComplex) -> bool {
    let adj = k.adjacency();
    let verts = k.used_vertices();
    // Depth-first over cliques of the 1-skeleton; each must be a face.
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while let Some((clique, start)) = stack.pop() {
        if !k.contains(&clique) {
            return false;
        }
        for (pos, &v) in verts.iter().enumerate().skip(start) {
            if clique.iter().all(|&u| adj[u][v]) {
                let mut next = clique.clone();
                next.push(v);
                stack.push((next, pos + 1));
            }
        }
    }
    true
}

/// The link of a vertex of a cube complex: one link vertex per edge at the
/// centre, one simplex per cube containing it.
#[derive(Debug, Clone)]
pub struct VertexLink {
    pub center: usize,
    /// Ball vertex at the far end of each link vertex's edge.
    pub neighbors: Vec<usize>,
    /// Whether each link vertex lies in the up-link.
    pub is_up: Vec<bool>,
    pub complex: SimplicialComplex,
    pub up_link: SimplicialComplex,
    pub down_link: SimplicialComplex,
}

/// Structural verdicts for a vertex link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub struct LinkChecks {
    pub flag: bool,
    pub join: bool,
    pub up_matches_clique_link: bool,
    pub down_matches_join_of_sets: bool,
}

impl LinkChecks {
    pub fn all(&self) -> bool {
        self.flag && self.join && self.up_matches_clique_link && self.down_matches_join_of_sets
    }
}

impl CubeBall {
    /// Link of an interior vertex, split into up- and down-link.
    pub fn vertex_link(&self, v: usize) -> Result<VertexLink> {
        if !self.is_interior(v) {
            return Err(Error::NotInterior(v));
        }
        let down = self.down_neighbors(v);
        let up = self.up_neighbors(v);
        let neighbors: Vec<usize> = down.iter().chain(up.iter()).copied().collect();
        let is_up: Vec<bool> = (0..neighbors.len()).map(|i| i >= down.len()).collect();
        let local: HashMap<usize, usize> =
            neighbors.iter().enumerate().map(|(i, &x)| (x, i)).collect();

        let down_face = |a: usize| -> Vec<usize> {
            down.iter().filter(|&&x| self.leq(a, x)).map(|x| local[x]).collect()
        };
        let up_face = |b: usize| -> Vec<usize> {
            up.iter().filter(|&&x| self.leq(x, b)).map(|x| local[x]).collect()
        };

        let below = self.below(v);
        let above = self.above(v);
        let mut faces = Vec::with_capacity(below.len() * above.len());
        for &a in below {
            let df = down_face(a);
            for &b in above {
                let mut f = df.clone();
                f.extend(up_face(b));
                faces.push(f);
            }
        }
        let n = neighbors.len();
        Ok(VertexLink {
            center: v,
            neighbors,
            is_up,
            complex: SimplicialComplex::new(n, &faces),
            up_link: SimplicialComplex::new(n, above.iter().map(|&b| up_face(b))),
            down_link: SimplicialComplex::new(n, below.iter().map(|&a| down_face(a))),
        })
    }

    /// Checks flagness, the join decomposition, and both explicit
    /// isomorphisms (up-link with the link of C in the flag complex of Δ,
    /// down-link with the join of the discrete sets ⟨⟨s⟩⟩, s ∈ C).
    pub fn check_link(&self, v: usize) -> Result<LinkChecks> {
        let link = self.vertex_link(v)?;
        let flag = is_flag(&link.complex);

        let mut joined = BTreeSet::new();
        for u in link.up_link.faces() {
            if u.iter().any(|&x| !link.is_up[x]) {
                continue;
            }
            for d in link.down_link.faces() {
                if d.iter().any(|&x| link.is_up[x]) {
                    continue;
                }
                let mut f: Vec<usize> = d.iter().chain(u.iter()).copied().collect();
                f.sort_unstable();
                joined.insert(f);
            }
        }
        let join = &joined == link.complex.faces();

        Ok(LinkChecks {
            flag,
            join,
            up_matches_clique_link: self.up_link_matches(v, &link)?,
            down_matches_join_of_sets: self.down_link_matches(v, &link)?,
        })
    }

    fn up_link_matches(&self, v: usize, link: &VertexLink) -> Result<bool> {
        let cx = &self.complex;
        let vert = self.vertex(v);
        let c = vert.clique;
        // Link vertex -> hat vertex it adds to C.
        let mut hat_of = vec![usize::MAX; link.neighbors.len()];
        for (i, &x) in link.neighbors.iter().enumerate() {
            if link.is_up[i] {
                let d = cx.relative_clique(self.vertex(x), &vert.rep)?;
                if !c.is_subset(d) || d.len() != c.len() + 1 {
                    return Ok(false);
                }
                hat_of[i] = d.iter().find(|&h| !c.contains(h)).expect("one new hat vertex");
            }
        }
        let image: BTreeSet<Vec<usize>> = link
            .up_link
            .faces()
            .iter()
            .map(|f| {
                let mut g: Vec<usize> = f.iter().map(|&i| hat_of[i]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        let expected: BTreeSet<Vec<usize>> = cx
            .cliques()
            .iter()
            .filter(|d| c.is_subset(**d))
            .map(|d| Clique(d.0 & !c.0).iter().collect())
            .collect();
        Ok(image == expected && image.len() == link.up_link.faces().len())
    }

    fn down_link_matches(&self, v: usize, link: &VertexLink) -> Result<bool> {
        let cx = &self.complex;
        let vert = self.vertex(v);
        let group = cx.group();
        // (hat vertex, exponent) -> link vertex
        let mut label_of: HashMap<usize, (usize, i64)> = HashMap::new();
        for s in vert.clique.iter() {
            for e in cx.hat_exponents(s) {
                let h = group.mul_letter(&vert.rep, cx.hat().vertex(s).gen, e);
                let Some(x) = self.find_coset(&h, vert.clique.without(s)) else {
                    return Ok(false);
                };
                let Some(i) = link.neighbors.iter().position(|&n| n == x) else {
                    return Ok(false);
                };
                if label_of.insert(i, (s, e)).is_some() {
                    return Ok(false);
                }
            }
        }
        let down_count = link.is_up.iter().filter(|u| !**u).count();
        if label_of.len() != down_count {
            return Ok(false);
        }
        // Faces of the join of discrete sets: partial transversals.
        let mut expected: BTreeSet<Vec<usize>> = BTreeSet::from([Vec::new()]);
        for s in vert.clique.iter() {
            let options: Vec<usize> = label_of
                .iter()
                .filter(|(_, (hs, _))| *hs == s)
                .map(|(&i, _)| i)
                .collect();
            let mut next = expected.clone();
            for f in &expected {
                for &i in &options {
                    let mut g = f.clone();
                    g.push(i);
                    g.sort_unstable();
                    next.insert(g);
                }
            }
            expected = next;
        }
        Ok(&expected == link.down_link.faces())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::CosetComplex;
    use crate::graph::parse_graph;

    #[test]
    fn flag_examples() {
        let square = SimplicialComplex::new(4, [[0, 1], [1, 2], [2, 3], [3, 0]]);
        assert!(is_flag(&square));
        let hollow = SimplicialComplex::new(3, [[0, 1], [1, 2], [0, 2]]);
        assert!(!is_flag(&hollow));
        assert!(is_flag(&SimplicialComplex::simplex(4)));
    }

    #[test]
    fn complex_basics() {
        let s = SimplicialComplex::simplex(3);
        assert_eq!(s.faces().len(), 8);
        assert_eq!(s.euler(), 1);
        assert!(s.is_full_simplex());
        assert_eq!(s.dimension(), 2);
        let two_points = SimplicialComplex::new(2, [[0], [1]]);
        assert_eq!(two_points.euler(), 2);
        assert!(!two_points.is_full_simplex());
    }

    fn ball(spec: &str, r: u64) -> CubeBall {
        CosetComplex::new(parse_graph(spec).unwrap())
            .unwrap()
            .build_ball(r, 100_000)
            .unwrap()
    }

    #[test]
    fn real_line_links() {
        let b = ball("s:inf", 2);
        let g = b.complex().group();
        let origin = b.find_coset(&g.identity(), Clique::EMPTY).unwrap();
        let link = b.vertex_link(origin).unwrap();
        assert_eq!(link.neighbors.len(), 2);
        assert_eq!(link.complex.faces().len(), 3);
        let edge = b.find_coset(&g.identity(), Clique(1)).unwrap();
        let link = b.vertex_link(edge).unwrap();
        assert!(link.is_up.iter().all(|u| !u));
        assert_eq!(link.down_link.used_vertices().len(), 2);
        assert_eq!(link.up_link.faces().len(), 1);
        assert!(b.check_link(edge).unwrap().all());
    }

    #[test]
    fn z2_origin_link_is_four_cycle() {
        let b = ball("s:inf; t:inf; edge s t", 2);
        let origin = b.find_coset(&b.complex().group().identity(), Clique::EMPTY).unwrap();
        let link = b.vertex_link(origin).unwrap();
        assert_eq!(link.neighbors.len(), 4);
        let edges = link.complex.faces().iter().filter(|f| f.len() == 2).count();
        assert_eq!(edges, 4);
        assert_eq!(link.complex.dimension(), 1);
        assert!(b.check_link(origin).unwrap().all());
    }

    #[test]
    fn boundary_vertices_are_rejected() {
        let b = ball("s:inf", 1);
        let s = b.complex().group().generator(0, 1);
        let v = b.find_coset(&s, Clique::EMPTY).unwrap();
        assert!(matches!(b.vertex_link(v), Err(Error::NotInterior(_))));
    }
}
