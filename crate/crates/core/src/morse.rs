//! The Morse function g⟨⟨C⟩⟩ ↦ (max ℓ, −#C) on a ball of X, its descending
//! links, and the contractibility certificates built from them.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::complex::{Clique, CubeBall, SimplicialComplex};
use crate::complex::ball::Cube;
use crate::error::{Error, Result};

/// Morse height, compared lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Height {
    pub primary: u64,
    pub secondary: i64,
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.primary, self.secondary)
    }
}

/// Descending part of a vertex link, split along the up/down join.
#[derive(Debug, Clone)]
pub struct DescendingLink {
    pub neighbors: Vec<usize>,
    pub is_up: Vec<bool>,
    pub complex: SimplicialComplex,
    pub up: SimplicialComplex,
    pub down: SimplicialComplex,
}

impl CubeBall {
    pub fn height(&self, v: usize) -> Height {
        let vert = self.vertex(v);
        Height {
            primary: vert.max_length(),
            secondary: -(vert.clique.len() as i64),
        }
    }

    /// The vertex of the cube where the height is largest. A tie would
    /// contradict the Morse property and is reported as a violation.
    pub fn cube_max_vertex(&self, c: &Cube) -> Result<usize> {
        let verts = self.cube_vertices(c);
        let best = verts
            .iter()
            .map(|&x| self.height(x))
            .max()
            .expect("cubes have vertices");
        let argmax: Vec<usize> = verts.into_iter().filter(|&x| self.height(x) == best).collect();
        match argmax[..] {
            [x] => Ok(x),
            _ => Err(Error::InvariantViolation(format!(
                "cube [{}, {}] has {} vertices of maximal height {best}",
                self.label(c.bottom),
                self.label(c.top),
                argmax.len()
            ))),
        }
    }

    /// For each longest element x of the top coset, the cube vertices
    /// containing x have a unique inclusion-minimal member; the height
    /// maximum is one of these minima. (With a unique longest element this
    /// pins the maximum down exactly; finite factors of order ≥ 3 tie.)
    pub fn cube_max_matches_longest_element(&self, c: &Cube) -> Result<bool> {
        let argmax = self.cube_max_vertex(c)?;
        let verts = self.cube_vertices(c);
        let top = self.vertex(c.top);
        let m = top.max_length();
        let mut minima = Vec::new();
        for x in top.elements.iter().filter(|x| x.length() == m) {
            let holding: Vec<usize> = verts
                .iter()
                .copied()
                .filter(|&y| self.vertex(y).contains(x))
                .collect();
            let minimal: Vec<usize> = holding
                .iter()
                .copied()
                .filter(|&y| holding.iter().all(|&z| self.leq(y, z)))
                .collect();
            match minimal[..] {
                [y] => minima.push(y),
                _ => return Ok(false),
            }
        }
        Ok(minima.contains(&argmax))
    }

    fn is_descending_cube(&self, v: usize, bottom: usize, top: usize) -> Result<bool> {
        let dim = self.vertex(top).clique.len() - self.vertex(bottom).clique.len();
        Ok(self.cube_max_vertex(&Cube { bottom, top, dim })? == v)
    }

    /// Link simplices of cubes on which `v` is the unique maximum.
    pub fn descending_link(&self, v: usize) -> Result<DescendingLink> {
        let link = self.vertex_link(v)?;
        let pos = |x: usize| link.neighbors.iter().position(|&n| n == x).expect("neighbor");
        let down: Vec<usize> = self.down_neighbors(v);
        let up: Vec<usize> = self.up_neighbors(v);
        let mut faces = Vec::new();
        let mut up_faces = Vec::new();
        let mut down_faces = Vec::new();
        for &a in self.below(v) {
            for &b in self.above(v) {
                if !self.is_descending_cube(v, a, b)? {
                    continue;
                }
                let mut f: Vec<usize> = down.iter().filter(|&&x| self.leq(a, x)).map(|&x| pos(x)).collect();
                let uf: Vec<usize> = up.iter().filter(|&&x| self.leq(x, b)).map(|&x| pos(x)).collect();
                if a == v {
                    up_faces.push(uf.clone());
                }
                if b == v {
                    down_faces.push(f.clone());
                }
                f.extend(uf);
                faces.push(f);
            }
        }
        let n = link.neighbors.len();
        Ok(DescendingLink {
            neighbors: link.neighbors,
            is_up: link.is_up,
            complex: SimplicialComplex::new(n, &faces),
            up: SimplicialComplex::new(n, &up_faces),
            down: SimplicialComplex::new(n, &down_faces),
        })
    }

    /// True iff the descending link is the join of its up and down parts.
    pub fn descending_link_is_join(&self, v: usize) -> Result<bool> {
        let d = self.descending_link(v)?;
        let mut joined = BTreeSet::new();
        for u in d.up.faces() {
            for w in d.down.faces() {
                let mut f: Vec<usize> = u.iter().chain(w.iter()).copied().collect();
                f.sort_unstable();
                joined.insert(f);
            }
        }
        Ok(&joined == d.complex.faces())
    }

    /// For v = g⟨⟨C⟩⟩ with C nonempty: each s ∈ C has exactly one
    /// h ∈ ⟨⟨s⟩⟩ with gh⟨⟨C∖{s}⟩⟩ descending, and the descending down-link
    /// is the full simplex on those vertices.
    pub fn check_down_link_simplex(&self, v: usize) -> Result<bool> {
        if !self.is_interior(v) {
            return Err(Error::NotInterior(v));
        }
        let vert = self.vertex(v);
        if vert.clique.is_empty() {
            return Err(Error::InvalidArgument("down-link check needs a nonempty clique".into()));
        }
        let cx = self.complex();
        let group = cx.group();
        for s in vert.clique.iter() {
            let mut hits = 0;
            for e in cx.hat_exponents(s) {
                let h = group.mul_letter(&vert.rep, cx.hat().vertex(s).gen, e);
                let a = self
                    .find_coset(&h, vert.clique.without(s))
                    .ok_or(Error::NotInterior(v))?;
                if self.is_descending_cube(v, a, v)? {
                    hits += 1;
                }
            }
            if hits != 1 {
                return Ok(false);
            }
        }
        let d = self.descending_link(v)?;
        Ok(d.down.is_full_simplex() && d.down.used_vertices().len() == vert.clique.len())
    }

    /// For v = {g}, g ≠ 1: the vertices above v that are descending are
    /// exactly g⟨⟨D⟩⟩ for nonempty D ⊆ desc_letters(g), desc_letters(g) is a
    /// clique of Δ, and the descending up-link is a full simplex.
    pub fn check_up_link_subdivided_simplex(&self, v: usize) -> Result<bool> {
        if !self.is_interior(v) {
            return Err(Error::NotInterior(v));
        }
        let vert = self.vertex(v);
        if !vert.clique.is_empty() {
            return Err(Error::InvalidArgument("up-link check needs a singleton vertex".into()));
        }
        if vert.rep.is_identity() {
            return Err(Error::InvalidArgument("up-link check excludes the identity".into()));
        }
        let cx = self.complex();
        let desc = cx.group().desc_letters(&vert.rep)?;
        let desc = desc.iter().try_fold(Clique::EMPTY, |acc, &h| {
            cx.hat()
                .index_of(h)
                .map(|i| acc.with(i))
                .ok_or_else(|| Error::InvariantViolation("unknown hat vertex".into()))
        })?;
        if !cx.hat().is_clique(desc) {
            return Ok(false);
        }
        let mut descending = BTreeSet::new();
        for &b in self.above(v) {
            if b != v && self.is_descending_cube(v, v, b)? {
                descending.insert(b);
            }
        }
        let mut expected = BTreeSet::new();
        for d in desc.subsets().filter(|d| !d.is_empty()) {
            expected.insert(self.find_coset(&vert.rep, d).ok_or(Error::NotInterior(v))?);
        }
        if descending != expected {
            return Ok(false);
        }
        let d = self.descending_link(v)?;
        Ok(d.up.is_full_simplex() && d.up.used_vertices().len() == desc.len())
    }

    /// Σ (−1)^dim over the cubes all of whose vertices have height ≤ `h`.
    pub fn sublevel_euler(&self, h: Height) -> Result<i64> {
        match self.radius() {
            Some(r) if h.primary <= r => {}
            _ => return Err(Error::SublevelTruncated(h.to_string())),
        }
        let mut chi = 0;
        for c in self.cubes() {
            if self.height(self.cube_max_vertex(c)?) <= h {
                chi += if c.dim % 2 == 0 { 1 } else { -1 };
            }
        }
        Ok(chi)
    }

    /// Euler characteristic of every complete sublevel set, by height.
    pub fn sublevel_eulers(&self) -> Result<Vec<(Height, i64)>> {
        let mut maxima: Vec<(Height, i64)> = Vec::with_capacity(self.cubes().len());
        for c in self.cubes() {
            let h = self.height(self.cube_max_vertex(c)?);
            maxima.push((h, if c.dim % 2 == 0 { 1 } else { -1 }));
        }
        maxima.sort();
        let mut out: Vec<(Height, i64)> = Vec::new();
        let mut chi = 0;
        for (h, sign) in maxima {
            chi += sign;
            match out.last_mut() {
                Some(last) if last.0 == h => last.1 = chi,
                _ => out.push((h, chi)),
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexVerdict {
    pub vertex: usize,
    pub label: String,
    pub height: Height,
    pub check: &'static str,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CubeVerdict {
    pub bottom: usize,
    pub top: usize,
    pub dim: usize,
    pub max_vertex: Option<usize>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SublevelVerdict {
    pub height: Height,
    pub euler: i64,
    pub pass: bool,
}

/// Everything the Morse argument needs, checked on one ball.
#[derive(Debug, Clone, Serialize)]
pub struct MorseReport {
    pub cubes_checked: usize,
    pub unique_max_failures: usize,
    pub longest_element_mismatches: usize,
    pub down_link_checked: usize,
    pub down_link_failures: usize,
    pub up_link_checked: usize,
    pub up_link_failures: usize,
    pub join_failures: usize,
    pub desc_letters_not_clique: usize,
    pub sublevels_checked: usize,
    pub sublevel_failures: usize,
    pub skipped_boundary_vertices: usize,
    pub vertices: Vec<VertexVerdict>,
    pub cubes: Vec<CubeVerdict>,
    pub sublevels: Vec<SublevelVerdict>,
}

impl MorseReport {
    pub fn pass(&self) -> bool {
        self.unique_max_failures == 0
            && self.longest_element_mismatches == 0
            && self.down_link_failures == 0
            && self.up_link_failures == 0
            && self.join_failures == 0
            && self.desc_letters_not_clique == 0
            && self.sublevel_failures == 0
    }
}

pub fn check_morse(ball: &CubeBall) -> Result<MorseReport> {
    let mut report = MorseReport {
        cubes_checked: 0,
        unique_max_failures: 0,
        longest_element_mismatches: 0,
        down_link_checked: 0,
        down_link_failures: 0,
        up_link_checked: 0,
        up_link_failures: 0,
        join_failures: 0,
        desc_letters_not_clique: 0,
        sublevels_checked: 0,
        sublevel_failures: 0,
        skipped_boundary_vertices: 0,
        vertices: Vec::new(),
        cubes: Vec::new(),
        sublevels: Vec::new(),
    };
    let cx = ball.complex();
    for c in ball.cubes() {
        report.cubes_checked += 1;
        let (max_vertex, pass) = match ball.cube_max_vertex(c) {
            Ok(m) => {
                let ok = ball.cube_max_matches_longest_element(c)?;
                if !ok {
                    report.longest_element_mismatches += 1;
                }
                (Some(m), ok)
            }
            Err(Error::InvariantViolation(_)) => {
                report.unique_max_failures += 1;
                (None, false)
            }
            Err(e) => return Err(e),
        };
        report.cubes.push(CubeVerdict {
            bottom: c.bottom,
            top: c.top,
            dim: c.dim,
            max_vertex,
            pass,
        });
    }
    if report.unique_max_failures > 0 {
        return Ok(report);
    }

    for v in 0..ball.len() {
        let vert = ball.vertex(v);
        if vert.clique.is_empty() {
            let desc = cx.group().desc_letters(&vert.rep)?;
            let idx: Option<Clique> = desc
                .iter()
                .try_fold(Clique::EMPTY, |acc, &h| cx.hat().index_of(h).map(|i| acc.with(i)));
            if !idx.is_some_and(|c| cx.hat().is_clique(c)) {
                report.desc_letters_not_clique += 1;
            }
        }
        if !ball.is_interior(v) {
            report.skipped_boundary_vertices += 1;
            continue;
        }
        let record = |check: &'static str, pass: bool, report: &mut MorseReport| {
            report.vertices.push(VertexVerdict {
                vertex: v,
                label: ball.label(v),
                height: ball.height(v),
                check,
                pass,
            });
        };
        let join = ball.descending_link_is_join(v)?;
        if !join {
            report.join_failures += 1;
        }
        record("descending_join", join, &mut report);
        if !vert.clique.is_empty() {
            let ok = ball.check_down_link_simplex(v)?;
            report.down_link_checked += 1;
            if !ok {
                report.down_link_failures += 1;
            }
            record("down_link_simplex", ok, &mut report);
        } else if !vert.rep.is_identity() {
            let ok = ball.check_up_link_subdivided_simplex(v)?;
            report.up_link_checked += 1;
            if !ok {
                report.up_link_failures += 1;
            }
            record("up_link_subdivided_simplex", ok, &mut report);
        } else {
            let empty = ball.descending_link(v)?.complex.faces().len() == 1;
            if !empty {
                report.up_link_failures += 1;
            }
            record("identity_descending_link_empty", empty, &mut report);
        }
    }

    for (height, euler) in ball.sublevel_eulers()? {
        report.sublevels_checked += 1;
        let pass = euler == 1;
        if !pass {
            report.sublevel_failures += 1;
        }
        report.sublevels.push(SublevelVerdict { height, euler, pass });
    }
    Ok(report)
}
