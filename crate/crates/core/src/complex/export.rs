use std::fmt::Write as _;

use serde::Serialize;

use super::CubeBall;

#[derive(Debug, Serialize)]
pub struct VertexRecord {
    pub id: usize,
    pub rep: String,
    pub clique: Vec<String>,
    pub elements: Vec<String>,
    pub max_length: u64,
    pub interior: bool,
}

#[derive(Debug, Serialize)]
pub struct CubeRecord {
    pub bottom: usize,
    pub top: usize,
    pub dim: usize,
}

#[derive(Debug, Serialize)]
pub struct BallRecord {
    pub radius: Option<u64>,
    pub dimension: usize,
    pub euler_characteristic: i64,
    pub vertices: Vec<VertexRecord>,
    pub cubes: Vec<CubeRecord>,
}

impl CubeBall {
    pub fn to_record(&self) -> BallRecord {
        let cx = &self.complex;
        let g = cx.group();
        BallRecord {
            radius: self.radius,
            dimension: self.dimension(),
            euler_characteristic: self.euler_characteristic(),
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(id, v)| VertexRecord {
                    id,
                    rep: g.format(&v.rep),
                    clique: cx.clique_names(v.clique),
                    elements: v.elements.iter().map(|x| g.format(x)).collect(),
                    max_length: v.max_length(),
                    interior: self.interior[id],
                })
                .collect(),
            cubes: self
                .cubes
                .iter()
                .filter(|c| c.dim > 0)
                .map(|c| CubeRecord {
                    bottom: c.bottom,
                    top: c.top,
                    dim: c.dim,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("ball records serialize")
    }

    /// 1-skeleton in Graphviz format, edges directed bottom → top.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph X {\n");
        for v in 0..self.len() {
            let _ = writeln!(out, "  v{v} [label=\"{}\"];", self.label(v).replace('"', "\\\""));
        }
        for c in self.cubes_of_dim(1) {
            let _ = writeln!(out, "  v{} -> v{};", c.bottom, c.top);
        }
        out.push_str("}\n");
        out
    }
}
