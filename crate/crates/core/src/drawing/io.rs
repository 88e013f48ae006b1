//! JSON drawing files.
//!
//! ```json
//! {
//!   "p": 3, "q": 3, "surface": "S0",
//!   "crossings": [{"e": ["a1", "b1"], "f": ["a2", "b3"]}],
//!   "edge_orders": {"a1-b1": [0], "a2-b3": [0]},
//!   "rotations": {"a1": ["b1", "b2", "b3"], "b1": ["a1", "a2", "a3"], ...},
//!   "crossing_orientations": [0],
//!   "signs": {"a1-b1#0": -1}
//! }
//! ```
//!
//! Edges with no crossings may be left out of `edge_orders`, and segments
//! with sign `+1` out of `signs`. A `q_names` array is written only when
//! the q-side is not named `b1..bq`.

use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::{default_q_names, BipartiteContext, Crossing, Drawing, Edge};
use crate::error::DrawingError;
use crate::surface::Surface;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct DrawingFile {
    p: usize,
    q: usize,
    surface: Surface,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q_names: Option<Vec<String>>,
    #[serde(default)]
    crossings: Vec<CrossingFile>,
    #[serde(default)]
    edge_orders: IndexMap<String, Vec<usize>>,
    rotations: IndexMap<String, Vec<String>>,
    #[serde(default)]
    crossing_orientations: Vec<u8>,
    #[serde(default)]
    signs: IndexMap<String, i8>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CrossingFile {
    e: [String; 2],
    f: [String; 2],
}

enum Vertex {
    P(usize),
    Q(usize),
}

fn format_err(msg: impl Into<String>) -> DrawingError {
    DrawingError::Format(msg.into())
}

fn resolve(ctx: &BipartiteContext, name: &str) -> Result<Vertex, DrawingError> {
    if let Some(a) = ctx.p_index(name) {
        return Ok(Vertex::P(a));
    }
    ctx.q_names
        .iter()
        .position(|n| n == name)
        .map(Vertex::Q)
        .ok_or_else(|| DrawingError::UnknownVertex(name.to_string()))
}

fn edge_of(ctx: &BipartiteContext, x: &str, y: &str) -> Result<Edge, DrawingError> {
    match (resolve(ctx, x)?, resolve(ctx, y)?) {
        (Vertex::P(a), Vertex::Q(b)) | (Vertex::Q(b), Vertex::P(a)) => Ok(Edge::new(a, b)),
        _ => Err(format_err(format!("{x}-{y} is not an edge of K_{{p,q}}"))),
    }
}

fn parse_edge_name(ctx: &BipartiteContext, name: &str) -> Result<Edge, DrawingError> {
    let (x, y) = name
        .split_once('-')
        .ok_or_else(|| format_err(format!("bad edge name {name:?}")))?;
    edge_of(ctx, x, y)
}

impl DrawingFile {
    pub(crate) fn from_drawing(d: &Drawing) -> Self {
        let ctx = &d.context;
        let q_names = (ctx.q_names != default_q_names(ctx.q())).then(|| ctx.q_names.clone());
        let endpoints = |e: Edge| [ctx.p_name(e.a), ctx.q_name(e.b).to_string()];
        let crossings = d
            .crossings
            .iter()
            .map(|x| CrossingFile {
                e: endpoints(x.e),
                f: endpoints(x.f),
            })
            .collect();
        let mut edge_orders = IndexMap::new();
        let mut signs = IndexMap::new();
        for e in ctx.edges() {
            let i = ctx.edge_index(e);
            if !d.edge_orders[i].is_empty() {
                edge_orders.insert(ctx.edge_name(e), d.edge_orders[i].clone());
            }
            for (t, &s) in d.signs[i].iter().enumerate() {
                if s != 1 {
                    signs.insert(format!("{}#{t}", ctx.edge_name(e)), s);
                }
            }
        }
        let mut rotations = IndexMap::new();
        for (a, rot) in d.p_rotations.iter().enumerate() {
            rotations.insert(
                ctx.p_name(a),
                rot.iter().map(|&b| ctx.q_name(b).to_string()).collect(),
            );
        }
        for (b, rot) in d.q_rotations.iter().enumerate() {
            rotations.insert(
                ctx.q_name(b).to_string(),
                rot.iter().map(|&a| ctx.p_name(a)).collect(),
            );
        }
        DrawingFile {
            p: ctx.p,
            q: ctx.q(),
            surface: d.surface,
            q_names,
            crossings,
            edge_orders,
            rotations,
            crossing_orientations: d.orientations.clone(),
            signs,
        }
    }

    pub(crate) fn into_drawing(self) -> Result<Drawing, DrawingError> {
        let q_names = match self.q_names {
            Some(names) if names.len() != self.q => {
                return Err(format_err(format!(
                    "q_names has {} entries, q is {}",
                    names.len(),
                    self.q
                )))
            }
            Some(names) => names,
            None => default_q_names(self.q),
        };
        let ctx = BipartiteContext { p: self.p, q_names };
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                Ok(Crossing::new(
                    edge_of(&ctx, &x.e[0], &x.e[1])?,
                    edge_of(&ctx, &x.f[0], &x.f[1])?,
                ))
            })
            .collect::<Result<Vec<_>, DrawingError>>()?;

        let mut edge_orders = vec![Vec::new(); ctx.edge_count()];
        for (name, order) in self.edge_orders {
            let e = parse_edge_name(&ctx, &name)?;
            edge_orders[ctx.edge_index(e)] = order;
        }
        let mut signs: Vec<Vec<i8>> = edge_orders.iter().map(|o| vec![1; o.len() + 1]).collect();
        for (id, sign) in self.signs {
            let (edge, seg) = id
                .split_once('#')
                .ok_or_else(|| format_err(format!("bad segment id {id:?}")))?;
            let e = parse_edge_name(&ctx, edge)?;
            let t: usize = seg
                .parse()
                .map_err(|_| format_err(format!("bad segment id {id:?}")))?;
            let slot = signs[ctx.edge_index(e)]
                .get_mut(t)
                .ok_or_else(|| format_err(format!("segment {id} does not exist")))?;
            *slot = sign;
        }

        let mut p_rotations = vec![Vec::new(); ctx.p];
        let mut q_rotations = vec![Vec::new(); ctx.q()];
        for (vertex, neighbours) in self.rotations {
            match resolve(&ctx, &vertex)? {
                Vertex::P(a) => {
                    for n in &neighbours {
                        match resolve(&ctx, n)? {
                            Vertex::Q(b) => p_rotations[a].push(b),
                            Vertex::P(_) => return Err(format_err(format!("{vertex} lists {n}"))),
                        }
                    }
                }
                Vertex::Q(b) => {
                    for n in &neighbours {
                        match resolve(&ctx, n)? {
                            Vertex::P(a) => q_rotations[b].push(a),
                            Vertex::Q(_) => return Err(format_err(format!("{vertex} lists {n}"))),
                        }
                    }
                }
            }
        }
        Ok(Drawing {
            context: ctx,
            surface: self.surface,
            crossings,
            edge_orders,
            p_rotations,
            q_rotations,
            orientations: self.crossing_orientations,
            signs,
        })
    }
}

impl Drawing {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&DrawingFile::from_drawing(self))
            .expect("drawing files always serialize");
        s.push('\n');
        s
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(DrawingFile::from_drawing(self))
            .expect("drawing files always serialize")
    }

    /// Parses a drawing file. Structural consistency is not checked here;
    /// use [`Drawing::validate_good`].
    pub fn from_json(text: &str) -> Result<Drawing, DrawingError> {
        let file: DrawingFile = serde_json::from_str(text)?;
        file.into_drawing()
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<Drawing, DrawingError> {
        let file: DrawingFile = serde_json::from_value(value)?;
        file.into_drawing()
    }
}

pub fn read_drawing(path: impl AsRef<Path>) -> Result<Drawing, DrawingError> {
    Drawing::from_json(&std::fs::read_to_string(path)?)
}

pub fn write_drawing(path: impl AsRef<Path>, d: &Drawing) -> Result<(), DrawingError> {
    std::fs::write(path, d.to_json())?;
    Ok(())
}
