//! Combinatorial good drawings of `K_{p,q}`.
//!
//! A drawing is stored as the data that determines it up to homeomorphism:
//! which pairs of edges cross, the order of the crossings along each edge,
//! and an embedding scheme of the flattening (the plane graph obtained by
//! turning every crossing into a degree-4 vertex).
//!
//! Conventions used throughout:
//! * p-side vertices are `a1..ap` (indices `0..p`), q-side vertices are
//!   named by `context.q_names` (indices `0..q`);
//! * the crossings on an edge are listed from its p-side end;
//! * segment `t` of an edge crossed `k` times runs from the `t`-th node of
//!   `a, x_0, …, x_{k−1}, b` to the next, and carries a sign;
//! * a crossing `(e, f)` with orientation `0` has rotation
//!   `(e→a, f→a, e→b, f→b)` at its flattening vertex, orientation `1` has
//!   `(e→a, f→b, e→b, f→a)`. Both alternate between `e` and `f`.

mod io;

use std::collections::HashMap;
use std::fmt;

use crate::embedding::{FaceTrace, RotationSystem};
use crate::error::DrawingError;
use crate::surface::{attachable, Surface};

pub use io::{read_drawing, write_drawing};

/// An edge `a_i b_j` of `K_{p,q}` by side indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        Edge { a, b }
    }

    /// No shared endpoint.
    pub fn independent(self, other: Edge) -> bool {
        self.a != other.a && self.b != other.b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub e: Edge,
    pub f: Edge,
}

impl Crossing {
    pub fn new(e: Edge, f: Edge) -> Self {
        Crossing { e, f }
    }

    pub fn involves(&self, edge: Edge) -> bool {
        self.e == edge || self.f == edge
    }

    pub fn other(&self, edge: Edge) -> Edge {
        if self.e == edge {
            self.f
        } else {
            self.e
        }
    }

    /// The unordered pair, smaller edge first.
    pub fn pair(&self) -> (Edge, Edge) {
        if self.e <= self.f {
            (self.e, self.f)
        } else {
            (self.f, self.e)
        }
    }
}

/// Vertex sets of `K_{p,q}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteContext {
    pub p: usize,
    pub q_names: Vec<String>,
}

impl BipartiteContext {
    pub fn new(p: usize, q: usize) -> Self {
        BipartiteContext {
            p,
            q_names: default_q_names(q),
        }
    }

    pub fn q(&self) -> usize {
        self.q_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.p * self.q()
    }

    pub fn edge_index(&self, e: Edge) -> usize {
        e.a * self.q() + e.b
    }

    pub fn edge_at(&self, index: usize) -> Edge {
        Edge::new(index / self.q(), index % self.q())
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let q = self.q();
        (0..self.p).flat_map(move |a| (0..q).map(move |b| Edge::new(a, b)))
    }

    pub fn p_name(&self, a: usize) -> String {
        format!("a{}", a + 1)
    }

    pub fn q_name(&self, b: usize) -> &str {
        &self.q_names[b]
    }

    pub fn edge_name(&self, e: Edge) -> String {
        format!("{}-{}", self.p_name(e.a), self.q_name(e.b))
    }

    pub fn q_index(&self, name: &str) -> Result<usize, DrawingError> {
        if let Some(j) = self.q_names.iter().position(|n| n == name) {
            return Ok(j);
        }
        if self.p_index(name).is_some() {
            return Err(DrawingError::NotQSide(name.to_string()));
        }
        Err(DrawingError::UnknownVertex(name.to_string()))
    }

    pub fn p_index(&self, name: &str) -> Option<usize> {
        let digits = name.strip_prefix('a')?;
        if digits.starts_with('0') {
            return None;
        }
        let i: usize = digits.parse().ok()?;
        (1..=self.p).contains(&i).then(|| i - 1)
    }

    /// A fresh q-side name `b<n>` with the smallest unused `n`.
    pub fn fresh_q_name(&self) -> String {
        (1..)
            .map(|n| format!("b{n}"))
            .find(|name| !self.q_names.contains(name))
            .unwrap()
    }
}

pub fn default_q_names(q: usize) -> Vec<String> {
    (1..=q).map(|j| format!("b{j}")).collect()
}

/// A vertex of the flattening.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    P(usize),
    Q(usize),
    Cross(usize),
}

/// A goodness or consistency problem found by [`Drawing::validate_good`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Shape(String),
    EdgeOutOfRange {
        crossing: usize,
    },
    AdjacentEdgesCross {
        crossing: usize,
    },
    PairCrossesTwice {
        first: usize,
        second: usize,
    },
    CrossingNotOnEdge {
        crossing: usize,
        edge: String,
        count: usize,
    },
    StrayOrderEntry {
        edge: String,
        entry: usize,
    },
    BadRotation {
        vertex: String,
    },
    BadOrientation {
        crossing: usize,
    },
    BadSigns {
        edge: String,
    },
    BadName {
        name: String,
    },
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::Shape(_) => "malformed",
            Violation::EdgeOutOfRange { .. } => "edge-out-of-range",
            Violation::AdjacentEdgesCross { .. } => "adjacent-edges-cross",
            Violation::PairCrossesTwice { .. } => "pair-crosses-twice",
            Violation::CrossingNotOnEdge { .. } => "order-mismatch",
            Violation::StrayOrderEntry { .. } => "stray-order-entry",
            Violation::BadRotation { .. } => "bad-rotation",
            Violation::BadOrientation { .. } => "bad-orientation",
            Violation::BadSigns { .. } => "bad-signs",
            Violation::BadName { .. } => "bad-name",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.kind())?;
        match self {
            Violation::Shape(msg) => write!(f, "{msg}"),
            Violation::EdgeOutOfRange { crossing } => {
                write!(f, "crossing {crossing} names an edge outside K_{{p,q}}")
            }
            Violation::AdjacentEdgesCross { crossing } => {
                write!(f, "crossing {crossing} joins two edges with a common end")
            }
            Violation::PairCrossesTwice { first, second } => {
                write!(f, "crossings {first} and {second} are the same edge pair")
            }
            Violation::CrossingNotOnEdge {
                crossing,
                edge,
                count,
            } => {
                write!(
                    f,
                    "crossing {crossing} appears {count} times in the order of {edge}"
                )
            }
            Violation::StrayOrderEntry { edge, entry } => {
                write!(
                    f,
                    "order of {edge} lists {entry}, which is not a crossing of that edge"
                )
            }
            Violation::BadRotation { vertex } => {
                write!(
                    f,
                    "rotation at {vertex} is not a cyclic order of its neighbours"
                )
            }
            Violation::BadOrientation { crossing } => {
                write!(f, "crossing {crossing} has no orientation class 0 or 1")
            }
            Violation::BadSigns { edge } => {
                write!(
                    f,
                    "segment signs of {edge} do not match its crossings or are not ±1"
                )
            }
            Violation::BadName { name } => write!(f, "vertex name {name:?} is unusable"),
        }
    }
}

/// The flattening of a drawing: real vertices plus one degree-4 vertex per
/// crossing, with every edge cut into segments at its crossings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flattening {
    pub p: usize,
    pub q: usize,
    pub crossing_count: usize,
    pub segments: Vec<Segment>,
    /// For each edge (by context index), its segment ids from the p-side end.
    pub segment_map: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub edge: Edge,
    pub index: usize,
    pub tail: Node,
    pub head: Node,
    pub sign: i8,
}

impl Flattening {
    pub fn vertex_count(&self) -> usize {
        self.p + self.q + self.crossing_count
    }

    pub fn edge_count(&self) -> usize {
        self.segments.len()
    }

    pub fn node_index(&self, node: Node) -> usize {
        match node {
            Node::P(a) => a,
            Node::Q(b) => self.p + b,
            Node::Cross(c) => self.p + self.q + c,
        }
    }

    pub fn degree(&self, node: Node) -> usize {
        self.segments
            .iter()
            .map(|s| usize::from(s.tail == node) + usize::from(s.head == node))
            .sum()
    }
}

/// Byte-string invariant of a drawing under relabelling within each side,
/// reflection and local sign switching.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub Vec<u8>);

impl CanonicalKey {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// A good drawing of `K_{p,q}` in a target surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing {
    pub context: BipartiteContext,
    pub surface: Surface,
    pub crossings: Vec<Crossing>,
    /// Crossing indices along each edge, from its p-side end.
    pub edge_orders: Vec<Vec<usize>>,
    /// Cyclic order of q-side neighbours around each p-side vertex.
    pub p_rotations: Vec<Vec<usize>>,
    /// Cyclic order of p-side neighbours around each q-side vertex.
    pub q_rotations: Vec<Vec<usize>>,
    /// One alternation class (0 or 1) per crossing.
    pub orientations: Vec<u8>,
    /// Per edge, one sign per segment (`edge_orders[e].len() + 1` entries).
    pub signs: Vec<Vec<i8>>,
}

impl Drawing {
    /// Crossing-free drawing with the given rotations and all signs
    /// positive.
    pub fn crossing_free(
        p: usize,
        q: usize,
        surface: Surface,
        p_rotations: Vec<Vec<usize>>,
        q_rotations: Vec<Vec<usize>>,
    ) -> Self {
        Drawing {
            context: BipartiteContext::new(p, q),
            surface,
            crossings: Vec::new(),
            edge_orders: vec![Vec::new(); p * q],
            p_rotations,
            q_rotations,
            orientations: Vec::new(),
            signs: vec![vec![1]; p * q],
        }
    }

    pub fn p(&self) -> usize {
        self.context.p
    }

    pub fn q(&self) -> usize {
        self.context.q()
    }

    pub fn order(&self, e: Edge) -> &[usize] {
        &self.edge_orders[self.context.edge_index(e)]
    }

    pub fn validate_good(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let p = self.p();
        let q = self.q();
        let ctx = &self.context;

        if p == 0 || q == 0 {
            out.push(Violation::Shape("both sides must be non-empty".into()));
            return out;
        }
        let mut names = std::collections::HashSet::new();
        for name in &ctx.q_names {
            let clean = !name.is_empty()
                && !name.contains(['-', '#', ' '])
                && ctx.p_index(name).is_none()
                && names.insert(name.as_str());
            if !clean {
                out.push(Violation::BadName { name: name.clone() });
            }
        }
        let shapes = [
            (self.edge_orders.len(), p * q, "edge_orders"),
            (self.signs.len(), p * q, "signs"),
            (self.p_rotations.len(), p, "p-side rotations"),
            (self.q_rotations.len(), q, "q-side rotations"),
            (
                self.orientations.len(),
                self.crossings.len(),
                "crossing orientations",
            ),
        ];
        for (got, want, what) in shapes {
            if got != want {
                out.push(Violation::Shape(format!(
                    "{what}: {got} entries, expected {want}"
                )));
            }
        }
        if !out.is_empty() {
            return out;
        }

        let in_range = |e: Edge| e.a < p && e.b < q;
        let mut seen_pairs: HashMap<(Edge, Edge), usize> = HashMap::new();
        for (c, x) in self.crossings.iter().enumerate() {
            if !in_range(x.e) || !in_range(x.f) {
                out.push(Violation::EdgeOutOfRange { crossing: c });
                continue;
            }
            if !x.e.independent(x.f) {
                out.push(Violation::AdjacentEdgesCross { crossing: c });
            }
            if let Some(&first) = seen_pairs.get(&x.pair()) {
                out.push(Violation::PairCrossesTwice { first, second: c });
            } else {
                seen_pairs.insert(x.pair(), c);
            }
            if self.orientations[c] > 1 {
                out.push(Violation::BadOrientation { crossing: c });
            }
        }

        // each crossing exactly once on each of its two edges, nowhere else
        for e in ctx.edges() {
            let order = self.order(e);
            for &entry in order {
                let on_edge = self
                    .crossings
                    .get(entry)
                    .is_some_and(|x| in_range(x.e) && in_range(x.f) && x.involves(e));
                if !on_edge {
                    out.push(Violation::StrayOrderEntry {
                        edge: ctx.edge_name(e),
                        entry,
                    });
                }
            }
            let signs = &self.signs[ctx.edge_index(e)];
            if signs.len() != order.len() + 1 || signs.iter().any(|&s| s != 1 && s != -1) {
                out.push(Violation::BadSigns {
                    edge: ctx.edge_name(e),
                });
            }
        }
        for (c, x) in self.crossings.iter().enumerate() {
            if !in_range(x.e) || !in_range(x.f) {
                continue;
            }
            for edge in [x.e, x.f] {
                let count = self.order(edge).iter().filter(|&&k| k == c).count();
                if count != 1 {
                    out.push(Violation::CrossingNotOnEdge {
                        crossing: c,
                        edge: ctx.edge_name(edge),
                        count,
                    });
                }
            }
        }

        for a in 0..p {
            if !is_permutation(&self.p_rotations[a], q) {
                out.push(Violation::BadRotation {
                    vertex: ctx.p_name(a),
                });
            }
        }
        for b in 0..q {
            if !is_permutation(&self.q_rotations[b], p) {
                out.push(Violation::BadRotation {
                    vertex: ctx.q_name(b).to_string(),
                });
            }
        }
        out
    }

    pub fn ensure_good(&self) -> Result<(), DrawingError> {
        let violations = self.validate_good();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(DrawingError::Invalid(violations))
        }
    }

    pub fn flatten(&self) -> Result<Flattening, DrawingError> {
        self.ensure_good()?;
        Ok(self.flatten_unchecked())
    }

    pub(crate) fn flatten_unchecked(&self) -> Flattening {
        let mut segments = Vec::new();
        let mut segment_map = Vec::with_capacity(self.edge_orders.len());
        for e in self.context.edges() {
            let order = self.order(e);
            let signs = &self.signs[self.context.edge_index(e)];
            let mut ids = Vec::with_capacity(order.len() + 1);
            let mut tail = Node::P(e.a);
            for t in 0..=order.len() {
                let head = if t < order.len() {
                    Node::Cross(order[t])
                } else {
                    Node::Q(e.b)
                };
                ids.push(segments.len());
                segments.push(Segment {
                    edge: e,
                    index: t,
                    tail,
                    head,
                    sign: signs[t],
                });
                tail = head;
            }
            segment_map.push(ids);
        }
        Flattening {
            p: self.p(),
            q: self.q(),
            crossing_count: self.crossings.len(),
            segments,
            segment_map,
        }
    }

    /// The embedding scheme of the flattening as a signed rotation system.
    /// Vertex numbering follows [`Flattening::node_index`].
    pub fn rotation_system(&self) -> Result<RotationSystem, DrawingError> {
        self.ensure_good()?;
        Ok(self.rotation_system_unchecked(&self.flatten_unchecked()))
    }

    pub(crate) fn rotation_system_unchecked(&self, flat: &Flattening) -> RotationSystem {
        let ctx = &self.context;
        let (p, q) = (self.p(), self.q());
        let mut rotations: Vec<Vec<usize>> = Vec::with_capacity(flat.vertex_count());
        for a in 0..p {
            rotations.push(
                self.p_rotations[a]
                    .iter()
                    .map(|&b| 2 * flat.segment_map[ctx.edge_index(Edge::new(a, b))][0])
                    .collect(),
            );
        }
        for b in 0..q {
            rotations.push(
                self.q_rotations[b]
                    .iter()
                    .map(|&a| {
                        let segs = &flat.segment_map[ctx.edge_index(Edge::new(a, b))];
                        2 * segs[segs.len() - 1] + 1
                    })
                    .collect(),
            );
        }
        for (c, x) in self.crossings.iter().enumerate() {
            let [ea, eb] = self.crossing_darts(flat, x.e, c);
            let [fa, fb] = self.crossing_darts(flat, x.f, c);
            rotations.push(if self.orientations[c] == 0 {
                vec![ea, fa, eb, fb]
            } else {
                vec![ea, fb, eb, fa]
            });
        }
        let signs = flat.segments.iter().map(|s| s.sign).collect();
        RotationSystem::new(rotations, signs)
    }

    /// Darts at crossing `c` pointing along `edge` toward its p-side and
    /// q-side ends.
    fn crossing_darts(&self, flat: &Flattening, edge: Edge, c: usize) -> [usize; 2] {
        let t = self.order(edge).iter().position(|&k| k == c).unwrap();
        let segs = &flat.segment_map[self.context.edge_index(edge)];
        [2 * segs[t] + 1, 2 * segs[t + 1]]
    }

    /// Faces of the cellular embedding determined by the embedding scheme.
    pub fn trace_faces(&self) -> Result<FaceTrace, DrawingError> {
        Ok(self.rotation_system()?.trace_faces())
    }

    /// The surface of the cellular embedding of the flattening.
    pub fn realized_surface(&self) -> Result<Surface, DrawingError> {
        let rs = self.rotation_system()?;
        Ok(Surface::from_euler_characteristic(
            rs.euler_characteristic(),
            rs.is_orientable(),
        )?)
    }

    /// Whether the drawing can be placed in `sigma` by attaching handles or
    /// crosscaps to the faces of its cellular surface.
    pub fn embeds_in(&self, sigma: Surface) -> Result<bool, DrawingError> {
        Ok(attachable(self.realized_surface()?, sigma))
    }

    pub fn crn(&self) -> usize {
        self.crossings.len()
    }

    /// Crossings between edges at `u` and edges at `v` (q-side indices).
    pub fn crn_pair(&self, u: usize, v: usize) -> Result<usize, DrawingError> {
        let q = self.q();
        if u >= q || v >= q {
            return Err(DrawingError::UnknownVertex(format!(
                "q-side index {}",
                u.max(v)
            )));
        }
        if u == v {
            return Err(DrawingError::SameVertex(self.context.q_name(u).to_string()));
        }
        Ok(self
            .crossings
            .iter()
            .filter(|x| (x.e.b == u && x.f.b == v) || (x.e.b == v && x.f.b == u))
            .count())
    }

    /// Matrix of `crn_pair` over all q-side pairs.
    pub fn pair_counts(&self) -> Vec<Vec<usize>> {
        let q = self.q();
        let mut m = vec![vec![0; q]; q];
        for x in &self.crossings {
            m[x.e.b][x.f.b] += 1;
            m[x.f.b][x.e.b] += 1;
        }
        m
    }

    /// Number of crossings on edges incident with q-side vertex `u`.
    pub fn load(&self, u: usize) -> usize {
        self.crossings
            .iter()
            .filter(|x| x.e.b == u || x.f.b == u)
            .count()
    }

    /// Removes q-side vertex `u`, its edges and every crossing on them.
    pub fn delete_vertex(&self, u: usize) -> Result<Drawing, DrawingError> {
        self.ensure_good()?;
        let q = self.q();
        if u >= q {
            return Err(DrawingError::UnknownVertex(format!("q-side index {u}")));
        }
        if q == 1 {
            return Err(DrawingError::LastVertex);
        }
        let remap_b = |b: usize| if b > u { b - 1 } else { b };
        let mut new_index = vec![usize::MAX; self.crossings.len()];
        let mut crossings = Vec::new();
        let mut orientations = Vec::new();
        for (c, x) in self.crossings.iter().enumerate() {
            if x.e.b != u && x.f.b != u {
                new_index[c] = crossings.len();
                crossings.push(Crossing::new(
                    Edge::new(x.e.a, remap_b(x.e.b)),
                    Edge::new(x.f.a, remap_b(x.f.b)),
                ));
                orientations.push(self.orientations[c]);
            }
        }
        let mut context = self.context.clone();
        context.q_names.remove(u);
        let mut edge_orders = vec![Vec::new(); context.edge_count()];
        let mut signs = vec![Vec::new(); context.edge_count()];
        for e in self.context.edges().filter(|e| e.b != u) {
            let old = self.context.edge_index(e);
            let new = context.edge_index(Edge::new(e.a, remap_b(e.b)));
            let (order, merged) = splice_out(&self.edge_orders[old], &self.signs[old], |c| {
                new_index[c] != usize::MAX
            });
            edge_orders[new] = order.into_iter().map(|c| new_index[c]).collect();
            signs[new] = merged;
        }
        let p_rotations = self
            .p_rotations
            .iter()
            .map(|rot| {
                rot.iter()
                    .filter(|&&b| b != u)
                    .map(|&b| remap_b(b))
                    .collect()
            })
            .collect();
        let mut q_rotations = self.q_rotations.clone();
        q_rotations.remove(u);
        Ok(Drawing {
            context,
            surface: self.surface,
            crossings,
            edge_orders,
            p_rotations,
            q_rotations,
            orientations,
            signs,
        })
    }

    /// Invariant key for isomorphism rejection.
    pub fn canonical_form(&self) -> Result<CanonicalKey, DrawingError> {
        let rs = self.rotation_system()?;
        Ok(self.canonical_form_of(&rs))
    }

    pub(crate) fn canonical_form_of(&self, rs: &RotationSystem) -> CanonicalKey {
        let (p, q) = (self.p(), self.q());
        let colors: Vec<u32> = (0..rs.vertex_count())
            .map(|v| {
                if v < p {
                    0
                } else if v < p + q {
                    1
                } else {
                    2
                }
            })
            .collect();
        let code = rs.canonical_code(&colors);
        let mut bytes = Vec::with_capacity(12 + 4 * code.len());
        for header in [p, q, self.crossings.len()] {
            bytes.extend_from_slice(&(header as u32).to_be_bytes());
        }
        for x in code {
            bytes.extend_from_slice(&x.to_be_bytes());
        }
        CanonicalKey(bytes)
    }

    /// Switch at a flattening vertex: reverse its rotation and negate the
    /// signs of its incident segments. The drawing is unchanged up to
    /// homeomorphism.
    pub fn switched_at(&self, node: Node) -> Drawing {
        let mut d = self.clone();
        d.switch_in_place(node);
        d
    }

    pub(crate) fn switch_in_place(&mut self, node: Node) {
        let q = self.q();
        match node {
            Node::P(a) => {
                self.p_rotations[a].reverse();
                for b in 0..q {
                    let i = self.context.edge_index(Edge::new(a, b));
                    self.signs[i][0] = -self.signs[i][0];
                }
            }
            Node::Q(b) => {
                self.q_rotations[b].reverse();
                for a in 0..self.p() {
                    let i = self.context.edge_index(Edge::new(a, b));
                    let last = self.signs[i].len() - 1;
                    self.signs[i][last] = -self.signs[i][last];
                }
            }
            Node::Cross(c) => {
                // reversing (e_a, f_a, e_b, f_b) gives the other class
                self.orientations[c] ^= 1;
                let x = self.crossings[c];
                for edge in [x.e, x.f] {
                    let i = self.context.edge_index(edge);
                    let t = self.edge_orders[i].iter().position(|&k| k == c).unwrap();
                    self.signs[i][t] = -self.signs[i][t];
                    self.signs[i][t + 1] = -self.signs[i][t + 1];
                }
            }
        }
    }

    /// The mirror image: every rotation reversed.
    pub fn reflected(&self) -> Drawing {
        let mut d = self.clone();
        d.p_rotations.iter_mut().for_each(|r| r.reverse());
        d.q_rotations.iter_mut().for_each(|r| r.reverse());
        d.orientations.iter_mut().for_each(|o| *o ^= 1);
        d
    }

    /// Renumbers the sides: p-side vertex `i` becomes `p_perm[i]` and q-side
    /// vertex `j` becomes `q_perm[j]`; names travel with their vertices.
    pub fn relabeled(&self, p_perm: &[usize], q_perm: &[usize]) -> Drawing {
        let (p, q) = (self.p(), self.q());
        let map = |e: Edge| Edge::new(p_perm[e.a], q_perm[e.b]);
        let mut context = self.context.clone();
        for (j, name) in self.context.q_names.iter().enumerate() {
            context.q_names[q_perm[j]] = name.clone();
        }
        let mut edge_orders = vec![Vec::new(); p * q];
        let mut signs = vec![Vec::new(); p * q];
        for e in self.context.edges() {
            let old = self.context.edge_index(e);
            let new = context.edge_index(map(e));
            edge_orders[new] = self.edge_orders[old].clone();
            signs[new] = self.signs[old].clone();
        }
        let mut p_rotations = vec![Vec::new(); p];
        for a in 0..p {
            p_rotations[p_perm[a]] = self.p_rotations[a].iter().map(|&b| q_perm[b]).collect();
        }
        let mut q_rotations = vec![Vec::new(); q];
        for b in 0..q {
            q_rotations[q_perm[b]] = self.q_rotations[b].iter().map(|&a| p_perm[a]).collect();
        }
        Drawing {
            context,
            surface: self.surface,
            crossings: self
                .crossings
                .iter()
                .map(|x| Crossing::new(map(x.e), map(x.f)))
                .collect(),
            edge_orders,
            p_rotations,
            q_rotations,
            orientations: self.orientations.clone(),
            signs,
        }
    }
}

fn is_permutation(list: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    list.len() == n
        && list
            .iter()
            .all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

/// Drops the crossings rejected by `keep` from an edge order, multiplying the
/// signs of the two segments that meet at each dropped crossing.
pub(crate) fn splice_out(
    order: &[usize],
    signs: &[i8],
    keep: impl Fn(usize) -> bool,
) -> (Vec<usize>, Vec<i8>) {
    let mut kept = Vec::with_capacity(order.len());
    let mut merged = vec![signs[0]];
    for (t, &c) in order.iter().enumerate() {
        if keep(c) {
            kept.push(c);
            merged.push(signs[t + 1]);
        } else {
            *merged.last_mut().unwrap() *= signs[t + 1];
        }
    }
    (kept, merged)
}

#[cfg(test)]
mod tests;
