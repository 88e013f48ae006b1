//! Executable versions of the two finiteness arguments on concrete drawings.
//!
//! The q-side bound: for two q-side vertices `u, v` colour the p-side pair
//! `{i, j}` by whether the 4-cycle `i u j v` crosses itself. If some p-side
//! triangle is never self-crossed over a set `S` of q-side vertices, the
//! drawing contains a crossing-free `K_{3,|S|}`; otherwise the non-crossing
//! graph is triangle-free and Turán forces at least `Z(p)` self-crossing
//! pairs, i.e. `crn(u, v) ≥ Z(p)`.
//!
//! The reduction: while some q-side pair crosses at least `Z(p)` times,
//! delete one of its vertices; then put the deleted vertices back in
//! reverse order as duplicates of their partners.

use serde::Serialize;

use crate::drawing::{Drawing, Edge};
use crate::duplication::{duplicate, DuplicationStep};
use crate::error::{DrawingError, TheoremError};

/// `Z(p) = ⌊p/2⌋·⌊(p−1)/2⌋`.
pub fn zp(p: usize) -> usize {
    (p / 2) * (p.saturating_sub(1) / 2)
}

/// Zarankiewicz's count `Z(p)·Z(q)`.
pub fn zarankiewicz_number(p: usize, q: usize) -> usize {
    zp(p) * zp(q)
}

pub fn binomial2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn has_crossing(d: &Drawing, e: Edge, f: Edge) -> bool {
    d.crossings
        .iter()
        .any(|x| (x.e == e && x.f == f) || (x.e == f && x.f == e))
}

fn check_q_pair(d: &Drawing, u: usize, v: usize) -> Result<(), TheoremError> {
    let q = d.q();
    if u >= q || v >= q {
        return Err(DrawingError::UnknownVertex(format!("q-side index {}", u.max(v))).into());
    }
    if u == v {
        return Err(DrawingError::SameVertex(d.context.q_name(u).to_string()).into());
    }
    Ok(())
}

fn check_p_pair(d: &Drawing, i: usize, j: usize) -> Result<(), TheoremError> {
    if i == j || i >= d.p() || j >= d.p() {
        return Err(TheoremError::BadPSidePair(i, j));
    }
    Ok(())
}

/// Whether the 4-cycle on p-side `i, j` and q-side `u, v` crosses itself.
/// Only the two independent edge pairs of the cycle can cross.
pub fn four_cycle_selfcross(
    d: &Drawing,
    u: usize,
    v: usize,
    i: usize,
    j: usize,
) -> Result<bool, TheoremError> {
    check_q_pair(d, u, v)?;
    check_p_pair(d, i, j)?;
    Ok(has_crossing(d, Edge::new(i, u), Edge::new(j, v))
        || has_crossing(d, Edge::new(i, v), Edge::new(j, u)))
}

/// The colour `f_uv` of a q-side pair: one bit per unordered p-side pair,
/// listed as `(0,1), (0,2), …, (p−2,p−1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorFunction {
    pub p: usize,
    pub bits: Vec<bool>,
}

impl ColorFunction {
    pub fn get(&self, i: usize, j: usize) -> bool {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.bits[pair_index(self.p, i, j)]
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

fn pair_index(p: usize, i: usize, j: usize) -> usize {
    // pairs before row i, then offset within the row
    i * p - i * (i + 1) / 2 + (j - i - 1)
}

pub fn color_fn(d: &Drawing, u: usize, v: usize) -> Result<ColorFunction, TheoremError> {
    check_q_pair(d, u, v)?;
    let p = d.p();
    let mut bits = Vec::with_capacity(binomial2(p));
    for i in 0..p {
        for j in i + 1..p {
            bits.push(four_cycle_selfcross(d, u, v, i, j)?);
        }
    }
    Ok(ColorFunction { p, bits })
}

/// A simple graph on the p-side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PSideGraph {
    pub n: usize,
    adj: Vec<Vec<bool>>,
}

impl PSideGraph {
    pub fn empty(n: usize) -> Self {
        PSideGraph {
            n,
            adj: vec![vec![false; n]; n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        self.adj[i][j] = true;
        self.adj[j][i] = true;
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.adj[i][j])
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Lexicographically first triangle, if any.
    pub fn find_triangle(&self) -> Option<[usize; 3]> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.adj[i][j] {
                    continue;
                }
                for k in j + 1..self.n {
                    if self.adj[i][k] && self.adj[j][k] {
                        return Some([i, j, k]);
                    }
                }
            }
        }
        None
    }
}

/// Graph on the p-side joining `i` and `j` when no 4-cycle through `i, j`
/// and two vertices of `s` crosses itself.
pub fn noncrossing_graph(d: &Drawing, s: &[usize]) -> Result<PSideGraph, TheoremError> {
    if s.len() < 2 {
        return Err(TheoremError::TooFewVertices(s.len()));
    }
    let colors: Vec<ColorFunction> = pairs_of(s)
        .map(|(u, v)| color_fn(d, u, v))
        .collect::<Result<_, _>>()?;
    let p = d.p();
    let mut g = PSideGraph::empty(p);
    for i in 0..p {
        for j in i + 1..p {
            if colors.iter().all(|c| !c.get(i, j)) {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

fn pairs_of(s: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..s.len()).flat_map(move |x| (x + 1..s.len()).map(move |y| (s[x], s[y])))
}

/// `C(p,2) − |E(g)|` for a triangle-free `g`; at least `Z(p)` by Turán.
pub fn turan_deficit(g: &PSideGraph) -> Result<usize, TheoremError> {
    if let Some(t) = g.find_triangle() {
        return Err(TheoremError::Triangle(t));
    }
    Ok(binomial2(g.n) - g.edge_count())
}

/// Largest subset of `s` whose pairs all share one colour, by exhaustive
/// search (`|s| ≤ 12`). Returns the colour and the subset, lexicographically
/// first among the largest.
pub fn largest_monochromatic_clique(
    d: &Drawing,
    s: &[usize],
) -> Result<Option<(ColorFunction, Vec<usize>)>, TheoremError> {
    if s.len() < 2 {
        return Err(TheoremError::TooFewVertices(s.len()));
    }
    assert!(
        s.len() <= 12,
        "exhaustive clique search is limited to 12 vertices"
    );
    let n = s.len();
    let mut color = vec![vec![None; n]; n];
    for x in 0..n {
        for y in x + 1..n {
            color[x][y] = Some(color_fn(d, s[x], s[y])?);
        }
    }
    let mut best: Option<(ColorFunction, Vec<usize>)> = None;
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
        if members.len() < 2 || best.as_ref().is_some_and(|b| b.1.len() > members.len()) {
            continue;
        }
        let first = color[members[0]][members[1]].clone().unwrap();
        let mono = members.iter().enumerate().all(|(k, &x)| {
            members[k + 1..]
                .iter()
                .all(|&y| color[x][y].as_ref() == Some(&first))
        });
        if !mono {
            continue;
        }
        let subset: Vec<usize> = members.iter().map(|&x| s[x]).collect();
        let replace = match &best {
            None => true,
            Some((_, b)) => subset.len() > b.len() || (subset.len() == b.len() && subset < *b),
        };
        if replace {
            best = Some((first, subset));
        }
    }
    Ok(best)
}

/// The q-side pair with the most mutual crossings, if that count reaches
/// `threshold`; ties go to the lexicographically smallest pair.
pub fn heavy_pair(d: &Drawing, threshold: usize) -> Option<(usize, usize)> {
    let counts = d.pair_counts();
    let q = d.q();
    let mut best: Option<((usize, usize), usize)> = None;
    for u in 0..q {
        for v in u + 1..q {
            if best.is_none_or(|(_, c)| counts[u][v] > c) {
                best = Some(((u, v), counts[u][v]));
            }
        }
    }
    best.filter(|&(_, c)| c >= threshold).map(|(pair, _)| pair)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Deletion {
    /// Vertex removed at this step.
    pub deleted: String,
    /// Its heavy partner, which it is later re-inserted as a duplicate of.
    pub partner: String,
    pub crn_pair: usize,
    pub crn_before: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub floor_q: usize,
    pub threshold: usize,
    pub deletions: Vec<Deletion>,
    pub original: Drawing,
    pub base: Drawing,
    pub rebuilt: Option<Drawing>,
}

impl ReductionTrace {
    pub fn crn_original(&self) -> usize {
        self.original.crn()
    }

    pub fn crn_rebuilt(&self) -> Option<usize> {
        self.rebuilt.as_ref().map(Drawing::crn)
    }

    pub fn reached_floor(&self) -> bool {
        self.base.q() <= self.floor_q
    }

    pub fn stopped_early(&self) -> bool {
        !self.reached_floor()
    }
}

/// Deletes q-side vertices of heavy pairs (`crn(u, v) ≥ Z(p)`) until only
/// `floor_q` remain or no heavy pair is left.
///
/// Of the heavy pair, the vertex whose star carries more crossings is
/// deleted (the first one on ties), so that re-inserting it as a copy of
/// the lighter partner cannot cost more than it saved.
pub fn reduce_to_base(d: &Drawing, floor_q: usize) -> Result<ReductionTrace, TheoremError> {
    d.ensure_good()?;
    let floor_q = floor_q.max(1);
    let threshold = zp(d.p());
    let mut current = d.clone();
    let mut deletions = Vec::new();
    while current.q() > floor_q {
        let Some((u, v)) = heavy_pair(&current, threshold) else {
            break;
        };
        let (gone, kept) = if current.load(v) > current.load(u) {
            (v, u)
        } else {
            (u, v)
        };
        deletions.push(Deletion {
            deleted: current.context.q_name(gone).to_string(),
            partner: current.context.q_name(kept).to_string(),
            crn_pair: current.crn_pair(u, v)?,
            crn_before: current.crn(),
        });
        current = current.delete_vertex(gone)?;
    }
    Ok(ReductionTrace {
        floor_q,
        threshold,
        deletions,
        original: d.clone(),
        base: current,
        rebuilt: None,
    })
}

/// Re-inserts the deleted vertices, last deleted first, each as a duplicate
/// of its partner at the cheapest gap (lowest gap on ties).
pub fn rebuild(trace: &ReductionTrace) -> Result<Drawing, TheoremError> {
    let mut d = trace.base.clone();
    for step in trace.deletions.iter().rev() {
        let mut best: Option<Drawing> = None;
        for gap in 0..d.p() {
            let candidate = duplicate(
                &d,
                &DuplicationStep {
                    target: step.partner.clone(),
                    gap,
                    name: step.deleted.clone(),
                },
            )?;
            if best.as_ref().is_none_or(|b| candidate.crn() < b.crn()) {
                best = Some(candidate);
            }
        }
        d = best.expect("p >= 1");
    }
    Ok(d)
}

/// Full reduce-and-rebuild loop; fails loudly if the rebuilt drawing has
/// more crossings than the original.
pub fn rebuild_and_compare(d: &Drawing, floor_q: usize) -> Result<ReductionTrace, TheoremError> {
    let mut trace = reduce_to_base(d, floor_q)?;
    let rebuilt = rebuild(&trace)?;
    if rebuilt.crn() > d.crn() {
        return Err(TheoremError::RebuildIncreased {
            original: d.crn(),
            rebuilt: rebuilt.crn(),
        });
    }
    trace.rebuilt = Some(rebuilt);
    Ok(trace)
}
