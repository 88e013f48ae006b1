//! Vertex duplication, extension scripts and the Zarankiewicz generator.
//!
//! Duplicating a q-side vertex `u` places a new vertex `v` in a small disk
//! around `u`, inside the wedge selected by the gap index. With `u`'s
//! rotation read from the gap as `e_1, …, e_p`, the edge `vw_i` sweeps
//! around `u` across whichever of `{e_1..e_{i−1}}` and `{e_{i+1}..e_p}` is
//! smaller (the lower side on ties), then runs alongside `e_i` out to
//! `w_i`, crossing every edge that `e_i` crosses. Sweeps of different
//! edges are nested, so the stars of `u` and `v` cross exactly `Z(p)` times
//! and `v` ends up with the same rotation as `u`.

use std::path::Path;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::drawing::{BipartiteContext, Crossing, Drawing, Edge, Node};
use crate::embedding::RotationSystem;
use crate::error::{DrawingError, DuplicationError};
use crate::surface::Surface;

/// One duplication: copy `target` into a new vertex `name`, placed in the
/// wedge before position `gap` of the target's rotation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DuplicationStep {
    pub target: String,
    pub gap: usize,
    pub name: String,
}

/// A base drawing and the duplications to apply to it, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionScript {
    pub base: Drawing,
    pub steps: Vec<DuplicationStep>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScriptFile {
    base: serde_json::Value,
    steps: Vec<DuplicationStep>,
}

impl ExtensionScript {
    pub fn to_json(&self) -> String {
        let file = ScriptFile {
            base: self.base.to_json_value(),
            steps: self.steps.clone(),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("scripts always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, DrawingError> {
        let file: ScriptFile = serde_json::from_str(text)?;
        Ok(ExtensionScript {
            base: Drawing::from_json_value(file.base)?,
            steps: file.steps,
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self, DrawingError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Whether the sweep of the `i`-th edge read from the gap (0-based) goes
/// across the lower-index edges.
fn sweeps_low(i: usize, p: usize) -> bool {
    2 * i < p
}

/// Switches along the star of `u` until every segment on it is positive.
/// The result is the same drawing; it just lets the local routing near the
/// star be written in one consistent frame.
fn normalize_star(d: &mut Drawing, u: usize) {
    for a in 0..d.p() {
        let idx = d.context.edge_index(Edge::new(a, u));
        for t in (0..d.signs[idx].len()).rev() {
            if d.signs[idx][t] < 0 {
                let tail = if t == 0 {
                    Node::P(a)
                } else {
                    Node::Cross(d.edge_orders[idx][t - 1])
                };
                d.switch_in_place(tail);
            }
        }
    }
}

/// Adds an isolated-star slot for a new q-side vertex at index `q`.
fn with_new_vertex(d: &Drawing, name: &str, rotation: Vec<usize>) -> Drawing {
    let mut context = d.context.clone();
    context.q_names.push(name.to_string());
    let mut edge_orders = vec![Vec::new(); context.edge_count()];
    let mut signs = vec![vec![1]; context.edge_count()];
    for e in d.context.edges() {
        let (old, new) = (d.context.edge_index(e), context.edge_index(e));
        edge_orders[new] = d.edge_orders[old].clone();
        signs[new] = d.signs[old].clone();
    }
    let mut q_rotations = d.q_rotations.clone();
    q_rotations.push(rotation);
    Drawing {
        context,
        surface: d.surface,
        crossings: d.crossings.clone(),
        edge_orders,
        p_rotations: d.p_rotations.clone(),
        q_rotations,
        orientations: d.orientations.clone(),
        signs,
    }
}

fn valid_new_name(ctx: &BipartiteContext, name: &str) -> bool {
    !name.is_empty()
        && !name.contains(['-', '#', ' '])
        && ctx.p_index(name).is_none()
        && !ctx.q_names.iter().any(|n| n == name)
}

/// Duplicates a q-side vertex, returning a drawing of `K_{p,q+1}`.
pub fn duplicate(d: &Drawing, step: &DuplicationStep) -> Result<Drawing, DuplicationError> {
    d.ensure_good()?;
    let u = d.context.q_index(&step.target)?;
    let p = d.p();
    if step.gap >= p {
        return Err(DuplicationError::BadGap { gap: step.gap, p });
    }
    if !valid_new_name(&d.context, &step.name) {
        return Err(DuplicationError::BadName(step.name.clone()));
    }

    let mut base = d.clone();
    normalize_star(&mut base, u);
    let mut out = with_new_vertex(&base, &step.name, base.q_rotations[u].clone());
    let v = out.q() - 1;
    let ctx = out.context.clone();

    let w: Vec<usize> = (0..p)
        .map(|i| base.q_rotations[u][(step.gap + i) % p])
        .collect();
    let star_u: Vec<Edge> = w.iter().map(|&a| Edge::new(a, u)).collect();
    let star_v: Vec<Edge> = w.iter().map(|&a| Edge::new(a, v)).collect();

    let push_crossing = |out: &mut Drawing, x: Crossing, class: u8| -> usize {
        out.crossings.push(x);
        out.orientations.push(class);
        out.crossings.len() - 1
    };

    // copies of the crossings on star(u), next to the originals
    for i in 0..p {
        let (e, f) = (star_u[i], star_v[i]);
        let originals = base.order(e).to_vec();
        for c in originals {
            let x = base.crossings[c];
            let class = base.orientations[c];
            let g = x.other(e);
            let e_first = x.e == e;
            let y = if e_first {
                Crossing::new(f, g)
            } else {
                Crossing::new(g, f)
            };
            let yc = push_crossing(&mut out, y, class);
            let fi = ctx.edge_index(f);
            out.edge_orders[fi].push(yc);
            out.signs[fi].push(1);

            // Looking from u along e, the copy lies on the side of e that
            // the sweep arrives from; find which end of g points there.
            let low_side_toward_b = e_first == (class == 0);
            let toward_b = if sweeps_low(i, p) {
                low_side_toward_b
            } else {
                !low_side_toward_b
            };
            let gi = ctx.edge_index(g);
            let t = out.edge_orders[gi].iter().position(|&k| k == c).unwrap();
            let at = if toward_b { t + 1 } else { t };
            out.edge_orders[gi].insert(at, yc);
            // the short piece between x and its copy stays in the local frame
            out.signs[gi].insert(t + 1, 1);
        }
    }

    // star(u)–star(v) crossings of the nested sweeps
    let mut mutual = vec![vec![usize::MAX; p]; p]; // [i][j]: f_i crosses e_j
    for i in 0..p {
        let crossed: Vec<usize> = if sweeps_low(i, p) {
            (0..i).collect()
        } else {
            (i + 1..p).collect()
        };
        let class = if sweeps_low(i, p) { 0 } else { 1 };
        for j in crossed {
            mutual[i][j] = push_crossing(&mut out, Crossing::new(star_u[j], star_v[i]), class);
        }
    }
    for j in 0..p {
        // along e_j toward u: farthest sweep first
        let ej = ctx.edge_index(star_u[j]);
        let sweeps: Vec<usize> = if sweeps_low(j, p) {
            (j + 1..p).filter(|&i| sweeps_low(i, p)).collect()
        } else {
            (0..j).rev().filter(|&i| !sweeps_low(i, p)).collect()
        };
        for i in sweeps {
            out.edge_orders[ej].push(mutual[i][j]);
            out.signs[ej].push(1);
        }
    }
    for i in 0..p {
        // along f_i from w_i back to v
        let fi = ctx.edge_index(star_v[i]);
        let order: Vec<usize> = if sweeps_low(i, p) {
            (0..i).rev().collect()
        } else {
            (i + 1..p).collect()
        };
        for j in order {
            out.edge_orders[fi].push(mutual[i][j]);
            out.signs[fi].push(1);
        }
    }

    for i in 0..p {
        let rot = &mut out.p_rotations[w[i]];
        let pos = rot.iter().position(|&b| b == u).unwrap();
        rot.insert(if sweeps_low(i, p) { pos + 1 } else { pos }, v);
    }
    Ok(out)
}

/// Applies the script's steps in order.
pub fn run_script(script: &ExtensionScript) -> Result<Drawing, DuplicationError> {
    script
        .steps
        .iter()
        .enumerate()
        .try_fold(script.base.clone(), |d, (index, step)| {
            duplicate(&d, step).map_err(|e| DuplicationError::Step {
                index,
                source: Box::new(e),
            })
        })
}

/// Crossing-free spherical drawing of `K_{p,2}`.
pub fn planar_base(p: usize) -> Result<Drawing, DuplicationError> {
    if p == 0 {
        return Err(DuplicationError::OutOfRange {
            what: "p",
            range: ">= 1",
            got: p,
        });
    }
    let forward: Vec<usize> = (0..p).collect();
    let backward: Vec<usize> = (0..p).rev().collect();
    Ok(Drawing::crossing_free(
        p,
        2,
        Surface::SPHERE,
        vec![vec![0, 1]; p],
        vec![forward, backward],
    ))
}

/// Script that grows `planar_base(p)` to `K_{p,q}`, always duplicating the
/// q-side vertex whose star carries the fewest crossings (lowest index on
/// ties), at gap 0.
pub fn zarankiewicz_script(p: usize, q: usize) -> Result<ExtensionScript, DuplicationError> {
    if q < 2 {
        return Err(DuplicationError::OutOfRange {
            what: "q",
            range: ">= 2",
            got: q,
        });
    }
    let base = planar_base(p)?;
    let mut steps = Vec::new();
    let mut d = base.clone();
    while d.q() < q {
        let target = (0..d.q()).min_by_key(|&b| (d.load(b), b)).unwrap();
        let step = DuplicationStep {
            target: d.context.q_name(target).to_string(),
            gap: 0,
            name: d.context.fresh_q_name(),
        };
        d = duplicate(&d, &step)?;
        steps.push(step);
    }
    Ok(ExtensionScript { base, steps })
}

/// The Zarankiewicz drawing of `K_{p,q}` built by duplication.
pub fn zarankiewicz_drawing(p: usize, q: usize) -> Result<Drawing, DuplicationError> {
    if q == 1 {
        return Ok(planar_base(p)?.delete_vertex(1)?);
    }
    run_script(&zarankiewicz_script(p, q)?)
}

/// Brute-force minimum number of crossings in a spherical drawing of the
/// dipole with `m` parallel edges whose two ends carry the same rotation.
///
/// Tries every set of crossing edge pairs (each pair at most once), every
/// order of crossings along each edge and both alternation classes at every
/// crossing, for `k = 0, 1, …, max_k`. Returns `None` if nothing up to
/// `max_k` is planar.
pub fn dipole_min_crossings(m: usize, max_k: usize) -> Result<Option<usize>, DuplicationError> {
    if !(2..=5).contains(&m) {
        return Err(DuplicationError::OutOfRange {
            what: "m",
            range: "2..=5",
            got: m,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..m).tuple_combinations().collect();
    for k in 0..=max_k.min(pairs.len()) {
        let sets: Vec<Vec<(usize, usize)>> = pairs.iter().copied().combinations(k).collect();
        if sets.par_iter().any(|set| dipole_set_is_planar(m, set)) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

fn dipole_set_is_planar(m: usize, set: &[(usize, usize)]) -> bool {
    let on_edge: Vec<Vec<usize>> = (0..m)
        .map(|e| {
            (0..set.len())
                .filter(|&c| set[c].0 == e || set[c].1 == e)
                .collect()
        })
        .collect();
    let order_choices: Vec<Vec<Vec<usize>>> = on_edge
        .iter()
        .map(|cs| cs.iter().copied().permutations(cs.len()).collect())
        .collect();
    let k = set.len();
    order_choices
        .iter()
        .multi_cartesian_product()
        .any(|orders| {
            (0..1u32 << k)
                .any(|classes| dipole_scheme(m, set, &orders, classes).euler_characteristic() == 2)
        })
}

/// Rotation system of a dipole drawing: vertex 0 = u, 1 = v, then one
/// vertex per crossing. Every edge runs from u to v.
pub(crate) fn dipole_scheme(
    m: usize,
    set: &[(usize, usize)],
    orders: &[&Vec<usize>],
    classes: u32,
) -> RotationSystem {
    let mut seg_of = Vec::with_capacity(m); // per edge, segment ids from u
    let mut next = 0;
    for order in orders {
        seg_of.push((next..next + order.len() + 1).collect::<Vec<_>>());
        next += order.len() + 1;
    }
    let mut rotations = vec![Vec::new(); 2 + set.len()];
    for e in 0..m {
        rotations[0].push(2 * seg_of[e][0]);
        rotations[1].push(2 * seg_of[e][orders[e].len()] + 1);
    }
    for (c, &(e, f)) in set.iter().enumerate() {
        let darts = |edge: usize| {
            let t = orders[edge].iter().position(|&x| x == c).unwrap();
            (2 * seg_of[edge][t] + 1, 2 * seg_of[edge][t + 1])
        };
        let (eu, ev) = darts(e);
        let (fu, fv) = darts(f);
        rotations[2 + c] = if classes >> c & 1 == 0 {
            vec![eu, fu, ev, fv]
        } else {
            vec![eu, fv, ev, fu]
        };
    }
    RotationSystem::new(rotations, vec![1; next])
}
