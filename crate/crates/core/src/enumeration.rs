//! Exhaustive search over good drawings of small `K_{p,q}`.
//!
//! A drawing splits into a *crossing configuration* (which independent
//! edge pairs cross, and in what order along each edge) and an *embedding
//! scheme* of the resulting flattening (rotations at real vertices, an
//! alternation class per crossing, and signs). Searches walk
//! configurations in lexicographic order and, for each, every scheme:
//!
//! * the rotation of one maximum-degree real vertex is pinned, which loses
//!   nothing because every relabelling of the other side is also searched;
//! * signs are normalised to `+1` on a spanning tree of the flattening, so
//!   only cotree signs vary, and only for non-orientable targets.
//!
//! Realizability in a target surface is decided from the traced cellular
//! surface with [`attachable`]; non-cellular placements never need to be
//! enumerated separately.

use std::collections::{BTreeMap, VecDeque};
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;

use crate::drawing::{CanonicalKey, Crossing, Drawing, Edge, Flattening, Node};
use crate::embedding::RotationSystem;
use crate::surface::{attachable, bipartite_euler_bound, Surface};

/// Limits for a search. `parallelism == 0` uses all cores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_crossings: usize,
    pub max_seconds: u64,
    pub parallelism: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_crossings: 6,
            max_seconds: 60,
            parallelism: 0,
        }
    }
}

impl EnumerationBudget {
    fn deadline(&self) -> Deadline {
        Deadline {
            end: Instant::now() + Duration::from_secs(self.max_seconds),
            expired: AtomicBool::new(false),
        }
    }

    /// Runs `f` on a pool with the requested number of workers.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        if self.parallelism == 0 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new()
            .num_threads(self.parallelism)
            .build()
        {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}

struct Deadline {
    end: Instant,
    expired: AtomicBool,
}

impl Deadline {
    fn check(&self) -> bool {
        if self.expired.load(Ordering::Relaxed) {
            return true;
        }
        if Instant::now() >= self.end {
            self.expired.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    fn expired(&self) -> bool {
        self.expired.load(Ordering::Relaxed)
    }
}

/// Outcome of an exact search that may run out of budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(usize),
    Unknown,
}

impl SearchOutcome {
    pub fn value(self) -> Option<usize> {
        match self {
            SearchOutcome::Found(k) => Some(k),
            SearchOutcome::Unknown => None,
        }
    }
}

/// Which edge pairs cross and the order of crossings along each edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingConfig {
    pub p: usize,
    pub q: usize,
    pub crossings: Vec<Crossing>,
    pub edge_orders: Vec<Vec<usize>>,
}

impl CrossingConfig {
    /// A drawing with this configuration and a placeholder scheme: identity
    /// rotations, class 0 everywhere, all signs positive.
    pub fn template(&self, surface: Surface) -> Drawing {
        let mut d = Drawing::crossing_free(
            self.p,
            self.q,
            surface,
            vec![(0..self.q).collect(); self.p],
            vec![(0..self.p).collect(); self.q],
        );
        d.crossings = self.crossings.clone();
        d.orientations = vec![0; self.crossings.len()];
        d.signs = self
            .edge_orders
            .iter()
            .map(|o| vec![1; o.len() + 1])
            .collect();
        d.edge_orders = self.edge_orders.clone();
        d
    }
}

/// All unordered pairs of independent edges of `K_{p,q}`, lexicographic.
pub fn independent_pairs(p: usize, q: usize) -> Vec<(Edge, Edge)> {
    let edges: Vec<Edge> = (0..p)
        .flat_map(|a| (0..q).map(move |b| Edge::new(a, b)))
        .collect();
    edges
        .iter()
        .tuple_combinations()
        .filter(|(e, f)| e.independent(**f))
        .map(|(&e, &f)| (e, f))
        .collect()
}

/// Every set of `k` independent crossing pairs, each with every
/// interleaving of the per-edge crossing orders.
pub fn enumerate_crossing_configs(
    p: usize,
    q: usize,
    k: usize,
) -> Box<dyn Iterator<Item = CrossingConfig> + Send> {
    let pairs = independent_pairs(p, q);
    Box::new(pairs.into_iter().combinations(k).flat_map(move |set| {
        let crossings: Vec<Crossing> = set.iter().map(|&(e, f)| Crossing::new(e, f)).collect();
        let on_edge: Vec<Vec<usize>> = (0..p * q)
            .map(|i| {
                let edge = Edge::new(i / q, i % q);
                (0..crossings.len())
                    .filter(|&c| crossings[c].involves(edge))
                    .collect()
            })
            .collect();
        let choices: Vec<Vec<Vec<usize>>> = on_edge
            .iter()
            .map(|cs| cs.iter().copied().permutations(cs.len()).collect())
            .collect();
        choices
            .into_iter()
            .multi_cartesian_product()
            .map(move |edge_orders| CrossingConfig {
                p,
                q,
                crossings: crossings.clone(),
                edge_orders,
            })
    }))
}

/// A configuration with `k` crossings chosen through `pick`, which must
/// return a value in `0..n` when called with `n`. `None` when `K_{p,q}` has
/// fewer than `k` independent pairs.
pub fn sample_config(
    p: usize,
    q: usize,
    k: usize,
    mut pick: impl FnMut(usize) -> usize,
) -> Option<CrossingConfig> {
    let mut pairs = independent_pairs(p, q);
    if pairs.len() < k {
        return None;
    }
    let mut chosen = Vec::with_capacity(k);
    for _ in 0..k {
        chosen.push(pairs.swap_remove(pick(pairs.len())));
    }
    chosen.sort();
    let crossings: Vec<Crossing> = chosen.iter().map(|&(e, f)| Crossing::new(e, f)).collect();
    let edge_orders = (0..p * q)
        .map(|i| {
            let edge = Edge::new(i / q, i % q);
            let mut on: Vec<usize> = (0..k).filter(|&c| crossings[c].involves(edge)).collect();
            for j in (1..on.len()).rev() {
                on.swap(j, pick(j + 1));
            }
            on
        })
        .collect();
    Some(CrossingConfig {
        p,
        q,
        crossings,
        edge_orders,
    })
}

/// One embedding scheme for a fixed configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scheme {
    pub p_rotations: Vec<Vec<usize>>,
    pub q_rotations: Vec<Vec<usize>>,
    pub orientations: Vec<u8>,
    pub signs: Vec<Vec<i8>>,
}

impl Scheme {
    pub fn apply(&self, template: &Drawing) -> Drawing {
        let mut d = template.clone();
        d.p_rotations = self.p_rotations.clone();
        d.q_rotations = self.q_rotations.clone();
        d.orientations = self.orientations.clone();
        d.signs = self.signs.clone();
        d
    }
}

/// The finite space of schemes of one configuration, indexed in mixed
/// radix: real-vertex rotations, then crossing classes, then cotree signs.
pub struct SchemeSpace {
    template: Drawing,
    flat: Flattening,
    vertices: Vec<Node>,
    rotation_choices: Vec<Vec<Vec<usize>>>,
    choice_darts: Vec<Vec<Vec<usize>>>,
    cotree: Vec<usize>,
    crossing_darts: Vec<[usize; 4]>,
    pinned: Option<Node>,
}

impl SchemeSpace {
    /// Scheme space with a maximum-degree vertex pinned: `a1` when
    /// `q ≥ p`, otherwise `b1`.
    pub fn new(template: &Drawing, orientable_only: bool) -> Self {
        let pin = if template.q() >= template.p() {
            Node::P(0)
        } else {
            Node::Q(0)
        };
        Self::with_pinned(template, orientable_only, Some(pin))
    }

    pub fn with_pinned(template: &Drawing, orientable_only: bool, pinned: Option<Node>) -> Self {
        let (p, q) = (template.p(), template.q());
        let flat = template.flatten_unchecked();
        let mut vertices = Vec::new();
        let mut rotation_choices = Vec::new();
        for a in 0..p {
            vertices.push(Node::P(a));
            rotation_choices.push(cyclic_orders(q, pinned == Some(Node::P(a))));
        }
        for b in 0..q {
            vertices.push(Node::Q(b));
            rotation_choices.push(cyclic_orders(p, pinned == Some(Node::Q(b))));
        }
        let ctx = &template.context;
        let choice_darts = vertices
            .iter()
            .zip(&rotation_choices)
            .map(|(&node, choices)| {
                choices
                    .iter()
                    .map(|rot| {
                        rot.iter()
                            .map(|&x| match node {
                                Node::P(a) => {
                                    2 * flat.segment_map[ctx.edge_index(Edge::new(a, x))][0]
                                }
                                Node::Q(b) => {
                                    let segs = &flat.segment_map[ctx.edge_index(Edge::new(x, b))];
                                    2 * segs[segs.len() - 1] + 1
                                }
                                Node::Cross(_) => unreachable!(),
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let cotree = if orientable_only {
            Vec::new()
        } else {
            cotree_segments(&flat)
        };
        let crossing_darts = template
            .crossings
            .iter()
            .enumerate()
            .map(|(c, x)| {
                let darts = |edge: Edge| {
                    let t = template.order(edge).iter().position(|&k| k == c).unwrap();
                    let segs = &flat.segment_map[template.context.edge_index(edge)];
                    (2 * segs[t] + 1, 2 * segs[t + 1])
                };
                let (ea, eb) = darts(x.e);
                let (fa, fb) = darts(x.f);
                [ea, fa, eb, fb]
            })
            .collect();
        SchemeSpace {
            template: template.clone(),
            flat,
            vertices,
            rotation_choices,
            choice_darts,
            cotree,
            crossing_darts,
            pinned,
        }
    }

    pub fn template(&self) -> &Drawing {
        &self.template
    }

    pub fn pinned(&self) -> Option<Node> {
        self.pinned
    }

    /// Number of schemes.
    pub fn len(&self) -> u128 {
        let rotations: u128 = self
            .rotation_choices
            .iter()
            .map(|c| c.len() as u128)
            .product();
        rotations << (self.crossing_darts.len() + self.cotree.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn decode(&self, mut index: u128) -> (Vec<usize>, u64, u64) {
        let mut picks = Vec::with_capacity(self.rotation_choices.len());
        for choices in &self.rotation_choices {
            let n = choices.len() as u128;
            picks.push((index % n) as usize);
            index /= n;
        }
        let k = self.crossing_darts.len();
        let classes = (index & ((1u128 << k) - 1)) as u64;
        let signs = (index >> k) as u64;
        (picks, classes, signs)
    }

    pub fn scheme(&self, index: u128) -> Scheme {
        let (picks, classes, sign_bits) = self.decode(index);
        let p = self.template.p();
        let mut p_rotations = Vec::with_capacity(p);
        let mut q_rotations = Vec::with_capacity(self.template.q());
        for (v, (&node, &pick)) in self.vertices.iter().zip(&picks).enumerate() {
            let rot = self.rotation_choices[v][pick].clone();
            match node {
                Node::P(_) => p_rotations.push(rot),
                _ => q_rotations.push(rot),
            }
        }
        let orientations = (0..self.crossing_darts.len())
            .map(|c| (classes >> c & 1) as u8)
            .collect();
        let mut signs: Vec<Vec<i8>> = self
            .template
            .signs
            .iter()
            .map(|s| vec![1; s.len()])
            .collect();
        for (bit, &seg) in self.cotree.iter().enumerate() {
            if sign_bits >> bit & 1 == 1 {
                let s = self.flat.segments[seg];
                signs[self.template.context.edge_index(s.edge)][s.index] = -1;
            }
        }
        Scheme {
            p_rotations,
            q_rotations,
            orientations,
            signs,
        }
    }

    pub fn drawing(&self, index: u128) -> Drawing {
        self.scheme(index).apply(&self.template)
    }

    /// Rotation system of scheme `index`, built without going through a
    /// [`Drawing`].
    pub fn rotation_system(&self, index: u128) -> RotationSystem {
        let (picks, classes, sign_bits) = self.decode(index);
        let mut rotations = Vec::with_capacity(self.flat.vertex_count());
        for (v, &pick) in picks.iter().enumerate() {
            rotations.push(self.choice_darts[v][pick].clone());
        }
        for (c, &[ea, fa, eb, fb]) in self.crossing_darts.iter().enumerate() {
            rotations.push(if classes >> c & 1 == 0 {
                vec![ea, fa, eb, fb]
            } else {
                vec![ea, fb, eb, fa]
            });
        }
        let mut signs = vec![1i8; self.flat.edge_count()];
        for (bit, &seg) in self.cotree.iter().enumerate() {
            if sign_bits >> bit & 1 == 1 {
                signs[seg] = -1;
            }
        }
        RotationSystem::new(rotations, signs)
    }

    /// Surface traced by scheme `index`. Schemes with all signs positive
    /// take an allocation-free path through `scratch`.
    pub fn surface(&self, index: u128, scratch: &mut Scratch) -> Surface {
        let (picks, classes, sign_bits) = self.decode(index);
        if sign_bits != 0 {
            return realized(&self.rotation_system(index));
        }
        let darts = 2 * self.flat.edge_count();
        scratch.next.resize(darts, 0);
        scratch.seen.clear();
        scratch.seen.resize(darts, false);
        let mut link = |rot: &[usize]| {
            for (i, &d) in rot.iter().enumerate() {
                scratch.next[d] = rot[(i + 1) % rot.len()];
            }
        };
        for (v, &pick) in picks.iter().enumerate() {
            link(&self.choice_darts[v][pick]);
        }
        for (c, &[ea, fa, eb, fb]) in self.crossing_darts.iter().enumerate() {
            link(&if classes >> c & 1 == 0 {
                [ea, fa, eb, fb]
            } else {
                [ea, fb, eb, fa]
            });
        }
        let mut faces = 0i64;
        for start in 0..darts {
            if scratch.seen[start] {
                continue;
            }
            faces += 1;
            let mut d = start;
            while !scratch.seen[d] {
                scratch.seen[d] = true;
                d = scratch.next[d ^ 1];
            }
        }
        let chi = self.flat.vertex_count() as i64 - self.flat.edge_count() as i64 + faces;
        Surface::from_euler_characteristic(chi, true).expect("traced surfaces are always valid")
    }

    pub fn iter(&self) -> impl Iterator<Item = Scheme> + '_ {
        (0..self.len()).map(move |i| self.scheme(i))
    }
}

/// Reusable buffers for [`SchemeSpace::surface`].
#[derive(Debug, Default)]
pub struct Scratch {
    next: Vec<usize>,
    seen: Vec<bool>,
}

/// All cyclic orders of `0..n`, first element fixed; just the identity when
/// `pinned`.
fn cyclic_orders(n: usize, pinned: bool) -> Vec<Vec<usize>> {
    if pinned || n <= 2 {
        return vec![(0..n).collect()];
    }
    (1..n)
        .permutations(n - 1)
        .map(|rest| std::iter::once(0).chain(rest).collect())
        .collect()
}

/// Segments outside a BFS spanning tree of the flattening.
fn cotree_segments(flat: &Flattening) -> Vec<usize> {
    let n = flat.vertex_count();
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (s, seg) in flat.segments.iter().enumerate() {
        let (t, h) = (flat.node_index(seg.tail), flat.node_index(seg.head));
        incident[t].push((s, h));
        incident[h].push((s, t));
    }
    let mut in_tree = vec![false; flat.segments.len()];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &(s, w) in &incident[v] {
            if !seen[w] {
                seen[w] = true;
                in_tree[s] = true;
                queue.push_back(w);
            }
        }
    }
    (0..flat.segments.len()).filter(|&s| !in_tree[s]).collect()
}

/// Schemes of a configuration's flattening, with the default pinning.
pub fn enumerate_schemes(template: &Drawing, orientable_only: bool) -> SchemeSpace {
    SchemeSpace::new(template, orientable_only)
}

fn realized(rs: &RotationSystem) -> Surface {
    Surface::from_euler_characteristic(rs.euler_characteristic(), rs.is_orientable())
        .expect("traced surfaces are always valid")
}

/// Indices of the schemes of `space` whose drawing fits in `sigma`,
/// stopping after the first hit when `first_only`.
fn realizable_indices(
    space: &SchemeSpace,
    sigma: Surface,
    first_only: bool,
    deadline: &Deadline,
) -> Vec<u128> {
    let mut hits = Vec::new();
    let mut scratch = Scratch::default();
    for i in 0..space.len() {
        if i % 1024 == 0 && deadline.check() {
            break;
        }
        if attachable(space.surface(i, &mut scratch), sigma) {
            hits.push(i);
            if first_only {
                break;
            }
        }
    }
    hits
}

/// Smallest number of crossings of a good drawing of `K_{p,q}` in `sigma`,
/// by exhaustion up to `budget.max_crossings`.
pub fn crossing_number(
    p: usize,
    q: usize,
    sigma: Surface,
    budget: &EnumerationBudget,
) -> SearchOutcome {
    let deadline = budget.deadline();
    budget.install(|| {
        for k in 0..=budget.max_crossings {
            let configs: Vec<CrossingConfig> = enumerate_crossing_configs(p, q, k).collect();
            let found = configs.par_iter().any(|config| {
                if deadline.check() {
                    return false;
                }
                let space = SchemeSpace::new(&config.template(sigma), sigma.is_orientable());
                !realizable_indices(&space, sigma, true, &deadline).is_empty()
            });
            if found {
                return SearchOutcome::Found(k);
            }
            if deadline.expired() {
                return SearchOutcome::Unknown;
            }
        }
        SearchOutcome::Unknown
    })
}

/// First `(config, scheme)` position of each canonical key.
type Found = BTreeMap<CanonicalKey, (usize, u128)>;

/// Deduplicated drawings found by [`enumerate_good_drawings`].
#[derive(Debug, Clone)]
pub struct Enumeration {
    /// One representative per canonical key, sorted by key.
    pub drawings: Vec<(CanonicalKey, Drawing)>,
    pub configs: usize,
    pub schemes: u128,
    /// Set when the time budget ran out before the search finished.
    pub partial: bool,
}

/// All good drawings of `K_{p,q}` in `sigma` with exactly `k` crossings, one
/// per isomorphism class.
pub fn enumerate_good_drawings(
    p: usize,
    q: usize,
    sigma: Surface,
    k: usize,
    budget: &EnumerationBudget,
) -> Enumeration {
    let deadline = budget.deadline();
    budget.install(|| {
        let configs: Vec<CrossingConfig> = enumerate_crossing_configs(p, q, k).collect();
        let per_config: Vec<(u128, Found)> = configs
            .par_iter()
            .enumerate()
            .map(|(ci, config)| {
                let mut found = BTreeMap::new();
                if deadline.check() {
                    return (0, found);
                }
                let space = SchemeSpace::new(&config.template(sigma), sigma.is_orientable());
                for si in realizable_indices(&space, sigma, false, &deadline) {
                    let key = space
                        .template()
                        .canonical_form_of(&space.rotation_system(si));
                    found.entry(key).or_insert((ci, si));
                }
                (space.len(), found)
            })
            .collect();
        let mut best = Found::new();
        let mut schemes = 0;
        for (n, found) in per_config {
            schemes += n;
            for (key, at) in found {
                let slot = best.entry(key).or_insert(at);
                if at < *slot {
                    *slot = at;
                }
            }
        }
        let drawings = best
            .into_iter()
            .map(|(key, (ci, si))| {
                let space = SchemeSpace::new(&configs[ci].template(sigma), sigma.is_orientable());
                (key, space.drawing(si))
            })
            .collect();
        Enumeration {
            drawings,
            configs: configs.len(),
            schemes,
            partial: deadline.expired(),
        }
    })
}

/// Realizable drawings with exactly `k` crossings in search order, without
/// deduplication. Lazy: stops as soon as the caller does.
pub fn realizable_drawings(
    p: usize,
    q: usize,
    sigma: Surface,
    k: usize,
) -> impl Iterator<Item = Drawing> {
    enumerate_crossing_configs(p, q, k).flat_map(move |config| {
        let space = SchemeSpace::new(&config.template(sigma), sigma.is_orientable());
        let never = Deadline {
            end: Instant::now() + Duration::from_secs(u32::MAX as u64),
            expired: AtomicBool::new(false),
        };
        let hits = realizable_indices(&space, sigma, false, &never);
        hits.into_iter()
            .map(move |i| space.drawing(i))
            .collect::<Vec<_>>()
    })
}

/// Minimum genus (orientable) or crosscap number (non-orientable) of
/// `K_{m,n}`, by exhausting the schemes of the crossing-free drawing.
pub fn genus_search(
    m: usize,
    n: usize,
    non_orientable: bool,
    budget: &EnumerationBudget,
) -> SearchOutcome {
    let deadline = budget.deadline();
    let template = CrossingConfig {
        p: m,
        q: n,
        crossings: Vec::new(),
        edge_orders: vec![Vec::new(); m * n],
    }
    .template(Surface::SPHERE);
    let space = SchemeSpace::new(&template, !non_orientable);
    let euler_floor = bipartite_euler_bound((m + n) as u64, (m * n) as u64) as usize;
    // cost of fitting a traced surface into the family being searched
    let cost = |s: Surface| -> usize {
        match (non_orientable, s.is_orientable()) {
            (false, _) => s.genus() as usize,
            (true, true) => s.euler_genus() as usize + 1,
            (true, false) => s.genus() as usize,
        }
    };
    let floor = if non_orientable {
        euler_floor.max(1)
    } else {
        euler_floor.div_ceil(2)
    };
    let total = space.len();
    let chunk: u128 = 4096;
    let chunks = total.div_ceil(chunk);
    let best = std::sync::atomic::AtomicUsize::new(usize::MAX);
    budget.install(|| {
        (0..chunks as u64).into_par_iter().for_each(|c| {
            if deadline.check() || best.load(Ordering::Relaxed) <= floor {
                return;
            }
            let start = c as u128 * chunk;
            let end = (start + chunk).min(total);
            let mut local = usize::MAX;
            let mut scratch = Scratch::default();
            for i in start..end {
                local = local.min(cost(space.surface(i, &mut scratch)));
                if local <= floor {
                    break;
                }
            }
            best.fetch_min(local, Ordering::Relaxed);
        })
    });
    let best = best.into_inner();
    if best <= floor || !deadline.expired() {
        SearchOutcome::Found(best)
    } else {
        SearchOutcome::Unknown
    }
}

#[cfg(test)]
mod tests;
