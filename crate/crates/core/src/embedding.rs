//! Signed rotation systems (embedding schemes) of connected multigraphs.
//!
//! An edge `e` owns the two darts `2e` and `2e + 1`; dart `2e` starts at the
//! edge's tail and `2e + 1` at its head. Each vertex lists its darts in
//! cyclic order, and each edge carries a sign. Faces are traced on *flags*
//! (a dart together with one of its two sides), so the same code handles
//! orientable and non-orientable schemes:
//!
//! * `flip_end` moves a flag to the other end of its edge, keeping the
//!   geometric side for a negative edge and swapping it for a positive one;
//! * `turn` moves a flag across a corner to the neighbouring dart in the
//!   rotation;
//! * `flip_side` swaps the side.
//!
//! Faces are the orbits of `<flip_end, turn>`, each face of length `L`
//! contributing `2L` flags.

use std::collections::VecDeque;

/// A dart together with a side bit, packed as `2 * dart + side`.
pub type Flag = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    dart_vertex: Vec<usize>,
    rotations: Vec<Vec<usize>>,
    signs: Vec<i8>,
    next: Vec<usize>,
    prev: Vec<usize>,
}

/// Result of tracing the faces of a signed rotation system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceTrace {
    /// Closed facial walks; each is the cyclic flag sequence of one face.
    pub faces: Vec<Vec<Flag>>,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub euler_characteristic: i64,
    /// Whether the signs are switching-equivalent to all positive.
    pub realized_orientable: bool,
}

impl FaceTrace {
    /// Number of edge traversals in each face.
    pub fn face_lengths(&self) -> Vec<usize> {
        self.faces.iter().map(|f| f.len() / 2).collect()
    }
}

impl RotationSystem {
    /// Builds a rotation system from per-vertex dart cycles and per-edge
    /// signs. Every dart `0..2 * signs.len()` must occur in exactly one
    /// rotation.
    pub fn new(rotations: Vec<Vec<usize>>, signs: Vec<i8>) -> Self {
        let darts = 2 * signs.len();
        let mut dart_vertex = vec![usize::MAX; darts];
        let mut next = vec![usize::MAX; darts];
        let mut prev = vec![usize::MAX; darts];
        for (v, rot) in rotations.iter().enumerate() {
            let k = rot.len();
            for (i, &d) in rot.iter().enumerate() {
                assert!(d < darts, "dart {d} out of range");
                assert_eq!(dart_vertex[d], usize::MAX, "dart {d} listed twice");
                dart_vertex[d] = v;
                next[d] = rot[(i + 1) % k];
                prev[d] = rot[(i + k - 1) % k];
            }
        }
        assert!(
            dart_vertex.iter().all(|&v| v != usize::MAX),
            "dart missing from rotations"
        );
        RotationSystem {
            dart_vertex,
            rotations,
            signs,
            next,
            prev,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.signs.len()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn sign(&self, edge: usize) -> i8 {
        self.signs[edge]
    }

    pub fn dart_vertex(&self, dart: usize) -> usize {
        self.dart_vertex[dart]
    }

    pub fn flag_vertex(&self, flag: Flag) -> usize {
        self.dart_vertex[flag >> 1]
    }

    #[inline]
    pub fn flip_end(&self, flag: Flag) -> Flag {
        let dart = flag >> 1;
        let side = flag & 1;
        let rev = dart ^ 1;
        if self.signs[dart >> 1] > 0 {
            (rev << 1) | (side ^ 1)
        } else {
            (rev << 1) | side
        }
    }

    #[inline]
    pub fn turn(&self, flag: Flag) -> Flag {
        let dart = flag >> 1;
        if flag & 1 == 1 {
            self.next[dart] << 1
        } else {
            (self.prev[dart] << 1) | 1
        }
    }

    #[inline]
    pub fn flip_side(&self, flag: Flag) -> Flag {
        flag ^ 1
    }

    fn flag_count(&self) -> usize {
        4 * self.signs.len()
    }

    /// Number of faces of the cellular embedding.
    pub fn count_faces(&self) -> usize {
        let mut seen = vec![false; self.flag_count()];
        let mut faces = 0;
        for start in 0..seen.len() {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut f = start;
            loop {
                seen[f] = true;
                let g = self.flip_end(f);
                seen[g] = true;
                f = self.turn(g);
                if f == start {
                    break;
                }
            }
        }
        faces
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.count_faces() as i64
    }

    /// Orientability via spanning-tree normalisation: assign each vertex a
    /// switching sign along a BFS tree, then every remaining edge must agree.
    pub fn is_orientable(&self) -> bool {
        let n = self.vertex_count();
        let mut state = vec![0i8; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            if state[root] != 0 {
                continue;
            }
            state[root] = 1;
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                for &d in &self.rotations[v] {
                    let w = self.dart_vertex[d ^ 1];
                    let want = state[v] * self.signs[d >> 1];
                    if state[w] == 0 {
                        state[w] = want;
                        queue.push_back(w);
                    } else if state[w] != want {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn trace_faces(&self) -> FaceTrace {
        let mut seen = vec![false; self.flag_count()];
        let mut faces = Vec::new();
        for start in 0..seen.len() {
            if seen[start] {
                continue;
            }
            let mut walk = Vec::new();
            let mut f = start;
            loop {
                seen[f] = true;
                walk.push(f);
                let g = self.flip_end(f);
                seen[g] = true;
                walk.push(g);
                f = self.turn(g);
                if f == start {
                    break;
                }
            }
            faces.push(walk);
        }
        let euler_characteristic =
            self.vertex_count() as i64 - self.edge_count() as i64 + faces.len() as i64;
        FaceTrace {
            faces,
            vertex_count: self.vertex_count(),
            edge_count: self.edge_count(),
            euler_characteristic,
            realized_orientable: self.is_orientable(),
        }
    }

    /// Local switch at `v`: reverse its rotation and negate the signs of
    /// its incident edges. Loops keep their sign.
    pub fn switch_vertex(&self, v: usize) -> RotationSystem {
        let mut rotations = self.rotations.clone();
        rotations[v].reverse();
        let mut signs = self.signs.clone();
        for (e, s) in signs.iter_mut().enumerate() {
            let at_tail = self.dart_vertex[2 * e] == v;
            let at_head = self.dart_vertex[2 * e + 1] == v;
            if at_tail != at_head {
                *s = -*s;
            }
        }
        RotationSystem::new(rotations, signs)
    }

    /// Isomorphism-invariant code of the underlying map with coloured
    /// vertices: the lexicographically least breadth-first labelling of the
    /// flags, over all starting flags at vertices of the smallest colour.
    ///
    /// Two connected systems get equal codes iff some colour-preserving
    /// bijection maps one map onto the other; switching and global
    /// reflection are such bijections, so they do not change the code.
    pub fn canonical_code(&self, colors: &[u32]) -> Vec<u32> {
        assert_eq!(colors.len(), self.vertex_count());
        let min_color = colors.iter().copied().min().unwrap_or(0);
        let flags = self.flag_count();
        let mut best: Option<Vec<u32>> = None;
        let mut label = vec![u32::MAX; flags];
        let mut order = Vec::with_capacity(flags);
        let mut code = Vec::with_capacity(4 * flags);
        for start in 0..flags {
            if colors[self.flag_vertex(start)] != min_color {
                continue;
            }
            label.iter_mut().for_each(|l| *l = u32::MAX);
            order.clear();
            code.clear();
            label[start] = 0;
            order.push(start);
            let mut i = 0;
            let mut worse = false;
            // true once the code so far is strictly smaller than `best`
            let mut better = best.is_none();
            while i < order.len() {
                let f = order[i];
                let step = [
                    colors[self.flag_vertex(f)],
                    self.label_of(self.flip_end(f), &mut label, &mut order),
                    self.label_of(self.turn(f), &mut label, &mut order),
                    self.label_of(self.flip_side(f), &mut label, &mut order),
                ];
                for x in step {
                    if !better {
                        let b = best.as_ref().unwrap()[code.len()];
                        if x > b {
                            worse = true;
                            break;
                        }
                        if x < b {
                            better = true;
                        }
                    }
                    code.push(x);
                }
                if worse {
                    break;
                }
                i += 1;
            }
            if !worse && better {
                best = Some(code.clone());
            }
        }
        best.unwrap_or_default()
    }

    fn label_of(&self, flag: Flag, label: &mut [u32], order: &mut Vec<Flag>) -> u32 {
        if label[flag] == u32::MAX {
            label[flag] = order.len() as u32;
            order.push(flag);
        }
        label[flag]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Planar theta graph: two vertices joined by three edges, rotations
    // reversed at the second vertex.
    fn theta(rot_b: [usize; 3]) -> RotationSystem {
        let a = vec![0, 2, 4];
        let b = rot_b.iter().map(|&e| 2 * e + 1).collect();
        RotationSystem::new(vec![a, b], vec![1, 1, 1])
    }

    #[test]
    fn planar_theta() {
        let r = theta([2, 1, 0]);
        assert_eq!(r.count_faces(), 3);
        assert_eq!(r.euler_characteristic(), 2);
        assert!(r.is_orientable());
    }

    #[test]
    fn toroidal_theta() {
        let r = theta([0, 1, 2]);
        assert_eq!(r.count_faces(), 1);
        assert_eq!(r.euler_characteristic(), 0);
    }

    #[test]
    fn projective_loop() {
        // one vertex, one negative loop: a Möbius band capped to RP^2
        let r = RotationSystem::new(vec![vec![0, 1]], vec![-1]);
        assert!(!r.is_orientable());
        assert_eq!(r.euler_characteristic(), 1);
        let pos = RotationSystem::new(vec![vec![0, 1]], vec![1]);
        assert!(pos.is_orientable());
        assert_eq!(pos.euler_characteristic(), 2);
    }

    #[test]
    fn flags_partitioned_by_faces() {
        let r = theta([2, 1, 0]).switch_vertex(1);
        let t = r.trace_faces();
        let mut all: Vec<Flag> = t.faces.concat();
        all.sort_unstable();
        assert_eq!(all, (0..12).collect::<Vec<_>>());
        assert_eq!(t.euler_characteristic, 2);
        assert!(t.realized_orientable);
    }

    #[test]
    fn switching_and_relabeling_keep_code() {
        let r = theta([2, 1, 0]);
        let colors = [0, 1];
        let code = r.canonical_code(&colors);
        assert_eq!(r.switch_vertex(0).canonical_code(&colors), code);
        assert_eq!(
            r.switch_vertex(1).switch_vertex(0).canonical_code(&colors),
            code
        );
        assert_ne!(theta([0, 1, 2]).canonical_code(&colors), code);
        // relabel the edges
        let relabeled = RotationSystem::new(vec![vec![2, 4, 0], vec![3, 1, 5]], vec![1, 1, 1]);
        assert_eq!(relabeled.canonical_code(&colors), code);
    }

    #[test]
    fn colors_matter() {
        let r = theta([2, 1, 0]);
        assert_ne!(r.canonical_code(&[0, 1]), r.canonical_code(&[0, 0]));
    }
}
