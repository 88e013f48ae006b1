use super::*;
use crate::duplication::zarankiewicz_drawing;
use crate::enumeration::{sample_config, SchemeSpace};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn planar_k23() -> Drawing {
    Drawing::crossing_free(
        2,
        3,
        Surface::SPHERE,
        vec![vec![0, 1, 2], vec![2, 1, 0]],
        vec![vec![0, 1]; 3],
    )
}

fn planar_k22() -> Drawing {
    Drawing::crossing_free(
        2,
        2,
        Surface::SPHERE,
        vec![vec![0, 1], vec![1, 0]],
        vec![vec![0, 1]; 2],
    )
}

/// A random good drawing: random configuration, random scheme (signs
/// included), placed on whatever surface it traces.
fn random_drawing(p: usize, q: usize, k: usize, seed: u64) -> Option<Drawing> {
    let mut rng = StdRng::seed_from_u64(seed);
    let config = sample_config(p, q, k, |n| rng.gen_range(0..n))?;
    let space = SchemeSpace::with_pinned(&config.template(Surface::SPHERE), false, None);
    let mut d = space.drawing(rng.gen_range(0..space.len()));
    d.surface = d.realized_surface().unwrap();
    Some(d)
}

fn sorted_face_lengths(d: &Drawing) -> Vec<usize> {
    let mut lengths = d.trace_faces().unwrap().face_lengths();
    lengths.sort();
    lengths
}

#[test]
fn planar_k22_has_no_violations() {
    assert!(planar_k22().validate_good().is_empty());
}

#[test]
fn adjacent_crossing_is_reported() {
    let mut d = planar_k23();
    d.crossings
        .push(Crossing::new(Edge::new(0, 0), Edge::new(0, 1)));
    d.orientations.push(0);
    d.edge_orders[0] = vec![0];
    d.edge_orders[1] = vec![0];
    d.signs[0] = vec![1, 1];
    d.signs[1] = vec![1, 1];
    let kinds: Vec<_> = d.validate_good().iter().map(Violation::kind).collect();
    assert_eq!(kinds, ["adjacent-edges-cross"]);
}

#[test]
fn double_crossing_is_reported() {
    let mut d = zarankiewicz_drawing(3, 3).unwrap();
    let x = d.crossings[0];
    d.crossings.push(x);
    d.orientations.push(0);
    for edge in [x.e, x.f] {
        let i = d.context.edge_index(edge);
        d.edge_orders[i].push(1);
        d.signs[i].push(1);
    }
    let kinds: Vec<_> = d.validate_good().iter().map(Violation::kind).collect();
    assert_eq!(kinds, ["pair-crosses-twice"]);
}

#[test]
fn order_mismatch_is_reported() {
    let mut d = zarankiewicz_drawing(3, 3).unwrap();
    let i = d.context.edge_index(d.crossings[0].e);
    d.edge_orders[i].clear();
    d.signs[i] = vec![1];
    assert!(d
        .validate_good()
        .iter()
        .any(|v| v.kind() == "order-mismatch"));
    assert!(d.ensure_good().is_err());
}

#[test]
fn flattening_sizes() {
    let f = zarankiewicz_drawing(3, 3).unwrap().flatten().unwrap();
    assert_eq!((f.vertex_count(), f.edge_count()), (7, 11));
    let f = planar_k22().flatten().unwrap();
    assert_eq!((f.vertex_count(), f.edge_count()), (4, 4));
    let f = zarankiewicz_drawing(3, 4).unwrap().flatten().unwrap();
    assert_eq!((f.vertex_count(), f.edge_count()), (9, 16));
    for c in 0..2 {
        assert_eq!(f.degree(Node::Cross(c)), 4);
    }
}

#[test]
fn planar_k23_traces_three_faces() {
    let t = planar_k23().trace_faces().unwrap();
    assert_eq!(t.faces.len(), 3);
    assert_eq!(t.euler_characteristic, 2);
    assert_eq!(planar_k23().realized_surface().unwrap(), Surface::SPHERE);
}

#[test]
fn crossing_free_k33_is_never_planar() {
    let d = Drawing::crossing_free(
        3,
        3,
        Surface::SPHERE,
        vec![vec![0, 1, 2]; 3],
        vec![vec![0, 1, 2]; 3],
    );
    let space = SchemeSpace::with_pinned(&d, true, None);
    assert_eq!(space.len(), 64);
    let best = (0..space.len())
        .map(|i| space.drawing(i).trace_faces().unwrap().euler_characteristic)
        .max();
    assert_eq!(best, Some(0));
}

#[test]
fn generator_k33_is_spherical() {
    let d = zarankiewicz_drawing(3, 3).unwrap();
    assert_eq!(d.trace_faces().unwrap().euler_characteristic, 2);
    assert_eq!(d.realized_surface().unwrap(), Surface::SPHERE);
}

#[test]
fn toroidal_drawing_embeds_by_attachment() {
    let d = Drawing::crossing_free(
        3,
        3,
        Surface::SPHERE,
        vec![vec![0, 1, 2]; 3],
        vec![vec![0, 1, 2]; 3],
    );
    let space = SchemeSpace::with_pinned(&d, true, None);
    let torus = (0..space.len())
        .map(|i| space.drawing(i))
        .find(|d| d.realized_surface().unwrap() == Surface::TORUS)
        .unwrap();
    assert!(!torus.embeds_in(Surface::SPHERE).unwrap());
    assert!(torus.embeds_in(Surface::TORUS).unwrap());
    assert!(torus
        .embeds_in(Surface::non_orientable(3).unwrap())
        .unwrap());
    assert!(!torus.embeds_in(Surface::KLEIN_BOTTLE).unwrap());
    assert!(zarankiewicz_drawing(3, 3)
        .unwrap()
        .embeds_in(Surface::SPHERE)
        .unwrap());
}

#[test]
fn crossing_counts() {
    assert_eq!(planar_k23().crn(), 0);
    assert_eq!(zarankiewicz_drawing(3, 3).unwrap().crn(), 1);
    assert_eq!(zarankiewicz_drawing(4, 4).unwrap().crn(), 4);
}

#[test]
fn pair_counts_on_small_drawings() {
    let d = planar_k23();
    for (u, v) in [(0, 1), (0, 2), (1, 2)] {
        assert_eq!(d.crn_pair(u, v).unwrap(), 0);
    }
    // b3 is the copy of b1
    let d = zarankiewicz_drawing(3, 3).unwrap();
    assert_eq!(d.crn_pair(0, 2).unwrap(), 1);
    assert_eq!(d.crn_pair(0, 1).unwrap() + d.crn_pair(1, 2).unwrap(), 0);
    // two disjoint duplicated pairs, one crossing each
    let d = zarankiewicz_drawing(3, 4).unwrap();
    let mut heavy = Vec::new();
    for u in 0..4 {
        for v in u + 1..4 {
            match d.crn_pair(u, v).unwrap() {
                0 => {}
                1 => heavy.push((u, v)),
                n => panic!("pair ({u},{v}) has {n} crossings"),
            }
        }
    }
    assert_eq!(heavy, [(0, 2), (1, 3)]);
    assert!(d.crn_pair(1, 1).is_err());
    assert!(d.crn_pair(0, 9).is_err());
}

#[test]
fn deleting_the_copy_leaves_a_planar_drawing() {
    let d = zarankiewicz_drawing(3, 3)
        .unwrap()
        .delete_vertex(2)
        .unwrap();
    assert_eq!(d.crn(), 0);
    assert_eq!(d.q(), 2);
    assert!(d.validate_good().is_empty());
    assert_eq!(d.realized_surface().unwrap(), Surface::SPHERE);
    let e = planar_k23().delete_vertex(1).unwrap();
    assert_eq!(e.crn(), 0);
    assert_eq!(e.context.q_names, ["b1", "b3"]);
}

#[test]
fn canonical_keys() {
    let d = planar_k23();
    let relabeled = d.relabeled(&[1, 0], &[2, 0, 1]);
    assert_eq!(
        d.canonical_form().unwrap(),
        relabeled.canonical_form().unwrap()
    );
    assert_eq!(
        d.canonical_form().unwrap(),
        d.reflected().canonical_form().unwrap()
    );
    let crossing = zarankiewicz_drawing(3, 3).unwrap();
    let torus = Drawing::crossing_free(
        3,
        3,
        Surface::TORUS,
        vec![vec![0, 1, 2]; 3],
        vec![vec![0, 1, 2]; 3],
    );
    assert_ne!(
        crossing.canonical_form().unwrap(),
        torus.canonical_form().unwrap()
    );
}

#[test]
fn json_round_trip() {
    let d = zarankiewicz_drawing(4, 5)
        .unwrap()
        .switched_at(Node::Cross(0));
    let back = Drawing::from_json(&d.to_json()).unwrap();
    assert_eq!(back, d);
    assert_eq!(back.to_json(), d.to_json());
}

#[test]
fn json_sample_parses() {
    let text = r#"{
        "p": 2, "q": 2, "surface": "S0",
        "rotations": {"a1": ["b1", "b2"], "a2": ["b2", "b1"], "b1": ["a1", "a2"], "b2": ["a1", "a2"]}
    }"#;
    let d = Drawing::from_json(text).unwrap();
    assert!(d.validate_good().is_empty());
    assert_eq!(d.realized_surface().unwrap(), Surface::SPHERE);
}

#[test]
fn json_rejects_garbage() {
    assert!(Drawing::from_json("{}").is_err());
    let unknown = r#"{"p": 1, "q": 1, "surface": "S0", "rotations": {"a1": ["c7"]}}"#;
    assert!(matches!(
        Drawing::from_json(unknown),
        Err(DrawingError::UnknownVertex(_))
    ));
    let extra = r#"{"p": 1, "q": 1, "surface": "S0", "rotations": {}, "colour": 3}"#;
    assert!(Drawing::from_json(extra).is_err());
}

#[test]
fn renamed_q_side_survives_json() {
    let mut d = planar_k23();
    d.context.q_names = vec!["x".into(), "y".into(), "z".into()];
    let text = d.to_json();
    assert!(text.contains("q_names"));
    assert_eq!(Drawing::from_json(&text).unwrap(), d);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_formula_and_flag_partition(p in 1usize..=4, q in 1usize..=4, k in 0usize..=4, seed: u64) {
        if let Some(d) = random_drawing(p, q, k, seed) {
            prop_assert!(d.validate_good().is_empty());
            let t = d.trace_faces().unwrap();
            let f = d.flatten().unwrap();
            prop_assert_eq!(t.vertex_count, p + q + k);
            prop_assert_eq!(t.edge_count, p * q + 2 * k);
            prop_assert_eq!(
                t.vertex_count as i64 - t.edge_count as i64 + t.faces.len() as i64,
                d.surface.euler_characteristic()
            );
            let mut flags: Vec<usize> = t.faces.concat();
            flags.sort();
            prop_assert_eq!(flags, (0..4 * f.edge_count()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn switching_changes_nothing(p in 2usize..=4, q in 2usize..=4, k in 0usize..=3, seed: u64, at in 0usize..16) {
        if let Some(d) = random_drawing(p, q, k, seed) {
            let nodes: Vec<Node> = (0..p).map(Node::P).chain((0..q).map(Node::Q)).chain((0..k).map(Node::Cross)).collect();
            let s = d.switched_at(nodes[at % nodes.len()]);
            prop_assert!(s.validate_good().is_empty());
            prop_assert_eq!(sorted_face_lengths(&s), sorted_face_lengths(&d));
            prop_assert_eq!(s.realized_surface().unwrap(), d.realized_surface().unwrap());
            prop_assert_eq!(s.canonical_form().unwrap(), d.canonical_form().unwrap());
        }
    }

    #[test]
    fn keys_ignore_labels_and_mirroring(p in 1usize..=3, q in 1usize..=4, k in 0usize..=3, seed: u64) {
        if let Some(d) = random_drawing(p, q, k, seed) {
            let mut rng = StdRng::seed_from_u64(seed ^ 0x5eed);
            let mut pp: Vec<usize> = (0..p).collect();
            let mut qp: Vec<usize> = (0..q).collect();
            rand::seq::SliceRandom::shuffle(&mut pp[..], &mut rng);
            rand::seq::SliceRandom::shuffle(&mut qp[..], &mut rng);
            let key = d.canonical_form().unwrap();
            prop_assert_eq!(d.relabeled(&pp, &qp).canonical_form().unwrap(), key.clone());
            prop_assert_eq!(d.reflected().canonical_form().unwrap(), key);
        }
    }

    #[test]
    fn pair_counts_sum_to_crn(p in 1usize..=4, q in 2usize..=4, k in 0usize..=4, seed: u64) {
        if let Some(d) = random_drawing(p, q, k, seed) {
            let mut total = 0;
            for u in 0..q {
                for v in u + 1..q {
                    total += d.crn_pair(u, v).unwrap();
                }
            }
            prop_assert_eq!(total, d.crn());
        }
    }

    #[test]
    fn deletion_removes_the_star(p in 1usize..=4, q in 2usize..=4, k in 0usize..=4, seed: u64, u in 0usize..4) {
        if let Some(d) = random_drawing(p, q, k, seed) {
            let u = u % q;
            let e = d.delete_vertex(u).unwrap();
            prop_assert!(e.validate_good().is_empty());
            prop_assert_eq!(e.crn(), d.crn() - d.load(u));
            prop_assert_eq!(e.q(), q - 1);
        }
    }

    #[test]
    fn json_round_trips(p in 1usize..=4, q in 1usize..=4, k in 0usize..=4, seed: u64) {
        if let Some(d) = random_drawing(p, q, k, seed) {
            prop_assert_eq!(Drawing::from_json(&d.to_json()).unwrap(), d);
        }
    }
}
