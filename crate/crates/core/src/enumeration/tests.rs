use super::*;
use crate::duplication::zarankiewicz_drawing;

fn budget() -> EnumerationBudget {
    EnumerationBudget::default()
}

fn crossing_free(p: usize, q: usize) -> Drawing {
    CrossingConfig {
        p,
        q,
        crossings: vec![],
        edge_orders: vec![vec![]; p * q],
    }
    .template(Surface::SPHERE)
}

#[test]
fn config_counts() {
    assert_eq!(enumerate_crossing_configs(3, 3, 0).count(), 1);
    assert_eq!(enumerate_crossing_configs(2, 2, 1).count(), 2);
    assert_eq!(enumerate_crossing_configs(3, 3, 1).count(), 18);
    assert_eq!(independent_pairs(3, 4).len(), 36);
    // 15 pair sets; the 6 that cross one edge twice have two orders
    assert_eq!(independent_pairs(2, 3).len(), 6);
    assert_eq!(enumerate_crossing_configs(2, 3, 2).count(), 15 + 6);
}

#[test]
fn scheme_counts() {
    let d = crossing_free(2, 3);
    assert_eq!(
        SchemeSpace::with_pinned(&d, true, Some(Node::Q(0))).len(),
        4
    );
    assert_eq!(enumerate_schemes(&d, true).len(), 2);
    assert_eq!(SchemeSpace::with_pinned(&d, true, None).len(), 4);

    let k33 = zarankiewicz_drawing(3, 3).unwrap();
    let flat = SchemeSpace::with_pinned(&crossing_free(3, 3), true, None).len();
    assert_eq!(SchemeSpace::with_pinned(&k33, true, None).len(), 2 * flat);

    // cotree size is E − V + 1 of the flattening
    let oriented = SchemeSpace::new(&k33, true).len();
    assert_eq!(
        SchemeSpace::new(&k33, false).len(),
        oriented << (11 - 7 + 1)
    );
}

#[test]
fn scheme_decoding_is_consistent() {
    let k33 = zarankiewicz_drawing(3, 3).unwrap();
    let space = SchemeSpace::new(&k33, false);
    let mut scratch = Scratch::default();
    for i in (0..space.len()).step_by(37) {
        let d = space.drawing(i);
        assert!(d.validate_good().is_empty());
        assert_eq!(
            d.realized_surface().unwrap(),
            space.surface(i, &mut scratch)
        );
        assert_eq!(space.scheme(i).apply(space.template()), d);
    }
    assert_eq!(space.iter().count() as u128, space.len());
}

#[test]
fn small_crossing_numbers() {
    assert_eq!(
        crossing_number(3, 3, Surface::SPHERE, &budget()),
        SearchOutcome::Found(1)
    );
    assert_eq!(
        crossing_number(3, 3, Surface::TORUS, &budget()),
        SearchOutcome::Found(0)
    );
    assert_eq!(
        crossing_number(3, 3, Surface::PROJECTIVE_PLANE, &budget()),
        SearchOutcome::Found(0)
    );
    for q in 1..=4 {
        assert_eq!(
            crossing_number(2, q, Surface::SPHERE, &budget()),
            SearchOutcome::Found(0)
        );
    }
}

#[test]
fn exhausted_budget_is_unknown() {
    let tight = EnumerationBudget {
        max_crossings: 0,
        ..budget()
    };
    assert_eq!(
        crossing_number(3, 3, Surface::SPHERE, &tight),
        SearchOutcome::Unknown
    );
    let no_time = EnumerationBudget {
        max_seconds: 0,
        ..budget()
    };
    assert_eq!(
        crossing_number(3, 4, Surface::SPHERE, &no_time),
        SearchOutcome::Unknown
    );
    assert!(enumerate_good_drawings(3, 4, Surface::SPHERE, 2, &no_time).partial);
}

#[test]
fn enumerated_classes() {
    let count = |p, q, s, k| {
        enumerate_good_drawings(p, q, s, k, &budget())
            .drawings
            .len()
    };
    assert_eq!(count(2, 2, Surface::SPHERE, 0), 1);
    assert_eq!(count(3, 3, Surface::SPHERE, 0), 0);
    assert_eq!(count(3, 3, Surface::SPHERE, 1), 1);
    assert_eq!(count(3, 3, Surface::TORUS, 0), 2);
    assert_eq!(count(3, 3, Surface::PROJECTIVE_PLANE, 0), 1);
}

#[test]
fn enumeration_is_sorted_and_valid() {
    let e = enumerate_good_drawings(3, 4, Surface::SPHERE, 2, &budget());
    assert_eq!(e.drawings.len(), 2);
    assert!(!e.partial);
    assert!(e.drawings.windows(2).all(|w| w[0].0 < w[1].0));
    for (key, d) in &e.drawings {
        assert!(d.validate_good().is_empty());
        assert!(d.embeds_in(Surface::SPHERE).unwrap());
        assert_eq!(&d.canonical_form().unwrap(), key);
    }
}

#[test]
fn worker_count_does_not_change_output() {
    let one = EnumerationBudget {
        parallelism: 1,
        ..budget()
    };
    let three = EnumerationBudget {
        parallelism: 3,
        ..budget()
    };
    let a = enumerate_good_drawings(3, 3, Surface::KLEIN_BOTTLE, 1, &one);
    let b = enumerate_good_drawings(3, 3, Surface::KLEIN_BOTTLE, 1, &three);
    assert!(!a.drawings.is_empty());
    assert_eq!(a.drawings, b.drawings);
}

#[test]
fn genus_searches() {
    assert_eq!(
        genus_search(3, 3, false, &budget()),
        SearchOutcome::Found(1)
    );
    assert_eq!(
        genus_search(2, 5, false, &budget()),
        SearchOutcome::Found(0)
    );
    assert_eq!(genus_search(3, 4, true, &budget()), SearchOutcome::Found(1));
    assert_eq!(genus_search(3, 3, true, &budget()), SearchOutcome::Found(1));
}

#[test]
fn sampling() {
    assert!(sample_config(2, 2, 3, |_| 0).is_none());
    let c = sample_config(3, 3, 2, |_| 0).unwrap();
    assert_eq!(c.crossings.len(), 2);
    assert!(c.template(Surface::SPHERE).validate_good().is_empty());
}
