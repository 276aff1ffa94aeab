use std::time::Instant;

use tverberg_core::constructions::*;
use tverberg_core::geom::in_general_position;
use tverberg_core::tolerance::{
    admits_t_tolerant_partition, failure_witness, is_t_tolerant_exhaustive,
};
use tverberg_core::{Partition, PointSet, SearchMode, ToleranceParams};

fn admits(set: &PointSet, k: usize, t: usize) -> bool {
    admits_t_tolerant_partition(set, ToleranceParams::new(k, t).unwrap(), SearchMode::Pruned)
        .is_some()
}

#[test]
fn polygon_fan_grid_has_no_tolerant_partition() {
    for k in 2..=4usize {
        for t in 1..=3usize {
            for c in 1..=t.min(k / 2) {
                let start = Instant::now();
                let set = polygon_fan(k, t, c, polygon_fan_default_scale(k, t)).unwrap();
                assert_eq!(set.len(), k * (t + 2) + c - 1);
                assert!(in_general_position(&set));
                assert!(!admits(&set, k, t), "k={k} t={t} c={c}");
                eprintln!(
                    "polygon fan k={k} t={t} c={c} n={} {:?}",
                    set.len(),
                    start.elapsed()
                );
            }
        }
    }
}

#[test]
fn convex_plus_three_has_no_tolerant_bipartition() {
    for t in 3..=4 {
        let set = convex_plus_three(t, convex_plus_three_default_scale(t)).unwrap();
        assert_eq!(set.len(), 2 * t + 5);
        assert_eq!(set.hull_size(), 2 * t + 2);
        assert!(!admits(&set, 2, t), "t={t}");
    }
}

#[test]
fn one_more_point_than_the_fan_admits_when_tight() {
    // N(2,2,1) = 7: the 6-point fan fails, and any 7 points succeed.
    let fan = polygon_fan(2, 1, 1, polygon_fan_default_scale(2, 1)).unwrap();
    assert!(!admits(&fan, 2, 1));
    let mut points = fan.into_points();
    points.push(tverberg_core::Point::new(1, -3));
    let bigger = PointSet::new(points).unwrap();
    assert!(admits(&bigger, 2, 1));
}

#[test]
fn fixtures_are_negative() {
    for name in FIXTURE_NAMES {
        let set = fixture(name).unwrap();
        assert_eq!(set.len(), 9);
        assert!(in_general_position(&set), "{name}");
        assert_eq!(Some(set.hull_size()), fixture_hull_size(name), "{name}");
        assert!(!admits(&set, 2, 2), "{name}");
        // still 1-tolerant: nine points exceed N(2,2,1) = 7
        assert!(admits(&set, 2, 1), "{name}");
    }
    assert!(fixture("ot1").is_err());
}

#[test]
fn nine_point_certificate() {
    let set = nine_point_config();
    assert!(in_general_position(&set));
    assert_eq!(set.hull().vertices.len(), 6);
    assert!((0..6).all(|i| set.hull().contains_index(i)));

    for claim in nine_point_claims() {
        assert!(claim.holds(&set), "{claim}");
    }
    assert!(!admits(&set, 2, 2));
    assert!(!admits_brute(&set));

    let q = Partition::from_parts(&[vec![6, 7, 8], vec![0, 1, 2, 3, 4, 5]], 9).unwrap();
    assert_eq!(failure_witness(&set, &q, 2).unwrap().removed, vec![0, 1]);
    let a = Partition::from_parts(&[vec![0, 3, 7, 8], vec![1, 2, 4, 5, 6]], 9).unwrap();
    assert_eq!(failure_witness(&set, &a, 2).unwrap().removed, vec![0, 2]);
}

fn admits_brute(set: &PointSet) -> bool {
    tverberg_core::partition::PartitionIter::new(set.len(), 2, 1)
        .any(|p| is_t_tolerant_exhaustive(set, &p, 2))
}

#[test]
fn claims_fail_on_a_positive_set() {
    // A configuration in convex position is far from satisfying the case
    // analysis, so the claim checker is not vacuous.
    let set = PointSet::from_coords(&[
        (0, 10),
        (7, 7),
        (10, 0),
        (7, -7),
        (0, -10),
        (-7, -7),
        (-10, 0),
        (-7, 7),
        (1, 2),
    ])
    .unwrap();
    assert!(nine_point_claims().iter().any(|c| !c.holds(&set)));
}

#[test]
fn retry_recovers_from_small_scale() {
    let spec = ConstructionSpec {
        family: Family::PolygonFan,
        k: 3,
        t: 2,
        c: 1,
        scale: 4,
    };
    assert!(build(&spec).is_err());
    let set = spec.build_with_retry(20).unwrap();
    assert_eq!(set.len(), 12);
    assert!(!admits(&set, 3, 2));
}
