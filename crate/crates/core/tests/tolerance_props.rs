mod common;

use itertools::Itertools;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{collinear, common_point_oracle, general_position_set, point_set};
use tverberg_core::partition::PartitionIter;
use tverberg_core::tolerance::*;
use tverberg_core::{Partition, Point, PointSet, SearchMode, ToleranceParams};

fn params(k: usize, t: usize) -> ToleranceParams {
    ToleranceParams::new(k, t).unwrap()
}

/// Tolerance straight from the definition, with every hull test done by the
/// rational oracle.
fn tolerant_oracle(set: &PointSet, part: &Partition, t: usize) -> bool {
    let n = set.len();
    (0..=t.min(n)).all(|r| {
        (0..n).combinations(r).all(|y| {
            let parts: Vec<Vec<Point>> = part
                .parts()
                .iter()
                .map(|p| {
                    p.iter()
                        .filter(|i| !y.contains(i))
                        .map(|&i| set[i])
                        .collect()
                })
                .collect();
            common_point_oracle(&parts)
        })
    })
}

/// Random sets mixing general position and small grids with collinear
/// triples.
fn random_set(rng: &mut ChaCha8Rng, n: usize) -> PointSet {
    if rng.gen_bool(0.5) {
        general_position_set(rng, n, 65536)
    } else {
        let mut pts = Vec::new();
        while pts.len() < n {
            let p = Point::new(rng.gen_range(0..5), rng.gen_range(0..5));
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        PointSet::new(pts).unwrap()
    }
}

fn random_partition(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Partition {
    loop {
        let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
        if let Ok(p) = Partition::new(&labels, k) {
            return p;
        }
    }
}

#[test]
fn decision_matches_oracle_on_small_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..150 {
        let n = rng.gen_range(3..=7);
        let k = rng.gen_range(1..=3.min(n));
        let t = rng.gen_range(0..=2);
        let set = random_set(&mut rng, n);
        let part = random_partition(&mut rng, n, k);
        assert_eq!(
            is_t_tolerant(&set, &part, t),
            tolerant_oracle(&set, &part, t),
            "{set:?} {part} t={t}"
        );
    }
}

#[test]
fn removing_more_points_only_hurts() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..250 {
        let n = rng.gen_range(4..=10);
        let k = rng.gen_range(2..=3);
        let set = random_set(&mut rng, n);
        let part = random_partition(&mut rng, n, k);
        for t in 0..=3 {
            let fast = is_t_tolerant(&set, &part, t);
            assert_eq!(fast, is_t_tolerant_exhaustive(&set, &part, t));
            if fast && t > 0 {
                assert!(is_t_tolerant(&set, &part, t - 1));
            }
        }
    }
}

#[test]
fn witnesses_are_minimal_and_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let n = rng.gen_range(4..=9);
        let k = rng.gen_range(2..=3);
        let t = rng.gen_range(1..=2);
        let set = random_set(&mut rng, n);
        let part = random_partition(&mut rng, n, k);
        match failure_witness(&set, &part, t) {
            None => assert!(is_t_tolerant_exhaustive(&set, &part, t)),
            Some(w) => {
                assert!(w.removed.len() <= t);
                assert!(verify_witness(&set, &part, t, &w));
                let parts: Vec<Vec<Point>> = part
                    .parts()
                    .iter()
                    .map(|p| {
                        p.iter()
                            .filter(|i| !w.removed.contains(i))
                            .map(|&i| set[i])
                            .collect()
                    })
                    .collect();
                assert!(!common_point_oracle(&parts));
                if !w.removed.is_empty() {
                    assert!(is_t_tolerant(&set, &part, w.removed.len() - 1));
                }
            }
        }
    }
}

#[test]
fn pruning_never_discards_a_tolerant_partition() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut fired = 0;
    for _ in 0..120 {
        let n = rng.gen_range(8..=9);
        let t = rng.gen_range(1..=2);
        let set = random_set(&mut rng, n);
        for part in PartitionIter::new(n, 2, 1) {
            if prune_reason(&set, &part, t).is_some() {
                fired += 1;
                assert!(!is_t_tolerant_exhaustive(&set, &part, t), "{set:?} {part}");
            }
        }
    }
    assert!(fired > 0);
}

#[test]
fn pruned_and_brute_search_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut yes, mut no) = (0, 0);
    for round in 0..260 {
        let (n, k, t) = if round % 5 == 4 {
            (rng.gen_range(6..=8), 3, 1)
        } else {
            (rng.gen_range(7..=9), 2, rng.gen_range(1..=2))
        };
        let set = random_set(&mut rng, n);
        let pruned = admits_t_tolerant_partition(&set, params(k, t), SearchMode::Pruned);
        let brute = admits_t_tolerant_partition(&set, params(k, t), SearchMode::Brute);
        assert_eq!(pruned.is_some(), brute.is_some(), "{set:?} k={k} t={t}");
        match pruned {
            Some(p) => {
                yes += 1;
                assert!(is_t_tolerant_exhaustive(&set, &p, t));
            }
            None => no += 1,
        }
    }
    // both answers must actually occur for the comparison to mean anything
    assert!(yes > 20 && no > 20, "yes={yes} no={no}");
}

#[test]
fn collinear_threshold() {
    for k in 2..=3 {
        for t in 1..=2 {
            let m = k * (t + 2) - 1;
            for (n, expected) in [(m - 1, false), (m, true)] {
                let set = collinear(n);
                for mode in [SearchMode::Pruned, SearchMode::Brute] {
                    assert_eq!(
                        admits_t_tolerant_partition(&set, params(k, t), mode).is_some(),
                        expected,
                        "k={k} t={t} n={n} {mode:?}"
                    );
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn admitting_is_monotone(set in point_set(60, 6..=9), extra in (60i64..90, 0i64..90), t in 1usize..=2) {
        let p = params(2, t);
        if admits_t_tolerant_partition(&set, p, SearchMode::Pruned).is_some() {
            let mut pts = set.points().to_vec();
            pts.push(Point::new(extra.0, extra.1));
            let bigger = PointSet::new(pts).unwrap();
            prop_assert!(admits_t_tolerant_partition(&bigger, p, SearchMode::Pruned).is_some());
            prop_assert!(admits_t_tolerant_partition(&set, params(2, t - 1), SearchMode::Pruned).is_some());
        }
    }

    #[test]
    fn answer_ignores_labels_and_affine_maps(set in point_set(200, 7..=9), seed in any::<u64>(),
                                            dx in -1000i64..1000, s in 1i64..20, t in 1usize..=2) {
        let p = params(2, t);
        let base = admits_t_tolerant_partition(&set, p, SearchMode::Pruned).is_some();

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pts = set.points().to_vec();
        for i in (1..pts.len()).rev() {
            pts.swap(i, rng.gen_range(0..=i));
        }
        let shuffled = PointSet::new(pts).unwrap();
        prop_assert_eq!(admits_t_tolerant_partition(&shuffled, p, SearchMode::Pruned).is_some(), base);

        let moved = set.scaled(s).unwrap().translated(dx, -dx).unwrap();
        prop_assert_eq!(admits_t_tolerant_partition(&moved, p, SearchMode::Pruned).is_some(), base);
        let mirrored = PointSet::new(set.iter().map(|q| Point::new(-q.x, q.y)).collect()).unwrap();
        prop_assert_eq!(admits_t_tolerant_partition(&mirrored, p, SearchMode::Pruned).is_some(), base);
    }

    #[test]
    fn tolerance_ignores_relabeling(set in point_set(30, 5..=8), seed in any::<u64>(), t in 0usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = set.len();
        let part = random_partition(&mut rng, n, 2);
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        // point perm[i] of the new set is point i of the old one
        let mut pts = vec![Point::new(0, 0); n];
        let mut labels = vec![0; n];
        for i in 0..n {
            pts[perm[i]] = set[i];
            labels[perm[i]] = part.part_of(i);
        }
        let relabeled = Partition::new(&labels, 2).unwrap();
        prop_assert_eq!(
            is_t_tolerant(&PointSet::new(pts).unwrap(), &relabeled, t),
            is_t_tolerant(&set, &part, t)
        );
    }
}
