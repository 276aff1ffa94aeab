//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use num::{BigInt, BigRational, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

use tverberg_core::geom::in_general_position;
use tverberg_core::{Point, PointSet};

type Q = BigRational;

fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

#[derive(Clone, Debug)]
struct QPoint {
    x: Q,
    y: Q,
}

impl From<Point> for QPoint {
    fn from(p: Point) -> Self {
        QPoint {
            x: q(p.x),
            y: q(p.y),
        }
    }
}

fn cross(a: &QPoint, b: &QPoint, c: &QPoint) -> Q {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

fn on_segment(a: &QPoint, b: &QPoint, z: &QPoint) -> bool {
    cross(a, b, z).is_zero()
        && z.x >= a.x.clone().min(b.x.clone())
        && z.x <= a.x.clone().max(b.x.clone())
        && z.y >= a.y.clone().min(b.y.clone())
        && z.y <= a.y.clone().max(b.y.clone())
}

fn in_triangle(a: &QPoint, b: &QPoint, c: &QPoint, z: &QPoint) -> bool {
    let d = [cross(a, b, z), cross(b, c, z), cross(c, a, z)];
    let area = cross(a, b, c);
    if area.is_zero() {
        return on_segment(a, b, z) || on_segment(b, c, z) || on_segment(a, c, z);
    }
    d.iter().all(|v| !v.is_negative()) || d.iter().all(|v| !v.is_positive())
}

/// Membership in `conv(set)` by Caratheodory: some (possibly degenerate)
/// triangle of `set` contains `z`.
fn in_hull(set: &[QPoint], z: &QPoint) -> bool {
    let n = set.len();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                if in_triangle(&set[i], &set[j], &set[k], z) {
                    return true;
                }
            }
        }
    }
    false
}

fn line_meet(a: &QPoint, b: &QPoint, c: &QPoint, d: &QPoint) -> Option<QPoint> {
    let (r1, r2) = (&b.x - &a.x, &b.y - &a.y);
    let (s1, s2) = (&d.x - &c.x, &d.y - &c.y);
    let den = &r1 * &s2 - &r2 * &s1;
    if den.is_zero() {
        return None;
    }
    let u = ((&c.x - &a.x) * &s2 - (&c.y - &a.y) * &s1) / den;
    Some(QPoint {
        x: &a.x + &u * &r1,
        y: &a.y + &u * &r2,
    })
}

/// Whether the hulls of `sets` share a point. The intersection, when nonempty,
/// is a polygon whose vertices are input points or meets of two lines through
/// input points, so testing those candidates is exact.
pub fn common_point_oracle(sets: &[Vec<Point>]) -> bool {
    if sets.iter().any(|s| s.is_empty()) {
        return false;
    }
    let qsets: Vec<Vec<QPoint>> = sets
        .iter()
        .map(|s| s.iter().map(|&p| p.into()).collect())
        .collect();
    let all: Vec<QPoint> = qsets.iter().flatten().cloned().collect();
    let member = |z: &QPoint| qsets.iter().all(|s| in_hull(s, z));
    if all.iter().any(member) {
        return true;
    }
    let segs: Vec<(usize, &QPoint, &QPoint)> = qsets
        .iter()
        .enumerate()
        .flat_map(|(si, s)| {
            (0..s.len()).flat_map(move |i| (i + 1..s.len()).map(move |j| (si, &s[i], &s[j])))
        })
        .collect();
    for (x, &(si, a, b)) in segs.iter().enumerate() {
        for &(sj, c, d) in &segs[x + 1..] {
            if si == sj {
                continue;
            }
            if let Some(z) = line_meet(a, b, c, d) {
                if member(&z) {
                    return true;
                }
            }
        }
    }
    false
}

/// Distinct points with coordinates in `0..range`.
pub fn points(range: i64, n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::btree_set((0..range, 0..range), n)
        .prop_map(|s| {
            s.into_iter()
                .map(|(x, y)| Point::new(x, y))
                .collect::<Vec<_>>()
        })
        .prop_shuffle()
}

pub fn point_set(
    range: i64,
    n: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = PointSet> {
    points(range, n).prop_map(|p| PointSet::new(p).unwrap())
}

/// Random general-position set of `n` points in `0..range`.
pub fn general_position_set<R: Rng>(rng: &mut R, n: usize, range: i64) -> PointSet {
    loop {
        let mut pts: Vec<Point> = Vec::with_capacity(n);
        while pts.len() < n {
            let p = Point::new(rng.gen_range(0..range), rng.gen_range(0..range));
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        if in_general_position(&pts) {
            return PointSet::new(pts).unwrap();
        }
    }
}

/// `n` points on one line, in order.
pub fn collinear(n: usize) -> PointSet {
    PointSet::new(
        (0..n as i64)
            .map(|i| Point::new(3 * i, 2 * i + 1))
            .collect(),
    )
    .unwrap()
}

/// Points of `points` inside and outside `mask`.
pub fn split(points: &[Point], mask: u64) -> (Vec<Point>, Vec<Point>) {
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for (i, &p) in points.iter().enumerate() {
        if mask >> i & 1 == 1 {
            inside.push(p);
        } else {
            outside.push(p);
        }
    }
    (inside, outside)
}

/// Every nonempty proper subset of `points` whose hull misses the hull of its
/// complement.
pub fn separable_subsets(points: &[Point]) -> Vec<u64> {
    let full = (1u64 << points.len()) - 1;
    (1..full)
        .filter(|&m| {
            let (a, b) = split(points, m);
            !common_point_oracle(&[a, b])
        })
        .collect()
}

/// Environment variable naming the nine-point order-type database.
pub const DB_ENV: &str = "TVERBERG_DB";

/// The database path, or `None` after printing why database checks are skipped.
pub fn database_path() -> Option<std::path::PathBuf> {
    match std::env::var_os(DB_ENV).map(std::path::PathBuf::from) {
        Some(p) if p.is_file() => Some(p),
        Some(p) => {
            eprintln!("SKIPPED: {DB_ENV}={} is not a file", p.display());
            None
        }
        None => {
            eprintln!("SKIPPED: set {DB_ENV} to the 9-point order-type database to run this check");
            None
        }
    }
}

/// Writes `sets` as a little-endian database file.
pub fn synthetic_db(sets: &[PointSet]) -> tempfile::NamedTempFile {
    use std::io::Write;
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(
        &tverberg_core::db::encode_records(sets, tverberg_core::db::ByteOrder::Little).unwrap(),
    )
    .unwrap();
    f.flush().unwrap();
    f
}
