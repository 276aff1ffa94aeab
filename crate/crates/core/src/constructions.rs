//! Explicit lower-bound configurations with integer coordinates.
//!
//! Each generator checks, exactly, the geometric side conditions its
//! non-tolerance argument relies on and reports [`Error::ConstructionFailed`]
//! when rounding at the requested scale breaks one of them.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{
    hulls_disjoint, in_general_position, orient_unchecked, Orientation, Point, PointSet,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// Regular polygon on `k(t+2) - 1` vertices plus `c` points near its center.
    PolygonFan,
    /// `2t + 2` points in convex position plus three points near alternate edges.
    ConvexPlusThree,
    /// The fixed nine-point set with no 2-tolerant bipartition.
    NinePoint,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "polygon-fan" => Ok(Family::PolygonFan),
            "convex-plus-three" => Ok(Family::ConvexPlusThree),
            "nine" | "nine-point" => Ok(Family::NinePoint),
            other => Err(Error::InvalidParameters(format!(
                "unknown construction family `{other}`"
            ))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::PolygonFan => "polygon-fan",
            Family::ConvexPlusThree => "convex-plus-three",
            Family::NinePoint => "nine",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionSpec {
    pub family: Family,
    pub k: usize,
    pub t: usize,
    pub c: usize,
    pub scale: i64,
}

impl ConstructionSpec {
    pub fn validate(&self) -> Result<()> {
        if self.scale <= 0 {
            return Err(Error::InvalidParameters("scale must be positive".into()));
        }
        match self.family {
            Family::PolygonFan => {
                if self.c < 1 || self.k < 2 * self.c || self.t < self.c {
                    return Err(Error::InvalidParameters(format!(
                        "polygon-fan needs c >= 1, k >= 2c and t >= c (got k={}, t={}, c={})",
                        self.k, self.t, self.c
                    )));
                }
            }
            Family::ConvexPlusThree => {
                if self.t < 3 {
                    return Err(Error::InvalidParameters(format!(
                        "convex-plus-three needs t >= 3 (got t={})",
                        self.t
                    )));
                }
            }
            Family::NinePoint => {}
        }
        Ok(())
    }

    /// Builds at `scale`, doubling it on failure up to `retries` times.
    pub fn build_with_retry(&self, retries: u32) -> Result<PointSet> {
        let mut spec = *self;
        let mut last = None;
        for _ in 0..=retries {
            match build(&spec) {
                Err(e @ Error::ConstructionFailed { .. }) => {
                    last = Some(e);
                    spec.scale = spec.scale.saturating_mul(2);
                }
                other => return other,
            }
        }
        Err(last.expect("at least one attempt"))
    }
}

pub fn build(spec: &ConstructionSpec) -> Result<PointSet> {
    spec.validate()?;
    match spec.family {
        Family::PolygonFan => polygon_fan(spec.k, spec.t, spec.c, spec.scale),
        Family::ConvexPlusThree => convex_plus_three(spec.t, spec.scale),
        Family::NinePoint => Ok(nine_point_config()),
    }
}

/// Rounded vertices of a regular `m`-gon of circumradius `radius`, clockwise
/// from the top.
fn regular_polygon_clockwise(m: usize, radius: i64) -> Vec<Point> {
    (0..m)
        .map(|i| {
            let theta = PI / 2.0 - 2.0 * PI * i as f64 / m as f64;
            let r = radius as f64;
            Point::new(
                (r * theta.cos()).round() as i64,
                (r * theta.sin()).round() as i64,
            )
        })
        .collect()
}

fn failed(scale: i64, reason: impl Into<String>) -> Error {
    Error::ConstructionFailed {
        scale,
        reason: reason.into(),
    }
}

/// Consecutive triples turn clockwise all the way around.
fn strictly_convex_clockwise(ring: &[Point]) -> bool {
    let m = ring.len();
    (0..m).all(|i| {
        orient_unchecked(ring[i], ring[(i + 1) % m], ring[(i + 2) % m]) == Orientation::Clockwise
    })
}

fn strictly_inside_triangle(p: Point, a: Point, b: Point, c: Point) -> bool {
    let o = orient_unchecked(a, b, c);
    o != Orientation::Collinear
        && orient_unchecked(a, b, p) == o
        && orient_unchecked(b, c, p) == o
        && orient_unchecked(c, a, p) == o
}

pub fn polygon_fan_default_scale(k: usize, t: usize) -> i64 {
    let m = (k * (t + 2) - 1) as i64;
    1000 * m * m
}

/// `k(t+2) - 1` points near a regular polygon, clockwise, followed by `c`
/// points near its center.
///
/// Besides convex position and general position, every center point must lie
/// strictly on the inner side of each chord `q_a q_{a+j}` for `1 <= j <= k`.
pub fn polygon_fan(k: usize, t: usize, c: usize, scale: i64) -> Result<PointSet> {
    ConstructionSpec {
        family: Family::PolygonFan,
        k,
        t,
        c,
        scale,
    }
    .validate()?;
    let m = k * (t + 2) - 1;
    let ring = regular_polygon_clockwise(m, scale);
    if ring
        .iter()
        .any(|p| p.x.abs() > crate::geom::MAX_COORD || p.y.abs() > crate::geom::MAX_COORD)
    {
        return Err(Error::InvalidParameters(format!(
            "scale {scale} exceeds the coordinate bound"
        )));
    }
    if !strictly_convex_clockwise(&ring) {
        return Err(failed(
            scale,
            "polygon vertices are not in strictly convex position",
        ));
    }
    // Small offsets on a parabola: no three are collinear.
    let inner: Vec<Point> = (0..c as i64)
        .map(|j| Point::new(j - 1, (j - 1) * (j - 1) + 1))
        .collect();
    for a in 0..m {
        for j in 1..=k {
            let (qa, qb) = (ring[a], ring[(a + j) % m]);
            if inner
                .iter()
                .any(|&p| orient_unchecked(qa, qb, p) != Orientation::Clockwise)
            {
                return Err(failed(
                    scale,
                    format!("center point outside chord q{}q{}", a + 1, (a + j) % m + 1),
                ));
            }
        }
    }
    let mut points = ring;
    points.extend(inner);
    if !in_general_position(&points) {
        return Err(failed(scale, "points are not in general position"));
    }
    PointSet::new(points)
}

pub fn convex_plus_three_default_scale(t: usize) -> i64 {
    let m = (2 * t + 2) as i64;
    1000 * m * m
}

/// `2t + 2` points near a regular polygon, clockwise, then `q_1, q_2, q_3` with
/// `q_i` strictly inside triangles `p_{2i-2} p_{2i-1} p_{2i}` and
/// `p_{2i-1} p_{2i} p_{2i+1}` (1-based, cyclic).
pub fn convex_plus_three(t: usize, scale: i64) -> Result<PointSet> {
    ConstructionSpec {
        family: Family::ConvexPlusThree,
        k: 2,
        t,
        c: 0,
        scale,
    }
    .validate()?;
    let m = 2 * t + 2;
    let ring = regular_polygon_clockwise(m, scale);
    if !strictly_convex_clockwise(&ring) {
        return Err(failed(
            scale,
            "polygon vertices are not in strictly convex position",
        ));
    }
    let p = |one_based: usize| ring[(one_based + m - 1) % m];
    let depth = (m * m) as i64;
    let mut inner = Vec::with_capacity(3);
    for i in 1..=3 {
        let (a, b) = (p(2 * i - 1), p(2 * i));
        // Edge midpoint pulled toward the center by a 1/m^2 fraction.
        let q = Point::new(
            ((a.x + b.x) * (depth - 1)) / (2 * depth),
            ((a.y + b.y) * (depth - 1)) / (2 * depth),
        );
        if !strictly_inside_triangle(q, p(2 * i - 2), p(2 * i - 1), p(2 * i))
            || !strictly_inside_triangle(q, p(2 * i - 1), p(2 * i), p(2 * i + 1))
        {
            return Err(failed(
                scale,
                format!(
                    "q{i} is not inside both triangles at edge p{}p{}",
                    2 * i - 1,
                    2 * i
                ),
            ));
        }
        inner.push(q);
    }
    let mut points = ring;
    points.extend(inner);
    if !in_general_position(&points) {
        return Err(failed(scale, "points are not in general position"));
    }
    PointSet::new(points)
}

/// Hexagon `p1..p6` (indices 0..5, clockwise) and inner points `q1, q2, q3`
/// (indices 6..8).
const NINE_POINT_COORDS: [(i64, i64); 9] = [
    (2156, 3185),
    (2752, 2618),
    (2723, 1387),
    (2122, 1013),
    (1124, 1485),
    (1029, 2370),
    (2139, 2569),
    (2513, 1845),
    (2043, 2024),
];

pub fn nine_point_config() -> PointSet {
    PointSet::from_coords(&NINE_POINT_COORDS).expect("compiled-in coordinates are valid")
}

/// One step of the case analysis for the nine-point set, phrased over indices
/// `p1..p6 = 0..5`, `q1..q3 = 6..8`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NinePointClaim {
    /// `conv(X)` misses `conv(S \ X)`.
    Separable {
        case: &'static str,
        subset: Vec<usize>,
    },
    /// For the bipartition with part `a`, removing `removed` separates the hulls.
    Removal {
        case: &'static str,
        part: Vec<usize>,
        removed: Vec<usize>,
    },
}

const P1: usize = 0;
const P2: usize = 1;
const P3: usize = 2;
const P4: usize = 3;
const P5: usize = 4;
const P6: usize = 5;
const Q1: usize = 6;
const Q2: usize = 7;
const Q3: usize = 8;

pub fn nine_point_claims() -> Vec<NinePointClaim> {
    use NinePointClaim::{Removal, Separable};
    let sep = |case, subset: &[usize]| Separable {
        case,
        subset: subset.to_vec(),
    };
    let rem = |case, part: &[usize], removed: &[usize]| Removal {
        case,
        part: part.to_vec(),
        removed: removed.to_vec(),
    };
    vec![
        rem("|A|=3, A=Q", &[Q1, Q2, Q3], &[P1, P2]),
        sep("case 1", &[P1, P2, P3]),
        sep("case 1", &[P3, P4, P5]),
        sep("case 1", &[P4, P5, P6]),
        sep("case 2a", &[P1, Q1]),
        rem("case 2a, j=4", &[P1, P4, Q2, Q3], &[P1, P3]),
        rem("case 2a, j=5", &[P1, P5, Q2, Q3], &[P6, Q2]),
        sep("case 2b", &[P1, P5, P6]),
        sep("case 2b", &[P1, P6, Q1]),
        sep("case 2b", &[P3, P4, Q2]),
        rem("case 2b", &[P2, P5, Q1, Q2], &[P1, P5]),
        sep("case 2c", &[P1, P2, Q1]),
        sep("case 2c", &[P1, P2, Q2]),
        rem("case 2c", &[P3, P5, Q1, Q2], &[P4, Q1]),
        sep("case 2c", &[P3, Q2]),
        rem("case 3a", &[P1, P3, P5, Q2], &[P2, P5]),
        rem("case 3a", &[P1, P3, P5, Q3], &[P3, P6]),
        rem("case 3b", &[P2, P4, P6, Q1], &[P1, P4]),
        rem("case 3b", &[P2, P4, P6, Q2], &[P3, P6]),
        rem("case 3b", &[P2, P4, P6, Q3], &[P2, P5]),
    ]
}

fn mask_of(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |m, &i| m | 1 << i)
}

impl NinePointClaim {
    pub fn case(&self) -> &'static str {
        match self {
            NinePointClaim::Separable { case, .. } | NinePointClaim::Removal { case, .. } => case,
        }
    }

    /// Exact check of the claim on `set`.
    pub fn holds(&self, set: &PointSet) -> bool {
        let full = set.full_mask();
        match self {
            NinePointClaim::Separable { subset, .. } => {
                let x = mask_of(subset);
                hulls_disjoint(&set.select(x), &set.select(full & !x))
            }
            NinePointClaim::Removal { part, removed, .. } => {
                let a = mask_of(part);
                let c = mask_of(removed);
                let left = set.select(a & !c);
                let right = set.select(full & !a & !c);
                left.is_empty() || right.is_empty() || hulls_disjoint(&left, &right)
            }
        }
    }
}

impl fmt::Display for NinePointClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |i: &usize| {
            if *i < 6 {
                format!("p{}", i + 1)
            } else {
                format!("q{}", i - 5)
            }
        };
        let names = |v: &[usize]| v.iter().map(name).collect::<Vec<_>>().join(",");
        match self {
            NinePointClaim::Separable { case, subset } => {
                write!(f, "{case}: X={{{}}} separable", names(subset))
            }
            NinePointClaim::Removal {
                case,
                part,
                removed,
            } => {
                write!(f, "{case}: A={{{}}}, C={{{}}}", names(part), names(removed))
            }
        }
    }
}

/// Names of the built-in nine-point coordinate sets.
pub const FIXTURE_NAMES: [&str; 6] = [
    "ot1874", "ot2163", "ot94078", "ot8005", "ot158483", "ot103224",
];

/// Hull size stated for each fixture.
pub fn fixture_hull_size(name: &str) -> Option<usize> {
    match name {
        "ot1874" | "ot2163" => Some(5),
        "ot94078" | "ot8005" => Some(4),
        "ot158483" | "ot103224" => Some(3),
        _ => None,
    }
}

fn fixture_coords(name: &str) -> Option<[(i64, i64); 9]> {
    Some(match name {
        "ot1874" => [
            (9840, 6320),
            (11088, 53091),
            (13184, 55184),
            (20272, 31792),
            (23936, 42832),
            (29536, 27264),
            (30240, 59216),
            (36608, 40224),
            (65392, 58624),
        ],
        "ot2163" => [
            (1685, 31127),
            (1974, 28655),
            (2205, 25935),
            (2325, 27419),
            (2578, 29850),
            (3081, 29283),
            (3525, 28573),
            (3780, 29834),
            (4047, 31515),
        ],
        "ot94078" => [
            (5068, 6077),
            (5286, 4899),
            (5365, 4103),
            (5423, 3322),
            (6097, 4725),
            (6518, 5564),
            (6768, 3948),
            (6907, 5510),
            (7653, 4077),
        ],
        "ot8005" => [
            (1191, 62310),
            (13953, 30288),
            (17130, 22903),
            (23090, 3225),
            (29211, 31836),
            (34965, 27444),
            (42777, 42156),
            (63813, 34475),
            (64344, 33041),
        ],
        "ot158483" => [
            (3486, 27997),
            (42864, 41720),
            (43136, 29192),
            (45456, 37032),
            (53600, 64168),
            (54176, 22952),
            (54288, 41032),
            (54352, 9448),
            (63760, 1368),
        ],
        "ot103224" => [
            (14754, 22968),
            (31582, 34456),
            (41842, 40140),
            (41882, 11292),
            (42498, 24480),
            (42930, 17380),
            (43302, 43540),
            (50782, 5772),
            (51320, 62470),
        ],
        _ => return None,
    })
}

/// Coordinates of a named fixture, in listed order.
pub fn fixture(name: &str) -> Result<PointSet> {
    let coords = fixture_coords(name).ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    PointSet::from_coords(&coords)
}
