//! Exact planar primitives over integer coordinates.
//!
//! Every predicate here is decided exactly. Input coordinates are bounded by
//! [`MAX_COORD`] in absolute value, which keeps orientation determinants inside
//! `i64` and the rational vertices produced by half-plane clipping inside
//! `i128` (coordinate differences are below 2^29, so a clipped vertex has a
//! numerator below 2^88 over a denominator below 2^59, and evaluating a
//! constraint at it stays below 2^119).

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible absolute coordinate value (2^28).
pub const MAX_COORD: i64 = 1 << 28;

/// Point sets are indexed by bitmasks in the search code, so they are capped at
/// the width of a `u64`.
pub const MAX_POINTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    /// Rejects coordinates outside `[-MAX_COORD, MAX_COORD]`.
    pub fn checked(x: i64, y: i64) -> Result<Self> {
        if x.abs() > MAX_COORD || y.abs() > MAX_COORD {
            return Err(Error::CoordinateOutOfRange { x, y });
        }
        Ok(Point { x, y })
    }

    fn in_range(&self) -> bool {
        self.x.abs() <= MAX_COORD && self.y.abs() <= MAX_COORD
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Orientation of an ordered triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i32 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }
}

#[inline]
fn cross(a: Point, b: Point, c: Point) -> i64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Exact orientation of `(a, b, c)`; fails if a coordinate exceeds [`MAX_COORD`].
pub fn orient(a: Point, b: Point, c: Point) -> Result<Orientation> {
    for p in [a, b, c] {
        if !p.in_range() {
            return Err(Error::CoordinateOutOfRange { x: p.x, y: p.y });
        }
    }
    Ok(orient_unchecked(a, b, c))
}

/// Orientation for points already known to be in range (every point owned by a
/// [`PointSet`] is).
#[inline]
pub fn orient_unchecked(a: Point, b: Point, c: Point) -> Orientation {
    match cross(a, b, c).cmp(&0) {
        Ordering::Less => Orientation::Clockwise,
        Ordering::Equal => Orientation::Collinear,
        Ordering::Greater => Orientation::CounterClockwise,
    }
}

/// An ordered list of pairwise distinct, in-range points. Indices are stable
/// identities for partitions and removal sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        if points.len() > MAX_POINTS {
            return Err(Error::TooManyPoints(points.len()));
        }
        for p in &points {
            if !p.in_range() {
                return Err(Error::CoordinateOutOfRange { x: p.x, y: p.y });
            }
        }
        let mut sorted = points.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0]));
        }
        Ok(PointSet { points })
    }

    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    /// Points whose index bit is set in `mask`, in index order.
    pub fn select(&self, mask: u64) -> Vec<Point> {
        self.points
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect()
    }

    /// Mask with one bit per point.
    pub fn full_mask(&self) -> u64 {
        if self.points.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.points.len()) - 1
        }
    }

    pub fn hull(&self) -> HullPolygon {
        convex_hull(self)
    }

    pub fn hull_size(&self) -> usize {
        self.hull().len()
    }

    pub fn translated(&self, dx: i64, dy: i64) -> Result<Self> {
        Self::new(
            self.points
                .iter()
                .map(|p| Point::new(p.x + dx, p.y + dy))
                .collect(),
        )
    }

    pub fn scaled(&self, factor: i64) -> Result<Self> {
        Self::new(
            self.points
                .iter()
                .map(|p| Point::new(p.x * factor, p.y * factor))
                .collect(),
        )
    }
}

impl Deref for PointSet {
    type Target = [Point];

    fn deref(&self) -> &[Point] {
        &self.points
    }
}

/// Convex hull as indices into a point set, counterclockwise, starting at the
/// lexicographically smallest point. Points in the relative interior of a hull
/// edge are not vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullPolygon {
    pub vertices: Vec<usize>,
}

impl HullPolygon {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.vertices.contains(&i)
    }

    /// Bitmask of the hull vertices.
    pub fn mask(&self) -> u64 {
        self.vertices.iter().fold(0, |m, &i| m | 1 << i)
    }

    /// Consecutive vertex pairs `(v_i, v_{i+1})`, wrapping around. A segment hull
    /// has the single edge; a point hull has none.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        match self.vertices.len() {
            0 | 1 => Vec::new(),
            2 => vec![(self.vertices[0], self.vertices[1])],
            m => (0..m)
                .map(|i| (self.vertices[i], self.vertices[(i + 1) % m]))
                .collect(),
        }
    }
}

/// Monotone chain over point indices.
pub fn hull_indices(points: &[Point]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by_key(|&i| points[i]);
    idx.dedup_by_key(|i| points[*i]);
    if idx.len() <= 2 {
        return idx;
    }
    let mut lower: Vec<usize> = Vec::with_capacity(idx.len());
    for &i in &idx {
        while lower.len() >= 2
            && cross(
                points[lower[lower.len() - 2]],
                points[lower[lower.len() - 1]],
                points[i],
            ) <= 0
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::with_capacity(idx.len());
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && cross(
                points[upper[upper.len() - 2]],
                points[upper[upper.len() - 1]],
                points[i],
            ) <= 0
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    // All points collinear: the chain degenerates to the two endpoints.
    if lower.len() == 2 && points[lower[0]] == points[lower[1]] {
        lower.pop();
    }
    lower
}

pub fn convex_hull(set: &PointSet) -> HullPolygon {
    HullPolygon {
        vertices: hull_indices(set.points()),
    }
}

fn hull_points(points: &[Point]) -> Vec<Point> {
    hull_indices(points)
        .into_iter()
        .map(|i| points[i])
        .collect()
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    cross(a, b, p) == 0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// Membership of `p` in the closed polygon given by ccw hull vertices.
fn in_hull_vertices(hull: &[Point], p: Point) -> bool {
    match hull.len() {
        0 => false,
        1 => hull[0] == p,
        2 => on_segment(hull[0], hull[1], p),
        m => (0..m).all(|i| cross(hull[i], hull[(i + 1) % m], p) >= 0),
    }
}

/// True iff `p` lies in the closed convex hull of `set`.
pub fn point_in_hull(p: Point, set: &[Point]) -> bool {
    in_hull_vertices(&hull_points(set), p)
}

/// Closed segments `ab` and `cd` share a point.
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = cross(a, b, c).signum();
    let d2 = cross(a, b, d).signum();
    let d3 = cross(c, d, a).signum();
    let d4 = cross(c, d, b).signum();
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b)
}

fn hull_edges(hull: &[Point]) -> Vec<(Point, Point)> {
    match hull.len() {
        0 | 1 => Vec::new(),
        2 => vec![(hull[0], hull[1])],
        m => (0..m).map(|i| (hull[i], hull[(i + 1) % m])).collect(),
    }
}

/// True iff the closed convex hulls of `a` and `b` share no point. Decided by
/// vertex containment and edge crossings, so it is independent of
/// [`hulls_common_point`].
pub fn hulls_disjoint(a: &[Point], b: &[Point]) -> bool {
    if a.is_empty() || b.is_empty() {
        return true;
    }
    let ha = hull_points(a);
    let hb = hull_points(b);
    if ha.iter().any(|&p| in_hull_vertices(&hb, p)) || hb.iter().any(|&p| in_hull_vertices(&ha, p))
    {
        return false;
    }
    let eb = hull_edges(&hb);
    !hull_edges(&ha)
        .iter()
        .any(|&(p, q)| eb.iter().any(|&(r, s)| segments_intersect(p, q, r, s)))
}

/// Closed half-plane `normal · z <= offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct HalfPlane {
    nx: i64,
    ny: i64,
    offset: i64,
}

impl HalfPlane {
    /// Left-hand side of the directed line `a -> b`.
    fn left_of(a: Point, b: Point) -> Self {
        let (dx, dy) = (b.x - a.x, b.y - a.y);
        // cross(b - a, z - a) >= 0  <=>  dy*z.x - dx*z.y <= dy*a.x - dx*a.y
        HalfPlane {
            nx: dy,
            ny: -dx,
            offset: dy * a.x - dx * a.y,
        }
    }

    fn negated(self) -> Self {
        HalfPlane {
            nx: -self.nx,
            ny: -self.ny,
            offset: -self.offset,
        }
    }

    /// `normal · z <= normal · p`.
    fn through(nx: i64, ny: i64, p: Point) -> Self {
        HalfPlane {
            nx,
            ny,
            offset: nx * p.x + ny * p.y,
        }
    }

    /// Sign of `normal · v - offset`; non-positive means inside.
    fn side(&self, v: &RatPoint) -> Ordering {
        let lhs = self.nx as i128 * v.xn + self.ny as i128 * v.yn;
        lhs.cmp(&(self.offset as i128 * v.den))
    }

    /// Intersection of the two boundary lines, `None` when parallel.
    fn meet(&self, other: &HalfPlane) -> Option<RatPoint> {
        let (a1, b1, c1) = (self.nx as i128, self.ny as i128, self.offset as i128);
        let (a2, b2, c2) = (other.nx as i128, other.ny as i128, other.offset as i128);
        let det = a1 * b2 - b1 * a2;
        if det == 0 {
            return None;
        }
        let xn = c1 * b2 - b1 * c2;
        let yn = a1 * c2 - c1 * a2;
        Some(if det > 0 {
            RatPoint { xn, yn, den: det }
        } else {
            RatPoint {
                xn: -xn,
                yn: -yn,
                den: -det,
            }
        })
    }
}

/// Rational point `(xn / den, yn / den)` with `den > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct RatPoint {
    xn: i128,
    yn: i128,
    den: i128,
}

impl From<Point> for RatPoint {
    fn from(p: Point) -> Self {
        RatPoint {
            xn: p.x as i128,
            yn: p.y as i128,
            den: 1,
        }
    }
}

/// Closed hull of a nonempty point list as constraints.
fn hull_constraints(hull: &[Point]) -> Vec<HalfPlane> {
    match hull.len() {
        0 => Vec::new(),
        1 => {
            let p = hull[0];
            vec![
                HalfPlane::through(1, 0, p),
                HalfPlane::through(-1, 0, p),
                HalfPlane::through(0, 1, p),
                HalfPlane::through(0, -1, p),
            ]
        }
        2 => {
            let (a, b) = (hull[0], hull[1]);
            let line = HalfPlane::left_of(a, b);
            let (dx, dy) = (b.x - a.x, b.y - a.y);
            vec![
                line,
                line.negated(),
                HalfPlane::through(dx, dy, b),
                HalfPlane::through(-dx, -dy, a),
            ]
        }
        m => (0..m)
            .map(|i| HalfPlane::left_of(hull[i], hull[(i + 1) % m]))
            .collect(),
    }
}

/// Convex region under Sutherland–Hodgman clipping. `edges[i]` is the
/// constraint whose boundary line carries the edge from vertex `i` to vertex
/// `i + 1`; every vertex is an input point or the meet of two input
/// constraints, which is what keeps the arithmetic bounded.
struct ClipRegion {
    vertices: Vec<RatPoint>,
    edges: Vec<Option<HalfPlane>>,
}

impl ClipRegion {
    fn from_hull(hull: &[Point]) -> Self {
        let vertices: Vec<RatPoint> = hull.iter().map(|&p| RatPoint::from(p)).collect();
        let edges = match hull.len() {
            1 => vec![None],
            2 => {
                let line = HalfPlane::left_of(hull[0], hull[1]);
                vec![Some(line), Some(line)]
            }
            m => (0..m)
                .map(|i| Some(HalfPlane::left_of(hull[i], hull[(i + 1) % m])))
                .collect(),
        };
        ClipRegion { vertices, edges }
    }

    fn clip(&mut self, h: &HalfPlane) {
        let m = self.vertices.len();
        let mut vertices = Vec::with_capacity(m + 2);
        let mut edges = Vec::with_capacity(m + 2);
        for i in 0..m {
            let cur = self.vertices[i];
            let nxt = self.vertices[(i + 1) % m];
            let edge = self.edges[i];
            let sc = h.side(&cur);
            let sn = h.side(&nxt);
            match (sc, sn) {
                (Ordering::Greater, Ordering::Greater) => {}
                (Ordering::Greater, Ordering::Less) => {
                    let e = edge.expect("crossing edge has a supporting line");
                    vertices.push(e.meet(h).expect("crossing edge is not parallel"));
                    edges.push(edge);
                }
                (Ordering::Greater, Ordering::Equal) => {}
                (_, Ordering::Greater) => {
                    if sc == Ordering::Equal {
                        vertices.push(cur);
                        edges.push(Some(*h));
                    } else {
                        let e = edge.expect("crossing edge has a supporting line");
                        vertices.push(cur);
                        edges.push(edge);
                        vertices.push(e.meet(h).expect("crossing edge is not parallel"));
                        edges.push(Some(*h));
                    }
                }
                _ => {
                    vertices.push(cur);
                    edges.push(edge);
                }
            }
        }
        self.vertices = vertices;
        self.edges = edges;
    }

    fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// True iff the closed convex hulls of all `sets` have a common point. An empty
/// member forces `false`; an empty list is vacuously `true`.
pub fn hulls_common_point<S: AsRef<[Point]>>(sets: &[S]) -> bool {
    if sets.iter().any(|s| s.as_ref().is_empty()) {
        return false;
    }
    let Some((first, rest)) = sets.split_first() else {
        return true;
    };
    let hulls: Vec<Vec<Point>> = rest.iter().map(|s| hull_points(s.as_ref())).collect();
    let first_hull = hull_points(first.as_ref());
    let mut region = ClipRegion::from_hull(&first_hull);
    for hull in &hulls {
        for h in hull_constraints(hull) {
            region.clip(&h);
            if region.is_empty() {
                return false;
            }
        }
    }
    true
}

/// True iff no three points are collinear.
pub fn in_general_position(points: &[Point]) -> bool {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if cross(points[i], points[j], points[k]) == 0 {
                    return false;
                }
            }
        }
    }
    true
}
