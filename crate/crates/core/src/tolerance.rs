//! Deciding t-tolerance of partitions and searching for tolerant partitions.
//!
//! A partition `P_1, ..., P_k` of `P` is t-tolerant when for every removal set
//! `Y` with `|Y| <= t` the hulls of the `P_i \ Y` still share a point. Removing
//! more points only shrinks hulls, so it suffices to test `|Y| = min(t, n)`.
//!
//! The pruned search works on partial assignments using linear cuts: if `X` is
//! the set of points on one side of a line and `i != j` are parts, removing
//! `(P_i \ X) ∪ (P_j ∩ X)` leaves `P_i` inside `conv(X)` and `P_j` inside
//! `conv(P \ X)`, so the partition fails as soon as that removal set has at most
//! `t` points. For two parts this rule is exact.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{hulls_common_point, hulls_disjoint, Point, PointSet};
use crate::partition::{size_profiles, Partition, PartitionIter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ToleranceParams {
    pub k: usize,
    pub t: usize,
}

impl ToleranceParams {
    pub fn new(k: usize, t: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameters("k must be at least 1".into()));
        }
        Ok(ToleranceParams { k, t })
    }
}

/// A removal set whose deletion leaves the part hulls without a common point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Witness {
    pub removed: Vec<usize>,
}

impl Witness {
    pub fn mask(&self) -> u64 {
        self.removed.iter().fold(0, |m, &i| m | 1 << i)
    }

    fn from_mask(mask: u64) -> Self {
        Witness {
            removed: (0..64).filter(|i| mask >> i & 1 == 1).collect(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.removed.iter().join(","))
    }
}

/// Sufficient conditions for a partition to fail t-tolerance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PruneRule {
    /// Some part has at most `t` points.
    Size { part: usize },
    /// A part of size `t + 1` holds a hull vertex.
    HullVertex { part: usize, vertex: usize },
    /// A part of size `t + 2` holds both ends of a hull edge.
    HullEdge { part: usize, edge: (usize, usize) },
    /// A subset `X` of a part of size `t + |X|` whose hull misses the hull of
    /// the remaining points.
    Separation { part: usize, subset: Vec<usize> },
}

impl PruneRule {
    pub fn name(&self) -> &'static str {
        match self {
            PruneRule::Size { .. } => "SIZE",
            PruneRule::HullVertex { .. } => "HULL_VERTEX",
            PruneRule::HullEdge { .. } => "HULL_EDGE",
            PruneRule::Separation { .. } => "SEPAR",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SearchMode {
    /// Branch and bound over partial assignments with cut pruning, then
    /// [`prune_reason`] and the full removal check on surviving partitions.
    #[default]
    Pruned,
    /// Every canonical partition, every removal set of size at most `t`.
    Brute,
}

/// Default bound on `|X|` for the separation rule.
pub const DEFAULT_SEPARATION_CAP: usize = 3;

fn check_partition(set: &PointSet, part: &Partition) {
    assert_eq!(
        set.len(),
        part.n(),
        "partition of {} points applied to a set of {}",
        part.n(),
        set.len()
    );
}

/// Whether the parts, minus `removed`, have hulls with a common point.
fn parts_meet(set: &PointSet, masks: &[u64], removed: u64) -> bool {
    let sets: Vec<Vec<Point>> = masks.iter().map(|&m| set.select(m & !removed)).collect();
    if sets.iter().any(Vec::is_empty) {
        return false;
    }
    match sets.len() {
        1 => true,
        2 => !hulls_disjoint(&sets[0], &sets[1]),
        _ => hulls_common_point(&sets),
    }
}

fn combinations_mask(n: usize, size: usize) -> impl Iterator<Item = u64> {
    (0..n)
        .combinations(size)
        .map(|c| c.into_iter().fold(0u64, |m, i| m | 1 << i))
}

/// Whether `witness` really breaks `part`.
pub fn verify_witness(set: &PointSet, part: &Partition, t: usize, witness: &Witness) -> bool {
    check_partition(set, part);
    witness.removed.len() <= t
        && witness.removed.iter().all(|&i| i < set.len())
        && !parts_meet(set, &part.masks(), witness.mask())
}

/// Exact t-tolerance, testing removal sets of size exactly `min(t, n)`.
pub fn is_t_tolerant(set: &PointSet, part: &Partition, t: usize) -> bool {
    check_partition(set, part);
    let masks = part.masks();
    if masks.iter().any(|m| (m.count_ones() as usize) <= t) {
        return false;
    }
    combinations_mask(set.len(), t.min(set.len())).all(|y| parts_meet(set, &masks, y))
}

/// t-tolerance checked over every removal set of size `0..=t`.
pub fn is_t_tolerant_exhaustive(set: &PointSet, part: &Partition, t: usize) -> bool {
    check_partition(set, part);
    let masks = part.masks();
    (0..=t.min(set.len()))
        .all(|size| combinations_mask(set.len(), size).all(|y| parts_meet(set, &masks, y)))
}

/// Smallest removal set breaking `part`, lexicographically first among those of
/// minimum size; `None` iff the partition is t-tolerant.
pub fn failure_witness(set: &PointSet, part: &Partition, t: usize) -> Option<Witness> {
    check_partition(set, part);
    let masks = part.masks();
    (0..=t.min(set.len())).find_map(|size| {
        combinations_mask(set.len(), size)
            .find(|&y| !parts_meet(set, &masks, y))
            .map(Witness::from_mask)
    })
}

pub fn prune_reason(set: &PointSet, part: &Partition, t: usize) -> Option<PruneRule> {
    prune_reason_with_cap(set, part, t, DEFAULT_SEPARATION_CAP)
}

/// First applicable rule among SIZE, HULL_VERTEX, HULL_EDGE and SEPAR, the last
/// searched over subsets of size at most `cap`.
pub fn prune_reason_with_cap(
    set: &PointSet,
    part: &Partition,
    t: usize,
    cap: usize,
) -> Option<PruneRule> {
    check_partition(set, part);
    let parts = part.parts();
    if let Some(j) = parts.iter().position(|p| p.len() <= t) {
        return Some(PruneRule::Size { part: j });
    }
    // The separation rules need a second part to land in conv(P \ X).
    if parts.len() < 2 {
        return None;
    }
    let hull = set.hull();
    for (j, p) in parts.iter().enumerate() {
        if p.len() == t + 1 {
            if let Some(&v) = p.iter().find(|&&i| hull.contains_index(i)) {
                return Some(PruneRule::HullVertex { part: j, vertex: v });
            }
        }
    }
    if hull.len() >= 3 {
        for (j, p) in parts.iter().enumerate() {
            if p.len() != t + 2 {
                continue;
            }
            for (a, b) in hull.edges() {
                if p.contains(&a) && p.contains(&b) {
                    // Another point on the edge would sit inside conv{a, b}.
                    let pair = [set[a], set[b]];
                    let rest = set.select(set.full_mask() & !(1 << a | 1 << b));
                    if hulls_disjoint(&pair, &rest) {
                        return Some(PruneRule::HullEdge {
                            part: j,
                            edge: (a, b),
                        });
                    }
                }
            }
        }
    }
    for (j, p) in parts.iter().enumerate() {
        let m = p.len() - t;
        if m == 0 || m > cap {
            continue;
        }
        for x in p.iter().copied().combinations(m) {
            let xmask = x.iter().fold(0u64, |acc, &i| acc | 1 << i);
            let inside = set.select(xmask);
            let outside = set.select(set.full_mask() & !xmask);
            if hulls_disjoint(&inside, &outside) {
                return Some(PruneRule::Separation { part: j, subset: x });
            }
        }
    }
    None
}

/// Canonical partitions of `0..n` into `params.k` parts; with `size_filter`,
/// only those whose parts all have at least `t + 1` points.
pub fn enumerate_partitions(n: usize, params: ToleranceParams, size_filter: bool) -> PartitionIter {
    let min = if size_filter { params.t + 1 } else { 1 };
    PartitionIter::new(n, params.k, min)
}

/// All nonempty proper subsets of `points` that can be cut off by a line,
/// as bitmasks, sorted.
pub fn linear_cuts(points: &[Point]) -> Vec<u64> {
    let n = points.len();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut cuts = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let (pa, pb) = (points[a], points[b]);
            let (dx, dy) = (pb.x - pa.x, pb.y - pa.y);
            let mut left = 0u64;
            let mut right = 0u64;
            let mut on: Vec<(i64, usize)> = Vec::new();
            for (i, p) in points.iter().enumerate() {
                let c = dx * (p.y - pa.y) - dy * (p.x - pa.x);
                if c > 0 {
                    left |= 1 << i;
                } else if c < 0 {
                    right |= 1 << i;
                } else {
                    on.push((dx * (p.x - pa.x) + dy * (p.y - pa.y), i));
                }
            }
            on.sort_unstable();
            let mut prefix = 0u64;
            let mut prefixes = vec![0u64];
            for &(_, i) in &on {
                prefix |= 1 << i;
                prefixes.push(prefix);
            }
            let on_mask = prefix;
            for &pre in &prefixes {
                let suf = on_mask & !pre;
                for side in [left, right] {
                    cuts.push(side | pre);
                    cuts.push(side | suf);
                }
            }
        }
    }
    cuts.retain(|&c| c != 0 && c != full);
    cuts.sort_unstable();
    cuts.dedup();
    cuts
}

/// Searches for a t-tolerant partition into `params.k` parts.
pub fn admits_t_tolerant_partition(
    set: &PointSet,
    params: ToleranceParams,
    mode: SearchMode,
) -> Option<Partition> {
    let n = set.len();
    if params.k == 0 || n < params.k * (params.t + 1) {
        return None;
    }
    match mode {
        SearchMode::Brute => enumerate_partitions(n, params, false)
            .find(|p| is_t_tolerant_exhaustive(set, p, params.t)),
        SearchMode::Pruned => CutSearch::new(set, params).run(),
    }
}

/// Branch and bound over part-size profiles. Within a profile, parts of equal
/// size are opened in index order so every unlabeled partition is visited once.
struct CutSearch<'a> {
    set: &'a PointSet,
    t: usize,
    order: Vec<usize>,
    cuts_by_point: Vec<Vec<u64>>,
    sizes: Vec<usize>,
    masks: Vec<u64>,
    unassigned: u64,
}

impl<'a> CutSearch<'a> {
    fn new(set: &'a PointSet, params: ToleranceParams) -> Self {
        let n = set.len();
        let hull = set.hull();
        // Interior points first, then the hull in cyclic order, so that cuts
        // of consecutive hull arcs close early.
        let hull_mask = hull.mask();
        let mut order: Vec<usize> = (0..n).filter(|i| hull_mask >> i & 1 == 0).collect();
        order.extend(hull.vertices.iter().copied());
        let cuts = linear_cuts(set.points());
        let cuts_by_point = (0..n)
            .map(|i| cuts.iter().copied().filter(|c| c >> i & 1 == 1).collect())
            .collect();
        CutSearch {
            set,
            t: params.t,
            order,
            cuts_by_point,
            sizes: Vec::new(),
            masks: vec![0; params.k],
            unassigned: set.full_mask(),
        }
    }

    fn run(mut self) -> Option<Partition> {
        let k = self.masks.len();
        for profile in size_profiles(self.set.len(), k, self.t + 1) {
            self.sizes = profile;
            self.masks.iter_mut().for_each(|m| *m = 0);
            self.unassigned = self.set.full_mask();
            if let Some(p) = self.descend(0) {
                return Some(p);
            }
        }
        None
    }

    /// Some cut through `point` already forces a removal set of size `<= t`
    /// for every completion.
    fn cut_fires(&self, point: usize) -> bool {
        let t = self.t as i64;
        for &x in &self.cuts_by_point[point] {
            let u_in = (self.unassigned & x).count_ones() as i64;
            let u_out = (self.unassigned & !x).count_ones() as i64;
            // Upper bounds for |P_i \ X| and |P_j ∩ X| in any completion.
            let mut best_out = [i64::MAX; 2];
            let mut best_in = [(i64::MAX, usize::MAX); 2];
            let mut out_idx = usize::MAX;
            for (j, &m) in self.masks.iter().enumerate() {
                let s = self.sizes[j] as i64;
                let inside = (m & x).count_ones() as i64;
                let outside = (m & !x).count_ones() as i64;
                let max_out = (s - inside).min(outside + u_out);
                let max_in = (inside + u_in).min(s - outside);
                if max_out < best_out[0] {
                    best_out = [max_out, best_out[0]];
                    out_idx = j;
                } else if max_out < best_out[1] {
                    best_out[1] = max_out;
                }
                if max_in < best_in[0].0 {
                    best_in = [(max_in, j), best_in[0]];
                } else if max_in < best_in[1].0 {
                    best_in[1] = (max_in, j);
                }
            }
            let best = if best_in[0].1 != out_idx {
                best_out[0].saturating_add(best_in[0].0)
            } else {
                best_out[0]
                    .saturating_add(best_in[1].0)
                    .min(best_out[1].saturating_add(best_in[0].0))
            };
            if best <= t {
                return true;
            }
        }
        false
    }

    fn descend(&mut self, pos: usize) -> Option<Partition> {
        if pos == self.order.len() {
            return self.accept();
        }
        let point = self.order[pos];
        let bit = 1u64 << point;
        for j in 0..self.masks.len() {
            let count = self.masks[j].count_ones() as usize;
            if count == self.sizes[j] {
                continue;
            }
            if count == 0 && (0..j).any(|i| self.sizes[i] == self.sizes[j] && self.masks[i] == 0) {
                continue;
            }
            self.masks[j] |= bit;
            self.unassigned &= !bit;
            let found = if self.cut_fires(point) {
                None
            } else {
                self.descend(pos + 1)
            };
            self.masks[j] &= !bit;
            self.unassigned |= bit;
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn accept(&self) -> Option<Partition> {
        let part = Partition::from_masks(&self.masks, self.set.len());
        if prune_reason(self.set, &part, self.t).is_some() {
            return None;
        }
        is_t_tolerant(self.set, &part, self.t).then_some(part)
    }
}
