//! Unlabeled set partitions in restricted-growth form.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Assignment of point indices to `k` nonempty, unlabeled parts. Stored in
/// canonical form: part labels appear in order of first occurrence, so index 0
/// is always in part 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    assignment: Vec<u8>,
    k: usize,
}

impl Partition {
    /// Builds a partition from an arbitrary labeling with labels in `0..k`,
    /// relabeling it canonically.
    pub fn new(labels: &[usize], k: usize) -> Result<Self> {
        if k == 0 || k > labels.len() {
            return Err(Error::InvalidPartition(format!(
                "{k} parts requested for {} points",
                labels.len()
            )));
        }
        let mut relabel = vec![usize::MAX; k];
        let mut next = 0;
        let mut assignment = Vec::with_capacity(labels.len());
        for &l in labels {
            if l >= k {
                return Err(Error::InvalidPartition(format!(
                    "label {l} out of range 0..{k}"
                )));
            }
            if relabel[l] == usize::MAX {
                relabel[l] = next;
                next += 1;
            }
            assignment.push(relabel[l] as u8);
        }
        if next != k {
            return Err(Error::InvalidPartition(format!(
                "only {next} of {k} parts are nonempty"
            )));
        }
        Ok(Partition { assignment, k })
    }

    /// Builds a partition of `0..n` from explicit parts.
    pub fn from_parts<P: AsRef<[usize]>>(parts: &[P], n: usize) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (label, part) in parts.iter().enumerate() {
            for &i in part.as_ref() {
                if i >= n {
                    return Err(Error::InvalidPartition(format!(
                        "index {i} out of range 0..{n}"
                    )));
                }
                if labels[i] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "index {i} is in two parts"
                    )));
                }
                labels[i] = label;
            }
        }
        if let Some(i) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "index {i} is not assigned"
            )));
        }
        Self::new(&labels, parts.len())
    }

    pub(crate) fn from_masks(masks: &[u64], n: usize) -> Self {
        let mut labels = vec![0; n];
        for (label, &m) in masks.iter().enumerate() {
            for (i, l) in labels.iter_mut().enumerate() {
                if m >> i & 1 == 1 {
                    *l = label;
                }
            }
        }
        Self::new(&labels, masks.len()).expect("masks form a partition")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    /// Canonical labels, one per point index.
    pub fn assignment(&self) -> &[u8] {
        &self.assignment
    }

    pub fn part_of(&self, index: usize) -> usize {
        self.assignment[index] as usize
    }

    pub fn masks(&self) -> Vec<u64> {
        let mut masks = vec![0u64; self.k];
        for (i, &l) in self.assignment.iter().enumerate() {
            masks[l as usize] |= 1 << i;
        }
        masks
    }

    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.k];
        for (i, &l) in self.assignment.iter().enumerate() {
            parts[l as usize].push(i);
        }
        parts
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &l in &self.assignment {
            sizes[l as usize] += 1;
        }
        sizes
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, part) in self.parts().iter().enumerate() {
            if j > 0 {
                write!(f, "|")?;
            }
            write!(f, "{{")?;
            for (i, idx) in part.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{idx}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// Lexicographic stream of canonical partitions of `0..n` into exactly `k`
/// parts, each of size at least `min_size`.
#[derive(Clone, Debug)]
pub struct PartitionIter {
    n: usize,
    k: usize,
    min_size: usize,
    labels: Vec<u8>,
    counts: Vec<usize>,
    started: bool,
    done: bool,
}

impl PartitionIter {
    pub fn new(n: usize, k: usize, min_size: usize) -> Self {
        PartitionIter {
            n,
            k,
            min_size: min_size.max(1),
            labels: vec![0; n],
            counts: vec![0; k],
            started: false,
            done: k == 0 || n < k,
        }
    }

    /// Whether the first `filled` labels, with `used` parts opened, can still be
    /// completed.
    fn feasible(&self, filled: usize, used: usize) -> bool {
        let remaining = self.n - filled;
        let open_deficit: usize = self.counts[..used]
            .iter()
            .map(|&c| self.min_size.saturating_sub(c))
            .sum();
        open_deficit + (self.k - used) * self.min_size <= remaining
    }

    fn used_before(&self, pos: usize) -> usize {
        self.labels[..pos]
            .iter()
            .map(|&l| l as usize + 1)
            .max()
            .unwrap_or(0)
    }

    /// Fills positions `from..n` with the smallest feasible labels.
    fn fill_from(&mut self, from: usize) -> bool {
        let mut used = self.used_before(from);
        for pos in from..self.n {
            let mut placed = false;
            for v in 0..=used.min(self.k - 1) {
                self.counts[v] += 1;
                let new_used = used.max(v + 1);
                if self.feasible(pos + 1, new_used) {
                    self.labels[pos] = v as u8;
                    used = new_used;
                    placed = true;
                    break;
                }
                self.counts[v] -= 1;
            }
            if !placed {
                return false;
            }
        }
        true
    }

    fn current(&self) -> Partition {
        Partition {
            assignment: self.labels.clone(),
            k: self.k,
        }
    }
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.fill_from(0) {
                return Some(self.current());
            }
            self.done = true;
            return None;
        }
        for pos in (1..self.n).rev() {
            let old = self.labels[pos] as usize;
            self.counts[old] -= 1;
            let used = self.used_before(pos);
            for v in old + 1..=used.min(self.k - 1) {
                self.counts[v] += 1;
                self.labels[pos] = v as u8;
                if self.feasible(pos + 1, used.max(v + 1)) && self.fill_from(pos + 1) {
                    return Some(self.current());
                }
                self.counts[v] -= 1;
            }
            self.labels[pos] = 0;
        }
        self.done = true;
        None
    }
}

/// Nondecreasing part-size profiles of length `k`, each entry at least
/// `min_size`, summing to `n`.
pub fn size_profiles(n: usize, k: usize, min_size: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, parts: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut s = lo;
        while s * parts <= left {
            cur.push(s);
            rec(left - s, parts - 1, s, cur, out);
            cur.pop();
            s += 1;
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        rec(n, k, min_size.max(1), &mut Vec::new(), &mut out);
    }
    out
}
