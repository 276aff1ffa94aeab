//! Parallel classification of a database index range.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::Range;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use crate::db::DbHandle;
use crate::error::Result;
use crate::geom::PointSet;
use crate::tolerance::{admits_t_tolerant_partition, SearchMode, ToleranceParams};

/// Records handed to a worker at a time.
const CHUNK: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    #[serde(rename = "admits")]
    Admits,
    #[serde(rename = "none")]
    NoPartition,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Admits => "admits",
            Classification::NoPartition => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecordResult {
    pub index: usize,
    pub classification: Classification,
    pub hull_size: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReportParams {
    pub k: usize,
    pub t: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportDb {
    pub path: String,
    pub record_count: usize,
}

/// Field order here is the JSON key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub total: usize,
    pub positives: usize,
    pub negatives: usize,
    /// Hull size to number of negatives.
    pub histogram: BTreeMap<usize, usize>,
    pub params: ReportParams,
    pub db: ReportDb,
    #[serde(skip)]
    pub records: Vec<RecordResult>,
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub params: ToleranceParams,
    pub range: Range<usize>,
    pub workers: usize,
    pub mode: SearchMode,
}

pub fn classify(set: &PointSet, params: ToleranceParams, mode: SearchMode) -> Classification {
    match admits_t_tolerant_partition(set, params, mode) {
        Some(_) => Classification::Admits,
        None => Classification::NoPartition,
    }
}

pub fn scan(db: &DbHandle, opts: &ScanOptions) -> Result<ScanReport> {
    scan_with_progress(db, opts, |_| {})
}

/// Like [`scan`], calling `progress` with the number of records finished so
/// far. The report does not depend on `opts.workers`.
pub fn scan_with_progress<F>(db: &DbHandle, opts: &ScanOptions, progress: F) -> Result<ScanReport>
where
    F: Fn(usize) + Sync,
{
    let range = opts.range.clone();
    // validates the range before any work starts
    drop(db.stream_records(range.clone())?);
    let chunks: Vec<Range<usize>> = (range.start..range.end)
        .step_by(CHUNK)
        .map(|s| s..(s + CHUNK).min(range.end))
        .collect();
    let next = AtomicUsize::new(0);
    let done = AtomicUsize::new(0);
    let results: Mutex<Vec<(usize, Result<Vec<RecordResult>>)>> = Mutex::new(Vec::new());

    std::thread::scope(|s| {
        for _ in 0..opts.workers.clamp(1, chunks.len().max(1)) {
            s.spawn(|| loop {
                let c = next.fetch_add(1, Ordering::Relaxed);
                let Some(chunk) = chunks.get(c) else { break };
                let out = classify_chunk(db, chunk.clone(), opts);
                let failed = out.is_err();
                results.lock().unwrap().push((c, out));
                progress(done.fetch_add(chunk.len(), Ordering::Relaxed) + chunk.len());
                if failed {
                    // let the other workers drain quickly
                    next.store(chunks.len(), Ordering::Relaxed);
                    break;
                }
            });
        }
    });

    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|(c, _)| *c);
    let mut records = Vec::with_capacity(range.len());
    for (_, r) in results {
        records.extend(r?);
    }
    Ok(ScanReport::from_records(db, opts.params, records))
}

fn classify_chunk(
    db: &DbHandle,
    chunk: Range<usize>,
    opts: &ScanOptions,
) -> Result<Vec<RecordResult>> {
    db.stream_records(chunk)?
        .map(|r| {
            let (index, set) = r?;
            Ok(RecordResult {
                index,
                classification: classify(&set, opts.params, opts.mode),
                hull_size: set.hull_size(),
            })
        })
        .collect()
}

impl ScanReport {
    pub fn from_records(
        db: &DbHandle,
        params: ToleranceParams,
        records: Vec<RecordResult>,
    ) -> Self {
        let mut histogram: BTreeMap<usize, usize> =
            (3.min(db.n())..=db.n()).map(|h| (h, 0)).collect();
        let mut negatives = 0;
        for r in &records {
            if r.classification == Classification::NoPartition {
                negatives += 1;
                *histogram.entry(r.hull_size).or_default() += 1;
            }
        }
        ScanReport {
            total: records.len(),
            positives: records.len() - negatives,
            negatives,
            histogram,
            params: ReportParams {
                k: params.k,
                t: params.t,
            },
            db: ReportDb {
                path: db.path().display().to_string(),
                record_count: db.record_count(),
            },
            records,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("index,classification,hull_size\n");
        for r in &self.records {
            writeln!(
                s,
                "{},{},{}",
                r.index,
                r.classification.as_str(),
                r.hull_size
            )
            .unwrap();
        }
        s
    }
}
