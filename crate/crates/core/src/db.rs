//! Reader for order-type databases: headerless files of fixed-width records,
//! each holding `n` unsigned `(x, y)` pairs.

use std::fs;
use std::ops::Range;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::constructions::fixture;
use crate::error::{Error, Result};
use crate::geom::{Point, PointSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ByteOrder {
    Little,
    Big,
}

/// How the byte order of an opened file was settled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ByteOrderSource {
    Explicit,
    /// The reference nine-point coordinates were found at this record.
    Detected {
        record: usize,
    },
    /// No reference record found; little-endian assumed.
    Assumed,
}

/// Records searched for the reference coordinates when detecting byte order.
pub const DETECTION_WINDOW: usize = 5000;

/// Fixture used to validate byte order on nine-point files.
pub const REFERENCE_FIXTURE: &str = "ot1874";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DbFormat {
    pub n: usize,
    pub coord_bytes: usize,
}

impl DbFormat {
    pub fn new(n: usize) -> Self {
        DbFormat { n, coord_bytes: 2 }
    }

    pub fn record_len(&self) -> usize {
        self.n * 2 * self.coord_bytes
    }
}

/// Read-only, in-memory view of a database file.
#[derive(Debug)]
pub struct DbHandle {
    path: PathBuf,
    format: DbFormat,
    byte_order: ByteOrder,
    byte_order_source: ByteOrderSource,
    data: Vec<u8>,
}

/// Opens a database of `n`-point records with 16-bit coordinates, detecting the
/// byte order.
pub fn open_db(path: impl AsRef<Path>, n: usize) -> Result<DbHandle> {
    DbHandle::open(path, DbFormat::new(n), None)
}

impl DbHandle {
    /// `byte_order: None` detects it from the reference fixture.
    pub fn open(
        path: impl AsRef<Path>,
        format: DbFormat,
        byte_order: Option<ByteOrder>,
    ) -> Result<Self> {
        if format.n == 0 || !(1..=2).contains(&format.coord_bytes) {
            return Err(Error::InvalidParameters(format!(
                "unsupported record format: n={}, {} bytes per coordinate",
                format.n, format.coord_bytes
            )));
        }
        let path = path.as_ref().to_path_buf();
        let data = fs::read(&path)?;
        let record_len = format.record_len() as u64;
        if !(data.len() as u64).is_multiple_of(record_len) {
            return Err(Error::SizeMismatch {
                path,
                len: data.len() as u64,
                record_len,
            });
        }
        let mut db = DbHandle {
            path,
            format,
            byte_order: byte_order.unwrap_or(ByteOrder::Little),
            byte_order_source: ByteOrderSource::Explicit,
            data,
        };
        if byte_order.is_none() {
            db.byte_order_source = ByteOrderSource::Assumed;
            for order in [ByteOrder::Little, ByteOrder::Big] {
                if let Some(record) = db.find_reference(order) {
                    db.byte_order = order;
                    db.byte_order_source = ByteOrderSource::Detected { record };
                    break;
                }
            }
        }
        Ok(db)
    }

    fn find_reference(&self, order: ByteOrder) -> Option<usize> {
        let reference = fixture(REFERENCE_FIXTURE).ok()?;
        if self.format.n != reference.len() {
            return None;
        }
        let mut wanted = reference.into_points();
        wanted.sort_unstable();
        (0..self.record_count().min(DETECTION_WINDOW)).find(|&i| {
            let mut got = self.decode(i, order);
            got.sort_unstable();
            got == wanted
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn n(&self) -> usize {
        self.format.n
    }

    pub fn format(&self) -> DbFormat {
        self.format
    }

    pub fn record_count(&self) -> usize {
        self.data.len() / self.format.record_len()
    }

    pub fn byte_order(&self) -> ByteOrder {
        self.byte_order
    }

    pub fn byte_order_source(&self) -> ByteOrderSource {
        self.byte_order_source
    }

    fn decode(&self, index: usize, order: ByteOrder) -> Vec<Point> {
        let w = self.format.coord_bytes;
        let start = index * self.format.record_len();
        let bytes = &self.data[start..start + self.format.record_len()];
        let coord = |c: &[u8]| -> i64 {
            match (w, order) {
                (1, _) => c[0] as i64,
                (_, ByteOrder::Little) => u16::from_le_bytes([c[0], c[1]]) as i64,
                (_, ByteOrder::Big) => u16::from_be_bytes([c[0], c[1]]) as i64,
            }
        };
        bytes
            .chunks_exact(2 * w)
            .map(|pair| Point::new(coord(&pair[..w]), coord(&pair[w..])))
            .collect()
    }

    pub fn record_at(&self, index: usize) -> Result<PointSet> {
        let count = self.record_count();
        if index >= count {
            return Err(Error::IndexOutOfRange { index, count });
        }
        PointSet::new(self.decode(index, self.byte_order)).map_err(|e| Error::BadRecord {
            index,
            source: Box::new(e),
        })
    }

    /// Records of `range` in index order.
    pub fn stream_records(
        &self,
        range: Range<usize>,
    ) -> Result<impl Iterator<Item = Result<(usize, PointSet)>> + '_> {
        if range.start > range.end || range.end > self.record_count() {
            return Err(Error::IndexOutOfRange {
                index: range.end.max(range.start),
                count: self.record_count(),
            });
        }
        Ok(range.map(move |i| self.record_at(i).map(|p| (i, p))))
    }
}

/// Serializes point sets into the database record layout with 16-bit
/// coordinates.
pub fn encode_records<'a>(
    sets: impl IntoIterator<Item = &'a PointSet>,
    order: ByteOrder,
) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    for set in sets {
        for p in set.iter() {
            for c in [p.x, p.y] {
                let v =
                    u16::try_from(c).map_err(|_| Error::CoordinateOutOfRange { x: p.x, y: p.y })?;
                out.extend_from_slice(&match order {
                    ByteOrder::Little => v.to_le_bytes(),
                    ByteOrder::Big => v.to_be_bytes(),
                });
            }
        }
    }
    Ok(out)
}
