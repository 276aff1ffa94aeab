//! Text format for point sets: a count line, then one `x y` line per point.
//! Lines starting with `#` and blank lines are ignored.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geom::{Point, PointSet};

pub fn parse(text: &str) -> Result<PointSet> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let err = |line, message: String| Error::Parse { line, message };

    let (count_line, first) = lines
        .next()
        .ok_or_else(|| err(0, "missing point count".into()))?;
    let n: usize = first.parse().map_err(|_| {
        err(
            count_line,
            format!("expected a point count, found `{first}`"),
        )
    })?;

    let mut points = Vec::with_capacity(n);
    let mut last_line = count_line;
    for (line, l) in lines {
        last_line = line;
        if points.len() == n {
            return Err(err(line, format!("more than the declared {n} points")));
        }
        let fields: Vec<&str> = l.split_whitespace().collect();
        let [x, y] = fields[..] else {
            return Err(err(line, format!("expected `x y`, found `{l}`")));
        };
        let coord = |s: &str| {
            s.parse::<i64>()
                .map_err(|_| err(line, format!("`{s}` is not an integer")))
        };
        let (x, y) = (coord(x)?, coord(y)?);
        points.push(Point::checked(x, y).map_err(|e| err(line, e.to_string()))?);
    }
    if points.len() < n {
        return Err(err(
            last_line,
            format!("declared {n} points, found {}", points.len()),
        ));
    }
    PointSet::new(points).map_err(|e| err(count_line, e.to_string()))
}

pub fn read(path: impl AsRef<Path>) -> Result<PointSet> {
    parse(&std::fs::read_to_string(path)?)
}

/// Renders `set`, with each line of `comment` as a leading `#` line.
pub fn format(set: &PointSet, comment: Option<&str>) -> String {
    let mut s = String::new();
    for line in comment.into_iter().flat_map(str::lines) {
        writeln!(s, "# {line}").unwrap();
    }
    writeln!(s, "{}", set.len()).unwrap();
    for p in set.iter() {
        writeln!(s, "{} {}", p.x, p.y).unwrap();
    }
    s
}

pub fn write(path: impl AsRef<Path>, set: &PointSet, comment: Option<&str>) -> Result<()> {
    Ok(std::fs::write(path, format(set, comment))?)
}
