use std::io::Write;
use std::ops::Range;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use tverberg_core::bounds::{BoundOptions, BoundReport};
use tverberg_core::constructions::{
    build, convex_plus_three_default_scale, fixture, polygon_fan_default_scale, ConstructionSpec,
    Family,
};
use tverberg_core::db::open_db;
use tverberg_core::pointfile;
use tverberg_core::scan::{scan_with_progress, ScanOptions};
use tverberg_core::tolerance::{
    admits_t_tolerant_partition, enumerate_partitions, failure_witness, prune_reason,
};
use tverberg_core::{PointSet, SearchMode, ToleranceParams};

#[derive(Parser)]
#[command(
    name = "tverberg",
    version,
    about = "Tolerant Tverberg partitions of planar point sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a point set admits a t-tolerant k-partition.
    ///
    /// Exits 0 if it does, 1 if it does not and 2 on bad input.
    Verify {
        /// Point file: a count line, then `x y` per line; `#` starts a comment.
        points: PathBuf,
        #[arg(short, long, default_value_t = 2)]
        k: usize,
        #[arg(short, long, default_value_t = 1)]
        t: usize,
        /// Print the partition found, or a failure witness for every partition.
        #[arg(long)]
        witness: bool,
        /// Check every partition directly instead of the pruned search.
        #[arg(long)]
        brute: bool,
    },
    /// Classify every record of an order-type database.
    Scan {
        #[arg(long, env = "TVERBERG_DB")]
        db: PathBuf,
        /// Points per record.
        #[arg(long, default_value_t = 9)]
        n: usize,
        #[arg(short, long, default_value_t = 2)]
        k: usize,
        #[arg(short, long, default_value_t = 2)]
        t: usize,
        /// Record range `start..end`; either side may be omitted.
        #[arg(long)]
        range: Option<String>,
        #[arg(short, long, default_value_t = default_workers())]
        workers: usize,
        /// Report destination; stdout when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        brute: bool,
        #[arg(short, long)]
        quiet: bool,
    },
    /// Write one of the lower-bound configurations as a point file.
    Construct {
        #[arg(value_enum)]
        family: FamilyArg,
        #[arg(short, long, default_value_t = 2)]
        k: usize,
        #[arg(short, long, default_value_t = 2)]
        t: usize,
        #[arg(short, long, default_value_t = 1)]
        c: usize,
        /// Polygon radius; defaults to a size that rounds safely.
        #[arg(long)]
        scale: Option<i64>,
        /// Fixture name for `fixture`, e.g. ot1874.
        #[arg(long)]
        name: Option<String>,
        /// Destination file; stdout when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Known bounds on N(d, k, t).
    Bounds {
        d: u64,
        k: u64,
        t: u64,
        /// Leave out bounds from later computer search.
        #[arg(long)]
        no_external: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    PolygonFan,
    ConvexPlusThree,
    Nine,
    Fixture,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify {
            points,
            k,
            t,
            witness,
            brute,
        } => verify(points, k, t, witness, brute),
        Command::Scan {
            db,
            n,
            k,
            t,
            range,
            workers,
            out,
            format,
            brute,
            quiet,
        } => run_scan(db, n, k, t, range, workers, out, format, brute, quiet)
            .map(|()| ExitCode::SUCCESS),
        Command::Construct {
            family,
            k,
            t,
            c,
            scale,
            name,
            out,
        } => construct(family, k, t, c, scale, name, out).map(|()| ExitCode::SUCCESS),
        Command::Bounds {
            d,
            k,
            t,
            no_external,
        } => {
            let opts = BoundOptions {
                include_external: !no_external,
            };
            emit(&BoundReport::new(d, k, t, opts).to_string()).map(|()| ExitCode::SUCCESS)
        }
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}

fn verify(path: PathBuf, k: usize, t: usize, witness: bool, brute: bool) -> Result<ExitCode> {
    let set = pointfile::read(&path).with_context(|| format!("reading {}", path.display()))?;
    let params = ToleranceParams::new(k, t)?;
    let mode = if brute {
        SearchMode::Brute
    } else {
        SearchMode::Pruned
    };
    println!("{} points, hull size {}", set.len(), set.hull_size());
    match admits_t_tolerant_partition(&set, params, mode) {
        Some(part) => {
            println!("admits a {t}-tolerant {k}-partition");
            if witness {
                println!("partition {part}");
            }
            Ok(ExitCode::SUCCESS)
        }
        None => {
            println!("no {t}-tolerant {k}-partition");
            if witness {
                print_failures(&set, params)?;
            }
            Ok(ExitCode::from(1))
        }
    }
}

/// Writes to stdout, treating a closed pipe as success.
fn emit(text: &str) -> Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

/// One line per partition: the partition, a removal set that breaks it and the
/// pruning rule that rejects it, if any.
fn print_failures(set: &PointSet, params: ToleranceParams) -> Result<()> {
    let mut out = std::io::stdout().lock();
    for part in enumerate_partitions(set.len(), params, false) {
        let w = failure_witness(set, &part, params.t).context("partition unexpectedly tolerant")?;
        let written = match prune_reason(set, &part, params.t) {
            Some(rule) => writeln!(out, "{part} remove {w} [{}]", rule.name()),
            None => writeln!(out, "{part} remove {w}"),
        };
        match written {
            // the reader stopped listening; the verdict still stands
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => return Ok(()),
            other => other?,
        }
    }
    Ok(())
}

fn parse_range(spec: Option<&str>, count: usize) -> Result<Range<usize>> {
    let Some(spec) = spec else {
        return Ok(0..count);
    };
    let Some((a, b)) = spec.split_once("..") else {
        bail!("range `{spec}` is not of the form start..end");
    };
    let bound = |s: &str, default| -> Result<usize> {
        if s.is_empty() {
            Ok(default)
        } else {
            s.parse().with_context(|| format!("bad range bound `{s}`"))
        }
    };
    Ok(bound(a, 0)?..bound(b, count)?)
}

#[allow(clippy::too_many_arguments)]
fn run_scan(
    path: PathBuf,
    n: usize,
    k: usize,
    t: usize,
    range: Option<String>,
    workers: usize,
    out: Option<PathBuf>,
    format: Format,
    brute: bool,
    quiet: bool,
) -> Result<()> {
    let db = open_db(&path, n).with_context(|| format!("opening {}", path.display()))?;
    let range = parse_range(range.as_deref(), db.record_count())?;
    let opts = ScanOptions {
        params: ToleranceParams::new(k, t)?,
        range: range.clone(),
        workers,
        mode: if brute {
            SearchMode::Brute
        } else {
            SearchMode::Pruned
        },
    };
    if !quiet {
        eprintln!(
            "{}: {} records, byte order {:?} ({:?}); scanning {}..{} with {} workers",
            path.display(),
            db.record_count(),
            db.byte_order(),
            db.byte_order_source(),
            range.start,
            range.end,
            workers
        );
    }
    let start = Instant::now();
    let shown = AtomicUsize::new(0);
    let total = range.len().max(1);
    let report = scan_with_progress(&db, &opts, |done| {
        let pct = done * 100 / total;
        if !quiet && shown.fetch_max(pct, Ordering::Relaxed) < pct {
            eprint!("\r{pct:3}% ({done}/{total})");
        }
    })?;
    if !quiet {
        eprintln!(
            "\rdone in {:.1?}: {} positive, {} negative",
            start.elapsed(),
            report.positives,
            report.negatives
        );
    }
    let text = match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    match out {
        Some(p) => std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
        None => emit(&text)?,
    }
    Ok(())
}

fn construct(
    family: FamilyArg,
    k: usize,
    t: usize,
    c: usize,
    scale: Option<i64>,
    name: Option<String>,
    out: Option<PathBuf>,
) -> Result<()> {
    let (set, label) = match family {
        FamilyArg::Fixture => {
            let name = name.context("`fixture` needs --name")?;
            (fixture(&name)?, format!("fixture {name}"))
        }
        other => {
            let (family, default_scale) = match other {
                FamilyArg::PolygonFan => {
                    (Family::PolygonFan, polygon_fan_default_scale(k.max(1), t))
                }
                FamilyArg::ConvexPlusThree => {
                    (Family::ConvexPlusThree, convex_plus_three_default_scale(t))
                }
                _ => (Family::NinePoint, 1),
            };
            let spec = ConstructionSpec {
                family,
                k: if family == Family::ConvexPlusThree {
                    2
                } else {
                    k
                },
                t,
                c,
                scale: scale.unwrap_or(default_scale),
            };
            let label = match family {
                Family::PolygonFan => format!("polygon-fan k={k} t={t} c={c} scale={}", spec.scale),
                Family::ConvexPlusThree => format!("convex-plus-three t={t} scale={}", spec.scale),
                Family::NinePoint => "nine-point set".to_string(),
            };
            (build(&spec)?, label)
        }
    };
    let summary = format!("{} points, hull size {}", set.len(), set.hull_size());
    let text = pointfile::format(&set, Some(&label));
    match out {
        Some(p) => {
            std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
            println!("{summary}");
        }
        None => {
            emit(&text)?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}
