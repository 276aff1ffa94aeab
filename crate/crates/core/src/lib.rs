//! Exact decision engine for tolerant Tverberg partitions of planar point sets.
//!
//! [`geom`] holds the exact predicates, [`tolerance`] decides tolerance and
//! searches partitions, [`constructions`] builds the lower-bound
//! configurations, [`db`] reads order-type databases, [`scan`] classifies a
//! whole database and [`bounds`] evaluates the known closed-form bounds.

pub mod bounds;
pub mod constructions;
pub mod db;
pub mod error;
pub mod geom;
pub mod partition;
pub mod pointfile;
pub mod scan;
pub mod tolerance;

pub use error::{Error, Result};
pub use geom::{Point, PointSet};
pub use partition::Partition;
pub use tolerance::{SearchMode, ToleranceParams, Witness};
