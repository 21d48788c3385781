pub mod assemblage;
pub mod cli;
pub mod divide;
pub mod error;
pub mod fiber;
pub mod framing;
pub mod generators;
pub mod geometry;
pub mod intersection_graph;
pub mod invariants;
pub mod planar_map;
pub mod polyline;
pub mod toggle;

pub use error::{Error, Result};

/// Exact rational scalar used by the generators and file formats.
pub type Rational = num_rational::BigRational;
/// Point with exact rational coordinates.
pub type Point = geometry::Point<Rational>;
