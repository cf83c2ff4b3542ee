//! Exact tools for unit-distance geometry at desk scale: rational covering
//! LPs indexed by small graphs and profiles, admissibility pruning, the
//! graph-lattice exponent recursion, Lenz-style extremal configurations,
//! brute-force simplex counting oracles, and verified 1/r-cuttings built by
//! lifting spheres to hyperplanes and bottom-vertex triangulation.
//!
//! Everything combinatorial is exact (`num::BigRational`); floating point
//! appears only where coordinates are inherently irrational (trigonometric
//! Lenz coordinates) and is always guarded by an explicit tolerance on
//! squared distances.

pub mod acceptance;
pub mod constructions;
pub mod counting;
pub mod cuttings;
pub mod exponents;
pub mod geom;
pub mod graphs;
pub mod lp;
pub(crate) mod par;
pub mod realizability;

pub use geom::{Hyperplane, LiftedSimplex, Point, PointSet, Scalar, Sphere};
pub use graphs::{BipartiteGraph, Profile, SmallGraph};

/// Shorthand used across the crate for exact rational values.
pub type Rat = num::BigRational;

/// Default absolute tolerance on squared distances.
pub const DEFAULT_TOL: f64 = 1e-9;
