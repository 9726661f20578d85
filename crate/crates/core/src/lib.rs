//! Certified geometry of elevated polyhedra.
//!
//! Seed solids are built with exact coordinates in Q(√5); pyramids erected
//! on their faces introduce square roots, which are carried as expression
//! graphs and evaluated to outward-rounded dyadic intervals at whatever
//! precision a decision needs. On top of that sit coplanarity, contact and
//! stability predicates with three-valued, certified verdicts.

pub mod catalog;
pub mod claims;
pub mod io;
pub mod mesh;
pub mod predicates;
pub mod scalar;
pub mod vector;

pub use catalog::{build_seed, list_seeds, SeedId, SeedSummary};
pub use mesh::{derive_topology, elevate, face_frame, ElevatedSolid, HeightRule, Polyhedron};
pub use scalar::{
    certify, sign, Certified, Dyadic, EvalError, ExactQ5, Interval, PrecisionPolicy, Real,
    SignVerdict,
};
pub use vector::Vec3;

/// Version stamped into every report.
pub const TOOL_VERSION: &str = concat!("elevatum ", env!("CARGO_PKG_VERSION"));
