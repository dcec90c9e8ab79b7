//! Combinatorial Heegaard splittings of graph manifolds.
//!
//! A graph manifold is described by a [`model::GraphManifoldSpec`]: Seifert
//! and product vertices joined by torus and annulus edges. The crate builds
//! standard splitting surfaces from per-vertex pieces and per-edge patterns,
//! enumerates them, and amalgamates generalized splittings.

mod error;
mod unionfind;

pub mod model;
pub mod slope;
pub mod surfaces;

pub use error::{Error, Result};
pub mod assembly;
pub mod edge;
pub mod splitting;
