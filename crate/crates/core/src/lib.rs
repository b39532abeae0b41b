//! Zarankiewicz bounds for bipartite graphs of low Ferrers dimension.
//!
//! The crate works on exact-integer geometric representations (rays, points,
//! segments, rectangles) of bipartite graphs. For each supported class it can
//! either certify that the graph respects the class's linear edge bound via an
//! elimination order, or extract an explicit `K_{k,k}` witness. Brute-force
//! oracles in [`oracle`] cross-check every claim at small sizes.
//!
//! Module map:
//! - [`geom`]: primitives, representations, graph construction.
//! - [`graph`]: the bipartite graph value type.
//! - [`oracle`]: exhaustive and definitional checks.
//! - [`certify`]: the per-class certifiers and the GIG credit ledger.
//! - [`convert`]: representation equivalences and the dyadic machinery.
//! - [`construct`]: lower-bound instances and the duplication amplifier.
//! - [`sample`]: seeded random instance samplers.

pub mod bounds;
pub mod certify;
pub mod construct;
pub mod convert;
mod error;
pub mod geom;
pub mod graph;
pub mod oracle;
pub mod sample;

pub use error::{Error, Result};
pub use geom::{ClassTag, GeomObject, Representation, Span};
pub use graph::{BipartiteGraph, Vertex};
