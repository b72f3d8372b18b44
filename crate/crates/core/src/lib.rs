//! Exact computations on clutters: blockers, minors, covering and packing
//! numbers, the set-covering polyhedron, Smith normal forms, and the `Q_pq`
//! family of minimally non-packing clutters.

pub mod clutter;
pub mod covering;
pub mod decompose;
pub mod error;
pub mod format;
pub mod lattice;
pub mod matrix;
pub mod oracle;
pub mod polyhedron;
pub mod properties;
pub mod qpq;
pub mod random;
pub mod suite;
pub mod vset;

pub use clutter::{Clutter, Hypergraph, MinorSpec, VertexUniverse};
pub use covering::{OptReport, OptValue, WeightVector, Witness};
pub use error::{Error, Result};
pub use matrix::IntegerMatrix;
pub use vset::{VSet, MAX_VERTICES};
