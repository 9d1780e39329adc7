//! Network construction, topological measures and rank statistics for
//! comparing bibliographic databases.
//!
//! The crate is `no_std` and only needs `alloc`. Parsing, persistence and the
//! command line live in the `bibnet` companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod graph;
pub mod mds;
pub mod measures;
pub mod network;
pub mod rng;
pub mod sampling;
pub mod stats;

pub use error::{GraphError, MeasureError, MdsError, NetworkError, StatsError};
pub use graph::{BowTie, BowTieMode, Graph};
pub use measures::{Measure, MeasureConfig, MeasureVector};
pub use network::{Network, Paradigm, Record, RecordSet};
