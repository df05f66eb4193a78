//! Finite-dimensional toolkit for entropic characteristics of quantum
//! channels: extended entropies on subnormalized operators, Kraus-form
//! operations with dilations and complements, the channel/state duality with
//! an explicit inverse, convex-roof functionals (output-entropy closures,
//! the Holevo quantity, entanglement of formation), constrained capacities
//! and additivity experiments.
//!
//! Everything is dense, deterministic and seeded: experiment drivers derive
//! per-case random streams from a single seed and parallel reductions are
//! order-independent, so reruns reproduce results exactly.

pub mod capacity;
pub mod channels;
pub mod choi;
pub mod error;
pub mod linops;
pub mod roof;

pub use error::{Error, Result};
pub use linops::{State, Subsystem, TraceClassOperator};
