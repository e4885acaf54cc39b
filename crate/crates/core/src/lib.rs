//! Graph braid groups: discrete configuration spaces of robots on a graph,
//! presentations of their fundamental groups, and motion planning.

pub mod complex;
pub mod engine;
pub mod error;
pub mod graph;
pub mod group;
pub mod oracle;
pub mod planner;

pub use error::{Error, Result};
pub use graph::{CellRef, EdgeId, Graph, VertexId};
