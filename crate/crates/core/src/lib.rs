pub mod cli;
pub mod construct;
pub mod decomposition;
pub mod error;
pub mod graph;
pub mod limits;
pub mod named;
pub mod oracles;
pub mod recognition;
pub mod selftest;
pub mod skeleton;
pub mod solvers;
pub mod treewidth;

pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, VertexSet};
pub use limits::Limits;
