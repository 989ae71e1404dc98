pub mod bfs;
pub mod classify;
pub mod cli;
pub mod cover;
pub mod error;
pub mod fold;
pub mod gluing;
pub mod graph;
pub mod sofic;
pub mod walk;

pub use error::{Error, Result};
pub use graph::{parse_graph, Graph, Vertex};
