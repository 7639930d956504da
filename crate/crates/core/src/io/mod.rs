//! Persistent lattice cache and graph serialization.

mod cache;
mod export;

pub use cache::{LatticeCache, CACHE_FORMAT};
pub use export::{graph_json, graph_text, to_dot};
