pub mod bitset;
pub mod perm;
pub mod lattice;
pub mod classify;
pub mod analytics;
pub mod graphs;
pub mod harness;
pub mod io;
