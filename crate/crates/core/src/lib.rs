//! Good drawings of complete bipartite graphs `K_{p,q}` on closed surfaces,
//! stored combinatorially: crossing pairs, crossing orders along edges,
//! rotations, crossing classes and edge signs.

pub mod cli;
pub mod drawing;
pub mod duplication;
pub mod embedding;
pub mod enumeration;
pub mod error;
pub mod surface;
pub mod theorems;
