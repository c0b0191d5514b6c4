//! Exact piecewise-linear construction of a family of closed manifolds
//! obtained as regular neighborhoods of skeleta in cubical lattices, plus
//! the machinery needed to verify their combinatorial and homological
//! properties: simplicial complexes over exact rational coordinates,
//! barycentric subdivision, quotients by lattice groups, homology over Z
//! and Z/2, orientation analysis, and intersection counts.

pub mod algebra;
pub mod complex;
pub mod error;
pub mod geometry;
pub mod lattice;
pub mod neighborhood;
pub mod pipeline;
pub mod rat;
pub mod report;
pub mod scx;

pub(crate) mod uf;

pub use error::{Error, Result};
