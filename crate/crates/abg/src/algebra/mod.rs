//! Exact linear algebra over Z and Z/2, and the derived topological
//! invariants: homology, orientability, double covers, cocycles, cup
//! products.

pub mod cocycle;
pub mod cover;
pub mod cup;
pub mod homology;
pub mod matrix;
pub mod orientation;
pub mod snf;

pub use cocycle::{
    cohomologous, cohomology_class_is_nonzero, evaluate, pullback, verify_cocycle, Cochain,
};
pub use cover::{covers_isomorphic_over_base, orientation_double_cover, DoubleCover};
pub use cup::{cup_product, pair_with_class};
pub use homology::{
    assemble_boundary, boundary_maps_from_complex, boundary_maps_from_table, homology,
    homology_all, homology_summary, BoundaryMaps, HomologyDescriptor, Ring,
};
pub use matrix::{gf2_kernel_basis, gf2_rank, gf2_solvable, SparseMat};
pub use orientation::{
    facet_adjacencies, fundamental_class_z, fundamental_class_z2, orientation, Adjacency,
    OrientationData,
};
pub use snf::{
    integer_kernel_basis, rank, smith_normal_form, solvable_over_z, SnfOutcome,
};
