//! Algebraic Brauer groups of open degree-4 del Pezzo surfaces.

pub mod exactlinalg;
pub mod cohomology;
pub mod weyl_d5;
pub mod line_geometry;
pub mod local_invariant;
pub mod arith;
pub mod residue_symbols;
pub mod surface_lab;
pub mod selfcheck;
