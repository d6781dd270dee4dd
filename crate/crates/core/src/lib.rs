//! Exact and certified computations for right-angled hyperbolic reflection groups.
//!
//! The crate builds the nerves, Gram matrices and reflection generators of two convex
//! cocompact reflection groups (one in `H^4` from the right-angled 120-cell, one in `H^6`
//! from a 21-vertex torus), checks their combinatorial and metric invariants exactly, and
//! renders limit sets by orbit enumeration.

pub mod exactalg;
pub mod report;
pub mod gamma6;
pub mod limitset;
pub mod menger;
pub mod polytope600;
pub mod scomplex;
