//! Decide infinitesimal rigidity of reflection-symmetric bar-joint frameworks
//! whose edge lengths are measured in a quadrilateral norm (a planar norm whose
//! unit ball is a quadrilateral with two facet pairs).
//!
//! The crate offers two independent decision routes and the machinery to play
//! them against each other:
//!
//! * **Linear-algebraic**: exact rational rigidity and orbit matrices with
//!   their ranks, nullities and flex bases ([`rigidity`]).
//! * **Combinatorial**: monochrome subgraph decompositions, gain-sparsity
//!   counts and inductive construction sequences ([`characterize`],
//!   [`sparsity`], [`moves`]).
//!
//! On top of both sits a certified realization procedure ([`realize`]) that
//! turns a gain-tight signed quotient graph into an explicit symmetric or
//! anti-symmetric isostatic placement.
//!
//! All coordinates and matrix entries are exact rationals; every predicate in
//! the public API is decided exactly, with no floating-point tolerances.

pub mod characterize;
pub mod geometry;
pub mod json;
pub mod linalg;
pub mod moves;
pub mod quotient;
pub mod random;
pub mod rational;
pub mod realize;
pub mod rigidity;
pub mod sparsity;

/// The exact scalar used by all geometry and rank computations.
pub type Q = num::BigRational;

/// Exact rational matrix.
pub type QMatrix = linalg::Matrix<Q>;
