//! Exact computations with finite-dimensional Hopf algebras over prime fields.
//!
//! The crate works entirely with structure constants. A Hopf algebra is a
//! [`HopfPresentation`]: a basis with sparse tables for the product, unit,
//! coproduct, counit and antipode, over either `F_p` or `Q`. On top of that
//! substrate it provides
//!
//! - axiom verification with readable failure witnesses ([`hopf`]),
//! - restricted enveloping algebras of p-Lie algebras by PBW straightening ([`plie`]),
//! - Drinfeld twists, R-matrices, triangularity and minimality ([`twist`]),
//! - Jacobson radical, center and matrix-algebra recognition ([`degeneracy`]),
//! - constant group schemes, `mu_n`, `alpha_p`, Cartier duality and exhaustive
//!   twist enumeration ([`commutative`]),
//! - named worked examples ([`fixtures`]),
//! - the construction of isocategorical groups `G_b` from a skew form on a
//!   normal abelian subgroup ([`isocat`]).

#![allow(clippy::needless_range_loop)]

pub mod commutative;
pub mod degeneracy;
pub mod error;
pub mod fixtures;
pub mod hopf;
pub mod isocat;
pub mod linalg;
pub mod plie;
pub mod report;
pub mod twist;

pub use error::{Error, Result};

pub use hopf::{AlgebraPresentation, CoalgebraPresentation, HopfPresentation};
pub use linalg::{Field, Matrix, Scalar, SparseTensor};
pub use report::{CheckEntry, CheckReport, Witness};

/// Elements of `H^{⊗k}` are sparse tensors of arity `k` over the basis of `H`.
pub type TensorElement = SparseTensor;
