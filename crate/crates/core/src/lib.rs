//! Exact-arithmetic engine for computing homology-level invariants of
//! weight-graded algebras and Lie algebras: bar constructions, Hochschild
//! (cyclic bar) complexes, Chevalley-Eilenberg chains and cochains, tensors
//! of commutative algebras with finite simplicial models, and dimension
//! engines for free algebras over configuration spaces.
//!
//! Everything is computed over the rationals with exact arithmetic.  The
//! central finiteness device is an auxiliary weight grading: all structure
//! maps preserve weight, weight slots are finite-dimensional, and augmentation
//! ideals sit in strictly positive (or strictly negative) weights, so every
//! bar-type complex truncates exactly below a chosen weight bound.

pub mod algebra;
pub mod bar;
pub mod complexes;
pub mod error;
pub mod excision;
pub mod freeconf;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod model;
pub mod presets;
pub mod scalar;
pub mod simplicial;
pub mod verify;

pub use complexes::{BettiTable, BigradedSpace, ChainComplex, Slot};
pub use error::Error;
pub use linalg::SparseMatrix;
pub use scalar::Rational;
