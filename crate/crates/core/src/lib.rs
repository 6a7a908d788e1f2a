//! Trivariate polynomial approximation by sampling along Lissajous curves.
//!
//! The curves `theta -> (cos(a theta), cos(b theta), cos(c theta))` with the
//! frequencies of [`frequency::frequency_triple`] carry rank-1 Chebyshev
//! lattices that integrate every polynomial of degree `2n` exactly against the
//! product Chebyshev measure. On top of these lattices the crate provides
//! hyperinterpolation through a single univariate Chebyshev transform,
//! Clenshaw-Curtis type cubature for other densities, and extraction of
//! Approximate Fekete and Discrete Leja interpolation points.

pub mod cheb1d;
pub mod cli;
pub mod cubature;
pub mod error;
pub mod extremal;
pub mod frequency;
pub mod graded;
pub mod grid;
pub mod hyperinterp;
pub mod io;
pub mod lattice;
pub mod linalg;

pub use error::{Error, Result};
pub use extremal::{ExtremalKind, ExtremalSet};
pub use frequency::FrequencyTriple;
pub use graded::{dim_p3, Basis, GradedIndexer};
pub use grid::ControlGrid;
pub use hyperinterp::{CoeffSet, TestFunction};
pub use lattice::{Lattice, Point3, Variant};
