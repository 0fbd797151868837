//! Spectral analysis of mixed graphs through their Hermitian adjacency matrices.

pub mod canon;
pub mod catalog;
pub mod charpoly;
pub mod classifier;
pub mod dd;
pub mod error;
pub mod families;
pub mod graph;
pub mod hermitian;
pub mod jacobi;
pub mod limits;
pub mod mgfile;
pub mod poly;
pub mod sample;
pub mod suites;
pub mod switching;
pub mod unit;

pub use error::{Error, Result};
pub use graph::{CycleDescriptor, Edge, EdgeKind, MixedGraph};
pub use hermitian::{spectral_radius, spectrum, Spectrum};
pub use poly::IntPolynomial;
pub use unit::Weight;
