//! Exact integral homology for Hochschild complexes, chromatic graph
//! cohomology and Khovanov cubes of plane signed graphs.

pub mod algebra;
pub mod complex;
pub mod error;
pub mod graph;
pub mod hochschild;
pub mod integer;
pub mod khovanov;
pub mod linalg;
pub mod par;
pub mod poly;
pub mod verify;

pub use algebra::{Algebra, AlgebraSpec, Bimodule, FrobeniusData, ModuleSpec};
pub use complex::{complex_homology, complex_homology_with, BigradedHomology, ChainComplex, Direction};
pub use error::{Error, Result};
pub use integer::Integer;
pub use khovanov::{Sign, SignedPlaneGraph};
pub use linalg::{HomologySummary, IntegerMatrix};
pub use par::Execution;
