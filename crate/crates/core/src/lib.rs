//! Exact computations with the local rings built from graphs: edge-ideal quotients, whiskered
//! graphs, fiber products and truncated local algebras, together with their Stanley–Reisner
//! invariants and homological data over GF(p) or the rationals.

pub mod artin;
pub mod complex;
pub mod error;
pub mod field;
pub mod graph;
pub mod homology;
pub mod ideal;
pub mod linalg;
pub mod module;
pub mod poly;
pub mod rings;
pub mod sr;
pub mod verify;

pub use artin::{LinearForm, LocalAlgebra, SearchMode};
pub use complex::{FVector, SimplicialComplex};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use graph::Graph;
pub use ideal::{MonomialIdeal, Presentation, VariableSplit};
pub use homology::Resolution;
pub use linalg::Matrix;
pub use module::{FPModule, ModuleJson};
pub use poly::{Monomial, Polynomial};
pub use verify::Report;
