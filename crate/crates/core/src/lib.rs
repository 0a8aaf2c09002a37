//! Exact algebra for quadratic Lie superalgebras.
//!
//! The crate covers presentations and their Jacobi conditions, ordered
//! normal forms in the enveloping algebra, the family `gl2(n/1)`, level
//! analysis of its induced modules, and a fermionic Fock realisation.

pub mod atypicality;
pub mod cli;
pub mod fock;
pub mod gl2n1;
pub mod linalg;
pub mod nc_core;
pub mod pbw;
pub mod presentation;
