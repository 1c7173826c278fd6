//! Signless-Laplacian spectral extremal graph toolkit.
//!
//! Builds the extremal families, computes Q-indices and Perron vectors,
//! checks quotient characteristic polynomials exactly, and enumerates
//! small graphs isomorph-free for brute-force checks.

pub mod canon;
pub mod certificate;
pub mod enumerate;
pub mod error;
pub mod exactpoly;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod spectral;
pub mod suites;
pub mod surgery;

pub use error::{EnumerateError, Error, FamilyError, GraphError, PolyError, SpectralError};
pub use families::{build_family, FamilyId, FamilyInstance};
pub use graph::{Graph, Primitive, StructuralProfile};
pub use spectral::{q_index, QSpectrumResult};

/// Version string embedded in certificates.
pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");
