//! Exact symbolic layer: polynomials over `ℤ[k]`, quotient matrices,
//! characteristic polynomials, Sturm root isolation and exact inertia.

pub mod inertia;
pub mod matrix;
pub mod paper;
pub mod quotient;
pub mod sturm;
pub mod zk;

pub use matrix::{charpoly, MatrixZk};
pub use paper::{verify_paper_polynomial, PaperPolynomial, ALL_POLYNOMIALS};
pub use quotient::{coarsest_equitable, quotient_q, symbolic_quotient, Partition, QuotientMatrix};
pub use sturm::largest_real_root;
pub use zk::{PolyZk, Zk};
