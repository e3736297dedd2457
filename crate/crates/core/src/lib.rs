//! Exact cyclotomic and pseudocyclotomic polynomial toolkit.
//!
//! The crate is layered bottom-up: [`intpoly`] provides exact dense integer
//! polynomials, [`numtheory`] the arithmetic helpers, [`cyclotomic`] and
//! [`pseudocyclo`] compute the polynomials themselves, [`binary`] and
//! [`fjdecomp`] implement the structural decompositions, and [`flatness`]
//! classifies heights and drives parallel conjecture scans.

pub mod binary;
pub mod cyclotomic;
pub mod fjdecomp;
pub mod flatness;
pub mod intpoly;
pub mod numtheory;
pub mod pseudocyclo;
pub mod verify;

pub use cyclotomic::{phi, phi_with, psi, CycloIndex, PhiAlgorithm};
pub use intpoly::{Degree, IntPolynomial, LaurentPolynomial, PolyError};
pub use pseudocyclo::{pseudo_phi, pseudo_psi, PseudoParts};
