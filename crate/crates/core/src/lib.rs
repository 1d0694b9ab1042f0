//! Exact cohomology of the relative Lie algebra complex of so(p,q) with
//! coefficients in polynomial Fock spaces.
//!
//! | module | contents |
//! |---|---|
//! | [`ring`] | sparse rational polynomials, Fock operators, Hilbert series |
//! | [`exterior`] | forms on the noncompact part, wedge, contraction, star |
//! | [`cochain`] | cochains, differentials, compact action, invariant blocks |
//! | [`koszul`] | Koszul complexes and regular-sequence certificates |
//! | [`spectral`] | pages of the polynomial-degree spectral sequence |
//! | [`sonone`] | the SO(n,1) models and their theorems |
//! | [`cli`] | batch jobs, JSON output and the on-disk cache |

pub mod cli;
pub mod cochain;
pub mod error;
pub mod exterior;
pub mod koszul;
pub mod linalg;
pub mod ring;
pub mod scalar;
pub mod sonone;
pub mod spectral;

pub use error::{Error, Result};
