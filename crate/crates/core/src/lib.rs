//! Exact computations around arithmetic Chern–Simons invariants of Galois
//! representations with finite image.
//!
//! The crate has two halves. The algebraic half works with explicit finite
//! groups: inhomogeneous cochains with Z/n coefficients, cup products,
//! conjugation homotopies, and central extensions. The arithmetic half
//! evaluates Chern–Simons invariants of concrete families through their
//! reduction to Legendre symbols, and checks embedding-problem obstructions
//! for quaternion extensions.

pub mod cochain;
pub mod cs;
pub mod error;
pub mod extensions;
pub mod groups;
pub mod homotopy;
pub mod linalg;
pub mod numtheory;
pub mod polynomial;

pub use error::{Error, Result};
