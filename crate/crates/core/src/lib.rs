//! Loop expansion of colored Jones polynomials for knots presented as braid
//! closures.
//!
//! The homological side builds Lawrence representation matrices over
//! `Z[x^±1, d^±1]` and assembles the loop expansion from their traces. The
//! quantum side implements the braiding on generic Verma modules and on the
//! finite-dimensional irreducibles of `U_q(sl2)` and is used as an independent
//! oracle for the homological side.

pub mod algebra;
pub mod braid;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod expansion;
pub mod lawrence;
pub mod quantum;

pub use braid::BraidWord;
pub use error::{Error, Result};
