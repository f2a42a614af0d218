//! Exact computer algebra for rings of numerical and stably numerical
//! polynomials, their p-local and p-adic truncations, and the étale
//! certificates that the truncations admit.

pub mod arith;
pub mod cli;
pub mod error;
pub mod etale;
pub mod invariants;
pub mod numpoly;

pub use arith::{ord_p, teichmuller, ExactRational, PadicResidue, Valuation};
pub use error::{Error, Result};
