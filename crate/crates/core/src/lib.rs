//! Dual characters of flagged Weyl modules for box diagrams in an `n x n` grid.
//!
//! For a diagram `D` the module `M_D` is spanned by the products of minors
//! `det(Y_D^C)` over all diagrams `C` Gale-dominated by `D`. The dual
//! character `chi_D(x)` records, for each x-weight, the dimension of the span
//! of the corresponding determinants. This crate computes `chi_D` exactly,
//! decides whether it attains its upper bound, checks the equivalence with
//! avoidance of the forbidden 2x2 configuration, and produces explicit
//! linear-dependence witnesses when the configuration is present.

pub mod character;
pub mod cli;
pub mod diagram;
pub mod fillings;
pub mod verify;
pub mod ypoly;

mod error;

pub use error::{Error, Result};
