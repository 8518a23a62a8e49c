//! Monoids equipped with an arbitrary preorder ("premons"), and bounded,
//! certificate-producing decision procedures for the preorder-relative
//! notions of unit, quark, irreducible, height and artinian element.

pub mod budget;
pub mod cli;
pub mod config;
pub mod finite;
pub mod numeric;
pub mod poly;
pub mod premon;
pub mod presented;
pub mod puiseux;
pub mod testkit;

pub use budget::{Decision, Degree, Height, SearchBudget, Tri};
pub use premon::{Divisible, Monoid, Premon, PremonError, Preorder};
