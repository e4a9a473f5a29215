//! Exact computations with comodules over finite group function algebras:
//! restriction and induction, quotient tensor categories by normal
//! subgroups, separable algebra objects and base change.

pub mod battery;
pub mod cli;
pub mod comod;
pub mod error;
pub mod etale;
pub mod exactlin;
pub mod functors;
pub mod groups;
pub mod hopf;
pub mod quotient;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
