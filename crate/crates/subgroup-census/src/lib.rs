//! Exact census of subgroups of rank-two abelian groups Z_m x Z_n, together
//! with the summatory and analytic machinery around the counts: the total
//! and cyclic subgroup counting functions with several independent
//! evaluation routes, a brute-force enumeration oracle, sub-quadratic
//! summatory evaluators, high-precision analytic constants for the main
//! terms, and Dirichlet-series identity checks.

pub mod arith;
pub mod cli;
pub mod constants;
pub mod counts;
pub mod dd;
pub mod error;
pub mod oracle;
pub mod report;
pub mod series;
pub mod summatory;

pub use error::{CensusError, Result};
