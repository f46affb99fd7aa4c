//! Exact enumeration of pattern-avoiding set partitions.
//!
//! The crate expands the generating functions for partitions avoiding
//! `12...k1` and `12...k12` with exact rational power series and checks
//! every coefficient against brute-force enumeration of restricted growth
//! strings.
//!
//! - [`partition`]: canonical words, patterns, containment, enumeration.
//! - [`series`]: truncated power series and polynomials over the rationals.
//! - [`formulas`]: the closed-form generating functions and reference
//!   sequences (Stirling, Bell, Catalan, ...).
//! - [`oracle`]: brute-force cross-checks producing [`oracle::CheckReport`]s.
//! - [`cli`]: the `noncrossing` command-line front end.

pub mod cli;
pub mod formulas;
pub mod oracle;
pub mod partition;
pub mod series;

pub use formulas::{Family, GfRequest};
pub use oracle::{CheckReport, Oracle};
pub use partition::{Pattern, SetPartition};
pub use series::{Polynomial, Series};
