//! Exact upper bounds on the code rate of multiple phased-burst correction
//! (MPBC) and single burst correction (SBC) binary block codes.
//!
//! Counting is done with arbitrary-precision integers throughout. The
//! [`oracle`] module enumerates small instances exhaustively so every
//! closed-form count can be checked against ground truth.

pub mod bounds;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod oracle;
pub mod sweep;
pub mod verify;

pub use bounds::{BoundQuery, BoundResult, Capability, CodeGeometry};
pub use combinatorics::BigCount;
pub use error::{Error, Result};
