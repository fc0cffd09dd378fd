//! Face vectors of flag complexes: cascade decompositions, shadow and cost
//! bounds, greedy Turán-graph constructions and brute-force verification.

pub mod bigjson;
pub mod bounds;
pub mod combinatorics;
pub mod complex;
pub mod construct;
pub mod decompose;
pub mod error;
pub mod real;
pub mod verify;

pub use error::{Error, Result};
