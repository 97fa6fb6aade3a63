//! Parikh automata, constrained automata and semilinear sets, with a
//! determinization pipeline for bounded languages: from a bounded semilinear
//! language to a canonical ε-CA, to a deterministic affine Parikh automaton
//! with a finite monoid, to a finite union of flat deterministic constrained
//! automata.

pub mod apa;
pub mod automata;
pub mod bsl;
pub mod check;
pub mod error;
pub mod flatten;
pub mod format;
pub mod limits;
pub mod models;
pub mod semilinear;

pub use error::{Error, Result};
pub use limits::Limits;
