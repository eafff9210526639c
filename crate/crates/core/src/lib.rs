//! Exact computations with jets of diffeomorphisms, representations of
//! finitely presented groups into jet groups, and the cohomological
//! obstructions to extending them one order further.

pub mod cdga;
pub mod charvar;
pub mod cli;
pub mod error;
pub mod fpgroup;
pub mod io;
pub mod jetcore;
pub mod jetgroup;
pub mod obstruction;
pub mod random;
pub mod selftest;

pub use error::{Error, Result};
