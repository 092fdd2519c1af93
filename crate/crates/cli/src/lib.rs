//! IO, fixtures and the paper-suite checks behind the `blackwell` binary.

pub mod fixtures;
pub mod io;
pub mod suite;
