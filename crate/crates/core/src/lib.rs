//! Belief change for logic programs under answer set semantics, carried out
//! on SE models: expansion, three revision operators, arbitration and basic
//! merging, canonical programs, a randomized postulate checker and
//! meta-level ASP encodings.

pub mod canonical;
pub mod change;
pub mod cli;
pub mod distance;
pub mod encoding;
pub mod error;
pub mod merge;
pub mod postulates;
pub mod se;
pub mod syntax;

pub use error::{Error, Result};
