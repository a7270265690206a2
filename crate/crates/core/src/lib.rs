//! Exact A∞-algebra toolkit: structure constants over Q or F_p, bimodules,
//! suspensions, twisted complexes and simplicial cochain models.

pub mod ainfinity;
pub mod bimodules;
pub mod cli;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod linalg;
pub mod multimap;
pub mod simplicial;
pub mod space;
pub mod suspension;
pub mod twisted;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
