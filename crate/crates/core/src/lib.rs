//! Exact symbolic computation for the q-deformed algebra `U_q(iso2)`, the
//! localized algebra `Û_q(m2)`, the homomorphism between them, and their
//! representations.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod freealg;
pub mod morphism;
pub mod repmod;
pub mod scalars;

pub use error::{Error, Result};
