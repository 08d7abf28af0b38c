//! Apéry constants of Fano varieties from their quantum differential
//! equations.

pub mod apery;
pub mod cli;
pub mod error;
pub mod gpqh;
pub mod hgdeform;
pub mod linalg;
pub mod prodspaces;
pub mod qde;
pub mod real;
pub mod rootsys;
pub mod zetaid;

pub use error::{Error, Result};
