//! Exact Littelmann path model and Hecke-path combinatorics for
//! symmetrizable Kac-Moody root systems.

pub mod apartment;
pub mod error;
pub mod galleries;
pub mod io;
pub mod model;
pub mod paths;
pub mod rational;
pub mod root_system;

pub use error::{Error, Result};
pub use rational::{Covector, Rat, Vector};
pub use root_system::{CartanMatrix, RealRoot, RootSystem, WeylElement};
