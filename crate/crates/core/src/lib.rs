//! Numerical wall-crossing for sheaves on P^3.
//!
//! Exact rational arithmetic on Chern characters, tilt and Bridgeland
//! central charges, numerical walls, destabilizing-pair enumeration, Euler
//! pairings and the dimension bookkeeping for moduli components of curves of
//! class `(1, 0, -6, 15)` (degree 6, genus 4).

pub mod chern;
pub mod cli;
pub mod destab;
pub mod error;
pub mod homalg;
pub mod ledger;
pub mod rational;
pub mod stability;
pub mod walls;

pub use chern::{Char3, PlaneChar};
pub use error::{Error, Result};
pub use rational::Q;
