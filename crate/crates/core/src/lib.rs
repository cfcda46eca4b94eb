//! Qubit correlation witnesses in the prepare-and-measure and bipartite
//! scenarios with two binary inputs per party.
//!
//! The crate maps states, measurements and boxes onto a common table of
//! conditional probabilities and evaluates dimension witnesses, randomness
//! bounds and CHSH on it. The [`certify`] module decides local-polytope
//! membership exactly and searches for hidden-variable models with a bounded
//! number of hidden values.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod certify;
pub mod error;
pub mod evaluate;
pub mod families;
pub mod input;
pub mod lp;
pub mod sampling;
pub mod scenario;
pub mod witnesses;

pub use error::{Error, Result};
