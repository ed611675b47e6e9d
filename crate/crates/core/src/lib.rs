//! Exact multidimensional matrices over the rationals: products, contractions,
//! permanents, stochasticity, and the combinatorial objects encoded by
//! (0,1) and polystochastic matrices.

pub mod combinatorics;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod ops;
pub mod permanent;
pub mod properties;
pub mod rational;
pub mod stochastic;
pub mod tensor;

pub use error::{Error, Result};
pub use rational::Rational;
pub use tensor::{Shape, Tensor};
