pub mod algebra;
pub mod cli;
pub mod error;
pub mod homgroupoid;
pub mod interval;
pub mod linsolve;
pub mod matrix;
pub mod quantization;
pub mod random;
pub mod scalar;
pub mod selftest;
pub mod symbolic;
pub mod verdict;

pub use error::{Error, Result};
