//! The Lie algebra `sl(n)` with its maximal parabolic of block type `(1, n-1)`.

mod matrix;
mod parabolic;
mod parity;
mod weight;

pub use matrix::{GMatrix, PolyMatrix};
pub use parabolic::{BasisElement, Decomposition, MatrixDecomposition, ParabolicData};
pub use parity::Parity;
pub use weight::Weight;
