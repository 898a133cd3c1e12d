//! The F-method pipeline: F-system, kernel, equivariant solutions.

pub mod classify;
pub mod equivariance;
pub mod fsystem;
pub mod operators;
pub mod solve;

pub use classify::{classify, fiber_label, reducibility, ClassificationRecord, Family, Reducibility};
pub use equivariance::{impose_equivariance, nu_shift_formula, Equivariance};
pub use fsystem::{assemble_fsystem, FSystem};
pub use operators::{d_k, dk_bundles, fc, fc_inverse, phi_k, psi_k, symbol_inverse, DiffOperatorSpec, VermaHomSpec};
pub use solve::{solve_at, solve_degree, ExceptionalValue, SolutionSpace};
