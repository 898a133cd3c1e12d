//! Exact computer algebra for the F-method on `(SL(n,R), P_{1,n-1})`:
//! Weyl algebras, the principal series action, the F-system and its
//! solutions, K-type tables and standardness of the resulting maps.

pub mod error;
pub mod fmethod;
pub mod ktype;
pub mod lambda;
pub mod linalg;
pub mod multi_index;
pub mod poly;
pub mod principal;
pub mod rational;
pub mod sl;
pub mod standard;
pub mod vector_poly;
pub mod weyl;

pub use error::{Error, Result};
pub use fmethod::{
    assemble_fsystem, classify, reducibility, solve_degree, ClassificationRecord, DiffOperatorSpec, FSystem, Family,
    SolutionSpace, VermaHomSpec,
};
pub use ktype::{composition_series, finite_model_check, harmonic_dim, kernel_image_ktypes, KTypeFormula};
pub use lambda::{LambdaPoly, Param};
pub use multi_index::{dual_pairing, monomial_basis, MultiIndex};
pub use poly::{Polynomial, VarSpace};
pub use principal::{dpi, verify_intertwining, BundleParams, Fiber, PDOperator};
pub use rational::{Coeff, Rational};
pub use sl::{GMatrix, ParabolicData, Parity, Weight};
pub use standard::{linkage_search, mu_eta_weights, standardness_report, RootSystemA};
pub use vector_poly::VectorPolynomial;
pub use weyl::WeylElement;
