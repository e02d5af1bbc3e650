//! Exact linear algebra and structure tools for rhizaform algebras.

pub mod algebra;
pub mod classify;
pub mod cocycle;
pub mod corpus;
pub mod error;
pub mod identities;
pub mod io;
pub mod matrix;
pub mod operators;
pub mod poly;
pub mod representations;
pub mod scalar;
pub mod structure;
pub mod subspace;

pub use algebra::{Algebra, BilinearOp, Convention, TwoOpAlgebra};
pub use error::{Error, Result};
pub use identities::IdentityReport;
pub use matrix::Matrix;
pub use scalar::{Coeff, Field, Rational, Scalar};
pub use subspace::Subspace;
