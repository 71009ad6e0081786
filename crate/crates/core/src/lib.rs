//! Exact linear algebra for finite-dimensional quiver algebras: modules,
//! extensions, silting, morphism categories and universal localisations.

pub mod algebra;
pub mod cohnloc;
pub mod corpus;
pub mod error;
pub mod field;
pub mod format;
pub mod homalg;
pub mod matrix;
pub mod morcat;
pub mod par;
pub mod random;
pub mod ringepi;
pub mod silting;
pub mod torsion;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use matrix::Matrix;
