//! Exact computer algebra for symplectic Dirac elements.
//!
//! Constructs the Dirac pair `(D+, D-)` in two settings — `U(g) ⊗ W` for
//! Z/2-graded quadratic Lie algebras and `H ⊗ W` for graded affine Hecke
//! algebras — and verifies the commutator formulas, central-element
//! identities, scalar actions, degree-0 constants and kernel descriptions
//! attached to them. All arithmetic is rational or polynomial in the
//! deformation parameters; nothing is floating point.

pub mod hecke;
pub mod irreps;
pub mod matrix;
pub mod poly;
pub mod quadlie;
pub mod roots;
pub mod scalar;
pub mod verify;
pub mod weyl;
pub mod weylgroup;

pub use scalar::{Q, Scalar, Sym};
