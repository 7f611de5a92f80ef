//! Exact symbolic toolkit for the quantised orthosymplectic superalgebra
//! `U_q[osp(m|n)]` in its vector representation.
//!
//! The crate builds, from first principles and in exact arithmetic:
//!
//! - the scalar ring of Laurent polynomials and rational functions in
//!   `s = q^(1/2)` ([`qring`]);
//! - the graded index set, weights, bilinear form and simple-root data
//!   ([`rootdata`]);
//! - the vector representation of the generators ([`vecrep`]);
//! - the full table of raising operators entering the Lax operator, seeded
//!   from the fundamental values and completed by the induction relations
//!   ([`lax`]);
//! - graded tensor calculus and the R-matrix / opposite R-matrix on `V ⊗ V`
//!   ([`gtensor`]);
//! - executable identity suites (defining relations, Yang–Baxter,
//!   intertwining, coproduct, Serre, ...) ([`verify`]);
//! - Casimir invariants `C_l` and their eigenvalues via the operator route,
//!   the Perelomov–Popov matrix and the closed product formula ([`casimir`]).
//!
//! Everything is exact: a passing check is a polynomial identity, never a
//! floating-point tolerance.

pub mod casimir;
pub mod gtensor;
pub mod lax;
pub mod qring;
pub mod rootdata;
pub mod scalar;
pub mod vecrep;
pub mod verify;

pub use qring::{LaurentPoly, Rat, RatFunc};
pub use rootdata::{BasisSpec, Weight};
pub use scalar::Scalar;
pub use vecrep::GradedMatrix;
