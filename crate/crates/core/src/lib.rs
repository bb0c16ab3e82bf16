//! Operator algebra for the first-order differential operations of vector
//! analysis on R^3.
//!
//! The three operations `grad`, `curl` and `div` are partial operations on
//! the union of scalar and vector fields. Composing them produces chains
//! that are either meaningless (adjacent sorts do not line up), identically
//! zero, or one of exactly three nontrivial families:
//!
//! * alternating `... div grad` words acting on scalars,
//! * powers of `curl`,
//! * alternating `... grad div` words acting on vector fields.
//!
//! The crate is split into:
//!
//! * [`operator`]: sorts, operators, chains and their composition signatures.
//! * [`classify`]: the meaningless / zero / nontrivial decision and census.
//! * [`parse`]: the textual chain language (`"div curl grad"`, `"∇3 ∘ ∇1"`).
//! * [`poly`] and [`field`]: exact polynomial fields over the rationals and
//!   the differential operators acting on them.
//! * [`collections`]: polyharmonic and curling collections and the
//!   inductive Laplacian identities.
//! * [`numeric`]: a finite-difference oracle independent of the symbolic path.
//! * [`corpus`], [`json`], [`verify`]: seeded field corpora, the JSON field
//!   format and the verification suites used by the `nabla` binary.

pub mod classify;
pub mod collections;
pub mod corpus;
pub mod field;
pub mod json;
pub mod numeric;
pub mod operator;
pub mod parse;
pub mod poly;
pub mod verify;

pub use classify::{census, classify, nontrivial_chain, Census, Classification, NormalFormFamily};
pub use field::{apply_chain, FieldError, FieldValue, ScalarField, VectorField};
pub use operator::{chain_signature, compose_pair, Chain, ChainSignature, Operator, Sort};
pub use parse::{format, parse, ParseError};
pub use poly::{Polynomial, Rational};
