//! Conformance tooling for set-based interval arithmetic.
//!
//! The crate is layered bottom-up:
//!
//! * [`bigfloat`]: radix-2 multiprecision values with explicit formats and
//!   stateless directed rounding.
//! * [`hexfloat`]: exact hexadecimal text encoding of those values.
//! * [`pointfuncs`]: correctly rounded elementary functions (Ziv loop over
//!   rigorous enclosures).
//! * [`interval`]: bare and decorated intervals with tight evaluation.
//! * [`suite`]: the JSON test-case model.
//! * [`harness`]: runs suites against an implementation and judges results.
//! * [`generator`]: computes expected outputs and hard-to-round arguments.

pub mod bigfloat;
pub mod generator;
pub mod hexfloat;
pub mod harness;
pub mod interval;
pub mod pointfuncs;
pub mod suite;

pub use bigfloat::{BigFloat, Bracket, Format, RoundingDirection};
pub use pointfuncs::FunctionId;
