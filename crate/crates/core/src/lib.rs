//! Exact commuting-matrix (ADHM) parametrization of the Hilbert scheme of
//! points on affine space.
//!
//! Everything here is computed over ℚ with arbitrary-precision fractions:
//!
//! * [`linalg`]: dense rational matrices, rank/kernel/inverse, incremental spans.
//! * [`poly`]: sparse multivariate polynomials, monomial orders, Buchberger,
//!   normal forms and standard-monomial bases, plus the text grammar.
//! * [`adhm`]: ADHM data `(B_0, …, B_{n-1}, I)`, commutation and stability,
//!   the two directions of the ideal/datum correspondence and gauge equivalence.
//! * [`monad`]: the perfect extended monad of a stable datum and its fiberwise checks.
//! * [`cycle`]: the exact Hilbert–Chow map (support cycle with multiplicities).
//! * [`variety`]: membership in the Hilbert scheme of an affine subvariety.
//! * [`sample`]: seeded generators for corpora of ideals and data.
//!
//! The crate is `no_std` (it only needs `alloc`). IO, file formats, the CLI and
//! the floating-point Hilbert–Chow path live in the `hilbadhm` crate.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod adhm;
pub mod cycle;
mod error;
pub mod linalg;
pub mod monad;
pub mod poly;
pub mod sample;
pub mod univariate;
pub mod variety;

pub use adhm::{AdhmDatum, EquivalenceWitness, KrylovResult};
pub use cycle::{CyclePoint, FieldTag, ZeroCycle};
pub use error::{Error, Result};
pub use linalg::{IncrementalSpan, Matrix, Rational, SpanInsert};
pub use monad::{ExtendedMonad, LinearFormMap, MonadShape};
pub use poly::{IdealPresentation, Monomial, MonomialOrder, OrderKind, Poly};
pub use variety::VarietyConstraint;
