//! Exact two-spinor tensor algebra for Minkowski space.
//!
//! The crate builds dense spinor tensors over the exact scalar ring
//! Q(i, sqrt2), provides the standard index operations (products, slot
//! permutations, contractions, raising/lowering with the antisymmetric
//! epsilon form, complex conjugation, alternation over composite index
//! groups), and uses them to construct and mechanically verify the bases
//! of the totally antisymmetric tensor spaces of Minkowski space together
//! with the light-cone map, the metric, Hodge duality and the
//! self-dual/anti-self-dual decomposition.
//!
//! All arithmetic is exact; every check either passes identically or
//! reports a concrete counterexample index tuple. A small expression
//! language (see [`sdsl`]) lets the same objects be written in abstract
//! index notation and evaluated against the library constructions, and
//! [`suite::verify_paper`] bundles every check into one report.
//!
//! With the default `parallel` feature the batch-style work (permutation
//! sums, randomized sample checks, rank elimination) runs on rayon;
//! disabling the feature yields a dependency-free sequential build with
//! identical results.
//!
//! ```
//! use spintensor::objects::{composite_groups, volume_tensor, PaperConstants};
//!
//! let c = PaperConstants::new();
//! let volume = volume_tensor(&c);
//! let report = volume.is_totally_antisymmetric(&composite_groups(4))?;
//! assert!(report.passed());
//! # Ok::<(), spintensor::TensorError>(())
//! ```

// Index-based loops over matrix rows and columns mirror the subscript
// algebra they implement; iterator rewrites obscure which index is which.
#![allow(clippy::needless_range_loop)]

pub mod exec;
pub mod minkowski;
pub mod objects;
pub mod rank;
pub mod report;
pub mod scalar;
pub mod sdsl;
pub mod suite;
pub mod tensor;

pub use report::{CheckItem, Counterexample, VerificationReport};
pub use scalar::{ExactScalar, Rational, ScalarError};
pub use tensor::{IndexSignature, Slot, SpinTensor, TensorError, Variance};
