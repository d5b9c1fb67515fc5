//! Verification engine for bimorphisms over finitary monads on finite sets.
//!
//! The crate computes strengths and double strengths of monads on finite
//! sets, decides Kleisli and Eilenberg-Moore laws, checks bimorphism
//! conditions and builds classifying objects (generalised tensor products)
//! as quotients of free algebras. Every universally quantified statement is
//! checked by exhaustive enumeration under an explicit [`Budget`].

pub mod adjlift;
pub mod algebras;
pub mod bimorph;
pub mod classify;
pub mod cli;
pub mod error;
pub mod finset;
pub mod monads;
pub mod report;
pub mod strength;

pub use error::{Error, Result};
pub use finset::{Arrow, Budget, Elem, FinMap, FinSet};
pub use report::{Check, LawReport, Verdict, Witness};
