//! The simplicial complex of non-chromatic scales.
//!
//! A scale is a set of pitch classes on a cyclic universe (twelve classes by
//! default). It is non-chromatic when it holds no three cyclically
//! consecutive classes; such scales are closed under taking subsets and so
//! form a simplicial complex. This crate builds that complex and computes
//! its f-vector, facets, exact rational homology, collapses and the
//! decomposition of its top homology into Messiaen spheres.

pub mod classify;
pub mod cli;
pub mod collapse;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod homology;
pub mod linalg;
pub mod pitchspace;
pub mod spheres;
pub mod verify;

pub use complex::{FVector, SimplicialComplex};
pub use error::{Error, Result};
pub use homology::{BettiVector, Chain};
pub use pitchspace::{IntervalSequence, PitchClass, PitchUniverse, Scale};
