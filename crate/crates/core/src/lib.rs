//! Isometry invariants, covariants and joint invariants of valence-2 Killing
//! tensors in the Euclidean and Minkowski planes, with exact arithmetic, and
//! the invariant classification of the orthogonal coordinate webs they
//! generate.

pub mod error;
pub mod exact_kernel;
pub mod frames_canonical;
pub mod invariant_engine;
pub mod isometry_actions;
pub mod killing_spaces;
pub mod lie_generators;
pub mod reference;
pub mod verify;
pub mod web_classifier;

pub use error::{Error, Result};
