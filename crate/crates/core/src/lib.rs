//! Exact computational machinery for multiplicity-freeness questions about
//! representations of finite groups over finite fields: Hecke algebras in
//! both the convolution and endomorphism models, meataxe composition
//! factors, socle/radical structure, relative projectivity and injectivity,
//! and a scenario engine that wires these into verdict pipelines.

// index loops over multiple aligned buffers are the dominant shape of the
// exact-arithmetic kernels here
#![allow(clippy::needless_range_loop)]

pub mod cache;
pub mod error;
pub mod field;
pub mod groups;
pub mod homalg;
pub mod linalg;
pub mod meataxe;
pub mod reps;
pub mod structure;
pub mod verdicts;

pub use error::{Error, Result};
