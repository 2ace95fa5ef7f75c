//! Section calculus, Haar sampling and random-subgroup experiments for groups
//! acting on regular rooted trees.

pub mod error;
pub mod experiment;
pub mod haar;
pub mod tree;
pub mod words;
pub mod zoo;

pub use error::{Error, Result};
