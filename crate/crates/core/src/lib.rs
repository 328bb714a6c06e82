//! Exact modular representation theory of finite groups.
//!
//! The crate decides, on concrete inputs, when an induced module is support
//! τ-tilting: it builds simple and projective modules with a MeatAxe,
//! computes Auslander–Reiten translates both as Ω² and as D Tr, splits group
//! algebras into blocks, and checks the induced-module characterisations
//! together with their block-wise refinement on a deterministic corpus.

pub mod blockdec;
pub mod error;
pub mod exactfield;
pub mod format;
pub mod grouprep;
pub mod meataxe;
pub mod permgroup;
pub mod taucalc;
pub mod theoremlab;

#[cfg(test)]
mod testkit;

pub use error::{Error, Result};
