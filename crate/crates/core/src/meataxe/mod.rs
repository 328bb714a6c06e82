//! MeatAxe-style structure theory: irreducibility, composition factors,
//! simple modules, radicals and Krull–Schmidt decompositions.

mod decompose;
mod engine;
mod simples;

pub use decompose::{
    add_compare, algebra_radical, decompose, indecomposable_iso, isomorphism, lift_idempotent, AddCompare,
    Decomposition,
};
pub use engine::Irreducibility;
pub use simples::{composition_factors, is_irreducible, radical_top, simples_of, RadicalTop, SimpleTable};
