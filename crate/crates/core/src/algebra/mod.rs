//! Finite groups, free words in two letters, and exact integer linear algebra.

mod group;
mod matrix;
mod word;

pub use group::{battery, CayleyTable, FiniteGroup, MAX_ORDER};
pub use matrix::{
    hermite_rows, integer_kernel, is_prime, rank_mod_prime, smith_decomposition,
    smith_normal_form, solve_affine_mod_prime, solve_integer, solve_mod, IntMatrix,
    ModSolutionIter, ModSolutions, SmithDecomposition, SmithForm,
};
pub use word::{eval_word, FreeWord, Sym};
