//! Quadratic residue symbols and quadratic Hecke characters.

pub mod character;
pub mod symbol;

pub use character::{character_of_twist, chi_m, primitive_inducing, psi2, Psi, QuadraticCharacter};
pub use symbol::{quad_symbol, quad_symbol_naive, symbol_small};
