//! Finite Esakia duality and regular Heyting algebras.
//!
//! Finite posets stand in for Esakia spaces; their up-set algebras are the
//! finite Heyting algebras. On top of this the crate provides regularity tests,
//! bounded bisimulation quotients, negative-valuation and team semantics,
//! inquisitive normal forms and Jankov formulas for negative logics.

pub mod bits;
pub mod poset;
pub mod heyting;
pub mod logic;
pub mod regularity;
pub mod jankov;
