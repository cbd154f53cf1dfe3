//! Exact computations around argument-shift families of Lie algebras with
//! rational structure constants: the Lie–Poisson and frozen brackets, the
//! index and fundamental semi-invariant, semi-invariant discovery, the
//! families `F_a ⊆ F̃_a ⊆ F^si_a`, their transcendence degrees and the
//! completeness test on the codimension-one singular set.

pub mod brackets;
pub mod catalog;
pub mod liealg;
pub mod linalg;
pub mod pfaffian;
pub mod poly;
pub mod report;
pub mod roots;
pub mod sampling;
pub mod semiinv;
mod serial;
pub mod shifts;
pub mod singular;
pub mod trdeg;
