//! Exact arithmetic: rationals, ℚ(ζ₈), residue fields of ℤ[ζ₈], dense linear
//! algebra over a generic field, and integer matrix reductions.

pub mod cyclotomic;
pub mod field;
pub mod intmat;
pub mod linalg;
pub mod rational;
pub mod residue;

pub use cyclotomic::{CycField, CycNum};
pub use field::Field;
pub use rational::{QField, Rational};
pub use residue::{FFElem, PrimeOfZZeta, ResidueField};
