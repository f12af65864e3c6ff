pub mod arith;
pub mod error;
pub mod fermat;
pub mod lattice;
pub mod polarization;
pub mod quartic;
pub mod poly;

pub use error::{Error, Result};
pub mod groebner;
pub mod report;
