pub mod alexander;
pub mod analysis;
pub mod combinatorics;
pub mod error;
pub mod exactla;
pub mod input;
pub mod invsys;
pub mod linstrand;
pub mod osalgebra;
pub mod polyfit;
pub mod registry;
pub mod resonance;
pub mod torsion;

pub use error::{Error, Result};
