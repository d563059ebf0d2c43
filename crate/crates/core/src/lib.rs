pub mod analysis;
pub mod cli;
pub mod error;
pub mod field;
pub mod fracjump;
pub mod matrix;
pub mod poly;
pub mod projective;

pub use error::{Error, Result};
pub use field::{FieldElement, Modulus};
pub use matrix::SquareMatrix;
pub use poly::Polynomial;
