pub mod chow;
pub mod cli;
pub mod curve;
pub mod error;
pub mod funcfield;
pub mod infdiv;
pub mod lattice;
pub mod linalg;
pub mod motive;
pub mod sample;
pub mod symbols;
pub mod verify;

pub use error::{Error, Result};
pub use funcfield::{LaurentSeries, Point, Poly, Rat, RatFunc};
