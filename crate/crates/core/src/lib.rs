pub mod abelian;
pub mod delta;
pub mod error;
pub mod graph;
pub mod hom;
pub mod randlab;
pub mod search;
pub mod suite;
pub mod tension;
pub mod ttmap;

pub use error::{Error, Result};
