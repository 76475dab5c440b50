pub mod cli;
pub mod creal;
pub mod derivative_lab;
pub mod dovetail;
pub mod enumerators;
pub mod error;
pub mod exact_numeric;
pub mod trig_series;
pub mod wave_radial;

pub use error::{Error, Result};
