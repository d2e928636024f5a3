//! Fourier analysis on compact groups at desk scale.

pub mod coset;
pub mod error;
pub mod experiments;
pub mod group;
pub mod linalg;
pub mod suites;
pub mod trig;

pub use error::{Error, Result};
