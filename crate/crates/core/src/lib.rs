pub mod error;

pub mod cli;
pub mod correlation;
pub mod enumerate;
pub mod exactmath;
pub mod formulas;
pub mod region;

pub use error::{Error, Result};
pub use exactmath::{ExactInteger, ExactRational};
