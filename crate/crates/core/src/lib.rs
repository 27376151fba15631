pub mod error;
pub mod jacobi;
pub mod kleingordon;
pub mod potential;
pub mod radial;
pub mod scaling;
pub mod specfun;
pub mod variational;

pub use error::{Error, Result};
