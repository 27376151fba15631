//! Command-line front end: bound reports, coupling sweeps, spectral
//! curves, critical couplings and Jacobi identity checks, as CSV or JSON.

pub mod app;
pub mod config;
pub mod error;
pub mod format;
pub mod report;

pub use app::run;
pub use error::CliError;
