//! Uplink performance of a cooperative satellite-aerial-terrestrial network:
//! terminals on a finite disk relay through hovering aerial nodes to a
//! satellite. The crate provides the closed-form coverage and rate
//! expressions, the spatial point processes they rest on, and a Monte Carlo
//! simulator that reproduces the same quantities from first principles.

pub mod analytic;
pub mod channel;
pub mod config;
pub mod error;
pub mod montecarlo;
pub mod quad;
pub mod spatial;
pub mod sweep;

pub use analytic::{AnalyticOptions, CoverageCurve, MethodTag};
pub use config::{db_to_linear, linear_to_db, ScenarioConfig, SrParams};
pub use error::Error;
pub use quad::QuadratureSpec;
