//! Parameter sweeps over temperature, coupling strength and ring radius,
//! written as CSV datasets.

pub mod dataset;
pub mod error;
pub mod spec;
pub mod sweep;

pub use dataset::{compare_datasets, emit_csv, render_csv, CompareReport, Dataset, ERROR_SENTINEL};
pub use error::{Error, Result};
pub use spec::{Ensemble, Grid, Quantity, SweepConfig, SweepSpec, Units};
pub use sweep::{run_sweep, Row, SweepResult};

/// Exit status for a sweep with at least one failed point.
pub const EXIT_NUMERICAL_FAILURE: i32 = 1;
/// Exit status for an invalid spec or schema mismatch.
pub const EXIT_INVALID_SPEC: i32 = 2;
