//! Statistical mechanics of a one-dimensional quantum ring whose electron
//! spectrum is deformed by Lorentz-violating couplings.
//!
//! The crate is organised bottom-up:
//!
//! * [`model`] holds the ring parameters, the two coupling configurations,
//!   the energy spectra and the per-state spin-current kernel.
//! * [`numerics`] provides the error function, the closed-form
//!   Euler–Maclaurin partition function, overflow-safe Boltzmann sums and
//!   central finite differences.
//! * [`canonical`] evaluates per-particle canonical state functions.
//! * [`grand`] evaluates grand-canonical state functions at fixed chemical
//!   potential with Fermi-Dirac occupations.
//!
//! Natural units are used throughout: energies and temperatures in eV,
//! lengths in eV⁻¹ and `k_B = 1`.

pub mod canonical;
pub mod error;
pub mod grand;
pub mod model;
pub mod numerics;

pub use canonical::{canonical_evaluate, canonical_spin_current, Backend, CanonicalState};
pub use error::{Error, Result};
pub use grand::{grand_evaluate, grand_potential, grand_spin_current, occupation, GrandState};
pub use model::{Coupling, RingModel, Spectrum, SpectrumPoint, Spin, UnitMode, Variant};
pub use numerics::{DiffScheme, TruncationPolicy};

/// Upper end of the temperature window in which the truncated closed-form
/// partition functions are trusted (eV).
pub const VALIDITY_T_MAX: f64 = 1.0;

/// Lowest temperature at which state functions are evaluated directly when
/// reporting zero-temperature limits (eV).
pub const MIN_REPORTED_T: f64 = 1e-3;
