//! Numerical kernels shared by both ensembles.

mod boltzmann;
mod diff;
mod erf;
mod euler_maclaurin;

pub use boltzmann::{stable_boltzmann_sum, BoltzmannSum, TruncationPolicy};
pub use diff::{differentiate, try_differentiate, Derivative, DiffOrder, DiffScheme};
pub use erf::{erf, erfc};
pub use euler_maclaurin::{euler_maclaurin_z1, isotropic_z1_uncomplemented};
