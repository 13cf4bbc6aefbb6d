//! Canonical ensemble, per particle.
//!
//! For non-interacting particles `Z = Z₁^N`, so every per-particle state
//! function follows from the single-particle partition function:
//! `f = −T ln Z₁`, `u = T² ∂_T ln Z₁`, `s = −∂_T f`, `c = T ∂_T s`.

use log::warn;

use crate::error::{Error, Result};
use crate::model::{Coupling, RingModel, Spectrum};
use crate::numerics::{euler_maclaurin_z1, stable_boltzmann_sum, try_differentiate, BoltzmannSum, DiffScheme, TruncationPolicy};
use crate::{MIN_REPORTED_T, VALIDITY_T_MAX};

/// Source of `Z₁`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    /// Truncated direct sum; state functions from energy moments.
    DirectSum,
    /// Truncated Euler–Maclaurin closed form; state functions by numeric
    /// differentiation of `ln Z₁`.
    EulerMaclaurin,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::DirectSum => "direct",
            Backend::EulerMaclaurin => "em",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalState {
    pub t: f64,
    pub beta: f64,
    pub log_z1: f64,
    /// Helmholtz free energy per particle, eV.
    pub f: f64,
    /// Mean energy per particle, eV.
    pub u: f64,
    pub s_entropy: f64,
    pub c: f64,
    /// Mean spin current, eV.
    pub j_z: f64,
    pub backend: Backend,
}

pub(crate) fn check_temperature(t: f64) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Domain(format!("temperature must be finite and > 0, got {t}")));
    }
    if t > VALIDITY_T_MAX {
        warn!("T = {t} eV lies above the {VALIDITY_T_MAX} eV validity window");
    }
    Ok(1.0 / t)
}

fn direct_sum(spectrum: &Spectrum, beta: f64, policy: &TruncationPolicy) -> Result<BoltzmannSum> {
    stable_boltzmann_sum(spectrum.blocks(), beta, policy)
}

/// Boltzmann average of the level index `n` over the truncated grid.
fn mean_index(spectrum: &Spectrum, beta: f64, sum: &BoltzmannSum) -> f64 {
    (0..sum.blocks as u64)
        .map(|n| {
            let [e1, e2] = spectrum.block(n);
            n as f64 * ((-beta * e1 - sum.log_sum).exp() + (-beta * e2 - sum.log_sum).exp())
        })
        .sum()
}

fn current_from_mean_index(spectrum: &Spectrum, mean_n: f64) -> f64 {
    // J(n) is affine in n, so ⟨J⟩ = J(⟨n⟩) = J(0) + ⟨n⟩ (J(1) − J(0))
    let j0 = spectrum.current(0);
    j0 + mean_n * (spectrum.current(1) - j0)
}

/// Per-particle canonical state functions at temperature `t`.
///
/// The spin current is always computed from the direct sum, since the
/// closed form gives no access to `⟨n⟩`.
pub fn canonical_evaluate(
    model: &RingModel,
    coupling: &Coupling,
    t: f64,
    backend: Backend,
    policy: &TruncationPolicy,
) -> Result<CanonicalState> {
    let beta = check_temperature(t)?;
    let spectrum = Spectrum::new(model, coupling);
    let sum = direct_sum(&spectrum, beta, policy)?;
    let j_z = current_from_mean_index(&spectrum, mean_index(&spectrum, beta, &sum));

    match backend {
        Backend::DirectSum => {
            let f = -t * sum.log_sum;
            let u = sum.mean_energy;
            Ok(CanonicalState {
                t,
                beta,
                log_z1: sum.log_sum,
                f,
                u,
                s_entropy: (u - f) / t,
                c: beta * beta * sum.variance(),
                j_z,
                backend,
            })
        }
        Backend::EulerMaclaurin => {
            let scheme = DiffScheme::default();
            let log_z1 = |t: f64| euler_maclaurin_z1(model, coupling, 1.0 / t).map(f64::ln);
            let free_energy = |t: f64| log_z1(t).map(|l| -t * l);
            let entropy = |t: f64| try_differentiate(free_energy, t, &scheme).map(|d| -d.value);

            let lz = log_z1(t)?;
            let u = t * t * try_differentiate(log_z1, t, &scheme)?.value;
            let s_entropy = entropy(t)?;
            let c = t * try_differentiate(entropy, t, &scheme)?.value;
            Ok(CanonicalState {
                t,
                beta,
                log_z1: lz,
                f: -t * lz,
                u,
                s_entropy,
                c,
                j_z,
                backend,
            })
        }
    }
}

/// Canonical thermal average of the spin current,
/// `⟨J⟩ = (1 / 4 m r₀)(2 ⟨n⟩ cos θ − 1)`, with `⟨n⟩` the Boltzmann-weighted
/// level index over `n ≥ 0`, `s ∈ {1, 2}`.
pub fn canonical_spin_current(
    model: &RingModel,
    coupling: &Coupling,
    t: f64,
    policy: &TruncationPolicy,
) -> Result<f64> {
    let beta = check_temperature(t)?;
    let spectrum = Spectrum::new(model, coupling);
    let sum = direct_sum(&spectrum, beta, policy)?;
    Ok(current_from_mean_index(&spectrum, mean_index(&spectrum, beta, &sum)))
}

/// `T → 0⁺` limit of the direct-sum state, linearly extrapolated from
/// `T = 1e-3` and `2e-3` eV.
pub fn canonical_zero_temperature_limit(
    model: &RingModel,
    coupling: &Coupling,
    policy: &TruncationPolicy,
) -> Result<CanonicalState> {
    let lo = canonical_evaluate(model, coupling, MIN_REPORTED_T, Backend::DirectSum, policy)?;
    let hi = canonical_evaluate(model, coupling, 2.0 * MIN_REPORTED_T, Backend::DirectSum, policy)?;
    let x = |a: f64, b: f64| 2.0 * a - b;
    Ok(CanonicalState {
        f: x(lo.f, hi.f),
        u: x(lo.u, hi.u),
        s_entropy: x(lo.s_entropy, hi.s_entropy),
        c: x(lo.c, hi.c).max(0.0),
        j_z: x(lo.j_z, hi.j_z),
        ..lo
    })
}
