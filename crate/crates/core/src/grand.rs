//! Grand-canonical ensemble at fixed chemical potential.
//!
//! Each level `(n, s)` holds zero or one fermion, so
//! `Φ = −T Σ ln(1 + e^{−β(E−μ)})` and every state function is a sum of
//! per-level Fermi-Dirac terms. Derivatives are taken at constant `μ`.

use crate::canonical::check_temperature;
use crate::error::{Error, Result};
use crate::model::{Coupling, RingModel, Spectrum};
use crate::numerics::{try_differentiate, DiffScheme, TruncationPolicy};
use crate::MIN_REPORTED_T;

const INACCESSIBLE_EXPONENT: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrandState {
    pub t: f64,
    pub mu: f64,
    /// Grand potential, eV.
    pub phi: f64,
    pub n_mean: f64,
    /// Internal energy, eV.
    pub u_total: f64,
    pub s_total: f64,
    pub c_total: f64,
    /// Spin current, eV.
    pub j_z: f64,
    /// The heat-capacity stencil had to be shrunk to stay at `T > 0`.
    pub clipped: bool,
}

/// Fermi-Dirac occupation `1 / (e^{β(E−μ)} + 1)`, safe on both tails.
pub fn occupation(e: f64, t: f64, mu: f64) -> f64 {
    let x = (e - mu) / t;
    if x >= 0.0 {
        let q = (-x).exp();
        q / (1.0 + q)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

/// `ln(1 + e^{−x})` without overflow.
fn log1p_exp_neg(x: f64) -> f64 {
    if x >= 0.0 {
        (-x).exp().ln_1p()
    } else {
        -x + x.exp().ln_1p()
    }
}

/// Raw Fermi sums over the truncated level grid.
#[derive(Debug, Clone, Copy, Default)]
struct FermiSums {
    /// `Σ ln(1 + e^{−β(E−μ)})`
    log_terms: f64,
    occupied: f64,
    energy: f64,
    /// `Σ [ln(1 + e^{−x}) + x f]`
    entropy: f64,
    current: f64,
    levels: usize,
}

fn fermi_sums(spectrum: &Spectrum, t: f64, mu: f64, policy: &TruncationPolicy) -> Result<FermiSums> {
    let beta = check_temperature(t)?;
    if !mu.is_finite() {
        return Err(Error::InvalidParameter(format!("chemical potential must be finite, got {mu}")));
    }
    policy.validate()?;

    let mut sums = FermiSums::default();
    let mut previous: Option<[f64; 2]> = None;
    let mut ratio = f64::INFINITY;
    for n in 0..policy.n_max as u64 {
        let block = spectrum.block(n);
        let current = spectrum.current(n);
        let mut block_log = 0.0;
        let mut accessible = false;
        for &e in &block {
            let x = beta * (e - mu);
            let occ = occupation(e, t, mu);
            let log_term = log1p_exp_neg(x);
            block_log += log_term;
            sums.occupied += occ;
            sums.energy += e * occ;
            sums.entropy += log_term + x * occ;
            sums.current += current * occ;
            sums.levels += 1;
            accessible |= x <= INACCESSIBLE_EXPONENT;
        }
        sums.log_terms += block_log;

        ratio = if sums.log_terms > 0.0 { block_log / sums.log_terms } else { 0.0 };
        let rising = previous.is_some_and(|p| block[0] >= p[0] && block[1] >= p[1]);
        if n as usize + 1 >= policy.n_min && rising && !accessible && ratio <= policy.tail_tol {
            return Ok(sums);
        }
        previous = Some(block);
    }
    Err(Error::TruncationFailure {
        n_max: policy.n_max,
        ratio,
    })
}

/// `Φ = −T Σ_{n≥0} Σ_s ln(1 + e^{−β(E−μ)})`
pub fn grand_potential(
    model: &RingModel,
    coupling: &Coupling,
    t: f64,
    mu: f64,
    policy: &TruncationPolicy,
) -> Result<f64> {
    let sums = fermi_sums(&Spectrum::new(model, coupling), t, mu, policy)?;
    Ok(-t * sums.log_terms)
}

/// Fermi-weighted spin current `Σ J(n) f(E_{n,s})`.
pub fn grand_spin_current(
    model: &RingModel,
    coupling: &Coupling,
    t: f64,
    mu: f64,
    policy: &TruncationPolicy,
) -> Result<f64> {
    Ok(fermi_sums(&Spectrum::new(model, coupling), t, mu, policy)?.current)
}

/// Grand-canonical state functions at `(t, mu)`.
///
/// `N`, `U` and `S` come from exact Fermi-sum identities; `C = T ∂S/∂T` at
/// fixed `μ` is taken numerically.
pub fn grand_evaluate(
    model: &RingModel,
    coupling: &Coupling,
    t: f64,
    mu: f64,
    policy: &TruncationPolicy,
) -> Result<GrandState> {
    let spectrum = Spectrum::new(model, coupling);
    let sums = fermi_sums(&spectrum, t, mu, policy)?;
    let ds = try_differentiate(
        |x| fermi_sums(&spectrum, x, mu, policy).map(|s| s.entropy),
        t,
        &DiffScheme::default(),
    )?;
    Ok(GrandState {
        t,
        mu,
        phi: -t * sums.log_terms,
        n_mean: sums.occupied,
        u_total: sums.energy,
        s_total: sums.entropy,
        c_total: t * ds.value,
        j_z: sums.current,
        clipped: ds.clipped,
    })
}

/// `T → 0⁺` limit, linearly extrapolated from `T = 1e-3` and `2e-3` eV.
pub fn grand_zero_temperature_limit(
    model: &RingModel,
    coupling: &Coupling,
    mu: f64,
    policy: &TruncationPolicy,
) -> Result<GrandState> {
    let lo = grand_evaluate(model, coupling, MIN_REPORTED_T, mu, policy)?;
    let hi = grand_evaluate(model, coupling, 2.0 * MIN_REPORTED_T, mu, policy)?;
    let x = |a: f64, b: f64| 2.0 * a - b;
    Ok(GrandState {
        phi: x(lo.phi, hi.phi),
        n_mean: x(lo.n_mean, hi.n_mean),
        u_total: x(lo.u_total, hi.u_total),
        s_total: x(lo.s_total, hi.s_total).max(0.0),
        c_total: x(lo.c_total, hi.c_total).max(0.0),
        j_z: x(lo.j_z, hi.j_z),
        ..lo
    })
}
