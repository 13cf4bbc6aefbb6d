//! Ring parameters, coupling configurations and the single-particle spectrum.
//!
//! Both Lorentz-violating configurations give a spectrum of the form
//! `E(n, s) = Ω (n − c_s)²` with a spin-dependent centre `c_s`:
//!
//! * anisotropic (`ξ`): `c_s = Δ_s / 2`, `Δ_s = 1 + (−1)^s √(1 + 4ξ²)`
//! * isotropic (`ξ₀₀`): `c_s = −Ψ_s / 2`, `Ψ_s = 1 − (−1)^s √(1 + 4ξ₀₀²)`
//!
//! Quantum numbers run over `n ≥ 0` and `s ∈ {1, 2}` (spin down, spin up).

use std::fmt;

use crate::error::{Error, Result};

/// `ħc` in eV·nm, used to convert a radius in nm to eV⁻¹.
pub const HBAR_C_EV_NM: f64 = 197.326_980_4;

/// Electron rest mass in eV.
pub const ELECTRON_MASS_EV: f64 = 0.511e6;

/// Ring radius used for the physical parameter set, in nm.
pub const REFERENCE_RADIUS_NM: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitMode {
    /// `Ω` derived from mass and radius as `1 / (2 m r₀²)`.
    Physical,
    /// `Ω` set directly; mass and radius only enter the spin-current prefactor.
    Dimensionless,
}

impl fmt::Display for UnitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitMode::Physical => f.write_str("physical"),
            UnitMode::Dimensionless => f.write_str("dimensionless"),
        }
    }
}

/// Physical parameters of the ring.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingModel {
    omega: f64,
    mass: f64,
    radius: f64,
    unit_mode: UnitMode,
}

fn check_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be finite and > 0, got {value}"
        )))
    }
}

impl RingModel {
    /// Builds a model from an electron mass (eV) and a ring radius (nm).
    pub fn physical(mass_ev: f64, radius_nm: f64) -> Result<Self> {
        check_positive("mass", mass_ev)?;
        check_positive("radius", radius_nm)?;
        let radius = radius_nm / HBAR_C_EV_NM;
        let omega = 1.0 / (2.0 * mass_ev * radius * radius);
        check_positive("omega", omega)?;
        Ok(Self {
            omega,
            mass: mass_ev,
            radius,
            unit_mode: UnitMode::Physical,
        })
    }

    /// Builds a model with `Ω` set directly. `mass` (eV) and `radius` (eV⁻¹)
    /// are kept for the spin-current prefactor `1 / (4 m r₀)`.
    pub fn dimensionless(omega: f64, mass: f64, radius: f64) -> Result<Self> {
        check_positive("omega", omega)?;
        check_positive("mass", mass)?;
        check_positive("radius", radius)?;
        Ok(Self {
            omega,
            mass,
            radius,
            unit_mode: UnitMode::Dimensionless,
        })
    }

    /// `Ω = 1 eV`, `m·r₀ = 1`: the convention used for the figure datasets.
    pub fn reference() -> Self {
        Self {
            omega: 1.0,
            mass: 1.0,
            radius: 1.0,
            unit_mode: UnitMode::Dimensionless,
        }
    }

    /// Electron in a 50 nm ring.
    pub fn physical_reference() -> Self {
        Self::physical(ELECTRON_MASS_EV, REFERENCE_RADIUS_NM).expect("constants are positive")
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Radius in eV⁻¹.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn radius_nm(&self) -> f64 {
        self.radius * HBAR_C_EV_NM
    }

    pub fn unit_mode(&self) -> UnitMode {
        self.unit_mode
    }

    /// `1 / (4 m r₀)` in eV.
    pub fn current_prefactor(&self) -> f64 {
        1.0 / (4.0 * self.mass * self.radius)
    }

    /// Rescales the radius by `factor` at fixed mass.
    ///
    /// In physical mode `Ω` is recomputed from its definition. In
    /// dimensionless mode `Ω` scales as `factor⁻²`, mirroring `Ω ∝ r₀⁻²`.
    pub fn with_radius_scale(&self, factor: f64) -> Result<Self> {
        check_positive("radius scale", factor)?;
        match self.unit_mode {
            UnitMode::Physical => Self::physical(self.mass, self.radius_nm() * factor),
            UnitMode::Dimensionless => {
                Self::dimensionless(self.omega / (factor * factor), self.mass, self.radius * factor)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Coupling through the `d_jk` tensor, strength `ξ`.
    Anisotropic,
    /// Coupling through `d_00`, strength `ξ₀₀`.
    Isotropic,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Anisotropic => "anisotropic",
            Variant::Isotropic => "isotropic",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Lorentz-violating configuration. The strength is the dimensionless
/// combination `ξ = m r₀ √(d₁₂² + d₁₁²)` or `ξ₀₀ = m r₀ d₀₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling {
    variant: Variant,
    strength: f64,
}

impl Coupling {
    pub fn new(variant: Variant, strength: f64) -> Result<Self> {
        if !(strength.is_finite() && strength >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "coupling strength must be finite and >= 0, got {strength}"
            )));
        }
        Ok(Self { variant, strength })
    }

    pub fn anisotropic(xi: f64) -> Result<Self> {
        Self::new(Variant::Anisotropic, xi)
    }

    pub fn isotropic(xi00: f64) -> Result<Self> {
        Self::new(Variant::Isotropic, xi00)
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn strength(&self) -> f64 {
        self.strength
    }

    /// `√(1 + 4 strength²)`
    pub fn splitting_root(&self) -> f64 {
        (1.0 + 4.0 * self.strength * self.strength).sqrt()
    }

    /// Spin-current mixing angle, principal branch: `θ ∈ [0, π/2)`.
    pub fn theta(&self) -> f64 {
        (2.0 * self.strength).atan()
    }

    /// Centre `c_s` of the spectrum parabola `Ω (n − c_s)²`.
    pub fn centre(&self, spin: Spin) -> f64 {
        let root = self.splitting_root();
        match self.variant {
            Variant::Anisotropic => 0.5 * (1.0 + spin.sign() * root),
            Variant::Isotropic => -0.5 * (1.0 - spin.sign() * root),
        }
    }

    fn expect(&self, variant: Variant) -> Result<()> {
        if self.variant == variant {
            Ok(())
        } else {
            Err(Error::VariantMismatch {
                expected: variant.name(),
                found: self.variant.name(),
            })
        }
    }
}

/// Spin label: `s = 1` is spin down, `s = 2` is spin up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    Down = 1,
    Up = 2,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Down, Spin::Up];

    pub fn label(self) -> u8 {
        self as u8
    }

    /// `(−1)^s`
    pub fn sign(self) -> f64 {
        match self {
            Spin::Down => -1.0,
            Spin::Up => 1.0,
        }
    }
}

impl TryFrom<u8> for Spin {
    type Error = Error;

    fn try_from(s: u8) -> Result<Self> {
        match s {
            1 => Ok(Spin::Down),
            2 => Ok(Spin::Up),
            _ => Err(Error::Domain(format!("spin label must be 1 or 2, got {s}"))),
        }
    }
}

/// One single-particle level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPoint {
    pub n: u64,
    pub spin: Spin,
    /// eV
    pub energy: f64,
    /// Spin-current eigenvalue, eV.
    pub current: f64,
}

/// Precomputed spectrum of one (model, coupling) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum {
    omega: f64,
    centres: [f64; 2],
    current_prefactor: f64,
    cos_theta: f64,
}

impl Spectrum {
    pub fn new(model: &RingModel, coupling: &Coupling) -> Self {
        Self {
            omega: model.omega(),
            centres: [coupling.centre(Spin::Down), coupling.centre(Spin::Up)],
            current_prefactor: model.current_prefactor(),
            cos_theta: coupling.theta().cos(),
        }
    }

    pub fn energy(&self, n: u64, spin: Spin) -> f64 {
        let x = n as f64 - self.centres[spin as usize - 1];
        self.omega * x * x
    }

    /// Both spin energies of block `n`, ordered `[s = 1, s = 2]`.
    pub fn block(&self, n: u64) -> [f64; 2] {
        [self.energy(n, Spin::Down), self.energy(n, Spin::Up)]
    }

    /// `(1 / 4 m r₀)(2 n cos θ − 1)`; independent of the spin label.
    pub fn current(&self, n: u64) -> f64 {
        self.current_prefactor * (2.0 * n as f64 * self.cos_theta - 1.0)
    }

    pub fn point(&self, n: u64, spin: Spin) -> SpectrumPoint {
        SpectrumPoint {
            n,
            spin,
            energy: self.energy(n, spin),
            current: self.current(n),
        }
    }

    /// Energy blocks for `n = 0, 1, 2, …` (unbounded).
    pub fn blocks(&self) -> impl Iterator<Item = [f64; 2]> + '_ {
        (0u64..).map(move |n| self.block(n))
    }
}

fn check_quantum_number(n: i64) -> Result<u64> {
    u64::try_from(n).map_err(|_| Error::Domain(format!("quantum number n must be >= 0, got {n}")))
}

/// Energy of level `(n, s)` in eV.
pub fn energy(model: &RingModel, coupling: &Coupling, n: i64, s: u8) -> Result<f64> {
    let n = check_quantum_number(n)?;
    let spin = Spin::try_from(s)?;
    Ok(Spectrum::new(model, coupling).energy(n, spin))
}

/// `Δ_s = 1 + (−1)^s √(1 + 4ξ²)` for the anisotropic coupling.
pub fn delta_s(coupling: &Coupling, s: u8) -> Result<f64> {
    coupling.expect(Variant::Anisotropic)?;
    let spin = Spin::try_from(s)?;
    Ok(1.0 + spin.sign() * coupling.splitting_root())
}

/// `Ψ_s = 1 − (−1)^s √(1 + 4ξ₀₀²)` for the isotropic coupling.
pub fn psi_s(coupling: &Coupling, s: u8) -> Result<f64> {
    coupling.expect(Variant::Isotropic)?;
    let spin = Spin::try_from(s)?;
    Ok(1.0 - spin.sign() * coupling.splitting_root())
}

/// Spin-current eigenvalue `(1 / 4 m r₀)(2 n cos θ − 1)` in eV.
pub fn spin_current_eigen(model: &RingModel, coupling: &Coupling, n: i64) -> Result<f64> {
    let n = check_quantum_number(n)?;
    Ok(Spectrum::new(model, coupling).current(n))
}
