//! Sweep configuration: the flat key-value config file, its command-line
//! overrides and the validated [`SweepSpec`].

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use log::warn;
use serde::Deserialize;

use ring_thermo_core::model::{ELECTRON_MASS_EV, REFERENCE_RADIUS_NM};
use ring_thermo_core::{Backend, Coupling, RingModel, TruncationPolicy, Variant, VALIDITY_T_MAX};

use crate::error::{Error, Result};

pub const DEFAULT_STRENGTHS: [f64; 5] = [0.0, 0.3, 0.6, 0.9, 1.2];
pub const DEFAULT_FIXED_T: f64 = 0.4;
pub const DEFAULT_MU: f64 = 0.1;

/// Raw sweep settings. Every field is optional so that a config file and the
/// command line can be layered; the field names are the config keys and,
/// with `_` replaced by `-`, the flag names.
#[derive(Debug, Clone, Default, PartialEq, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// canonical | grand
    #[arg(long)]
    pub ensemble: Option<String>,
    /// anisotropic | isotropic
    #[arg(long)]
    pub variant: Option<String>,
    /// Coupling strengths, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub strengths: Option<Vec<f64>>,
    #[arg(long)]
    pub t_min: Option<f64>,
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub t_points: Option<usize>,
    /// Radius sweep `min,max,points` in units of the base radius, at `fixed_t`.
    #[arg(long, value_delimiter = ',')]
    pub r0_sweep: Option<Vec<f64>>,
    #[arg(long = "fixed-t", visible_alias = "fixed-T")]
    #[serde(alias = "fixed_T")]
    pub fixed_t: Option<f64>,
    /// Chemical potential (eV), grand ensemble only.
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    /// dimensionless | physical
    #[arg(long)]
    pub unit_mode: Option<String>,
    /// Level spacing Ω (eV) in dimensionless mode.
    #[arg(long)]
    pub omega: Option<f64>,
    /// Product m·r₀ entering the current prefactor in dimensionless mode.
    #[arg(long)]
    pub mass_radius: Option<f64>,
    /// Particle mass (eV), physical mode.
    #[arg(long)]
    pub mass: Option<f64>,
    /// Ring radius (nm), physical mode.
    #[arg(long)]
    pub radius_nm: Option<f64>,
    /// direct | em
    #[arg(long)]
    pub backend: Option<String>,
    /// Subset of f,u,s,c,n,j, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub quantities: Option<Vec<String>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub tail_tol: Option<f64>,
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Worker threads; 0 picks the machine default. Does not affect output.
    #[arg(long)]
    pub workers: Option<usize>,
}

macro_rules! overlay_fields {
    ($base:ident, $top:ident; $($field:ident),*) => {
        $( if $top.$field.is_some() { $base.$field = $top.$field; } )*
    };
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> std::result::Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Config {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        Self::from_toml(&text).map_err(|message| Error::Config {
            path: path.to_path_buf(),
            message,
        })
    }

    /// Fields set in `top` replace those in `self`.
    pub fn overlay(mut self, top: SweepConfig) -> Self {
        overlay_fields!(self, top; ensemble, variant, strengths, t_min, t_max, t_points, r0_sweep,
            fixed_t, mu, unit_mode, omega, mass_radius, mass, radius_nm, backend, quantities, out,
            tail_tol, n_max, workers);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ensemble {
    Canonical,
    Grand,
}

impl Ensemble {
    pub fn name(self) -> &'static str {
        match self {
            Ensemble::Canonical => "canonical",
            Ensemble::Grand => "grand",
        }
    }
}

/// Output column. In the grand ensemble `F` is the grand potential `Φ`
/// and `U`, `S`, `C` are totals rather than per-particle values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    F,
    U,
    S,
    C,
    N,
    J,
}

impl Quantity {
    pub const ALL: [Quantity; 6] = [Quantity::F, Quantity::U, Quantity::S, Quantity::C, Quantity::N, Quantity::J];

    pub fn column(self) -> &'static str {
        match self {
            Quantity::F => "f",
            Quantity::U => "u",
            Quantity::S => "s",
            Quantity::C => "c",
            Quantity::N => "n",
            Quantity::J => "j",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|q| q.column() == s.trim())
    }
}

/// Uniform grid including both end points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Grid {
    pub fn new(name: &str, min: f64, max: f64, points: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min > 0.0) {
            return Err(Error::Spec(format!("{name}: min must be finite and > 0, got {min}")));
        }
        if max <= min {
            return Err(Error::Spec(format!("{name}: max ({max}) must exceed min ({min})")));
        }
        if points < 2 {
            return Err(Error::Spec(format!("{name}: need at least 2 points, got {points}")));
        }
        Ok(Self { min, max, points })
    }

    pub fn values(&self) -> Vec<f64> {
        let last = self.points - 1;
        (0..self.points)
            .map(|i| {
                if i == last {
                    self.max
                } else {
                    self.min + (self.max - self.min) * i as f64 / last as f64
                }
            })
            .collect()
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.min, self.max, self.points)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Units {
    Dimensionless { omega: f64, mass_radius: f64 },
    Physical { mass: f64, radius_nm: f64 },
}

impl Units {
    pub fn model(&self) -> Result<RingModel> {
        let model = match *self {
            Units::Dimensionless { omega, mass_radius } => RingModel::dimensionless(omega, mass_radius, 1.0),
            Units::Physical { mass, radius_nm } => RingModel::physical(mass, radius_nm),
        };
        model.map_err(|e| Error::Spec(e.to_string()))
    }
}

impl fmt::Display for Units {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Units::Dimensionless { omega, mass_radius } => {
                write!(f, "dimensionless omega={omega} mass_radius={mass_radius}")
            }
            Units::Physical { mass, radius_nm } => write!(f, "physical mass={mass} radius_nm={radius_nm}"),
        }
    }
}

/// What is swept: temperature, or the radius at fixed temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Axis {
    Temperature(Grid),
    Radius { grid: Grid, t: f64 },
}

/// A validated sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub ensemble: Ensemble,
    pub variant: Variant,
    pub strengths: Vec<f64>,
    pub t_grid: Grid,
    pub r0_grid: Option<Grid>,
    pub fixed_t: f64,
    pub mu: f64,
    pub units: Units,
    pub backend: Backend,
    pub quantities: Vec<Quantity>,
    pub out: Option<PathBuf>,
    pub policy: TruncationPolicy,
    pub workers: usize,
}

fn parse_choice<T: Copy>(key: &str, value: Option<&str>, default: T, choices: &[(&str, T)]) -> Result<T> {
    let Some(value) = value else { return Ok(default) };
    choices
        .iter()
        .find(|(name, _)| *name == value.trim())
        .map(|&(_, v)| v)
        .ok_or_else(|| {
            let names: Vec<&str> = choices.iter().map(|(n, _)| *n).collect();
            Error::Spec(format!("{key}: expected one of {}, got {value:?}", names.join("|")))
        })
}

fn finite(key: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Spec(format!("{key} must be finite, got {v}")))
    }
}

fn positive(key: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::Spec(format!("{key} must be finite and > 0, got {v}")))
    }
}

impl TryFrom<SweepConfig> for SweepSpec {
    type Error = Error;

    fn try_from(c: SweepConfig) -> Result<Self> {
        let ensemble = parse_choice(
            "ensemble",
            c.ensemble.as_deref(),
            Ensemble::Canonical,
            &[("canonical", Ensemble::Canonical), ("grand", Ensemble::Grand)],
        )?;
        let variant = parse_choice(
            "variant",
            c.variant.as_deref(),
            Variant::Anisotropic,
            &[("anisotropic", Variant::Anisotropic), ("isotropic", Variant::Isotropic)],
        )?;
        let backend = parse_choice(
            "backend",
            c.backend.as_deref(),
            Backend::DirectSum,
            &[
                ("direct", Backend::DirectSum),
                ("em", Backend::EulerMaclaurin),
                ("euler-maclaurin", Backend::EulerMaclaurin),
            ],
        )?;
        if ensemble == Ensemble::Grand && backend != Backend::DirectSum {
            return Err(Error::Spec("the grand ensemble has no closed-form backend; use backend=direct".into()));
        }

        let strengths = c.strengths.unwrap_or_else(|| DEFAULT_STRENGTHS.to_vec());
        if strengths.is_empty() {
            return Err(Error::Spec("strengths must not be empty".into()));
        }
        for &s in &strengths {
            Coupling::new(variant, s).map_err(|e| Error::Spec(format!("strengths: {e}")))?;
        }

        let t_grid = Grid::new(
            "t_grid",
            c.t_min.unwrap_or(0.01),
            c.t_max.unwrap_or(1.0),
            c.t_points.unwrap_or(100),
        )?;
        let r0_grid = match c.r0_sweep.as_deref() {
            None => None,
            Some(&[min, max, points]) => {
                if points.fract() != 0.0 || points < 0.0 {
                    return Err(Error::Spec(format!("r0_sweep: point count must be an integer, got {points}")));
                }
                Some(Grid::new("r0_sweep", min, max, points as usize)?)
            }
            Some(other) => {
                return Err(Error::Spec(format!(
                    "r0_sweep takes min,max,points, got {} values",
                    other.len()
                )))
            }
        };
        let fixed_t = positive("fixed_t", c.fixed_t.unwrap_or(DEFAULT_FIXED_T))?;
        let mu = finite("mu", c.mu.unwrap_or(DEFAULT_MU))?;

        let physical_keys = c.mass.is_some() || c.radius_nm.is_some();
        let dimensionless_keys = c.omega.is_some() || c.mass_radius.is_some();
        let default_mode = if physical_keys { "physical" } else { "dimensionless" };
        let units = match c.unit_mode.as_deref().unwrap_or(default_mode).trim() {
            "dimensionless" if !physical_keys => Units::Dimensionless {
                omega: positive("omega", c.omega.unwrap_or(1.0))?,
                mass_radius: positive("mass_radius", c.mass_radius.unwrap_or(1.0))?,
            },
            "physical" if !dimensionless_keys => Units::Physical {
                mass: positive("mass", c.mass.unwrap_or(ELECTRON_MASS_EV))?,
                radius_nm: positive("radius_nm", c.radius_nm.unwrap_or(REFERENCE_RADIUS_NM))?,
            },
            "dimensionless" | "physical" => {
                return Err(Error::Spec(
                    "omega/mass_radius and mass/radius_nm belong to different unit modes".into(),
                ))
            }
            other => {
                return Err(Error::Spec(format!(
                    "unit_mode: expected dimensionless|physical, got {other:?}"
                )))
            }
        };
        units.model()?;

        let quantities = match &c.quantities {
            None => Quantity::ALL
                .into_iter()
                .filter(|&q| ensemble == Ensemble::Grand || q != Quantity::N)
                .collect(),
            Some(names) => {
                let mut qs = Vec::new();
                for name in names {
                    let q = Quantity::parse(name)
                        .ok_or_else(|| Error::Spec(format!("unknown quantity {name:?}; expected f,u,s,c,n,j")))?;
                    if qs.contains(&q) {
                        return Err(Error::Spec(format!("quantity {name:?} listed twice")));
                    }
                    qs.push(q);
                }
                qs
            }
        };
        if quantities.is_empty() {
            return Err(Error::Spec("quantities must not be empty".into()));
        }
        if ensemble == Ensemble::Canonical && quantities.contains(&Quantity::N) {
            return Err(Error::Spec("quantity n is defined for the grand ensemble only".into()));
        }

        let defaults = TruncationPolicy::default();
        let policy = TruncationPolicy::new(
            c.tail_tol.unwrap_or(defaults.tail_tol),
            defaults.n_min.min(c.n_max.unwrap_or(defaults.n_max)),
            c.n_max.unwrap_or(defaults.n_max),
        )
        .map_err(|e| Error::Spec(e.to_string()))?;

        let spec = SweepSpec {
            ensemble,
            variant,
            strengths,
            t_grid,
            r0_grid,
            fixed_t,
            mu,
            units,
            backend,
            quantities,
            out: c.out,
            policy,
            workers: c.workers.unwrap_or(0),
        };
        match spec.axis() {
            Axis::Temperature(g) if g.max > VALIDITY_T_MAX => warn!(
                "t_max = {} eV lies above the {VALIDITY_T_MAX} eV window in which the series are trusted",
                g.max
            ),
            Axis::Radius { t, .. } if t > VALIDITY_T_MAX => {
                warn!("fixed_t = {t} eV lies above the {VALIDITY_T_MAX} eV validity window")
            }
            _ => {}
        }
        Ok(spec)
    }
}

impl SweepSpec {
    pub fn axis(&self) -> Axis {
        match self.r0_grid {
            Some(grid) => Axis::Radius { grid, t: self.fixed_t },
            None => Axis::Temperature(self.t_grid),
        }
    }

    pub fn base_model(&self) -> Result<RingModel> {
        self.units.model()
    }

    /// Metadata lines (without the leading `#`) echoing the spec. Worker
    /// count and output path are left out so they cannot change the bytes.
    pub fn echo(&self) -> Vec<String> {
        let strengths: Vec<String> = self.strengths.iter().map(|s| s.to_string()).collect();
        let quantities: Vec<&str> = self.quantities.iter().map(|q| q.column()).collect();
        let axis = match self.axis() {
            Axis::Temperature(g) => format!("grid=t {g}"),
            Axis::Radius { grid, t } => format!("grid=r0 {grid} fixed_t={t}"),
        };
        let mut lines = vec![
            format!("ensemble={}", self.ensemble.name()),
            format!("variant={}", self.variant.name()),
            format!("strengths={}", strengths.join(",")),
            axis,
        ];
        if self.ensemble == Ensemble::Grand {
            lines.push(format!("mu={}", self.mu));
        }
        lines.push(format!("unit_mode={}", self.units));
        lines.push(format!("backend={}", self.backend.name()));
        lines.push(format!(
            "truncation tail_tol={:e} n_min={} n_max={}",
            self.policy.tail_tol, self.policy.n_min, self.policy.n_max
        ));
        lines.push(format!("quantities={}", quantities.join(",")));
        lines
    }
}
