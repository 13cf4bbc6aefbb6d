use rayon::prelude::*;

use ring_thermo_core::{canonical_evaluate, grand_evaluate, Coupling, RingModel};

use crate::error::{Error, Result};
use crate::spec::{Axis, Ensemble, Quantity, SweepSpec};

/// One grid point. `values` is `Err` with a message if the point failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub strength: f64,
    /// Temperature (eV) or radius scale, depending on the sweep axis.
    pub grid: f64,
    pub temperature: f64,
    pub model: RingModel,
    pub values: std::result::Result<Vec<f64>, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub metadata: Vec<String>,
    pub quantities: Vec<Quantity>,
    pub rows: Vec<Row>,
}

impl SweepResult {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.values.is_err()).count()
    }

    pub fn column(&self, q: Quantity) -> Option<usize> {
        self.quantities.iter().position(|&x| x == q)
    }

    /// `(grid, value)` pairs of quantity `q` for one strength, failed rows skipped.
    pub fn series(&self, strength: f64, q: Quantity) -> Vec<(f64, f64)> {
        let Some(k) = self.column(q) else { return Vec::new() };
        self.rows
            .iter()
            .filter(|r| r.strength == strength)
            .filter_map(|r| r.values.as_ref().ok().map(|v| (r.grid, v[k])))
            .collect()
    }
}

struct Point {
    strength: f64,
    grid: f64,
    temperature: f64,
    model: std::result::Result<RingModel, String>,
}

fn evaluate(spec: &SweepSpec, model: &RingModel, strength: f64, t: f64) -> std::result::Result<Vec<f64>, String> {
    let coupling = Coupling::new(spec.variant, strength).map_err(|e| e.to_string())?;
    let values: Vec<f64> = match spec.ensemble {
        Ensemble::Canonical => {
            let s = canonical_evaluate(model, &coupling, t, spec.backend, &spec.policy).map_err(|e| e.to_string())?;
            spec.quantities
                .iter()
                .map(|q| match q {
                    Quantity::F => s.f,
                    Quantity::U => s.u,
                    Quantity::S => s.s_entropy,
                    Quantity::C => s.c,
                    Quantity::J => s.j_z,
                    Quantity::N => f64::NAN,
                })
                .collect()
        }
        Ensemble::Grand => {
            let g = grand_evaluate(model, &coupling, t, spec.mu, &spec.policy).map_err(|e| e.to_string())?;
            spec.quantities
                .iter()
                .map(|q| match q {
                    Quantity::F => g.phi,
                    Quantity::U => g.u_total,
                    Quantity::S => g.s_total,
                    Quantity::C => g.c_total,
                    Quantity::N => g.n_mean,
                    Quantity::J => g.j_z,
                })
                .collect()
        }
    };
    if let Some((q, v)) = spec.quantities.iter().zip(&values).find(|(_, v)| !v.is_finite()) {
        return Err(format!("non-finite {} = {v}", q.column()));
    }
    Ok(values)
}

/// Evaluates the spec at every `(strength, grid)` point.
///
/// Rows come out strength-major with the grid ascending. Points run on a
/// pool of `spec.workers` threads; the result does not depend on the count.
/// A failing point becomes a row with `values = Err(..)`.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    let base = spec.base_model()?;
    let mut points = Vec::new();
    for &strength in &spec.strengths {
        match spec.axis() {
            Axis::Temperature(grid) => {
                for t in grid.values() {
                    points.push(Point { strength, grid: t, temperature: t, model: Ok(base) });
                }
            }
            Axis::Radius { grid, t } => {
                for r in grid.values() {
                    let model = base.with_radius_scale(r).map_err(|e| e.to_string());
                    points.push(Point { strength, grid: r, temperature: t, model });
                }
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers)
        .build()
        .map_err(|e| Error::Pool(e.to_string()))?;
    let rows: Vec<Row> = pool.install(|| {
        points
            .par_iter()
            .map(|p| {
                let values = match &p.model {
                    Ok(m) => evaluate(spec, m, p.strength, p.temperature),
                    Err(e) => Err(e.clone()),
                };
                if let Err(e) = &values {
                    log::error!("strength {} grid {}: {e}", p.strength, p.grid);
                }
                Row {
                    strength: p.strength,
                    grid: p.grid,
                    temperature: p.temperature,
                    model: *p.model.as_ref().unwrap_or(&base),
                    values,
                }
            })
            .collect()
    });

    let mut metadata = spec.echo();
    metadata.push(format!("rows={} failed={}", rows.len(), rows.iter().filter(|r| r.values.is_err()).count()));
    Ok(SweepResult {
        metadata,
        quantities: spec.quantities.clone(),
        rows,
    })
}
