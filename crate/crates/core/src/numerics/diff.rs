use log::warn;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffOrder {
    /// `(f(x+h) − f(x−h)) / 2h`
    Central2,
    /// `(−f(x+2h) + 8f(x+h) − 8f(x−h) + f(x−2h)) / 12h`
    Central4,
}

impl DiffOrder {
    /// Stencil half-width in units of `h`.
    fn reach(self) -> f64 {
        match self {
            DiffOrder::Central2 => 1.0,
            DiffOrder::Central4 => 2.0,
        }
    }
}

/// Central finite-difference scheme with step `h = max(rel_step · T, min_step)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffScheme {
    pub order: DiffOrder,
    pub rel_step: f64,
    pub min_step: f64,
}

impl Default for DiffScheme {
    fn default() -> Self {
        Self {
            order: DiffOrder::Central4,
            rel_step: 1e-3,
            min_step: 1e-5,
        }
    }
}

impl DiffScheme {
    pub fn central2() -> Self {
        Self {
            order: DiffOrder::Central2,
            ..Self::default()
        }
    }

    pub fn step(&self, t: f64) -> f64 {
        (self.rel_step * t).max(self.min_step)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub value: f64,
    /// Step actually used.
    pub step: f64,
    /// The nominal step would have pushed the stencil to `T ≤ 0` and was shrunk.
    pub clipped: bool,
}

/// `df/dT` at `t` for an infallible `f`.
pub fn differentiate<F>(f: F, t: f64, scheme: &DiffScheme) -> Result<Derivative>
where
    F: Fn(f64) -> f64,
{
    try_differentiate(|x| Ok(f(x)), t, scheme)
}

/// `df/dT` at `t`; evaluation errors of `f` are propagated.
///
/// The stencil never leaves `T > 0`: if it would, `h` is shrunk so the
/// lowest point sits at `t/2`, and the result is marked `clipped`.
pub fn try_differentiate<F>(f: F, t: f64, scheme: &DiffScheme) -> Result<Derivative>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Domain(format!("differentiation point must be > 0, got {t}")));
    }
    if !(scheme.rel_step > 0.0 && scheme.min_step > 0.0) {
        return Err(Error::InvalidParameter("finite-difference steps must be > 0".into()));
    }
    let reach = scheme.order.reach();
    let mut h = scheme.step(t);
    let clipped = t - reach * h <= 0.0;
    if clipped {
        h = 0.5 * t / reach;
        warn!("finite-difference stencil clipped at T = {t:e}: h reduced to {h:e}");
    }
    let value = match scheme.order {
        DiffOrder::Central2 => (f(t + h)? - f(t - h)?) / (2.0 * h),
        DiffOrder::Central4 => {
            (-f(t + 2.0 * h)? + 8.0 * f(t + h)? - 8.0 * f(t - h)? + f(t - 2.0 * h)?) / (12.0 * h)
        }
    };
    if !value.is_finite() {
        return Err(Error::Domain(format!("non-finite derivative at T = {t}")));
    }
    Ok(Derivative { value, step: h, clipped })
}
