//! Error function.
//!
//! For `|z| < 3` the everywhere-positive series
//! `erf(z) = 2/√π · e^{−z²} · Σ 2^k z^{2k+1} / (2k+1)!!` is summed directly;
//! beyond that `erfc` is evaluated from its continued fraction with the
//! modified Lentz algorithm.

use std::f64::consts::PI;

const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;
const SERIES_LIMIT: f64 = 3.0;
// erfc(6) < 2.2e-17
const SATURATION: f64 = 6.0;

fn erf_series(z: f64) -> f64 {
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    let mut k = 0.0;
    loop {
        term *= 2.0 * z2 / (2.0 * k + 3.0);
        sum += term;
        k += 1.0;
        if term <= sum * 1e-17 {
            break;
        }
    }
    FRAC_2_SQRT_PI * (-z2).exp() * sum
}

/// `erfc(z)` for `z ≥ SERIES_LIMIT`.
fn erfc_continued_fraction(z: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = z;
    let mut c = f;
    let mut d = 0.0;
    for j in 1..500 {
        let a = 0.5 * j as f64;
        d = z + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        d = 1.0 / d;
        c = z + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-z * z).exp() / (PI.sqrt() * f)
}

pub fn erf(z: f64) -> f64 {
    if z.is_nan() {
        return f64::NAN;
    }
    let x = z.abs();
    let value = if x < SERIES_LIMIT {
        erf_series(x)
    } else if x < SATURATION {
        1.0 - erfc_continued_fraction(x)
    } else {
        1.0
    };
    value.copysign(z)
}

pub fn erfc(z: f64) -> f64 {
    if z.is_nan() {
        return f64::NAN;
    }
    if z >= SERIES_LIMIT {
        erfc_continued_fraction(z)
    } else {
        1.0 - erf(z)
    }
}
