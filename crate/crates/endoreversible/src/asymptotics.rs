//! Closed-form predictions for optimally driven machines.
//!
//! In the small-force regime the optimal cold force grows linearly with the
//! hot force, `x_c_opt = C1 x_h + O(x_h^2)`, and the leading coefficient alone
//! fixes the normalized performance at the optimum. This module evaluates
//! those coefficients and performances for the linear and power-law flux laws,
//! the Curzon-Ahlborn efficiency they are benchmarked against, and the
//! opposite extreme: the Lambert-W saturation value the optimal refrigerator
//! force approaches when the hot force grows without bound. Everything here
//! is a pure closed form, independent of the search in [`crate::optimizer`],
//! which is exactly what makes the two useful as mutual checks.

use crate::error::{Error, Result};
use crate::model::{high_temperature_flux, MachineConfig, Mode};
use std::f64::consts::E;

/// Closed-form optimum of one machine family at one Carnot figure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticPrediction {
    /// Which window the prediction describes.
    pub mode: Mode,
    /// Exponent of the underlying power-law flux (1 for the linear law).
    pub d: f64,
    /// The Carnot figure the prediction was evaluated at: eps_C for
    /// refrigerators, eta_C for engines.
    pub carnot_figure: f64,
    /// Leading expansion coefficient of the optimal force, `x_c_opt / x_h` in
    /// the small-force limit. Below 1 for refrigerators, at or above 1 for
    /// engines.
    pub c1: f64,
    /// COP over eps_C (refrigerator) or efficiency over eta_C (engine) at the
    /// optimal force.
    pub normalized_performance: f64,
}

/// Curzon-Ahlborn efficiency at maximum power, `1 - sqrt(1 - eta_C)`.
///
/// Evaluated as `eta_C / (1 + sqrt(1 - eta_C))` — the same expression with the
/// conjugate factored out — so small efficiencies suffer no cancellation. The
/// Taylor expansion `eta_C/2 + eta_C^2/8` is accurate to `O(eta_C^3)`.
pub fn curzon_ahlborn(eta_c: f64) -> Result<f64> {
    if !(eta_c.is_finite() && (0.0..1.0).contains(&eta_c)) {
        return Err(Error::InvalidInput(format!(
            "eta_C must lie in [0, 1), got {eta_c}"
        )));
    }
    Ok(eta_c / (1.0 + (1.0 - eta_c).sqrt()))
}

/// Optimum of the linear flux law `I = i0 (x_h - x_c)` in the small-force
/// regime: `c1 = 1/2` and normalized COP `1/(2 + eps_C)` for refrigerators;
/// `c1 = (2 - eta_C)/(2 (1 - eta_C))` and normalized efficiency exactly `1/2`
/// for engines.
///
/// `carnot_figure` is eps_C (any non-negative value) for `Mode::Refrigerator`
/// and eta_C in `[0, 1)` for `Mode::Engine`.
pub fn linear_predictions(mode: Mode, carnot_figure: f64) -> Result<AsymptoticPrediction> {
    match mode {
        Mode::Refrigerator => {
            let eps_c = carnot_figure;
            if !(eps_c.is_finite() && eps_c >= 0.0) {
                return Err(Error::InvalidInput(format!(
                    "eps_C must be finite and >= 0, got {eps_c}"
                )));
            }
            Ok(AsymptoticPrediction {
                mode,
                d: 1.0,
                carnot_figure: eps_c,
                c1: 0.5,
                normalized_performance: 1.0 / (2.0 + eps_c),
            })
        }
        Mode::Engine => {
            let eta_c = carnot_figure;
            if !(eta_c.is_finite() && (0.0..1.0).contains(&eta_c)) {
                return Err(Error::InvalidInput(format!(
                    "eta_C must lie in [0, 1), got {eta_c}"
                )));
            }
            Ok(AsymptoticPrediction {
                mode,
                d: 1.0,
                carnot_figure: eta_c,
                c1: (2.0 - eta_c) / (2.0 * (1.0 - eta_c)),
                normalized_performance: 0.5,
            })
        }
        other => Err(Error::InvalidInput(format!(
            "no asymptotic prediction for mode '{other}'; \
             pick refrigerator or engine"
        ))),
    }
}

/// Optimum of the power-law flux `I = i0 x_c^(d-1) (x_h - x_c)` in the
/// refrigerator window: `c1 = d/(d+1)` and normalized COP `d/(d + 1 + eps_C)`.
///
/// The `d = 1` case is evaluated through [`linear_predictions`] so the
/// reduction is exact.
pub fn powerlaw_refrigerator(d: f64, eps_c: f64) -> Result<AsymptoticPrediction> {
    validate_exponent(d)?;
    if d == 1.0 {
        return linear_predictions(Mode::Refrigerator, eps_c);
    }
    if !(eps_c.is_finite() && eps_c >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "eps_C must be finite and >= 0, got {eps_c}"
        )));
    }
    Ok(AsymptoticPrediction {
        mode: Mode::Refrigerator,
        d,
        carnot_figure: eps_c,
        c1: d / (d + 1.0),
        normalized_performance: d / (d + 1.0 + eps_c),
    })
}

/// Optimum of the power-law flux in the engine window, with
/// `R = d^2 eta_C^2 - 4 eta_C + 4`:
///
/// * `c1 = (d (2 - eta_C) + sqrt(R)) / (2 (d+1) (1 - eta_C))`,
/// * normalized efficiency `(2 + d eta_C - sqrt(R)) / (2 (d+1) eta_C)`,
///   evaluated in its conjugate form `2 / (2 + d eta_C + sqrt(R))` — the
///   numerator `2 + d eta_C - sqrt(R)` cancels catastrophically for small
///   eta_C, while the conjugate form is stable everywhere and returns the
///   analytic limit 1/2 at eta_C = 0 instead of 0/0.
///
/// The `d = 1` case is evaluated through [`linear_predictions`] (the radicand
/// is `(2 - eta_C)^2` there, collapsing the normalized efficiency to exactly
/// 1/2), so the reduction is exact.
pub fn powerlaw_engine(d: f64, eta_c: f64) -> Result<AsymptoticPrediction> {
    validate_exponent(d)?;
    if d == 1.0 {
        return linear_predictions(Mode::Engine, eta_c);
    }
    if !(eta_c.is_finite() && (0.0..1.0).contains(&eta_c)) {
        return Err(Error::InvalidInput(format!(
            "eta_C must lie in [0, 1), got {eta_c}"
        )));
    }
    // d >= 1 keeps the radicand positive for every eta_C in [0, 1).
    let root = (d * d * eta_c * eta_c - 4.0 * eta_c + 4.0).sqrt();
    Ok(AsymptoticPrediction {
        mode: Mode::Engine,
        d,
        carnot_figure: eta_c,
        c1: (d * (2.0 - eta_c) + root) / (2.0 * (d + 1.0) * (1.0 - eta_c)),
        normalized_performance: 2.0 / (2.0 + d * eta_c + root),
    })
}

fn validate_exponent(d: f64) -> Result<()> {
    if !(d.is_finite() && d >= 1.0) {
        return Err(Error::InvalidInput(format!(
            "exponent d must be finite and >= 1, got {d}"
        )));
    }
    Ok(())
}

/// Principal branch of the Lambert W function: the solution `w >= -1` of
/// `w e^w = x`, defined for `x >= -1/e`.
///
/// A Halley iteration from a two-regime initial guess (branch-point series
/// below `x = -1/4`, `ln(1 + x)` elsewhere) does the work; if its residual is
/// not at rounding level the slower but unconditionally convergent bisection
/// takes over. The result satisfies `|w e^w - x| <= 1e-12 max(1, |x|)`.
pub fn lambert_w0(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::InvalidInput(format!("x must be finite, got {x}")));
    }
    let branch_point = -1.0 / E;
    if x < branch_point {
        return Err(Error::InvalidInput(format!(
            "the principal branch needs x >= -1/e = {branch_point}, got {x}"
        )));
    }
    if x == branch_point {
        return Ok(-1.0);
    }
    if x == 0.0 {
        return Ok(0.0);
    }

    let mut w = if x < -0.25 {
        // Series around the branch point in p = sqrt(2 (e x + 1)).
        let p = (2.0 * (E * x + 1.0)).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0
    } else {
        (1.0 + x).ln()
    };

    for _ in 0..80 {
        let ew = w.exp();
        let f = w * ew - x;
        if f == 0.0 {
            break;
        }
        let w1 = w + 1.0;
        let denom = ew * w1 - (w + 2.0) * f / (2.0 * w1);
        let step = f / denom;
        let next = w - step;
        if !next.is_finite() || next < -1.0 {
            break;
        }
        w = next;
        if step.abs() <= 2.0 * f64::EPSILON * w.abs().max(1e-3) {
            break;
        }
    }

    if (w * w.exp() - x).abs() <= 1e-13 * x.abs().max(1.0) {
        return Ok(w);
    }
    Ok(lambert_bisect(x))
}

/// Bisection fallback for [`lambert_w0`]: `w e^w - x` changes sign exactly
/// once on the bracket because the map is increasing for `w >= -1`.
fn lambert_bisect(x: f64) -> f64 {
    // For x >= 0, ln(1+x) (1 + x) >= x makes ln(1+x) an upper bound.
    let (mut lo, mut hi) = if x >= 0.0 { (0.0, (1.0 + x).ln()) } else { (-1.0, 0.0) };
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if mid * mid.exp() < x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Saturation value of the optimal refrigerator force in the limit of an
/// unbounded hot force: `d + 1 + W0(-(d+1) e^{-(d+1)})`.
///
/// The value depends only on the exponent `d`, not on the bath temperatures:
/// in that limit the cooling rate is proportional to `x^(d+1) / (e^x - 1)`,
/// whose stationarity condition reads `u e^u = -(d+1) e^{-(d+1)}` with
/// `u = x - (d+1)` — temperatures cancel entirely. This was confirmed against
/// the numerical optimizer at `x_h` up to 10^3 across several cold
/// temperatures, which agree with the formula (and each other) to ~1e-8
/// relative. The secondary branch `W_{-1}` would return `u = -(d+1)`, i.e. a
/// zero force, and is discarded as unphysical.
///
/// The argument `-(d+1) e^{-(d+1)}` lies in `(-1/e, 0)` for every `d >= 1`,
/// so the principal branch never leaves its domain, and the result lies
/// strictly between `d` and `d + 1`.
pub fn refrigerator_saturation(d: f64) -> Result<f64> {
    validate_exponent(d)?;
    let a = d + 1.0;
    Ok(a + lambert_w0(-a * (-a).exp())?)
}

/// Leading small-force (high-temperature) flux
/// `G_c (x_h - x_c) / (3 (1 + G_c/G_h))` with
/// `G_a = gamma_a x_a^(d_a - 1) T_a^(d_a)`, at explicit forces.
///
/// Unlike the flux laws in [`crate::model`], which evaluate at the
/// configuration's own hot force, this form takes both forces directly and
/// accepts `x_c = 0` (where the `x_c^(d_c - 1)` factor takes its limit value:
/// `gamma_c T_c` for `d_c = 1`, zero above).
pub fn high_temp_flux(config: &MachineConfig, x_c: f64, x_h: f64) -> Result<f64> {
    if !(x_c.is_finite() && x_c >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "x_c must be finite and >= 0, got {x_c}"
        )));
    }
    if !(x_h.is_finite() && x_h > 0.0) {
        return Err(Error::InvalidInput(format!(
            "x_h must be finite and > 0, got {x_h}"
        )));
    }
    high_temperature_flux(config, x_c, x_h)
}
