//! Steady-state model of a three-level machine coupled to two bosonic baths.
//!
//! Working variables are the dimensionless thermodynamic forces
//! `x_c = omega_c / T_c` and `x_h = omega_h / T_h` (units with hbar = k_B = 1).
//! Everything downstream — currents, mode classification, performance figures —
//! derives from the steady-state flux `I(x_c, x_h)`:
//!
//! * cold current `q_c = T_c x_c I` (positive when heat leaves the cold bath),
//! * hot current `q_h = -T_h x_h I`,
//! * power `P = -q_c - q_h` (positive when injected into the medium),
//! * entropy production rate `(x_h - x_c) I >= 0`.
//!
//! The force plane splits into operating windows at fixed `x_h`:
//! refrigerator for `x_c < x_h`, the reversible Carnot point at `x_c = x_h`,
//! engine for `x_h < x_c < x_h T_h/T_c`, and a pure dissipator beyond.

use crate::error::{Error, Result};
use std::fmt;

/// One thermal reservoir together with its coupling to the working medium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathSpec {
    /// Reservoir temperature (k_B = 1). Strictly positive.
    pub temperature: f64,
    /// Dissipation strength gamma. Non-negative; zero decouples the bath.
    pub coupling: f64,
    /// Spectral exponent d >= 1 of the bath (physical dimensionality).
    pub dimension: f64,
}

impl BathSpec {
    /// Validated constructor.
    pub fn new(temperature: f64, coupling: f64, dimension: f64) -> Result<Self> {
        if !(temperature.is_finite() && temperature > 0.0) {
            return Err(Error::InvalidInput(format!(
                "bath temperature must be finite and > 0, got {temperature}"
            )));
        }
        if !(coupling.is_finite() && coupling >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "bath coupling must be finite and >= 0, got {coupling}"
            )));
        }
        if !(dimension.is_finite() && dimension >= 1.0) {
            return Err(Error::InvalidInput(format!(
                "bath dimension must be finite and >= 1, got {dimension}"
            )));
        }
        Ok(Self { temperature, coupling, dimension })
    }
}

/// Bosonic relaxation rate `gamma * omega^d * (1 + N(omega))` with
/// `N(omega) = 1/(e^(omega/T) - 1)` the thermal occupation of the bath mode.
///
/// At `omega = 0` the analytic limit is returned: `gamma * T` for `d = 1`
/// (the `omega^(d-1)` prefactor cancels the occupation divergence) and `0`
/// for `d > 1`.
pub fn relaxation_rate(bath: &BathSpec, omega: f64) -> Result<f64> {
    if !(omega.is_finite() && omega >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "omega must be finite and >= 0, got {omega}"
        )));
    }
    if omega == 0.0 {
        let limit = if bath.dimension == 1.0 {
            bath.coupling * bath.temperature
        } else {
            0.0
        };
        return Ok(limit);
    }
    // 1 + N(omega) = 1 / (1 - e^(-omega/T)); expm1 keeps small omega/T accurate.
    let occupancy = -1.0 / (-omega / bath.temperature).exp_m1();
    let rate = bath.coupling * omega.powf(bath.dimension) * occupancy;
    if !rate.is_finite() {
        return Err(Error::EvalFailure(format!(
            "relaxation rate overflowed at omega = {omega}, d = {}",
            bath.dimension
        )));
    }
    Ok(rate)
}

/// Full machine: both baths plus the hot transition frequency.
///
/// The cold frequency is not stored; it enters through the force `x_c`
/// whenever a point is evaluated (`omega_c = x_c * T_c`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MachineConfig {
    pub cold: BathSpec,
    pub hot: BathSpec,
    /// Hot transition frequency omega_h > 0 (hbar = 1).
    pub omega_h: f64,
}

impl MachineConfig {
    /// Validated constructor; requires `0 < T_c < T_h` and `omega_h > 0`.
    pub fn new(cold: BathSpec, hot: BathSpec, omega_h: f64) -> Result<Self> {
        if !(cold.temperature < hot.temperature) {
            return Err(Error::InvalidInput(format!(
                "temperatures must satisfy T_c < T_h, got T_c = {}, T_h = {}",
                cold.temperature, hot.temperature
            )));
        }
        if !(omega_h.is_finite() && omega_h > 0.0) {
            return Err(Error::InvalidInput(format!(
                "omega_h must be finite and > 0, got {omega_h}"
            )));
        }
        Ok(Self { cold, hot, omega_h })
    }

    /// Hot thermodynamic force `x_h = omega_h / T_h`.
    pub fn x_h(&self) -> f64 {
        self.omega_h / self.hot.temperature
    }

    /// Same baths, hot frequency chosen so the hot force equals `x_h`.
    pub fn with_force(&self, x_h: f64) -> Result<Self> {
        if !(x_h.is_finite() && x_h > 0.0) {
            return Err(Error::InvalidInput(format!(
                "x_h must be finite and > 0, got {x_h}"
            )));
        }
        Self::new(self.cold, self.hot, x_h * self.hot.temperature)
    }

    /// `(eta_C, eps_C)` for this machine's temperatures.
    pub fn carnot(&self) -> (f64, f64) {
        // Constructor guarantees 0 < T_c < T_h, so this cannot fail.
        carnot_figures(self.cold.temperature, self.hot.temperature)
            .expect("validated temperatures")
    }

    /// Upper edge of the engine window, `x_h * T_h / T_c`; the dissipator
    /// region starts there (`omega_c >= omega_h`).
    pub fn dissipator_edge(&self) -> f64 {
        self.x_h() * self.hot.temperature / self.cold.temperature
    }
}

/// Carnot benchmarks `eta_C = 1 - T_c/T_h` and `eps_C = T_c/(T_h - T_c)`.
/// They satisfy `eta_C = 1/(1 + eps_C)`.
pub fn carnot_figures(t_c: f64, t_h: f64) -> Result<(f64, f64)> {
    if !(t_c.is_finite() && t_h.is_finite() && t_c > 0.0 && t_c < t_h) {
        return Err(Error::InvalidInput(format!(
            "carnot figures need 0 < T_c < T_h, got T_c = {t_c}, T_h = {t_h}"
        )));
    }
    Ok((1.0 - t_c / t_h, t_c / (t_h - t_c)))
}

/// Cold temperature that realizes a target Carnot efficiency at fixed `T_h`:
/// `T_c = (1 - eta_C) T_h`. Requires `0 < eta_C < 1`.
pub fn cold_temperature_for_efficiency(eta_c: f64, t_h: f64) -> Result<f64> {
    if !(eta_c.is_finite() && eta_c > 0.0 && eta_c < 1.0) {
        return Err(Error::InvalidInput(format!(
            "eta_C must lie strictly in (0, 1), got {eta_c}"
        )));
    }
    if !(t_h.is_finite() && t_h > 0.0) {
        return Err(Error::InvalidInput(format!(
            "T_h must be finite and > 0, got {t_h}"
        )));
    }
    Ok((1.0 - eta_c) * t_h)
}

/// Cold temperature that realizes a target Carnot COP at fixed `T_h`:
/// `T_c = T_h * eps_C / (1 + eps_C)`. Requires `eps_C > 0`.
pub fn cold_temperature_for_cop(eps_c: f64, t_h: f64) -> Result<f64> {
    if !(eps_c.is_finite() && eps_c > 0.0) {
        return Err(Error::InvalidInput(format!(
            "eps_C must be finite and > 0, got {eps_c}"
        )));
    }
    if !(t_h.is_finite() && t_h > 0.0) {
        return Err(Error::InvalidInput(format!(
            "T_h must be finite and > 0, got {t_h}"
        )));
    }
    Ok(t_h * eps_c / (1.0 + eps_c))
}

/// Flux law used for the steady-state current `I(x_c, x_h)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FluxModel {
    /// Steady-state flux of the three-level maser between two bosonic baths.
    ThreeLevelMaser,
    /// Leading small-force (high-temperature) expansion of the maser flux.
    HighTemperature,
    /// `I = i0 * x_c^(d-1) * (x_h - x_c)` with `i0 > 0`, `d >= 1`.
    PowerLaw { i0: f64, d: f64 },
    /// `I = i0 * (x_h - x_c)` with `i0 > 0`.
    Linear { i0: f64 },
}

impl FluxModel {
    fn validate(&self) -> Result<()> {
        match *self {
            FluxModel::PowerLaw { i0, d } => {
                if !(i0.is_finite() && i0 > 0.0) {
                    return Err(Error::InvalidInput(format!(
                        "power-law amplitude i0 must be finite and > 0, got {i0}"
                    )));
                }
                if !(d.is_finite() && d >= 1.0) {
                    return Err(Error::InvalidInput(format!(
                        "power-law exponent d must be finite and >= 1, got {d}"
                    )));
                }
            }
            FluxModel::Linear { i0 } => {
                if !(i0.is_finite() && i0 > 0.0) {
                    return Err(Error::InvalidInput(format!(
                        "linear amplitude i0 must be finite and > 0, got {i0}"
                    )));
                }
            }
            FluxModel::ThreeLevelMaser | FluxModel::HighTemperature => {}
        }
        Ok(())
    }
}

/// Operating regime of a force pair at fixed temperatures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// `x_c < x_h`: heat is pumped out of the cold bath at the cost of power.
    Refrigerator,
    /// `x_c = x_h`: reversible point, all currents vanish.
    Carnot,
    /// `x_h < x_c < x_h T_h/T_c`: heat from the hot bath delivers power.
    Engine,
    /// `x_c >= x_h T_h/T_c` (`omega_c >= omega_h`): power and hot heat are both
    /// dumped into the cold bath.
    Dissipator,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Mode::Refrigerator => "refrigerator",
            Mode::Carnot => "carnot",
            Mode::Engine => "engine",
            Mode::Dissipator => "dissipator",
        };
        f.write_str(name)
    }
}

/// Classify a force pair into its operating window.
pub fn classify(x_c: f64, x_h: f64, t_c: f64, t_h: f64) -> Mode {
    if x_c < x_h {
        Mode::Refrigerator
    } else if x_c == x_h {
        Mode::Carnot
    } else if x_c < x_h * t_h / t_c {
        Mode::Engine
    } else {
        Mode::Dissipator
    }
}

/// Steady-state flux `I(x_c, x_h)` for the chosen law.
///
/// Sign contract, exact in floating point: `I > 0` iff `x_c < x_h`, `I = 0`
/// iff `x_c = x_h`, `I < 0` iff `x_c > x_h` (for positive couplings).
///
/// Overflow or a degenerate denominator is reported as an error; the function
/// never returns a non-finite value.
pub fn flux(model: &FluxModel, config: &MachineConfig, x_c: f64) -> Result<f64> {
    model.validate()?;
    if !(x_c.is_finite() && x_c > 0.0) {
        return Err(Error::InvalidInput(format!(
            "x_c must be finite and > 0, got {x_c}"
        )));
    }
    let x_h = config.x_h();
    let value = match *model {
        FluxModel::Linear { i0 } => i0 * (x_h - x_c),
        FluxModel::PowerLaw { i0, d } => (i0 * x_c.powf(d - 1.0)) * (x_h - x_c),
        FluxModel::HighTemperature => high_temperature_flux(config, x_c, x_h)?,
        FluxModel::ThreeLevelMaser => maser_flux(config, x_c, x_h)?,
    };
    if !value.is_finite() {
        return Err(Error::EvalFailure(format!(
            "flux evaluation produced a non-finite value at x_c = {x_c}, x_h = {x_h}"
        )));
    }
    Ok(value)
}

/// Three-level maser steady-state flux,
/// `I = Gamma_h Gamma_c (e^(-x_c) - e^(-x_h)) /
///      (Gamma_h (1 + 2 e^(-x_h)) + Gamma_c (1 + 2 e^(-x_c)))`.
fn maser_flux(config: &MachineConfig, x_c: f64, x_h: f64) -> Result<f64> {
    let gamma_c = relaxation_rate(&config.cold, x_c * config.cold.temperature)?;
    let gamma_h = relaxation_rate(&config.hot, config.omega_h)?;

    // e^(-x_c) - e^(-x_h), factored around the smaller exponent so it neither
    // overflows at large forces nor loses the exact sign of (x_h - x_c).
    let diff = if x_c <= x_h {
        (-x_c).exp() * -(x_c - x_h).exp_m1()
    } else {
        (-x_h).exp() * (x_h - x_c).exp_m1()
    };

    // Dividing numerator and denominator by Gamma_h keeps the denominator >= 1
    // for any normal Gamma_h, so it cannot underflow to zero.
    let ratio = gamma_c / gamma_h;
    let den = (1.0 + 2.0 * (-x_h).exp()) + ratio * (1.0 + 2.0 * (-x_c).exp());
    if den == 0.0 || den.is_nan() {
        return Err(Error::EvalFailure(format!(
            "flux denominator degenerated (Gamma_c = {gamma_c}, Gamma_h = {gamma_h})"
        )));
    }
    Ok(gamma_c * diff / den)
}

/// Leading small-force expansion of the maser flux:
/// `I = G_c (x_h - x_c) / (3 (1 + G_c/G_h))` with
/// `G_a = gamma_a * x_a^(d_a - 1) * T_a^(d_a)` the high-temperature limits of
/// the relaxation rates. Shared with the explicit-force wrapper in the
/// asymptotics module.
pub(crate) fn high_temperature_flux(config: &MachineConfig, x_c: f64, x_h: f64) -> Result<f64> {
    let g_c = config.cold.coupling
        * x_c.powf(config.cold.dimension - 1.0)
        * config.cold.temperature.powf(config.cold.dimension);
    let g_h = config.hot.coupling
        * x_h.powf(config.hot.dimension - 1.0)
        * config.hot.temperature.powf(config.hot.dimension);
    let ratio = g_c / g_h;
    let den = 3.0 * (1.0 + ratio);
    if den == 0.0 || den.is_nan() {
        return Err(Error::EvalFailure(format!(
            "high-temperature denominator degenerated (G_c = {g_c}, G_h = {g_h})"
        )));
    }
    Ok(g_c * (x_h - x_c) / den)
}

/// Engine efficiency `eta = 1 - (1 - eta_C) x_c / x_h`.
///
/// Defined for every `x_c > 0`; it is the physical conversion efficiency only
/// inside the engine window, where it sweeps `(0, eta_C)`.
pub fn efficiency(config: &MachineConfig, x_c: f64) -> Result<f64> {
    if !(x_c.is_finite() && x_c > 0.0) {
        return Err(Error::InvalidInput(format!(
            "x_c must be finite and > 0, got {x_c}"
        )));
    }
    let (eta_c, _) = config.carnot();
    Ok(1.0 - (1.0 - eta_c) * x_c / config.x_h())
}

/// Refrigerator coefficient of performance
/// `eps = eps_C / ((1 + eps_C) x_h / x_c - eps_C)`.
///
/// The denominator is positive strictly below the dissipator edge
/// `x_c = x_h T_h/T_c` and the function rejects points at or beyond it.
/// Inside the refrigerator window it sweeps `(0, eps_C)`.
pub fn cop(config: &MachineConfig, x_c: f64) -> Result<f64> {
    if !(x_c.is_finite() && x_c > 0.0) {
        return Err(Error::InvalidInput(format!(
            "x_c must be finite and > 0, got {x_c}"
        )));
    }
    let (_, eps_c) = config.carnot();
    let den = (1.0 + eps_c) * config.x_h() / x_c - eps_c;
    if !(den > 0.0) {
        return Err(Error::InvalidInput(format!(
            "cop undefined: (1 + eps_C) x_h / x_c - eps_C = {den} is not positive \
             (x_c = {x_c} is at or beyond the dissipator edge)"
        )));
    }
    Ok(eps_c / den)
}

/// All steady-state quantities of one force pair.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatingPoint {
    pub x_c: f64,
    pub x_h: f64,
    pub flux: f64,
    /// Heat current out of the cold bath, `T_c x_c I`.
    pub q_c: f64,
    /// Heat current out of the hot bath, `-T_h x_h I`.
    pub q_h: f64,
    /// Power injected into the medium, `-q_c - q_h`; negative when delivered.
    pub power: f64,
    /// Entropy production rate `(x_h - x_c) I`, non-negative.
    pub entropy_rate: f64,
    pub mode: Mode,
    /// `eta` inside the engine window and at the Carnot point.
    pub efficiency: Option<f64>,
    /// `eps` inside the refrigerator window and at the Carnot point.
    pub cop: Option<f64>,
}

/// Evaluate flux, currents, entropy production, mode, and the performance
/// figure that applies to the window the point falls in.
///
/// The energy balance `q_c + q_h + power = 0` holds exactly because the power
/// is computed as `-(q_c + q_h)`.
pub fn operating_point(
    model: &FluxModel,
    config: &MachineConfig,
    x_c: f64,
) -> Result<OperatingPoint> {
    let i = flux(model, config, x_c)?;
    let x_h = config.x_h();
    let t_c = config.cold.temperature;
    let t_h = config.hot.temperature;

    let q_c = t_c * x_c * i;
    let q_h = -(t_h * x_h * i);
    let power = -(q_c + q_h);
    let entropy_rate = (x_h - x_c) * i;
    let mode = classify(x_c, x_h, t_c, t_h);

    let (eff, cop_value) = match mode {
        Mode::Refrigerator => (None, Some(cop(config, x_c)?)),
        Mode::Carnot => (Some(efficiency(config, x_c)?), Some(cop(config, x_c)?)),
        Mode::Engine => (Some(efficiency(config, x_c)?), None),
        Mode::Dissipator => (None, None),
    };

    Ok(OperatingPoint {
        x_c,
        x_h,
        flux: i,
        q_c,
        q_h,
        power,
        entropy_rate,
        mode,
        efficiency: eff,
        cop: cop_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn bath(t: f64, g: f64, d: f64) -> BathSpec {
        BathSpec::new(t, g, d).unwrap()
    }

    /// The workhorse configuration used throughout: T_c = 5, T_h = 10,
    /// d_c = d_h = 3, gamma_c = gamma_h = 1, omega_h = 1 (so x_h = 0.1).
    fn reference_config() -> MachineConfig {
        MachineConfig::new(bath(5.0, 1.0, 3.0), bath(10.0, 1.0, 3.0), 1.0).unwrap()
    }

    #[test]
    fn bath_rejects_bad_parameters() {
        assert!(BathSpec::new(0.0, 1.0, 3.0).is_err());
        assert!(BathSpec::new(-1.0, 1.0, 3.0).is_err());
        assert!(BathSpec::new(f64::NAN, 1.0, 3.0).is_err());
        assert!(BathSpec::new(1.0, -0.5, 3.0).is_err());
        assert!(BathSpec::new(1.0, 1.0, 0.5).is_err());
        let err = BathSpec::new(1.0, 1.0, 0.5).unwrap_err();
        assert!(err.to_string().contains("dimension"));
    }

    #[test]
    fn config_rejects_inverted_temperatures() {
        let err = MachineConfig::new(bath(10.0, 1.0, 3.0), bath(5.0, 1.0, 3.0), 1.0).unwrap_err();
        assert!(err.to_string().contains("T_c < T_h"));
        assert!(MachineConfig::new(bath(5.0, 1.0, 3.0), bath(5.0, 1.0, 3.0), 1.0).is_err());
        assert!(MachineConfig::new(bath(5.0, 1.0, 3.0), bath(10.0, 1.0, 3.0), 0.0).is_err());
    }

    #[test]
    fn relaxation_rate_matches_direct_evaluation() {
        // gamma * omega^d / (1 - e^(-omega/T)) at T = 10, d = 3, gamma = 1, omega = 1,
        // frozen from a 40-digit evaluation.
        let rate = relaxation_rate(&bath(10.0, 1.0, 3.0), 1.0).unwrap();
        assert_relative_eq!(rate, 10.508331944775050, max_relative = 1e-14);
    }

    #[test]
    fn relaxation_rate_zero_frequency_limits() {
        assert_relative_eq!(
            relaxation_rate(&bath(10.0, 2.0, 1.0), 0.0).unwrap(),
            20.0,
            max_relative = 1e-15
        );
        assert_eq!(relaxation_rate(&bath(10.0, 2.0, 2.0), 0.0).unwrap(), 0.0);
        assert_eq!(relaxation_rate(&bath(10.0, 2.0, 3.0), 0.0).unwrap(), 0.0);
        assert_eq!(relaxation_rate(&bath(10.0, 2.0, 1.5), 0.0).unwrap(), 0.0);
        assert!(relaxation_rate(&bath(10.0, 2.0, 1.0), -0.1).is_err());
    }

    #[test]
    fn relaxation_rate_is_monotone_in_temperature() {
        let omega = 0.7;
        let mut last = 0.0;
        for t in [0.1, 1.0, 5.0, 20.0, 100.0] {
            let r = relaxation_rate(&bath(t, 1.0, 3.0), omega).unwrap();
            assert!(r > last, "rate should grow with T: {r} vs {last}");
            last = r;
        }
        // T -> 0 reduces to gamma * omega^d (occupation dies out).
        let cold_limit = relaxation_rate(&bath(1e-6, 1.0, 3.0), omega).unwrap();
        assert_relative_eq!(cold_limit, omega.powi(3), max_relative = 1e-12);
    }

    #[test]
    fn maser_flux_matches_frozen_fixture() {
        // x_c = 0.05 at the reference machine; value frozen from an independent
        // 40-digit evaluation of the defining expression.
        let config = reference_config();
        let i = flux(&FluxModel::ThreeLevelMaser, &config, 0.05).unwrap();
        assert_relative_eq!(i, 5.1284037828552916e-3, max_relative = 1e-13);
    }

    #[test]
    fn flux_vanishes_exactly_at_the_carnot_point() {
        let config = reference_config();
        for model in [
            FluxModel::ThreeLevelMaser,
            FluxModel::HighTemperature,
            FluxModel::PowerLaw { i0: 1.0, d: 3.0 },
            FluxModel::Linear { i0: 1.0 },
        ] {
            let i = flux(&model, &config, config.x_h()).unwrap();
            assert_eq!(i, 0.0, "flux must vanish exactly at x_c = x_h for {model:?}");
        }
    }

    #[test]
    fn flux_sign_tracks_the_force_ordering() {
        let config = reference_config();
        let x_h = config.x_h();
        for model in [
            FluxModel::ThreeLevelMaser,
            FluxModel::HighTemperature,
            FluxModel::PowerLaw { i0: 2.0, d: 2.0 },
            FluxModel::Linear { i0: 0.5 },
        ] {
            assert!(flux(&model, &config, 0.5 * x_h).unwrap() > 0.0);
            assert!(flux(&model, &config, 1.5 * x_h).unwrap() < 0.0);
            assert!(flux(&model, &config, 3.0 * x_h).unwrap() < 0.0);
        }
    }

    #[test]
    fn linear_flux_fixture() {
        let config = reference_config();
        let i = flux(&FluxModel::Linear { i0: 1.0 }, &config, 0.15).unwrap();
        assert_relative_eq!(i, -0.05, max_relative = 1e-15);
    }

    #[test]
    fn power_law_with_unit_exponent_is_linear_bit_for_bit() {
        let config = reference_config();
        for x_c in [1e-4, 0.03, 0.09999, 0.1, 0.13, 0.2, 1.7] {
            let p = flux(&FluxModel::PowerLaw { i0: 0.7, d: 1.0 }, &config, x_c).unwrap();
            let l = flux(&FluxModel::Linear { i0: 0.7 }, &config, x_c).unwrap();
            assert_eq!(p.to_bits(), l.to_bits(), "mismatch at x_c = {x_c}");
        }
    }

    #[test]
    fn flux_rejects_bad_forces_and_models() {
        let config = reference_config();
        let err = flux(&FluxModel::Linear { i0: 1.0 }, &config, 0.0).unwrap_err();
        assert!(err.to_string().contains("x_c"));
        assert!(flux(&FluxModel::Linear { i0: 1.0 }, &config, -0.1).is_err());
        assert!(flux(&FluxModel::Linear { i0: 0.0 }, &config, 0.1).is_err());
        assert!(flux(&FluxModel::PowerLaw { i0: 1.0, d: 0.0 }, &config, 0.1).is_err());
    }

    #[test]
    fn flux_reports_overflow_instead_of_infinity() {
        // omega_c^d overflows f64 here; the evaluation must fail loudly.
        let config = MachineConfig::new(bath(1e150, 1.0, 3.0), bath(1e160, 1.0, 3.0), 1e160).unwrap();
        let err = flux(&FluxModel::ThreeLevelMaser, &config, 0.9).unwrap_err();
        assert!(matches!(err, Error::EvalFailure(_)));
    }

    #[test]
    fn high_temperature_flux_tracks_the_maser_at_small_forces() {
        // Fix the force ratio and shrink the scale; the relative gap between the
        // full flux and its leading expansion must shrink linearly with x_h.
        let mut previous_gap = f64::INFINITY;
        for scale in [1e-1, 1e-2, 1e-3, 1e-4] {
            let config = reference_config().with_force(scale).unwrap();
            let x_c = 0.5 * scale;
            let full = flux(&FluxModel::ThreeLevelMaser, &config, x_c).unwrap();
            let leading = flux(&FluxModel::HighTemperature, &config, x_c).unwrap();
            let gap = ((full - leading) / full).abs();
            assert!(gap < previous_gap, "gap should shrink: {gap} vs {previous_gap}");
            assert!(gap < 2.0 * scale, "gap {gap} too large at scale {scale}");
            previous_gap = gap;
        }
    }

    #[test]
    fn operating_point_refrigerator_example() {
        // Linear flux, i0 = 1, x_c = 0.05 at the reference machine.
        let config = reference_config();
        let op = operating_point(&FluxModel::Linear { i0: 1.0 }, &config, 0.05).unwrap();
        assert_eq!(op.mode, Mode::Refrigerator);
        assert_relative_eq!(op.flux, 0.05, max_relative = 1e-14);
        assert_relative_eq!(op.q_c, 0.0125, max_relative = 1e-14);
        assert_relative_eq!(op.q_h, -0.05, max_relative = 1e-14);
        assert_relative_eq!(op.power, 0.0375, max_relative = 1e-14);
        assert_relative_eq!(op.cop.unwrap(), 1.0 / 3.0, max_relative = 1e-14);
        assert!(op.efficiency.is_none());
        assert_eq!(op.q_c + op.q_h + op.power, 0.0);
    }

    #[test]
    fn operating_point_engine_example() {
        let config = reference_config();
        let op = operating_point(&FluxModel::Linear { i0: 1.0 }, &config, 0.15).unwrap();
        assert_eq!(op.mode, Mode::Engine);
        assert_relative_eq!(op.flux, -0.05, max_relative = 1e-14);
        assert_relative_eq!(op.q_c, -0.0375, max_relative = 1e-14);
        assert_relative_eq!(op.q_h, 0.05, max_relative = 1e-14);
        assert_relative_eq!(op.power, -0.0125, max_relative = 1e-14);
        assert_relative_eq!(op.efficiency.unwrap(), 0.25, max_relative = 1e-14);
        assert!(op.cop.is_none());
        assert_eq!(op.q_c + op.q_h + op.power, 0.0);
    }

    #[test]
    fn operating_point_carnot_example() {
        let config = reference_config();
        let op = operating_point(&FluxModel::ThreeLevelMaser, &config, config.x_h()).unwrap();
        assert_eq!(op.mode, Mode::Carnot);
        assert_eq!(op.flux, 0.0);
        assert_eq!(op.q_c, 0.0);
        assert_eq!(op.power, 0.0);
        assert_eq!(op.entropy_rate, 0.0);
        let (eta_c, eps_c) = config.carnot();
        assert_relative_eq!(op.efficiency.unwrap(), eta_c, max_relative = 1e-14);
        assert_relative_eq!(op.cop.unwrap(), eps_c, max_relative = 1e-14);
    }

    #[test]
    fn operating_point_maser_fixture() {
        // Frozen from the independent 40-digit evaluation at x_c = 0.05.
        let config = reference_config();
        let op = operating_point(&FluxModel::ThreeLevelMaser, &config, 0.05).unwrap();
        assert_relative_eq!(op.q_c, 1.2821009457138229e-3, max_relative = 1e-13);
        assert_relative_eq!(op.q_h, -5.1284037828552916e-3, max_relative = 1e-13);
        assert_relative_eq!(op.power, 3.8463028371414687e-3, max_relative = 1e-13);
        assert_relative_eq!(op.entropy_rate, 2.5642018914276458e-4, max_relative = 1e-13);
        assert_relative_eq!(op.cop.unwrap(), 1.0 / 3.0, max_relative = 1e-14);
    }

    #[test]
    fn mode_windows_partition_the_force_axis() {
        let config = reference_config();
        let x_h = config.x_h();
        let edge = config.dissipator_edge();
        assert_eq!(classify(0.5 * x_h, x_h, 5.0, 10.0), Mode::Refrigerator);
        assert_eq!(classify(x_h, x_h, 5.0, 10.0), Mode::Carnot);
        assert_eq!(classify(1.5 * x_h, x_h, 5.0, 10.0), Mode::Engine);
        assert_eq!(classify(edge, x_h, 5.0, 10.0), Mode::Dissipator);
        assert_eq!(classify(edge * (1.0 - 1e-12), x_h, 5.0, 10.0), Mode::Engine);
        assert_eq!(classify(edge + 1.0, x_h, 5.0, 10.0), Mode::Dissipator);
    }

    #[test]
    fn dissipator_point_dumps_every_current_into_the_cold_bath() {
        let config = reference_config();
        let op = operating_point(&FluxModel::ThreeLevelMaser, &config, 0.25).unwrap();
        assert_eq!(op.mode, Mode::Dissipator);
        assert!(op.flux < 0.0);
        assert!(op.q_c < 0.0, "cold bath only receives heat");
        assert!(op.q_h > 0.0);
        assert!(op.power > 0.0, "power is injected, not delivered");
        assert!(op.entropy_rate > 0.0);
        assert!(op.efficiency.is_none() && op.cop.is_none());
    }

    #[test]
    fn carnot_figures_identity_and_examples() {
        let (eta, eps) = carnot_figures(5.0, 10.0).unwrap();
        assert_relative_eq!(eta, 0.5, max_relative = 1e-15);
        assert_relative_eq!(eps, 1.0, max_relative = 1e-15);
        for (t_c, t_h) in [(1.0, 2.0), (3.0, 17.0), (9.5, 10.0), (0.01, 100.0)] {
            let (eta, eps) = carnot_figures(t_c, t_h).unwrap();
            assert_relative_eq!(eta, 1.0 / (1.0 + eps), max_relative = 1e-14);
        }
        assert!(carnot_figures(10.0, 5.0).is_err());
        assert!(carnot_figures(-1.0, 5.0).is_err());
    }

    #[test]
    fn temperature_from_carnot_roundtrips() {
        for eta in [0.05, 0.5, 0.95] {
            let t_c = cold_temperature_for_efficiency(eta, 10.0).unwrap();
            assert!(t_c > 0.0 && t_c < 10.0);
            let (eta_back, _) = carnot_figures(t_c, 10.0).unwrap();
            assert_relative_eq!(eta_back, eta, max_relative = 1e-14);
        }
        for eps in [0.05, 1.0, 19.0] {
            let t_c = cold_temperature_for_cop(eps, 10.0).unwrap();
            assert!(t_c > 0.0 && t_c < 10.0);
            let (_, eps_back) = carnot_figures(t_c, 10.0).unwrap();
            assert_relative_eq!(eps_back, eps, max_relative = 1e-13);
        }
        assert_relative_eq!(
            cold_temperature_for_efficiency(0.5, 10.0).unwrap(),
            5.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(cold_temperature_for_cop(1.0, 10.0).unwrap(), 5.0, max_relative = 1e-15);
        assert!(cold_temperature_for_efficiency(1.0, 10.0).is_err());
        assert!(cold_temperature_for_efficiency(0.0, 10.0).is_err());
        assert!(cold_temperature_for_cop(0.0, 10.0).is_err());
    }

    #[test]
    fn efficiency_and_cop_examples() {
        let config = reference_config();
        assert_relative_eq!(efficiency(&config, 0.15).unwrap(), 0.25, max_relative = 1e-14);
        // Efficiency hits zero exactly at the dissipator edge.
        assert_relative_eq!(
            efficiency(&config, config.dissipator_edge()).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        assert_relative_eq!(cop(&config, 0.05).unwrap(), 1.0 / 3.0, max_relative = 1e-14);
        // The COP denominator degenerates at the dissipator edge and beyond.
        assert!(cop(&config, config.dissipator_edge()).is_err());
        assert!(cop(&config, 0.3).is_err());
        let err = cop(&config, 0.3).unwrap_err();
        assert!(err.to_string().contains("dissipator"));
    }

    #[test]
    fn entropy_rate_is_never_negative_on_a_force_grid() {
        let config = reference_config();
        for model in [
            FluxModel::ThreeLevelMaser,
            FluxModel::HighTemperature,
            FluxModel::PowerLaw { i0: 1.0, d: 2.0 },
            FluxModel::Linear { i0: 1.0 },
        ] {
            for k in 1..=60 {
                let x_c = 0.005 * k as f64;
                let op = operating_point(&model, &config, x_c).unwrap();
                assert!(
                    op.entropy_rate >= 0.0,
                    "negative entropy rate at x_c = {x_c} for {model:?}"
                );
            }
        }
    }
}
