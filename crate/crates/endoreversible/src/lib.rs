//! Steady-state thermodynamics of three-level thermal machines: currents and
//! mode classification over the force plane, optimal operating points within
//! the refrigerator and engine windows, closed-form small-force asymptotics,
//! and reproducible parameter sweeps.
//!
//! The crate is organized bottom-up:
//!
//! * [`model`] — forces, fluxes, currents, entropy production, operating
//!   windows;
//! * [`optimizer`] — golden-section maximization of cooling rate and delivered
//!   power, plus expansion-coefficient estimation;
//! * [`asymptotics`] — closed-form predictions the numerics are checked
//!   against: expansion coefficients, normalized performances, the
//!   Curzon-Ahlborn efficiency, and the Lambert-W saturation limit;
//! * [`sweep`] — deterministic parameter sweeps with CSV output and
//!   numeric-versus-analytic comparison reports;
//! * [`render`] — the fixed 12-significant-digit rendering every number
//!   leaves the crate in;
//! * [`config`] — the flat `key = value` run configuration consumed by the
//!   `endorev` binary.

pub mod asymptotics;
pub mod config;
pub mod error;
pub mod model;
pub mod optimizer;
pub mod render;
pub mod sweep;

pub use asymptotics::{
    curzon_ahlborn, high_temp_flux, lambert_w0, linear_predictions, powerlaw_engine,
    powerlaw_refrigerator, refrigerator_saturation, AsymptoticPrediction,
};
pub use config::{FluxKind, RunConfig};
pub use error::{Error, Result};
pub use model::{
    carnot_figures, classify, cold_temperature_for_cop, cold_temperature_for_efficiency, cop,
    efficiency, flux, operating_point, relaxation_rate, BathSpec, FluxModel, MachineConfig, Mode,
    OperatingPoint,
};
pub use optimizer::{
    default_c1_grid, estimate_c1, maximize_cooling_rate, maximize_in_window, maximize_power,
    scalar_maximize, stationarity_residual, C1Estimate, OptimizationResult, Settings,
};
pub use render::{render_operating_point, render_optimization, sci12};
pub use sweep::{
    compare_numeric_analytic, default_columns, preset, preset_names, run_plan, run_sweep,
    write_csv, Column, CompareReport, CurveComparison, CurveData, Grid, GridScale, RowOutputs,
    SweepMode, SweepPlan, SweepReport, SweepRow, SweepSpec, SweptVariable,
};
