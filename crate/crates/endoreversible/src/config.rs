//! Flat `key = value` run configuration for the command line front end.
//!
//! A configuration file holds one `key = value` pair per line; `#` starts a
//! comment anywhere on a line, blank lines are ignored. The recognized keys
//! are exactly
//!
//! ```text
//! t_c, t_h, omega_h, d_c, d_h, gamma_c, gamma_h,
//! flux, mode, grid_lo, grid_hi, grid_n, grid_scale, out
//! ```
//!
//! Unknown and duplicate keys are rejected, naming the offender and its line.
//! [`RunConfig::echo_lines`] renders the consumed values back in the same
//! format — the CSV writer puts those lines into the output's comment block,
//! so every result file carries a configuration sufficient to rerun it.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{BathSpec, FluxModel, MachineConfig};
use crate::optimizer::Settings;
use crate::sweep::{Grid, GridScale, SweepMode, SweepSpec, SweptVariable};

/// Flux law selector, by the names the `flux` key and `--flux` flag accept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FluxKind {
    /// `maser` — the three-level maser flux.
    Maser,
    /// `hight` — its leading high-temperature (small-force) expansion.
    HighT,
    /// `powerlaw` — unit-amplitude power-law flux with exponent `d_c`.
    PowerLaw,
    /// `linear` — unit-amplitude linear flux.
    Linear,
}

impl FluxKind {
    /// Parses one of `maser`, `hight`, `powerlaw`, `linear`.
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "maser" => Ok(FluxKind::Maser),
            "hight" => Ok(FluxKind::HighT),
            "powerlaw" => Ok(FluxKind::PowerLaw),
            "linear" => Ok(FluxKind::Linear),
            other => Err(Error::Config(format!(
                "key `flux`: expected one of maser, hight, powerlaw, linear; got `{other}`"
            ))),
        }
    }

    /// The name [`parse`](Self::parse) accepts.
    pub fn name(&self) -> &'static str {
        match self {
            FluxKind::Maser => "maser",
            FluxKind::HighT => "hight",
            FluxKind::PowerLaw => "powerlaw",
            FluxKind::Linear => "linear",
        }
    }
}

impl fmt::Display for FluxKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One run's parameters: the machine, the flux law, the operating mode, the
/// sweep grid, and the output path. Defaults describe the reference machine
/// (`T_c = 5`, `T_h = 10`, `d = 3`, unit couplings, `omega_h = 1`) with a
/// 200-point log grid over hot forces `[1e-3, 10]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Cold bath temperature (`t_c`).
    pub t_c: f64,
    /// Hot bath temperature (`t_h`); must exceed `t_c`.
    pub t_h: f64,
    /// Hot transition frequency (`omega_h`).
    pub omega_h: f64,
    /// Cold bath exponent (`d_c`).
    pub d_c: f64,
    /// Hot bath exponent (`d_h`).
    pub d_h: f64,
    /// Cold coupling (`gamma_c`).
    pub gamma_c: f64,
    /// Hot coupling (`gamma_h`).
    pub gamma_h: f64,
    /// Flux law (`flux`).
    pub flux: FluxKind,
    /// Operating mode (`mode`): `refrigerator` or `engine`.
    pub mode: SweepMode,
    /// Sweep grid lower bound (`grid_lo`).
    pub grid_lo: f64,
    /// Sweep grid upper bound (`grid_hi`).
    pub grid_hi: f64,
    /// Sweep grid point count (`grid_n`).
    pub grid_n: usize,
    /// Sweep grid spacing (`grid_scale`): `linear` or `log`.
    pub grid_scale: GridScale,
    /// CSV output path (`out`).
    pub out: String,
    /// Optimizer tolerance override; set by the `--tol` flag, not a file key.
    pub tol: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            t_c: 5.0,
            t_h: 10.0,
            omega_h: 1.0,
            d_c: 3.0,
            d_h: 3.0,
            gamma_c: 1.0,
            gamma_h: 1.0,
            flux: FluxKind::Maser,
            mode: SweepMode::Refrigerator,
            grid_lo: 1e-3,
            grid_hi: 10.0,
            grid_n: 200,
            grid_scale: GridScale::Log,
            out: "sweep.csv".to_string(),
            tol: None,
        }
    }
}

fn parse_f64(key: &str, value: &str, line: usize) -> Result<f64> {
    value.parse().map_err(|_| {
        Error::Config(format!(
            "line {line}: key `{key}`: expected a number, got `{value}`"
        ))
    })
}

fn parse_usize(key: &str, value: &str, line: usize) -> Result<usize> {
    value.parse().map_err(|_| {
        Error::Config(format!(
            "line {line}: key `{key}`: expected a non-negative integer, got `{value}`"
        ))
    })
}

impl RunConfig {
    /// Parses a configuration text. Unrecognized or repeated keys are
    /// rejected with the offender and its line number in the message; so are
    /// unparseable values. Keys not present keep their defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = RunConfig::default();
        let mut seen: BTreeSet<String> = BTreeSet::new();
        for (index, raw) in text.lines().enumerate() {
            let line_no = index + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "line {line_no}: expected `key = value`, got `{line}`"
                )));
            };
            let (key, value) = (key.trim(), value.trim());
            if value.is_empty() {
                return Err(Error::Config(format!(
                    "line {line_no}: key `{key}` has no value"
                )));
            }
            if !seen.insert(key.to_string()) {
                return Err(Error::Config(format!(
                    "line {line_no}: duplicate key `{key}`"
                )));
            }
            match key {
                "t_c" => config.t_c = parse_f64(key, value, line_no)?,
                "t_h" => config.t_h = parse_f64(key, value, line_no)?,
                "omega_h" => config.omega_h = parse_f64(key, value, line_no)?,
                "d_c" => config.d_c = parse_f64(key, value, line_no)?,
                "d_h" => config.d_h = parse_f64(key, value, line_no)?,
                "gamma_c" => config.gamma_c = parse_f64(key, value, line_no)?,
                "gamma_h" => config.gamma_h = parse_f64(key, value, line_no)?,
                "flux" => config.flux = FluxKind::parse(value)?,
                "mode" => {
                    config.mode = match value {
                        "refrigerator" => SweepMode::Refrigerator,
                        "engine" => SweepMode::Engine,
                        other => {
                            return Err(Error::Config(format!(
                                "line {line_no}: key `mode`: expected refrigerator or engine, \
                                 got `{other}`"
                            )));
                        }
                    }
                }
                "grid_lo" => config.grid_lo = parse_f64(key, value, line_no)?,
                "grid_hi" => config.grid_hi = parse_f64(key, value, line_no)?,
                "grid_n" => config.grid_n = parse_usize(key, value, line_no)?,
                "grid_scale" => {
                    config.grid_scale = match value {
                        "linear" => GridScale::Linear,
                        "log" => GridScale::Log,
                        other => {
                            return Err(Error::Config(format!(
                                "line {line_no}: key `grid_scale`: expected linear or log, \
                                 got `{other}`"
                            )));
                        }
                    }
                }
                "out" => config.out = value.to_string(),
                other => {
                    return Err(Error::Config(format!(
                        "line {line_no}: unknown key `{other}`; known keys: t_c, t_h, omega_h, \
                         d_c, d_h, gamma_c, gamma_h, flux, mode, grid_lo, grid_hi, grid_n, \
                         grid_scale, out"
                    )));
                }
            }
        }
        Ok(config)
    }

    /// Renders the consumed parameters as `key = value` lines, one per key,
    /// in a fixed order. Numbers use the shortest round-tripping decimal
    /// form, so parsing the lines back reproduces this configuration bit for
    /// bit (`tol` travels separately: it is a flag, not a file key).
    pub fn echo_lines(&self) -> Vec<String> {
        vec![
            format!("t_c = {}", self.t_c),
            format!("t_h = {}", self.t_h),
            format!("omega_h = {}", self.omega_h),
            format!("d_c = {}", self.d_c),
            format!("d_h = {}", self.d_h),
            format!("gamma_c = {}", self.gamma_c),
            format!("gamma_h = {}", self.gamma_h),
            format!("flux = {}", self.flux),
            format!("mode = {}", self.mode),
            format!("grid_lo = {}", self.grid_lo),
            format!("grid_hi = {}", self.grid_hi),
            format!("grid_n = {}", self.grid_n),
            format!("grid_scale = {}", match self.grid_scale {
                GridScale::Linear => "linear",
                GridScale::Log => "log",
            }),
            format!("out = {}", self.out),
        ]
    }

    /// Builds the machine these parameters describe.
    pub fn machine(&self) -> Result<MachineConfig> {
        let cold = BathSpec::new(self.t_c, self.gamma_c, self.d_c)?;
        let hot = BathSpec::new(self.t_h, self.gamma_h, self.d_h)?;
        MachineConfig::new(cold, hot, self.omega_h)
    }

    /// The selected flux law. The power-law and linear laws get unit
    /// amplitude: optima, performance figures, and their normalizations are
    /// amplitude-independent, so nothing observable is lost.
    pub fn flux_model(&self) -> FluxModel {
        match self.flux {
            FluxKind::Maser => FluxModel::ThreeLevelMaser,
            FluxKind::HighT => FluxModel::HighTemperature,
            FluxKind::PowerLaw => FluxModel::PowerLaw {
                i0: 1.0,
                d: self.d_c,
            },
            FluxKind::Linear => FluxModel::Linear { i0: 1.0 },
        }
    }

    /// Optimizer settings, honoring a `--tol` override.
    pub fn settings(&self) -> Settings {
        self.tol.map(Settings::with_tol).unwrap_or_default()
    }

    /// The configured sweep grid.
    pub fn grid(&self) -> Grid {
        Grid::range(self.grid_lo, self.grid_hi, self.grid_n, self.grid_scale)
    }

    /// One hot-force sweep curve over the configured grid: configuration
    /// files always describe `x_h` sweeps (the bundled presets cover the
    /// other swept variables).
    pub fn sweep_spec(&self) -> Result<SweepSpec> {
        Ok(SweepSpec {
            label: self.mode.to_string(),
            model: self.flux_model(),
            template: self.machine()?,
            variable: SweptVariable::HotForce,
            grid: self.grid(),
            mode: self.mode,
            settings: self.settings(),
        })
    }
}
