//! Parameter sweeps over families of machines, with CSV output and
//! numeric-versus-analytic comparison reports.
//!
//! A [`SweepSpec`] describes one curve: a flux law, a template machine, the
//! variable to sweep ([`SweptVariable`]), a [`Grid`], and the operating mode.
//! [`run_sweep`] evaluates the grid in parallel — one [`SweepRow`] per point,
//! in grid order, independent of worker count — and never lets one failed
//! point abort the rest: a failure is recorded as the row's error tag.
//!
//! A [`SweepPlan`] bundles one or more curves with a CSV column selection;
//! the bundled [`preset`]s reproduce the survey figures of the accompanying
//! study (`fig2` through `fig9`). [`write_csv`] renders a finished
//! [`SweepReport`] deterministically: rerunning the same plan writes
//! byte-identical output.

use std::fmt;
use std::io;

use rayon::prelude::*;

use crate::asymptotics::{linear_predictions, powerlaw_engine, powerlaw_refrigerator};
use crate::error::{Error, Result};
use crate::model::{
    cold_temperature_for_cop, cold_temperature_for_efficiency, operating_point, BathSpec,
    FluxModel, MachineConfig, Mode, OperatingPoint,
};
use crate::optimizer::{maximize_in_window, Settings};
use crate::render::sci12;

/// Spacing rule for a generated grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridScale {
    /// Evenly spaced values.
    Linear,
    /// Evenly spaced in `ln`; requires a positive lower bound.
    Log,
}

/// A strictly increasing set of sweep points: either generated from a range
/// or given explicitly.
#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    /// `count >= 2` points from `lo` to `hi` inclusive, both endpoints exact.
    Range {
        lo: f64,
        hi: f64,
        count: usize,
        scale: GridScale,
    },
    /// Explicit points; must be finite, strictly increasing, and at least two.
    Explicit(Vec<f64>),
}

impl Grid {
    /// Convenience constructor for a generated range.
    pub fn range(lo: f64, hi: f64, count: usize, scale: GridScale) -> Self {
        Grid::Range {
            lo,
            hi,
            count,
            scale,
        }
    }

    /// Materializes the grid, validating it first.
    pub fn points(&self) -> Result<Vec<f64>> {
        match self {
            Grid::Range {
                lo,
                hi,
                count,
                scale,
            } => {
                let (lo, hi, count) = (*lo, *hi, *count);
                if count < 2 {
                    return Err(Error::InvalidInput(format!(
                        "grid needs at least 2 points, got {count}"
                    )));
                }
                if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    return Err(Error::InvalidInput(format!(
                        "grid bounds must be finite with lo < hi, got [{lo}, {hi}]"
                    )));
                }
                if *scale == GridScale::Log && lo <= 0.0 {
                    return Err(Error::InvalidInput(format!(
                        "a log grid needs lo > 0, got {lo}"
                    )));
                }
                let n = count as f64 - 1.0;
                let points: Vec<f64> = (0..count)
                    .map(|k| {
                        if k == 0 {
                            lo
                        } else if k == count - 1 {
                            hi
                        } else {
                            let t = k as f64 / n;
                            match scale {
                                GridScale::Linear => lo + (hi - lo) * t,
                                GridScale::Log => (lo.ln() + (hi.ln() - lo.ln()) * t).exp(),
                            }
                        }
                    })
                    .collect();
                ensure_strictly_increasing(&points)?;
                Ok(points)
            }
            Grid::Explicit(values) => {
                if values.len() < 2 {
                    return Err(Error::InvalidInput(format!(
                        "grid needs at least 2 points, got {}",
                        values.len()
                    )));
                }
                if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
                    return Err(Error::InvalidInput(format!(
                        "grid points must be finite, got {bad}"
                    )));
                }
                ensure_strictly_increasing(values)?;
                Ok(values.clone())
            }
        }
    }
}

fn ensure_strictly_increasing(points: &[f64]) -> Result<()> {
    if let Some(pair) = points.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(format!(
            "grid points must be strictly increasing, got {} before {}",
            pair[0], pair[1]
        )));
    }
    Ok(())
}

/// What a grid value is applied to before each point is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweptVariable {
    /// Evaluate the template machine at cold force `x_c = value` (no
    /// optimization). The scan crosses every operating window, so it requires
    /// [`SweepMode::Both`].
    ColdForce,
    /// Replace the hot force: `x_h = value` at fixed temperatures.
    HotForce,
    /// Replace the cold temperature so the Carnot COP equals the value
    /// (refrigerator sweeps only).
    CarnotCop,
    /// Replace the cold temperature so the Carnot efficiency equals the value
    /// (engine sweeps only).
    CarnotEfficiency,
    /// Set both bath exponents (and a power-law flux exponent) to the value.
    Exponent,
    /// Set the cold coupling to `value * gamma_h`.
    CouplingRatio,
}

impl SweptVariable {
    /// CSV column name for the swept value.
    pub fn column_name(&self) -> &'static str {
        match self {
            SweptVariable::ColdForce => "x_c",
            SweptVariable::HotForce => "x_h",
            SweptVariable::CarnotCop => "eps_c",
            SweptVariable::CarnotEfficiency => "eta_c",
            SweptVariable::Exponent => "d",
            SweptVariable::CouplingRatio => "gamma_ratio",
        }
    }
}

/// Operating mode of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    /// Maximize the cooling rate at each point.
    Refrigerator,
    /// Maximize the delivered power at each point.
    Engine,
    /// No optimization; each point is evaluated where it lands. Only
    /// meaningful for [`SweptVariable::ColdForce`] scans, which span both
    /// operating windows.
    Both,
}

impl SweepMode {
    /// The window optimized at each grid point; `None` for evaluation scans.
    pub fn operating(&self) -> Option<Mode> {
        match self {
            SweepMode::Refrigerator => Some(Mode::Refrigerator),
            SweepMode::Engine => Some(Mode::Engine),
            SweepMode::Both => None,
        }
    }
}

impl fmt::Display for SweepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SweepMode::Refrigerator => "refrigerator",
            SweepMode::Engine => "engine",
            SweepMode::Both => "both",
        };
        f.write_str(name)
    }
}

/// One sweep curve: flux law, template machine, swept variable, grid, mode.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// Curve label, used by multi-curve CSV output.
    pub label: String,
    /// Flux law evaluated at every point.
    pub model: FluxModel,
    /// Machine the swept variable is applied to.
    pub template: MachineConfig,
    /// Which knob the grid turns.
    pub variable: SweptVariable,
    /// Grid of swept values.
    pub grid: Grid,
    /// Refrigerator/engine optimization, or plain evaluation (`Both`).
    pub mode: SweepMode,
    /// Optimizer settings used at each point.
    pub settings: Settings,
}

impl SweepSpec {
    /// Checks mode/variable consistency and the optimizer settings. The grid
    /// is validated when materialized.
    pub fn validate(&self) -> Result<()> {
        match (self.variable, self.mode) {
            (SweptVariable::ColdForce, SweepMode::Both) => {}
            (SweptVariable::ColdForce, mode) => {
                return Err(Error::InvalidInput(format!(
                    "a cold-force scan spans both operating windows; \
                     set mode = both, not {mode}"
                )));
            }
            (_, SweepMode::Both) => {
                return Err(Error::InvalidInput(
                    "mode = both is only meaningful for cold-force scans; \
                     pick refrigerator or engine"
                        .to_string(),
                ));
            }
            (SweptVariable::CarnotCop, SweepMode::Engine) => {
                return Err(Error::InvalidInput(
                    "a Carnot-COP sweep drives a refrigerator; \
                     it cannot run in engine mode"
                        .to_string(),
                ));
            }
            (SweptVariable::CarnotEfficiency, SweepMode::Refrigerator) => {
                return Err(Error::InvalidInput(
                    "a Carnot-efficiency sweep drives an engine; \
                     it cannot run in refrigerator mode"
                        .to_string(),
                ));
            }
            _ => {}
        }
        self.settings.validate()
    }
}

/// Computed quantities of one successful sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct RowOutputs {
    /// Cold force the point was evaluated at (the optimum for optimized
    /// sweeps, the swept value itself for cold-force scans).
    pub x_c: f64,
    /// Steady-state flux there.
    pub flux: f64,
    /// Cold heat current.
    pub q_c: f64,
    /// Hot heat current.
    pub q_h: f64,
    /// Signed power (negative when the machine delivers work).
    pub power: f64,
    /// Entropy production rate.
    pub entropy_rate: f64,
    /// Operating window of the evaluated point.
    pub mode: Mode,
    /// COP (refrigerator rows) or efficiency (engine rows); `None` where
    /// undefined (dissipator rows of a cold-force scan).
    pub performance: Option<f64>,
    /// Performance divided by its Carnot bound.
    pub normalized: Option<f64>,
    /// Closed-form normalized performance, where one is defined.
    pub analytic: Option<f64>,
    /// `normalized - analytic`; present iff both factors are.
    pub abs_deviation: Option<f64>,
    /// `|normalized - analytic| / |analytic|`; present iff both factors are.
    pub rel_deviation: Option<f64>,
}

/// One grid point of a sweep: the swept value plus either outputs or an
/// error tag. Exactly one of `outputs` and `error` is set.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// The swept value.
    pub value: f64,
    /// Point outputs; `None` when the point failed.
    pub outputs: Option<RowOutputs>,
    /// Failure description; `None` when the point succeeded.
    pub error: Option<String>,
}

/// Runs one curve: every grid point is evaluated (in parallel, in grid
/// order), failures becoming per-row error tags. Fails with `SweepFailure`
/// only when every point failed, and with `InvalidInput` when the spec or
/// grid is malformed.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let points = spec.grid.points()?;
    let rows: Vec<SweepRow> = points
        .par_iter()
        .map(|&value| evaluate_row(spec, value))
        .collect();
    if rows.iter().all(|row| row.error.is_some()) {
        let first = rows[0].error.as_deref().unwrap_or("unknown");
        return Err(Error::SweepFailure(format!(
            "all {} grid points failed; first error: {first}",
            rows.len()
        )));
    }
    Ok(rows)
}

fn evaluate_row(spec: &SweepSpec, value: f64) -> SweepRow {
    match evaluate_point(spec, value) {
        Ok(outputs) => SweepRow {
            value,
            outputs: Some(outputs),
            error: None,
        },
        Err(e) => SweepRow {
            value,
            outputs: None,
            error: Some(e.to_string()),
        },
    }
}

/// Machine obtained by applying the swept value to the template.
fn machine_for(spec: &SweepSpec, value: f64) -> Result<MachineConfig> {
    let t = &spec.template;
    match spec.variable {
        SweptVariable::ColdForce => Ok(*t),
        SweptVariable::HotForce => t.with_force(value),
        SweptVariable::CarnotCop => {
            let t_c = cold_temperature_for_cop(value, t.hot.temperature)?;
            let cold = BathSpec::new(t_c, t.cold.coupling, t.cold.dimension)?;
            MachineConfig::new(cold, t.hot, t.omega_h)
        }
        SweptVariable::CarnotEfficiency => {
            let t_c = cold_temperature_for_efficiency(value, t.hot.temperature)?;
            let cold = BathSpec::new(t_c, t.cold.coupling, t.cold.dimension)?;
            MachineConfig::new(cold, t.hot, t.omega_h)
        }
        SweptVariable::Exponent => {
            let cold = BathSpec::new(t.cold.temperature, t.cold.coupling, value)?;
            let hot = BathSpec::new(t.hot.temperature, t.hot.coupling, value)?;
            MachineConfig::new(cold, hot, t.omega_h)
        }
        SweptVariable::CouplingRatio => {
            if !(value.is_finite() && value >= 0.0) {
                return Err(Error::InvalidInput(format!(
                    "coupling ratio must be finite and >= 0, got {value}"
                )));
            }
            let cold = BathSpec::new(t.cold.temperature, value * t.hot.coupling, t.cold.dimension)?;
            MachineConfig::new(cold, t.hot, t.omega_h)
        }
    }
}

/// Flux law at this point; an exponent sweep drags a power-law flux exponent
/// along with the bath exponents.
fn model_for(spec: &SweepSpec, value: f64) -> FluxModel {
    match (spec.variable, spec.model) {
        (SweptVariable::Exponent, FluxModel::PowerLaw { i0, .. }) => {
            FluxModel::PowerLaw { i0, d: value }
        }
        (_, model) => model,
    }
}

fn check_invariants(op: &OperatingPoint) -> Result<()> {
    let closure = op.q_c + op.q_h + op.power;
    if closure != 0.0 {
        return Err(Error::EvalFailure(format!(
            "energy closure violated at x_c = {}: residual {closure:e}",
            op.x_c
        )));
    }
    if !(op.entropy_rate >= 0.0) {
        return Err(Error::EvalFailure(format!(
            "negative entropy production at x_c = {}: {:e}",
            op.x_c, op.entropy_rate
        )));
    }
    Ok(())
}

fn evaluate_point(spec: &SweepSpec, value: f64) -> Result<RowOutputs> {
    let config = machine_for(spec, value)?;
    let model = model_for(spec, value);
    match spec.mode.operating() {
        None => {
            let op = operating_point(&model, &config, value)?;
            check_invariants(&op)?;
            let (eta_c, eps_c) = config.carnot();
            let (performance, bound) = match op.mode {
                Mode::Refrigerator => (op.cop, eps_c),
                Mode::Carnot | Mode::Engine => (op.efficiency, eta_c),
                Mode::Dissipator => (None, 1.0),
            };
            Ok(RowOutputs {
                x_c: op.x_c,
                flux: op.flux,
                q_c: op.q_c,
                q_h: op.q_h,
                power: op.power,
                entropy_rate: op.entropy_rate,
                mode: op.mode,
                performance,
                normalized: performance.map(|p| p / bound),
                analytic: None,
                abs_deviation: None,
                rel_deviation: None,
            })
        }
        Some(mode) => {
            let result = maximize_in_window(&model, &config, mode, &spec.settings)?;
            let op = operating_point(&model, &config, result.x_c_opt)?;
            check_invariants(&op)?;
            if op.mode != mode {
                return Err(Error::EvalFailure(format!(
                    "optimum x_c = {} left the {mode} window (landed in {})",
                    result.x_c_opt, op.mode
                )));
            }
            let analytic = analytic_normalized(spec, &model, &config, mode);
            let normalized = result.normalized_performance;
            let (abs_deviation, rel_deviation) = match analytic {
                Some(a) => (Some(normalized - a), Some((normalized - a).abs() / a.abs())),
                None => (None, None),
            };
            Ok(RowOutputs {
                x_c: result.x_c_opt,
                flux: op.flux,
                q_c: op.q_c,
                q_h: op.q_h,
                power: op.power,
                entropy_rate: op.entropy_rate,
                mode,
                performance: Some(result.performance),
                normalized: Some(normalized),
                analytic,
                abs_deviation,
                rel_deviation,
            })
        }
    }
}

/// Closed-form normalized performance for this point, where one is defined.
///
/// Power-law and linear fluxes have exact optima at any force, so their rows
/// always carry a prediction. The maser and its high-temperature expansion
/// follow the power-law forms only in the small-force regime; their rows
/// carry the `d = d_c` prediction on Carnot-figure, exponent, and coupling
/// sweeps (where the template's small hot force is held fixed), and none on
/// force sweeps.
fn analytic_normalized(
    spec: &SweepSpec,
    model: &FluxModel,
    config: &MachineConfig,
    mode: Mode,
) -> Option<f64> {
    let (eta_c, eps_c) = config.carnot();
    let figure = match mode {
        Mode::Refrigerator => eps_c,
        _ => eta_c,
    };
    let prediction = match *model {
        FluxModel::Linear { .. } => linear_predictions(mode, figure),
        FluxModel::PowerLaw { d, .. } => match mode {
            Mode::Refrigerator => powerlaw_refrigerator(d, figure),
            _ => powerlaw_engine(d, figure),
        },
        FluxModel::ThreeLevelMaser | FluxModel::HighTemperature => {
            if matches!(
                spec.variable,
                SweptVariable::ColdForce | SweptVariable::HotForce
            ) {
                return None;
            }
            let d = config.cold.dimension;
            match mode {
                Mode::Refrigerator => powerlaw_refrigerator(d, figure),
                _ => powerlaw_engine(d, figure),
            }
        }
    };
    prediction.ok().map(|p| p.normalized_performance)
}

/// CSV column selector. Headers adapt to the report: mode-specific names
/// (`q_c_opt`, `cop`, ...) when every curve shares an operating mode, neutral
/// names otherwise; the swept-value header names the variable when all curves
/// sweep the same one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    /// Curve label (multi-curve reports).
    Curve,
    /// Operating window of the row.
    Mode,
    /// The swept value.
    Value,
    /// Cold force the row was evaluated at.
    XCOpt,
    /// Steady-state flux.
    Flux,
    /// Cold heat current.
    QC,
    /// Hot heat current.
    QH,
    /// Signed power.
    Power,
    /// Entropy production rate.
    EntropyRate,
    /// Mode objective: cooling rate `q_c` for refrigerator curves, signed
    /// power for engine curves (minima mark maximal delivered power).
    Objective,
    /// COP or efficiency.
    Performance,
    /// Performance over its Carnot bound.
    Normalized,
    /// Closed-form normalized performance.
    Analytic,
    /// `normalized - analytic`.
    AbsDeviation,
    /// `|normalized - analytic| / |analytic|`.
    RelDeviation,
}

/// A named bundle of curves plus the CSV columns their report prints.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPlan {
    /// Plan name (preset name, or caller-chosen).
    pub name: String,
    /// Columns of the CSV output, in order. An `error` column is always
    /// appended after these.
    pub columns: Vec<Column>,
    /// Curves, run in order.
    pub specs: Vec<SweepSpec>,
}

/// One executed curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveData {
    /// The curve's spec.
    pub spec: SweepSpec,
    /// One row per grid point, in grid order.
    pub rows: Vec<SweepRow>,
}

/// Executed plan: everything needed to write the CSV or compare against
/// closed forms.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    /// Name of the plan that produced the report.
    pub name: String,
    /// CSV columns, in order.
    pub columns: Vec<Column>,
    /// Executed curves, in plan order.
    pub curves: Vec<CurveData>,
}

/// Runs every curve of a plan. Fails if any single curve fails entirely.
pub fn run_plan(plan: &SweepPlan) -> Result<SweepReport> {
    if plan.specs.is_empty() {
        return Err(Error::InvalidInput("a sweep plan needs at least one curve".to_string()));
    }
    let mut curves = Vec::with_capacity(plan.specs.len());
    for spec in &plan.specs {
        let rows = run_sweep(spec)?;
        curves.push(CurveData {
            spec: spec.clone(),
            rows,
        });
    }
    Ok(SweepReport {
        name: plan.name.clone(),
        columns: plan.columns.clone(),
        curves,
    })
}

/// Default column set for a single ad hoc curve: current columns for a
/// cold-force scan; optimum, performance, and (where closed forms exist)
/// analytic-deviation columns for optimized sweeps.
pub fn default_columns(spec: &SweepSpec) -> Vec<Column> {
    match spec.mode.operating() {
        None => vec![
            Column::Value,
            Column::Flux,
            Column::QC,
            Column::QH,
            Column::Power,
            Column::EntropyRate,
            Column::Mode,
        ],
        Some(_) => {
            let mut columns = vec![
                Column::Value,
                Column::XCOpt,
                Column::Objective,
                Column::Performance,
                Column::Normalized,
            ];
            let has_analytic = match spec.model {
                FluxModel::Linear { .. } | FluxModel::PowerLaw { .. } => true,
                FluxModel::ThreeLevelMaser | FluxModel::HighTemperature => !matches!(
                    spec.variable,
                    SweptVariable::ColdForce | SweptVariable::HotForce
                ),
            };
            if has_analytic {
                columns.extend([Column::Analytic, Column::AbsDeviation, Column::RelDeviation]);
            }
            columns
        }
    }
}

fn uniform<T: PartialEq + Copy>(mut items: impl Iterator<Item = T>) -> Option<T> {
    let first = items.next()?;
    items.all(|item| item == first).then_some(first)
}

fn uniform_mode(report: &SweepReport) -> Option<Mode> {
    uniform(report.curves.iter().map(|c| c.spec.mode)).and_then(|m| m.operating())
}

fn value_header(report: &SweepReport) -> &'static str {
    match uniform(report.curves.iter().map(|c| c.spec.variable)) {
        Some(variable) => variable.column_name(),
        None => {
            let carnot_only = report.curves.iter().all(|c| {
                matches!(
                    c.spec.variable,
                    SweptVariable::CarnotCop | SweptVariable::CarnotEfficiency
                )
            });
            if carnot_only {
                "carnot_figure"
            } else {
                "value"
            }
        }
    }
}

impl Column {
    fn header(&self, report: &SweepReport) -> &'static str {
        let mode = uniform_mode(report);
        match self {
            Column::Curve => "curve",
            Column::Mode => "mode",
            Column::Value => value_header(report),
            Column::XCOpt => "x_c_opt",
            Column::Flux => "flux",
            Column::QC => "q_c",
            Column::QH => "q_h",
            Column::Power => "power",
            Column::EntropyRate => "entropy_rate",
            Column::Objective => match mode {
                Some(Mode::Refrigerator) => "q_c_opt",
                Some(_) => "p_opt",
                None => "objective",
            },
            Column::Performance => match mode {
                Some(Mode::Refrigerator) => "cop",
                Some(_) => "eta",
                None => "performance",
            },
            Column::Normalized => match mode {
                Some(Mode::Refrigerator) => "cop_norm",
                Some(_) => "eta_norm",
                None => "normalized_performance",
            },
            Column::Analytic => match mode {
                Some(Mode::Refrigerator) => "analytic_cop_norm",
                Some(_) => "analytic_eta_norm",
                None => "analytic_norm",
            },
            Column::AbsDeviation => "abs_dev",
            Column::RelDeviation => "rel_dev",
        }
    }

    /// Cell text for one row. Numeric cells of failed rows are empty; the
    /// swept value itself (an input, not a result) is always printed.
    fn cell(&self, spec: &SweepSpec, row: &SweepRow) -> String {
        let outputs = row.outputs.as_ref();
        let opt = |v: Option<f64>| v.map(sci12).unwrap_or_default();
        match self {
            Column::Curve => csv_escape(&spec.label),
            Column::Mode => outputs.map(|o| o.mode.to_string()).unwrap_or_default(),
            Column::Value => sci12(row.value),
            Column::XCOpt => opt(outputs.map(|o| o.x_c)),
            Column::Flux => opt(outputs.map(|o| o.flux)),
            Column::QC => opt(outputs.map(|o| o.q_c)),
            Column::QH => opt(outputs.map(|o| o.q_h)),
            Column::Power => opt(outputs.map(|o| o.power)),
            Column::EntropyRate => opt(outputs.map(|o| o.entropy_rate)),
            Column::Objective => opt(outputs.map(|o| match spec.mode {
                SweepMode::Engine => o.power,
                _ => o.q_c,
            })),
            Column::Performance => opt(outputs.and_then(|o| o.performance)),
            Column::Normalized => opt(outputs.and_then(|o| o.normalized)),
            Column::Analytic => opt(outputs.and_then(|o| o.analytic)),
            Column::AbsDeviation => opt(outputs.and_then(|o| o.abs_deviation)),
            Column::RelDeviation => opt(outputs.and_then(|o| o.rel_deviation)),
        }
    }
}

/// Quotes a CSV cell when it contains a separator, quote, or newline.
fn csv_escape(cell: &str) -> String {
    if cell.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

/// Writes a report as CSV: a `#`-prefixed comment block (tool version first,
/// then the caller's lines, typically the parameters that produced the
/// report), one header row, then one line per row with `\n` endings. All
/// numbers carry 12 significant digits; failed rows leave numeric cells
/// empty and put the failure into the trailing `error` column. Output is a
/// pure function of the report, so reruns are byte-identical.
pub fn write_csv<W: io::Write>(
    out: &mut W,
    report: &SweepReport,
    comments: &[String],
) -> Result<()> {
    let io_err = |e: io::Error| Error::Io(format!("CSV write failed: {e}"));
    writeln!(out, "# endoreversible {}", env!("CARGO_PKG_VERSION")).map_err(io_err)?;
    for comment in comments {
        writeln!(out, "# {comment}").map_err(io_err)?;
    }
    let mut headers: Vec<String> = report
        .columns
        .iter()
        .map(|c| c.header(report).to_string())
        .collect();
    headers.push("error".to_string());
    writeln!(out, "{}", headers.join(",")).map_err(io_err)?;
    for curve in &report.curves {
        for row in &curve.rows {
            let mut cells: Vec<String> = report
                .columns
                .iter()
                .map(|c| c.cell(&curve.spec, row))
                .collect();
            cells.push(row.error.as_deref().map(csv_escape).unwrap_or_default());
            writeln!(out, "{}", cells.join(",")).map_err(io_err)?;
        }
    }
    Ok(())
}

/// Deviation summary of one curve against its closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveComparison {
    /// Curve label.
    pub label: String,
    /// Rows that carried both a numeric and an analytic value.
    pub points: usize,
    /// Largest relative deviation.
    pub max_rel_deviation: f64,
    /// Mean relative deviation.
    pub mean_rel_deviation: f64,
    /// Whether the largest deviation is within the report tolerance.
    pub passed: bool,
}

/// Per-curve deviation summaries against a common tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    /// Tolerance the pass/fail verdicts refer to.
    pub tolerance: f64,
    /// One summary per curve that carried analytic predictions.
    pub curves: Vec<CurveComparison>,
}

impl CompareReport {
    /// True when every summarized curve passed (vacuously true when empty).
    pub fn all_passed(&self) -> bool {
        self.curves.iter().all(|c| c.passed)
    }
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.curves.is_empty() {
            return writeln!(f, "no curves carry analytic predictions");
        }
        for curve in &self.curves {
            writeln!(
                f,
                "curve {}: points={} max_rel={:.3e} mean_rel={:.3e} {} (tol {:.1e})",
                curve.label,
                curve.points,
                curve.max_rel_deviation,
                curve.mean_rel_deviation,
                if curve.passed { "PASS" } else { "FAIL" },
                self.tolerance,
            )?;
        }
        Ok(())
    }
}

/// Summarizes each curve's numeric-versus-analytic deviations. Curves whose
/// rows carry no analytic predictions are skipped; an input without any
/// yields an empty report.
pub fn compare_numeric_analytic(report: &SweepReport, tolerance: f64) -> CompareReport {
    let mut curves = Vec::new();
    for curve in &report.curves {
        let deviations: Vec<f64> = curve
            .rows
            .iter()
            .filter_map(|row| row.outputs.as_ref())
            .filter_map(|o| o.rel_deviation)
            .collect();
        if deviations.is_empty() {
            continue;
        }
        let max = deviations.iter().copied().fold(0.0, f64::max);
        let mean = deviations.iter().sum::<f64>() / deviations.len() as f64;
        curves.push(CurveComparison {
            label: curve.spec.label.clone(),
            points: deviations.len(),
            max_rel_deviation: max,
            mean_rel_deviation: mean,
            passed: max <= tolerance,
        });
    }
    CompareReport { tolerance, curves }
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

/// Names of the bundled survey presets, in figure order.
pub fn preset_names() -> &'static [&'static str] {
    &[
        "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9",
    ]
}

/// Reference bath pair: `T_c = 5`, `T_h = 10`, unit hot coupling.
fn reference_machine(gamma_ratio: f64, d: f64, omega_h: f64) -> MachineConfig {
    let cold = BathSpec::new(5.0, gamma_ratio, d).expect("valid preset bath");
    let hot = BathSpec::new(10.0, 1.0, d).expect("valid preset bath");
    MachineConfig::new(cold, hot, omega_h).expect("valid preset machine")
}

/// Same machine with the cold temperature replaced.
fn with_cold_temperature(template: &MachineConfig, t_c: f64) -> MachineConfig {
    let cold = BathSpec::new(t_c, template.cold.coupling, template.cold.dimension)
        .expect("valid preset bath");
    MachineConfig::new(cold, template.hot, template.omega_h).expect("valid preset machine")
}

fn maser_spec(
    label: &str,
    template: MachineConfig,
    variable: SweptVariable,
    grid: Grid,
    mode: SweepMode,
) -> SweepSpec {
    SweepSpec {
        label: label.to_string(),
        model: FluxModel::ThreeLevelMaser,
        template,
        variable,
        grid,
        mode,
        settings: Settings::default(),
    }
}

/// Default hot-force grid: 200 log points over `[1e-3, 10]`.
fn force_grid() -> Grid {
    Grid::range(1e-3, 10.0, 200, GridScale::Log)
}

/// A bundled sweep plan reproducing one survey figure:
///
/// * `fig2` — currents `q_c`, `q_h`, `P` across the whole cold-force window
///   at `x_h = 0.1` (`T_c = 5`, `T_h = 10`, `d = 3`).
/// * `fig3` — optimal refrigerator force vs `x_h` up to `10^3` (the grid
///   reaches the saturation plateau).
/// * `fig4` — optimal engine force and power vs `x_h`.
/// * `fig5` — COP/efficiency at the optimum vs `x_h` for fixed Carnot
///   figures `eps_C` in {0.05, 19} and `eta_C` in {0.05, 0.95}.
/// * `fig6` — the same four curves, normalized by their Carnot bounds.
/// * `fig7` — flux at the optimum vs `x_h` for `d` in {1, 2, 3}, both modes.
/// * `fig8` — normalized optimal performance vs the Carnot figure at
///   `x_h = 0.1` for `d` in {1, 2, 3}, against the power-law closed forms.
/// * `fig9` — as `fig8` with cold coupling `gamma_c/gamma_h = 0.01`.
///
/// Unknown names are rejected with the offender named.
pub fn preset(name: &str) -> Result<SweepPlan> {
    let plan = match name {
        "fig2" => {
            let template = reference_machine(1.0, 3.0, 1.0);
            SweepPlan {
                name: name.to_string(),
                columns: vec![
                    Column::Value,
                    Column::Flux,
                    Column::QC,
                    Column::QH,
                    Column::Power,
                    Column::EntropyRate,
                    Column::Mode,
                ],
                specs: vec![maser_spec(
                    "currents",
                    template,
                    SweptVariable::ColdForce,
                    Grid::range(1e-3, template.dissipator_edge(), 200, GridScale::Linear),
                    SweepMode::Both,
                )],
            }
        }
        "fig3" | "fig4" => {
            let template = reference_machine(1.0, 3.0, 1.0);
            let (label, grid, mode) = if name == "fig3" {
                (
                    "refrigerator",
                    Grid::range(1e-3, 1e3, 200, GridScale::Log),
                    SweepMode::Refrigerator,
                )
            } else {
                ("engine", force_grid(), SweepMode::Engine)
            };
            SweepPlan {
                name: name.to_string(),
                columns: vec![
                    Column::Value,
                    Column::XCOpt,
                    Column::Objective,
                    Column::Performance,
                    Column::Normalized,
                ],
                specs: vec![maser_spec(
                    label,
                    template,
                    SweptVariable::HotForce,
                    grid,
                    mode,
                )],
            }
        }
        "fig5" | "fig6" => {
            let template = reference_machine(1.0, 3.0, 1.0);
            let refrigerator = |eps_c: f64| {
                let t_c = cold_temperature_for_cop(eps_c, template.hot.temperature)
                    .expect("valid preset Carnot COP");
                maser_spec(
                    &format!("refrigerator eps_C={eps_c}"),
                    with_cold_temperature(&template, t_c),
                    SweptVariable::HotForce,
                    force_grid(),
                    SweepMode::Refrigerator,
                )
            };
            let engine = |eta_c: f64| {
                let t_c = cold_temperature_for_efficiency(eta_c, template.hot.temperature)
                    .expect("valid preset Carnot efficiency");
                maser_spec(
                    &format!("engine eta_C={eta_c}"),
                    with_cold_temperature(&template, t_c),
                    SweptVariable::HotForce,
                    force_grid(),
                    SweepMode::Engine,
                )
            };
            let performance_column = if name == "fig5" {
                Column::Performance
            } else {
                Column::Normalized
            };
            SweepPlan {
                name: name.to_string(),
                columns: vec![
                    Column::Curve,
                    Column::Mode,
                    Column::Value,
                    Column::XCOpt,
                    performance_column,
                ],
                specs: vec![
                    refrigerator(0.05),
                    refrigerator(19.0),
                    engine(0.05),
                    engine(0.95),
                ],
            }
        }
        "fig7" => {
            let mut specs = Vec::new();
            for (mode, mode_name) in [
                (SweepMode::Refrigerator, "refrigerator"),
                (SweepMode::Engine, "engine"),
            ] {
                for d in [1.0, 2.0, 3.0] {
                    specs.push(maser_spec(
                        &format!("{mode_name} d={d}"),
                        reference_machine(1.0, d, 1.0),
                        SweptVariable::HotForce,
                        force_grid(),
                        mode,
                    ));
                }
            }
            SweepPlan {
                name: name.to_string(),
                columns: vec![
                    Column::Curve,
                    Column::Mode,
                    Column::Value,
                    Column::XCOpt,
                    Column::Flux,
                ],
                specs,
            }
        }
        "fig8" | "fig9" => {
            let gamma_ratio = if name == "fig8" { 1.0 } else { 0.01 };
            let mut specs = Vec::new();
            for d in [1.0, 2.0, 3.0] {
                specs.push(maser_spec(
                    &format!("refrigerator d={d}"),
                    reference_machine(gamma_ratio, d, 1.0),
                    SweptVariable::CarnotCop,
                    Grid::range(0.2, 20.0, 100, GridScale::Linear),
                    SweepMode::Refrigerator,
                ));
            }
            for d in [1.0, 2.0, 3.0] {
                specs.push(maser_spec(
                    &format!("engine d={d}"),
                    reference_machine(gamma_ratio, d, 1.0),
                    SweptVariable::CarnotEfficiency,
                    Grid::range(0.0099, 0.99, 100, GridScale::Linear),
                    SweepMode::Engine,
                ));
            }
            SweepPlan {
                name: name.to_string(),
                columns: vec![
                    Column::Curve,
                    Column::Mode,
                    Column::Value,
                    Column::XCOpt,
                    Column::Normalized,
                    Column::Analytic,
                    Column::AbsDeviation,
                    Column::RelDeviation,
                ],
                specs,
            }
        }
        other => {
            return Err(Error::Config(format!(
                "unknown preset '{other}'; expected one of {}",
                preset_names().join(", ")
            )));
        }
    };
    Ok(plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn linear_refrigerator_spec(grid: Grid) -> SweepSpec {
        SweepSpec {
            label: "linear".to_string(),
            model: FluxModel::Linear { i0: 1.0 },
            template: reference_machine(1.0, 3.0, 1.0),
            variable: SweptVariable::HotForce,
            grid,
            mode: SweepMode::Refrigerator,
            settings: Settings::default(),
        }
    }

    #[test]
    fn linear_grids_hit_both_endpoints_exactly() {
        let points = Grid::range(0.5, 2.5, 5, GridScale::Linear).points().unwrap();
        assert_eq!(points, vec![0.5, 1.0, 1.5, 2.0, 2.5]);
    }

    #[test]
    fn log_grids_hit_both_endpoints_exactly() {
        let points = Grid::range(1e-3, 1e3, 7, GridScale::Log).points().unwrap();
        assert_eq!(points[0], 1e-3);
        assert_eq!(points[6], 1e3);
        for (p, expected) in points.iter().zip([1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3]) {
            assert_relative_eq!(*p, expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn grids_reject_malformed_ranges() {
        assert!(Grid::range(1.0, 2.0, 1, GridScale::Linear).points().is_err());
        assert!(Grid::range(2.0, 1.0, 5, GridScale::Linear).points().is_err());
        assert!(Grid::range(0.0, 1.0, 5, GridScale::Log).points().is_err());
        assert!(Grid::Explicit(vec![1.0]).points().is_err());
        assert!(Grid::Explicit(vec![1.0, 1.0]).points().is_err());
        assert!(Grid::Explicit(vec![1.0, f64::NAN]).points().is_err());
        assert!(Grid::Explicit(vec![0.1, 0.2, 0.15]).points().is_err());
    }

    #[test]
    fn specs_reject_inconsistent_mode_variable_pairs() {
        let template = reference_machine(1.0, 3.0, 1.0);
        let mut spec = maser_spec(
            "bad",
            template,
            SweptVariable::ColdForce,
            Grid::Explicit(vec![0.01, 0.02]),
            SweepMode::Refrigerator,
        );
        assert!(spec.validate().is_err());
        spec.mode = SweepMode::Both;
        assert!(spec.validate().is_ok());

        spec.variable = SweptVariable::HotForce;
        assert!(spec.validate().is_err());

        spec.variable = SweptVariable::CarnotCop;
        spec.mode = SweepMode::Engine;
        assert!(spec.validate().is_err());

        spec.variable = SweptVariable::CarnotEfficiency;
        spec.mode = SweepMode::Refrigerator;
        assert!(spec.validate().is_err());
        spec.mode = SweepMode::Engine;
        assert!(spec.validate().is_ok());
    }

    #[test]
    fn linear_flux_rows_match_the_closed_forms() {
        let rows = run_sweep(&linear_refrigerator_spec(Grid::Explicit(vec![0.1, 0.2])))
            .unwrap();
        assert_eq!(rows.len(), 2);
        let (_, eps_c) = reference_machine(1.0, 3.0, 1.0).carnot();
        for row in &rows {
            let outputs = row.outputs.as_ref().expect("clean rows");
            assert_relative_eq!(outputs.x_c, row.value / 2.0, max_relative = 1e-8);
            assert_relative_eq!(
                outputs.normalized.unwrap(),
                1.0 / (2.0 + eps_c),
                max_relative = 1e-9
            );
            let analytic = outputs.analytic.expect("linear rows carry closed forms");
            assert_relative_eq!(analytic, 1.0 / (2.0 + eps_c), max_relative = 1e-15);
            assert!(outputs.rel_deviation.unwrap() < 1e-8);
        }
    }

    #[test]
    fn parallel_and_serial_execution_produce_identical_rows() {
        let spec = linear_refrigerator_spec(Grid::range(0.05, 5.0, 64, GridScale::Log));
        let parallel = run_sweep(&spec).unwrap();
        let serial: Vec<SweepRow> = spec
            .grid
            .points()
            .unwrap()
            .into_iter()
            .map(|v| evaluate_row(&spec, v))
            .collect();
        assert_eq!(parallel, serial);
    }

    #[test]
    fn reruns_are_bitwise_identical() {
        let plan = preset("fig2").unwrap();
        let report = run_plan(&plan).unwrap();
        let again = run_plan(&plan).unwrap();
        assert_eq!(report, again);

        let mut first = Vec::new();
        let mut second = Vec::new();
        let comments = vec!["preset = fig2".to_string()];
        write_csv(&mut first, &report, &comments).unwrap();
        write_csv(&mut second, &again, &comments).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn failed_points_become_error_rows_not_aborts() {
        let spec = SweepSpec {
            label: "ratio".to_string(),
            model: FluxModel::ThreeLevelMaser,
            template: reference_machine(1.0, 3.0, 1.0),
            variable: SweptVariable::CouplingRatio,
            grid: Grid::Explicit(vec![0.0, 1.0]),
            mode: SweepMode::Refrigerator,
            settings: Settings::default(),
        };
        let rows = run_sweep(&spec).unwrap();
        assert!(rows[0].error.is_some(), "decoupled cold bath cannot cool");
        assert!(rows[0].outputs.is_none());
        assert!(rows[1].error.is_none());
        assert!(rows[1].outputs.is_some());
    }

    #[test]
    fn a_sweep_where_every_point_fails_is_a_sweep_failure() {
        let spec = SweepSpec {
            label: "doomed".to_string(),
            model: FluxModel::ThreeLevelMaser,
            template: reference_machine(1.0, 3.0, 1.0),
            variable: SweptVariable::ColdForce,
            grid: Grid::Explicit(vec![-0.2, -0.1]),
            mode: SweepMode::Both,
            settings: Settings::default(),
        };
        match run_sweep(&spec) {
            Err(Error::SweepFailure(msg)) => assert!(msg.contains("all 2 grid points")),
            other => panic!("expected SweepFailure, got {other:?}"),
        }
    }

    #[test]
    fn csv_layout_is_pinned() {
        let spec = linear_refrigerator_spec(Grid::Explicit(vec![0.1, 0.2]));
        let mut plan = SweepPlan {
            name: "custom".to_string(),
            columns: default_columns(&spec),
            specs: vec![spec],
        };
        let report = run_plan(&plan).unwrap();
        let mut buffer = Vec::new();
        write_csv(&mut buffer, &report, &["t_c = 5".to_string()]).unwrap();
        let text = String::from_utf8(buffer).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], concat!("# endoreversible ", env!("CARGO_PKG_VERSION")));
        assert_eq!(lines[1], "# t_c = 5");
        assert_eq!(
            lines[2],
            "x_h,x_c_opt,q_c_opt,cop,cop_norm,analytic_cop_norm,abs_dev,rel_dev,error"
        );
        assert_eq!(lines.len(), 5);
        for line in &lines[3..] {
            assert_eq!(line.split(',').count(), 9);
            assert!(line.ends_with(','), "clean rows leave the error cell empty");
        }
        assert!(lines[3].starts_with("1.00000000000e-1,"));
        assert!(text.ends_with('\n'));
        assert!(!text.contains('\r'));

        // A failed row keeps the swept value and the error tag, nothing else.
        plan.specs[0].grid = Grid::Explicit(vec![-1.0, 0.1]);
        let report = run_plan(&plan).unwrap();
        let mut buffer = Vec::new();
        write_csv(&mut buffer, &report, &[]).unwrap();
        let text = String::from_utf8(buffer).unwrap();
        let error_row = text.lines().nth(2).unwrap();
        assert!(error_row.starts_with("-1.00000000000e0,,,,,,,,"));
        assert!(error_row.contains("x_h"));
    }

    #[test]
    fn error_messages_with_commas_are_quoted() {
        assert_eq!(csv_escape("plain"), "plain");
        assert_eq!(csv_escape("a, b"), "\"a, b\"");
        assert_eq!(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn comparison_reports_summarize_per_curve_deviations() {
        let spec = SweepSpec {
            label: "powerlaw d=2".to_string(),
            model: FluxModel::PowerLaw { i0: 1.0, d: 2.0 },
            template: reference_machine(1.0, 2.0, 1.0),
            variable: SweptVariable::HotForce,
            grid: Grid::range(0.1, 1.0, 8, GridScale::Log),
            mode: SweepMode::Refrigerator,
            settings: Settings::default(),
        };
        let plan = SweepPlan {
            name: "compare".to_string(),
            columns: default_columns(&spec),
            specs: vec![spec],
        };
        let report = run_plan(&plan).unwrap();
        let comparison = compare_numeric_analytic(&report, 1e-8);
        assert_eq!(comparison.curves.len(), 1);
        let curve = &comparison.curves[0];
        assert_eq!(curve.points, 8);
        assert!(curve.passed, "max deviation {}", curve.max_rel_deviation);
        assert!(curve.max_rel_deviation >= curve.mean_rel_deviation);
        assert!(comparison.all_passed());
        assert!(comparison.to_string().contains("PASS"));

        // Maser force sweeps carry no closed form, so nothing to summarize.
        let maser = preset("fig2").unwrap();
        let comparison = compare_numeric_analytic(&run_plan(&maser).unwrap(), 1e-8);
        assert!(comparison.curves.is_empty());
        assert!(comparison.all_passed());
    }

    #[test]
    fn every_preset_constructs_and_validates() {
        for name in preset_names() {
            let plan = preset(name).unwrap();
            assert_eq!(&plan.name, name);
            assert!(!plan.specs.is_empty());
            for spec in &plan.specs {
                spec.validate().unwrap();
                spec.grid.points().unwrap();
            }
        }
        match preset("fig99") {
            Err(Error::Config(msg)) => assert!(msg.contains("fig99")),
            other => panic!("expected Config error, got {other:?}"),
        }
    }

    #[test]
    fn fig3_preset_matches_its_published_shape() {
        let plan = preset("fig3").unwrap();
        assert_eq!(plan.specs.len(), 1);
        assert_eq!(
            plan.columns,
            vec![
                Column::Value,
                Column::XCOpt,
                Column::Objective,
                Column::Performance,
                Column::Normalized,
            ]
        );
        let spec = &plan.specs[0];
        assert_eq!(spec.mode, SweepMode::Refrigerator);
        assert_eq!(spec.variable, SweptVariable::HotForce);
        assert_eq!(
            spec.grid,
            Grid::range(1e-3, 1e3, 200, GridScale::Log),
            "the grid must reach the saturation plateau"
        );
        assert_eq!(spec.template.cold.temperature, 5.0);
        assert_eq!(spec.template.hot.temperature, 10.0);
        assert_eq!(spec.template.cold.dimension, 3.0);
    }

    #[test]
    fn fig2_scan_crosses_every_window_cleanly() {
        let report = run_plan(&preset("fig2").unwrap()).unwrap();
        let rows = &report.curves[0].rows;
        assert_eq!(rows.len(), 200);
        assert!(rows.iter().all(|r| r.error.is_none()));
        assert_eq!(rows[0].outputs.as_ref().unwrap().mode, Mode::Refrigerator);
        assert_eq!(
            rows[199].outputs.as_ref().unwrap().mode,
            Mode::Dissipator,
            "the scan ends exactly at the dissipator edge"
        );
        assert!(rows
            .iter()
            .any(|r| r.outputs.as_ref().unwrap().mode == Mode::Engine));
        // Currents close and entropy production stays non-negative row by row
        // (re-asserted inside the sweep, spot-checked here).
        for row in rows {
            let o = row.outputs.as_ref().unwrap();
            assert_eq!(o.q_c + o.q_h + o.power, 0.0);
            assert!(o.entropy_rate >= 0.0);
        }
    }

    #[test]
    fn carnot_figure_sweeps_carry_analytic_columns() {
        let template = reference_machine(1.0, 2.0, 1.0);
        let spec = maser_spec(
            "refrigerator d=2",
            template,
            SweptVariable::CarnotCop,
            Grid::Explicit(vec![0.2, 1.0, 2.0]),
            SweepMode::Refrigerator,
        );
        let rows = run_sweep(&spec).unwrap();
        for row in &rows {
            let o = row.outputs.as_ref().unwrap();
            let analytic = o.analytic.expect("Carnot sweeps carry predictions");
            let expected = powerlaw_refrigerator(2.0, row.value)
                .unwrap()
                .normalized_performance;
            // The Carnot figure is rederived from the per-point cold
            // temperature, so agreement is to rounding, not bitwise.
            assert_relative_eq!(analytic, expected, max_relative = 1e-12);
            // x_h = 0.1 is small but not asymptotic: agreement is loose.
            assert!(o.rel_deviation.unwrap() < 0.2);
        }
    }

    #[test]
    fn exponent_sweeps_follow_a_powerlaw_flux_exponent() {
        let spec = SweepSpec {
            label: "exponent".to_string(),
            model: FluxModel::PowerLaw { i0: 1.0, d: 9.0 },
            template: reference_machine(1.0, 3.0, 1.0),
            variable: SweptVariable::Exponent,
            grid: Grid::Explicit(vec![1.0, 2.0, 3.0]),
            mode: SweepMode::Refrigerator,
            settings: Settings::default(),
        };
        let rows = run_sweep(&spec).unwrap();
        for row in &rows {
            let o = row.outputs.as_ref().unwrap();
            // The optimum of a pure power-law flux sits at c1 * x_h exactly,
            // with c1 = d/(d+1) for the refrigerator, so the flux exponent
            // must have tracked the swept d (the template's d = 9 would put
            // it at 0.9 x_h).
            let c1 = row.value / (row.value + 1.0);
            assert_relative_eq!(o.x_c, c1 * 0.1, max_relative = 1e-7);
            assert!(o.rel_deviation.unwrap() < 1e-8);
        }
    }
}
