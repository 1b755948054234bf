//! Command line front end: evaluate an operating point, optimize a window,
//! run parameter sweeps to CSV, and compare numerics against closed forms.
//!
//! Exit codes: `0` success, `2` invalid input (with the violated constraint
//! named on stderr), `1` I/O failure or an evaluation that failed entirely.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use endoreversible::config::{FluxKind, RunConfig};
use endoreversible::error::{Error, Result};
use endoreversible::model::{operating_point, FluxModel, MachineConfig};
use endoreversible::optimizer::maximize_in_window;
use endoreversible::render::{render_operating_point, render_optimization};
use endoreversible::sweep::{
    compare_numeric_analytic, default_columns, preset, run_plan, write_csv, SweepMode, SweepPlan,
    SweepReport,
};

#[derive(Parser)]
#[command(
    name = "endorev",
    version,
    about = "Endoreversible three-level thermal machines: \
             evaluate, optimize, sweep, compare"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one operating point at a given cold force.
    Evaluate {
        #[command(flatten)]
        common: Common,
        /// Cold force x_c to evaluate at.
        #[arg(long = "x-c", allow_hyphen_values = true)]
        x_c: f64,
    },
    /// Find the optimal cold force in the chosen operating window.
    Optimize {
        #[command(flatten)]
        common: Common,
    },
    /// Run a sweep and write it as CSV.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Tolerance the printed deviation summary grades curves against.
        #[arg(long, default_value_t = 1e-2)]
        report_tol: f64,
    },
    /// Run a sweep and report numeric-versus-analytic deviations.
    Compare {
        #[command(flatten)]
        common: Common,
        /// Tolerance the deviation report grades curves against.
        #[arg(long, default_value_t = 1e-2)]
        report_tol: f64,
    },
}

#[derive(Args)]
struct Common {
    /// Flat `key = value` configuration file.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Bundled figure preset (fig2 through fig9).
    #[arg(long)]
    preset: Option<String>,
    /// Output CSV path (overrides the configured one).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Operating mode.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Flux law.
    #[arg(long, value_enum)]
    flux: Option<FluxArg>,
    /// Optimizer tolerance override.
    #[arg(long)]
    tol: Option<f64>,
    /// Worker threads for sweeps (default: all cores). Results do not
    /// depend on the worker count.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Refrigerator,
    Engine,
}

impl From<ModeArg> for SweepMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Refrigerator => SweepMode::Refrigerator,
            ModeArg::Engine => SweepMode::Engine,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FluxArg {
    Maser,
    Hight,
    Powerlaw,
    Linear,
}

impl From<FluxArg> for FluxKind {
    fn from(flux: FluxArg) -> Self {
        match flux {
            FluxArg::Maser => FluxKind::Maser,
            FluxArg::Hight => FluxKind::HighT,
            FluxArg::Powerlaw => FluxKind::PowerLaw,
            FluxArg::Linear => FluxKind::Linear,
        }
    }
}

/// Everything a command needs, resolved from flags, config file, or preset.
struct Context {
    /// Parsed configuration with flag overrides applied.
    config: RunConfig,
    /// Preset plan, when `--preset` was given.
    plan: Option<SweepPlan>,
    /// CSV comment lines describing the run.
    comments: Vec<String>,
    /// Output path: `--out`, else the preset's name, else the configured one.
    out: PathBuf,
}

impl Context {
    /// Machine and flux law for point commands: the preset's first curve
    /// when a preset is selected, the configuration's otherwise.
    fn point_setup(&self) -> Result<(FluxModel, MachineConfig)> {
        match &self.plan {
            Some(plan) => {
                let spec = &plan.specs[0];
                Ok((spec.model, spec.template))
            }
            None => Ok((self.config.flux_model(), self.config.machine()?)),
        }
    }
}

fn resolve(common: &Common) -> Result<Context> {
    let mut config = match &common.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                Error::Io(format!("cannot read config {}: {e}", path.display()))
            })?;
            RunConfig::parse(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(mode) = common.mode {
        config.mode = mode.into();
    }
    if let Some(flux) = common.flux {
        config.flux = flux.into();
    }
    if let Some(tol) = common.tol {
        config.tol = Some(tol);
    }
    if let Some(out) = &common.out {
        config.out = out.display().to_string();
    }

    let plan = match &common.preset {
        Some(name) => {
            if common.mode.is_some() || common.flux.is_some() {
                return Err(Error::Config(
                    "--mode and --flux cannot override a preset; its curves fix both"
                        .to_string(),
                ));
            }
            let mut plan = preset(name)?;
            if let Some(tol) = common.tol {
                for spec in &mut plan.specs {
                    spec.settings = endoreversible::optimizer::Settings::with_tol(tol);
                }
            }
            Some(plan)
        }
        None => None,
    };

    let mut comments = match (&plan, &common.config) {
        (Some(plan), _) => vec![format!("preset = {}", plan.name)],
        _ => config.echo_lines(),
    };
    if let Some(tol) = common.tol {
        comments.push(format!("flag: tol = {tol}"));
    }

    let out = match (&common.out, &plan) {
        (Some(path), _) => path.clone(),
        (None, Some(plan)) => PathBuf::from(format!("{}.csv", plan.name)),
        (None, None) => PathBuf::from(&config.out),
    };

    Ok(Context {
        config,
        plan,
        comments,
        out,
    })
}

/// Builds the plan a sweep-style command runs: the preset's, or a single
/// configured hot-force curve.
fn sweep_plan(ctx: &Context) -> Result<SweepPlan> {
    match &ctx.plan {
        Some(plan) => Ok(plan.clone()),
        None => {
            let spec = ctx.config.sweep_spec()?;
            Ok(SweepPlan {
                name: "custom".to_string(),
                columns: default_columns(&spec),
                specs: vec![spec],
            })
        }
    }
}

fn cmd_evaluate(common: &Common, x_c: f64) -> Result<()> {
    let ctx = resolve(common)?;
    let (model, machine) = ctx.point_setup()?;
    let op = operating_point(&model, &machine, x_c)?;
    print!("{}", render_operating_point(&op));
    Ok(())
}

fn cmd_optimize(common: &Common) -> Result<()> {
    let ctx = resolve(common)?;
    let (model, machine) = ctx.point_setup()?;
    let mode = match &ctx.plan {
        Some(plan) => plan.specs[0].mode.operating().ok_or_else(|| {
            Error::InvalidInput(
                "this preset is an evaluation scan; it has no window to optimize".to_string(),
            )
        })?,
        None => ctx
            .config
            .mode
            .operating()
            .expect("configs only carry refrigerator or engine"),
    };
    let result = maximize_in_window(&model, &machine, mode, &ctx.config.settings())?;
    print!("{}", render_optimization(&result));
    Ok(())
}

fn write_report(ctx: &Context, report: &SweepReport) -> Result<usize> {
    let file = fs::File::create(&ctx.out)
        .map_err(|e| Error::Io(format!("cannot write {}: {e}", ctx.out.display())))?;
    let mut writer = std::io::BufWriter::new(file);
    write_csv(&mut writer, report, &ctx.comments)?;
    writer
        .flush()
        .map_err(|e| Error::Io(format!("cannot write {}: {e}", ctx.out.display())))?;
    Ok(report.curves.iter().map(|c| c.rows.len()).sum())
}

fn cmd_sweep(common: &Common, report_tol: f64) -> Result<()> {
    let ctx = resolve(common)?;
    let plan = sweep_plan(&ctx)?;
    let report = run_plan(&plan)?;
    let rows = write_report(&ctx, &report)?;
    println!("wrote {rows} rows to {}", ctx.out.display());
    print!("{}", compare_numeric_analytic(&report, report_tol));
    Ok(())
}

fn cmd_compare(common: &Common, report_tol: f64) -> Result<()> {
    let ctx = resolve(common)?;
    let plan = sweep_plan(&ctx)?;
    let report = run_plan(&plan)?;
    if common.out.is_some() {
        let rows = write_report(&ctx, &report)?;
        println!("wrote {rows} rows to {}", ctx.out.display());
    }
    print!("{}", compare_numeric_analytic(&report, report_tol));
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Evaluate { common, x_c } => cmd_evaluate(common, *x_c),
        Command::Optimize { common } => cmd_optimize(common),
        Command::Sweep { common, report_tol } => cmd_sweep(common, *report_tol),
        Command::Compare { common, report_tol } => cmd_compare(common, *report_tol),
    }
}

fn run(cli: Cli) -> Result<()> {
    let common = match &cli.command {
        Command::Evaluate { common, .. }
        | Command::Optimize { common }
        | Command::Sweep { common, .. }
        | Command::Compare { common, .. } => common,
    };
    match common.workers {
        None => dispatch(&cli),
        Some(0) => Err(Error::InvalidInput(
            "workers must be at least 1".to_string(),
        )),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("cannot build a {n}-thread pool: {e}")))?
            .install(|| dispatch(&cli)),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidInput(_) | Error::Config(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
