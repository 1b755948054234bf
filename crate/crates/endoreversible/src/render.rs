//! Fixed-precision text rendering shared by the CSV writer and the command
//! line front end.
//!
//! Every number that leaves the library — CSV cells, evaluation printouts,
//! optimizer reports — goes through [`sci12`] so that reruns of the same
//! computation produce byte-identical output.

use crate::model::OperatingPoint;
use crate::optimizer::OptimizationResult;

/// Formats a value with 12 significant digits in scientific notation.
///
/// Negative zero is normalized to plain zero so that output never depends on
/// the sign a vanishing rounding term happened to carry.
///
/// ```
/// use endoreversible::render::sci12;
/// assert_eq!(sci12(5.0), "5.00000000000e0");
/// assert_eq!(sci12(-0.0), "0.00000000000e0");
/// assert_eq!(sci12(1.25e-7), "1.25000000000e-7");
/// ```
pub fn sci12(value: f64) -> String {
    let v = if value == 0.0 { 0.0 } else { value };
    format!("{v:.11e}")
}

/// Renders every field of an operating point, one `key = value` line each.
///
/// The cooling figure of merit and the efficiency lines appear only in the
/// operating windows where they are defined.
pub fn render_operating_point(op: &OperatingPoint) -> String {
    let mut out = String::new();
    let mut line = |key: &str, value: String| {
        out.push_str(&format!("{key:<14} = {value}\n"));
    };
    line("x_c", sci12(op.x_c));
    line("x_h", sci12(op.x_h));
    line("flux", sci12(op.flux));
    line("q_c", sci12(op.q_c));
    line("q_h", sci12(op.q_h));
    line("power", sci12(op.power));
    line("entropy_rate", sci12(op.entropy_rate));
    line("mode", op.mode.to_string());
    if let Some(cop) = op.cop {
        line("cop", sci12(cop));
    }
    if let Some(eta) = op.efficiency {
        line("efficiency", sci12(eta));
    }
    out
}

/// Renders every field of an optimization result, one `key = value` line each.
pub fn render_optimization(result: &OptimizationResult) -> String {
    let mut out = String::new();
    let mut line = |key: &str, value: String| {
        out.push_str(&format!("{key:<22} = {value}\n"));
    };
    line("mode", result.mode.to_string());
    line("x_c_opt", sci12(result.x_c_opt));
    line("objective", sci12(result.objective));
    line("performance", sci12(result.performance));
    line(
        "normalized_performance",
        sci12(result.normalized_performance),
    );
    line("bracket_lo", sci12(result.bracket.0));
    line("bracket_hi", sci12(result.bracket.1));
    line("iterations", result.iterations.to_string());
    line("tolerance_achieved", sci12(result.tolerance_achieved));
    out
}
