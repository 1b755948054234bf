//! Fit the small-force expansion x* = c1 x_h + c2 x_h^2 of the optimal force
//! numerically and compare c1 against its closed forms.
//!
//! Run with `cargo run --example expansion_coefficients`.

use endoreversible::{
    default_c1_grid, estimate_c1, linear_predictions, powerlaw_engine, powerlaw_refrigerator,
    BathSpec, FluxModel, MachineConfig, Mode,
};

fn main() -> endoreversible::Result<()> {
    println!(
        "{:>6} {:>14} {:>14} {:>14} {:>12}",
        "d", "mode", "c1 fitted", "c1 closed", "residual"
    );
    for d in [1.0, 2.0, 3.0] {
        // Weak cold coupling: the closed forms are exact limits there.
        let cold = BathSpec::new(5.0, 1e-3, d)?;
        let hot = BathSpec::new(10.0, 1.0, d)?;
        let machine = MachineConfig::new(cold, hot, 1.0)?;
        let (eta_c, eps_c) = machine.carnot();

        for mode in [Mode::Refrigerator, Mode::Engine] {
            let fitted = estimate_c1(
                &FluxModel::ThreeLevelMaser,
                &machine,
                mode,
                &default_c1_grid(),
            )?;
            // The loop only visits the two operating modes, so `_` is Engine.
            let closed = match (d == 1.0, mode) {
                (true, Mode::Refrigerator) => linear_predictions(mode, eps_c)?,
                (true, _) => linear_predictions(mode, eta_c)?,
                (false, Mode::Refrigerator) => powerlaw_refrigerator(d, eps_c)?,
                (false, _) => powerlaw_engine(d, eta_c)?,
            };
            println!(
                "{:>6} {:>14} {:>14.8} {:>14.8} {:>12.2e}",
                d, mode, fitted.c1, closed.c1, fitted.residual
            );
        }
    }
    println!(
        "\nThe fit uses {} optimal-force samples on x_h in [1e-3, 1e-1];",
        default_c1_grid().len()
    );
    println!("`residual` is the relative misfit of the quadratic model.");
    Ok(())
}
