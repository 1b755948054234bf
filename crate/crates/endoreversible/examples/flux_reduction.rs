//! At small forces the maser flux collapses onto simpler laws: its
//! high-temperature expansion, and — at weak cold coupling — a pure
//! power law.
//!
//! Run with `cargo run --example flux_reduction`.

use endoreversible::{flux, high_temp_flux, BathSpec, FluxModel, MachineConfig};

fn main() -> endoreversible::Result<()> {
    // Weak cold coupling so the power-law form applies too.
    let cold = BathSpec::new(5.0, 1e-3, 3.0)?;
    let hot = BathSpec::new(10.0, 1.0, 3.0)?;

    println!("maser flux vs its small-force reductions (d = 3, gamma ratio 1e-3):");
    println!(
        "{:>8} {:>14} {:>14} {:>14} {:>12}",
        "x_h", "maser", "high-T", "power law", "maser/highT"
    );
    for x_h in [1.0, 0.1, 0.01, 0.001] {
        let machine = MachineConfig::new(cold, hot, x_h * hot.temperature)?;
        let x_c = 0.5 * x_h;

        let maser = flux(&FluxModel::ThreeLevelMaser, &machine, x_c)?;
        let hight = flux(&FluxModel::HighTemperature, &machine, x_c)?;
        // The weak-coupling limit of the high-T flux: I = i0 x_c^(d-1) (x_h - x_c)
        // with amplitude i0 = gamma_c T_c^d / 3.
        let i0 = cold.coupling * cold.temperature.powf(cold.dimension) / 3.0;
        let power_law = flux(&FluxModel::PowerLaw { i0, d: 3.0 }, &machine, x_c)?;

        println!(
            "{:>8} {:>14.6e} {:>14.6e} {:>14.6e} {:>12.8}",
            x_h,
            maser,
            hight,
            power_law,
            maser / hight
        );
    }
    println!("(the ratio walks to 1 as the forces shrink)");

    // The high-T wrapper takes both forces explicitly, so limits are easy to
    // probe: at x_c = 0 the d = 3 flux vanishes...
    let machine = MachineConfig::new(cold, hot, 0.01 * hot.temperature)?;
    println!(
        "\nhigh-T flux at x_c = 0, d = 3: {}",
        high_temp_flux(&machine, 0.0, machine.x_h())?
    );
    // ...while unit-exponent baths keep a finite intercept.
    let unit_cold = BathSpec::new(5.0, 1e-3, 1.0)?;
    let unit_hot = BathSpec::new(10.0, 1.0, 1.0)?;
    let unit = MachineConfig::new(unit_cold, unit_hot, 0.01 * unit_hot.temperature)?;
    println!(
        "high-T flux at x_c = 0, d = 1: {}",
        high_temp_flux(&unit, 0.0, unit.x_h())?
    );
    Ok(())
}
