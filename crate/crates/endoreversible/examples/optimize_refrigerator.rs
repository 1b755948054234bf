//! Find the cold force that maximizes the cooling rate, from the linear
//! regime to deep saturation.
//!
//! Run with `cargo run --example optimize_refrigerator`.

use endoreversible::{
    maximize_cooling_rate, refrigerator_saturation, render_optimization, BathSpec, FluxModel,
    MachineConfig,
};

fn main() -> endoreversible::Result<()> {
    let cold = BathSpec::new(5.0, 1.0, 3.0)?;
    let hot = BathSpec::new(10.0, 1.0, 3.0)?;
    let machine = MachineConfig::new(cold, hot, 1.0)?;

    // One detailed result: optimal force, cooling rate, COP, and how tightly
    // the bracket converged.
    println!("optimal refrigerator at x_h = {}:", machine.x_h());
    let result = maximize_cooling_rate(&FluxModel::ThreeLevelMaser, &machine)?;
    print!("{}", render_optimization(&result));

    // The optimal force grows with x_h but stops growing around the value
    // set by the bath exponent: x* -> (d+1) + W0(-(d+1) e^-(d+1)).
    let saturation = refrigerator_saturation(3.0)?;
    println!("\nsaturation limit for d = 3: x* -> {saturation:.12}");
    println!("{:>10} {:>18} {:>14}", "x_h", "x_c_opt", "cop");
    for x_h in [0.01, 0.1, 1.0, 10.0, 100.0, 1000.0] {
        let scaled = machine.with_force(x_h)?;
        let result = maximize_cooling_rate(&FluxModel::ThreeLevelMaser, &scaled)?;
        println!(
            "{:>10} {:>18.12} {:>14.8}",
            x_h, result.x_c_opt, result.performance
        );
    }
    println!("(the last column: cooling becomes cheap at small forces, costly at large)");
    Ok(())
}
