//! The optimal refrigerator force saturates at large x_h, and the plateau
//! depends only on the bath exponent — not on the cold temperature.
//!
//! Run with `cargo run --example saturation_limit`.

use endoreversible::{
    lambert_w0, maximize_cooling_rate, refrigerator_saturation, BathSpec, FluxModel, MachineConfig,
};

fn main() -> endoreversible::Result<()> {
    // The plateau solves d/dx [x^(d+1) / (e^x - 1)] = 0, whose root is
    // x* = (d+1) + W0(-(d+1) e^-(d+1)) with W0 the principal Lambert branch.
    println!("saturation plateau x* by bath exponent:");
    for d in [1.0f64, 2.0, 3.0] {
        let a = d + 1.0;
        let w = lambert_w0(-a * (-a).exp())?;
        println!(
            "  d = {d}: x* = {a} + W0(-{a} e^-{a}) = {:.12}",
            refrigerator_saturation(d)?
        );
        assert_eq!(refrigerator_saturation(d)?, a + w);
    }

    // Cold temperature drops out: machines with T_c = 2, 5, 8 all park their
    // optimal force on the same plateau once x_h is deep in saturation.
    let plateau = refrigerator_saturation(3.0)?;
    println!("\noptimal force at x_h = 1000, d = 3 (plateau {plateau:.12}):");
    println!("{:>8} {:>18} {:>14}", "T_c", "x_c_opt", "rel gap");
    for t_c in [2.0, 5.0, 8.0] {
        let cold = BathSpec::new(t_c, 1.0, 3.0)?;
        let hot = BathSpec::new(10.0, 1.0, 3.0)?;
        // omega_h chosen so x_h = omega_h / T_h = 1000.
        let machine = MachineConfig::new(cold, hot, 10_000.0)?;
        let result = maximize_cooling_rate(&FluxModel::ThreeLevelMaser, &machine)?;
        println!(
            "{:>8} {:>18.12} {:>14.2e}",
            t_c,
            result.x_c_opt,
            (result.x_c_opt - plateau).abs() / plateau
        );
    }
    println!("(the gap left is the finite-x_h remnant, not a T_c effect)");
    Ok(())
}
