//! Walk one machine across its whole cold-force range and watch it change
//! character: refrigerator, reversible point, engine, dissipator.
//!
//! Run with `cargo run --example evaluate_point`.

use endoreversible::{operating_point, render_operating_point, BathSpec, FluxModel, MachineConfig};

fn main() -> endoreversible::Result<()> {
    // Reference machine: T_c = 5, T_h = 10, cubic baths, unit couplings,
    // omega_h = 1, so the hot force is x_h = 0.1.
    let cold = BathSpec::new(5.0, 1.0, 3.0)?;
    let hot = BathSpec::new(10.0, 1.0, 3.0)?;
    let machine = MachineConfig::new(cold, hot, 1.0)?;
    let x_h = machine.x_h();
    let edge = machine.dissipator_edge();
    println!("hot force x_h = {x_h}, engine window ends at x_c = {edge}\n");

    println!("{:>10} {:>14} {:>14} {:>14} {:>14}  mode", "x_c", "flux", "q_c", "q_h", "power");
    // Fold -0.0 into 0.0 for display; the currents vanish exactly at the
    // reversible point and at the engine/dissipator edge.
    let tidy = |v: f64| if v == 0.0 { 0.0 } else { v };
    for factor in [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0] {
        let x_c = factor * x_h;
        let op = operating_point(&FluxModel::ThreeLevelMaser, &machine, x_c)?;
        println!(
            "{:>10.4} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e}  {}",
            op.x_c,
            tidy(op.flux),
            tidy(op.q_c),
            tidy(op.q_h),
            tidy(op.power),
            op.mode
        );
        // The first law holds exactly: the three currents cancel bit for bit.
        assert_eq!(op.q_c + op.q_h + op.power, 0.0);
        // The second law holds too: entropy production is never negative.
        assert!(op.entropy_rate >= 0.0);
    }

    // The full field set of a single point, rendered at 12 significant
    // digits (the same formatting the CSV output uses).
    println!("\nreversible point (x_c = x_h): every current vanishes");
    let carnot = operating_point(&FluxModel::ThreeLevelMaser, &machine, x_h)?;
    print!("{}", render_operating_point(&carnot));
    Ok(())
}
