//! The closed-form performance benchmarks in one table: expansion
//! coefficients and normalized performances for the linear and power-law
//! regimes, plus the square-root efficiency benchmark.
//!
//! Run with `cargo run --example efficiency_benchmarks`.

use endoreversible::{
    curzon_ahlborn, linear_predictions, powerlaw_engine, powerlaw_refrigerator, Mode,
};

fn main() -> endoreversible::Result<()> {
    println!("refrigerators: optimal force ratio c1 and COP/eps_C by exponent");
    println!(
        "{:>8} {:>10} {:>10} {:>10} {:>12}",
        "eps_C", "d=1", "d=2", "d=3", "c1 (d=3)"
    );
    for eps in [0.1, 1.0, 5.0, 19.0] {
        let by_d: Vec<_> = [1.0, 2.0, 3.0]
            .iter()
            .map(|&d| powerlaw_refrigerator(d, eps).unwrap())
            .collect();
        println!(
            "{:>8} {:>10.6} {:>10.6} {:>10.6} {:>12.6}",
            eps,
            by_d[0].normalized_performance,
            by_d[1].normalized_performance,
            by_d[2].normalized_performance,
            by_d[2].c1,
        );
        // d = 1 reduces to the linear regime bit for bit.
        assert_eq!(
            by_d[0].normalized_performance,
            linear_predictions(Mode::Refrigerator, eps)?.normalized_performance
        );
    }
    println!("  (d/(d+1) at eps_C -> 0; higher exponents cool closer to Carnot)");

    println!("\nengines: eta/eta_C at maximum power by exponent");
    println!(
        "{:>8} {:>10} {:>10} {:>10} {:>14}",
        "eta_C", "d=1", "d=2", "d=3", "sqrt benchmark"
    );
    for eta in [0.05, 0.25, 0.5, 0.75, 0.95] {
        let by_d: Vec<_> = [1.0, 2.0, 3.0]
            .iter()
            .map(|&d| powerlaw_engine(d, eta).unwrap())
            .collect();
        println!(
            "{:>8} {:>10.6} {:>10.6} {:>10.6} {:>14.6}",
            eta,
            by_d[0].normalized_performance,
            by_d[1].normalized_performance,
            by_d[2].normalized_performance,
            curzon_ahlborn(eta)? / eta,
        );
    }
    println!("  (all exponents meet 1/2 as eta_C -> 0, like the benchmark)");
    Ok(())
}
