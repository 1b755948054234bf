//! Run a bundled figure preset, write its CSV, and grade the numerics
//! against the closed forms — the library side of `endorev sweep`.
//!
//! Run with `cargo run --example figure_sweeps`.

use endoreversible::{compare_numeric_analytic, preset, preset_names, run_plan, write_csv};

fn main() -> endoreversible::Result<()> {
    println!("bundled presets: {}\n", preset_names().join(", "));

    // fig9: normalized optimal performance versus the Carnot figure at weak
    // cold coupling (gamma_c/gamma_h = 0.01), where the closed forms are
    // near-exact.
    let plan = preset("fig9")?;
    let report = run_plan(&plan)?;
    let rows: usize = report.curves.iter().map(|c| c.rows.len()).sum();

    let out = std::env::temp_dir().join("fig9.csv");
    let mut file = std::fs::File::create(&out)
        .map_err(|e| endoreversible::Error::Io(format!("cannot write {}: {e}", out.display())))?;
    write_csv(&mut file, &report, &[format!("preset = {}", plan.name)])?;
    println!("wrote {rows} rows ({} curves) to {}\n", report.curves.len(), out.display());

    // Every curve tracks its closed form at the percent level or better.
    let comparison = compare_numeric_analytic(&report, 1e-2);
    print!("{comparison}");
    assert!(comparison.all_passed());

    // The same machines at equal couplings deviate visibly — that gap is the
    // finite-coupling correction, not numerical error.
    let comparison = compare_numeric_analytic(&run_plan(&preset("fig8")?)?, 1e-2);
    println!("\nsame sweep at gamma_c/gamma_h = 1:");
    print!("{comparison}");
    Ok(())
}
