//! A sweep of the subcritical curve, written as CSV with the fixed header.
//!
//! Run with `cargo run --release --example sweep_csv`.

use biflogis::cli::rows_csv;
use biflogis::nonlocal::ProblemParams;
use biflogis::verify::{geometric_grid, sweep};

fn main() -> biflogis::Result<()> {
    let params = ProblemParams::new(2.5, 3.0, 1.0, 0.0)?;
    let report = sweep(&params, &geometric_grid(1.0, 1e4, 9))?;
    print!("{}", rows_csv(&report.rows));
    for f in &report.failures {
        eprintln!("alpha = {}: {}", f.alpha, f.error);
    }
    Ok(())
}
