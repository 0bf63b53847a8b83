//! A separation sweep written as CSV, the same format `casimir energy` emits.
//!
//! ```bash
//! cargo run --release --example energy_sweep_csv > sweep.csv
//! ```

use lifshitz::cli::write_energy_csv;
use lifshitz::prelude::*;

fn main() {
    let lib = MaterialLibrary::builtin();
    let stack = LayerStack::symmetric(
        lib.require("silica").unwrap().clone(),
        lib.require("toluene").unwrap().clone(),
        1e-9,
    )
    .unwrap()
    .coat_left(Layer::new(lib.require("gold").unwrap().clone(), 20e-10).unwrap());
    let grid: Vec<f64> = (0..30)
        .map(|i| 2e-10 * 100f64.powf(i as f64 / 29.0))
        .collect();
    let curve = separation_sweep(&stack, &grid, &SolverConfig::default()).unwrap();
    write_energy_csv(&curve, std::io::stdout()).unwrap();
    for c in curve.sign_changes() {
        eprintln!(
            "sign change between {:.3e} and {:.3e} m",
            grid[c.index],
            grid[c.index + 1]
        );
    }
}
