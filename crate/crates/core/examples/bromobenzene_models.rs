//! Sensitivity to the liquid's dielectric model: the same 20 Å gold-coated
//! silica / silica pair across two bromobenzene parameterisations.
//!
//! ```bash
//! cargo run --release --example bromobenzene_models
//! ```

use lifshitz::prelude::*;

fn main() {
    let lib = MaterialLibrary::builtin();
    let silica = lib.require("silica").unwrap().clone();
    let gold = lib.require("gold").unwrap().clone();
    let grid: Vec<f64> = (0..13)
        .map(|i| 2e-10 * 10f64.powf(i as f64 / 6.0))
        .collect();

    for liquid in ["bromobenzene-M", "bromobenzene-Z"] {
        let stack =
            LayerStack::symmetric(silica.clone(), lib.require(liquid).unwrap().clone(), 1e-9)
                .unwrap()
                .coat_left(Layer::new(gold.clone(), 20e-10).unwrap());
        println!("{liquid}");
        println!("{:>10} {:>16} {:>16}", "d [Å]", "retarded", "non-retarded");
        let ret = separation_sweep(&stack, &grid, &SolverConfig::default()).unwrap();
        let nonret =
            separation_sweep(&stack, &grid, &SolverConfig::default().non_retarded()).unwrap();
        for (a, b) in ret.points.iter().zip(&nonret.points) {
            println!(
                "{:>10.2} {:>16.4e} {:>16.4e}",
                a.separation * 1e10,
                a.free_energy,
                b.free_energy
            );
        }
        println!();
    }
}
