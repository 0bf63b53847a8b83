//! Free energy approaching the zero-temperature energy as T falls.
//!
//! ```bash
//! cargo run --release --example zero_temperature
//! ```

use lifshitz::prelude::*;

fn main() {
    let mirror = Material::new("mirror", DrudeModel::new(1e18, 0.0).unwrap());
    let stack = LayerStack::symmetric(mirror, Material::vacuum(), 100e-9).unwrap();
    let e0 = energy_t0(&stack, &SolverConfig::default()).unwrap().value;
    println!("T = 0: E = {e0:.6e} J/m²");
    for t in [300.0, 30.0, 3.0, 1.0] {
        let e = free_energy(&stack, &SolverConfig::at_temperature(t))
            .unwrap()
            .value;
        println!(
            "T = {t:>5} K: E = {e:.6e} J/m², relative gap {:.2e}",
            (e - e0).abs() / e0.abs()
        );
    }
}
