//! Levitation distance and repulsion maximum versus gold thickness. Thinner
//! coatings levitate closer and repel more strongly.
//!
//! ```bash
//! cargo run --release --example thickness_scan
//! ```

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

    let film = FilmRef::left_innermost(&stack).unwrap();
    let thicknesses = [5e-10, 10e-10, 20e-10, 50e-10, 1e-6];
    let rows = thickness_scan(
        &stack,
        film,
        &thicknesses,
        (1e-10, 200e-10),
        &SolverConfig::default(),
    )
    .unwrap();

    println!(
        "{:>10} {:>12} {:>12} {:>14}",
        "b [Å]", "d* [Å]", "peak [Å]", "E_peak [J/m2]"
    );
    for row in rows {
        match row.outcome {
            Ok(r) => {
                let peak = r.repulsion_max.unwrap();
                println!(
                    "{:>10.1} {:>12.3} {:>12.3} {:>14.4e}",
                    row.thickness * 1e10,
                    r.levitation_distance * 1e10,
                    peak.separation * 1e10,
                    peak.free_energy
                );
            }
            Err(e) => println!("{:>10.1} {e}", row.thickness * 1e10),
        }
    }
}
