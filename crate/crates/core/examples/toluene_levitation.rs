//! Gold-coated silica facing bare silica across toluene: the interaction is
//! attractive at contact and turns repulsive above the levitation distance.
//! Compares a thick and a 20 Å gold coating, with and without retardation.
//!
//! ```bash
//! cargo run --release --example toluene_levitation
//! ```

use lifshitz::analysis::DEFAULT_BRACKET;
use lifshitz::prelude::*;

fn main() {
    let lib = MaterialLibrary::builtin();
    let silica = lib.require("silica").unwrap().clone();
    let toluene = lib.require("toluene").unwrap().clone();
    let gold = lib.require("gold").unwrap().clone();

    for (label, b) in [("thick gold", 1e-6), ("20 Å gold", 20e-10)] {
        let stack = LayerStack::symmetric(silica.clone(), toluene.clone(), 1e-9)
            .unwrap()
            .coat_left(Layer::new(gold.clone(), b).unwrap());
        for cfg in [
            SolverConfig::default(),
            SolverConfig::default().non_retarded(),
        ] {
            let mode = if cfg.retarded {
                "retarded"
            } else {
                "non-retarded"
            };
            match levitation_distance(&stack, DEFAULT_BRACKET, &cfg) {
                Ok(r) => {
                    let peak = r.repulsion_max.unwrap();
                    println!(
                        "{label:<11} {mode:<13} levitation at {:6.2} Å, repulsion peaks at {:6.2} Å ({:.3e} J/m²)",
                        r.levitation_distance * 1e10,
                        peak.separation * 1e10,
                        peak.free_energy
                    );
                }
                Err(e) => println!("{label:<11} {mode:<13} {e}"),
            }
        }
    }
}
