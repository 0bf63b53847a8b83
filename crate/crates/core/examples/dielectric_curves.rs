//! ε(iξ) of every bundled material on a log grid, and where each liquid's
//! curve crosses silica's.
//!
//! ```bash
//! cargo run --release --example dielectric_curves
//! ```

use lifshitz::constants::EV_TO_RAD_PER_S;
use lifshitz::prelude::*;

fn main() {
    let lib = MaterialLibrary::builtin();
    let grid: Vec<f64> = (0..=40)
        .map(|i| 10f64.powf(-2.0 + i as f64 * 0.1))
        .collect();

    print!("{:>10}", "xi [eV]");
    for m in lib.iter() {
        print!("{:>16}", m.name);
    }
    println!();
    for &ev in grid.iter().step_by(4) {
        print!("{ev:>10.3e}");
        for m in lib.iter() {
            print!("{:>16.4}", m.model.eval(ev * EV_TO_RAD_PER_S).unwrap());
        }
        println!();
    }

    println!("\nstatic values:");
    for m in lib.iter() {
        match m.static_value() {
            StaticPermittivity::Finite(v) => println!("  {:<16} {v:.3}", m.name),
            StaticPermittivity::Metallic { .. } => println!("  {:<16} metallic", m.name),
        }
    }

    let silica = &lib.require("silica").unwrap().model;
    for liquid in ["toluene", "bromobenzene-M", "bromobenzene-Z"] {
        let model = &lib.require(liquid).unwrap().model;
        let diff = |ev: f64| {
            let xi = ev * EV_TO_RAD_PER_S;
            model.eval(xi).unwrap() - silica.eval(xi).unwrap()
        };
        let crossings: Vec<String> = grid
            .windows(2)
            .filter(|w| diff(w[0]).signum() != diff(w[1]).signum())
            .map(|w| format!("{:.3}-{:.3} eV", w[0], w[1]))
            .collect();
        println!("{liquid} crosses silica at: {crossings:?}");
    }
}
