//! Two near-perfect Drude mirrors in vacuum compared with the ideal
//! Casimir energy −π²ħc/720d³ and pressure −π²ħc/240d⁴, plus the
//! high-temperature classical limit −ζ(3)k_BT/16πd².
//!
//! ```bash
//! cargo run --release --example ideal_metal_casimir
//! ```

use std::f64::consts::PI;

use lifshitz::constants::{C, HBAR, K_B, ZETA_3};
use lifshitz::prelude::*;

fn main() {
    let mirror = Material::new("mirror", DrudeModel::new(1e18, 0.0).unwrap());
    let cfg = SolverConfig::at_temperature(1.0);

    println!(
        "{:>8} {:>14} {:>14} {:>10} {:>10}",
        "d [um]", "E [J/m2]", "ideal", "E ratio", "P ratio"
    );
    for d in [0.5e-6, 1e-6, 2e-6] {
        let stack = LayerStack::symmetric(mirror.clone(), Material::vacuum(), d).unwrap();
        let p = free_energy_and_pressure(&stack, &cfg).unwrap();
        let e_ideal = -PI.powi(2) * HBAR * C / (720.0 * d.powi(3));
        let p_ideal = -PI.powi(2) * HBAR * C / (240.0 * d.powi(4));
        println!(
            "{:>8.2} {:>14.6e} {:>14.6e} {:>10.5} {:>10.5}",
            d * 1e6,
            p.free_energy,
            e_ideal,
            p.free_energy / e_ideal,
            p.pressure / p_ideal
        );
    }

    let d = 10e-6;
    let hot = SolverConfig::at_temperature(300.0);
    let stack = LayerStack::symmetric(mirror, Material::vacuum(), d).unwrap();
    let classical = -ZETA_3 * K_B * 300.0 / (16.0 * PI * d * d);
    let n0 = classical_term(&stack, &hot).unwrap().value;
    let full = free_energy(&stack, &hot).unwrap().value;
    println!(
        "\nT = 300 K, d = 10 um: n = 0 term / classical = {:.5}, full / classical = {:.5}",
        n0 / classical,
        full / classical
    );
}
