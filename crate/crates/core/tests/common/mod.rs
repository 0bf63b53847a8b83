//! Reference values computed without the library's reflection, quadrature
//! or summation code.

#![allow(dead_code)]

use std::f64::consts::PI;

pub const HBAR: f64 = 1.054571817e-34;
pub const K_B: f64 = 1.380649e-23;
pub const C: f64 = 2.99792458e8;
pub const ZETA_3: f64 = 1.2020569031595942;

/// ε(iξ) = 1 + Σ C_j / (1 + (ξ/ω_j)²), with (C_j, ω_j [rad/s]).
pub fn lorentz(terms: &[(f64, f64)], xi: f64) -> f64 {
    1.0 + terms
        .iter()
        .map(|&(c, w)| c / (1.0 + (xi / w).powi(2)))
        .sum::<f64>()
}

/// Li₃(x) = Σ_{s≥1} x^s / s³ for |x| ≤ 1, summed until terms vanish.
pub fn polylog3(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut power = 1.0;
    for s in 1..100_000 {
        power *= x;
        let term = power / (s as f64).powi(3);
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

/// Non-retarded Hamaker constant of half-space 1 | gap 3 | half-space 2:
/// A = (3/2) k_B T Σ′_n Li₃(Δ₁₃ Δ₂₃), with Δ = (ε_i − ε₃)/(ε_i + ε₃).
/// Each ε is given as a function of ξ (ξ = 0 gives the static value, which
/// may be infinite for a metal).
pub fn hamaker(
    eps1: impl Fn(f64) -> f64,
    eps3: impl Fn(f64) -> f64,
    eps2: impl Fn(f64) -> f64,
    temperature: f64,
) -> f64 {
    let spacing = 2.0 * PI * K_B * temperature / HBAR;
    let delta = |a: f64, b: f64| {
        if a.is_infinite() {
            1.0
        } else {
            (a - b) / (a + b)
        }
    };
    let term = |xi: f64| {
        let (e1, e3, e2) = (eps1(xi), eps3(xi), eps2(xi));
        polylog3(delta(e1, e3) * delta(e2, e3))
    };
    let mut sum = 0.5 * term(0.0);
    let mut n = 1usize;
    loop {
        let t = term(n as f64 * spacing);
        sum += t;
        if n > 100 && t.abs() < 1e-16 * sum.abs() {
            break;
        }
        n += 1;
    }
    1.5 * K_B * temperature * sum
}

/// Ideal mirrors at T = 0.
pub fn casimir_energy(d: f64) -> f64 {
    -PI.powi(2) * HBAR * C / (720.0 * d.powi(3))
}

pub fn casimir_pressure(d: f64) -> f64 {
    -PI.powi(2) * HBAR * C / (240.0 * d.powi(4))
}

/// n = 0 Matsubara term between ideal mirrors.
pub fn classical_energy(temperature: f64, d: f64) -> f64 {
    -ZETA_3 * K_B * temperature / (16.0 * PI * d * d)
}
