//! Physical constants (SI, CODATA 2018 exact/recommended values).

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Boltzmann constant, J/K.
pub const K_B: f64 = 1.380_649e-23;

/// Speed of light in vacuum, m/s.
pub const C: f64 = 2.997_924_58e8;

/// Angular frequency (rad/s) corresponding to a photon energy of 1 eV.
pub const EV_TO_RAD_PER_S: f64 = 1.519_267e15;

/// Apéry's constant ζ(3).
pub const ZETA_3: f64 = 1.202_056_903_159_594_2;

/// One ångström in meters.
pub const ANGSTROM: f64 = 1e-10;

/// One nanometer in meters.
pub const NANOMETER: f64 = 1e-9;

/// Spacing of the Matsubara frequencies, ξ_n = n · 2π k_B T / ħ.
#[inline]
pub fn matsubara_spacing(temperature: f64) -> f64 {
    2.0 * std::f64::consts::PI * K_B * temperature / HBAR
}
