//! Casimir-Lifshitz free energy and pressure between planar layered surfaces.
//!
//! The crate is organised bottom-up:
//!
//! - [`dielectric`]: permittivity models ε(iξ) on the imaginary frequency axis
//!   and the `.matlib` material library format.
//! - [`stack`]: planar geometry, Fresnel and film-recursion reflection
//!   coefficients, and the mode-condition function.
//! - [`energy`]: Matsubara sums (T > 0) and frequency integrals (T = 0) of the
//!   mode-condition logarithm, giving free energy and pressure per unit area.
//! - [`analysis`]: separation sweeps, the levitation distance (zero of the
//!   free energy) with its repulsion maximum, and film-thickness scans.
//! - [`cli`]: run-configuration files, CSV output and the `casimir` command.
//!
//! Sign convention throughout: negative energy and pressure mean attraction.
//!
//! ```no_run
//! use lifshitz::prelude::*;
//!
//! let lib = MaterialLibrary::builtin();
//! let silica = lib.require("silica").unwrap().clone();
//! let gold = lib.require("gold").unwrap().clone();
//! let toluene = lib.require("toluene").unwrap().clone();
//!
//! let stack = LayerStack::symmetric(silica, toluene, 2e-9)
//!     .unwrap()
//!     .coat_left(Layer::new(gold, 2e-9).unwrap());
//! let e = free_energy(&stack, &SolverConfig::default()).unwrap();
//! println!("E = {:e} J/m²", e.value);
//! ```

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod constants;
pub mod dielectric;
pub mod energy;
pub mod quadrature;
pub mod stack;

pub mod prelude {
    pub use crate::analysis::{
        levitation_distance, separation_sweep, thickness_scan, EnergyCurve, FilmRef,
        LevitationResult,
    };
    pub use crate::dielectric::{
        eval_epsilon, load_material_library, static_limit, DielectricModel, DrudeModel, Material,
        MaterialLibrary, Oscillator, OscillatorModel, StaticPermittivity, TabulatedModel,
    };
    pub use crate::energy::{
        classical_term, energy_t0, free_energy, free_energy_and_pressure, pressure, EnergyPoint,
        Estimate, SolverConfig,
    };
    pub use crate::stack::{
        composite_reflection, fresnel, gamma, mode_condition, Layer, LayerStack, Polarization, Side,
    };
}
