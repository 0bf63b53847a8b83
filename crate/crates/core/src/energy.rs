//! Interaction free energy and pressure per unit area.
//!
//! For each imaginary frequency ξ the in-plane integral
//!
//! ```text
//! g(ξ) = ∫₀^∞ dk k Σ_pol ln f_k(iξ)
//! ```
//!
//! is taken over y = 2 q_gap d, with k dk = y dy / 4d², so the integrand
//! decays like e^{-y} on a scale independent of the separation. At finite
//! temperature the energy is the Matsubara sum (k_B T / 2π) Σ′ g(ξ_n) with
//! the n = 0 term halved; at T = 0 it is (ħ / 4π²) ∫ dξ g(ξ).
//!
//! The pressure P = −∂E/∂d uses the analytic derivative
//! ∂ ln f / ∂d = 2 q_gap e^{−2 q_gap d} r r′ / f, so P < 0 means attraction
//! just as E < 0 does.

use rayon::prelude::*;
use thiserror::Error;

use crate::constants::{matsubara_spacing, C, HBAR, K_B};
use crate::quadrature::{integrate_doubling, PanelRule};
use crate::stack::{decay, FrequencyResponse, LayerStack, StackError, DECAY_FLUSH};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnergyError {
    #[error("temperature is zero; use energy_t0 for the zero-temperature energy")]
    ZeroTemperature,

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("non-finite Matsubara term at n = {0}")]
    NonFinite(usize),

    #[error(transparent)]
    Stack(#[from] StackError),
}

/// Numerical and physical settings shared by all energy evaluations.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Kelvin.
    pub temperature: f64,
    /// When false every γ is set to 1 (the c → ∞ limit).
    pub retarded: bool,
    /// Relative tolerance of each in-plane quadrature.
    pub rel_tol: f64,
    /// Gauss-Legendre nodes per panel.
    pub k_quadrature_order: usize,
    /// Stop the Matsubara sum once the extrapolated tail falls below this
    /// fraction of the summed term magnitudes.
    pub matsubara_rel_cutoff: f64,
    pub matsubara_max_n: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            temperature: 300.0,
            retarded: true,
            rel_tol: 1e-8,
            k_quadrature_order: 64,
            matsubara_rel_cutoff: 1e-10,
            matsubara_max_n: 10_000_000,
        }
    }
}

impl SolverConfig {
    pub fn at_temperature(temperature: f64) -> Self {
        Self {
            temperature,
            ..Self::default()
        }
    }

    pub fn non_retarded(mut self) -> Self {
        self.retarded = false;
        self
    }

    pub fn validate(&self) -> Result<(), EnergyError> {
        let bad = |m: String| Err(EnergyError::InvalidConfig(m));
        if !(self.temperature >= 0.0 && self.temperature.is_finite()) {
            return bad(format!(
                "temperature must be >= 0 K, got {}",
                self.temperature
            ));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return bad(format!("rel_tol must lie in (0, 1), got {}", self.rel_tol));
        }
        if !(self.matsubara_rel_cutoff > 0.0 && self.matsubara_rel_cutoff < 1.0) {
            return bad(format!(
                "matsubara_rel_cutoff must lie in (0, 1), got {}",
                self.matsubara_rel_cutoff
            ));
        }
        if self.k_quadrature_order < 2 {
            return bad(format!(
                "k_quadrature_order must be >= 2, got {}",
                self.k_quadrature_order
            ));
        }
        if self.matsubara_max_n < 2 {
            return bad(format!(
                "matsubara_max_n must be >= 2, got {}",
                self.matsubara_max_n
            ));
        }
        Ok(())
    }

    /// Length of the y-interval beyond its lower end; e^{-span} sits two
    /// decades below `rel_tol`, plus a margin for the polynomial prefactor.
    fn y_span(&self) -> f64 {
        -(self.rel_tol * 1e-2).ln() + 5.0
    }
}

/// A converged (or flagged) scalar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub converged: bool,
}

/// Free energy and pressure at one separation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyPoint {
    pub separation: f64,
    /// J/m²; negative is attraction.
    pub free_energy: f64,
    /// N/m²; negative is attraction.
    pub pressure: f64,
    pub converged: bool,
    /// Number of Matsubara terms summed (0 for T = 0 integrals).
    pub terms: usize,
    /// Estimated magnitude of the omitted Matsubara tail (J/m²).
    pub tail_estimate: f64,
}

impl EnergyPoint {
    pub fn energy(&self) -> Estimate {
        Estimate {
            value: self.free_energy,
            converged: self.converged,
        }
    }

    pub fn force(&self) -> Estimate {
        Estimate {
            value: self.pressure,
            converged: self.converged,
        }
    }
}

/// In-plane integrals at one frequency: [g, h] with g as in the module docs
/// and h = ∫ dk k Σ 2 q e^{-2qd} r r′ / f.
#[derive(Debug, Clone, Copy)]
struct FrequencyIntegral {
    value: [f64; 2],
    converged: bool,
}

const MAX_PANELS: usize = 1 << 10;

struct Integrator {
    rule: PanelRule,
    span: f64,
    rel_tol: f64,
    retarded: bool,
}

impl Integrator {
    fn new(config: &SolverConfig) -> Self {
        Self {
            rule: PanelRule::new(config.k_quadrature_order),
            span: config.y_span(),
            rel_tol: config.rel_tol,
            retarded: config.retarded,
        }
    }

    fn at(&self, stack: &LayerStack, xi: f64) -> Result<FrequencyIntegral, StackError> {
        let response = FrequencyResponse::new(stack, xi, self.retarded)?;
        Ok(self.integrate(&response, stack.separation()))
    }

    fn integrate(&self, response: &FrequencyResponse, d: f64) -> FrequencyIntegral {
        let y0 = 2.0 * d * response.min_gap_wavevector();
        if y0 >= DECAY_FLUSH {
            return FrequencyIntegral {
                value: [0.0, 0.0],
                converged: true,
            };
        }
        // Stop where e^{-y} is flushed to zero; integrating across that jump
        // would never converge.
        let span = self.span.min(DECAY_FLUSH - y0);
        let inv_2d = 0.5 / d;
        // y = y0 + span·s³ clusters nodes at the lower end, where the
        // integrand of perfectly reflecting plates has a y ln y singularity.
        let q = integrate_doubling(&self.rule, 0.0, 1.0, self.rel_tol, MAX_PANELS, |s| {
            let s2 = s * s;
            let y = y0 + span * s2 * s;
            let jac = 3.0 * span * s2;
            let rr = response.round_trip(y * inv_2d);
            let ey = decay(y);
            let mut ln_f = 0.0;
            let mut dln_f = 0.0;
            for r in rr {
                let x = ey * r;
                ln_f += (-x).ln_1p();
                dln_f += x / (1.0 - x);
            }
            [jac * y * ln_f, jac * y * y * dln_f]
        });
        let norm = 0.25 / (d * d);
        FrequencyIntegral {
            value: [q.value[0] * norm, q.value[1] * norm / d],
            converged: q.converged,
        }
    }
}

/// Highest frequency below which the Matsubara sum may not be declared
/// converged: beyond both the material features and the retardation cutoff.
fn frequency_floor(stack: &LayerStack, config: &SolverConfig) -> f64 {
    let features = 10.0
        * stack
            .materials()
            .map(|m| m.model.max_frequency())
            .fold(0.0, f64::max);
    if config.retarded {
        features.min(2.0 * C / stack.separation())
    } else {
        features
    }
}

/// Tail of a sequence extrapolated geometrically from its last three terms;
/// infinite when the magnitudes are not decreasing.
fn geometric_tail(last: [f64; 3]) -> f64 {
    let [a, b, c] = last.map(f64::abs);
    if c == 0.0 && b == 0.0 {
        return 0.0;
    }
    if !(b < a && c < b) {
        return f64::INFINITY;
    }
    let rho = (b / a).max(c / b);
    c * rho / (1.0 - rho)
}

/// Free energy and pressure at the stack's separation, by Matsubara summation.
pub fn free_energy_and_pressure(
    stack: &LayerStack,
    config: &SolverConfig,
) -> Result<EnergyPoint, EnergyError> {
    config.validate()?;
    if config.temperature == 0.0 {
        return Err(EnergyError::ZeroTemperature);
    }
    let integrator = Integrator::new(config);
    let spacing = matsubara_spacing(config.temperature);
    let prefactor = K_B * config.temperature / (2.0 * std::f64::consts::PI);
    let floor = frequency_floor(stack, config);

    let zero = integrator.at(stack, 0.0)?;
    let mut energy = 0.5 * prefactor * zero.value[0];
    let mut pressure = -0.5 * prefactor * zero.value[1];
    let mut converged = zero.converged;
    let mut magnitude = [energy.abs(), pressure.abs()];
    let mut recent_e = [f64::INFINITY; 3];
    let mut recent_p = [f64::INFINITY; 3];

    let mut n = 1usize;
    let mut chunk = 16usize;
    loop {
        let end = (n + chunk).min(config.matsubara_max_n + 1);
        let terms: Vec<FrequencyIntegral> = (n..end)
            .into_par_iter()
            .map(|m| integrator.at(stack, m as f64 * spacing))
            .collect::<Result<_, _>>()?;
        for (offset, term) in terms.iter().enumerate() {
            let m = n + offset;
            let te = prefactor * term.value[0];
            let tp = -prefactor * term.value[1];
            if !(te.is_finite() && tp.is_finite()) {
                return Err(EnergyError::NonFinite(m));
            }
            energy += te;
            pressure += tp;
            converged &= term.converged;
            magnitude[0] += te.abs();
            magnitude[1] += tp.abs();
            recent_e = [recent_e[1], recent_e[2], te];
            recent_p = [recent_p[1], recent_p[2], tp];
            if m < 3 || (m as f64) * spacing < floor {
                continue;
            }
            let tail_e = geometric_tail(recent_e);
            let tail_p = geometric_tail(recent_p);
            if tail_e <= config.matsubara_rel_cutoff * magnitude[0]
                && tail_p <= config.matsubara_rel_cutoff * magnitude[1]
            {
                return Ok(EnergyPoint {
                    separation: stack.separation(),
                    free_energy: energy,
                    pressure,
                    converged,
                    terms: m + 1,
                    tail_estimate: tail_e,
                });
            }
        }
        n = end;
        if n > config.matsubara_max_n {
            log::warn!(
                "Matsubara sum not converged after {} terms for {}",
                config.matsubara_max_n,
                stack.describe()
            );
            let tail = geometric_tail(recent_e);
            return Ok(EnergyPoint {
                separation: stack.separation(),
                free_energy: energy,
                pressure,
                converged: false,
                terms: n,
                tail_estimate: if tail.is_finite() {
                    tail
                } else {
                    recent_e[2].abs() * n as f64
                },
            });
        }
        chunk = (n / 8).clamp(16, 4096);
    }
}

/// Interaction free energy per unit area (J/m²) at temperature T > 0.
pub fn free_energy(stack: &LayerStack, config: &SolverConfig) -> Result<Estimate, EnergyError> {
    free_energy_and_pressure(stack, config).map(|p| p.energy())
}

/// Pressure P = −∂E/∂d (N/m²), negative for attraction.
pub fn pressure(stack: &LayerStack, config: &SolverConfig) -> Result<Estimate, EnergyError> {
    if config.temperature == 0.0 {
        return energy_and_pressure_t0(stack, config).map(|p| p.force());
    }
    free_energy_and_pressure(stack, config).map(|p| p.force())
}

/// The halved n = 0 Matsubara term alone (J/m²): TM with static
/// permittivities, TE identically zero.
pub fn classical_term(stack: &LayerStack, config: &SolverConfig) -> Result<Estimate, EnergyError> {
    config.validate()?;
    if config.temperature == 0.0 {
        return Err(EnergyError::ZeroTemperature);
    }
    let integrator = Integrator::new(config);
    let zero = integrator.at(stack, 0.0)?;
    Ok(Estimate {
        value: 0.5 * K_B * config.temperature / (2.0 * std::f64::consts::PI) * zero.value[0],
        converged: zero.converged,
    })
}

/// Zero-temperature interaction energy (J/m²), integrating over imaginary
/// frequency instead of summing. `config.temperature` is ignored.
pub fn energy_t0(stack: &LayerStack, config: &SolverConfig) -> Result<Estimate, EnergyError> {
    energy_and_pressure_t0(stack, config).map(|p| p.energy())
}

/// Energy and pressure at T = 0.
pub fn energy_and_pressure_t0(
    stack: &LayerStack,
    config: &SolverConfig,
) -> Result<EnergyPoint, EnergyError> {
    config.validate()?;
    let integrator = Integrator::new(config);
    let outer = PanelRule::new(24);
    let floor = frequency_floor(stack, config);
    // Below XI_MIN the integrand is flat; that sliver is added as a rectangle.
    const XI_MIN: f64 = 1e6;
    const XI_MAX: f64 = 1e24;

    let mut failure = None;
    let inner_ok = std::cell::Cell::new(true);
    let mut eval = |xi: f64| -> [f64; 2] {
        match integrator.at(stack, xi) {
            Ok(v) => {
                inner_ok.set(inner_ok.get() && v.converged);
                v.value
            }
            Err(e) => {
                failure.get_or_insert(e);
                [0.0, 0.0]
            }
        }
    };

    let first = eval(XI_MIN);
    let mut total = [first[0] * XI_MIN, first[1] * XI_MIN];
    let mut magnitude = total.map(f64::abs);
    let mut lo = XI_MIN;
    let mut previous = [f64::INFINITY; 2];
    let mut converged = true;
    while lo < XI_MAX {
        let hi = lo * 10.0;
        let q = integrate_doubling(&outer, lo.ln(), hi.ln(), config.rel_tol, 256, |u| {
            let xi = u.exp();
            let v = eval(xi);
            [v[0] * xi, v[1] * xi]
        });
        converged &= q.converged;
        for i in 0..2 {
            total[i] += q.value[i];
            magnitude[i] += q.magnitude[i];
        }
        lo = hi;
        let small = (0..2).all(|i| {
            q.magnitude[i] <= 1e-2 * config.rel_tol * magnitude[i] && q.magnitude[i] <= previous[i]
        });
        previous = q.magnitude;
        if lo > floor && small {
            break;
        }
    }
    if let Some(e) = failure {
        return Err(e.into());
    }
    let prefactor = HBAR / (4.0 * std::f64::consts::PI * std::f64::consts::PI);
    Ok(EnergyPoint {
        separation: stack.separation(),
        free_energy: prefactor * total[0],
        pressure: -prefactor * total[1],
        converged: converged && inner_ok.get(),
        terms: 0,
        tail_estimate: 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dielectric::{Material, Oscillator, OscillatorModel};

    #[test]
    fn geometric_tail_cases() {
        assert_eq!(geometric_tail([0.0, 0.0, 0.0]), 0.0);
        assert_eq!(geometric_tail([1.0, 2.0, 1.0]), f64::INFINITY);
        let t = geometric_tail([1.0, 0.5, 0.25]);
        assert!((t - 0.25).abs() < 1e-15);
    }

    #[test]
    fn config_validation() {
        assert!(SolverConfig::default().validate().is_ok());
        let bad = [
            SolverConfig {
                rel_tol: 0.0,
                ..SolverConfig::default()
            },
            SolverConfig {
                k_quadrature_order: 1,
                ..SolverConfig::default()
            },
            SolverConfig::at_temperature(-1.0),
        ];
        for c in bad {
            assert!(c.validate().is_err());
        }
    }

    #[test]
    fn zero_temperature_redirects() {
        let m = Material::new(
            "m",
            OscillatorModel::new(vec![Oscillator::new(1.0, 1e16)]).unwrap(),
        );
        let s = LayerStack::symmetric(m.clone(), Material::vacuum(), 1e-8).unwrap();
        let cfg = SolverConfig::at_temperature(0.0);
        assert_eq!(free_energy(&s, &cfg), Err(EnergyError::ZeroTemperature));
        assert_eq!(classical_term(&s, &cfg), Err(EnergyError::ZeroTemperature));
        assert!(energy_t0(&s, &cfg).unwrap().value < 0.0);
    }

    #[test]
    fn gap_matched_stack_is_exactly_zero() {
        let m = Material::new(
            "m",
            OscillatorModel::new(vec![Oscillator::new(1.0, 1e16)]).unwrap(),
        );
        let s = LayerStack::symmetric(m.clone(), m.clone(), 1e-8).unwrap();
        let cfg = SolverConfig::default();
        let p = free_energy_and_pressure(&s, &cfg).unwrap();
        assert_eq!(p.free_energy, 0.0);
        assert_eq!(p.pressure, 0.0);
        assert!(p.converged);
        assert_eq!(energy_t0(&s, &cfg).unwrap().value, 0.0);
        assert_eq!(classical_term(&s, &cfg).unwrap().value, 0.0);
    }
}
