//! Dielectric response evaluated on the imaginary frequency axis.
//!
//! Every model here returns the real permittivity ε(iξ) for an imaginary
//! angular frequency iξ, ξ ≥ 0 in rad/s. Models are immutable after
//! construction and can be shared freely between threads.
//!
//! | Model | ε(iξ) |
//! |-------|-------|
//! | [`OscillatorModel`] | 1 + Σ C_j ω_j² / (ω_j² + g_j ξ + ξ²) |
//! | [`DrudeModel`] | 1 + ω_p² / (ξ (ξ + ν)) |
//! | [`TabulatedModel`] | piecewise linear in (ln ξ, ln(ε − 1)) |
//! | [`DielectricModel::Composite`] | 1 + Σ (ε_part − 1) |

mod library;

pub use library::{load_material_library, LibraryError, Material, MaterialLibrary};

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use thiserror::Error;

/// Errors raised while building or evaluating a dielectric model.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum DielectricError {
    #[error("imaginary frequency must be non-negative, got {0} rad/s")]
    NegativeFrequency(f64),

    #[error("divergent static limit: metallic model has no finite ε(0); use static_limit")]
    DivergentStaticLimit,

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },
}

fn invalid(field: &'static str, reason: impl Into<String>) -> DielectricError {
    DielectricError::InvalidParameter {
        field,
        reason: reason.into(),
    }
}

/// One Lorentz-type term of an [`OscillatorModel`]. Frequencies in rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oscillator {
    pub strength: f64,
    pub frequency: f64,
    pub damping: f64,
}

impl Oscillator {
    pub fn new(strength: f64, frequency: f64) -> Self {
        Self {
            strength,
            frequency,
            damping: 0.0,
        }
    }

    pub fn with_damping(mut self, damping: f64) -> Self {
        self.damping = damping;
        self
    }

    #[inline]
    fn susceptibility(&self, xi: f64) -> f64 {
        let w2 = self.frequency * self.frequency;
        self.strength * w2 / (w2 + self.damping * xi + xi * xi)
    }
}

/// Sum of damped oscillators, the usual fit form for insulators and liquids.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillatorModel {
    terms: Vec<Oscillator>,
}

impl OscillatorModel {
    pub fn new(terms: Vec<Oscillator>) -> Result<Self, DielectricError> {
        if terms.is_empty() {
            return Err(invalid("terms", "at least one oscillator is required"));
        }
        for t in &terms {
            if !(t.strength.is_finite() && t.strength > 0.0) {
                return Err(invalid(
                    "strength",
                    format!("must be > 0, got {}", t.strength),
                ));
            }
            if !(t.frequency.is_finite() && t.frequency > 0.0) {
                return Err(invalid(
                    "frequency",
                    format!("must be > 0, got {}", t.frequency),
                ));
            }
            if !(t.damping.is_finite() && t.damping >= 0.0) {
                return Err(invalid(
                    "damping",
                    format!("must be >= 0, got {}", t.damping),
                ));
            }
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[Oscillator] {
        &self.terms
    }

    #[inline]
    fn susceptibility(&self, xi: f64) -> f64 {
        self.terms.iter().map(|t| t.susceptibility(xi)).sum()
    }

    pub fn static_value(&self) -> f64 {
        1.0 + self.terms.iter().map(|t| t.strength).sum::<f64>()
    }
}

/// Free-electron response of a metal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrudeModel {
    plasma_frequency: f64,
    relaxation_rate: f64,
}

impl DrudeModel {
    pub fn new(plasma_frequency: f64, relaxation_rate: f64) -> Result<Self, DielectricError> {
        if !(plasma_frequency.is_finite() && plasma_frequency > 0.0) {
            return Err(invalid(
                "plasma_frequency",
                format!("must be > 0, got {plasma_frequency}"),
            ));
        }
        if !(relaxation_rate.is_finite() && relaxation_rate >= 0.0) {
            return Err(invalid(
                "relaxation_rate",
                format!("must be >= 0, got {relaxation_rate}"),
            ));
        }
        Ok(Self {
            plasma_frequency,
            relaxation_rate,
        })
    }

    pub fn plasma_frequency(&self) -> f64 {
        self.plasma_frequency
    }

    pub fn relaxation_rate(&self) -> f64 {
        self.relaxation_rate
    }

    #[inline]
    fn susceptibility(&self, xi: f64) -> f64 {
        self.plasma_frequency * self.plasma_frequency / (xi * (xi + self.relaxation_rate))
    }
}

/// Externally supplied ε(iξ) samples.
///
/// Interpolates linearly in (ln ξ, ln(ε − 1)); segments touching ε = 1 fall
/// back to linear interpolation in ε. Outside the sampled range the end
/// values are held constant and a warning is logged once per model.
#[derive(Debug, Clone)]
pub struct TabulatedModel {
    xi: Vec<f64>,
    epsilon: Vec<f64>,
    ln_xi: Vec<f64>,
    clamp_warned: Arc<AtomicBool>,
}

impl PartialEq for TabulatedModel {
    fn eq(&self, other: &Self) -> bool {
        self.xi == other.xi && self.epsilon == other.epsilon
    }
}

impl TabulatedModel {
    /// `samples` are (ξ in rad/s, ε) pairs, strictly increasing in ξ.
    pub fn new(samples: Vec<(f64, f64)>) -> Result<Self, DielectricError> {
        if samples.is_empty() {
            return Err(invalid("samples", "at least one sample is required"));
        }
        for (i, &(xi, eps)) in samples.iter().enumerate() {
            if !(xi.is_finite() && xi > 0.0) {
                return Err(invalid(
                    "samples",
                    format!("sample {i}: ξ must be > 0, got {xi}"),
                ));
            }
            if !(eps.is_finite() && eps >= 1.0) {
                return Err(invalid(
                    "samples",
                    format!("sample {i}: ε must be >= 1, got {eps}"),
                ));
            }
            if i > 0 && xi <= samples[i - 1].0 {
                return Err(invalid(
                    "samples",
                    format!("sample {i}: ξ values must be strictly increasing"),
                ));
            }
        }
        let (xi, epsilon): (Vec<f64>, Vec<f64>) = samples.into_iter().unzip();
        let ln_xi = xi.iter().map(|x| x.ln()).collect();
        Ok(Self {
            xi,
            epsilon,
            ln_xi,
            clamp_warned: Arc::new(AtomicBool::new(false)),
        })
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xi.iter().copied().zip(self.epsilon.iter().copied())
    }

    fn warn_clamp(&self, xi: f64) {
        if !self.clamp_warned.swap(true, Ordering::Relaxed) {
            log::warn!(
                "ξ = {xi:e} rad/s outside tabulated range [{:e}, {:e}]; holding end value",
                self.xi[0],
                self.xi[self.xi.len() - 1]
            );
        }
    }

    fn evaluate(&self, xi: f64) -> f64 {
        let n = self.xi.len();
        if xi <= self.xi[0] {
            if xi < self.xi[0] {
                self.warn_clamp(xi);
            }
            return self.epsilon[0];
        }
        if xi >= self.xi[n - 1] {
            if xi > self.xi[n - 1] {
                self.warn_clamp(xi);
            }
            return self.epsilon[n - 1];
        }
        // first index with xi[i] > xi; i >= 1 here
        let i = self.xi.partition_point(|&x| x <= xi);
        let (x0, x1) = (self.xi[i - 1], self.xi[i]);
        let (e0, e1) = (self.epsilon[i - 1], self.epsilon[i]);
        if xi == x0 {
            return e0;
        }
        let t = (xi.ln() - self.ln_xi[i - 1]) / (self.ln_xi[i] - self.ln_xi[i - 1]);
        let (s0, s1) = (e0 - 1.0, e1 - 1.0);
        if s0 > 0.0 && s1 > 0.0 {
            1.0 + (s0.ln() + t * (s1.ln() - s0.ln())).exp()
        } else {
            let u = (xi - x0) / (x1 - x0);
            e0 + u * (e1 - e0)
        }
    }
}

/// Static permittivity, distinguishing metals whose ε(iξ) diverges at ξ → 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StaticPermittivity {
    Finite(f64),
    /// ε(iξ) ~ ω_p²/ξ² near zero; the total squared plasma frequency is kept
    /// so that two metals can still be compared in the static limit.
    Metallic {
        plasma_frequency_sq: f64,
    },
}

impl StaticPermittivity {
    pub fn is_metallic(&self) -> bool {
        matches!(self, StaticPermittivity::Metallic { .. })
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            StaticPermittivity::Finite(v) => Some(v),
            StaticPermittivity::Metallic { .. } => None,
        }
    }
}

/// Any permittivity model evaluable on the imaginary axis.
#[derive(Debug, Clone, PartialEq)]
pub enum DielectricModel {
    Oscillator(OscillatorModel),
    Drude(DrudeModel),
    Tabulated(TabulatedModel),
    /// Contributions add in ε − 1.
    Composite(Vec<DielectricModel>),
}

impl From<OscillatorModel> for DielectricModel {
    fn from(m: OscillatorModel) -> Self {
        DielectricModel::Oscillator(m)
    }
}

impl From<DrudeModel> for DielectricModel {
    fn from(m: DrudeModel) -> Self {
        DielectricModel::Drude(m)
    }
}

impl From<TabulatedModel> for DielectricModel {
    fn from(m: TabulatedModel) -> Self {
        DielectricModel::Tabulated(m)
    }
}

impl DielectricModel {
    /// ε = 1, the vacuum.
    pub fn vacuum() -> Self {
        DielectricModel::Composite(Vec::new())
    }

    pub fn is_metallic(&self) -> bool {
        match self {
            DielectricModel::Drude(_) => true,
            DielectricModel::Composite(parts) => parts.iter().any(|p| p.is_metallic()),
            _ => false,
        }
    }

    /// ε(iξ); see [`eval_epsilon`].
    pub fn eval(&self, xi: f64) -> Result<f64, DielectricError> {
        if !(xi >= 0.0) {
            return Err(DielectricError::NegativeFrequency(xi));
        }
        if xi == 0.0 && self.is_metallic() {
            return Err(DielectricError::DivergentStaticLimit);
        }
        if xi == 0.0 {
            // finite by the check above
            return Ok(self.static_limit().finite().unwrap_or(f64::INFINITY));
        }
        Ok(1.0 + self.susceptibility(xi))
    }

    /// ε(iξ) − 1 for ξ > 0, without argument checks.
    #[inline]
    pub(crate) fn susceptibility(&self, xi: f64) -> f64 {
        match self {
            DielectricModel::Oscillator(m) => m.susceptibility(xi),
            DielectricModel::Drude(m) => m.susceptibility(xi),
            DielectricModel::Tabulated(m) => m.evaluate(xi) - 1.0,
            DielectricModel::Composite(parts) => parts.iter().map(|p| p.susceptibility(xi)).sum(),
        }
    }

    pub fn static_limit(&self) -> StaticPermittivity {
        match self {
            DielectricModel::Oscillator(m) => StaticPermittivity::Finite(m.static_value()),
            DielectricModel::Drude(m) => StaticPermittivity::Metallic {
                plasma_frequency_sq: m.plasma_frequency * m.plasma_frequency,
            },
            DielectricModel::Tabulated(m) => StaticPermittivity::Finite(m.epsilon[0]),
            DielectricModel::Composite(parts) => {
                let mut chi = 0.0;
                let mut wp2 = 0.0;
                let mut metallic = false;
                for p in parts {
                    match p.static_limit() {
                        StaticPermittivity::Finite(v) => chi += v - 1.0,
                        StaticPermittivity::Metallic {
                            plasma_frequency_sq,
                        } => {
                            metallic = true;
                            wp2 += plasma_frequency_sq;
                        }
                    }
                }
                if metallic {
                    StaticPermittivity::Metallic {
                        plasma_frequency_sq: wp2,
                    }
                } else {
                    StaticPermittivity::Finite(1.0 + chi)
                }
            }
        }
    }

    /// Largest characteristic frequency of the model (rad/s), used to size
    /// frequency grids. Zero for vacuum.
    pub fn max_frequency(&self) -> f64 {
        match self {
            DielectricModel::Oscillator(m) => {
                m.terms.iter().map(|t| t.frequency).fold(0.0, f64::max)
            }
            DielectricModel::Drude(m) => m.plasma_frequency,
            DielectricModel::Tabulated(m) => m.xi[m.xi.len() - 1],
            DielectricModel::Composite(parts) => {
                parts.iter().map(|p| p.max_frequency()).fold(0.0, f64::max)
            }
        }
    }
}

/// Permittivity ε(iξ) at imaginary angular frequency ξ ≥ 0 (rad/s).
///
/// Metallic models have no finite value at ξ = 0 and return
/// [`DielectricError::DivergentStaticLimit`]; query [`static_limit`] instead.
pub fn eval_epsilon(model: &DielectricModel, xi: f64) -> Result<f64, DielectricError> {
    model.eval(xi)
}

/// ε(0), or [`StaticPermittivity::Metallic`] for models with a Drude part.
pub fn static_limit(model: &DielectricModel) -> StaticPermittivity {
    model.static_limit()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn single(c: f64, w: f64) -> DielectricModel {
        OscillatorModel::new(vec![Oscillator::new(c, w)])
            .unwrap()
            .into()
    }

    #[test]
    fn oscillator_static_value() {
        let m = single(4.0, 1e16);
        assert_eq!(eval_epsilon(&m, 0.0).unwrap(), 5.0);
        assert_eq!(static_limit(&m), StaticPermittivity::Finite(5.0));
    }

    #[test]
    fn oscillator_high_frequency_limit() {
        let m: DielectricModel = OscillatorModel::new(vec![
            Oscillator::new(4.0, 1e16),
            Oscillator::new(0.7, 3e14).with_damping(1e13),
        ])
        .unwrap()
        .into();
        let eps = eval_epsilon(&m, 1e6 * 1e16).unwrap();
        assert_relative_eq!(eps, 1.0, max_relative = 1e-9);
    }

    #[test]
    fn drude_at_plasma_frequency() {
        let m: DielectricModel = DrudeModel::new(1.37e16, 0.0).unwrap().into();
        assert_relative_eq!(
            eval_epsilon(&m, 1.37e16).unwrap(),
            2.0,
            max_relative = 1e-15
        );
        assert_eq!(
            eval_epsilon(&m, 0.0),
            Err(DielectricError::DivergentStaticLimit)
        );
        assert!(static_limit(&m).is_metallic());
    }

    #[test]
    fn composite_static_strengths_add() {
        let m = DielectricModel::Composite(vec![single(1.5, 1e15), single(0.9, 2e16)]);
        assert_relative_eq!(
            static_limit(&m).finite().unwrap(),
            3.4,
            max_relative = 1e-15
        );
    }

    #[test]
    fn negative_frequency_rejected() {
        let m = single(1.0, 1e16);
        assert_eq!(
            eval_epsilon(&m, -1.0),
            Err(DielectricError::NegativeFrequency(-1.0))
        );
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(OscillatorModel::new(vec![Oscillator::new(-1.0, 1e16)]).is_err());
        assert!(OscillatorModel::new(vec![Oscillator::new(1.0, 0.0)]).is_err());
        assert!(OscillatorModel::new(vec![Oscillator::new(1.0, 1.0).with_damping(-1.0)]).is_err());
        assert!(DrudeModel::new(0.0, 1.0).is_err());
        assert!(TabulatedModel::new(vec![(1.0, 2.0), (1.0, 1.5)]).is_err());
        assert!(TabulatedModel::new(vec![(1.0, 0.5)]).is_err());
    }

    #[test]
    fn tabulated_reproduces_samples_and_clamps() {
        let samples = vec![
            (1e13, 3.0),
            (1e14, 2.5),
            (1e15, 2.0),
            (1e16, 1.0),
            (1e17, 1.0),
        ];
        let m: DielectricModel = TabulatedModel::new(samples.clone()).unwrap().into();
        for (xi, eps) in samples {
            assert_eq!(eval_epsilon(&m, xi).unwrap(), eps);
        }
        assert_eq!(eval_epsilon(&m, 1e10).unwrap(), 3.0);
        assert_eq!(eval_epsilon(&m, 1e20).unwrap(), 1.0);
        assert_eq!(eval_epsilon(&m, 0.0).unwrap(), 3.0);
        // log-log midpoint between (1e13, 2.0) and (1e14, 1.5) in ε − 1
        let mid = eval_epsilon(&m, 10f64.powf(13.5)).unwrap();
        assert_relative_eq!(mid, 1.0 + (2.0f64 * 1.5).sqrt(), max_relative = 1e-12);
        // segment ending at ε = 1 is linear in ξ
        let lin = eval_epsilon(&m, 5.5e15).unwrap();
        assert_relative_eq!(lin, 1.5, max_relative = 1e-12);
    }
}
