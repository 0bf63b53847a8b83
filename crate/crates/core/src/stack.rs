//! Planar layer geometry and reflection coefficients on the imaginary axis.
//!
//! Everything is evaluated at imaginary frequency iξ, where each medium has a
//! real normal wavevector q_i = γ_i k = √(k² + ε_i(iξ) ξ²/c²). Working with
//! q rather than γ keeps the formulas finite at k = 0, which the energy
//! quadrature needs once the gap wavevector is used as integration variable.

use thiserror::Error;

use crate::constants::C;
use crate::dielectric::{DielectricError, Material, StaticPermittivity};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StackError {
    #[error("film thickness must be > 0, got {0} m")]
    NonPositiveThickness(f64),

    #[error("separation must be > 0, got {0} m")]
    NonPositiveSeparation(f64),

    #[error("in-plane wavevector must be > 0, got {0} 1/m")]
    NonPositiveWavevector(f64),

    #[error("imaginary frequency must be non-negative, got {0} rad/s")]
    NegativeFrequency(f64),

    #[error("permittivity must be >= 1, got {0}")]
    InvalidPermittivity(f64),

    #[error("gap medium `{0}` is metallic; the gap must be a dielectric")]
    MetallicGap(String),

    #[error("no film {index} on the {side:?} side")]
    NoSuchFilm { side: Side, index: usize },

    #[error(transparent)]
    Dielectric(#[from] DielectricError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    TM,
    TE,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::TM, Polarization::TE];
}

/// A finite film.
#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub material: Material,
    thickness: f64,
}

impl Layer {
    pub fn new(material: Material, thickness: f64) -> Result<Self, StackError> {
        if !(thickness.is_finite() && thickness > 0.0) {
            return Err(StackError::NonPositiveThickness(thickness));
        }
        Ok(Self {
            material,
            thickness,
        })
    }

    pub fn thickness(&self) -> f64 {
        self.thickness
    }
}

/// Which surface of a [`LayerStack`] a film belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `left_halfspace | left_films… | gap(d) | right_films… | right_halfspace`.
///
/// Both film lists are stored in spatial left-to-right order, so the film
/// touching the gap is the last of `left_films` and the first of
/// `right_films`.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerStack {
    left_halfspace: Material,
    left_films: Vec<Layer>,
    gap: Material,
    separation: f64,
    right_films: Vec<Layer>,
    right_halfspace: Material,
}

impl LayerStack {
    pub fn new(
        left_halfspace: Material,
        gap: Material,
        separation: f64,
        right_halfspace: Material,
    ) -> Result<Self, StackError> {
        check_separation(separation)?;
        if gap.model.is_metallic() {
            return Err(StackError::MetallicGap(gap.name.clone()));
        }
        Ok(Self {
            left_halfspace,
            left_films: Vec::new(),
            gap,
            separation,
            right_films: Vec::new(),
            right_halfspace,
        })
    }

    /// Two identical bare half-spaces across `gap`.
    pub fn symmetric(outer: Material, gap: Material, separation: f64) -> Result<Self, StackError> {
        Self::new(outer.clone(), gap, separation, outer)
    }

    /// Adds a film on top of the left surface, adjacent to the gap.
    pub fn coat_left(mut self, film: Layer) -> Self {
        self.left_films.push(film);
        self
    }

    /// Adds a film on top of the right surface, adjacent to the gap.
    pub fn coat_right(mut self, film: Layer) -> Self {
        self.right_films.insert(0, film);
        self
    }

    pub fn with_separation(&self, separation: f64) -> Result<Self, StackError> {
        check_separation(separation)?;
        let mut s = self.clone();
        s.separation = separation;
        Ok(s)
    }

    /// Replaces the thickness of film `index` (spatial order) on `side`.
    pub fn with_film_thickness(
        &self,
        side: Side,
        index: usize,
        thickness: f64,
    ) -> Result<Self, StackError> {
        let mut s = self.clone();
        let films = match side {
            Side::Left => &mut s.left_films,
            Side::Right => &mut s.right_films,
        };
        let film = films
            .get_mut(index)
            .ok_or(StackError::NoSuchFilm { side, index })?;
        *film = Layer::new(film.material.clone(), thickness)?;
        Ok(s)
    }

    pub fn separation(&self) -> f64 {
        self.separation
    }

    pub fn gap(&self) -> &Material {
        &self.gap
    }

    pub fn left_halfspace(&self) -> &Material {
        &self.left_halfspace
    }

    pub fn right_halfspace(&self) -> &Material {
        &self.right_halfspace
    }

    pub fn left_films(&self) -> &[Layer] {
        &self.left_films
    }

    pub fn right_films(&self) -> &[Layer] {
        &self.right_films
    }

    /// Mirror image through the gap mid-plane.
    pub fn mirrored(&self) -> Self {
        let mut left_films = self.right_films.clone();
        left_films.reverse();
        let mut right_films = self.left_films.clone();
        right_films.reverse();
        Self {
            left_halfspace: self.right_halfspace.clone(),
            left_films,
            gap: self.gap.clone(),
            separation: self.separation,
            right_films,
            right_halfspace: self.left_halfspace.clone(),
        }
    }

    /// Short human-readable description, e.g. `silica|gold(2.0 nm)|toluene|silica`.
    pub fn describe(&self) -> String {
        let film = |l: &Layer| format!("{}({:.3e} m)", l.material.name, l.thickness);
        let mut parts = vec![self.left_halfspace.name.clone()];
        parts.extend(self.left_films.iter().map(film));
        parts.push(format!("{}[{:.3e} m]", self.gap.name, self.separation));
        parts.extend(self.right_films.iter().map(film));
        parts.push(self.right_halfspace.name.clone());
        parts.join("|")
    }

    /// Media seen from the gap looking outward on one side.
    fn outward(&self, side: Side) -> (Vec<&Layer>, &Material) {
        match side {
            Side::Left => (self.left_films.iter().rev().collect(), &self.left_halfspace),
            Side::Right => (self.right_films.iter().collect(), &self.right_halfspace),
        }
    }

    pub(crate) fn materials(&self) -> impl Iterator<Item = &Material> {
        std::iter::once(&self.left_halfspace)
            .chain(self.left_films.iter().map(|l| &l.material))
            .chain(std::iter::once(&self.gap))
            .chain(self.right_films.iter().map(|l| &l.material))
            .chain(std::iter::once(&self.right_halfspace))
    }
}

fn check_separation(d: f64) -> Result<(), StackError> {
    if !(d.is_finite() && d > 0.0) {
        return Err(StackError::NonPositiveSeparation(d));
    }
    Ok(())
}

/// Exponent beyond which [`decay`] returns exactly zero.
pub(crate) const DECAY_FLUSH: f64 = 700.0;

/// e^{-x}, flushed to exactly zero below e^{-700}.
#[inline]
pub(crate) fn decay(x: f64) -> f64 {
    if x > DECAY_FLUSH {
        0.0
    } else {
        (-x).exp()
    }
}

/// γ = √(1 + ε (ξ/ck)²), the imaginary-axis form of the normal-wavevector
/// factor (positive root).
pub fn gamma(epsilon: f64, xi: f64, k: f64) -> Result<f64, StackError> {
    if !(k > 0.0) {
        return Err(StackError::NonPositiveWavevector(k));
    }
    if !(xi >= 0.0) {
        return Err(StackError::NegativeFrequency(xi));
    }
    if !(epsilon >= 1.0) {
        return Err(StackError::InvalidPermittivity(epsilon));
    }
    let x = xi / (C * k);
    Ok((1.0 + epsilon * x * x).sqrt())
}

/// Amplitude reflection coefficient for a wave in medium i hitting medium j.
///
/// The γ arguments may equally be the normal wavevectors q = γk, since both
/// forms are homogeneous of degree zero in them.
#[inline]
pub fn fresnel(pol: Polarization, eps_i: f64, gamma_i: f64, eps_j: f64, gamma_j: f64) -> f64 {
    match pol {
        Polarization::TM => {
            (eps_j * gamma_i - eps_i * gamma_j) / (eps_j * gamma_i + eps_i * gamma_j)
        }
        Polarization::TE => (gamma_i - gamma_j) / (gamma_i + gamma_j),
    }
}

/// Static TM reflection; metals reflect perfectly against any dielectric.
pub(crate) fn static_fresnel_tm(from: StaticPermittivity, to: StaticPermittivity) -> f64 {
    use StaticPermittivity::*;
    match (from, to) {
        (Finite(a), Finite(b)) => (b - a) / (b + a),
        (Finite(_), Metallic { .. }) => 1.0,
        (Metallic { .. }, Finite(_)) => -1.0,
        (
            Metallic {
                plasma_frequency_sq: a,
            },
            Metallic {
                plasma_frequency_sq: b,
            },
        ) => (b - a) / (b + a),
    }
}

/// Film recursion: reflection of a film of phase factor `e = e^{-2 q_j d_j}`
/// given the reflection `r_near` at its near face and `r_beyond` of
/// everything behind it.
#[inline]
fn fold(r_near: f64, e: f64, r_beyond: f64) -> f64 {
    (r_near + e * r_beyond) / (1.0 + e * r_near * r_beyond)
}

/// Reflection coefficients of one side of a stack at a fixed frequency.
#[derive(Debug, Clone)]
struct SideResponse {
    /// ε(iξ) of each medium from the gap outward (films, then half-space).
    eps: Vec<f64>,
    /// Thickness of each film, same order as the leading entries of `eps`.
    thickness: Vec<f64>,
    /// At ξ = 0: TM reflection of each interface, gap outward.
    static_tm: Option<Vec<f64>>,
}

impl SideResponse {
    fn build(
        gap: &Material,
        films: &[&Layer],
        halfspace: &Material,
        xi: f64,
    ) -> Result<Self, StackError> {
        let thickness = films.iter().map(|l| l.thickness).collect();
        if xi == 0.0 {
            let mut statics = vec![gap.model.static_limit()];
            statics.extend(films.iter().map(|l| l.material.model.static_limit()));
            statics.push(halfspace.model.static_limit());
            let r = statics
                .windows(2)
                .map(|w| static_fresnel_tm(w[0], w[1]))
                .collect();
            return Ok(Self {
                eps: Vec::new(),
                thickness,
                static_tm: Some(r),
            });
        }
        let mut eps = Vec::with_capacity(films.len() + 1);
        for l in films {
            eps.push(l.material.model.eval(xi)?);
        }
        eps.push(halfspace.model.eval(xi)?);
        Ok(Self {
            eps,
            thickness,
            static_tm: None,
        })
    }

    /// [TM, TE] reflection seen from the gap for in-plane wavevector² `k2`.
    #[inline]
    fn reflection(&self, k2: f64, xi2_c2: f64, eps_gap: f64, q_gap: f64) -> [f64; 2] {
        if let Some(r) = &self.static_tm {
            let k = k2.sqrt();
            let n = r.len();
            let mut tm = r[n - 1];
            for j in (0..n - 1).rev() {
                tm = fold(r[j], decay(2.0 * k * self.thickness[j]), tm);
            }
            return [tm, 0.0];
        }
        let n = self.eps.len();
        let mut eps_out = self.eps[n - 1];
        let mut q_out = (k2 + eps_out * xi2_c2).sqrt();
        let mut r = [0.0; 2];
        for j in (0..n).rev() {
            let (eps_in, q_in) = if j == 0 {
                (eps_gap, q_gap)
            } else {
                let e = self.eps[j - 1];
                (e, (k2 + e * xi2_c2).sqrt())
            };
            let tm = fresnel(Polarization::TM, eps_in, q_in, eps_out, q_out);
            let te = fresnel(Polarization::TE, eps_in, q_in, eps_out, q_out);
            if j == n - 1 {
                r = [tm, te];
            } else {
                let e = decay(2.0 * q_out * self.thickness[j]);
                r = [fold(tm, e, r[0]), fold(te, e, r[1])];
            }
            eps_out = eps_in;
            q_out = q_in;
        }
        r
    }
}

/// All frequency-dependent data of a stack at one imaginary frequency.
#[derive(Debug, Clone)]
pub(crate) struct FrequencyResponse {
    /// ξ²/c², or 0 when retardation is switched off.
    xi2_c2: f64,
    eps_gap: f64,
    left: SideResponse,
    right: SideResponse,
}

impl FrequencyResponse {
    pub(crate) fn new(stack: &LayerStack, xi: f64, retarded: bool) -> Result<Self, StackError> {
        if !(xi >= 0.0) {
            return Err(StackError::NegativeFrequency(xi));
        }
        let side = |s: Side| {
            let (films, half) = stack.outward(s);
            SideResponse::build(&stack.gap, &films, half, xi)
        };
        let eps_gap = if xi == 0.0 {
            stack
                .gap
                .model
                .static_limit()
                .finite()
                .unwrap_or(f64::INFINITY)
        } else {
            stack.gap.model.eval(xi)?
        };
        Ok(Self {
            xi2_c2: if retarded { (xi / C).powi(2) } else { 0.0 },
            eps_gap,
            left: side(Side::Left)?,
            right: side(Side::Right)?,
        })
    }

    /// Smallest gap normal wavevector, reached at k = 0.
    pub(crate) fn min_gap_wavevector(&self) -> f64 {
        (self.eps_gap * self.xi2_c2).sqrt()
    }

    /// [TM, TE] products r_left · r_right as a function of the gap normal
    /// wavevector q_gap ≥ [`Self::min_gap_wavevector`].
    #[inline]
    pub(crate) fn round_trip(&self, q_gap: f64) -> [f64; 2] {
        let k2 = (q_gap * q_gap - self.eps_gap * self.xi2_c2).max(0.0);
        // recomputed so that a medium equal to the gap reflects exactly nothing
        let q_gap = (k2 + self.eps_gap * self.xi2_c2).sqrt();
        let l = self.left.reflection(k2, self.xi2_c2, self.eps_gap, q_gap);
        let r = self.right.reflection(k2, self.xi2_c2, self.eps_gap, q_gap);
        [l[0] * r[0], l[1] * r[1]]
    }

    fn side_reflection(&self, side: Side, k: f64) -> [f64; 2] {
        let k2 = k * k;
        let q_gap = (k2 + self.eps_gap * self.xi2_c2).sqrt();
        match side {
            Side::Left => self.left.reflection(k2, self.xi2_c2, self.eps_gap, q_gap),
            Side::Right => self.right.reflection(k2, self.xi2_c2, self.eps_gap, q_gap),
        }
    }

    fn gap_wavevector(&self, k: f64) -> f64 {
        (k * k + self.eps_gap * self.xi2_c2).sqrt()
    }
}

fn pol_index(pol: Polarization) -> usize {
    match pol {
        Polarization::TM => 0,
        Polarization::TE => 1,
    }
}

/// Reflection of a coated substrate seen from the `outer` medium:
/// `outer | film | inner`.
///
/// At ξ = 0 the TM value uses static permittivities and TE vanishes.
pub fn composite_reflection(
    pol: Polarization,
    outer: &Material,
    film: &Layer,
    inner: &Material,
    xi: f64,
    k: f64,
) -> Result<f64, StackError> {
    composite_reflection_with(pol, outer, film, inner, xi, k, true)
}

/// [`composite_reflection`] with explicit retardation switch.
pub fn composite_reflection_with(
    pol: Polarization,
    outer: &Material,
    film: &Layer,
    inner: &Material,
    xi: f64,
    k: f64,
    retarded: bool,
) -> Result<f64, StackError> {
    if !(k > 0.0) {
        return Err(StackError::NonPositiveWavevector(k));
    }
    // A dummy right side; only the left reflection is used.
    let stack =
        LayerStack::new(inner.clone(), outer.clone(), 1.0, outer.clone())?.coat_left(film.clone());
    let resp = FrequencyResponse::new(&stack, xi, retarded)?;
    Ok(resp.side_reflection(Side::Left, k)[pol_index(pol)])
}

/// Effective reflection of one whole side of `stack` seen from the gap.
pub fn side_reflection(
    pol: Polarization,
    stack: &LayerStack,
    side: Side,
    xi: f64,
    k: f64,
    retarded: bool,
) -> Result<f64, StackError> {
    if !(k > 0.0) {
        return Err(StackError::NonPositiveWavevector(k));
    }
    let resp = FrequencyResponse::new(stack, xi, retarded)?;
    Ok(resp.side_reflection(side, k)[pol_index(pol)])
}

/// Mode-condition function f_k(iξ) = 1 − e^{−2 γ_gap k d} r_left r_right.
pub fn mode_condition(
    pol: Polarization,
    stack: &LayerStack,
    xi: f64,
    k: f64,
) -> Result<f64, StackError> {
    mode_condition_with(pol, stack, xi, k, true)
}

/// [`mode_condition`] with explicit retardation switch (γ ≡ 1 when off).
pub fn mode_condition_with(
    pol: Polarization,
    stack: &LayerStack,
    xi: f64,
    k: f64,
    retarded: bool,
) -> Result<f64, StackError> {
    if !(k > 0.0) {
        return Err(StackError::NonPositiveWavevector(k));
    }
    let resp = FrequencyResponse::new(stack, xi, retarded)?;
    let q = resp.gap_wavevector(k);
    let rr = resp.round_trip(q)[pol_index(pol)];
    Ok(1.0 - decay(2.0 * q * stack.separation) * rr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dielectric::{DrudeModel, Oscillator, OscillatorModel};
    use approx::assert_relative_eq;

    fn osc(name: &str, c: f64, w: f64) -> Material {
        Material::new(
            name,
            OscillatorModel::new(vec![Oscillator::new(c, w)]).unwrap(),
        )
    }

    fn gold() -> Material {
        Material::new("gold", DrudeModel::new(1.37e16, 5.3e13).unwrap())
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(3.0, 0.0, 1e9).unwrap(), 1.0);
        let k = 1e8;
        assert_relative_eq!(
            gamma(1.0, C * k, k).unwrap(),
            2f64.sqrt(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            gamma(3.0, 2.0 * C * k, k).unwrap(),
            13f64.sqrt(),
            max_relative = 1e-15
        );
        assert_eq!(
            gamma(2.0, 1e15, 0.0),
            Err(StackError::NonPositiveWavevector(0.0))
        );
    }

    #[test]
    fn fresnel_examples() {
        for pol in Polarization::BOTH {
            assert_eq!(fresnel(pol, 2.5, 1.3, 2.5, 1.3), 0.0);
        }
        assert_eq!(fresnel(Polarization::TM, 2.0, 1.0, 6.0, 1.0), 0.5);
        assert_relative_eq!(fresnel(Polarization::TM, 2.0, 1.2, 1e300, 1.3), 1.0);
        assert_relative_eq!(fresnel(Polarization::TE, 2.0, 1.2, 3.0, 1e300), -1.0);
    }

    #[test]
    fn static_metal_reflects_perfectly() {
        use StaticPermittivity::*;
        let metal = Metallic {
            plasma_frequency_sq: 1.0,
        };
        assert_eq!(static_fresnel_tm(Finite(2.0), metal), 1.0);
        assert_eq!(static_fresnel_tm(metal, Finite(2.0)), -1.0);
        assert_eq!(static_fresnel_tm(metal, metal), 0.0);
    }

    #[test]
    fn thick_and_vanishing_film_limits() {
        let gap = osc("liquid", 1.2, 1.3e16);
        let sub = osc("silica", 1.1, 2.0e16);
        let (xi, k) = (3e15, 2e8);
        for pol in Polarization::BOTH {
            let thick = Layer::new(gold(), 1.0).unwrap();
            let r = composite_reflection(pol, &gap, &thick, &sub, xi, k).unwrap();
            let r_direct = side_reflection(
                pol,
                &LayerStack::new(gold(), gap.clone(), 1.0, gap.clone()).unwrap(),
                Side::Left,
                xi,
                k,
                true,
            )
            .unwrap();
            assert!((r - r_direct).abs() < 1e-12);

            let thin = Layer::new(gold(), 1e-20).unwrap();
            let r = composite_reflection(pol, &gap, &thin, &sub, xi, k).unwrap();
            let r_bare = side_reflection(
                pol,
                &LayerStack::new(sub.clone(), gap.clone(), 1.0, gap.clone()).unwrap(),
                Side::Left,
                xi,
                k,
                true,
            )
            .unwrap();
            assert!((r - r_bare).abs() < 1e-9, "{pol:?}: {r} vs {r_bare}");
        }
    }

    #[test]
    fn index_matched_film_gives_attenuated_substrate_reflection() {
        let gap = osc("liquid", 1.2, 1.3e16);
        let sub = osc("silica", 1.1, 2.0e16);
        let (xi, k, b) = (3e15, 2e8, 4e-9);
        let film = Layer::new(gap.clone(), b).unwrap();
        let eps_g = gap.model.eval(xi).unwrap();
        let eps_s = sub.model.eval(xi).unwrap();
        let gg = gamma(eps_g, xi, k).unwrap();
        let gs = gamma(eps_s, xi, k).unwrap();
        for pol in Polarization::BOTH {
            let r = composite_reflection(pol, &gap, &film, &sub, xi, k).unwrap();
            let expect = (-2.0 * gg * k * b).exp() * fresnel(pol, eps_g, gg, eps_s, gs);
            assert_relative_eq!(r, expect, max_relative = 1e-12);
        }
    }

    #[test]
    fn mode_condition_examples() {
        let liquid = osc("liquid", 1.2, 1.3e16);
        let silica = osc("silica", 1.1, 2.0e16);
        let matched =
            LayerStack::new(liquid.clone(), liquid.clone(), 1e-9, silica.clone()).unwrap();
        for pol in Polarization::BOTH {
            assert_eq!(mode_condition(pol, &matched, 1e15, 1e9).unwrap(), 1.0);
        }
        let far = LayerStack::symmetric(silica.clone(), liquid.clone(), 1e-3).unwrap();
        let f = mode_condition(Polarization::TM, &far, 1e15, 1e9).unwrap();
        assert!((f - 1.0).abs() < 1e-12);

        let near = far.with_separation(2e-9).unwrap();
        let (xi, k) = (1e16, 3e8);
        let eg = liquid.model.eval(xi).unwrap();
        let es = silica.model.eval(xi).unwrap();
        let (gg, gs) = (gamma(eg, xi, k).unwrap(), gamma(es, xi, k).unwrap());
        let r = fresnel(Polarization::TM, eg, gg, es, gs);
        let f = mode_condition(Polarization::TM, &near, xi, k).unwrap();
        assert_relative_eq!(
            f,
            1.0 - (-2.0 * gg * k * 2e-9).exp() * r * r,
            max_relative = 1e-14
        );
        assert!(f <= 1.0);
    }

    #[test]
    fn non_retarded_reduction() {
        let a = osc("a", 1.2, 1.3e16);
        let b = osc("b", 2.1, 0.7e16);
        let stack = LayerStack::new(b.clone(), a.clone(), 1e-8, b.clone()).unwrap();
        let xi = 2e15;
        let (ea, eb) = (a.model.eval(xi).unwrap(), b.model.eval(xi).unwrap());
        for k in [1e6, 1e8, 1e10] {
            let tm = side_reflection(Polarization::TM, &stack, Side::Left, xi, k, false).unwrap();
            assert_relative_eq!(tm, (eb - ea) / (eb + ea), max_relative = 1e-14);
            let te = side_reflection(Polarization::TE, &stack, Side::Left, xi, k, false).unwrap();
            assert_eq!(te, 0.0);
        }
    }

    #[test]
    fn mirrored_stack_swaps_sides() {
        let s = LayerStack::new(
            osc("a", 1.0, 1e16),
            osc("g", 0.5, 1e16),
            1e-9,
            osc("b", 2.0, 1e16),
        )
        .unwrap()
        .coat_left(Layer::new(gold(), 2e-9).unwrap())
        .coat_right(Layer::new(osc("c", 3.0, 1e15), 1e-9).unwrap());
        let m = s.mirrored();
        assert_eq!(m.left_halfspace().name, "b");
        assert_eq!(m.right_films()[0].material.name, "gold");
        assert_eq!(m.mirrored(), s);
    }

    #[test]
    fn invalid_geometry_rejected() {
        let metal = Material::new("au", crate::dielectric::DrudeModel::new(1e16, 0.0).unwrap());
        assert!(matches!(
            LayerStack::symmetric(osc("glass", 1.0, 2e16), metal, 1e-9),
            Err(StackError::MetallicGap(_))
        ));
        let a = osc("a", 1.0, 1e16);
        assert!(LayerStack::new(a.clone(), a.clone(), 0.0, a.clone()).is_err());
        assert!(Layer::new(a.clone(), -1e-9).is_err());
        assert!(LayerStack::symmetric(a.clone(), a.clone(), 1e-9)
            .unwrap()
            .with_separation(f64::NAN)
            .is_err());
    }
}
