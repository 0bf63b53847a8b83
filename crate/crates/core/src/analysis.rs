//! Separation sweeps, levitation distance and film-thickness scans.

use rayon::prelude::*;
use thiserror::Error;

use crate::energy::{
    energy_and_pressure_t0, free_energy_and_pressure, EnergyError, EnergyPoint, SolverConfig,
};
use crate::stack::{LayerStack, Side, StackError};

/// Points of the coarse log-spaced scan that locates a sign change before
/// bisection.
pub const BRACKET_SCAN_POINTS: usize = 16;

/// Bisection and golden-section stop once the bracket is this narrow
/// relative to its lower end.
pub const ROOT_REL_WIDTH: f64 = 1e-3;

/// Default bracket for Å-scale systems, in meters.
pub const DEFAULT_BRACKET: (f64, f64) = (2e-10, 200e-10);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("no levitation in range [{lo:e}, {hi:e}] m")]
    NoLevitation { lo: f64, hi: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error(transparent)]
    Energy(#[from] EnergyError),

    #[error(transparent)]
    Stack(#[from] StackError),
}

/// Free energy at finite temperature, or the T = 0 energy when the
/// configured temperature is zero.
pub fn evaluate(stack: &LayerStack, config: &SolverConfig) -> Result<EnergyPoint, EnergyError> {
    if config.temperature == 0.0 {
        energy_and_pressure_t0(stack, config)
    } else {
        free_energy_and_pressure(stack, config)
    }
}

/// Free energy and pressure along a separation grid.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyCurve {
    pub stack: String,
    pub config: SolverConfig,
    pub points: Vec<EnergyPoint>,
}

impl EnergyCurve {
    pub fn all_converged(&self) -> bool {
        self.points.iter().all(|p| p.converged)
    }

    /// Indices i such that the energy changes sign strictly between point i
    /// and point i + 1, with the direction of the change.
    pub fn sign_changes(&self) -> Vec<SignChange> {
        self.points
            .windows(2)
            .enumerate()
            .filter_map(|(i, w)| {
                let (a, b) = (w[0].free_energy, w[1].free_energy);
                if a < 0.0 && b > 0.0 {
                    Some(SignChange {
                        index: i,
                        to_repulsion: true,
                    })
                } else if a > 0.0 && b < 0.0 {
                    Some(SignChange {
                        index: i,
                        to_repulsion: false,
                    })
                } else {
                    None
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignChange {
    pub index: usize,
    /// Attraction below, repulsion above.
    pub to_repulsion: bool,
}

fn check_grid(values: &[f64], what: &str) -> Result<(), AnalysisError> {
    if values.is_empty() {
        return Err(AnalysisError::InvalidGrid(format!("{what} grid is empty")));
    }
    if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(AnalysisError::InvalidGrid(format!(
            "{what} values must be > 0, got {v}"
        )));
    }
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(AnalysisError::InvalidGrid(format!(
            "{what} values must be strictly increasing"
        )));
    }
    Ok(())
}

/// Evaluates the stack at each separation. Points are independent and may
/// run concurrently; the result order always follows `separations`.
pub fn separation_sweep(
    stack: &LayerStack,
    separations: &[f64],
    config: &SolverConfig,
) -> Result<EnergyCurve, AnalysisError> {
    check_grid(separations, "separation")?;
    config.validate()?;
    let points = separations
        .par_iter()
        .map(|&d| Ok(evaluate(&stack.with_separation(d)?, config)?))
        .collect::<Result<Vec<_>, AnalysisError>>()?;
    Ok(EnergyCurve {
        stack: stack.describe(),
        config: config.clone(),
        points,
    })
}

/// Location and height of the repulsive maximum of E(d).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepulsionMax {
    pub separation: f64,
    pub free_energy: f64,
    /// The maximum lies at (or beyond) the upper end of the search bracket.
    pub at_boundary: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevitationResult {
    /// Zero of the free energy: attraction below, repulsion above.
    pub levitation_distance: f64,
    /// Final bisection bracket; E < 0 at the lower end, E > 0 at the upper.
    pub root_bracket: (f64, f64),
    /// Bracket the search was asked to cover.
    pub search_bracket: (f64, f64),
    /// Repulsion maximum, which is also the zero of the pressure.
    pub repulsion_max: Option<RepulsionMax>,
    pub converged: bool,
    pub evaluations: usize,
}

struct Probe<'a> {
    stack: &'a LayerStack,
    config: &'a SolverConfig,
    evaluations: usize,
    converged: bool,
}

impl Probe<'_> {
    fn energy(&mut self, d: f64) -> Result<f64, AnalysisError> {
        let p = evaluate(&self.stack.with_separation(d)?, self.config)?;
        self.evaluations += 1;
        self.converged &= p.converged;
        Ok(p.free_energy)
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == n - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// Finds the separation where the free energy turns from attraction to
/// repulsion inside `bracket`, refines it by bisection, and locates the
/// repulsion maximum above it by golden-section search.
///
/// The bracket is first sampled on a coarse logarithmic grid; the first
/// attraction-to-repulsion crossing found there is the one refined.
pub fn levitation_distance(
    stack: &LayerStack,
    bracket: (f64, f64),
    config: &SolverConfig,
) -> Result<LevitationResult, AnalysisError> {
    let (lo, hi) = bracket;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(AnalysisError::InvalidGrid(format!(
            "bracket must satisfy 0 < lo < hi, got ({lo:e}, {hi:e})"
        )));
    }
    config.validate()?;
    let grid = log_grid(lo, hi, BRACKET_SCAN_POINTS);
    let scan = separation_sweep(stack, &grid, config)?;
    let energies: Vec<f64> = scan.points.iter().map(|p| p.free_energy).collect();

    let crossing = scan
        .sign_changes()
        .into_iter()
        .find(|c| c.to_repulsion)
        .ok_or(AnalysisError::NoLevitation { lo, hi })?;

    let mut probe = Probe {
        stack,
        config,
        evaluations: grid.len(),
        converged: scan.all_converged(),
    };

    let (mut a, mut b) = (grid[crossing.index], grid[crossing.index + 1]);
    while (b - a) / a > ROOT_REL_WIDTH {
        let m = (a * b).sqrt();
        let e = probe.energy(m)?;
        if e < 0.0 {
            a = m;
        } else if e > 0.0 {
            b = m;
        } else {
            a = m;
            b = m;
        }
    }
    let root = 0.5 * (a + b);

    let repulsion_max = locate_maximum(&mut probe, &grid, &energies, crossing.index + 1, b, hi)?;

    Ok(LevitationResult {
        levitation_distance: root,
        root_bracket: (a, b),
        search_bracket: bracket,
        repulsion_max,
        converged: probe.converged,
        evaluations: probe.evaluations,
    })
}

/// Golden-section search (in ln d) for the largest energy on the repulsive
/// branch starting at grid index `first`.
fn locate_maximum(
    probe: &mut Probe<'_>,
    grid: &[f64],
    energies: &[f64],
    first: usize,
    root_hi: f64,
    hi: f64,
) -> Result<Option<RepulsionMax>, AnalysisError> {
    // contiguous repulsive run of the scan above the root
    let mut last = first;
    while last + 1 < grid.len() && energies[last + 1] > 0.0 {
        last += 1;
    }
    let peak = (first..=last)
        .max_by(|&i, &j| energies[i].total_cmp(&energies[j]))
        .expect("non-empty run");
    if peak == grid.len() - 1 {
        return Ok(Some(RepulsionMax {
            separation: hi,
            free_energy: energies[peak],
            at_boundary: true,
        }));
    }
    let mut a = if peak == first {
        root_hi
    } else {
        grid[peak - 1]
    }
    .ln();
    let mut b = grid[peak + 1].ln();
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = probe.energy(x1.exp())?;
    let mut f2 = probe.energy(x2.exp())?;
    while b - a > ROOT_REL_WIDTH {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = probe.energy(x2.exp())?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = probe.energy(x1.exp())?;
        }
    }
    let (x, f) = if f1 > f2 { (x1, f1) } else { (x2, f2) };
    let (x, f) = if energies[peak] > f {
        (grid[peak].ln(), energies[peak])
    } else {
        (x, f)
    };
    Ok(Some(RepulsionMax {
        separation: x.exp(),
        free_energy: f,
        at_boundary: false,
    }))
}

/// Selects one film of a stack.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilmRef {
    pub side: Side,
    /// Spatial (left-to-right) index within that side's film list.
    pub index: usize,
}

impl FilmRef {
    /// The left-side film touching the gap.
    pub fn left_innermost(stack: &LayerStack) -> Option<Self> {
        let n = stack.left_films().len();
        (n > 0).then(|| Self {
            side: Side::Left,
            index: n - 1,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThicknessRow {
    pub thickness: f64,
    pub outcome: Result<LevitationResult, AnalysisError>,
}

/// Levitation analysis for each film thickness. A thickness without a
/// crossing yields a row with [`AnalysisError::NoLevitation`], not an error.
pub fn thickness_scan(
    stack: &LayerStack,
    film: FilmRef,
    thicknesses: &[f64],
    bracket: (f64, f64),
    config: &SolverConfig,
) -> Result<Vec<ThicknessRow>, AnalysisError> {
    check_grid(thicknesses, "thickness")?;
    config.validate()?;
    // surface geometry errors before doing any work
    stack.with_film_thickness(film.side, film.index, thicknesses[0])?;
    Ok(thicknesses
        .par_iter()
        .map(|&b| ThicknessRow {
            thickness: b,
            outcome: stack
                .with_film_thickness(film.side, film.index, b)
                .map_err(AnalysisError::from)
                .and_then(|s| levitation_distance(&s, bracket, config)),
        })
        .collect())
}
