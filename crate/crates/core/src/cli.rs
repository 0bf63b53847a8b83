//! The `casimir` command: run files, CSV output and exit codes.
//!
//! ```text
//! casimir energy <run.toml>       [--materials PATH] [--no-retardation] [--out PATH] [--threads N] [--strict]
//! casimir levitation <run.toml>   (same flags)
//! casimir dielectric <material>   [--grid MIN,MAX,N[,log|linear]]  (grid in eV)
//! ```
//!
//! A run file is TOML; lengths are strings with a unit (`"20 Å"`, `"2 nm"`,
//! `"1 um"`, `"1e-9 m"`) or bare numbers in meters:
//!
//! ```toml
//! [stack]
//! left = "silica"
//! left_films = [ { material = "gold", thickness = "20 Å" } ]
//! gap = "toluene"
//! right = "silica"
//!
//! [grid]
//! min = "2 Å"
//! max = "200 Å"
//! count = 40
//! spacing = "log"
//!
//! [solver]
//! temperature = 300.0
//! retarded = true
//!
//! [levitation]
//! thicknesses = ["5 Å", "10 Å", "20 Å", "50 Å"]
//! bracket = ["2 Å", "200 Å"]
//! ```
//!
//! The name `vacuum` resolves to ε = 1 unless the library defines it.
//!
//! Exit codes: 0 success, 2 configuration error, 3 I/O error, 4 numerical
//! non-convergence under `--strict`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use thiserror::Error;

use crate::analysis::{
    separation_sweep, thickness_scan, AnalysisError, EnergyCurve, FilmRef, ThicknessRow,
    DEFAULT_BRACKET,
};
use crate::constants::EV_TO_RAD_PER_S;
use crate::dielectric::{LibraryError, Material, MaterialLibrary, StaticPermittivity};
use crate::energy::SolverConfig;
use crate::stack::{Layer, LayerStack, Side, StackError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error: {0}")]
    Io(String),

    #[error("numerical non-convergence: {0}")]
    NotConverged(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
            CliError::NotConverged(_) => 4,
        }
    }
}

impl From<LibraryError> for CliError {
    fn from(e: LibraryError) -> Self {
        match e {
            LibraryError::Io { .. } => CliError::Io(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<StackError> for CliError {
    fn from(e: StackError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        CliError::Config(e.to_string())
    }
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

#[derive(Debug, Parser)]
#[command(
    name = "casimir",
    version,
    about = "Casimir-Lifshitz energies between coated planar surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: CommonOpts,
}

#[derive(Debug, Args, Clone, Default)]
pub struct CommonOpts {
    /// Material library (.matlib); defaults to the bundled library.
    #[arg(long, global = true)]
    pub materials: Option<PathBuf>,

    /// Force γ = 1 (non-retarded limit) regardless of the run file.
    #[arg(long, global = true)]
    pub no_retardation: bool,

    /// Output CSV path; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for sweep points and Matsubara terms.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Exit with status 4 if any point failed to converge.
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Free energy and pressure along the run file's separation grid.
    Energy { config: PathBuf },
    /// Levitation distance for each film thickness in the run file.
    Levitation { config: PathBuf },
    /// ε(iξ) of one material on a frequency grid given in eV.
    Dielectric {
        material: String,
        /// MIN,MAX,N[,log|linear] in eV.
        #[arg(long, default_value = "0.001,100,121,log")]
        grid: String,
    },
}

/// A length with optional unit suffix, stored in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Length(pub f64);

impl<'de> Deserialize<'de> for Length {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(de)? {
            Raw::Number(v) => Ok(Length(v)),
            Raw::Text(s) => parse_length(&s)
                .map(Length)
                .map_err(serde::de::Error::custom),
        }
    }
}

/// Parses `"20 Å"`, `"2nm"`, `"1 um"`, `"1e-9 m"` or a bare number (meters).
pub fn parse_length(text: &str) -> Result<f64, String> {
    let t = text.trim();
    let split = t
        .find(|c: char| c.is_alphabetic() || c == 'Å' || c == 'µ' || c == 'μ')
        .unwrap_or(t.len());
    // keep exponents such as 1e-9 inside the number
    let split = if t[..split].is_empty() {
        0
    } else {
        exponent_aware_split(t, split)
    };
    let (num, unit) = t.split_at(split);
    let value: f64 = num
        .trim()
        .parse()
        .map_err(|_| format!("cannot parse length `{text}`"))?;
    let scale = match unit.trim() {
        "" | "m" => 1.0,
        "Å" | "A" | "angstrom" | "Angstrom" => 1e-10,
        "nm" => 1e-9,
        "um" | "µm" | "μm" => 1e-6,
        other => return Err(format!("unknown length unit `{other}` in `{text}`")),
    };
    Ok(value * scale)
}

fn exponent_aware_split(t: &str, first_alpha: usize) -> usize {
    let bytes = t.as_bytes();
    if (bytes[first_alpha] == b'e' || bytes[first_alpha] == b'E')
        && first_alpha + 1 < t.len()
        && t[first_alpha + 1..]
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_digit() || c == '-' || c == '+')
    {
        let rest = &t[first_alpha + 1..];
        let skip = rest
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && (c == '-' || c == '+'))))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        first_alpha + 1 + skip
    } else {
        first_alpha
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilmSpec {
    pub material: String,
    pub thickness: Length,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StackSpec {
    pub left: String,
    #[serde(default)]
    pub left_films: Vec<FilmSpec>,
    pub gap: String,
    #[serde(default)]
    pub right_films: Vec<FilmSpec>,
    pub right: String,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub min: Length,
    pub max: Length,
    pub count: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn points(&self) -> Result<Vec<f64>, CliError> {
        let (lo, hi, n) = (self.min.0, self.max.0, self.count);
        grid_points(lo, hi, n, self.spacing, true)
            .map_err(|m| CliError::Config(format!("grid: {m}")))
    }
}

fn grid_points(
    lo: f64,
    hi: f64,
    n: usize,
    spacing: Spacing,
    positive: bool,
) -> Result<Vec<f64>, String> {
    if n == 0 {
        return Err("count must be >= 1".into());
    }
    if !(lo.is_finite() && hi.is_finite()) || (positive && lo <= 0.0) || lo < 0.0 {
        return Err(format!(
            "min must be {} and finite, got {lo}",
            if positive { "> 0" } else { ">= 0" }
        ));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    if !(hi > lo) {
        return Err(format!("max ({hi}) must exceed min ({lo})"));
    }
    let step = |i: usize| i as f64 / (n - 1) as f64;
    Ok(match spacing {
        Spacing::Linear => (0..n).map(|i| lo + (hi - lo) * step(i)).collect(),
        Spacing::Log => {
            if lo <= 0.0 {
                return Err("log spacing needs min > 0".into());
            }
            let (a, b) = (lo.ln(), hi.ln());
            (0..n)
                .map(|i| match i {
                    0 => lo,
                    i if i == n - 1 => hi,
                    i => (a + (b - a) * step(i)).exp(),
                })
                .collect()
        }
    })
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverSpec {
    pub temperature: f64,
    pub retarded: bool,
    pub rel_tol: f64,
    pub k_quadrature_order: usize,
    pub matsubara_rel_cutoff: f64,
    pub matsubara_max_n: usize,
}

impl Default for SolverSpec {
    fn default() -> Self {
        let d = SolverConfig::default();
        Self {
            temperature: d.temperature,
            retarded: d.retarded,
            rel_tol: d.rel_tol,
            k_quadrature_order: d.k_quadrature_order,
            matsubara_rel_cutoff: d.matsubara_rel_cutoff,
            matsubara_max_n: d.matsubara_max_n,
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideSpec {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilmSelector {
    pub side: SideSpec,
    pub index: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevitationSpec {
    pub thicknesses: Vec<Length>,
    pub bracket: Option<[Length; 2]>,
    pub film: Option<FilmSelector>,
}

/// One run file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Material library path, relative to the run file.
    pub materials: Option<PathBuf>,
    /// Output CSV path, relative to the working directory.
    pub output: Option<PathBuf>,
    pub stack: StackSpec,
    pub grid: Option<GridSpec>,
    #[serde(default)]
    pub solver: SolverSpec,
    pub levitation: Option<LevitationSpec>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
        let mut cfg = Self::parse(&text)?;
        if let (Some(m), Some(dir)) = (&cfg.materials, path.parent()) {
            if m.is_relative() {
                cfg.materials = Some(dir.join(m));
            }
        }
        Ok(cfg)
    }

    pub fn solver_config(&self) -> Result<SolverConfig, CliError> {
        let s = &self.solver;
        let cfg = SolverConfig {
            temperature: s.temperature,
            retarded: s.retarded,
            rel_tol: s.rel_tol,
            k_quadrature_order: s.k_quadrature_order,
            matsubara_rel_cutoff: s.matsubara_rel_cutoff,
            matsubara_max_n: s.matsubara_max_n,
        };
        cfg.validate()
            .map_err(|e| CliError::Config(format!("solver: {e}")))?;
        Ok(cfg)
    }

    /// Builds the stack at the first grid separation (or 1 nm without a grid).
    pub fn build_stack(&self, library: &MaterialLibrary) -> Result<LayerStack, CliError> {
        let get = |field: &str, name: &str| -> Result<Material, CliError> {
            library
                .get(name)
                .cloned()
                .or_else(|| (name == "vacuum").then(Material::vacuum))
                .ok_or_else(|| {
                    CliError::Config(format!("stack.{field}: unknown material `{name}`"))
                })
        };
        let film = |field: &str, i: usize, f: &FilmSpec| -> Result<Layer, CliError> {
            Layer::new(
                get(&format!("{field}[{i}].material"), &f.material)?,
                f.thickness.0,
            )
            .map_err(|e| CliError::Config(format!("stack.{field}[{i}].thickness: {e}")))
        };
        let d0 = match &self.grid {
            Some(g) => g.points()?[0],
            None => 1e-9,
        };
        let mut stack = LayerStack::new(
            get("left", &self.stack.left)?,
            get("gap", &self.stack.gap)?,
            d0,
            get("right", &self.stack.right)?,
        )?;
        for (i, f) in self.stack.left_films.iter().enumerate() {
            stack = stack.coat_left(film("left_films", i, f)?);
        }
        for (i, f) in self.stack.right_films.iter().enumerate().rev() {
            stack = stack.coat_right(film("right_films", i, f)?);
        }
        Ok(stack)
    }
}

/// Formats a float with 17 significant digits, locale independent.
pub fn fmt_f64(v: f64) -> String {
    if v == 0.0 {
        // no negative zero in output
        format!("{:.16e}", 0.0)
    } else if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

pub fn write_energy_csv<W: Write>(curve: &EnergyCurve, out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "separation_m",
        "free_energy_J_per_m2",
        "pressure_N_per_m2",
        "converged",
    ])?;
    for p in &curve.points {
        w.write_record([
            fmt_f64(p.separation),
            fmt_f64(p.free_energy),
            fmt_f64(p.pressure),
            p.converged.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_levitation_csv<W: Write>(rows: &[ThicknessRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "film_thickness_m",
        "levitation_distance_m",
        "peak_separation_m",
        "peak_energy_J_per_m2",
        "status",
    ])?;
    for row in rows {
        let rec = match &row.outcome {
            Ok(r) => {
                let (ps, pe, status) = match r.repulsion_max {
                    Some(m) if m.at_boundary => (
                        fmt_f64(m.separation),
                        fmt_f64(m.free_energy),
                        "peak at bracket edge",
                    ),
                    Some(m) => (fmt_f64(m.separation), fmt_f64(m.free_energy), "ok"),
                    None => (String::new(), String::new(), "ok"),
                };
                let status = if r.converged { status } else { "not converged" };
                [
                    fmt_f64(row.thickness),
                    fmt_f64(r.levitation_distance),
                    ps,
                    pe,
                    status.to_string(),
                ]
            }
            Err(AnalysisError::NoLevitation { .. }) => [
                fmt_f64(row.thickness),
                String::new(),
                String::new(),
                String::new(),
                "no levitation in range".to_string(),
            ],
            Err(e) => [
                fmt_f64(row.thickness),
                String::new(),
                String::new(),
                String::new(),
                format!("error: {e}"),
            ],
        };
        w.write_record(rec)?;
    }
    w.flush()?;
    Ok(())
}

/// ε(iξ) rows for a grid of ξ in eV; a metallic static value is written as `inf`.
pub fn write_dielectric_csv<W: Write>(
    material: &Material,
    grid_ev: &[f64],
    out: W,
) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(["xi_rad_per_s", "xi_eV", "epsilon"])
        .map_err(csv_err)?;
    for &ev in grid_ev {
        let xi = ev * EV_TO_RAD_PER_S;
        let eps = if xi == 0.0 {
            match material.model.static_limit() {
                StaticPermittivity::Finite(v) => v,
                StaticPermittivity::Metallic { .. } => f64::INFINITY,
            }
        } else {
            material
                .model
                .eval(xi)
                .map_err(|e| CliError::Config(e.to_string()))?
        };
        w.write_record([fmt_f64(xi), fmt_f64(ev), fmt_f64(eps)])
            .map_err(csv_err)?;
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

/// Parses `MIN,MAX,N[,log|linear]` (eV).
pub fn parse_frequency_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = |m: String| CliError::Config(format!("--grid: {m}"));
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if !(3..=4).contains(&parts.len()) {
        return Err(bad(format!(
            "expected MIN,MAX,N[,log|linear], got `{spec}`"
        )));
    }
    let num = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| bad(format!("not a number: `{s}`")))
    };
    let lo = num(parts[0])?;
    let hi = num(parts[1])?;
    let n: usize = parts[2]
        .parse()
        .map_err(|_| bad(format!("not a count: `{}`", parts[2])))?;
    let spacing = match parts.get(3).copied() {
        None | Some("linear") => Spacing::Linear,
        Some("log") => Spacing::Log,
        Some(other) => return Err(bad(format!("unknown spacing `{other}`"))),
    };
    grid_points(lo, hi, n, spacing, false).map_err(bad)
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomically(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_err(path, e))?;
    tmp.write_all(bytes).map_err(|e| io_err(path, e))?;
    tmp.persist(path).map_err(|e| io_err(path, e.error))?;
    Ok(())
}

fn load_library(common: &CommonOpts, run: Option<&RunConfig>) -> Result<MaterialLibrary, CliError> {
    let path = common
        .materials
        .clone()
        .or_else(|| run.and_then(|r| r.materials.clone()));
    match path {
        Some(p) => Ok(MaterialLibrary::load(&p)?),
        None => Ok(MaterialLibrary::builtin()),
    }
}

fn solver_for(run: &RunConfig, common: &CommonOpts) -> Result<SolverConfig, CliError> {
    let mut cfg = run.solver_config()?;
    if common.no_retardation {
        cfg.retarded = false;
    }
    Ok(cfg)
}

/// Result of one command: CSV bytes and a human-readable summary.
#[derive(Debug, Clone)]
pub struct Report {
    pub csv: Vec<u8>,
    pub summary: String,
    pub converged: bool,
}

fn linear_zero(a: (f64, f64), b: (f64, f64)) -> f64 {
    a.0 - a.1 * (b.0 - a.0) / (b.1 - a.1)
}

pub fn cmd_energy(config: &Path, common: &CommonOpts) -> Result<Report, CliError> {
    let run = RunConfig::load(config)?;
    let library = load_library(common, Some(&run))?;
    let grid = run
        .grid
        .as_ref()
        .ok_or_else(|| CliError::Config("grid: section required for `energy`".into()))?
        .points()?;
    let stack = run.build_stack(&library)?;
    let solver = solver_for(&run, common)?;
    let curve = separation_sweep(&stack, &grid, &solver)?;

    let mut csv = Vec::new();
    write_energy_csv(&curve, &mut csv).map_err(|e| CliError::Io(e.to_string()))?;
    let mut summary = format!(
        "{} ({}, T = {} K): {} points\n",
        curve.stack,
        if solver.retarded {
            "retarded"
        } else {
            "non-retarded"
        },
        solver.temperature,
        curve.points.len()
    );
    let changes = curve.sign_changes();
    if changes.is_empty() {
        let sign = curve.points.iter().map(|p| p.free_energy).sum::<f64>();
        let _ = writeln!(
            summary,
            "no sign change; interaction is {} over the grid",
            if sign < 0.0 {
                "attractive"
            } else if sign > 0.0 {
                "repulsive"
            } else {
                "zero"
            }
        );
    }
    for c in &changes {
        let (p, q) = (&curve.points[c.index], &curve.points[c.index + 1]);
        let d = linear_zero((p.separation, p.free_energy), (q.separation, q.free_energy));
        let _ = writeln!(
            summary,
            "sign change {} near {:.4e} m",
            if c.to_repulsion {
                "attraction -> repulsion"
            } else {
                "repulsion -> attraction"
            },
            d
        );
    }
    let converged = curve.all_converged();
    if !converged {
        let _ = writeln!(summary, "warning: some points did not converge");
    }
    Ok(Report {
        csv,
        summary,
        converged,
    })
}

pub fn cmd_levitation(config: &Path, common: &CommonOpts) -> Result<Report, CliError> {
    let run = RunConfig::load(config)?;
    let library = load_library(common, Some(&run))?;
    let lev = run
        .levitation
        .as_ref()
        .ok_or_else(|| CliError::Config("levitation: section required".into()))?;
    let stack = run.build_stack(&library)?;
    let solver = solver_for(&run, common)?;
    let film = match lev.film {
        Some(f) => FilmRef {
            side: match f.side {
                SideSpec::Left => Side::Left,
                SideSpec::Right => Side::Right,
            },
            index: f.index,
        },
        None => FilmRef::left_innermost(&stack).ok_or_else(|| {
            CliError::Config("levitation.film: stack has no left film to scan".into())
        })?,
    };
    let bracket = lev
        .bracket
        .map(|[a, b]| (a.0, b.0))
        .unwrap_or(DEFAULT_BRACKET);
    let thicknesses: Vec<f64> = lev.thicknesses.iter().map(|l| l.0).collect();
    let rows =
        thickness_scan(&stack, film, &thicknesses, bracket, &solver).map_err(|e| match e {
            AnalysisError::InvalidGrid(m) => {
                CliError::Config(format!("levitation.thicknesses: {m}"))
            }
            other => CliError::from(other),
        })?;

    let mut csv = Vec::new();
    write_levitation_csv(&rows, &mut csv).map_err(|e| CliError::Io(e.to_string()))?;
    let mut summary = format!(
        "{} ({}, T = {} K), bracket [{:e}, {:e}] m\n",
        stack.describe(),
        if solver.retarded {
            "retarded"
        } else {
            "non-retarded"
        },
        solver.temperature,
        bracket.0,
        bracket.1
    );
    let mut converged = true;
    for row in &rows {
        match &row.outcome {
            Ok(r) => {
                converged &= r.converged;
                let _ = writeln!(
                    summary,
                    "b = {:.4e} m: levitation distance {:.4e} m",
                    row.thickness, r.levitation_distance
                );
            }
            Err(e) => {
                let _ = writeln!(summary, "b = {:.4e} m: {e}", row.thickness);
            }
        }
    }
    Ok(Report {
        csv,
        summary,
        converged,
    })
}

pub fn cmd_dielectric(material: &str, grid: &str, common: &CommonOpts) -> Result<Report, CliError> {
    let library = load_library(common, None)?;
    let m = library
        .get(material)
        .ok_or_else(|| CliError::Config(format!("unknown material `{material}`")))?;
    let grid = parse_frequency_grid(grid)?;
    let mut csv = Vec::new();
    write_dielectric_csv(m, &grid, &mut csv)?;
    let summary = format!(
        "{}: static value {}; source: {}\n",
        m.name,
        match m.static_value() {
            StaticPermittivity::Finite(v) => format!("{v}"),
            StaticPermittivity::Metallic { .. } => "metallic (divergent)".into(),
        },
        if m.source.is_empty() { "-" } else { &m.source }
    );
    Ok(Report {
        csv,
        summary,
        converged: true,
    })
}

/// Parses arguments, runs the command and emits its output.
pub fn run<I, T>(args: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            print!("{e}");
            CliError::Config(String::new())
        }
        _ => CliError::Config(e.to_string()),
    })?;
    if let Some(n) = cli.common.threads {
        // the global pool can only be set once per process
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
    let common = &cli.common;
    let (report, output) = match &cli.command {
        Command::Energy { config } => {
            let out = common.out.clone().or(RunConfig::load(config)?.output);
            (cmd_energy(config, common)?, out)
        }
        Command::Levitation { config } => {
            let out = common.out.clone().or(RunConfig::load(config)?.output);
            (cmd_levitation(config, common)?, out)
        }
        Command::Dielectric { material, grid } => {
            (cmd_dielectric(material, grid, common)?, common.out.clone())
        }
    };
    match output {
        Some(path) => {
            write_atomically(&path, &report.csv)?;
            print!("{}", report.summary);
            println!("wrote {}", path.display());
        }
        None => {
            std::io::stdout()
                .write_all(&report.csv)
                .map_err(|e| CliError::Io(e.to_string()))?;
            eprint!("{}", report.summary);
        }
    }
    if common.strict && !report.converged {
        return Err(CliError::NotConverged(
            "at least one point did not reach its tolerance".into(),
        ));
    }
    Ok(())
}

/// [`run`] mapped to a process exit code, printing errors to stderr.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match run(args) {
        Ok(()) => 0,
        Err(CliError::Config(m)) if m.is_empty() => 0,
        Err(e) => {
            eprintln!("casimir: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths_with_units() {
        assert_eq!(parse_length("20 Å").unwrap(), 20.0 * 1e-10);
        assert_eq!(parse_length("20A").unwrap(), 20.0 * 1e-10);
        assert_eq!(parse_length("2 nm").unwrap(), 2.0 * 1e-9);
        assert_eq!(parse_length("1.5um").unwrap(), 1.5e-6);
        assert_eq!(parse_length("1e-9 m").unwrap(), 1e-9);
        assert_eq!(parse_length("1e-9").unwrap(), 1e-9);
        assert_eq!(parse_length("2.5e1 Å").unwrap(), 25.0 * 1e-10);
        assert!(parse_length("3 furlongs").is_err());
        assert!(parse_length("nm").is_err());
    }

    #[test]
    fn grids() {
        let g = grid_points(1.0, 100.0, 3, Spacing::Log, true).unwrap();
        assert_eq!(g[0], 1.0);
        assert!((g[1] - 10.0).abs() < 1e-12);
        assert_eq!(g[2], 100.0);
        assert_eq!(
            grid_points(5.0, 1.0, 1, Spacing::Linear, true).unwrap(),
            vec![5.0]
        );
        assert!(grid_points(5.0, 1.0, 2, Spacing::Linear, true).is_err());
        assert!(grid_points(0.0, 1.0, 2, Spacing::Linear, true).is_err());
        assert!(grid_points(1.0, 2.0, 0, Spacing::Linear, true).is_err());
        assert_eq!(parse_frequency_grid("0,0,1").unwrap(), vec![0.0]);
        assert!(parse_frequency_grid("0,1,3,log").is_err());
        assert!(parse_frequency_grid("1,2").is_err());
    }

    #[test]
    fn float_format_has_17_significant_digits() {
        let s = fmt_f64(0.1);
        assert_eq!(s, "1.0000000000000001e-1");
        assert_eq!(s.parse::<f64>().unwrap(), 0.1);
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
    }

    #[test]
    fn run_config_names_unknown_material_field() {
        let run = RunConfig::parse(
            r#"
            [stack]
            left = "silica"
            left_films = [ { material = "unobtainium", thickness = "2 nm" } ]
            gap = "toluene"
            right = "silica"
            "#,
        )
        .unwrap();
        let err = run.build_stack(&MaterialLibrary::builtin()).unwrap_err();
        assert!(err.to_string().contains("left_films[0].material"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Config(String::new()).exit_code(), 2);
        assert_eq!(CliError::Io(String::new()).exit_code(), 3);
        assert_eq!(CliError::NotConverged(String::new()).exit_code(), 4);
    }
}
