//! Named material collections loaded from `.matlib` files.
//!
//! A `.matlib` file is TOML with one `[[material]]` table per entry.
//! Frequencies are given in eV and converted to rad/s on load.
//!
//! ```toml
//! [[material]]
//! name = "silica"
//! kind = "oscillator"
//! source = "citation"
//! terms = [ { strength = 1.098, frequency_ev = 13.34 } ]
//!
//! [[material]]
//! name = "gold"
//! kind = "drude"
//! plasma_ev = 9.0
//! relaxation_ev = 0.035
//! terms = [ { strength = 1.5, frequency_ev = 4.0 } ]   # optional interband terms
//!
//! [[material]]
//! name = "measured"
//! kind = "tabulated"
//! samples = [ [0.1, 2.2], [1.0, 2.1], [10.0, 1.3] ]   # [ξ in eV, ε]
//! ```

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{
    DielectricError, DielectricModel, DrudeModel, Oscillator, OscillatorModel, StaticPermittivity,
    TabulatedModel,
};
use crate::constants::EV_TO_RAD_PER_S;

const DEFAULT_LIBRARY: &str = include_str!("../../materials/default.matlib");

#[derive(Debug, Error)]
pub enum LibraryError {
    #[error("cannot read material library {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("material library parse error: {0}")]
    Parse(String),

    #[error("material `{entry}`: field `{field}`: {reason}")]
    Schema {
        entry: String,
        field: String,
        reason: String,
    },

    #[error("material `{0}` is defined more than once")]
    DuplicateName(String),

    #[error("unknown material `{0}`")]
    UnknownMaterial(String),
}

/// A named dielectric model with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Material {
    pub name: String,
    pub model: DielectricModel,
    pub source: String,
}

impl Material {
    pub fn new(name: impl Into<String>, model: impl Into<DielectricModel>) -> Self {
        Self {
            name: name.into(),
            model: model.into(),
            source: String::new(),
        }
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = source.into();
        self
    }

    pub fn vacuum() -> Self {
        Self::new("vacuum", DielectricModel::vacuum())
    }

    pub fn static_value(&self) -> StaticPermittivity {
        self.model.static_limit()
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct MaterialLibrary {
    materials: Vec<Material>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    #[serde(default)]
    material: Vec<RawMaterial>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMaterial {
    name: String,
    kind: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    plasma_ev: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    relaxation_ev: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    terms: Option<Vec<RawTerm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    samples: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    strength: f64,
    frequency_ev: f64,
    #[serde(default, skip_serializing_if = "is_zero")]
    damping_ev: f64,
}

fn is_zero(v: &f64) -> bool {
    *v == 0.0
}

fn schema(entry: &str, field: &str, reason: impl Into<String>) -> LibraryError {
    LibraryError::Schema {
        entry: entry.to_string(),
        field: field.to_string(),
        reason: reason.into(),
    }
}

fn lift(entry: &str, err: DielectricError) -> LibraryError {
    match err {
        DielectricError::InvalidParameter { field, reason } => schema(entry, field, reason),
        other => schema(entry, "model", other.to_string()),
    }
}

fn oscillators(entry: &str, terms: &[RawTerm]) -> Result<OscillatorModel, LibraryError> {
    for (i, t) in terms.iter().enumerate() {
        if !(t.strength > 0.0) {
            return Err(schema(
                entry,
                &format!("terms[{i}].strength"),
                format!("must be > 0, got {}", t.strength),
            ));
        }
        if !(t.frequency_ev > 0.0) {
            return Err(schema(
                entry,
                &format!("terms[{i}].frequency_ev"),
                format!("must be > 0, got {}", t.frequency_ev),
            ));
        }
        if !(t.damping_ev >= 0.0) {
            return Err(schema(
                entry,
                &format!("terms[{i}].damping_ev"),
                format!("must be >= 0, got {}", t.damping_ev),
            ));
        }
    }
    OscillatorModel::new(
        terms
            .iter()
            .map(|t| {
                Oscillator::new(t.strength, t.frequency_ev * EV_TO_RAD_PER_S)
                    .with_damping(t.damping_ev * EV_TO_RAD_PER_S)
            })
            .collect(),
    )
    .map_err(|e| lift(entry, e))
}

impl RawMaterial {
    fn reject(&self, field: &str, present: bool) -> Result<(), LibraryError> {
        if present {
            Err(schema(
                &self.name,
                field,
                format!("not allowed for kind `{}`", self.kind),
            ))
        } else {
            Ok(())
        }
    }

    fn build(&self) -> Result<Material, LibraryError> {
        let entry = self.name.as_str();
        if entry.trim().is_empty() {
            return Err(schema("<unnamed>", "name", "must not be empty"));
        }
        let model = match self.kind.as_str() {
            "oscillator" => {
                self.reject("plasma_ev", self.plasma_ev.is_some())?;
                self.reject("relaxation_ev", self.relaxation_ev.is_some())?;
                self.reject("samples", self.samples.is_some())?;
                let terms = self
                    .terms
                    .as_deref()
                    .ok_or_else(|| schema(entry, "terms", "required for kind `oscillator`"))?;
                DielectricModel::Oscillator(oscillators(entry, terms)?)
            }
            "drude" => {
                self.reject("samples", self.samples.is_some())?;
                let wp = self
                    .plasma_ev
                    .ok_or_else(|| schema(entry, "plasma_ev", "required for kind `drude`"))?;
                if !(wp > 0.0) {
                    return Err(schema(entry, "plasma_ev", format!("must be > 0, got {wp}")));
                }
                let nu = self.relaxation_ev.unwrap_or(0.0);
                if !(nu >= 0.0) {
                    return Err(schema(
                        entry,
                        "relaxation_ev",
                        format!("must be >= 0, got {nu}"),
                    ));
                }
                let drude = DrudeModel::new(wp * EV_TO_RAD_PER_S, nu * EV_TO_RAD_PER_S)
                    .map_err(|e| lift(entry, e))?;
                match self.terms.as_deref() {
                    None | Some([]) => DielectricModel::Drude(drude),
                    Some(terms) => DielectricModel::Composite(vec![
                        DielectricModel::Drude(drude),
                        DielectricModel::Oscillator(oscillators(entry, terms)?),
                    ]),
                }
            }
            "tabulated" => {
                self.reject("plasma_ev", self.plasma_ev.is_some())?;
                self.reject("relaxation_ev", self.relaxation_ev.is_some())?;
                self.reject("terms", self.terms.is_some())?;
                let samples = self
                    .samples
                    .as_deref()
                    .ok_or_else(|| schema(entry, "samples", "required for kind `tabulated`"))?;
                let samples = samples
                    .iter()
                    .map(|[xi_ev, eps]| (xi_ev * EV_TO_RAD_PER_S, *eps))
                    .collect();
                DielectricModel::Tabulated(
                    TabulatedModel::new(samples).map_err(|e| lift(entry, e))?,
                )
            }
            other => {
                return Err(schema(
                    entry,
                    "kind",
                    format!("expected oscillator | drude | tabulated, got `{other}`"),
                ))
            }
        };
        Ok(Material {
            name: self.name.clone(),
            model,
            source: self.source.clone(),
        })
    }

    fn from_material(m: &Material) -> Result<Self, LibraryError> {
        let term = |o: &Oscillator| RawTerm {
            strength: o.strength,
            frequency_ev: o.frequency / EV_TO_RAD_PER_S,
            damping_ev: o.damping / EV_TO_RAD_PER_S,
        };
        let mut raw = RawMaterial {
            name: m.name.clone(),
            kind: String::new(),
            source: m.source.clone(),
            plasma_ev: None,
            relaxation_ev: None,
            terms: None,
            samples: None,
        };
        let unsupported = || {
            schema(
                &m.name,
                "model",
                "composite layout has no .matlib representation",
            )
        };
        match &m.model {
            DielectricModel::Oscillator(o) => {
                raw.kind = "oscillator".into();
                raw.terms = Some(o.terms().iter().map(term).collect());
            }
            DielectricModel::Drude(d) => {
                raw.kind = "drude".into();
                raw.plasma_ev = Some(d.plasma_frequency() / EV_TO_RAD_PER_S);
                raw.relaxation_ev = Some(d.relaxation_rate() / EV_TO_RAD_PER_S);
            }
            DielectricModel::Tabulated(t) => {
                raw.kind = "tabulated".into();
                raw.samples = Some(
                    t.samples()
                        .map(|(xi, eps)| [xi / EV_TO_RAD_PER_S, eps])
                        .collect(),
                );
            }
            DielectricModel::Composite(parts) => match parts.as_slice() {
                [DielectricModel::Drude(d), DielectricModel::Oscillator(o)] => {
                    raw.kind = "drude".into();
                    raw.plasma_ev = Some(d.plasma_frequency() / EV_TO_RAD_PER_S);
                    raw.relaxation_ev = Some(d.relaxation_rate() / EV_TO_RAD_PER_S);
                    raw.terms = Some(o.terms().iter().map(term).collect());
                }
                _ => return Err(unsupported()),
            },
        }
        Ok(raw)
    }
}

impl MaterialLibrary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Library shipped with the crate (`materials/default.matlib`).
    pub fn builtin() -> Self {
        Self::parse(DEFAULT_LIBRARY).expect("bundled material library is valid")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, LibraryError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| LibraryError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, LibraryError> {
        let raw: RawFile = toml::from_str(text).map_err(|e| LibraryError::Parse(e.to_string()))?;
        let mut lib = Self::new();
        for entry in &raw.material {
            lib.insert(entry.build()?)?;
        }
        Ok(lib)
    }

    pub fn insert(&mut self, material: Material) -> Result<(), LibraryError> {
        if self.get(&material.name).is_some() {
            return Err(LibraryError::DuplicateName(material.name));
        }
        self.materials.push(material);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Material> {
        self.materials.iter().find(|m| m.name == name)
    }

    pub fn require(&self, name: &str) -> Result<&Material, LibraryError> {
        self.get(name)
            .ok_or_else(|| LibraryError::UnknownMaterial(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.materials.iter().map(|m| m.name.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Material> {
        self.materials.iter()
    }

    pub fn len(&self) -> usize {
        self.materials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.materials.is_empty()
    }

    /// Serializes to the `.matlib` format accepted by [`MaterialLibrary::parse`].
    pub fn to_matlib_string(&self) -> Result<String, LibraryError> {
        let mut seen = HashSet::new();
        let material = self
            .materials
            .iter()
            .map(|m| {
                if !seen.insert(m.name.as_str()) {
                    return Err(LibraryError::DuplicateName(m.name.clone()));
                }
                RawMaterial::from_material(m)
            })
            .collect::<Result<Vec<_>, _>>()?;
        toml::to_string(&RawFile { material }).map_err(|e| LibraryError::Parse(e.to_string()))
    }
}

/// Loads and validates a `.matlib` file.
pub fn load_material_library(path: impl AsRef<Path>) -> Result<MaterialLibrary, LibraryError> {
    MaterialLibrary::load(path)
}
