//! System definition files: a Young function, an atomic space, a map, named
//! vectors and sets, and window defaults. Loading runs every space and map
//! contract on the declared window.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chaos::CriterionWindow;
use crate::orlicz::SimpleFunction;
use crate::space::{Atom, AtomDomain, AtomicSpace, MapRule, MeasurableSet, Transformation, WeightRule};
use crate::young::YoungFunction;

#[derive(Debug, Error)]
pub enum SystemError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error at {field}: {message}")]
    Validation { field: String, message: String },
}

fn invalid(field: impl Into<String>, message: impl ToString) -> SystemError {
    SystemError::Validation { field: field.into(), message: message.to_string() }
}

/// JSON object keys are strings; atom-keyed tables parse them as integers.
mod atom_keys {
    use std::collections::BTreeMap;

    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::space::Atom;

    pub fn serialize<S: Serializer, V: Serialize>(m: &BTreeMap<Atom, V>, s: S) -> Result<S::Ok, S::Error> {
        let keyed: BTreeMap<String, &V> = m.iter().map(|(k, v)| (k.to_string(), v)).collect();
        keyed.serialize(s)
    }

    pub fn deserialize<'de, D, V>(d: D) -> Result<BTreeMap<Atom, V>, D::Error>
    where
        D: Deserializer<'de>,
        V: Deserialize<'de>,
    {
        BTreeMap::<String, V>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| k.trim().parse::<Atom>().map(|a| (a, v)).map_err(|_| D::Error::custom(format!("atom key '{k}' is not an integer"))))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum YoungSpec {
    Power { params: [f64; 1] },
    PlainPower { params: [f64; 1] },
    ExpMinusOne { params: [f64; 1] },
    Piecewise {
        params: Vec<[f64; 2]>,
        tail_slope: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        finite_limit: Option<f64>,
    },
}

impl YoungSpec {
    pub fn build(&self) -> Result<YoungFunction, SystemError> {
        let r = match self {
            YoungSpec::Power { params } => YoungFunction::power(params[0]),
            YoungSpec::PlainPower { params } => YoungFunction::plain_power(params[0]),
            YoungSpec::ExpMinusOne { params } => YoungFunction::exp_minus_one(params[0]),
            YoungSpec::Piecewise { params, tail_slope, finite_limit } => {
                YoungFunction::piecewise(params.iter().map(|k| (k[0], k[1])).collect(), *tail_slope, *finite_limit)
            }
        };
        r.map_err(|e| invalid("young", e))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AtomsSpec {
    Integers,
    NonNegative,
    Finite { indices: Vec<Atom> },
    Range { start: Atom, end: Atom },
}

fn one() -> f64 {
    1.0
}

fn unit_step() -> i64 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case", deny_unknown_fields)]
pub enum WeightSpec {
    Geometric { ratio: f64 },
    Uniform { value: f64 },
    Table {
        #[serde(with = "atom_keys")]
        entries: BTreeMap<Atom, f64>,
    },
    BlockOscillating {
        #[serde(default = "one")]
        base: f64,
        up_factor: f64,
        down_factor: f64,
        block_lengths: Vec<u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub atoms: AtomsSpec,
    pub weight: WeightSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "map", rename_all = "snake_case", deny_unknown_fields)]
pub enum MapSpec {
    Shift { step: i64 },
    Rotation {
        modulus: i64,
        #[serde(default = "unit_step")]
        step: i64,
    },
    Table {
        #[serde(with = "atom_keys")]
        entries: BTreeMap<Atom, Atom>,
    },
    Halving,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorSpec {
    pub support: Vec<Atom>,
    pub values: Vec<f64>,
}

/// Window defaults; missing fields fall back to [`CriterionWindow::default`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set_window: Option<[Atom; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divergence_threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positivity_floor: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semi_irregular_floor: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidates: Option<usize>,
}

impl WindowSpec {
    pub fn build(&self) -> CriterionWindow {
        let d = CriterionWindow::default();
        CriterionWindow {
            horizon: self.horizon.unwrap_or(d.horizon),
            set_window: self.set_window.map_or(d.set_window, |w| (w[0], w[1])),
            divergence_threshold: self.divergence_threshold.unwrap_or(d.divergence_threshold),
            positivity_floor: self.positivity_floor.unwrap_or(d.positivity_floor),
            semi_irregular_floor: self.semi_irregular_floor.unwrap_or(d.semi_irregular_floor),
            candidates: self.candidates.unwrap_or(d.candidates),
            seed: d.seed,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    #[serde(default)]
    pub injective: bool,
    #[serde(default)]
    pub total_finite: bool,
}

/// The on-disk form of a system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub name: String,
    pub young: YoungSpec,
    pub space: SpaceSpec,
    pub map: MapSpec,
    #[serde(default)]
    pub vectors: BTreeMap<String, VectorSpec>,
    #[serde(default)]
    pub sets: BTreeMap<String, Vec<Atom>>,
    #[serde(default)]
    pub window: WindowSpec,
    #[serde(default)]
    pub flags: Flags,
}

impl SystemSpec {
    pub fn from_json(text: &str) -> Result<Self, SystemError> {
        serde_json::from_str(text).map_err(|e| SystemError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        crate::report::to_json(self)
    }
}

/// A validated system, ready for analysis.
#[derive(Debug, Clone)]
pub struct SystemDefinition {
    pub name: String,
    pub phi: YoungFunction,
    pub space: AtomicSpace,
    pub map: Transformation,
    pub vectors: BTreeMap<String, SimpleFunction>,
    pub sets: BTreeMap<String, MeasurableSet>,
    pub window: CriterionWindow,
    pub flags: Flags,
    pub spec: SystemSpec,
}

/// Reads, parses and validates a system file.
pub fn load(path: &Path) -> Result<SystemDefinition, SystemError> {
    let text = std::fs::read_to_string(path).map_err(|source| SystemError::Io { path: path.display().to_string(), source })?;
    SystemDefinition::from_spec(SystemSpec::from_json(&text)?)
}

impl SystemDefinition {
    pub fn from_spec(spec: SystemSpec) -> Result<Self, SystemError> {
        let phi = spec.young.build()?;
        let window = spec.window.build();
        window.validate().map_err(|e| invalid("window", e))?;

        let domain = match &spec.space.atoms {
            AtomsSpec::Integers => AtomDomain::Integers,
            AtomsSpec::NonNegative => AtomDomain::NonNegative,
            AtomsSpec::Finite { indices } => {
                if indices.is_empty() {
                    return Err(invalid("space.atoms.indices", "finite atom list is empty"));
                }
                AtomDomain::Finite { indices: indices.clone() }
            }
            AtomsSpec::Range { start, end } => {
                if start > end {
                    return Err(invalid("space.atoms", format!("range {start}..={end} is empty")));
                }
                AtomDomain::Finite { indices: (*start..=*end).collect() }
            }
        };
        let rule = match &spec.space.weight {
            WeightSpec::Geometric { ratio } => WeightRule::Geometric { ratio: *ratio },
            WeightSpec::Uniform { value } => WeightRule::Uniform { value: *value },
            WeightSpec::Table { entries } => WeightRule::Table { entries: entries.clone() },
            WeightSpec::BlockOscillating { base, up_factor, down_factor, block_lengths } => WeightRule::BlockOscillating {
                base: *base,
                up_factor: *up_factor,
                down_factor: *down_factor,
                block_lengths: block_lengths.clone(),
            },
        };
        let mut space = AtomicSpace::new(domain, rule).map_err(|e| invalid("space.weight", e))?;

        // atoms on which every contract is checked
        let (lo, hi) = window.set_window;
        let check_atoms: Vec<Atom> = match space.domain() {
            AtomDomain::Finite { indices } => indices.clone(),
            d => d.atoms_in(lo, hi),
        };
        for &a in &check_atoms {
            space.checked_weight(a).map_err(|e| invalid("space.weight", e))?;
        }

        if spec.flags.total_finite {
            let total = match (spec.space.total, space.domain()) {
                (Some(t), _) => t,
                (None, AtomDomain::Finite { indices }) => indices.iter().map(|&a| space.weight(a)).sum(),
                (None, _) => {
                    return Err(invalid("space.total", "total_finite is set but no total is declared for an infinite atom domain"))
                }
            };
            space = space.with_total(total).map_err(|e| invalid("space.total", e))?;
            let partial: f64 = check_atoms.iter().map(|&a| space.weight(a)).sum();
            if partial > total * (1.0 + 1e-9) {
                return Err(invalid(
                    "space.total",
                    format!("weights over the checked atoms sum to {partial}, above the declared total {total}"),
                ));
            }
        }

        let rule = match &spec.map {
            MapSpec::Shift { step } => MapRule::Shift { step: *step },
            MapSpec::Rotation { modulus, step } => MapRule::Rotation { modulus: *modulus, step: *step },
            MapSpec::Table { entries } => {
                if !matches!(space.domain(), AtomDomain::Finite { .. }) {
                    return Err(invalid("map", "a table map needs a finite atom domain"));
                }
                MapRule::Table { forward: entries.clone() }
            }
            MapSpec::Halving => MapRule::Halving,
        };
        let map = Transformation::new(rule, spec.flags.injective).map_err(|e| invalid("map", e))?;
        for &a in &check_atoms {
            if let MapSpec::Table { entries } = &spec.map {
                if !entries.contains_key(&a) {
                    return Err(invalid("map.entries", format!("atom {a} has no image")));
                }
            }
            let image = map.forward(a);
            if !space.domain().contains(image) {
                return Err(invalid("map", format!("atom {a} maps to {image}, outside the atom domain")));
            }
            let fiber = map.preimage(a).map_err(|e| invalid("map", e))?;
            for b in fiber {
                if !space.domain().contains(b) {
                    return Err(invalid("map", format!("atom {b} in the fiber of {a} is outside the atom domain")));
                }
                if map.forward(b) != a {
                    return Err(invalid("map", format!("atom {b} is in the fiber of {a} but maps to {}", map.forward(b))));
                }
            }
        }
        if spec.flags.injective {
            map.verify_injective(&check_atoms).map_err(|e| invalid("flags.injective", e))?;
        }

        let mut vectors = BTreeMap::new();
        for (name, v) in &spec.vectors {
            let field = format!("vectors.{name}");
            if let Some(a) = v.support.iter().find(|a| !space.domain().contains(**a)) {
                return Err(invalid(field, format!("atom {a} is outside the atom domain")));
            }
            let f = SimpleFunction::new(v.support.clone(), v.values.clone()).map_err(|e| invalid(field.clone(), e))?;
            for a in f.support() {
                space.checked_weight(*a).map_err(|e| invalid(field.clone(), e))?;
            }
            vectors.insert(name.clone(), f);
        }
        let mut sets = BTreeMap::new();
        for (name, atoms) in &spec.sets {
            let field = format!("sets.{name}");
            if atoms.is_empty() {
                return Err(invalid(field, "set is empty"));
            }
            for &a in atoms {
                space.checked_weight(a).map_err(|e| invalid(field.clone(), e))?;
            }
            sets.insert(name.clone(), MeasurableSet::new(atoms.iter().copied()));
        }

        Ok(Self { name: spec.name.clone(), phi, space, map, vectors, sets, window, flags: spec.flags, spec })
    }

    /// A copy with a different Young function (used for the L^p comparison).
    pub fn with_young(&self, young: YoungSpec) -> Result<Self, SystemError> {
        let mut spec = self.spec.clone();
        spec.young = young;
        Self::from_spec(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{
        "name": "t",
        "young": {"family": "plain_power", "params": [2.0]},
        "space": {"atoms": {"kind": "range", "start": 0, "end": 3}, "weight": {"rule": "uniform", "value": 1.0}},
        "map": {"map": "rotation", "modulus": 4},
        "vectors": {"v": {"support": [0, 2], "values": [1.0, -3.0]}},
        "sets": {"F0": [1]},
        "window": {"horizon": 10, "set_window": [0, 3]},
        "flags": {"injective": true, "total_finite": true}
    }"#;

    #[test]
    fn loads_base_system() {
        let s = SystemDefinition::from_spec(SystemSpec::from_json(BASE).unwrap()).unwrap();
        assert_eq!(s.space.total(), Some(4.0));
        assert_eq!(s.window.horizon, 10);
        assert_eq!(s.vectors["v"].get(2), -3.0);
    }

    #[test]
    fn unknown_fields_are_parse_errors() {
        let text = BASE.replace("\"name\": \"t\"", "\"name\": \"t\", \"extra\": 1");
        assert!(matches!(SystemSpec::from_json(&text), Err(SystemError::Parse(_))));
    }

    #[test]
    fn negative_weight_names_the_atom() {
        let text = BASE.replace(
            r#"{"rule": "uniform", "value": 1.0}"#,
            r#"{"rule": "table", "entries": {"0": 1.0, "1": 1.0, "2": -0.5, "3": 1.0}}"#,
        );
        let err = SystemDefinition::from_spec(SystemSpec::from_json(&text).unwrap()).unwrap_err();
        assert!(err.to_string().contains("atom 2"), "{err}");
    }

    #[test]
    fn table_collision_contradicts_injective_flag() {
        let text = BASE.replace(
            r#"{"map": "rotation", "modulus": 4}"#,
            r#"{"map": "table", "entries": {"0": 1, "1": 2, "2": 1, "3": 0}}"#,
        );
        let err = SystemDefinition::from_spec(SystemSpec::from_json(&text).unwrap()).unwrap_err();
        match err {
            SystemError::Validation { field, .. } => assert_eq!(field, "flags.injective"),
            e => panic!("unexpected {e}"),
        }
        // collision oracle: two keys share the image 1
        let fwd = [(0, 1), (1, 2), (2, 1), (3, 0)];
        assert!(fwd.iter().any(|a| fwd.iter().any(|b| a.0 != b.0 && a.1 == b.1)));
    }

    #[test]
    fn shift_off_the_nonnegative_domain_is_rejected() {
        let text = BASE
            .replace(r#"{"kind": "range", "start": 0, "end": 3}"#, r#"{"kind": "non_negative"}"#)
            .replace(r#"{"map": "rotation", "modulus": 4}"#, r#"{"map": "shift", "step": 1}"#)
            .replace(r#""total_finite": true"#, r#""total_finite": false"#);
        let err = SystemDefinition::from_spec(SystemSpec::from_json(&text).unwrap()).unwrap_err();
        assert!(matches!(err, SystemError::Validation { .. }));
    }

    #[test]
    fn total_finite_needs_a_total_on_infinite_domains() {
        let text = BASE
            .replace(r#"{"kind": "range", "start": 0, "end": 3}"#, r#"{"kind": "integers"}"#)
            .replace(r#"{"map": "rotation", "modulus": 4}"#, r#"{"map": "shift", "step": 1}"#);
        let err = SystemDefinition::from_spec(SystemSpec::from_json(&text).unwrap()).unwrap_err();
        assert!(err.to_string().contains("space.total"));
    }

    #[test]
    fn unresolved_set_atom_is_rejected() {
        let text = BASE.replace(r#""F0": [1]"#, r#""F0": [9]"#);
        assert!(SystemDefinition::from_spec(SystemSpec::from_json(&text).unwrap()).is_err());
    }

    #[test]
    fn spec_round_trips() {
        let spec = SystemSpec::from_json(BASE).unwrap();
        assert_eq!(SystemSpec::from_json(&spec.to_json()).unwrap(), spec);
    }
}
