//! The work behind each command-line subcommand. Every function returns a
//! serializable report; the binary only parses flags and writes output.

use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::chaos::{
    backward_sequence, check_condition_i, check_condition_ii, injective_forward_criterion, boundedness_equivalence_check, level_sets,
    record_lows, condition_battery, BatteryReport, ChaosError, ConditionIEvidence, ConditionIIEvidence, CriterionWindow,
    FamilyMember, InjectiveForwardEvidence, BoundednessEquivalenceReport,
};
use crate::demo::{demo, DEMO_NAMES};
use crate::dynamics::{
    irregular_evidence_escalated, orbit_norms, semi_irregular_evidence, DynamicsError, IrregularEvidence, OrbitReport,
    SemiIrregularEvidence, Trend,
};
use crate::orlicz::{indicator_norm, luxemburg_norm, modular, orlicz_norm, OrliczError, SimpleFunction};
use crate::report::{ext, ext_opt, fmt_ext, indexed_csv, plot_tsv, to_json};
use crate::space::{boundedness_constant, MeasurableSet, SpaceError};
use crate::system::{load, SystemDefinition, SystemError, SystemSpec};
use crate::young::YoungFunction;

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    System(#[from] SystemError),
    #[error("system '{system}' has no {kind} named '{name}'")]
    UnknownName { system: String, kind: &'static str, name: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Chaos(#[from] ChaosError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Orlicz(#[from] OrliczError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
}

fn is_cap(e: &SpaceError) -> bool {
    matches!(e, SpaceError::SetExplosion { .. } | SpaceError::InfiniteFiber { .. })
}

impl CommandError {
    /// 2 for bad input, 3 when a preimage hit a size cap, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        let space = match self {
            CommandError::Space(e) => Some(e),
            CommandError::Dynamics(DynamicsError::Space(e)) => Some(e),
            CommandError::Chaos(ChaosError::Space(e)) => Some(e),
            CommandError::Chaos(ChaosError::Dynamics(DynamicsError::Space(e))) => Some(e),
            _ => None,
        };
        if space.is_some_and(is_cap) {
            return 3;
        }
        match self {
            CommandError::System(SystemError::Io { .. }) | CommandError::Write { .. } => 1,
            CommandError::System(_) | CommandError::UnknownName { .. } | CommandError::Usage(_) => 2,
            CommandError::Chaos(
                ChaosError::InvalidInput(_) | ChaosError::ZeroVector | ChaosError::DegenerateSet { .. } | ChaosError::NotDeclaredInjective,
            ) => 2,
            _ => 1,
        }
    }
}

/// Where a system comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    File(PathBuf),
    Demo(String),
}

impl Source {
    pub fn load(&self) -> Result<SystemDefinition, CommandError> {
        Ok(match self {
            Source::File(p) => load(p)?,
            Source::Demo(name) => demo(name)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Vector(String),
    Set(String),
}

/// Window overrides from the command line.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub horizon: Option<usize>,
    pub threshold: Option<f64>,
    pub floor: Option<f64>,
    pub semi_floor: Option<f64>,
    pub seed: Option<u64>,
}

impl Overrides {
    pub fn apply(&self, base: CriterionWindow) -> Result<CriterionWindow, CommandError> {
        let w = CriterionWindow {
            horizon: self.horizon.unwrap_or(base.horizon),
            divergence_threshold: self.threshold.unwrap_or(base.divergence_threshold),
            positivity_floor: self.floor.unwrap_or(base.positivity_floor),
            semi_irregular_floor: self.semi_floor.unwrap_or(base.semi_irregular_floor),
            seed: self.seed.unwrap_or(base.seed),
            ..base
        };
        w.validate()?;
        Ok(w)
    }
}

/// A resolved target: its label, the vector, and the set when it is one.
pub struct Resolved {
    pub label: String,
    pub vector: SimpleFunction,
    pub set: Option<MeasurableSet>,
}

pub fn resolve(sys: &SystemDefinition, target: &Target) -> Result<Resolved, CommandError> {
    let unknown = |kind, name: &String| CommandError::UnknownName { system: sys.name.clone(), kind, name: name.clone() };
    match target {
        Target::Vector(name) => {
            let v = sys.vectors.get(name).ok_or_else(|| unknown("vector", name))?;
            Ok(Resolved { label: name.clone(), vector: v.clone(), set: None })
        }
        Target::Set(name) => {
            let s = sys.sets.get(name).ok_or_else(|| unknown("set", name))?;
            Ok(Resolved { label: name.clone(), vector: SimpleFunction::indicator(s), set: Some(s.clone()) })
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NormOutput {
    pub system: String,
    pub target: String,
    pub young: YoungFunction,
    pub support: MeasurableSet,
    #[serde(serialize_with = "ext")]
    pub support_measure: f64,
    #[serde(serialize_with = "ext")]
    pub luxemburg: f64,
    #[serde(serialize_with = "ext")]
    pub orlicz: f64,
    /// `I_Φ(f / N_Φ(f))`, at most 1.
    #[serde(serialize_with = "ext")]
    pub modular_at_norm: f64,
    /// `1 / Φ⁻¹(1/μ(F))` for a set target.
    #[serde(serialize_with = "ext_opt")]
    pub closed_form: Option<f64>,
    /// Relative gap between `luxemburg` and `closed_form`.
    #[serde(serialize_with = "ext_opt")]
    pub delta: Option<f64>,
}

impl NormOutput {
    pub fn to_csv(&self) -> String {
        format!(
            "target,luxemburg,orlicz,modular_at_norm\n{},{},{},{}\n",
            self.target,
            fmt_ext(self.luxemburg),
            fmt_ext(self.orlicz),
            fmt_ext(self.modular_at_norm)
        )
    }
}

pub fn run_norm(sys: &SystemDefinition, target: &Target) -> Result<NormOutput, CommandError> {
    let r = resolve(sys, target)?;
    let lux = luxemburg_norm(&sys.phi, &sys.space, &r.vector);
    let support = r.vector.support_set();
    let closed_form = r.set.as_ref().map(|s| indicator_norm(&sys.phi, &sys.space, s)).transpose()?;
    Ok(NormOutput {
        system: sys.name.clone(),
        target: r.label,
        young: sys.phi.clone(),
        support_measure: sys.space.measure(&support),
        support,
        luxemburg: lux,
        orlicz: orlicz_norm(&sys.phi, &sys.space, &r.vector),
        modular_at_norm: if lux > 0.0 { modular(&sys.phi, &sys.space, &r.vector, lux) } else { 0.0 },
        closed_form,
        delta: closed_form.map(|c| (lux - c).abs() / c),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitOutput {
    pub system: String,
    pub target: String,
    pub window: CriterionWindow,
    pub orbit: OrbitReport,
    pub irregular: IrregularEvidence,
    pub semi_irregular: SemiIrregularEvidence,
}

impl OrbitOutput {
    pub fn to_csv(&self) -> String {
        indexed_csv(&["n", "norm"], &[&self.orbit.norms])
    }

    pub fn to_tsv(&self) -> String {
        plot_tsv(&self.orbit.norms)
    }
}

/// Evidence thresholds for the orbit command.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitThresholds {
    pub eps: f64,
    pub blowup: f64,
}

impl Default for OrbitThresholds {
    fn default() -> Self {
        Self { eps: 1e-3, blowup: 1e3 }
    }
}

pub fn run_orbit(
    sys: &SystemDefinition,
    target: &Target,
    overrides: &Overrides,
    thresholds: OrbitThresholds,
) -> Result<OrbitOutput, CommandError> {
    let r = resolve(sys, target)?;
    let window = overrides.apply(sys.window)?;
    let orbit = orbit_norms(&sys.phi, &sys.space, &sys.map, &r.vector, window.horizon)?;
    let irregular = irregular_evidence_escalated(
        &sys.phi,
        &sys.space,
        &sys.map,
        &r.vector,
        window.horizon,
        thresholds.eps,
        thresholds.blowup,
    )?;
    let semi_irregular = semi_irregular_evidence(&orbit, thresholds.eps, window.semi_irregular_floor);
    Ok(OrbitOutput { system: sys.name.clone(), target: r.label, window, orbit, irregular, semi_irregular })
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitSummary {
    #[serde(serialize_with = "ext")]
    pub min_norm: f64,
    pub argmin: usize,
    #[serde(serialize_with = "ext")]
    pub max_norm: f64,
    pub argmax: usize,
    pub trend: Trend,
}

impl From<&OrbitReport> for OrbitSummary {
    fn from(r: &OrbitReport) -> Self {
        Self { min_norm: r.min_norm, argmin: r.argmin, max_norm: r.max_norm, argmax: r.argmax, trend: r.trend }
    }
}

/// Everything the chaos command found for one target.
#[derive(Debug, Clone, Serialize)]
pub struct ChaosVerdict {
    pub system: String,
    pub target: String,
    pub window: CriterionWindow,
    /// Both conditions witnessed on the window.
    pub witnessed: bool,
    pub families: Vec<FamilyMember>,
    pub beta: Vec<usize>,
    pub orbit: OrbitSummary,
    pub condition_i: Option<ConditionIEvidence>,
    pub condition_ii: ConditionIIEvidence,
    pub note: Option<String>,
    pub injective_forward: Option<InjectiveForwardEvidence>,
    pub boundedness: Option<BoundednessEquivalenceReport>,
    pub battery: Option<BatteryReport>,
    pub audit_violations: usize,
    /// `Φ⁻¹(1/μ(φ⁻ⁿF_i))` for `n = 0..=N`, per family member.
    #[serde(skip)]
    pub sequences: Vec<(String, Vec<f64>)>,
}

impl ChaosVerdict {
    pub fn sequences_csv(&self) -> String {
        let header: Vec<String> =
            std::iter::once("n".to_string()).chain(self.sequences.iter().map(|(id, _)| format!("s_{id}"))).collect();
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        let cols: Vec<&[f64]> = self.sequences.iter().map(|(_, v)| v.as_slice()).collect();
        indexed_csv(&header, &cols)
    }
}

pub fn run_chaos(
    sys: &SystemDefinition,
    target: &Target,
    overrides: &Overrides,
    battery: bool,
) -> Result<ChaosVerdict, CommandError> {
    let r = resolve(sys, target)?;
    let window = overrides.apply(sys.window)?;
    if r.vector.is_zero() {
        return Err(ChaosError::ZeroVector.into());
    }
    let (phi, space, t) = (&sys.phi, &sys.space, &sys.map);

    let families: Vec<FamilyMember> =
        level_sets(&r.vector).into_iter().map(|l| FamilyMember::new(format!("F_{}", l.index), l.set)).collect();
    let orbit = orbit_norms(phi, space, t, &r.vector, window.horizon)?;
    let beta = record_lows(&orbit.norms);
    let (condition_i, note) = if beta.is_empty() {
        (None, Some(ChaosError::NoSmallNorms.to_string()))
    } else {
        (Some(check_condition_i(phi, space, t, &families, &beta, &window)?), None)
    };
    let condition_ii = check_condition_ii(phi, space, t, &families, &window)?;
    let witnessed = condition_i.as_ref().is_some_and(|c| c.witnessed) && condition_ii.witnessed;

    let injective_forward = match &r.set {
        Some(s) if t.is_declared_injective() => Some(injective_forward_criterion(phi, space, t, s, &window)?),
        _ => None,
    };
    let (boundedness, battery) = if battery {
        let set = r.set.clone().unwrap_or_else(|| r.vector.support_set());
        (Some(boundedness_equivalence_check(phi, space, t, &window)?), Some(condition_battery(phi, space, t, &set, &window)?))
    } else {
        (None, None)
    };
    let audit_violations = battery.as_ref().map_or(0, |b| b.violations().len());

    let mut sequences = Vec::with_capacity(families.len());
    for m in &families {
        sequences.push((m.id.clone(), backward_sequence(phi, space, t, &m.set, window.horizon)?));
    }
    Ok(ChaosVerdict {
        system: sys.name.clone(),
        target: r.label,
        window,
        witnessed,
        families,
        beta,
        orbit: OrbitSummary::from(&orbit),
        condition_i,
        condition_ii,
        note,
        injective_forward,
        boundedness,
        battery,
        audit_violations,
        sequences,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DemoVectorSummary {
    pub orbit: OrbitSummary,
    pub chaos_witnessed: bool,
    pub condition_i: Option<bool>,
    pub condition_ii: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DemoOutput {
    pub system: SystemSpec,
    /// `sup w(φ⁻¹a)/w(a)` over the set window.
    #[serde(serialize_with = "ext")]
    pub boundedness_constant: f64,
    pub vectors: std::collections::BTreeMap<String, DemoVectorSummary>,
}

impl DemoOutput {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("vector,min_norm,max_norm,trend,condition_i,condition_ii,chaos_witnessed\n");
        for (name, v) in &self.vectors {
            out.push_str(&format!(
                "{name},{},{},{:?},{},{},{}\n",
                fmt_ext(v.orbit.min_norm),
                fmt_ext(v.orbit.max_norm),
                v.orbit.trend,
                v.condition_i.map_or("none".to_string(), |b| b.to_string()),
                v.condition_ii,
                v.chaos_witnessed
            ));
        }
        out
    }
}

/// Loads a demo and runs the chaos checks on each of its vectors.
pub fn run_demo(name: &str, overrides: &Overrides) -> Result<DemoOutput, CommandError> {
    let sys = demo(name)?;
    let window = overrides.apply(sys.window)?;
    let (lo, hi) = window.set_window;
    let k = boundedness_constant(&sys.space, &sys.map, lo, hi)?;
    let mut vectors = std::collections::BTreeMap::new();
    for v in sys.vectors.keys() {
        let verdict = run_chaos(&sys, &Target::Vector(v.clone()), overrides, false)?;
        vectors.insert(
            v.clone(),
            DemoVectorSummary {
                orbit: verdict.orbit,
                chaos_witnessed: verdict.witnessed,
                condition_i: verdict.condition_i.map(|c| c.witnessed),
                condition_ii: verdict.condition_ii.witnessed,
            },
        );
    }
    Ok(DemoOutput { system: sys.spec, boundedness_constant: k.sup_ratio, vectors })
}

pub fn demo_names() -> &'static [&'static str] {
    &DEMO_NAMES
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidateOutput {
    pub name: String,
    pub valid: bool,
    pub vectors: Vec<String>,
    pub sets: Vec<String>,
    pub window: CriterionWindow,
    pub injective: bool,
    pub total_finite: bool,
}

impl ValidateOutput {
    pub fn to_csv(&self) -> String {
        format!("name,valid\n{},{}\n", self.name, self.valid)
    }
}

pub fn run_validate(source: &Source) -> Result<ValidateOutput, CommandError> {
    let sys = source.load()?;
    Ok(ValidateOutput {
        name: sys.name.clone(),
        valid: true,
        vectors: sys.vectors.keys().cloned().collect(),
        sets: sys.sets.keys().cloned().collect(),
        window: sys.window,
        injective: sys.flags.injective,
        total_finite: sys.space.total_finite(),
    })
}

/// Writes `contents` to `dir/file`, creating `dir` if needed.
pub fn write_output(dir: &Path, file: &str, contents: &str) -> Result<PathBuf, CommandError> {
    let path = dir.join(file);
    let wrap = |source| CommandError::Write { path: path.display().to_string(), source };
    std::fs::create_dir_all(dir).map_err(wrap)?;
    std::fs::write(&path, contents).map_err(wrap)?;
    Ok(path)
}

/// Pretty JSON for any report.
pub fn json<T: Serialize>(value: &T) -> String {
    to_json(value)
}
