//! Finite-horizon checkers for the chaos criteria of composition operators:
//! conditions (I) and (II) on set families, witness extraction from a vector,
//! the forward-image criterion for injective maps, the boundedness/inverse
//! equivalence check, and the seven-item battery with its implication audit.
//!
//! Every asymptotic quantifier is truncated to a [`CriterionWindow`], and the
//! window travels with every report.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::dynamics::{orbit_norms, DynamicsError};
use crate::orlicz::{OrliczError, SimpleFunction};
use crate::report::{ext, ext_map, ext_opt, ext_seq};
use crate::space::{Atom, AtomicSpace, MeasurableSet, SpaceError, Transformation};
use crate::young::{YoungError, YoungFunction};

pub mod battery;
mod candidates;
pub mod equivalence;

pub use battery::{condition_battery, AuditEntry, AuditStatus, BatteryReport, Check, Comparison, Hypotheses, ItemEvidence};
pub use candidates::{candidate_sets, Candidate};
pub use equivalence::{boundedness_equivalence_check, BoundednessEquivalenceReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChaosError {
    #[error("the zero vector has no level sets")]
    ZeroVector,
    #[error("no step n >= 1 in the window has a norm below all earlier norms")]
    NoSmallNorms,
    #[error("set {set} has measure zero")]
    DegenerateSet { set: String },
    #[error("map is not declared injective")]
    NotDeclaredInjective,
    #[error("injectivity violated: {0}")]
    InjectivityViolation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Young(#[from] YoungError),
    #[error(transparent)]
    Orlicz(#[from] OrliczError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

/// The truncation of every "for all n" and "for all F" claim.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriterionWindow {
    /// `N`: steps `0..=N` are examined; the tail is `[⌈N/2⌉, N]`.
    pub horizon: usize,
    /// Atoms from which candidate sets are drawn.
    pub set_window: (Atom, Atom),
    /// `M`: a sequence "diverges" once it reaches this value.
    pub divergence_threshold: f64,
    /// Lower bound standing in for `liminf > 0`.
    pub positivity_floor: f64,
    /// Norm level standing in for `limsup > 0` in semi-irregularity.
    pub semi_irregular_floor: f64,
    /// Random candidate sets on top of singletons and dyadic blocks.
    pub candidates: usize,
    pub seed: u64,
}

impl Default for CriterionWindow {
    fn default() -> Self {
        Self {
            horizon: 1000,
            set_window: (-50, 50),
            divergence_threshold: 1e3,
            positivity_floor: 1e-6,
            semi_irregular_floor: 10.0,
            candidates: 200,
            seed: 42,
        }
    }
}

impl CriterionWindow {
    pub fn validate(&self) -> Result<(), ChaosError> {
        let bad = |m: String| Err(ChaosError::InvalidInput(m));
        if self.horizon < 1 {
            return bad("horizon must be at least 1".into());
        }
        if !(self.divergence_threshold > 1.0) {
            return bad(format!("divergence threshold {} must exceed 1", self.divergence_threshold));
        }
        if !(self.positivity_floor > 0.0) {
            return bad(format!("positivity floor {} must be positive", self.positivity_floor));
        }
        if !(self.semi_irregular_floor > 0.0) {
            return bad(format!("semi-irregular floor {} must be positive", self.semi_irregular_floor));
        }
        if self.set_window.0 > self.set_window.1 {
            return bad(format!("set window {:?} is empty", self.set_window));
        }
        Ok(())
    }

    pub fn with_horizon(mut self, horizon: usize) -> Self {
        self.horizon = horizon;
        self
    }

    pub fn tail_start(&self) -> usize {
        self.horizon.div_ceil(2)
    }
}

/// `Φ⁻¹(1/μ)`, with `μ = 0` read as `+inf`.
pub fn inverse_measure(phi: &YoungFunction, mu: f64) -> Result<f64, ChaosError> {
    if mu == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(phi.generalized_inverse(1.0 / mu)?)
}

/// `μ(φ⁻ⁿF)` for `n = 0..=n_max`.
pub fn preimage_measures(space: &AtomicSpace, t: &Transformation, set: &MeasurableSet, n_max: usize) -> Result<Vec<f64>, ChaosError> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut current = set.clone();
    for n in 0..=n_max {
        if n > 0 && !current.is_empty() {
            current = t.preimage_set(&current)?;
        }
        out.push(space.measure(&current));
    }
    Ok(out)
}

/// `μ(φⁿF)` for `n = 0..=n_max`.
pub fn forward_measures(space: &AtomicSpace, t: &Transformation, set: &MeasurableSet, n_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut current = set.clone();
    for n in 0..=n_max {
        if n > 0 {
            current = t.forward_image(&current, 1);
        }
        out.push(space.measure(&current));
    }
    out
}

/// `s⁻(n) = Φ⁻¹(1/μ(φ⁻ⁿF))`.
pub fn backward_sequence(phi: &YoungFunction, space: &AtomicSpace, t: &Transformation, set: &MeasurableSet, n_max: usize) -> Result<Vec<f64>, ChaosError> {
    preimage_measures(space, t, set, n_max)?.into_iter().map(|mu| inverse_measure(phi, mu)).collect()
}

/// `s⁺(n) = Φ⁻¹(1/μ(φⁿF))`.
pub fn forward_sequence(phi: &YoungFunction, space: &AtomicSpace, t: &Transformation, set: &MeasurableSet, n_max: usize) -> Result<Vec<f64>, ChaosError> {
    forward_measures(space, t, set, n_max).into_iter().map(|mu| inverse_measure(phi, mu)).collect()
}

/// A dyadic level set `{a : 2^(i-1) <= |f(a)| < 2^i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelSet {
    pub index: i32,
    pub set: MeasurableSet,
}

/// The `i` with `2^(i-1) <= v < 2^i`, for finite `v > 0`.
pub fn level_index(v: f64) -> i32 {
    let mut i = v.log2().floor() as i32 + 1;
    while i > -1100 && 2f64.powi(i - 1) > v {
        i -= 1;
    }
    while i < 1100 && v >= 2f64.powi(i) {
        i += 1;
    }
    i
}

/// Nonempty dyadic level sets of `|f|`, ordered by index.
pub fn level_sets(f: &SimpleFunction) -> Vec<LevelSet> {
    let mut groups: BTreeMap<i32, Vec<Atom>> = BTreeMap::new();
    for (a, v) in f.iter() {
        groups.entry(level_index(v.abs())).or_default().push(a);
    }
    groups.into_iter().map(|(index, atoms)| LevelSet { index, set: MeasurableSet::new(atoms) }).collect()
}

/// A named member of a set family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMember {
    pub id: String,
    pub set: MeasurableSet,
}

impl FamilyMember {
    pub fn new(id: impl Into<String>, set: MeasurableSet) -> Self {
        Self { id: id.into(), set }
    }
}

fn check_family(space: &AtomicSpace, family: &[FamilyMember]) -> Result<(), ChaosError> {
    for m in family {
        if space.measure(&m.set) == 0.0 {
            return Err(ChaosError::DegenerateSet { set: m.id.clone() });
        }
    }
    Ok(())
}

/// `s(F, β_j)` along the subsequence, with its divergence checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequenceEvidence {
    #[serde(serialize_with = "ext_seq")]
    pub values: Vec<f64>,
    #[serde(serialize_with = "ext")]
    pub tail_value: f64,
    /// First `β_j` at which the iterated preimage became empty.
    pub exact_zero_at: Option<usize>,
    #[serde(serialize_with = "ext")]
    pub first_quartile_max: f64,
    #[serde(serialize_with = "ext")]
    pub last_quartile_min: f64,
    pub witnessed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionIEvidence {
    pub witnessed: bool,
    #[serde(serialize_with = "ext")]
    pub threshold: f64,
    pub beta: Vec<usize>,
    pub per_set: BTreeMap<String, SequenceEvidence>,
}

fn sequence_evidence(values: Vec<f64>, beta: &[usize], threshold: f64) -> SequenceEvidence {
    let len = values.len();
    let q = (len / 4).max(1);
    let exact_zero_at = values.iter().position(|v| v.is_infinite()).map(|j| beta[j]);
    let tail_value = values.last().copied().unwrap_or(f64::NAN);
    let first_quartile_max = values[..q.min(len)].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let last_quartile_min = values[len.saturating_sub(q)..].iter().copied().fold(f64::INFINITY, f64::min);
    let trend = len >= 2 && last_quartile_min > first_quartile_max;
    let witnessed = exact_zero_at.is_some() || (tail_value >= threshold && trend);
    SequenceEvidence { values, tail_value, exact_zero_at, first_quartile_max, last_quartile_min, witnessed }
}

/// Condition (I): `Φ⁻¹(1/μ(φ^{-β_j} F_i)) -> inf` for every member.
///
/// Witnessed when, for every member, the sequence hits an empty preimage, or
/// its last value reaches the threshold and its last-quartile minimum exceeds
/// its first-quartile maximum.
pub fn check_condition_i(
    phi: &YoungFunction,
    space: &AtomicSpace,
    t: &Transformation,
    family: &[FamilyMember],
    beta: &[usize],
    window: &CriterionWindow,
) -> Result<ConditionIEvidence, ChaosError> {
    window.validate()?;
    if beta.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ChaosError::InvalidInput("beta must be strictly increasing".into()));
    }
    if let Some(&last) = beta.last() {
        if last > window.horizon {
            return Err(ChaosError::InvalidInput(format!("beta reaches {last}, beyond the horizon {}", window.horizon)));
        }
    }
    check_family(space, family)?;
    let threshold = window.divergence_threshold;
    let n_max = beta.last().copied().unwrap_or(0);
    let mut per_set = BTreeMap::new();
    for m in family {
        let mu = preimage_measures(space, t, &m.set, n_max)?;
        let values = beta.iter().map(|&b| inverse_measure(phi, mu[b])).collect::<Result<Vec<_>, _>>()?;
        per_set.insert(m.id.clone(), if values.is_empty() { empty_sequence() } else { sequence_evidence(values, beta, threshold) });
    }
    let witnessed = !family.is_empty() && !beta.is_empty() && per_set.values().all(|e| e.witnessed);
    Ok(ConditionIEvidence { witnessed, threshold, beta: beta.to_vec(), per_set })
}

fn empty_sequence() -> SequenceEvidence {
    SequenceEvidence {
        values: Vec::new(),
        tail_value: f64::NAN,
        exact_zero_at: None,
        first_quartile_max: f64::NAN,
        last_quartile_min: f64::NAN,
        witnessed: false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioWitness {
    pub set: String,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionIIEvidence {
    pub witnessed: bool,
    #[serde(serialize_with = "ext")]
    pub threshold: f64,
    pub horizon: usize,
    /// Largest ratio over `n = 1..=N`.
    #[serde(serialize_with = "ext")]
    pub sup_ratio_seen: f64,
    pub witness: Option<RatioWitness>,
    /// Largest ratio over `n = 1..=2N`.
    #[serde(serialize_with = "ext")]
    pub sup_ratio_doubled: f64,
    /// `Φ⁻¹(1/μ(F)) / Φ⁻¹(1/μ(φ⁻ⁿF))` for `n = 1..=2N`, per member.
    #[serde(serialize_with = "ext_map")]
    pub ratios: BTreeMap<String, Vec<f64>>,
}

fn ratio(numerator: f64, denominator: f64) -> f64 {
    if denominator.is_infinite() {
        0.0
    } else if denominator == 0.0 {
        f64::INFINITY
    } else {
        numerator / denominator
    }
}

/// Condition (II): `sup_{i,n} Φ⁻¹(1/μ(F_i)) / Φ⁻¹(1/μ(φ⁻ⁿF_i)) = inf`.
///
/// Witnessed when the sup over `n <= N` reaches the threshold and the sup over
/// `n <= 2N` is strictly larger.
pub fn check_condition_ii(
    phi: &YoungFunction,
    space: &AtomicSpace,
    t: &Transformation,
    family: &[FamilyMember],
    window: &CriterionWindow,
) -> Result<ConditionIIEvidence, ChaosError> {
    window.validate()?;
    check_family(space, family)?;
    let n = window.horizon;
    let mut ratios = BTreeMap::new();
    let mut sup_ratio_seen = f64::NEG_INFINITY;
    let mut sup_ratio_doubled = f64::NEG_INFINITY;
    let mut witness = None;
    for m in family {
        let s = backward_sequence(phi, space, t, &m.set, 2 * n)?;
        let row: Vec<f64> = s[1..].iter().map(|&d| ratio(s[0], d)).collect();
        for (k, &r) in row.iter().enumerate() {
            let step = k + 1;
            if step <= n && r > sup_ratio_seen {
                sup_ratio_seen = r;
                witness = Some(RatioWitness { set: m.id.clone(), n: step });
            }
            sup_ratio_doubled = sup_ratio_doubled.max(r);
        }
        ratios.insert(m.id.clone(), row);
    }
    let witnessed = sup_ratio_seen >= window.divergence_threshold && sup_ratio_doubled > sup_ratio_seen;
    Ok(ConditionIIEvidence {
        witnessed,
        threshold: window.divergence_threshold,
        horizon: n,
        sup_ratio_seen,
        witness,
        sup_ratio_doubled,
        ratios,
    })
}

/// Strict running-minimum record lows `n >= 1` of a norm sequence.
pub fn record_lows(norms: &[f64]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut low = match norms.first() {
        Some(&v) => v,
        None => return out,
    };
    for (n, &v) in norms.iter().enumerate().skip(1) {
        if v < low {
            out.push(n);
            low = v;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessExtraction {
    pub family: Vec<FamilyMember>,
    pub beta: Vec<usize>,
    #[serde(serialize_with = "ext_seq")]
    pub orbit_norms: Vec<f64>,
    pub condition_i: ConditionIEvidence,
    pub condition_ii: ConditionIIEvidence,
}

/// Runs the forward direction on a concrete vector: level sets of `f` become
/// the family, the record lows of `N_Φ(C_φⁿ f)` become `β`, then both
/// conditions are checked.
pub fn extract_witnesses(
    phi: &YoungFunction,
    space: &AtomicSpace,
    t: &Transformation,
    f: &SimpleFunction,
    window: &CriterionWindow,
) -> Result<WitnessExtraction, ChaosError> {
    window.validate()?;
    if f.is_zero() {
        return Err(ChaosError::ZeroVector);
    }
    let family: Vec<FamilyMember> =
        level_sets(f).into_iter().map(|l| FamilyMember::new(format!("F_{}", l.index), l.set)).collect();
    let report = orbit_norms(phi, space, t, f, window.horizon)?;
    let beta = record_lows(&report.norms);
    if beta.is_empty() {
        return Err(ChaosError::NoSmallNorms);
    }
    let condition_i = check_condition_i(phi, space, t, &family, &beta, window)?;
    let condition_ii = check_condition_ii(phi, space, t, &family, window)?;
    Ok(WitnessExtraction { family, beta, orbit_norms: report.norms, condition_i, condition_ii })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InjectiveForwardEvidence {
    pub witnessed: bool,
    pub horizon: usize,
    /// Indices `i` in `[-N, N]` with `μ(φ^i F) > 0`.
    pub index_set: Vec<i64>,
    /// `Φ⁻¹(1/μ(φ^i F))` for `i = -N..=N`.
    #[serde(serialize_with = "ext_seq")]
    pub values: Vec<f64>,
    #[serde(serialize_with = "ext")]
    pub backward_tail_max: f64,
    pub backward_witnessed: bool,
    /// `sup Φ⁻¹(1/μ(F_m)) / Φ⁻¹(1/μ(F_n))` over `n < m` in `[-N, N]`.
    #[serde(serialize_with = "ext")]
    pub sup_ratio: f64,
    pub ratio_witness: Option<(i64, i64)>,
    /// The same sup over `[-2N, 2N]`.
    #[serde(serialize_with = "ext")]
    pub sup_ratio_doubled: f64,
    pub ratio_witnessed: bool,
}

/// `sup s(m) / min_{n<m} s(n)` over a slice indexed from `offset`.
fn forward_ratio_sup(values: &[f64], offset: i64) -> (f64, Option<(i64, i64)>) {
    let mut best = f64::NEG_INFINITY;
    let mut at = None;
    let mut low: Option<(f64, usize)> = None;
    for (m, &s) in values.iter().enumerate() {
        if !s.is_finite() {
            continue;
        }
        if let Some((lv, li)) = low {
            let r = ratio(s, lv);
            if r > best {
                best = r;
                at = Some((li as i64 + offset, m as i64 + offset));
            }
        }
        if low.map_or(true, |(lv, _)| s < lv) {
            low = Some((s, m));
        }
    }
    (best, at)
}

/// The two divergence conditions along `F_i = φ^i(F)`, `i ∈ [-N, N]`, for
/// injective `φ`.
pub fn injective_forward_criterion(
    phi: &YoungFunction,
    space: &AtomicSpace,
    t: &Transformation,
    set: &MeasurableSet,
    window: &CriterionWindow,
) -> Result<InjectiveForwardEvidence, ChaosError> {
    window.validate()?;
    if !t.is_declared_injective() {
        return Err(ChaosError::NotDeclaredInjective);
    }
    if space.measure(set) == 0.0 {
        return Err(ChaosError::DegenerateSet { set: set.to_string() });
    }
    let (lo, hi) = window.set_window;
    t.verify_injective(&space.domain().atoms_in(lo, hi)).map_err(|e| ChaosError::InjectivityViolation(e.to_string()))?;

    let n = window.horizon;
    let two_n = 2 * n;
    let backward = preimage_measures(space, t, set, two_n)?;
    let mut forward = Vec::with_capacity(two_n + 1);
    let mut current = set.clone();
    for i in 0..=two_n {
        if i > 0 {
            let next = t.forward_image(&current, 1);
            if next.len() != current.len() {
                return Err(ChaosError::InjectivityViolation(format!("φ collapses {current} to {next}")));
            }
            current = next;
        }
        forward.push(space.measure(&current));
    }
    // i = -2N..=2N
    let mu: Vec<f64> = backward[1..].iter().rev().chain(forward.iter()).copied().collect();
    let s_all = mu.iter().map(|&m| inverse_measure(phi, m)).collect::<Result<Vec<_>, _>>()?;

    let inner = &s_all[n..=3 * n];
    let index_set = (-(n as i64)..=n as i64).zip(&mu[n..=3 * n]).filter(|(_, &m)| m > 0.0).map(|(i, _)| i).collect();

    let backward_tail_max = (window.tail_start()..=n).map(|k| s_all[two_n - k]).fold(f64::NEG_INFINITY, f64::max);
    let backward_witnessed = backward_tail_max >= window.divergence_threshold;
    let (sup_ratio, ratio_witness) = forward_ratio_sup(inner, -(n as i64));
    let (sup_ratio_doubled, _) = forward_ratio_sup(&s_all, -(two_n as i64));
    let ratio_witnessed = sup_ratio >= window.divergence_threshold && sup_ratio_doubled > sup_ratio;

    Ok(InjectiveForwardEvidence {
        witnessed: backward_witnessed && ratio_witnessed,
        horizon: n,
        index_set,
        values: inner.to_vec(),
        backward_tail_max,
        backward_witnessed,
        sup_ratio,
        ratio_witness,
        sup_ratio_doubled,
        ratio_witnessed,
    })
}

/// Minimal record of a set sequence, used in CSV export.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SetSequences {
    pub set: MeasurableSet,
    #[serde(serialize_with = "ext_seq")]
    pub backward: Vec<f64>,
    #[serde(serialize_with = "ext_seq")]
    pub forward: Vec<f64>,
    #[serde(serialize_with = "ext_opt")]
    pub boundedness: Option<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{AtomDomain, WeightRule};

    fn pp2() -> YoungFunction {
        YoungFunction::plain_power(2.0).unwrap()
    }

    #[test]
    fn level_sets_examples() {
        let f = SimpleFunction::from_pairs([(0, 0.6), (1, 1.0), (2, 3.5)]).unwrap();
        let ls = level_sets(&f);
        let got: Vec<(i32, Vec<Atom>)> = ls.iter().map(|l| (l.index, l.set.members().to_vec())).collect();
        assert_eq!(got, vec![(0, vec![0]), (1, vec![1]), (2, vec![2])]);

        let chi = SimpleFunction::indicator(&MeasurableSet::new([3, 4, 9]));
        let ls = level_sets(&chi);
        assert_eq!(ls.len(), 1);
        assert_eq!(ls[0].index, 1);
        assert_eq!(ls[0].set, MeasurableSet::new([3, 4, 9]));
    }

    #[test]
    fn level_index_at_powers_of_two() {
        for e in -60..60 {
            let v = 2f64.powi(e);
            assert_eq!(level_index(v), e + 1);
            let below = v * (1.0 - 1e-15);
            assert_eq!(level_index(below), e);
        }
    }

    #[test]
    fn record_lows_are_strict() {
        assert_eq!(record_lows(&[3.0, 3.0, 2.0, 2.5, 1.0, 1.0]), vec![2, 4]);
        assert!(record_lows(&[1.0, 1.0, 1.0]).is_empty());
    }

    fn rotation() -> (AtomicSpace, Transformation) {
        let s = AtomicSpace::new(AtomDomain::Finite { indices: (0..6).collect() }, WeightRule::Uniform { value: 1.0 }).unwrap();
        (s, Transformation::rotation(6, 1).unwrap())
    }

    #[test]
    fn rotation_conditions_never_witnessed() {
        let (s, t) = rotation();
        let w = CriterionWindow { horizon: 40, set_window: (0, 5), ..CriterionWindow::default() };
        let fam = vec![FamilyMember::new("F", MeasurableSet::singleton(2))];
        let c1 = check_condition_i(&pp2(), &s, &t, &fam, &[1, 5, 9, 20], &w).unwrap();
        assert!(!c1.witnessed);
        let c2 = check_condition_ii(&pp2(), &s, &t, &fam, &w).unwrap();
        assert!(!c2.witnessed);
        assert_eq!(c2.sup_ratio_seen, 1.0);
        let chi = SimpleFunction::indicator(&MeasurableSet::singleton(2));
        assert_eq!(extract_witnesses(&pp2(), &s, &t, &chi, &w), Err(ChaosError::NoSmallNorms));
        let fwd = injective_forward_criterion(&pp2(), &s, &t, &MeasurableSet::singleton(2), &w).unwrap();
        assert!(!fwd.witnessed);
    }

    #[test]
    fn condition_i_lp_threshold_matches_measure_threshold() {
        // Φ⁻¹(y) = y^(1/p), so s >= M iff μ <= M^(-p)
        let space = AtomicSpace::new(AtomDomain::Integers, WeightRule::Geometric { ratio: 2.0 }).unwrap();
        let t = Transformation::shift(1);
        let p = 2.0;
        let w = CriterionWindow { horizon: 30, ..CriterionWindow::default() };
        let fam = vec![FamilyMember::new("F", MeasurableSet::singleton(0))];
        let beta: Vec<usize> = (1..=30).collect();
        let c1 = check_condition_i(&pp2(), &space, &t, &fam, &beta, &w).unwrap();
        let mu_last = space.weight(-30);
        assert_eq!(c1.witnessed, mu_last <= w.divergence_threshold.powf(-p));
        assert!(c1.witnessed);
    }

    #[test]
    fn degenerate_and_zero_inputs_are_rejected() {
        let (s, t) = rotation();
        let w = CriterionWindow { horizon: 5, set_window: (0, 5), ..CriterionWindow::default() };
        let fam = vec![FamilyMember::new("E", MeasurableSet::empty())];
        assert!(matches!(check_condition_ii(&pp2(), &s, &t, &fam, &w), Err(ChaosError::DegenerateSet { .. })));
        assert_eq!(extract_witnesses(&pp2(), &s, &t, &SimpleFunction::zero(), &w), Err(ChaosError::ZeroVector));
        let fold = Transformation::halving();
        let ns = AtomicSpace::new(AtomDomain::NonNegative, WeightRule::Uniform { value: 1.0 }).unwrap();
        assert_eq!(
            injective_forward_criterion(&pp2(), &ns, &fold, &MeasurableSet::singleton(1), &w),
            Err(ChaosError::NotDeclaredInjective)
        );
    }

    #[test]
    fn empty_preimage_is_an_exact_zero_event() {
        // table map with no preimage for atom 0 after one step
        let t = Transformation::table(BTreeMap::from([(0, 1), (1, 1), (2, 1)]), false).unwrap();
        let s = AtomicSpace::new(AtomDomain::Finite { indices: vec![0, 1, 2] }, WeightRule::Uniform { value: 1.0 }).unwrap();
        let w = CriterionWindow { horizon: 4, set_window: (0, 2), ..CriterionWindow::default() };
        let fam = vec![FamilyMember::new("F", MeasurableSet::singleton(0))];
        let c1 = check_condition_i(&pp2(), &s, &t, &fam, &[1, 2], &w).unwrap();
        assert!(c1.witnessed);
        assert_eq!(c1.per_set["F"].exact_zero_at, Some(1));
    }
}
