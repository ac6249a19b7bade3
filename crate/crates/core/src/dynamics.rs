//! The composition operator `C_φ f = f ∘ φ`, orbit norm sequences, and
//! finite-horizon evidence for irregular and semi-irregular vectors.

use serde::Serialize;
use thiserror::Error;

use crate::orlicz::{indicator_norm, luxemburg_norm, OrliczError, SimpleFunction};
use crate::report::{ext, ext_seq};
use crate::space::{AtomicSpace, MeasurableSet, SpaceError, Transformation};
use crate::young::YoungFunction;

/// Fraction of the horizon averaged at each end for trend classification.
const TREND_WINDOW: f64 = 0.1;
/// Relative dead band for head/tail comparison and zigzag reversals.
const TREND_BAND: f64 = 0.05;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("horizon must be at least 1")]
    ZeroHorizon,
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Orlicz(#[from] OrliczError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Trend {
    Decaying,
    Growing,
    Oscillating,
    Flat,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitReport {
    pub horizon: usize,
    /// `N_Φ(C_φⁿ f)` for `n = 0..=horizon`.
    #[serde(serialize_with = "ext_seq")]
    pub norms: Vec<f64>,
    #[serde(serialize_with = "ext")]
    pub min_norm: f64,
    pub argmin: usize,
    #[serde(serialize_with = "ext")]
    pub max_norm: f64,
    pub argmax: usize,
    pub trend: Trend,
}

impl OrbitReport {
    pub fn from_norms(norms: Vec<f64>) -> Self {
        assert!(norms.len() >= 2, "an orbit report needs at least two entries");
        let (mut argmin, mut argmax) = (0, 0);
        for (i, &v) in norms.iter().enumerate() {
            if v < norms[argmin] {
                argmin = i;
            }
            if v > norms[argmax] {
                argmax = i;
            }
        }
        Self {
            horizon: norms.len() - 1,
            min_norm: norms[argmin],
            argmin,
            max_norm: norms[argmax],
            argmax,
            trend: classify_trend(&norms),
            norms,
        }
    }

    /// First index of the tail half `[⌈N/2⌉, N]`.
    pub fn tail_start(&self) -> usize {
        self.horizon.div_ceil(2)
    }
}

/// Counts direction reversals that move more than the dead band off the running extreme.
fn zigzag_reversals(norms: &[f64]) -> usize {
    let mut reversals = 0;
    let mut dir = 0i8;
    let mut ext = norms[0];
    for &v in &norms[1..] {
        match dir {
            0 => {
                if v > ext * (1.0 + TREND_BAND) {
                    dir = 1;
                    ext = v;
                } else if v < ext * (1.0 - TREND_BAND) {
                    dir = -1;
                    ext = v;
                }
            }
            1 => {
                if v > ext {
                    ext = v;
                } else if v < ext * (1.0 - TREND_BAND) {
                    reversals += 1;
                    dir = -1;
                    ext = v;
                }
            }
            _ => {
                if v < ext {
                    ext = v;
                } else if v > ext * (1.0 + TREND_BAND) {
                    reversals += 1;
                    dir = 1;
                    ext = v;
                }
            }
        }
    }
    reversals
}

pub fn classify_trend(norms: &[f64]) -> Trend {
    if zigzag_reversals(norms) >= 2 {
        return Trend::Oscillating;
    }
    let w = ((norms.len() as f64 * TREND_WINDOW).ceil() as usize).max(1);
    let mean = |xs: &[f64]| xs.iter().sum::<f64>() / xs.len() as f64;
    let head = mean(&norms[..w]);
    let tail = mean(&norms[norms.len() - w..]);
    if tail > head * (1.0 + TREND_BAND) {
        Trend::Growing
    } else if tail < head * (1.0 - TREND_BAND) {
        Trend::Decaying
    } else {
        Trend::Flat
    }
}

/// `C_φ f`: `g(b) = f(φ(b))`, supported on `φ⁻¹(supp f)`.
pub fn apply(t: &Transformation, f: &SimpleFunction) -> Result<SimpleFunction, SpaceError> {
    let mut pairs = Vec::with_capacity(f.support().len());
    for (a, v) in f.iter() {
        for b in t.preimage(a)? {
            pairs.push((b, v));
        }
    }
    if pairs.len() > t.limits().set_cap {
        return Err(SpaceError::SetExplosion { size: pairs.len(), cap: t.limits().set_cap });
    }
    Ok(SimpleFunction::from_pairs(pairs).expect("fibers of distinct atoms are disjoint"))
}

/// `C_φⁿ f`.
pub fn apply_n(t: &Transformation, f: &SimpleFunction, n: usize) -> Result<SimpleFunction, SpaceError> {
    let mut g = f.clone();
    for _ in 0..n {
        if g.is_zero() {
            break;
        }
        g = apply(t, &g)?;
    }
    Ok(g)
}

/// Norms of `χ_{φ⁻ⁿF}` for `n = 0..=horizon`, zero once the preimage is empty
/// or its measure underflows.
pub fn indicator_orbit_norms(
    phi: &YoungFunction,
    space: &AtomicSpace,
    t: &Transformation,
    set: &MeasurableSet,
    horizon: usize,
) -> Result<Vec<f64>, DynamicsError> {
    let mut out = Vec::with_capacity(horizon + 1);
    let mut current = set.clone();
    for n in 0..=horizon {
        if n > 0 {
            current = t.preimage_set(&current)?;
        }
        // a measure that underflows to zero reads as norm zero, like an empty preimage
        out.push(if current.is_empty() || space.measure(&current) == 0.0 { 0.0 } else { indicator_norm(phi, space, &current)? });
    }
    Ok(out)
}

/// Luxemburg norms along the orbit of `f`. Indicators go through the
/// closed-form path on iterated preimages.
pub fn orbit_norms(
    phi: &YoungFunction,
    space: &AtomicSpace,
    t: &Transformation,
    f: &SimpleFunction,
    horizon: usize,
) -> Result<OrbitReport, DynamicsError> {
    if horizon == 0 {
        return Err(DynamicsError::ZeroHorizon);
    }
    if f.is_zero() {
        return Ok(OrbitReport::from_norms(vec![0.0; horizon + 1]));
    }
    if f.is_indicator() {
        let norms = indicator_orbit_norms(phi, space, t, &f.support_set(), horizon)?;
        return Ok(OrbitReport::from_norms(norms));
    }
    let mut norms = Vec::with_capacity(horizon + 1);
    let mut g = f.clone();
    for n in 0..=horizon {
        if n > 0 {
            g = apply(t, &g)?;
        }
        norms.push(luxemburg_norm(phi, space, &g));
    }
    Ok(OrbitReport::from_norms(norms))
}

/// Where the small and large witnesses may sit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SemiIrregularOptions {
    pub small_in_tail: bool,
    pub large_in_tail: bool,
}

impl Default for SemiIrregularOptions {
    fn default() -> Self {
        Self { small_in_tail: false, large_in_tail: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SemiIrregularEvidence {
    pub is_witnessed: bool,
    pub small_index: usize,
    #[serde(serialize_with = "ext")]
    pub small_value: f64,
    pub large_index: usize,
    #[serde(serialize_with = "ext")]
    pub large_value: f64,
    pub eps: f64,
    pub floor: f64,
    pub options: SemiIrregularOptions,
}

fn argmin_in(norms: &[f64], from: usize) -> usize {
    (from..norms.len()).fold(from, |best, i| if norms[i] < norms[best] { i } else { best })
}

fn argmax_in(norms: &[f64], from: usize) -> usize {
    (from..norms.len()).fold(from, |best, i| if norms[i] > norms[best] { i } else { best })
}

/// Semi-irregularity evidence: a norm at most `eps`, and a norm at least
/// `floor` in the tail half of the horizon.
pub fn semi_irregular_evidence(report: &OrbitReport, eps: f64, floor: f64) -> SemiIrregularEvidence {
    semi_irregular_evidence_with(report, eps, floor, SemiIrregularOptions::default())
}

pub fn semi_irregular_evidence_with(report: &OrbitReport, eps: f64, floor: f64, options: SemiIrregularOptions) -> SemiIrregularEvidence {
    let tail = report.tail_start();
    let small_index = argmin_in(&report.norms, if options.small_in_tail { tail } else { 0 });
    let large_index = argmax_in(&report.norms, if options.large_in_tail { tail } else { 0 });
    let small_value = report.norms[small_index];
    let large_value = report.norms[large_index];
    SemiIrregularEvidence {
        is_witnessed: small_value <= eps && large_value >= floor,
        small_index,
        small_value,
        large_index,
        large_value,
        eps,
        floor,
        options,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IrregularEvidence {
    pub is_witnessed: bool,
    pub small_index: usize,
    #[serde(serialize_with = "ext")]
    pub min_norm: f64,
    pub large_index: usize,
    #[serde(serialize_with = "ext")]
    pub max_norm: f64,
    pub eps: f64,
    pub blowup: f64,
    /// Set by [`irregular_evidence_escalated`]: whether the max strictly grew when the horizon doubled.
    pub max_grows_on_doubling: Option<bool>,
}

/// Irregularity evidence: some norm at most `eps` and some norm at least `blowup`.
pub fn irregular_evidence(report: &OrbitReport, eps: f64, blowup: f64) -> IrregularEvidence {
    IrregularEvidence {
        is_witnessed: report.min_norm <= eps && report.max_norm >= blowup,
        small_index: report.argmin,
        min_norm: report.min_norm,
        large_index: report.argmax,
        max_norm: report.max_norm,
        eps,
        blowup,
        max_grows_on_doubling: None,
    }
}

/// Runs the orbit at `horizon` and `2 · horizon` and records whether the max grew.
pub fn irregular_evidence_escalated(
    phi: &YoungFunction,
    space: &AtomicSpace,
    t: &Transformation,
    f: &SimpleFunction,
    horizon: usize,
    eps: f64,
    blowup: f64,
) -> Result<IrregularEvidence, DynamicsError> {
    let doubled = orbit_norms(phi, space, t, f, 2 * horizon)?;
    let base = OrbitReport::from_norms(doubled.norms[..=horizon].to_vec());
    let mut ev = irregular_evidence(&base, eps, blowup);
    ev.max_grows_on_doubling = Some(doubled.max_norm > base.max_norm);
    Ok(ev)
}
