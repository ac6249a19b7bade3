//! Desk-scale check of the equivalence between the measure bound
//! `μ(φ⁻¹F) <= K μ(F)` and the inverse bound
//! `Φ⁻¹(1/μ(F)) <= Φ⁻¹(L/μ(φ⁻¹F)) <= L Φ⁻¹(1/μ(φ⁻¹F))`.

use serde::Serialize;

use super::{candidate_sets, ChaosError, CriterionWindow};
use crate::report::{ext, ext_opt};
use crate::space::{boundedness_constant, Atom, AtomicSpace, MeasurableSet, Transformation};
use crate::young::{GrowthCondition, GrowthGrid, YoungFunction};

/// `L` is searched on the grid `2^(k/64)`, `k ∈ [K_MIN, K_MAX]`.
const K_MIN: i32 = -640;
const K_MAX: i32 = 2560;
const SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundednessEquivalenceReport {
    #[serde(serialize_with = "ext")]
    pub k: f64,
    pub k_witness: Atom,
    /// Smallest grid `L` that works for every candidate, if any does.
    #[serde(serialize_with = "ext_opt")]
    pub l: Option<f64>,
    pub holds: bool,
    /// The candidate needing the largest `L`, or the first one no grid `L` satisfies.
    pub worst_case: Option<MeasurableSet>,
    pub candidates_checked: usize,
    pub delta2_witnessed: bool,
    pub set_window: (Atom, Atom),
}

fn grid_l(k: i32) -> f64 {
    (k as f64 / 64.0).exp2()
}

fn passes(phi: &YoungFunction, mu: f64, mu_pre: f64, l: f64) -> Result<bool, ChaosError> {
    let a = phi.generalized_inverse(1.0 / mu)?;
    let b = phi.generalized_inverse(l / mu_pre)?;
    let c = l * phi.generalized_inverse(1.0 / mu_pre)?;
    Ok(a <= b * (1.0 + SLACK) && b <= c * (1.0 + SLACK))
}

/// Smallest grid index passing for one set, or `None` if even the largest fails.
fn minimal_k(phi: &YoungFunction, mu: f64, mu_pre: f64) -> Result<Option<i32>, ChaosError> {
    if !passes(phi, mu, mu_pre, grid_l(K_MAX))? {
        return Ok(None);
    }
    let (mut lo, mut hi) = (K_MIN - 1, K_MAX);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if passes(phi, mu, mu_pre, grid_l(mid))? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

/// Computes `K` on the set window, then the smallest grid `L` satisfying both
/// inverse inequalities over the candidate sets. Sets with an empty preimage
/// satisfy the bound trivially and are skipped.
pub fn boundedness_equivalence_check(
    phi: &YoungFunction,
    space: &AtomicSpace,
    t: &Transformation,
    window: &CriterionWindow,
) -> Result<BoundednessEquivalenceReport, ChaosError> {
    window.validate()?;
    let (lo, hi) = window.set_window;
    let bound = boundedness_constant(space, t, lo, hi)?;
    let delta2_witnessed = phi.check_growth(GrowthCondition::Delta2, 0.0, &GrowthGrid::default()).holds();
    let candidates = candidate_sets(space, window);

    let mut report = BoundednessEquivalenceReport {
        k: bound.sup_ratio,
        k_witness: bound.witness,
        l: None,
        holds: true,
        worst_case: None,
        candidates_checked: candidates.len(),
        delta2_witnessed,
        set_window: window.set_window,
    };
    let mut worst_k = i32::MIN;
    for c in &candidates {
        let mu = space.measure(&c.set);
        let mu_pre = space.measure(&t.preimage_set(&c.set)?);
        if mu_pre == 0.0 {
            continue;
        }
        match minimal_k(phi, mu, mu_pre)? {
            Some(k) if k > worst_k => {
                worst_k = k;
                report.worst_case = Some(c.set.clone());
            }
            Some(_) => {}
            None => {
                report.holds = false;
                report.worst_case = Some(c.set.clone());
                return Ok(report);
            }
        }
    }
    report.l = Some(if worst_k == i32::MIN { 1.0 } else { grid_l(worst_k) });
    Ok(report)
}
