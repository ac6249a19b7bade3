//! Finitely supported functions on atoms, modulars, and the Luxemburg and
//! Orlicz norms.

use serde::Serialize;
use thiserror::Error;

use crate::numeric::{bisect_boundary, golden_min};
use crate::space::{Atom, AtomicSpace, MeasurableSet};
use crate::young::YoungFunction;

/// Relative bracket width for the Luxemburg bisection.
pub const LUXEMBURG_REL_TOL: f64 = 1e-13;
/// Width, in `ln u`, at which the Amemiya minimization stops.
const AMEMIYA_LOG_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OrliczError {
    #[error("set has measure zero; its indicator norm is undefined")]
    EmptySet,
    #[error("invalid simple function: {0}")]
    InvalidFunction(String),
    #[error("generalized inverse failed: {0}")]
    Young(#[from] crate::young::YoungError),
}

/// A real function on atoms with finite support.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SimpleFunction {
    support: Vec<Atom>,
    values: Vec<f64>,
}

impl SimpleFunction {
    /// Builds from `(atom, value)` pairs; zeros are dropped, duplicates rejected.
    pub fn from_pairs<I: IntoIterator<Item = (Atom, f64)>>(pairs: I) -> Result<Self, OrliczError> {
        let mut pairs: Vec<(Atom, f64)> = pairs.into_iter().filter(|p| p.1 != 0.0).collect();
        if let Some((a, v)) = pairs.iter().find(|p| !p.1.is_finite()) {
            return Err(OrliczError::InvalidFunction(format!("value {v} at atom {a} is not finite")));
        }
        pairs.sort_by_key(|p| p.0);
        if let Some(w) = pairs.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(OrliczError::InvalidFunction(format!("atom {} appears twice", w[0].0)));
        }
        let (support, values) = pairs.into_iter().unzip();
        Ok(Self { support, values })
    }

    pub fn new(support: Vec<Atom>, values: Vec<f64>) -> Result<Self, OrliczError> {
        if support.len() != values.len() {
            return Err(OrliczError::InvalidFunction(format!(
                "support has {} atoms but {} values were given",
                support.len(),
                values.len()
            )));
        }
        Self::from_pairs(support.into_iter().zip(values))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `χ_F`.
    pub fn indicator(set: &MeasurableSet) -> Self {
        Self { support: set.members().to_vec(), values: vec![1.0; set.len()] }
    }

    pub fn support(&self) -> &[Atom] {
        &self.support
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn support_set(&self) -> MeasurableSet {
        MeasurableSet::new(self.support.iter().copied())
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// True when every stored value is exactly 1.
    pub fn is_indicator(&self) -> bool {
        self.values.iter().all(|&v| v == 1.0)
    }

    pub fn get(&self, a: Atom) -> f64 {
        self.support.binary_search(&a).map_or(0.0, |i| self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Atom, f64)> + '_ {
        self.support.iter().copied().zip(self.values.iter().copied())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::from_pairs(self.iter().map(|(a, v)| (a, c * v))).expect("scaling keeps a valid function")
    }

    pub fn abs(&self) -> Self {
        Self { support: self.support.clone(), values: self.values.iter().map(|v| v.abs()).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut atoms: Vec<Atom> = self.support.iter().chain(other.support.iter()).copied().collect();
        atoms.sort_unstable();
        atoms.dedup();
        Self::from_pairs(atoms.into_iter().map(|a| (a, self.get(a) + other.get(a)))).expect("sum keeps a valid function")
    }
}

/// `Σ Φ(|f(a)|/k) w(a)`.
pub fn modular(phi: &YoungFunction, space: &AtomicSpace, f: &SimpleFunction, k: f64) -> f64 {
    f.iter().map(|(a, v)| phi.eval(v / k) * space.weight(a)).sum()
}

/// Luxemburg norm `inf{k > 0 : modular(f, k) <= 1}` by bisection on `k`.
pub fn luxemburg_norm(phi: &YoungFunction, space: &AtomicSpace, f: &SimpleFunction) -> f64 {
    if f.is_zero() {
        return 0.0;
    }
    let above = |k: f64| modular(phi, space, f, k) > 1.0;
    let k0 = f.max_abs();
    let (mut lo, mut hi) = (k0, k0);
    if above(k0) {
        while above(hi) {
            hi *= 2.0;
            if hi > 1e300 {
                return f64::INFINITY;
            }
        }
        lo = hi / 2.0;
    } else {
        while !above(lo) {
            lo /= 2.0;
            if lo < 1e-300 {
                return 0.0;
            }
        }
        hi = lo * 2.0;
    }
    bisect_boundary(above, lo, hi, LUXEMBURG_REL_TOL, 2000).1
}

/// `N_Φ(χ_F) = 1 / Φ⁻¹(1/μ(F))`.
pub fn indicator_norm(phi: &YoungFunction, space: &AtomicSpace, set: &MeasurableSet) -> Result<f64, OrliczError> {
    let mu = space.measure(set);
    if mu == 0.0 {
        return Err(OrliczError::EmptySet);
    }
    Ok(1.0 / phi.generalized_inverse(1.0 / mu)?)
}

/// Orlicz norm in the Amemiya form `inf_{u>0} u (1 + modular(f, u))`.
///
/// The search runs in `ln u` over `[1e-12 N, 2N]` where `N` is the Luxemburg
/// norm; `u >= N` already gives a value at most `2N`, and every `u > 2N`
/// gives more than `2N`.
pub fn orlicz_norm(phi: &YoungFunction, space: &AtomicSpace, f: &SimpleFunction) -> f64 {
    if f.is_zero() {
        return 0.0;
    }
    let n = luxemburg_norm(phi, space, f);
    if !n.is_finite() || n == 0.0 {
        return n;
    }
    let h = |u: f64| u * (1.0 + modular(phi, space, f, u));
    let best = golden_min(|s| h(s.exp()), (1e-12 * n).ln(), (2.0 * n).ln(), AMEMIYA_LOG_TOL, 500);
    best.value.min(h(n))
}
