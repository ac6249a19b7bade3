//! Young functions: evaluation, generalized inverse, complementary function and
//! growth-condition classification.
//!
//! A Young function is stored only on `[0, inf)`; evaluation takes `|x|`, so
//! evenness and `Φ(0) = 0` hold by construction. Values may saturate to `+inf`,
//! which is a legal Young-function value.

use serde::Serialize;
use thiserror::Error;

use crate::numeric::{bisect_boundary, golden_max, log_grid};

/// Relative bracket width at which the generalized-inverse bisection stops.
pub const INVERSE_REL_TOL: f64 = 1e-12;
/// Log-width at which the conjugate maximization stops.
pub const CONJUGATE_TOL: f64 = 1e-10;
/// Brackets never grow past this abscissa.
pub const OVERFLOW_GUARD: f64 = 1e300;
/// The conjugate objective is declared unbounded if still increasing here.
const CONJUGATE_GUARD: f64 = 1e150;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum YoungError {
    #[error("invalid Young function parameters: {0}")]
    InvalidParameters(String),
    #[error("no x with Φ(x) > {y} below the overflow guard")]
    UnboundedBracket { y: f64 },
    #[error("invalid argument {value}: {reason}")]
    InvalidArgument { value: f64, reason: &'static str },
}

/// Convex, nondecreasing piecewise-linear data on `[0, inf)`.
///
/// Knots are `(x, Φ(x))` pairs with strictly increasing `x`, the first at the
/// origin with value zero. Past the last knot the function continues linearly
/// with `tail_slope`; past `finite_limit` (when set) it is `+inf`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiecewiseConvex {
    knots: Vec<(f64, f64)>,
    tail_slope: f64,
    finite_limit: Option<f64>,
}

impl PiecewiseConvex {
    pub fn new(mut knots: Vec<(f64, f64)>, tail_slope: f64, finite_limit: Option<f64>) -> Result<Self, YoungError> {
        let bad = |m: String| Err(YoungError::InvalidParameters(m));
        if knots.first().map_or(true, |k| k.0 != 0.0) {
            knots.insert(0, (0.0, 0.0));
        }
        if knots[0].1 != 0.0 {
            return bad("piecewise Φ must vanish at 0".into());
        }
        if knots.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return bad("piecewise knots must be finite".into());
        }
        if !tail_slope.is_finite() || tail_slope < 0.0 {
            return bad(format!("tail slope {tail_slope} must be finite and >= 0"));
        }
        let mut prev_slope = 0.0_f64;
        for w in knots.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if x1 <= x0 {
                return bad(format!("knot abscissae must increase strictly ({x0} then {x1})"));
            }
            let slope = (y1 - y0) / (x1 - x0);
            if slope < -1e-12 {
                return bad(format!("piecewise Φ decreases on [{x0}, {x1}]"));
            }
            if slope < prev_slope * (1.0 - 1e-12) - 1e-12 {
                return bad(format!("piecewise Φ is not convex at x = {x0}"));
            }
            prev_slope = slope.max(prev_slope);
        }
        if tail_slope < prev_slope * (1.0 - 1e-12) - 1e-12 {
            return bad(format!("tail slope {tail_slope} is below the last segment slope {prev_slope}"));
        }
        if let Some(limit) = finite_limit {
            if !(limit > 0.0) {
                return bad(format!("finite_limit {limit} must be > 0"));
            }
        } else if tail_slope == 0.0 {
            return bad("Φ must tend to infinity: tail slope 0 and no finite_limit".into());
        }
        Ok(Self { knots, tail_slope, finite_limit })
    }

    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    pub fn tail_slope(&self) -> f64 {
        self.tail_slope
    }

    pub fn finite_limit(&self) -> Option<f64> {
        self.finite_limit
    }

    fn eval(&self, t: f64) -> f64 {
        if let Some(limit) = self.finite_limit {
            if t > limit {
                return f64::INFINITY;
            }
        }
        let idx = self.knots.partition_point(|k| k.0 <= t);
        let (x0, y0) = self.knots[idx - 1];
        match self.knots.get(idx) {
            Some(&(x1, y1)) => y0 + (y1 - y0) * (t - x0) / (x1 - x0),
            None => y0 + self.tail_slope * (t - x0),
        }
    }
}

/// The parametric families a [`YoungFunction`] can take.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum YoungKind {
    /// `|x|^p / p`, `p > 1`.
    Power { p: f64 },
    /// `|x|^p`, `p >= 1`.
    PlainPower { p: f64 },
    /// `exp(a|x|) - 1 - a|x|`, `a > 0`.
    ExpMinusOne { a: f64 },
    Piecewise(PiecewiseConvex),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct YoungFunction {
    kind: YoungKind,
}

impl YoungFunction {
    pub fn power(p: f64) -> Result<Self, YoungError> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(YoungError::InvalidParameters(format!("power family needs p > 1, got {p}")));
        }
        Ok(Self { kind: YoungKind::Power { p } })
    }

    pub fn plain_power(p: f64) -> Result<Self, YoungError> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(YoungError::InvalidParameters(format!("plain power family needs p >= 1, got {p}")));
        }
        Ok(Self { kind: YoungKind::PlainPower { p } })
    }

    pub fn exp_minus_one(a: f64) -> Result<Self, YoungError> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(YoungError::InvalidParameters(format!("exp_minus_one needs a > 0, got {a}")));
        }
        Ok(Self { kind: YoungKind::ExpMinusOne { a } })
    }

    pub fn piecewise(knots: Vec<(f64, f64)>, tail_slope: f64, finite_limit: Option<f64>) -> Result<Self, YoungError> {
        Ok(Self { kind: YoungKind::Piecewise(PiecewiseConvex::new(knots, tail_slope, finite_limit)?) })
    }

    pub fn kind(&self) -> &YoungKind {
        &self.kind
    }

    /// The exponent when this is `PlainPower(p)`; the L^p reduction keys off it.
    pub fn plain_power_exponent(&self) -> Option<f64> {
        match self.kind {
            YoungKind::PlainPower { p } => Some(p),
            _ => None,
        }
    }

    /// `Φ(|x|)`, saturating to `+inf` on overflow.
    pub fn eval(&self, x: f64) -> f64 {
        let t = x.abs();
        if t == 0.0 {
            return 0.0;
        }
        match &self.kind {
            YoungKind::Power { p } => t.powf(*p) / p,
            YoungKind::PlainPower { p } => t.powf(*p),
            YoungKind::ExpMinusOne { a } => exp_minus_one_minus_linear(a * t),
            YoungKind::Piecewise(pw) => pw.eval(t),
        }
    }

    /// `Φ⁻¹(y) = inf{x >= 0 : Φ(x) > y}` with the default tolerance.
    pub fn generalized_inverse(&self, y: f64) -> Result<f64, YoungError> {
        self.generalized_inverse_with_tol(y, INVERSE_REL_TOL)
    }

    /// Generalized inverse; closed form for the power families, bisection otherwise.
    ///
    /// The bisection keeps a `Φ(lo) <= y` / `Φ(hi) > y` bracket and returns
    /// `lo`, so flat stretches of `Φ` resolve to their right endpoint and
    /// `Φ(Φ⁻¹(y)) <= y` holds exactly. `y = +inf` maps to `+inf`.
    pub fn generalized_inverse_with_tol(&self, y: f64, rel_tol: f64) -> Result<f64, YoungError> {
        if y.is_nan() || y < 0.0 {
            return Err(YoungError::InvalidArgument { value: y, reason: "generalized inverse needs y >= 0" });
        }
        if y == f64::INFINITY {
            return Ok(f64::INFINITY);
        }
        match &self.kind {
            YoungKind::PlainPower { p } => return Ok(self.settle_below(y.powf(1.0 / p), y)),
            YoungKind::Power { p } => {
                if y == 0.0 {
                    return Ok(0.0);
                }
                let direct = (p * y).powf(1.0 / p);
                let x = if direct.is_finite() { direct } else { ((p.ln() + y.ln()) / p).exp() };
                return Ok(self.settle_below(x, y));
            }
            YoungKind::ExpMinusOne { .. } if y == 0.0 => return Ok(0.0),
            _ => {}
        }

        let mut hi = 1.0;
        while self.eval(hi) <= y {
            hi *= 2.0;
            if hi > OVERFLOW_GUARD {
                return Err(YoungError::UnboundedBracket { y });
            }
        }
        let (lo, _) = bisect_boundary(|x| self.eval(x) <= y, 0.0, hi, rel_tol, 4000);
        Ok(lo)
    }

    /// Steps a closed-form inverse down by ulps until `Φ(x) <= y`.
    fn settle_below(&self, mut x: f64, y: f64) -> f64 {
        for _ in 0..8 {
            if !(x > 0.0 && x.is_finite() && self.eval(x) > y) {
                break;
            }
            x = x.next_down();
        }
        x
    }

    /// Complementary function `Ψ(y) = sup{x|y| - Φ(x) : x >= 0}`.
    ///
    /// Returns `+inf` when the objective is still increasing on the doubling
    /// grid past `1e150`.
    pub fn complement(&self, y: f64) -> f64 {
        conjugate_sup(|x| self.eval(x), y)
    }

    /// Young's inequality `xy <= Φ(x) + Ψ(y)` on the given nonnegative samples.
    pub fn check_young_inequality(&self, samples: &[(f64, f64)]) -> YoungInequalityReport {
        let mut report = YoungInequalityReport { holds: true, min_slack: f64::INFINITY, worst: None, samples: samples.len() };
        for &(x, y) in samples {
            let slack = self.eval(x) + self.complement(y) - x.abs() * y.abs();
            if slack < report.min_slack {
                report.min_slack = slack;
                report.worst = Some((x, y));
            }
            if slack < -PROPERTY_SLACK * (x.abs() * y.abs()).max(1.0) {
                report.holds = false;
            }
        }
        report
    }

    /// Grid evidence for the N-function properties.
    pub fn is_n_function(&self) -> NFunctionReport {
        self.is_n_function_on(&NFunctionGrid::default())
    }

    pub fn is_n_function_on(&self, grid: &NFunctionGrid) -> NFunctionReport {
        let xs = log_grid(grid.lo, grid.hi, grid.points);
        let ratios: Vec<f64> = xs.iter().map(|&x| self.eval(x) / x).collect();
        let decade = ((grid.points - 1) as f64 / (grid.hi / grid.lo).log10()).round().max(1.0) as usize;
        let decade = decade.min(grid.points - 1);

        let first = ratios[0];
        let at_zero = first < 1e-6 && first < ratios[decade];

        let last = ratios[grid.points - 1];
        let prev = ratios[grid.points - 1 - decade];
        let at_infinity = last > 1e6 && (last.is_infinite() || last > prev);

        NFunctionReport {
            at_zero,
            at_infinity,
            vanishes_only_at_zero: xs.iter().all(|&x| self.eval(x) > 0.0),
            finite_valued: xs.iter().all(|&x| self.eval(x).is_finite()) || !self.saturates_by_definition(),
        }
    }

    fn saturates_by_definition(&self) -> bool {
        matches!(&self.kind, YoungKind::Piecewise(pw) if pw.finite_limit.is_some())
    }

    /// Grid evidence for Δ₂, Δ′ or ∇′ beyond `x0` (`x0 = 0` means globally).
    pub fn check_growth(&self, condition: GrowthCondition, x0: f64, grid: &GrowthGrid) -> GrowthReport {
        growth::check(self, condition, x0, grid)
    }
}

/// Slack allowed when checking pointwise inequalities on samples.
pub const PROPERTY_SLACK: f64 = 1e-9;

/// `e^u - 1 - u` without cancellation for small `u`.
fn exp_minus_one_minus_linear(u: f64) -> f64 {
    if u < 0.1 {
        let mut term = u * u / 2.0;
        let mut sum = term;
        let mut k = 2.0;
        while term > sum * 1e-18 {
            k += 1.0;
            term *= u / k;
            sum += term;
        }
        sum
    } else {
        u.exp_m1() - u
    }
}

/// `sup{x|y| - f(x) : x >= 0}` for convex `f` with `f(0) = 0`.
///
/// Walks a doubling grid from `x = 1` towards the peak of the concave objective,
/// then runs golden section in `ln x` on the bracketing cell.
pub fn conjugate_sup<F>(f: F, y: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let y = y.abs();
    if y == 0.0 {
        return 0.0;
    }
    let g = |x: f64| {
        let v = f(x);
        if v.is_infinite() {
            f64::NEG_INFINITY
        } else {
            x * y - v
        }
    };

    let mut x = 1.0;
    let mut gx = g(x);
    let (lo, hi);
    if g(2.0) > gx {
        loop {
            let next = g(2.0 * x);
            if next <= gx {
                break;
            }
            x *= 2.0;
            gx = next;
            if x > CONJUGATE_GUARD {
                return f64::INFINITY;
            }
        }
        lo = x / 2.0;
        hi = 2.0 * x;
    } else {
        while x > 1e-300 {
            let next = g(x / 2.0);
            if next <= gx {
                break;
            }
            x /= 2.0;
            gx = next;
        }
        lo = x / 2.0;
        hi = 2.0 * x;
    }

    let best = golden_max(|s| g(s.exp()), lo.ln(), hi.ln(), CONJUGATE_TOL, 400);
    best.value.max(gx).max(0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct YoungInequalityReport {
    pub holds: bool,
    pub min_slack: f64,
    pub worst: Option<(f64, f64)>,
    pub samples: usize,
}

/// Log grid used by [`YoungFunction::is_n_function`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NFunctionGrid {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl Default for NFunctionGrid {
    fn default() -> Self {
        Self { lo: 1e-15, hi: 1e15, points: 301 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NFunctionReport {
    /// `Φ(x)/x -> 0` as `x -> 0`.
    pub at_zero: bool,
    /// `Φ(x)/x -> inf` as `x -> inf`.
    pub at_infinity: bool,
    pub vanishes_only_at_zero: bool,
    pub finite_valued: bool,
}

impl NFunctionReport {
    pub fn is_n_function(&self) -> bool {
        self.at_zero && self.at_infinity && self.vanishes_only_at_zero && self.finite_valued
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GrowthCondition {
    /// `Φ(2x) <= K Φ(x)`.
    Delta2,
    /// `Φ(xy) <= d Φ(x) Φ(y)`.
    DeltaPrime,
    /// `Φ(bxy) >= Φ(x) Φ(y)`.
    NablaPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GrowthVerdict {
    WitnessedHolds,
    WitnessedFails,
    Inconclusive,
}

/// Sampling spec for growth checks: `points` log-spaced abscissae in `[lo, hi]`.
///
/// When `x0 > lo` the grid starts at `x0` instead. Two-variable conditions use
/// an evenly thinned copy of at most `pair_points` points per axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthGrid {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub pair_points: usize,
}

impl Default for GrowthGrid {
    fn default() -> Self {
        Self { lo: 1e-6, hi: 1e4, points: 1000, pair_points: 250 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthCounterexample {
    pub x: f64,
    pub y: Option<f64>,
    /// The ratio the condition needed at this point.
    pub required: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    pub condition: GrowthCondition,
    pub global: bool,
    /// Smallest constant (K, d or b) satisfying every grid point.
    pub constant: f64,
    pub x0: f64,
    pub grid_max: f64,
    pub verdict: GrowthVerdict,
    pub counterexample: Option<GrowthCounterexample>,
}

impl GrowthReport {
    pub fn holds(&self) -> bool {
        self.verdict == GrowthVerdict::WitnessedHolds
    }
}

mod growth {
    use super::*;

    /// A constant is accepted when extending the grid by its last two doublings
    /// moves it by at most this factor.
    const STABILITY: f64 = 1.01;

    struct Sample {
        x: f64,
        y: Option<f64>,
        scale: f64,
        required: f64,
    }

    pub(super) fn check(phi: &YoungFunction, condition: GrowthCondition, x0: f64, grid: &GrowthGrid) -> GrowthReport {
        let start = if x0 > grid.lo { x0 } else { grid.lo };
        let mut report = GrowthReport {
            condition,
            global: x0 == 0.0,
            constant: f64::NAN,
            x0,
            grid_max: grid.hi,
            verdict: GrowthVerdict::Inconclusive,
            counterexample: None,
        };
        if start >= grid.hi || grid.points < 2 {
            return report;
        }
        let xs = log_grid(start, grid.hi, grid.points);
        let samples = match condition {
            GrowthCondition::Delta2 => delta2_samples(phi, &xs),
            GrowthCondition::DeltaPrime | GrowthCondition::NablaPrime => {
                let thin = thin(&xs, grid.pair_points);
                pair_samples(phi, condition, &thin)
            }
        };
        if samples.is_empty() {
            return report;
        }

        let head_limit = grid.hi / 4.0;
        let mut k_full = 0.0_f64;
        let mut k_head = 0.0_f64;
        for s in &samples {
            k_full = k_full.max(s.required);
            if s.scale <= head_limit {
                k_head = k_head.max(s.required);
            }
        }
        report.constant = k_full;

        if let Some(s) = samples.iter().find(|s| s.required.is_infinite()) {
            report.verdict = GrowthVerdict::WitnessedFails;
            report.counterexample = Some(GrowthCounterexample { x: s.x, y: s.y, required: s.required });
        } else if k_full > k_head * STABILITY {
            let cut = k_head * STABILITY;
            let s = samples.iter().find(|s| s.required > cut).expect("some sample exceeds the head constant");
            report.verdict = GrowthVerdict::WitnessedFails;
            report.counterexample = Some(GrowthCounterexample { x: s.x, y: s.y, required: s.required });
        } else {
            report.verdict = GrowthVerdict::WitnessedHolds;
        }
        report
    }

    fn thin(xs: &[f64], max_points: usize) -> Vec<f64> {
        if xs.len() <= max_points || max_points < 2 {
            return xs.to_vec();
        }
        let step = (xs.len() - 1) as f64 / (max_points - 1) as f64;
        (0..max_points).map(|i| xs[((i as f64 * step).round() as usize).min(xs.len() - 1)]).collect()
    }

    /// Ratio needed for `num <= K * den`; `None` when the point imposes nothing.
    fn upper_ratio(num: f64, den: f64) -> Option<f64> {
        if den.is_infinite() || num == 0.0 {
            None
        } else if den == 0.0 || num.is_infinite() {
            Some(f64::INFINITY)
        } else {
            Some(num / den)
        }
    }

    fn delta2_samples(phi: &YoungFunction, xs: &[f64]) -> Vec<Sample> {
        xs.iter()
            .filter_map(|&x| {
                upper_ratio(phi.eval(2.0 * x), phi.eval(x)).map(|required| Sample { x, y: None, scale: x, required })
            })
            .collect()
    }

    fn pair_samples(phi: &YoungFunction, condition: GrowthCondition, xs: &[f64]) -> Vec<Sample> {
        let values: Vec<f64> = xs.iter().map(|&x| phi.eval(x)).collect();
        let mut out = Vec::new();
        for (i, &x) in xs.iter().enumerate() {
            for (j, &y) in xs.iter().enumerate().skip(i) {
                let (fx, fy) = (values[i], values[j]);
                let required = match condition {
                    GrowthCondition::DeltaPrime => upper_ratio(phi.eval(x * y), fx * fy),
                    GrowthCondition::NablaPrime => {
                        let target = fx * fy;
                        if !target.is_finite() {
                            None
                        } else {
                            match phi.generalized_inverse(target) {
                                Ok(z) => Some(z / (x * y)),
                                Err(_) => Some(f64::INFINITY),
                            }
                        }
                    }
                    GrowthCondition::Delta2 => unreachable!(),
                };
                if let Some(required) = required {
                    out.push(Sample { x, y: Some(y), scale: x.max(y), required });
                }
            }
        }
        out
    }
}
