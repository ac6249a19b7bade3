//! Countable atomic measure spaces, self-maps of atoms with exact preimage
//! enumeration, and the boundedness diagnostic for composition operators.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

/// Atom index. Every space in this crate is a subset of the integers.
pub type Atom = i64;

/// Default limit on a single fiber `φ⁻¹({a})`.
pub const DEFAULT_FIBER_CAP: usize = 1_000_000;
/// Default limit on the size of any intermediate preimage set.
pub const DEFAULT_SET_CAP: usize = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpaceError {
    #[error("fiber of atom {atom} has {size} elements, above the cap of {cap}")]
    InfiniteFiber { atom: Atom, size: usize, cap: usize },
    #[error("preimage set reached {size} atoms, above the cap of {cap}")]
    SetExplosion { size: usize, cap: usize },
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("invalid space or map data: {0}")]
    Invalid(String),
}

/// A finite, sorted, duplicate-free set of atoms.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct MeasurableSet {
    members: Vec<Atom>,
}

impl MeasurableSet {
    pub fn new<I: IntoIterator<Item = Atom>>(atoms: I) -> Self {
        let mut members: Vec<Atom> = atoms.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self { members }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn singleton(a: Atom) -> Self {
        Self { members: vec![a] }
    }

    /// Atoms `lo..=hi`.
    pub fn range(lo: Atom, hi: Atom) -> Self {
        Self { members: (lo..=hi).collect() }
    }

    pub fn members(&self) -> &[Atom] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: Atom) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::new(self.members.iter().chain(other.members.iter()).copied())
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        !self.members.iter().any(|a| other.contains(*a))
    }
}

impl fmt::Display for MeasurableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// Which integers are atoms.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AtomDomain {
    Integers,
    NonNegative,
    Finite { indices: Vec<Atom> },
}

impl AtomDomain {
    pub fn contains(&self, a: Atom) -> bool {
        match self {
            AtomDomain::Integers => true,
            AtomDomain::NonNegative => a >= 0,
            AtomDomain::Finite { indices } => indices.binary_search(&a).is_ok(),
        }
    }

    /// Atoms of the domain inside `lo..=hi`.
    pub fn atoms_in(&self, lo: Atom, hi: Atom) -> Vec<Atom> {
        match self {
            AtomDomain::Integers => (lo..=hi).collect(),
            AtomDomain::NonNegative => (lo.max(0)..=hi).collect(),
            AtomDomain::Finite { indices } => indices.iter().copied().filter(|a| (lo..=hi).contains(a)).collect(),
        }
    }
}

/// Cumulative step counts for one period of a block-oscillating rule.
#[derive(Debug, Clone, PartialEq)]
struct BlockTable {
    /// `(first step, ups before it, downs before it, is_up)` per block.
    blocks: Vec<(u64, u64, u64, bool)>,
    period: u64,
    period_ups: u64,
    period_downs: u64,
}

impl BlockTable {
    fn new(lengths: &[u64]) -> Self {
        let mut blocks = Vec::with_capacity(lengths.len());
        let (mut start, mut ups, mut downs) = (0u64, 0u64, 0u64);
        for (i, &len) in lengths.iter().enumerate() {
            let is_up = i % 2 == 1;
            blocks.push((start, ups, downs, is_up));
            start += len;
            if is_up {
                ups += len;
            } else {
                downs += len;
            }
        }
        // an odd-length list alternates differently on the next pass; unroll once
        if lengths.len() % 2 == 1 {
            for (i, &len) in lengths.iter().enumerate() {
                let is_up = i % 2 == 0;
                blocks.push((start, ups, downs, is_up));
                start += len;
                if is_up {
                    ups += len;
                } else {
                    downs += len;
                }
            }
        }
        Self { blocks, period: start, period_ups: ups, period_downs: downs }
    }

    /// Up and down steps among steps `1..=n`.
    fn counts(&self, n: u64) -> (u64, u64) {
        let cycles = n / self.period;
        let rem = n % self.period;
        let idx = self.blocks.partition_point(|b| b.0 < rem).saturating_sub(1);
        let (start, ups, downs, is_up) = self.blocks[idx];
        let inside = rem - start;
        let (u, d) = if is_up { (ups + inside, downs) } else { (ups, downs + inside) };
        (cycles * self.period_ups + u, cycles * self.period_downs + d)
    }
}

pub type WeightFn = Arc<dyn Fn(Atom) -> f64 + Send + Sync>;

/// How an atom's measure is computed.
#[derive(Clone)]
pub enum WeightRule {
    /// `ratio^n`.
    Geometric { ratio: f64 },
    Uniform { value: f64 },
    Table { entries: BTreeMap<Atom, f64> },
    /// `base · up^u(|n|) / down^d(|n|)`, where the first `|n|` steps are split
    /// into alternating down and up blocks (starting with a down block) whose
    /// lengths cycle through `block_lengths`.
    BlockOscillating { base: f64, up_factor: f64, down_factor: f64, block_lengths: Vec<u64> },
    Custom(WeightFn),
}

impl fmt::Debug for WeightRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightRule::Geometric { ratio } => write!(f, "Geometric {{ ratio: {ratio} }}"),
            WeightRule::Uniform { value } => write!(f, "Uniform {{ value: {value} }}"),
            WeightRule::Table { entries } => write!(f, "Table({} entries)", entries.len()),
            WeightRule::BlockOscillating { base, up_factor, down_factor, block_lengths } => write!(
                f,
                "BlockOscillating {{ base: {base}, up: {up_factor}, down: {down_factor}, blocks: {} }}",
                block_lengths.len()
            ),
            WeightRule::Custom(_) => write!(f, "Custom"),
        }
    }
}

#[derive(Clone, Debug)]
enum CompiledWeight {
    Geometric { ln_ratio: f64, ratio: f64 },
    Uniform(f64),
    Table(BTreeMap<Atom, f64>),
    Blocks { base: f64, up: f64, down: f64, table: BlockTable },
    Custom(WeightRuleHandle),
}

#[derive(Clone)]
struct WeightRuleHandle(WeightFn);

impl fmt::Debug for WeightRuleHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<fn>")
    }
}

/// Product `base · up^u · down^(-d)`, falling back to logs when a power overflows.
fn block_weight(base: f64, up: f64, down: f64, u: u64, d: u64) -> f64 {
    if u <= i32::MAX as u64 && d <= i32::MAX as u64 {
        let pu = up.powi(u as i32);
        let pd = down.powi(d as i32);
        if pu.is_finite() && pd.is_finite() && pd > 0.0 && pu > 0.0 {
            let w = base * pu / pd;
            if w.is_finite() && w > 0.0 {
                return w;
            }
        }
    }
    (base.ln() + u as f64 * up.ln() - d as f64 * down.ln()).exp()
}

/// A countable atomic measure space with strictly positive weights.
#[derive(Debug, Clone)]
pub struct AtomicSpace {
    domain: AtomDomain,
    rule: WeightRule,
    compiled: CompiledWeight,
    total: Option<f64>,
}

impl AtomicSpace {
    pub fn new(domain: AtomDomain, rule: WeightRule) -> Result<Self, SpaceError> {
        let domain = match domain {
            AtomDomain::Finite { mut indices } => {
                indices.sort_unstable();
                indices.dedup();
                AtomDomain::Finite { indices }
            }
            d => d,
        };
        let compiled = match &rule {
            WeightRule::Geometric { ratio } => {
                if !(*ratio > 0.0 && ratio.is_finite()) {
                    return Err(SpaceError::Invalid(format!("geometric ratio {ratio} must be positive and finite")));
                }
                CompiledWeight::Geometric { ln_ratio: ratio.ln(), ratio: *ratio }
            }
            WeightRule::Uniform { value } => CompiledWeight::Uniform(*value),
            WeightRule::Table { entries } => CompiledWeight::Table(entries.clone()),
            WeightRule::BlockOscillating { base, up_factor, down_factor, block_lengths } => {
                if block_lengths.is_empty() || block_lengths.iter().any(|&l| l == 0) {
                    return Err(SpaceError::Invalid("block lengths must be a nonempty list of positive integers".into()));
                }
                for (name, v) in [("base", base), ("up_factor", up_factor), ("down_factor", down_factor)] {
                    if !(*v > 0.0 && v.is_finite()) {
                        return Err(SpaceError::Invalid(format!("{name} = {v} must be positive and finite")));
                    }
                }
                CompiledWeight::Blocks {
                    base: *base,
                    up: *up_factor,
                    down: *down_factor,
                    table: BlockTable::new(block_lengths),
                }
            }
            WeightRule::Custom(f) => CompiledWeight::Custom(WeightRuleHandle(f.clone())),
        };
        Ok(Self { domain, rule, compiled, total: None })
    }

    /// Declares `Σ weights = total`; enables the partial-sum contract.
    pub fn with_total(mut self, total: f64) -> Result<Self, SpaceError> {
        if !(total > 0.0 && total.is_finite()) {
            return Err(SpaceError::Invalid(format!("declared total {total} must be positive and finite")));
        }
        self.total = Some(total);
        Ok(self)
    }

    pub fn domain(&self) -> &AtomDomain {
        &self.domain
    }

    pub fn rule(&self) -> &WeightRule {
        &self.rule
    }

    pub fn total(&self) -> Option<f64> {
        self.total
    }

    pub fn total_finite(&self) -> bool {
        self.total.is_some()
    }

    /// Raw weight of atom `a`. Use [`AtomicSpace::checked_weight`] to enforce the contract.
    pub fn weight(&self, a: Atom) -> f64 {
        match &self.compiled {
            CompiledWeight::Geometric { ln_ratio, ratio } => {
                if let Ok(n) = i32::try_from(a) {
                    let w = ratio.powi(n);
                    if w.is_finite() && w > 0.0 {
                        return w;
                    }
                }
                (a as f64 * ln_ratio).exp()
            }
            CompiledWeight::Uniform(v) => *v,
            CompiledWeight::Table(entries) => entries.get(&a).copied().unwrap_or(f64::NAN),
            CompiledWeight::Blocks { base, up, down, table } => {
                let (u, d) = table.counts(a.unsigned_abs());
                block_weight(*base, *up, *down, u, d)
            }
            CompiledWeight::Custom(f) => (f.0)(a),
        }
    }

    pub fn checked_weight(&self, a: Atom) -> Result<f64, SpaceError> {
        if !self.domain.contains(a) {
            return Err(SpaceError::ContractViolation(format!("atom {a} is outside the atom domain")));
        }
        let w = self.weight(a);
        if w > 0.0 && w.is_finite() {
            Ok(w)
        } else {
            Err(SpaceError::ContractViolation(format!("weight of atom {a} is {w}; weights must be positive and finite")))
        }
    }

    /// `μ(set)`: the sum of member weights.
    pub fn measure(&self, set: &MeasurableSet) -> f64 {
        set.members().iter().map(|&a| self.weight(a)).sum()
    }

    /// Checks positivity and, if a total is declared, the partial-sum bound over `lo..=hi`.
    pub fn validate_window(&self, lo: Atom, hi: Atom) -> Result<(), SpaceError> {
        let mut partial = 0.0;
        for a in self.domain.atoms_in(lo, hi) {
            partial += self.checked_weight(a)?;
        }
        if let Some(total) = self.total {
            if partial > total * (1.0 + 1e-9) {
                return Err(SpaceError::ContractViolation(format!(
                    "partial sum {partial} over atoms {lo}..={hi} exceeds the declared total {total}"
                )));
            }
        }
        Ok(())
    }
}

pub type ForwardFn = Arc<dyn Fn(Atom) -> Atom + Send + Sync>;
pub type PreimageFn = Arc<dyn Fn(Atom) -> Vec<Atom> + Send + Sync>;

/// The rule behind a [`Transformation`].
#[derive(Clone)]
pub enum MapRule {
    /// `n ↦ n + step`.
    Shift { step: i64 },
    /// `n ↦ (n + step) mod modulus` on `0..modulus`.
    Rotation { modulus: i64, step: i64 },
    /// `n ↦ ⌊n / 2⌋` on the nonnegative integers.
    Halving,
    Table { forward: BTreeMap<Atom, Atom> },
    Custom { forward: ForwardFn, preimage: PreimageFn },
}

impl fmt::Debug for MapRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapRule::Shift { step } => write!(f, "Shift {{ step: {step} }}"),
            MapRule::Rotation { modulus, step } => write!(f, "Rotation {{ modulus: {modulus}, step: {step} }}"),
            MapRule::Halving => write!(f, "Halving"),
            MapRule::Table { forward } => write!(f, "Table({} entries)", forward.len()),
            MapRule::Custom { .. } => write!(f, "Custom"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub fiber_cap: usize,
    pub set_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { fiber_cap: DEFAULT_FIBER_CAP, set_cap: DEFAULT_SET_CAP }
    }
}

/// A self-map of atoms.
#[derive(Debug, Clone)]
pub struct Transformation {
    rule: MapRule,
    inverse: BTreeMap<Atom, Vec<Atom>>,
    injective: bool,
    limits: Limits,
}

impl Transformation {
    /// Builds the map; `injective` is a declaration checked by [`Transformation::verify_injective`].
    pub fn new(rule: MapRule, injective: bool) -> Result<Self, SpaceError> {
        let mut inverse: BTreeMap<Atom, Vec<Atom>> = BTreeMap::new();
        match &rule {
            MapRule::Rotation { modulus, .. } if *modulus <= 0 => {
                return Err(SpaceError::Invalid(format!("rotation modulus {modulus} must be positive")));
            }
            MapRule::Table { forward } => {
                for (&b, &a) in forward {
                    inverse.entry(a).or_default().push(b);
                }
            }
            _ => {}
        }
        Ok(Self { rule, inverse, injective, limits: Limits::default() })
    }

    pub fn shift(step: i64) -> Self {
        Self::new(MapRule::Shift { step }, true).expect("shift is always valid")
    }

    pub fn rotation(modulus: i64, step: i64) -> Result<Self, SpaceError> {
        Self::new(MapRule::Rotation { modulus, step }, true)
    }

    pub fn halving() -> Self {
        Self::new(MapRule::Halving, false).expect("halving is always valid")
    }

    pub fn table(forward: BTreeMap<Atom, Atom>, injective: bool) -> Result<Self, SpaceError> {
        Self::new(MapRule::Table { forward }, injective)
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn rule(&self) -> &MapRule {
        &self.rule
    }

    pub fn is_declared_injective(&self) -> bool {
        self.injective
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn forward(&self, a: Atom) -> Atom {
        match &self.rule {
            MapRule::Shift { step } => a + step,
            MapRule::Rotation { modulus, step } => (a + step).rem_euclid(*modulus),
            MapRule::Halving => a.div_euclid(2),
            MapRule::Table { forward } => *forward.get(&a).unwrap_or(&a),
            MapRule::Custom { forward, .. } => forward(a),
        }
    }

    /// The fiber `φ⁻¹({a})`, sorted.
    pub fn preimage(&self, a: Atom) -> Result<Vec<Atom>, SpaceError> {
        let fiber = match &self.rule {
            MapRule::Shift { step } => vec![a - step],
            MapRule::Rotation { modulus, step } => {
                if (0..*modulus).contains(&a) {
                    vec![(a - step).rem_euclid(*modulus)]
                } else {
                    Vec::new()
                }
            }
            MapRule::Halving => {
                if a >= 0 {
                    vec![2 * a, 2 * a + 1]
                } else {
                    Vec::new()
                }
            }
            MapRule::Table { .. } => self.inverse.get(&a).cloned().unwrap_or_default(),
            MapRule::Custom { preimage, .. } => {
                let mut v = preimage(a);
                v.sort_unstable();
                v.dedup();
                v
            }
        };
        if fiber.len() > self.limits.fiber_cap {
            return Err(SpaceError::InfiniteFiber { atom: a, size: fiber.len(), cap: self.limits.fiber_cap });
        }
        Ok(fiber)
    }

    /// `φ⁻¹(set)`, with every fiber element cross-checked against `forward`.
    pub fn preimage_set(&self, set: &MeasurableSet) -> Result<MeasurableSet, SpaceError> {
        let mut out = Vec::with_capacity(set.len());
        for &a in set.members() {
            for b in self.preimage(a)? {
                if self.forward(b) != a {
                    return Err(SpaceError::ContractViolation(format!(
                        "atom {b} is listed in the fiber of {a} but maps to {}",
                        self.forward(b)
                    )));
                }
                out.push(b);
            }
            if out.len() > self.limits.set_cap {
                return Err(SpaceError::SetExplosion { size: out.len(), cap: self.limits.set_cap });
            }
        }
        Ok(MeasurableSet::new(out))
    }

    /// `φ⁻ⁿ(set)`.
    pub fn iterated_preimage(&self, set: &MeasurableSet, n: usize) -> Result<MeasurableSet, SpaceError> {
        let mut current = set.clone();
        for _ in 0..n {
            if current.is_empty() {
                break;
            }
            current = self.preimage_set(&current)?;
        }
        Ok(current)
    }

    /// `φⁿ(set)`.
    pub fn forward_image(&self, set: &MeasurableSet, n: usize) -> MeasurableSet {
        let mut current = set.clone();
        for _ in 0..n {
            current = MeasurableSet::new(current.members().iter().map(|&a| self.forward(a)));
        }
        current
    }

    /// Checks that no fiber of an atom in `atoms` has more than one element.
    pub fn verify_injective(&self, atoms: &[Atom]) -> Result<(), SpaceError> {
        for &a in atoms {
            let fiber = self.preimage(a)?;
            if fiber.len() > 1 {
                return Err(SpaceError::ContractViolation(format!(
                    "map declared injective but atoms {fiber:?} all map to {a}"
                )));
            }
        }
        Ok(())
    }
}

/// Largest per-atom ratio `μ(φ⁻¹({a})) / μ({a})` over a window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundednessReport {
    pub sup_ratio: f64,
    pub witness: Atom,
    pub window: (Atom, Atom),
}

/// Per-atom supremum of `μ(φ⁻¹({a})) / w(a)` over the domain atoms in `lo..=hi`.
///
/// Since measures are sums over atoms and fibers of distinct atoms are
/// disjoint, `μ(φ⁻¹F) = Σ_{a∈F} μ(φ⁻¹{a}) ≤ sup_ratio · μ(F)` for every finite
/// `F` inside the window, so this is also the supremum over such sets.
pub fn boundedness_constant(space: &AtomicSpace, t: &Transformation, lo: Atom, hi: Atom) -> Result<BoundednessReport, SpaceError> {
    let atoms = space.domain().atoms_in(lo, hi);
    if atoms.is_empty() {
        return Err(SpaceError::Invalid(format!("window {lo}..={hi} contains no atoms")));
    }
    let mut best = BoundednessReport { sup_ratio: f64::NEG_INFINITY, witness: atoms[0], window: (lo, hi) };
    for a in atoms {
        let pre = t.preimage_set(&MeasurableSet::singleton(a))?;
        let ratio = space.measure(&pre) / space.checked_weight(a)?;
        if ratio > best.sup_ratio {
            best.sup_ratio = ratio;
            best.witness = a;
        }
    }
    Ok(best)
}

/// On an atomic space with positive weights there are no null atoms, so
/// non-singularity reduces to the weight contract on the window.
pub fn check_nonsingularity(space: &AtomicSpace, lo: Atom, hi: Atom) -> Result<bool, SpaceError> {
    if lo > hi {
        return Ok(true);
    }
    for a in space.domain().atoms_in(lo, hi) {
        space.checked_weight(a)?;
    }
    Ok(true)
}
