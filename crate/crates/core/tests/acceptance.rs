//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any criterion fails.

use std::collections::BTreeMap;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use orlicz_chaos::chaos::{boundedness_equivalence_check, condition_battery, CriterionWindow};
use orlicz_chaos::commands::{run_chaos, run_orbit, ChaosVerdict, OrbitThresholds, Overrides, Target};
use orlicz_chaos::demo::{demo, DEMO_NAMES};
use orlicz_chaos::dynamics::apply_n;
use orlicz_chaos::orlicz::{luxemburg_norm, orlicz_norm, SimpleFunction};
use orlicz_chaos::space::{
    boundedness_constant, Atom, AtomDomain, AtomicSpace, MeasurableSet, Transformation, WeightRule,
};
use orlicz_chaos::system::{SystemDefinition, YoungSpec};
use orlicz_chaos::young::YoungFunction;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn random_space(rng: &mut ChaCha8Rng, atoms: usize) -> AtomicSpace {
    let entries: BTreeMap<Atom, f64> = (0..atoms as Atom).map(|a| (a, 10f64.powf(rng.gen_range(-3.0..3.0)))).collect();
    AtomicSpace::new(AtomDomain::Finite { indices: (0..atoms as Atom).collect() }, WeightRule::Table { entries }).unwrap()
}

fn random_subset(rng: &mut ChaCha8Rng, atoms: usize) -> MeasurableSet {
    let k = rng.gen_range(1..=atoms);
    let mut all: Vec<Atom> = (0..atoms as Atom).collect();
    all.shuffle(rng);
    MeasurableSet::new(all.into_iter().take(k))
}

/// Independent inverse of `exp(x) - 1 - x` by Newton's method from above.
fn exp_inverse_oracle(y: f64) -> f64 {
    let mut x = (2.0 * y).sqrt().max((1.0 + y).ln() + 1.0);
    for _ in 0..200 {
        let f = x.exp_m1() - x - y;
        let step = f / x.exp_m1();
        x -= step;
        if step.abs() <= 1e-16 * x {
            break;
        }
    }
    x
}

fn c1_indicator_norm() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for i in 0..50 {
        let (phi, inverse): (YoungFunction, Box<dyn Fn(f64) -> f64>) = match i % 4 {
            0 => (YoungFunction::plain_power(1.5).unwrap(), Box::new(|y: f64| y.powf(1.0 / 1.5))),
            1 => (YoungFunction::plain_power(2.0).unwrap(), Box::new(|y: f64| y.sqrt())),
            2 => (YoungFunction::plain_power(3.0).unwrap(), Box::new(|y: f64| y.cbrt())),
            _ => (YoungFunction::exp_minus_one(1.0).unwrap(), Box::new(exp_inverse_oracle)),
        };
        let space = random_space(&mut rng, 12);
        let set = random_subset(&mut rng, 12);
        let mu = space.measure(&set);
        let expected = 1.0 / inverse(1.0 / mu);
        let got = luxemburg_norm(&phi, &space, &SimpleFunction::indicator(&set));
        worst = worst.max(rel(got, expected));
    }
    check(worst <= 1e-8, format!("worst relative error {worst:e}"))?;
    Ok(format!("50 cases, worst relative error {worst:.2e}"))
}

fn families() -> Vec<(&'static str, YoungFunction)> {
    vec![
        ("power(2.5)", YoungFunction::power(2.5).unwrap()),
        ("plain_power(1.5)", YoungFunction::plain_power(1.5).unwrap()),
        ("plain_power(3)", YoungFunction::plain_power(3.0).unwrap()),
        ("exp_minus_one(1)", YoungFunction::exp_minus_one(1.0).unwrap()),
        ("piecewise", YoungFunction::piecewise(vec![(0.0, 0.0), (1.0, 0.5), (2.0, 2.0)], 3.0, None).unwrap()),
        ("piecewise_capped", YoungFunction::piecewise(vec![(0.0, 0.0), (0.5, 0.0), (1.0, 1.0)], 4.0, Some(5.0)).unwrap()),
    ]
}

fn c2_norm_sandwich() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = f64::INFINITY;
    for (name, phi) in families() {
        for _ in 0..100 {
            let space = random_space(&mut rng, 10);
            let set = random_subset(&mut rng, 10);
            let values: Vec<f64> = set.members().iter().map(|_| rng.gen_range(-5.0..5.0)).collect();
            let f = SimpleFunction::new(set.members().to_vec(), values).unwrap();
            if f.is_zero() {
                continue;
            }
            let n = luxemburg_norm(&phi, &space, &f);
            let o = orlicz_norm(&phi, &space, &f);
            let slack = ((o - n) / n).min((2.0 * n - o) / n);
            if slack < -1e-8 {
                return Err(format!("{name}: N = {n:e}, orlicz = {o:e}, slack {slack:e}"));
            }
            worst = worst.min(slack);
        }
    }
    Ok(format!("600 vectors, smallest relative slack {worst:.2e}"))
}

fn c3_inverse_sandwich() -> Outcome {
    let grid: Vec<f64> = (0..1000).map(|i| 10f64.powf(-6.0 + 12.0 * i as f64 / 999.0)).collect();
    let mut worst_eq = 0.0f64;
    for (name, phi) in families() {
        for &x in &grid {
            let inv = phi.generalized_inverse(x).map_err(|e| format!("{name}: {e}"))?;
            let back = phi.eval(inv);
            check(back <= x, format!("{name}: Φ(Φ⁻¹({x:e})) = {back:e}"))?;
            if name.starts_with("plain_power") {
                worst_eq = worst_eq.max(rel(back, x));
            }
        }
    }
    check(worst_eq <= 1e-9, format!("plain power round trip off by {worst_eq:e}"))?;
    Ok(format!("6 families x 1000 points, plain power equality within {worst_eq:.1e}"))
}

/// Dense-grid maximization of `x y - x^p / p`, refined around the best cell.
fn conjugate_oracle(p: f64, y: f64) -> f64 {
    let g = |x: f64| x * y - x.powf(p) / p;
    let (mut lo, mut hi) = (-12.0f64, 12.0f64);
    let mut best = f64::NEG_INFINITY;
    for _ in 0..8 {
        let steps = 2000;
        let mut arg = lo;
        for i in 0..=steps {
            let t = lo + (hi - lo) * i as f64 / steps as f64;
            let v = g(10f64.powf(t));
            if v > best {
                best = v;
                arg = t;
            }
        }
        let cell = (hi - lo) / steps as f64;
        lo = arg - 2.0 * cell;
        hi = arg + 2.0 * cell;
    }
    best
}

fn c4_conjugate() -> Outcome {
    let mut worst_impl = 0.0f64;
    let mut worst_oracle = 0.0f64;
    for p in [1.5, 2.0, 3.0, 4.0] {
        let q = p / (p - 1.0);
        let phi = YoungFunction::power(p).unwrap();
        for i in 0..100 {
            let y = 10f64.powf(-2.0 + 4.0 * i as f64 / 99.0);
            let closed = y.powf(q) / q;
            let oracle = conjugate_oracle(p, y);
            worst_oracle = worst_oracle.max(rel(oracle, closed));
            worst_impl = worst_impl.max(rel(phi.complement(y), closed)).max(rel(phi.complement(y), oracle));
        }
    }
    check(worst_oracle <= 1e-6, format!("grid oracle disagrees with y^q/q by {worst_oracle:e}"))?;
    check(worst_impl <= 1e-6, format!("complement off by {worst_impl:e}"))?;
    Ok(format!("4 exponents x 100 points, complement within {worst_impl:.1e}, oracle within {worst_oracle:.1e}"))
}

#[derive(Debug, PartialEq)]
struct Verdict {
    condition_i: Option<bool>,
    per_set: Vec<bool>,
    condition_ii: bool,
    items: Vec<(String, bool)>,
}

const ITEMS: [&str; 6] = ["3", "4", "5", "6_literal", "6_corrected", "7"];

fn library_verdict(v: &ChaosVerdict) -> Verdict {
    let b = v.battery.as_ref().unwrap();
    Verdict {
        condition_i: v.condition_i.as_ref().map(|c| c.witnessed),
        per_set: v.condition_i.as_ref().map_or(Vec::new(), |c| c.per_set.values().map(|s| s.witnessed).collect()),
        condition_ii: v.condition_ii.witnessed,
        items: ITEMS.iter().map(|k| (k.to_string(), b.witnessed(k))).collect(),
    }
}

/// The same verdict computed from measures alone, with every threshold on
/// `Φ⁻¹(1/μ) = μ^{-1/p}` moved onto `1/μ`.
fn measure_only_verdict(sys: &SystemDefinition, set: &MeasurableSet, p: f64, w: &CriterionWindow) -> Verdict {
    let n = w.horizon;
    let mp = w.divergence_threshold.powf(p);
    let mut back = Vec::new();
    let mut current = set.clone();
    for k in 0..=2 * n {
        if k > 0 {
            current = sys.map.preimage_set(&current).unwrap();
        }
        back.push(sys.space.measure(&current));
    }
    let mut fwd = Vec::new();
    let mut current = set.clone();
    for k in 0..=n {
        if k > 0 {
            current = sys.map.forward_image(&current, 1);
        }
        fwd.push(sys.space.measure(&current));
    }
    let inv = |m: f64| if m == 0.0 { f64::INFINITY } else { 1.0 / m };

    // record lows of the measure sequence = record lows of the norms
    let mut beta = Vec::new();
    let mut low = back[0];
    for (k, &m) in back.iter().enumerate().take(n + 1).skip(1) {
        if m < low {
            beta.push(k);
            low = m;
        }
    }
    let (condition_i, per_set) = if beta.is_empty() {
        (None, Vec::new())
    } else {
        let vals: Vec<f64> = beta.iter().map(|&b| inv(back[b])).collect();
        let len = vals.len();
        let q = (len / 4).max(1);
        let first = vals[..q].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let last = vals[len - q..].iter().copied().fold(f64::INFINITY, f64::min);
        let ok = vals.iter().any(|v| v.is_infinite()) || (vals[len - 1] >= mp && len >= 2 && last > first);
        (Some(ok), vec![ok])
    };
    let ratio = |k: usize| if back[k] == 0.0 { 0.0 } else { back[k] / back[0] };
    let seen = (1..=n).map(ratio).fold(f64::NEG_INFINITY, f64::max);
    let doubled = (1..=2 * n).map(ratio).fold(f64::NEG_INFINITY, f64::max);
    let condition_ii = seen >= mp && doubled > seen;

    let tail = n.div_ceil(2);
    let tmax = |xs: &[f64]| xs[tail..=n].iter().map(|&m| inv(m)).fold(f64::NEG_INFINITY, f64::max);
    let i3 = tmax(&back) >= mp;
    let i4 = tmax(&fwd) >= mp;
    let window_min = back[..=n].iter().map(|&m| inv(m)).fold(f64::INFINITY, f64::min);
    let tail_min = back[tail..=n].iter().map(|&m| inv(m)).fold(f64::INFINITY, f64::min);
    let tail_min_mu = back[tail..=n].iter().copied().fold(f64::INFINITY, f64::min);
    let tail_max_mu = back[tail..=n].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let semi = w.semi_irregular_floor;
    let items = vec![
        i3,
        i4,
        i3 && i4,
        window_min >= w.positivity_floor.powf(p) && i3,
        i3 && tail_min <= semi.powf(-p),
        tail_min_mu <= w.divergence_threshold.powf(-p) && tail_max_mu >= semi.powf(p),
    ];
    Verdict {
        condition_i,
        per_set,
        condition_ii,
        items: ITEMS.iter().map(|k| k.to_string()).zip(items).collect(),
    }
}

fn c5_lp_reduction() -> Outcome {
    let mut compared = 0;
    for name in DEMO_NAMES {
        for p in [1.5, 2.0, 3.0] {
            let sys = demo(name).unwrap().with_young(YoungSpec::PlainPower { params: [p] }).unwrap();
            let v = run_chaos(&sys, &Target::Set("F0".into()), &Overrides::default(), true).map_err(|e| e.to_string())?;
            let lib = library_verdict(&v);
            let oracle = measure_only_verdict(&sys, &sys.sets["F0"], p, &v.window);
            check(lib == oracle, format!("{name}, p = {p}: library {lib:?} vs measure-only {oracle:?}"))?;
            compared += 1;
        }
    }
    Ok(format!("{compared} demo/exponent pairs, verdicts identical"))
}

fn c6_chaotic_exemplar() -> Outcome {
    let start = Instant::now();
    let sys = demo("oscillating-shift").unwrap();
    let o = Overrides { horizon: Some(1000), ..Overrides::default() };
    let v = run_chaos(&sys, &Target::Vector("f_irr".into()), &o, false).map_err(|e| e.to_string())?;
    let ci = v.condition_i.as_ref().ok_or("no record lows")?;
    check(ci.witnessed, "condition I not witnessed")?;
    let tail_min = ci.per_set.values().map(|s| s.tail_value).fold(f64::INFINITY, f64::min);
    check(tail_min >= 1e3, format!("condition I tail value {tail_min:e}"))?;
    let cii = &v.condition_ii;
    check(cii.witnessed && cii.sup_ratio_seen >= 1e3 && cii.sup_ratio_doubled > cii.sup_ratio_seen, format!("condition II {cii:?}"))?;
    let orbit = run_orbit(&sys, &Target::Vector("f_irr".into()), &o, OrbitThresholds { eps: 1e-3, blowup: 1e3 })
        .map_err(|e| e.to_string())?;
    check(orbit.irregular.is_witnessed, format!("irregular evidence {:?}", orbit.irregular))?;
    let secs = start.elapsed().as_secs_f64();
    check(secs <= 10.0, format!("took {secs:.1}s"))?;
    Ok(format!(
        "tail s- {tail_min:.3e}, ratio {:.3e} -> {:.3e} at 2N, norms {:.2e}..{:.2e}, {secs:.2}s",
        cii.sup_ratio_seen, cii.sup_ratio_doubled, orbit.irregular.min_norm, orbit.irregular.max_norm
    ))
}

fn c7_non_chaotic() -> Outcome {
    let sys = demo("rotation").unwrap();
    let mut targets: Vec<Target> = sys.vectors.keys().map(|k| Target::Vector(k.clone())).collect();
    targets.extend(sys.sets.keys().map(|k| Target::Set(k.clone())));
    let mut worst = 1.0f64;
    for horizon in [10, 100, 1000, 10_000] {
        let o = Overrides { horizon: Some(horizon), ..Overrides::default() };
        for t in &targets {
            let orbit = run_orbit(&sys, t, &o, OrbitThresholds::default()).map_err(|e| e.to_string())?;
            let r = orbit.orbit.max_norm / orbit.orbit.min_norm;
            worst = worst.max(r);
            check(r <= 1.0 + 1e-12, format!("{t:?} at N = {horizon}: max/min {r}"))?;
            check(!orbit.irregular.is_witnessed && !orbit.semi_irregular.is_witnessed, format!("{t:?}: orbit evidence"))?;
            let v = run_chaos(&sys, t, &o, matches!(t, Target::Set(_))).map_err(|e| e.to_string())?;
            check(!v.condition_i.as_ref().is_some_and(|c| c.witnessed), format!("{t:?} at N = {horizon}: condition I"))?;
            check(!v.condition_ii.witnessed, format!("{t:?} at N = {horizon}: condition II"))?;
            check(!v.injective_forward.as_ref().is_some_and(|e| e.witnessed), format!("{t:?}: forward criterion"))?;
            if let Some(b) = &v.battery {
                let hit: Vec<&String> = b.items.iter().filter(|(_, e)| e.witnessed).map(|(k, _)| k).collect();
                check(hit.is_empty(), format!("{t:?} at N = {horizon}: items {hit:?}"))?;
            }
        }
    }
    Ok(format!("{} targets at N up to 1e4, max/min ratio {worst}", targets.len()))
}

fn c8_bridge() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for name in DEMO_NAMES {
        let sys = demo(name).unwrap();
        for set in sys.sets.values() {
            let chi = SimpleFunction::indicator(set);
            let mut pre = set.clone();
            for n in 0..=200 {
                if n > 0 {
                    pre = sys.map.preimage_set(&pre).unwrap();
                }
                let mu = sys.space.measure(&pre);
                if mu == 0.0 {
                    break;
                }
                let g = apply_n(&sys.map, &chi, n).unwrap();
                let product = luxemburg_norm(&sys.phi, &sys.space, &g) * sys.phi.generalized_inverse(1.0 / mu).unwrap();
                worst = worst.max((product - 1.0).abs());
                count += 1;
            }
        }
    }
    check(worst <= 1e-8, format!("worst |product - 1| = {worst:e}"))?;
    Ok(format!("{count} (demo, set, n) triples, worst |product - 1| {worst:.2e}"))
}

fn c9_boundedness() -> Outcome {
    let mut summary = Vec::new();
    for name in DEMO_NAMES {
        let sys = demo(name).unwrap();
        let w = CriterionWindow { candidates: 200, seed: 42, ..sys.window };
        let (lo, hi) = w.set_window;
        let k = boundedness_constant(&sys.space, &sys.map, lo, hi).unwrap().sup_ratio;
        if !k.is_finite() {
            continue;
        }
        let r = boundedness_equivalence_check(&sys.phi, &sys.space, &sys.map, &w).map_err(|e| e.to_string())?;
        check(r.holds, format!("{name}: no grid L works, worst set {:?}", r.worst_case))?;
        let l = r.l.ok_or(format!("{name}: no L"))?;
        check(l.is_finite(), format!("{name}: L = {l}"))?;
        summary.push(format!("{name} K={k:.3} L={l:.3}"));
    }
    let space = AtomicSpace::new(AtomDomain::Integers, WeightRule::Custom(Arc::new(|n: Atom| (-((n * n) as f64)).exp2()))).unwrap();
    let shift = Transformation::shift(1);
    let ks: Vec<f64> =
        [2, 4, 8, 16].iter().map(|&h| boundedness_constant(&space, &shift, -h, h).unwrap().sup_ratio).collect();
    check(ks.windows(2).all(|p| p[1] > p[0]), format!("window constants {ks:?} are not increasing"))?;
    // w(a-1)/w(a) = 2^(2a-1) peaks at the right edge
    for (k, h) in ks.iter().zip([2i32, 4, 8, 16]) {
        check(*k == 2f64.powi(2 * h - 1), format!("window {h}: K = {k}"))?;
    }
    Ok(format!("{}; unbounded system K = {ks:?}", summary.join(", ")))
}

/// One of the random system shapes, with truthful hypothesis flags.
fn random_system(rng: &mut ChaCha8Rng, i: usize) -> (String, YoungFunction, AtomicSpace, Transformation) {
    let phi = match rng.gen_range(0..4) {
        0 => YoungFunction::plain_power(rng.gen_range(1.2..4.0)).unwrap(),
        1 => YoungFunction::power(rng.gen_range(1.2..4.0)).unwrap(),
        2 => YoungFunction::exp_minus_one(rng.gen_range(0.5..2.0)).unwrap(),
        _ => {
            let s1 = rng.gen_range(0.2..1.0);
            let s2 = s1 + rng.gen_range(0.1..2.0);
            YoungFunction::piecewise(vec![(0.0, 0.0), (1.0, s1), (2.0, s1 + s2)], s2 + rng.gen_range(0.1..2.0), None).unwrap()
        }
    };
    let m = rng.gen_range(4..12) as Atom;
    let finite = |rng: &mut ChaCha8Rng| {
        // F0 = {0} gets weight near 1
        let entries: BTreeMap<Atom, f64> =
            (0..m).map(|a| (a, if a == 0 { rng.gen_range(0.9..1.1) } else { rng.gen_range(0.5..2.0) })).collect();
        let total: f64 = entries.values().sum();
        AtomicSpace::new(AtomDomain::Finite { indices: (0..m).collect() }, WeightRule::Table { entries })
            .unwrap()
            .with_total(total)
            .unwrap()
    };
    match i % 6 {
        0 => (format!("rotation mod {m}"), phi, finite(rng), Transformation::rotation(m, rng.gen_range(1..m)).unwrap()),
        1 => {
            let mut image: Vec<Atom> = (0..m).collect();
            image.shuffle(rng);
            let map: BTreeMap<Atom, Atom> = (0..m).zip(image).collect();
            (format!("permutation of {m}"), phi, finite(rng), Transformation::table(map, true).unwrap())
        }
        2 => {
            let map: BTreeMap<Atom, Atom> = (0..m).map(|a| (a, rng.gen_range(0..m))).collect();
            (format!("random table on {m}"), phi, finite(rng), Transformation::table(map, false).unwrap())
        }
        3 => {
            let lengths: Vec<u64> = (0..8).map(|_| rng.gen_range(5..40)).collect();
            let rule = WeightRule::BlockOscillating {
                base: 1.0,
                up_factor: rng.gen_range(1.5..3.0),
                down_factor: rng.gen_range(1.5..3.0),
                block_lengths: lengths,
            };
            ("block-oscillating shift".into(), phi, AtomicSpace::new(AtomDomain::Integers, rule).unwrap(), Transformation::shift(1))
        }
        4 => {
            let r = rng.gen_range(0.8..1.25);
            let space = AtomicSpace::new(AtomDomain::Integers, WeightRule::Geometric { ratio: r }).unwrap();
            (format!("geometric shift r={r:.3}"), phi, space, Transformation::shift(1))
        }
        _ => {
            let r: f64 = rng.gen_range(0.9..0.97);
            let space = AtomicSpace::new(AtomDomain::Integers, WeightRule::Custom(Arc::new(move |a: Atom| r.powi(a.abs() as i32))))
                .unwrap()
                .with_total((1.0 + r) / (1.0 - r))
                .unwrap();
            (format!("two-sided decaying shift r={r:.3}"), phi, space, Transformation::shift(1))
        }
    }
}

fn c10_audit() -> Outcome {
    let mut legs = 0;
    let mut active = 0;
    let mut inconclusive = 0;
    let mut tally = |audit: &[orlicz_chaos::chaos::AuditEntry], label: &str| -> Result<(), String> {
        for e in audit {
            legs += 1;
            if e.antecedent {
                active += 1;
            }
            if matches!(e.status, orlicz_chaos::chaos::AuditStatus::Inconclusive { .. }) {
                inconclusive += 1;
            }
            check(!e.is_violation(), format!("{label}: leg {} violated ({:?})", e.leg, e.status))?;
        }
        Ok(())
    };
    for name in DEMO_NAMES {
        let sys = demo(name).unwrap();
        let b = condition_battery(&sys.phi, &sys.space, &sys.map, &sys.sets["F0"], &sys.window).map_err(|e| e.to_string())?;
        tally(&b.audit, name)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..20 {
        let (label, phi, space, t) = random_system(&mut rng, i);
        let window = CriterionWindow { horizon: 300, set_window: (-10, 10), candidates: 50, seed: i as u64, ..CriterionWindow::default() };
        let b = condition_battery(&phi, &space, &t, &MeasurableSet::singleton(0), &window).map_err(|e| e.to_string())?;
        tally(&b.audit, &label)?;
    }
    Ok(format!("24 systems, {legs} legs, {active} with witnessed antecedent, {inconclusive} inconclusive, 0 violations"))
}

fn c11_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_orlicz-chaos");
    for name in DEMO_NAMES {
        let run = || {
            Command::new(bin)
                .args(["chaos", "--demo", name, "--set", "F0", "--battery", "--seed", "42"])
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        check(a.status.success(), format!("{name}: exit {:?}: {}", a.status, String::from_utf8_lossy(&a.stderr)))?;
        check(!a.stdout.is_empty() && a.stdout == b.stdout, format!("{name}: payloads differ"))?;
    }
    Ok("4 demos, byte-identical JSON".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("indicator-norm identity", c1_indicator_norm),
        ("norm sandwich", c2_norm_sandwich),
        ("inverse sandwich", c3_inverse_sandwich),
        ("conjugate oracle", c4_conjugate),
        ("L^p reduction", c5_lp_reduction),
        ("chaotic exemplar", c6_chaotic_exemplar),
        ("non-chaotic exemplar", c7_non_chaotic),
        ("norm-measure bridge", c8_bridge),
        ("boundedness equivalence", c9_boundedness),
        ("implication audit", c10_audit),
        ("determinism", c11_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.2}s): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
