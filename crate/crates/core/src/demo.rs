//! Built-in demo systems, shipped as ordinary system definitions.

use std::collections::BTreeMap;

use crate::system::{
    AtomsSpec, Flags, MapSpec, SpaceSpec, SystemDefinition, SystemError, SystemSpec, VectorSpec, WeightSpec, WindowSpec,
    YoungSpec,
};

pub const DEMO_NAMES: [&str; 4] = ["lp-shift", "rotation", "oscillating-shift", "exp-orlicz-shift"];

/// Cycles of the oscillating weight walk.
const CYCLES: u64 = 40;

/// Block lengths for a walk that descends from each peak to the valley
/// `-(20 + 2k)` and climbs to the peak `20 + k`, starting from height 0.
pub fn oscillating_blocks(cycles: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(2 * cycles as usize);
    let mut peak = 0i64;
    for k in 0..cycles as i64 {
        let valley = -(20 + 2 * k);
        let next = 20 + k;
        out.push((peak - valley) as u64);
        out.push((next - valley) as u64);
        peak = next;
    }
    out
}

fn vector(support: &[i64], values: &[f64]) -> VectorSpec {
    VectorSpec { support: support.to_vec(), values: values.to_vec() }
}

fn oscillating(name: &str, young: YoungSpec, threshold: f64) -> SystemSpec {
    SystemSpec {
        name: name.into(),
        young,
        space: SpaceSpec {
            atoms: AtomsSpec::Integers,
            weight: WeightSpec::BlockOscillating {
                base: 1.0,
                up_factor: 2.0,
                down_factor: 2.0,
                block_lengths: oscillating_blocks(CYCLES),
            },
            total: None,
        },
        map: MapSpec::Shift { step: 1 },
        vectors: BTreeMap::from([
            ("chi0".into(), vector(&[0], &[1.0])),
            ("f_irr".into(), vector(&[0, 1], &[2.0, 1.0])),
        ]),
        sets: BTreeMap::from([("F0".into(), vec![0])]),
        window: WindowSpec {
            horizon: Some(1000),
            set_window: Some([-50, 50]),
            divergence_threshold: Some(threshold),
            ..WindowSpec::default()
        },
        flags: Flags { injective: true, total_finite: false },
    }
}

/// The definition behind a demo name.
pub fn demo_spec(name: &str) -> Option<SystemSpec> {
    let spec = match name {
        "lp-shift" => SystemSpec {
            name: name.into(),
            young: YoungSpec::PlainPower { params: [2.0] },
            space: SpaceSpec { atoms: AtomsSpec::Integers, weight: WeightSpec::Geometric { ratio: 0.95 }, total: None },
            map: MapSpec::Shift { step: 1 },
            vectors: BTreeMap::from([("chi0".into(), vector(&[0], &[1.0]))]),
            sets: BTreeMap::from([("F0".into(), vec![0])]),
            window: WindowSpec { horizon: Some(1000), set_window: Some([-50, 50]), ..WindowSpec::default() },
            flags: Flags { injective: true, total_finite: false },
        },
        "rotation" => SystemSpec {
            name: name.into(),
            young: YoungSpec::PlainPower { params: [2.0] },
            space: SpaceSpec {
                atoms: AtomsSpec::Range { start: 0, end: 6 },
                weight: WeightSpec::Uniform { value: 1.0 },
                total: Some(7.0),
            },
            map: MapSpec::Rotation { modulus: 7, step: 1 },
            vectors: BTreeMap::from([("chi0".into(), vector(&[0], &[1.0])), ("mixed".into(), vector(&[0, 3], &[1.0, -2.0]))]),
            sets: BTreeMap::from([("F0".into(), vec![0]), ("F1".into(), vec![1, 2])]),
            window: WindowSpec { horizon: Some(1000), set_window: Some([0, 6]), ..WindowSpec::default() },
            flags: Flags { injective: true, total_finite: true },
        },
        "oscillating-shift" => oscillating(name, YoungSpec::PlainPower { params: [2.0] }, 1e3),
        "exp-orlicz-shift" => oscillating(name, YoungSpec::ExpMinusOne { params: [1.0] }, 10.0),
        _ => return None,
    };
    Some(spec)
}

/// Loads a demo by name.
pub fn demo(name: &str) -> Result<SystemDefinition, SystemError> {
    let spec = demo_spec(name).ok_or_else(|| SystemError::Validation {
        field: "demo".into(),
        message: format!("unknown demo '{name}' (known: {})", DEMO_NAMES.join(", ")),
    })?;
    SystemDefinition::from_spec(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_list_starts_as_expected() {
        assert_eq!(&oscillating_blocks(3), &[20, 40, 42, 43, 45, 46]);
    }

    #[test]
    fn every_demo_loads_and_round_trips() {
        for name in DEMO_NAMES {
            let spec = demo_spec(name).unwrap();
            assert_eq!(SystemSpec::from_json(&spec.to_json()).unwrap(), spec);
            demo(name).unwrap();
        }
        assert!(demo("nope").is_err());
    }

    #[test]
    fn oscillating_weights_track_the_walk() {
        let s = demo("oscillating-shift").unwrap();
        // direct walk oracle: heights 0, -1, ..., -20, -19, ..., 20, 19, ...
        let mut h = 0i64;
        let mut heights = vec![0i64];
        for (i, len) in oscillating_blocks(5).iter().enumerate() {
            let step = if i % 2 == 0 { -1 } else { 1 };
            for _ in 0..*len {
                h += step;
                heights.push(h);
            }
        }
        for (n, h) in heights.iter().enumerate().take(200) {
            assert_eq!(s.space.weight(n as i64), (*h as f64).exp2(), "atom {n}");
            assert_eq!(s.space.weight(-(n as i64)), (*h as f64).exp2());
        }
    }
}
