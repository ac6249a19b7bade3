//! Load system definition files, run an orbit on one, and show how
//! validation errors are reported.

use std::path::Path;

use orlicz_chaos::dynamics::orbit_norms;
use orlicz_chaos::system::{load, SystemDefinition, SystemSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/systems");
    let mut paths: Vec<_> = std::fs::read_dir(&dir)?.map(|e| e.map(|e| e.path())).collect::<Result<_, _>>()?;
    paths.sort();
    for p in &paths {
        let sys = load(p)?;
        println!(
            "{:>18}: {} vectors, {} sets, horizon {}, injective {}, finite total {}",
            sys.name,
            sys.vectors.len(),
            sys.sets.len(),
            sys.window.horizon,
            sys.flags.injective,
            sys.space.total_finite()
        );
    }

    let tree = load(&dir.join("halving-tree.json"))?;
    let r = orbit_norms(&tree.phi, &tree.space, &tree.map, &tree.vectors["bump"], 8)?;
    println!("halving-tree bump orbit: {:?}", r.norms);

    let bad = r#"{
        "name": "bad",
        "young": {"family": "plain_power", "params": [2.0]},
        "space": {"atoms": {"kind": "range", "start": 0, "end": 2},
                  "weight": {"rule": "table", "entries": {"0": 1.0, "1": 0.0, "2": 1.0}}},
        "map": {"map": "rotation", "modulus": 3}
    }"#;
    match SystemDefinition::from_spec(SystemSpec::from_json(bad)?) {
        Ok(_) => println!("unexpectedly valid"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
