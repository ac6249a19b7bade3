//! Luxemburg and Orlicz norms of simple functions, and the closed form for
//! indicators.

use std::collections::BTreeMap;

use orlicz_chaos::orlicz::{indicator_norm, luxemburg_norm, modular, orlicz_norm, SimpleFunction};
use orlicz_chaos::space::{AtomDomain, AtomicSpace, MeasurableSet, WeightRule};
use orlicz_chaos::young::YoungFunction;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let weights = BTreeMap::from([(0, 0.5), (1, 1.0), (2, 2.0), (3, 0.25)]);
    let space = AtomicSpace::new(AtomDomain::Finite { indices: vec![0, 1, 2, 3] }, WeightRule::Table { entries: weights })?;
    let f = SimpleFunction::new(vec![0, 1, 3], vec![3.0, -1.0, 0.5])?;

    for phi in [YoungFunction::plain_power(2.0)?, YoungFunction::power(3.0)?, YoungFunction::exp_minus_one(1.0)?] {
        let n = luxemburg_norm(&phi, &space, &f);
        let o = orlicz_norm(&phi, &space, &f);
        println!("{:?}", phi.kind());
        println!("  luxemburg {n:.10}  orlicz {o:.10}  ratio {:.4}", o / n);
        println!("  modular at the norm {:.12}", modular(&phi, &space, &f, n));

        let set = MeasurableSet::new([1, 2]);
        let closed = indicator_norm(&phi, &space, &set)?;
        let numeric = luxemburg_norm(&phi, &space, &SimpleFunction::indicator(&set));
        println!("  indicator of {set}: closed form {closed:.12}, bisection {numeric:.12}");
    }
    Ok(())
}
