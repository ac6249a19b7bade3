//! Evaluate the Young function families, their generalized inverses and
//! complements, and grid verdicts for the growth conditions.

use orlicz_chaos::young::{GrowthCondition, GrowthGrid, YoungFunction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let families = [
        ("power(3)", YoungFunction::power(3.0)?),
        ("plain_power(2)", YoungFunction::plain_power(2.0)?),
        ("exp_minus_one(1)", YoungFunction::exp_minus_one(1.0)?),
        ("piecewise", YoungFunction::piecewise(vec![(0.0, 0.0), (1.0, 0.0), (2.0, 1.0)], 2.0, Some(10.0))?),
    ];
    let grid = GrowthGrid::default();
    for (name, phi) in &families {
        println!("{name}");
        for x in [0.5, 1.0, 2.0, 4.0] {
            let y = phi.eval(x);
            println!("  Φ({x}) = {y:.6}  Φ⁻¹(Φ(x)) = {:.6}  Ψ({x}) = {:.6}", phi.generalized_inverse(y)?, phi.complement(x));
        }
        let n = phi.is_n_function();
        println!("  N-function: {}", n.is_n_function());
        for c in [GrowthCondition::Delta2, GrowthCondition::DeltaPrime, GrowthCondition::NablaPrime] {
            let r = phi.check_growth(c, 0.0, &grid);
            println!("  {c:?}: {:?} (constant {:.4})", r.verdict, r.constant);
        }
    }

    // a flat stretch resolves to its right end
    let flat = &families[3].1;
    println!("piecewise Φ⁻¹(0) = {}", flat.generalized_inverse(0.0)?);
    Ok(())
}
