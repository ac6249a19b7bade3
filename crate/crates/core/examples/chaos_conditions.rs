//! Level-set witness extraction on the irregular vector of the oscillating
//! shift, then the forward-image criterion for its injective map.

use orlicz_chaos::chaos::{extract_witnesses, injective_forward_criterion};
use orlicz_chaos::demo::demo;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sys = demo("oscillating-shift")?;
    let f = &sys.vectors["f_irr"];
    let x = extract_witnesses(&sys.phi, &sys.space, &sys.map, f, &sys.window)?;

    println!("family:");
    for m in &x.family {
        println!("  {} = {}", m.id, m.set);
    }
    println!("beta: {} record lows, last at n = {}", x.beta.len(), x.beta.last().unwrap());
    println!("condition I witnessed: {}", x.condition_i.witnessed);
    for (id, s) in &x.condition_i.per_set {
        println!("  {id}: tail value {:.3e}", s.tail_value);
    }
    let ii = &x.condition_ii;
    println!(
        "condition II witnessed: {} (sup ratio {:.3e} up to N, {:.3e} up to 2N)",
        ii.witnessed, ii.sup_ratio_seen, ii.sup_ratio_doubled
    );

    let fwd = injective_forward_criterion(&sys.phi, &sys.space, &sys.map, &sys.sets["F0"], &sys.window)?;
    println!(
        "forward-image criterion on F0: {} (backward tail max {:.3e}, ratio sup {:.3e})",
        fwd.witnessed, fwd.backward_tail_max, fwd.sup_ratio
    );
    Ok(())
}
