//! The measure bound `μ(φ⁻¹F) <= K μ(F)` against the inverse bound on
//! candidate sets, and a system whose window constant grows without limit.

use std::sync::Arc;

use orlicz_chaos::chaos::boundedness_equivalence_check;
use orlicz_chaos::demo::{demo, DEMO_NAMES};
use orlicz_chaos::space::{boundedness_constant, Atom, AtomDomain, AtomicSpace, Transformation, WeightRule};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in DEMO_NAMES {
        let sys = demo(name)?;
        let r = boundedness_equivalence_check(&sys.phi, &sys.space, &sys.map, &sys.window)?;
        println!(
            "{name:>18}: K = {:.4} (at atom {}), L = {:?}, {} candidates, holds {}",
            r.k, r.k_witness, r.l, r.candidates_checked, r.holds
        );
    }

    // w(n) = 2^(-n^2): the per-window constant keeps growing
    let space = AtomicSpace::new(AtomDomain::Integers, WeightRule::Custom(Arc::new(|n: Atom| (-((n * n) as f64)).exp2())))?;
    let shift = Transformation::shift(1);
    for h in [2, 4, 8, 16] {
        let k = boundedness_constant(&space, &shift, -h, h)?;
        println!("window [-{h}, {h}]: K = {:.3e} at atom {}", k.sup_ratio, k.witness);
    }
    Ok(())
}
