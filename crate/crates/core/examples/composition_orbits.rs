//! Orbit norms of the composition operator on the demo systems, with trend
//! classification and irregularity evidence.

use orlicz_chaos::demo::{demo, DEMO_NAMES};
use orlicz_chaos::dynamics::{irregular_evidence, orbit_norms, semi_irregular_evidence};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in DEMO_NAMES {
        let sys = demo(name)?;
        for (vname, f) in &sys.vectors {
            let r = orbit_norms(&sys.phi, &sys.space, &sys.map, f, 1000)?;
            let irr = irregular_evidence(&r, 1e-3, 1e3);
            let semi = semi_irregular_evidence(&r, 1e-3, 10.0);
            println!(
                "{name:>18} {vname:>6}: {:?}, min {:.3e} at {}, max {:.3e} at {}, irregular {}, semi-irregular {}",
                r.trend, r.min_norm, r.argmin, r.max_norm, r.argmax, irr.is_witnessed, semi.is_witnessed
            );
        }
    }
    Ok(())
}
