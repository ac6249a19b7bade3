//! The item battery on a single set and the audit of the implications
//! between the items.

use orlicz_chaos::chaos::condition_battery;
use orlicz_chaos::demo::demo;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["oscillating-shift", "rotation", "lp-shift"] {
        let sys = demo(name)?;
        let b = condition_battery(&sys.phi, &sys.space, &sys.map, &sys.sets["F0"], &sys.window)?;
        println!("{name}: hypotheses {:?}", b.hypotheses);
        for (item, e) in &b.items {
            println!("  item {item:>11}: {}", if e.witnessed { "witnessed" } else { "-" });
        }
        for a in &b.audit {
            println!("  {:>9} {:?}", a.leg, a.status);
        }
        if let Some(d) = &b.reading_discrepancy {
            println!("  note: {d}");
        }
    }
    Ok(())
}
